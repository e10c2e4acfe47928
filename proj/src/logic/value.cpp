#include "qice/logic/value.hpp"

#include <sstream>

#include "qice/logic/errors.hpp"

namespace qice {

Value Value::of_int(const BigInt& v) {
  Value r;
  r.sort_ = Sort::integer();
  r.num_ = v;
  return r;
}

Value Value::of_bool(bool v) {
  Value r;
  r.sort_ = Sort::boolean();
  r.num_ = v ? 1 : 0;
  return r;
}

Value Value::of_array(Sort element, std::vector<BigInt> elems) {
  Value r;
  r.sort_ = Sort::array(element);
  if (element.is_bool())
    for (auto& e : elems)
      if (e != 0 && e != 1) throw SortError("boolean array element out of {0,1}");
  r.elems_ = std::move(elems);
  return r;
}

Value Value::int_array(const std::vector<long long>& elems) {
  std::vector<BigInt> v(elems.begin(), elems.end());
  return of_array(Sort::integer(), std::move(v));
}

Value Value::bool_array(const std::vector<bool>& elems) {
  std::vector<BigInt> v;
  for (bool b : elems) v.emplace_back(b ? 1 : 0);
  return of_array(Sort::boolean(), std::move(v));
}

Value Value::zero(Sort sort) {
  if (sort.is_int()) return of_int(0);
  if (sort.is_bool()) return of_bool(false);
  return of_array(sort.element(), {});
}

const BigInt& Value::as_int() const {
  if (!sort_.is_int()) throw SortError("expected an Int value, got " + to_string());
  return num_;
}

bool Value::as_bool() const {
  if (!sort_.is_bool()) throw SortError("expected a Bool value, got " + to_string());
  return num_ != 0;
}

const std::vector<BigInt>& Value::elems() const {
  if (!sort_.is_array()) throw SortError("expected an array value, got " + to_string());
  return elems_;
}

Value Value::at(const BigInt& idx) const {
  const auto& es = elems();
  Sort el = sort_.element();
  if (idx < 0 || idx >= es.size()) return zero(el);
  const BigInt& e = es[static_cast<std::size_t>(idx)];
  return el.is_int() ? of_int(e) : of_bool(e != 0);
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.sort_ <=> b.sort_; c != 0) return c;
  if (a.num_ != b.num_) return a.num_ < b.num_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.elems_.size() != b.elems_.size())
    return a.elems_.size() < b.elems_.size() ? std::strong_ordering::less : std::strong_ordering::greater;
  for (std::size_t i = 0; i < a.elems_.size(); ++i)
    if (a.elems_[i] != b.elems_[i])
      return a.elems_[i] < b.elems_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Value::to_string() const {
  std::ostringstream os;
  if (sort_.is_int()) {
    os << num_;
  } else if (sort_.is_bool()) {
    os << (num_ != 0 ? "true" : "false");
  } else {
    os << '[';
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i) os << ',';
      if (sort_.element().is_bool())
        os << (elems_[i] != 0 ? "true" : "false");
      else
        os << elems_[i];
    }
    os << ']';
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.to_string(); }

std::string valuation_to_string(const Valuation& env) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : env) {
    if (!first) out += ", ";
    first = false;
    out += k + "=" + v.to_string();
  }
  return out + "}";
}

}  // namespace qice

#include "qice/sample/sample.hpp"

#include <sstream>

#include "qice/logic/errors.hpp"

namespace qice {

DataPoint DataPoint::of(const PredicateSig& sig, std::vector<Value> values) {
  if (values.size() != sig.arity()) throw SortError("data point for " + sig.name + " has the wrong arity");
  DataPoint x{sig.name, sig.vars(), std::move(values)};
  for (std::size_t i = 0; i < sig.arity(); ++i)
    if (x.values[i].sort() != sig.params[i].second)
      throw SortError("data point value for " + sig.params[i].first + " has sort " + x.values[i].sort().to_string());
  return x;
}

DataPoint DataPoint::from_valuation(const PredicateSig& sig, const Valuation& env) {
  std::vector<Value> vals;
  for (const auto& [n, _] : sig.params) {
    auto it = env.find(n);
    if (it == env.end()) throw EvalError("data point misses parameter " + n);
    vals.push_back(it->second);
  }
  return of(sig, std::move(vals));
}

Valuation DataPoint::valuation() const {
  Valuation env;
  for (std::size_t i = 0; i < names.size(); ++i) env[names[i]] = values[i];
  return env;
}

const Value& DataPoint::get(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return values[i];
  throw EvalError("data point has no parameter " + name);
}

std::string DataPoint::to_string() const {
  std::string out = "<" + pred;
  for (const auto& v : values) out += ", " + v.to_string();
  return out + ">";
}

HornImplication HornImplication::positive(DataPoint x) {
  return {ImplicationKind::Positive, {}, std::move(x)};
}

HornImplication HornImplication::negative(std::vector<DataPoint> body) {
  return {ImplicationKind::Negative, std::move(body), std::nullopt};
}

HornImplication HornImplication::conditional(std::vector<DataPoint> body, DataPoint head) {
  if (body.empty()) return positive(std::move(head));
  return {ImplicationKind::Conditional, std::move(body), std::move(head)};
}

std::string HornImplication::to_string() const {
  std::string lhs;
  if (body.empty()) lhs = "true";
  for (std::size_t i = 0; i < body.size(); ++i) lhs += (i ? " & " : "") + body[i].to_string();
  return lhs + " -> " + (head ? head->to_string() : std::string("false"));
}

int Sample::add_point(const DataPoint& x) {
  auto [it, inserted] = index_.emplace(x, static_cast<int>(points_.size()));
  if (inserted) {
    points_.push_back(x);
    closure_.reset();
  }
  return it->second;
}

int Sample::id_of(const DataPoint& x) const {
  auto it = index_.find(x);
  return it == index_.end() ? -1 : it->second;
}

void Sample::add_counterexample(const HornImplication& imp) {
  HornConstraint c;
  for (const auto& b : imp.body) c.body.push_back(add_point(b));
  if (imp.head) c.head = add_point(*imp.head);
  implications_.push_back(imp);
  constraints_.push_back(std::move(c));
  closure_.reset();
}

const HornClosure& Sample::propagate() const {
  if (!closure_) closure_ = horn_closure(points_.size(), constraints_);
  return *closure_;
}

std::vector<DataPoint> Sample::positives() const {
  std::vector<DataPoint> out;
  const auto& c = propagate();
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (c.pos[i]) out.push_back(points_[i]);
  return out;
}

std::vector<DataPoint> Sample::negatives() const {
  std::vector<DataPoint> out;
  const auto& c = propagate();
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (c.neg[i]) out.push_back(points_[i]);
  return out;
}

std::string Sample::explain_inconsistency() const {
  const auto& c = propagate();
  std::ostringstream os;
  if (!c.overlap.empty()) {
    os << "in both S+ and S-:";
    for (int p : c.overlap) os << " " << points_[p].to_string();
  }
  for (std::size_t ci : c.violated) {
    if (os.tellp() > 0) os << "; ";
    os << "violated with all premises in S+: " << implications_[ci].to_string();
  }
  return os.str();
}

std::string Sample::dump() const {
  std::ostringstream os;
  const auto& c = propagate();
  for (std::size_t i = 0; i < points_.size(); ++i)
    os << points_[i].to_string() << (c.pos[i] ? " +" : "") << (c.neg[i] ? " -" : "") << "\n";
  for (const auto& imp : implications_) os << imp.to_string() << "\n";
  return os.str();
}

bool classify(const Solution& j, const DataPoint& x) {
  auto it = j.find(x.pred);
  if (it == j.end()) throw Error("no interpretation for predicate " + x.pred);
  return eval_property(it->second, x.valuation());
}

bool satisfies(const Sample& s, const Solution& j) {
  std::vector<char> label;
  for (const auto& x : s.points()) label.push_back(classify(j, x) ? 1 : 0);
  return labeling_satisfies(label, s.constraints());
}

}  // namespace qice

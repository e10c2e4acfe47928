#include "qice/logic/linear.hpp"

namespace qice {

void LinearForm::add_atom(const Term& atom, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs.emplace(atom, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

void LinearForm::add(const LinearForm& o, const BigInt& scale) {
  for (const auto& [a, c] : o.coeffs) add_atom(a, c * scale);
  constant += o.constant * scale;
}

Term LinearForm::to_term() const {
  std::vector<Term> parts;
  for (const auto& [a, c] : coeffs) parts.push_back(c == 1 ? a : mk_mul(c, a));
  if (constant != 0 || parts.empty()) parts.push_back(mk_int(constant));
  return mk_sum(parts);
}

namespace {

void lin(const Term& t, const BigInt& scale, LinearForm& out) {
  switch (t.op()) {
    case Op::IntConst:
      out.constant += scale * t.int_value();
      return;
    case Op::Add:
      lin(t.arg(0), scale, out);
      lin(t.arg(1), scale, out);
      return;
    case Op::Mul:
      lin(t.arg(0), scale * t.int_value(), out);
      return;
    default:
      out.add_atom(t, scale);
  }
}

}  // namespace

LinearForm linearize(const Term& int_term) {
  LinearForm f;
  lin(int_term, 1, f);
  return f;
}

}  // namespace qice

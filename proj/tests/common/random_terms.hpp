#pragma once

// Random generators shared by unit and acceptance tests.

#include <random>
#include <vector>

#include "qice/logic/term.hpp"
#include "qice/logic/value.hpp"

namespace qice::testing {

class TermGen {
 public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  // Scalars x, y : Int, p : Bool; arrays a, b : (Array Int).
  SortEnv env() const {
    return {{"x", Sort::integer()}, {"y", Sort::integer()}, {"p", Sort::boolean()},
            {"a", Sort::array(Sort::integer())}, {"b", Sort::array(Sort::integer())}};
  }

  Term int_term(int depth) {
    if (depth <= 0 || uniform(0, 3) == 0) {
      switch (uniform(0, 3)) {
        case 0:
          return mk_int(uniform(-2, 2));
        case 1:
          return mk_var("x", Sort::integer());
        case 2:
          return mk_var("y", Sort::integer());
        default:
          return mk_len(array_term(0));
      }
    }
    switch (uniform(0, 4)) {
      case 0:
        return mk_add(int_term(depth - 1), int_term(depth - 1));
      case 1:
        return mk_mul(uniform(-2, 2), int_term(depth - 1));
      case 2:
        return mk_ite(bool_term(depth - 1), int_term(depth - 1), int_term(depth - 1));
      default:
        return mk_read(array_term(depth - 1), int_term(depth - 1));
    }
  }

  Term array_term(int depth) {
    Term base = mk_var(coin() ? "a" : "b", Sort::array(Sort::integer()));
    if (depth <= 0 || uniform(0, 3) != 0) return base;
    return mk_write(array_term(depth - 1), int_term(depth - 1), int_term(depth - 1));
  }

  Term bool_term(int depth) {
    if (depth <= 0 || uniform(0, 4) == 0) {
      switch (uniform(0, 3)) {
        case 0:
          return mk_var("p", Sort::boolean());
        case 1:
          return mk_bool(coin());
        default:
          return mk_leq(int_term(0), int_term(0));
      }
    }
    switch (uniform(0, 5)) {
      case 0:
        return mk_leq(int_term(depth - 1), int_term(depth - 1));
      case 1:
        return mk_eq(int_term(depth - 1), int_term(depth - 1));
      case 2:
        return mk_not(bool_term(depth - 1));
      case 3:
        return mk_and(bool_term(depth - 1), bool_term(depth - 1));
      case 4:
        return mk_or(bool_term(depth - 1), bool_term(depth - 1));
      default:
        return mk_eq(array_term(depth - 1), array_term(depth - 1));
    }
  }

  std::vector<BigInt> int_array(std::size_t max_len, int lo, int hi, std::size_t min_len = 0) {
    std::size_t n = static_cast<std::size_t>(uniform(static_cast<int>(min_len), static_cast<int>(max_len)));
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(uniform(lo, hi));
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

/// Candidate values of a sort: integers in [lo,hi], both booleans, arrays of
/// length 0..max_len with elements drawn from the same ranges.
inline std::vector<Value> domain_of(Sort sort, int lo, int hi, std::size_t max_len, std::size_t min_len = 0) {
  std::vector<Value> out;
  if (sort.is_int()) {
    for (int v = lo; v <= hi; ++v) out.push_back(Value::of_int(v));
  } else if (sort.is_bool()) {
    out = {Value::of_bool(false), Value::of_bool(true)};
  } else {
    const bool boolean = sort.element().is_bool();
    const int elo = boolean ? 0 : lo;
    const int ehi = boolean ? 1 : hi;
    for (std::size_t len = min_len; len <= max_len; ++len) {
      std::vector<BigInt> cur(len, BigInt(elo));
      while (true) {
        out.push_back(Value::of_array(sort.element(), cur));
        std::size_t i = 0;
        for (; i < len; ++i) {
          if (cur[i] < ehi) {
            cur[i] += 1;
            break;
          }
          cur[i] = elo;
        }
        if (i == len) break;
      }
    }
  }
  return out;
}

/// Calls f(valuation) for every valuation of `vars` over domain_of. Stops
/// early and returns true as soon as f returns true.
template <class F>
bool enumerate_envs(const SortEnv& vars, int lo, int hi, std::size_t max_len, F&& f, std::size_t min_len = 0) {
  std::vector<std::string> names;
  std::vector<std::vector<Value>> doms;
  for (const auto& [n, s] : vars) {
    names.push_back(n);
    doms.push_back(domain_of(s, lo, hi, max_len, min_len));
  }
  std::vector<std::size_t> idx(names.size(), 0);
  Valuation env;
  while (true) {
    for (std::size_t i = 0; i < names.size(); ++i) env[names[i]] = doms[i][idx[i]];
    if (f(env)) return true;
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < doms[i].size()) break;
      idx[i] = 0;
    }
    if (i == idx.size()) return false;
  }
}

}  // namespace qice::testing

#include "qice/sample/horn.hpp"

#include <deque>

namespace qice {

HornClosure horn_closure(std::size_t num_points, const std::vector<HornConstraint>& cs) {
  HornClosure r;
  r.pos.assign(num_points, 0);
  r.neg.assign(num_points, 0);

  // Forward pass: count body points not yet positive.
  std::vector<std::size_t> missing(cs.size());
  std::vector<std::vector<std::size_t>> uses(num_points);
  std::deque<int> work;
  auto make_pos = [&](int p) {
    if (!r.pos[p]) {
      r.pos[p] = 1;
      work.push_back(p);
    }
  };
  for (std::size_t i = 0; i < cs.size(); ++i) {
    missing[i] = cs[i].body.size();
    for (int b : cs[i].body)
      if (uses[b].empty() || uses[b].back() != i) uses[b].push_back(i);
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i].body.empty() && cs[i].head != HornConstraint::kBottom) make_pos(cs[i].head);
  while (!work.empty()) {
    int p = work.front();
    work.pop_front();
    for (std::size_t ci : uses[p]) {
      // a point may occur more than once in a body
      for (int b : cs[ci].body)
        if (b == p) --missing[ci];
      if (missing[ci] == 0 && cs[ci].head != HornConstraint::kBottom) make_pos(cs[ci].head);
    }
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (missing[i] == 0 && cs[i].head == HornConstraint::kBottom) r.violated.push_back(i);

  // Backward pass: with S+ fixed, a constraint with exactly one body point
  // outside S+ pushes that point into S- once its head is negative.
  // A body entirely inside S+ under a negative head (a contradiction already)
  // still pushes every body point into S-, as the rule prescribes.
  constexpr int kAllBody = -2;
  std::vector<std::vector<std::size_t>> by_head(num_points);
  std::vector<int> single(cs.size(), -1);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    int out = -1;
    std::size_t count = 0;
    for (int b : cs[i].body)
      if (!r.pos[b] && b != out) {
        out = b;
        ++count;
      }
    if (count == 1) single[i] = out;
    if (count == 0) single[i] = kAllBody;
    if (cs[i].head != HornConstraint::kBottom) by_head[cs[i].head].push_back(i);
  }
  auto make_neg = [&](int p) {
    if (!r.neg[p]) {
      r.neg[p] = 1;
      work.push_back(p);
    }
  };
  auto fire = [&](std::size_t ci) {
    if (single[ci] >= 0) make_neg(single[ci]);
    if (single[ci] == kAllBody)
      for (int b : cs[ci].body) make_neg(b);
  };
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i].head == HornConstraint::kBottom) fire(i);
  while (!work.empty()) {
    int p = work.front();
    work.pop_front();
    for (std::size_t ci : by_head[p]) fire(ci);
  }
  for (std::size_t p = 0; p < num_points; ++p)
    if (r.pos[p] && r.neg[p]) r.overlap.push_back(static_cast<int>(p));
  r.consistent = r.overlap.empty() && r.violated.empty();
  return r;
}

std::vector<char> forced_negative(std::size_t num_points, const std::vector<HornConstraint>& cs) {
  std::vector<char> out(num_points, 0);
  std::vector<HornConstraint> extended = cs;
  extended.push_back({});
  for (std::size_t p = 0; p < num_points; ++p) {
    extended.back().head = static_cast<int>(p);
    if (!horn_closure(num_points, extended).consistent) out[p] = 1;
  }
  return out;
}

bool labeling_satisfies(const std::vector<char>& label, const std::vector<HornConstraint>& cs) {
  for (const auto& c : cs) {
    bool body = true;
    for (int b : c.body) body = body && label[b];
    if (!body) continue;
    if (c.head == HornConstraint::kBottom || !label[c.head]) return false;
  }
  return true;
}

}  // namespace qice

#pragma once

#include <cstddef>
#include <vector>

namespace qice {

/// body_1 /\ ... /\ body_n -> head, over point ids. head == kBottom encodes ->
/// false; an empty body encodes true -> head.
struct HornConstraint {
  static constexpr int kBottom = -1;
  std::vector<int> body;
  int head = kBottom;

  friend bool operator==(const HornConstraint&, const HornConstraint&) = default;
};

struct HornClosure {
  std::vector<char> pos;  // S+
  std::vector<char> neg;  // S-
  bool consistent = true;
  /// Points in S+ and S-, and indices of false-headed constraints whose body
  /// lies entirely in S+.
  std::vector<int> overlap;
  std::vector<std::size_t> violated;
};

/// Least sets closed under: true -> x gives x in S+; a body inside S+ puts the
/// head in S+; when the head is in S- (or is false) and all body points but
/// one are in S+, the remaining one goes to S-.
/// Runs in time linear in the total constraint size.
HornClosure horn_closure(std::size_t num_points, const std::vector<HornConstraint>& cs);

/// Points false in every consistent labeling (exact; one closure per point).
std::vector<char> forced_negative(std::size_t num_points, const std::vector<HornConstraint>& cs);

/// Does the labeling satisfy every constraint?
bool labeling_satisfies(const std::vector<char>& label, const std::vector<HornConstraint>& cs);

}  // namespace qice

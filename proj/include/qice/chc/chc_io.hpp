#pragma once

#include <string>
#include <string_view>

#include "qice/chc/system.hpp"

namespace qice {

// File format (one s-expression per item, `;` comments):
//   (declare-pred NAME ((p1 SORT) ...))   or   (declare-pred NAME (SORT ...))
//   (clause (forall ((v SORT) ...) (=> BODY HEAD)))
//   (clause (=> BODY HEAD))               ; no clause variables
// BODY is a predicate application, a constraint, or an `and` mixing both.
// HEAD is a predicate application or `false`. Arguments may be any terms.
ChcSystem load_chc(std::string_view text);
std::string save_chc(const ChcSystem& sys);
ChcSystem load_chc_file(const std::string& path);

}  // namespace qice

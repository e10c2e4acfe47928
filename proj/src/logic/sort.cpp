#include "qice/logic/sort.hpp"

#include "qice/logic/errors.hpp"

namespace qice {

Sort Sort::array(Sort element) {
  if (element.is_array()) throw SortError("nested array sorts are not supported");
  return Sort(SortKind::Array, element.kind());
}

Sort Sort::element() const {
  if (!is_array()) throw SortError("sort " + to_string() + " has no element sort");
  return elem_ == SortKind::Int ? integer() : boolean();
}

std::string Sort::to_string() const {
  switch (kind_) {
    case SortKind::Int:
      return "Int";
    case SortKind::Bool:
      return "Bool";
    case SortKind::Array:
      return elem_ == SortKind::Int ? "(Array Int)" : "(Array Bool)";
  }
  return "?";
}

}  // namespace qice

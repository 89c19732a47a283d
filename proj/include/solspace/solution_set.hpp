#ifndef SOLSPACE_SOLUTION_SET_HPP
#define SOLSPACE_SOLUTION_SET_HPP

#include <vector>

#include "solspace/assignment.hpp"

namespace solspace {

// A set of satisfying assignments of one formula, sorted ascending in
// value order with no duplicates. `complete` is true only when the set
// is known to be the whole solution set, not a capped prefix.
struct SolutionSet {
  int num_vars = 0;
  bool complete = false;
  std::vector<Assignment> members;

  size_t size() const { return members.size(); }
  bool contains(const Assignment& a) const;

  // sorts, deduplicates, and checks member widths
  void normalize();
};

}  // namespace solspace

#endif

#include "solspace/solution_set.hpp"

#include <algorithm>

#include "solspace/errors.hpp"

namespace solspace {

bool SolutionSet::contains(const Assignment& a) const {
  return std::binary_search(members.begin(), members.end(), a);
}

void SolutionSet::normalize() {
  for (const Assignment& a : members)
    if (a.size() != num_vars)
      throw InvalidParameter("solution set member has the wrong width");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

}  // namespace solspace

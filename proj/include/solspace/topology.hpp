#ifndef SOLSPACE_TOPOLOGY_HPP
#define SOLSPACE_TOPOLOGY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "solspace/assignment.hpp"
#include "solspace/cnf.hpp"
#include "solspace/solution_set.hpp"

namespace solspace {

// A face of the n-cube: the set of vertices agreeing with `base` outside
// `mask`. Canonical form zeroes base on every free (masked) coordinate, so
// base is the face's lexicographically smallest vertex.
struct Face {
  Assignment base;
  Assignment mask;

  int dim() const { return mask.popcount(); }
  bool operator==(const Face& o) const {
    return base == o.base && mask == o.mask;
  }
  bool operator<(const Face& o) const {
    if (!(base == o.base)) return base < o.base;
    return mask < o.mask;
  }
};

// Induced subcomplex of the n-cube on a solution set: a face belongs to the
// complex iff all of its vertices are solutions. Grading is truncated at
// the requested maximum dimension.
struct CubicalComplex {
  int n = 0;
  std::vector<std::vector<Face>> faces_by_dim;  // index d: sorted d-faces

  int max_dim() const { return static_cast<int>(faces_by_dim.size()) - 1; }
  uint64_t face_count(int d) const {
    if (d < 0 || d > max_dim()) return 0;
    return faces_by_dim[static_cast<size_t>(d)].size();
  }
};

struct BettiVector {
  std::vector<uint64_t> face_counts;  // f_0..f_D
  std::vector<uint64_t> betti;        // beta_0..beta_D
  std::string field = "GF(2)";

  int64_t euler_from_faces() const;
  int64_t euler_from_betti() const;
};

// Requires a complete solution set (an induced complex is undefined on a
// sample) of at most 2^24 members.
CubicalComplex build_complex(const SolutionSet& s, int max_dim);

// Betti numbers over GF(2) by boundary-matrix rank. Dimensions above the
// complex's truncation grade are treated as empty, so the top reported
// Betti number is that of the truncated complex. Refuses dimensions with
// more than 2^16 faces rather than approximate.
BettiVector betti(const CubicalComplex& c);

// brute_force -> build_complex -> betti, guarded to num_vars <= 24. The
// complex is built one grade above max_dim (capped at n), so every
// reported Betti number up to max_dim is exact rather than truncated.
BettiVector betti_of_formula(const CnfFormula& f, int max_dim = 3);

// Connected components of the Hamming-distance-1 graph on the members.
// Each component is sorted; components are ordered by smallest member.
std::vector<std::vector<Assignment>> connected_components(const SolutionSet& s);

}  // namespace solspace

#endif

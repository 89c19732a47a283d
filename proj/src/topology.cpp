#include "solspace/topology.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "solspace/enumerate.hpp"
#include "solspace/errors.hpp"
#include "solspace/gf2.hpp"

namespace solspace {

namespace {

struct FaceHash {
  size_t operator()(const Face& f) const {
    AssignmentHash h;
    uint64_t a = h(f.base), b = h(f.mask);
    return static_cast<size_t>(a ^ (b * 0x9e3779b97f4a7c15ull + (a << 7)));
  }
};

std::vector<int> set_bits(const Assignment& mask) {
  std::vector<int> out;
  const auto& words = mask.words();
  for (size_t w = 0; w < words.size(); w++) {
    uint64_t bits = words[w];
    while (bits) {
      out.push_back(static_cast<int>(w) * 64 + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return out;
}

int highest_set_bit(const Assignment& mask) {
  const auto& words = mask.words();
  for (size_t w = words.size(); w-- > 0;)
    if (words[w])
      return static_cast<int>(w) * 64 + 63 - std::countl_zero(words[w]);
  return -1;
}

}  // namespace

int64_t BettiVector::euler_from_faces() const {
  int64_t e = 0;
  for (size_t d = 0; d < face_counts.size(); d++)
    e += (d % 2 == 0 ? 1 : -1) * static_cast<int64_t>(face_counts[d]);
  return e;
}

int64_t BettiVector::euler_from_betti() const {
  int64_t e = 0;
  for (size_t d = 0; d < betti.size(); d++)
    e += (d % 2 == 0 ? 1 : -1) * static_cast<int64_t>(betti[d]);
  return e;
}

CubicalComplex build_complex(const SolutionSet& s, int max_dim) {
  if (!s.complete)
    throw GuardRefused(
        "induced complex needs a complete solution set, not a sample");
  if (s.size() > (1ull << 24))
    throw GuardRefused("solution set exceeds the 2^24 complex guard");
  if (max_dim < 0) throw InvalidParameter("max_dim must be nonnegative");

  CubicalComplex c;
  c.n = s.num_vars;
  int top = std::min(max_dim, s.num_vars);
  c.faces_by_dim.assign(static_cast<size_t>(max_dim) + 1, {});

  std::vector<Face>& verts = c.faces_by_dim[0];
  Assignment zero_mask(s.num_vars);
  verts.reserve(s.size());
  for (const Assignment& a : s.members) verts.push_back({a, zero_mask});
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  // A d-face is created from its lexicographically smallest vertex by
  // freeing coordinates in increasing order, so each face appears once:
  // extend a (d-1)-face by a coordinate above its current highest.
  for (int d = 1; d <= top; d++) {
    const std::vector<Face>& below = c.faces_by_dim[static_cast<size_t>(d - 1)];
    if (below.empty()) break;
    std::unordered_set<Face, FaceHash> lookup(below.begin(), below.end());
    std::vector<Face>& out = c.faces_by_dim[static_cast<size_t>(d)];
    for (const Face& f : below) {
      for (int j = highest_set_bit(f.mask) + 1; j < s.num_vars; j++) {
        if (f.base.get(j)) continue;
        Face partner = f;
        partner.base.flip(j);
        if (!lookup.count(partner)) continue;
        Face bigger = f;
        bigger.mask.set(j, true);
        out.push_back(bigger);
      }
    }
    std::sort(out.begin(), out.end());
  }
  return c;
}

BettiVector betti(const CubicalComplex& c) {
  int top = c.max_dim();
  BettiVector out;
  out.face_counts.resize(static_cast<size_t>(top) + 1);
  out.betti.resize(static_cast<size_t>(top) + 1);
  for (int d = 0; d <= top; d++) out.face_counts[d] = c.face_count(d);

  for (int d = 0; d <= top; d++)
    if (c.face_count(d) > (1ull << 16))
      throw ComplexTooLarge("dimension " + std::to_string(d) + " has " +
                            std::to_string(c.face_count(d)) +
                            " faces, beyond the exact-rank guard");

  // rank of the boundary map from dimension d to d-1; d=0 maps to zero
  std::vector<size_t> rank(static_cast<size_t>(top) + 2, 0);
  for (int d = 1; d <= top; d++) {
    const auto& rows_faces = c.faces_by_dim[static_cast<size_t>(d)];
    const auto& col_faces = c.faces_by_dim[static_cast<size_t>(d - 1)];
    if (rows_faces.empty()) continue;
    std::unordered_map<Face, size_t, FaceHash> col_of;
    col_of.reserve(col_faces.size());
    for (size_t i = 0; i < col_faces.size(); i++) col_of.emplace(col_faces[i], i);

    BitMatrix boundary(rows_faces.size(), col_faces.size());
    for (size_t r = 0; r < rows_faces.size(); r++) {
      const Face& f = rows_faces[r];
      for (int j : set_bits(f.mask)) {
        Face facet = f;
        facet.mask.set(j, false);
        auto it0 = col_of.find(facet);
        facet.base.flip(j);
        auto it1 = col_of.find(facet);
        if (it0 == col_of.end() || it1 == col_of.end())
          throw std::logic_error("complex is not closed under facets");
        boundary.set(r, it0->second);
        boundary.set(r, it1->second);
      }
    }
    rank[static_cast<size_t>(d)] = boundary.rank_destructive();
  }

  for (int d = 0; d <= top; d++) {
    size_t du = static_cast<size_t>(d);
    out.betti[du] = out.face_counts[du] - rank[du] - rank[du + 1];
  }
  if (out.euler_from_faces() != out.euler_from_betti())
    throw std::logic_error("Euler identity violated; rank computation is buggy");
  return out;
}

BettiVector betti_of_formula(const CnfFormula& f, int max_dim) {
  if (f.num_vars > 24)
    throw GuardRefused(
        "formula homology is limited to 24 variables (full enumeration)");
  if (max_dim < 0) throw InvalidParameter("max_dim must be nonnegative");
  SolutionSet s = brute_force(f);
  // One grade above the request so beta_max_dim sees its full boundary
  // map; at n the complex cannot be truncated at all.
  int built = max_dim >= f.num_vars ? f.num_vars : max_dim + 1;
  return betti(build_complex(s, built));
}

std::vector<std::vector<Assignment>> connected_components(
    const SolutionSet& s) {
  std::unordered_map<Assignment, int, AssignmentHash> comp;
  comp.reserve(s.size());
  for (const Assignment& a : s.members) comp.emplace(a, -1);

  int next_comp = 0;
  std::vector<Assignment> stack;
  for (const Assignment& root : s.members) {
    if (comp[root] != -1) continue;
    int id = next_comp++;
    comp[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      Assignment cur = stack.back();
      stack.pop_back();
      for (int j = 0; j < s.num_vars; j++) {
        cur.flip(j);
        auto it = comp.find(cur);
        if (it != comp.end() && it->second == -1) {
          it->second = id;
          stack.push_back(cur);
        }
        cur.flip(j);
      }
    }
  }

  std::vector<std::vector<Assignment>> parts(static_cast<size_t>(next_comp));
  for (const Assignment& a : s.members) parts[comp[a]].push_back(a);
  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return parts;
}

}  // namespace solspace

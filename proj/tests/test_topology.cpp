#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "solspace/enumerate.hpp"
#include "solspace/errors.hpp"
#include "solspace/gen.hpp"
#include "solspace/rng.hpp"
#include "solspace/topology.hpp"

using namespace solspace;

namespace {

SolutionSet set_from_words(int n, std::vector<uint64_t> words) {
  SolutionSet s;
  s.num_vars = n;
  s.complete = true;
  for (uint64_t w : words) s.members.push_back(Assignment::from_word(n, w));
  s.normalize();
  return s;
}

SolutionSet set_from_strings(int n, const std::vector<std::string>& strs) {
  SolutionSet s;
  s.num_vars = n;
  s.complete = true;
  for (const auto& str : strs) s.members.push_back(Assignment::from_string(str));
  s.normalize();
  return s;
}

// every facet of every face must itself be in the complex
void check_closure(const CubicalComplex& c) {
  for (int d = 1; d <= c.max_dim(); d++) {
    const auto& below = c.faces_by_dim[d - 1];
    for (const Face& f : c.faces_by_dim[d]) {
      for (int j = 0; j < c.n; j++) {
        if (!f.mask.get(j)) continue;
        Face facet = f;
        facet.mask.set(j, false);
        REQUIRE(std::binary_search(below.begin(), below.end(), facet));
        facet.base.flip(j);
        REQUIRE(std::binary_search(below.begin(), below.end(), facet));
      }
    }
  }
}

// recompute every Betti number with the naive int-matrix rank oracle
std::vector<int64_t> betti_via_oracle(const CubicalComplex& c) {
  int top = c.max_dim();
  std::vector<int> rank(top + 2, 0);
  for (int d = 1; d <= top; d++) {
    const auto& rows_faces = c.faces_by_dim[d];
    const auto& col_faces = c.faces_by_dim[d - 1];
    if (rows_faces.empty()) continue;
    std::vector<std::vector<int>> m(rows_faces.size(),
                                    std::vector<int>(col_faces.size(), 0));
    for (size_t r = 0; r < rows_faces.size(); r++) {
      const Face& f = rows_faces[r];
      for (int j = 0; j < c.n; j++) {
        if (!f.mask.get(j)) continue;
        Face facet = f;
        facet.mask.set(j, false);
        auto it = std::lower_bound(col_faces.begin(), col_faces.end(), facet);
        m[r][it - col_faces.begin()] ^= 1;
        facet.base.flip(j);
        it = std::lower_bound(col_faces.begin(), col_faces.end(), facet);
        m[r][it - col_faces.begin()] ^= 1;
      }
    }
    rank[d] = oracle::gf2_rank_naive(m);
  }
  std::vector<int64_t> b(top + 1);
  for (int d = 0; d <= top; d++)
    b[d] = static_cast<int64_t>(c.face_count(d)) - rank[d] - rank[d + 1];
  return b;
}

SolutionSet random_set(int n, int size, uint64_t seed) {
  Rng rng(seed);
  SolutionSet s;
  s.num_vars = n;
  s.complete = true;
  for (int i = 0; i < size; i++)
    s.members.push_back(Assignment::from_word(n, rng.below(1ull << n)));
  s.normalize();
  return s;
}

SolutionSet permuted(const SolutionSet& s, const std::vector<int>& perm) {
  SolutionSet out;
  out.num_vars = s.num_vars;
  out.complete = true;
  for (const Assignment& a : s.members) {
    Assignment b(s.num_vars);
    for (int i = 0; i < s.num_vars; i++) b.set(perm[i], a.get(i));
    out.members.push_back(b);
  }
  out.normalize();
  return out;
}

}  // namespace

TEST_CASE("full square, diagonal pair, and full 3-cube face counts") {
  CubicalComplex sq = build_complex(set_from_words(2, {0, 1, 2, 3}), 2);
  CHECK(sq.face_count(0) == 4);
  CHECK(sq.face_count(1) == 4);
  CHECK(sq.face_count(2) == 1);

  CubicalComplex diag = build_complex(set_from_words(2, {0, 3}), 2);
  CHECK(diag.face_count(0) == 2);
  CHECK(diag.face_count(1) == 0);
  CHECK(diag.face_count(2) == 0);

  SolutionSet cube3 = set_from_words(3, {0, 1, 2, 3, 4, 5, 6, 7});
  CubicalComplex c3 = build_complex(cube3, 3);
  CHECK(c3.face_count(0) == 8);
  CHECK(c3.face_count(1) == 12);
  CHECK(c3.face_count(2) == 6);
  CHECK(c3.face_count(3) == 1);
  check_closure(c3);
}

TEST_CASE("6-cycle: f=(6,6,0), betti=(1,1,0)") {
  SolutionSet s = set_from_strings(
      3, {"000", "100", "110", "111", "011", "001"});
  CubicalComplex c = build_complex(s, 2);
  BettiVector b = betti(c);
  REQUIRE(b.face_counts == std::vector<uint64_t>{6, 6, 0});
  REQUIRE(b.betti == std::vector<uint64_t>{1, 1, 0});
  CHECK(b.field == "GF(2)");
  CHECK(connected_components(s).size() == 1);
  check_closure(c);
}

// Found by seeded randomized search over subsets of {0,1}^5 with an
// independent rank oracle; expected values frozen from that search.
static const std::vector<uint64_t> kVoidFixture = {
    0, 1, 2, 3, 5, 6, 7, 8, 11, 13, 14, 15,
    16, 17, 18, 20, 21, 22, 25, 27, 28, 29, 30, 31};

TEST_CASE("a 24-vertex subset of the 5-cube with a 2-dimensional void") {
  SolutionSet s = set_from_words(5, kVoidFixture);
  REQUIRE(s.size() == 24);
  BettiVector b = betti(build_complex(s, 3));
  REQUIRE(b.face_counts == std::vector<uint64_t>{24, 44, 22, 0});
  REQUIRE(b.betti == std::vector<uint64_t>{1, 0, 1, 0});
  CHECK(b.betti[2] >= 1);
}

TEST_CASE("4-cube minus an antipodal vertex pair is a 2-sphere shell") {
  std::vector<uint64_t> words;
  for (uint64_t v = 1; v < 15; v++) words.push_back(v);
  SolutionSet s = set_from_words(5, words);  // embedded in the 5-cube
  BettiVector b = betti(build_complex(s, 3));
  REQUIRE(b.face_counts == std::vector<uint64_t>{14, 24, 12, 0});
  REQUIRE(b.betti == std::vector<uint64_t>{1, 0, 1, 0});
}

TEST_CASE("full cubes are contractible up to n=6") {
  for (int n = 0; n <= 6; n++) {
    std::vector<uint64_t> words(1ull << n);
    std::iota(words.begin(), words.end(), 0);
    SolutionSet s = set_from_words(n, words);
    BettiVector b = betti(build_complex(s, n));
    REQUIRE(b.betti[0] == 1);
    for (size_t d = 1; d < b.betti.size(); d++) REQUIRE(b.betti[d] == 0);
  }
}

TEST_CASE("empty solution set gives an empty complex and zero betti") {
  SolutionSet s;
  s.num_vars = 4;
  s.complete = true;
  BettiVector b = betti(build_complex(s, 3));
  for (uint64_t v : b.betti) CHECK(v == 0);
  CHECK(connected_components(s).empty());
}

TEST_CASE("incomplete sets are refused") {
  SolutionSet s = set_from_words(3, {0, 1});
  s.complete = false;
  CHECK_THROWS_AS(build_complex(s, 2), GuardRefused);
  CHECK_THROWS_AS(build_complex(set_from_words(2, {0}), -1), InvalidParameter);
}

TEST_CASE("betti agrees with the naive oracle and Euler identity on random sets") {
  for (uint64_t seed = 0; seed < 60; seed++) {
    int n = 3 + static_cast<int>(seed % 5);  // 3..7
    SolutionSet s = random_set(n, 4 + static_cast<int>(seed % 20), seed);
    CubicalComplex c = build_complex(s, std::min(n, 4));
    BettiVector b = betti(c);
    auto oracle_b = betti_via_oracle(c);
    REQUIRE(b.betti.size() == oracle_b.size());
    for (size_t d = 0; d < oracle_b.size(); d++)
      REQUIRE(static_cast<int64_t>(b.betti[d]) == oracle_b[d]);
    REQUIRE(b.euler_from_faces() == b.euler_from_betti());
  }
}

TEST_CASE("closure holds exhaustively on random complexes up to n=12") {
  for (uint64_t seed = 100; seed < 130; seed++) {
    int n = 8 + static_cast<int>(seed % 5);  // 8..12
    SolutionSet s = random_set(n, 40 + static_cast<int>(seed % 50), seed);
    check_closure(build_complex(s, 3));
  }
}

TEST_CASE("beta0 equals connected component count on 200 random sets") {
  for (uint64_t seed = 0; seed < 200; seed++) {
    int n = 2 + static_cast<int>(seed % 9);  // 2..10
    int size = 1 + static_cast<int>(seed % (1ull << std::min(n, 5)));
    SolutionSet s = random_set(n, size, derive_seed(404, seed));
    BettiVector b = betti(build_complex(s, std::min(3, n)));
    auto parts = connected_components(s);
    REQUIRE(b.betti[0] == parts.size());
    size_t total = 0;
    for (const auto& p : parts) total += p.size();
    REQUIRE(total == s.size());
  }
}

TEST_CASE("betti vector is invariant under coordinate permutations") {
  SolutionSet base6 = set_from_strings(
      3, {"000", "100", "110", "111", "011", "001"});
  SolutionSet fixture = set_from_words(5, kVoidFixture);
  Rng rng(90);
  for (int trial = 0; trial < 20; trial++) {
    for (const SolutionSet* s : {&base6, &fixture}) {
      std::vector<int> perm(s->num_vars);
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = s->num_vars - 1; i > 0; i--)
        std::swap(perm[i], perm[rng.below(i + 1)]);
      BettiVector a = betti(build_complex(*s, 3));
      BettiVector b = betti(build_complex(permuted(*s, perm), 3));
      REQUIRE(a.betti == b.betti);
      REQUIRE(a.face_counts == b.face_counts);
    }
  }
}

TEST_CASE("formula betti: xorsat has no loops or voids") {
  int consistent_seen = 0;
  for (uint64_t seed = 0; seed < 20; seed++) {
    XorsatInstance inst = gen_xorsat(10, 5, seed);
    BettiVector b = betti_of_formula(inst.cnf, 2);
    REQUIRE(b.betti.size() >= 3);
    CHECK(b.betti[1] == 0);
    CHECK(b.betti[2] == 0);
    if (inst.system.consistent()) consistent_seen++;
  }
  CHECK(consistent_seen > 0);
}

TEST_CASE("formula betti: unsatisfiable and empty formulas") {
  CnfFormula contradiction;
  contradiction.num_vars = 3;
  contradiction.clauses = {{1}, {-1}};
  BettiVector dead = betti_of_formula(contradiction, 3);
  for (uint64_t v : dead.betti) CHECK(v == 0);

  CnfFormula empty;
  empty.num_vars = 4;
  BettiVector full = betti_of_formula(empty, 3);
  REQUIRE(full.betti[0] == 1);
  for (size_t d = 1; d < full.betti.size(); d++) REQUIRE(full.betti[d] == 0);

  CnfFormula wide;
  wide.num_vars = 25;
  CHECK_THROWS_AS(betti_of_formula(wide, 2), GuardRefused);
}

TEST_CASE("component examples") {
  CHECK(connected_components(set_from_words(2, {0, 3})).size() == 2);
  auto parts = connected_components(set_from_words(2, {0, 1, 3}));
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].size() == 3);
}

TEST_CASE("rank guard refuses oversized dimensions") {
  CnfFormula empty17;
  empty17.num_vars = 17;
  SolutionSet s = brute_force(empty17);
  CubicalComplex c = build_complex(s, 0);
  CHECK_THROWS_AS(betti(c), ComplexTooLarge);
}

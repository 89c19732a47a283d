#include "solspace/lineartest.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "solspace/enumerate.hpp"
#include "solspace/errors.hpp"
#include "solspace/rng.hpp"
#include "solspace/shatter.hpp"

namespace solspace {

namespace {

// Above this width the pool switches from full enumeration to
// forced-probe witnesses, which sample across clusters.
constexpr int kEnumCutoff = 16;
constexpr int kProbeCount = 200;

// Dense instances reject most probes at 5% pins, so the gatherer halves
// the pin fraction and probes again until the pool can support a few
// hundred distinct triples. Witnesses accumulate across levels.
constexpr int kPoolFloor = 16;
constexpr double kFractionLadder[] = {0.05, 0.025, 0.0125, 0.00625};

std::vector<Assignment> gather_pool(const CnfFormula& f, uint64_t seed,
                                    const SolverOptions& opts,
                                    std::string* how) {
  std::vector<Assignment> pool;
  if (f.num_vars <= kEnumCutoff) {
    SolutionSet s = enumerate_solutions(f, 1ull << f.num_vars, opts);
    pool = s.members;
    *how = "complete enumeration";
  } else {
    int levels_used = 0;
    for (double fraction : kFractionLadder) {
      auto records = forced_probe_sample(f, fraction, kProbeCount,
                                         derive_seed(seed, 2 + levels_used),
                                         opts);
      for (const auto& r : records)
        if (r.witness) pool.push_back(*r.witness);
      std::sort(pool.begin(), pool.end());
      pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
      levels_used++;
      if (static_cast<int>(pool.size()) >= kPoolFloor) break;
    }
    *how = "forced probes (" + std::to_string(kProbeCount) +
           " per level, pin fraction halved from 5% across " +
           std::to_string(levels_used) + " level(s))";
  }
  for (const auto& a : pool)
    if (!satisfies(f, a))
      throw std::logic_error("xor_closure_test: pool member fails re-check");
  return pool;
}

}  // namespace

XorReport xor_closure_test(const CnfFormula& f, long long triples,
                           uint64_t seed, const SolverOptions& opts) {
  f.check_well_formed();
  if (triples < 1)
    throw InvalidParameter("xor_closure_test: triples must be >= 1");

  std::string how;
  std::vector<Assignment> pool = gather_pool(f, seed, opts, &how);
  long long k = static_cast<long long>(pool.size());
  if (k < 3)
    throw InsufficientSample("xor_closure_test: found " + std::to_string(k) +
                             " distinct solutions, need at least 3");

  long long available = k * (k - 1) * (k - 2) / 6;
  long long want = std::min(triples, available);

  XorReport rep;
  rep.sampling = "affine x^y^z over " + std::to_string(k) +
                 " distinct solutions via " + how;

  auto test_triple = [&](int i, int j, int l) {
    Assignment w = pool[i] ^ pool[j] ^ pool[l];
    if (!satisfies(f, w)) rep.violations++;
    rep.triples_tested++;
  };

  if (want == available) {
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (int l = j + 1; l < k; ++l) test_triple(i, j, l);
  } else {
    Rng rng(derive_seed(seed, 1));
    std::set<std::tuple<int, int, int>> used;
    while (rep.triples_tested < want) {
      std::vector<int> idx = rng.sample_distinct(static_cast<int>(k), 3);
      std::sort(idx.begin(), idx.end());
      if (used.emplace(idx[0], idx[1], idx[2]).second)
        test_triple(idx[0], idx[1], idx[2]);
    }
  }

  rep.violation_rate =
      static_cast<double>(rep.violations) / static_cast<double>(rep.triples_tested);
  return rep;
}

}  // namespace solspace

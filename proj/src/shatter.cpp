#include "solspace/shatter.hpp"

#include <algorithm>
#include <cmath>

#include "solspace/errors.hpp"
#include "solspace/rng.hpp"

namespace solspace {

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

int medoid_of(const std::vector<Assignment>& solutions,
              const std::vector<int>& cluster) {
  int best = cluster[0];
  int best_ecc = -1;
  for (int idx : cluster) {
    int ecc = 0;
    for (int other : cluster)
      ecc = std::max(ecc, solutions[idx].hamming(solutions[other]));
    if (best_ecc < 0 || ecc < best_ecc) {
      best = idx;
      best_ecc = ecc;
    }
  }
  return best;
}

}  // namespace

int default_tau(int n) {
  return std::max(4, static_cast<int>((n + 9) / 10));
}

std::vector<ProbeRecord> forced_probe_sample(const CnfFormula& f,
                                             double fraction, int probes,
                                             uint64_t seed,
                                             const SolverOptions& opts) {
  f.check_well_formed();
  if (!(fraction >= 0.0 && fraction < 1.0))
    throw InvalidParameter("fraction must be in [0, 1)");
  if (probes < 1) throw InvalidParameter("probes must be >= 1");

  int n = f.num_vars;
  int pins = static_cast<int>(round_half_even(fraction * n));

  std::vector<ProbeRecord> out;
  out.reserve(probes);
  for (int id = 0; id < probes; ++id) {
    Rng rng(derive_seed(seed, static_cast<uint64_t>(id)));
    ProbeRecord rec;
    rec.probe_id = id;
    std::vector<int> assumptions;
    for (int v : rng.sample_distinct(n, pins)) {
      bool value = rng.coin();
      rec.fixed_vars.emplace_back(v, value);
      assumptions.push_back(value ? v + 1 : -(v + 1));
    }
    SolverOptions probe_opts = opts;
    probe_opts.seed = derive_seed(seed, static_cast<uint64_t>(id), 1);
    SolveResult r = solve(f, assumptions, probe_opts);
    rec.status = r.status;
    rec.witness = std::move(r.witness);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<std::vector<int>> cluster_assign(
    const std::vector<Assignment>& solutions, int tau) {
  if (tau < 0) throw InvalidParameter("tau must be >= 0");
  int k = static_cast<int>(solutions.size());
  for (const Assignment& a : solutions)
    if (a.size() != solutions[0].size())
      throw InvalidParameter("assignments differ in length");

  UnionFind uf(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (solutions[i].hamming(solutions[j]) <= tau) uf.unite(i, j);

  std::vector<std::vector<int>> by_root(k);
  for (int i = 0; i < k; ++i) by_root[uf.find(i)].push_back(i);
  std::vector<std::vector<int>> clusters;
  for (auto& c : by_root)
    if (!c.empty()) clusters.push_back(std::move(c));
  return clusters;
}

ClusterReport report_from_probes(const std::vector<ProbeRecord>& records,
                                 int n, int tau) {
  ClusterReport rep;
  rep.n = n;
  rep.probes_run = static_cast<int>(records.size());
  rep.linkage_threshold = tau;

  std::vector<Assignment> sols;
  for (const ProbeRecord& r : records)
    if (r.witness) sols.push_back(*r.witness);
  std::sort(sols.begin(), sols.end());
  sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
  rep.solutions_found = static_cast<int>(sols.size());

  auto clusters = cluster_assign(sols, tau);
  rep.cluster_count_lower_bound = static_cast<int>(clusters.size());

  int64_t intra_sum = 0;
  int64_t intra_pairs = 0;
  int diameter = 0;
  bool any_pair = false;
  for (const auto& c : clusters) {
    for (size_t i = 0; i < c.size(); ++i) {
      for (size_t j = i + 1; j < c.size(); ++j) {
        int d = sols[c[i]].hamming(sols[c[j]]);
        intra_sum += d;
        ++intra_pairs;
        diameter = std::max(diameter, d);
        any_pair = true;
      }
    }
  }
  if (any_pair) {
    rep.intra_mean = static_cast<double>(intra_sum) / intra_pairs;
    rep.intra_diameter = diameter;
  }

  if (clusters.size() >= 2) {
    std::vector<int> medoids;
    for (const auto& c : clusters) medoids.push_back(medoid_of(sols, c));
    int64_t inter_sum = 0;
    int64_t inter_pairs = 0;
    for (size_t i = 0; i < medoids.size(); ++i) {
      for (size_t j = i + 1; j < medoids.size(); ++j) {
        inter_sum += sols[medoids[i]].hamming(sols[medoids[j]]);
        ++inter_pairs;
      }
    }
    rep.inter_mean = static_cast<double>(inter_sum) / inter_pairs;
    rep.inter_over_n = *rep.inter_mean / n;
    if (rep.intra_mean && *rep.intra_mean > 0.0)
      rep.ratio = *rep.inter_mean / *rep.intra_mean;
  }
  return rep;
}

ClusterReport shatter_report(const CnfFormula& f, double fraction, int probes,
                             int tau, uint64_t seed,
                             const SolverOptions& opts) {
  auto records = forced_probe_sample(f, fraction, probes, seed, opts);
  for (const ProbeRecord& r : records)
    if (r.witness && !satisfies(f, *r.witness))
      throw std::logic_error("probe witness fails re-verification");
  return report_from_probes(records, f.num_vars, tau);
}

}  // namespace solspace

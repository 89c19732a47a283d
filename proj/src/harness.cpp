#include "solspace/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "json.hpp"
#include "solspace/dimacs.hpp"
#include "solspace/drunkwalk.hpp"
#include "solspace/errors.hpp"
#include "solspace/external.hpp"
#include "solspace/gen.hpp"
#include "solspace/lineartest.hpp"
#include "solspace/rng.hpp"
#include "solspace/shatter.hpp"
#include "solspace/topology.hpp"
#include "solspace/tseitin.hpp"

namespace solspace {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kExperiments = {
    "gen", "solve", "homology", "shatter", "drunkwalk", "xortest", "scaling"};
const std::set<std::string> kFamilies = {"random", "twosat", "hornsat",
                                         "xorsat", "tseitin"};
const std::set<std::string> kConfigKeys = {
    "schema_version", "experiment", "family", "n", "alpha", "k", "m",
    "charge", "fraction", "probes", "tau", "budget", "steps", "trials",
    "triples", "sizes", "seeds_per_size", "master_seed", "workers",
    "output_dir"};

std::string fmt(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.6f", v);
  return b;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string();
}

json json_opt(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> median_of(std::vector<double> xs) {
  if (xs.empty()) return std::nullopt;
  std::sort(xs.begin(), xs.end());
  size_t k = xs.size();
  return (k % 2 == 1) ? xs[k / 2] : (xs[k / 2 - 1] + xs[k / 2]) / 2.0;
}

// The variable count an instance of this config will have at the given
// sweep size (which is the variable count itself except for tseitin,
// where sizes are edge-slot counts 4*m^2).
bool tseitin_side_of(int size, int* side) {
  int m = static_cast<int>(std::lround(std::sqrt(size / 4.0)));
  if (m >= 1 && 4 * m * m == size) {
    *side = m;
    return true;
  }
  return false;
}

int single_size(const ExperimentConfig& c) {
  return c.family == "tseitin" ? 4 * c.m * c.m : c.n;
}

std::vector<int> effective_sizes(const ExperimentConfig& c) {
  if (!c.sizes.empty()) return c.sizes;
  return {single_size(c)};
}

CnfFormula make_instance(const ExperimentConfig& c, int size, uint64_t seed) {
  if (c.family == "random") return gen_random_ksat(size, c.alpha, c.k, seed);
  if (c.family == "twosat")
    return gen_control_family(ControlFamily::twosat, size, c.m, seed);
  if (c.family == "hornsat")
    return gen_control_family(ControlFamily::hornsat, size, c.m, seed);
  if (c.family == "xorsat")
    return gen_control_family(ControlFamily::xorsat, size, c.m, seed);
  int side = 0;
  if (!tseitin_side_of(size, &side))
    throw InvalidParameter("tseitin size must be 4*m^2, got " +
                           std::to_string(size));
  ExpanderGraph g = margulis_expander(side);
  return tseitin(g, random_charges(g.num_vertices(), c.charge == "odd", seed))
      .cnf;
}

struct ItemDesc {
  int index = 0;
  int size = 0;
  int rep = 0;
};

struct ItemResult {
  bool ok = false;
  std::string error;
  std::string csv_row;
  json row;
  std::optional<ScalingPoint> point;
  std::optional<std::pair<double, double>> chart_point;
  std::string dimacs;
  std::string dimacs_name;
};

uint64_t beta_at(const BettiVector& b, size_t d) {
  return d < b.betti.size() ? b.betti[d] : 0;
}

ItemResult run_one(const ExperimentConfig& c, const ItemDesc& d,
                   const std::string& bridge) {
  ItemResult out;
  SolverOptions opts;
  opts.conflict_budget = c.budget;

  if (c.experiment == "gen") {
    uint64_t seed = derive_seed(c.master_seed, static_cast<uint64_t>(d.size),
                                static_cast<uint64_t>(d.rep));
    CnfFormula f = make_instance(c, d.size, seed);
    out.csv_row = std::to_string(d.size) + "," + std::to_string(seed) + "," +
                  std::to_string(f.num_vars) + "," +
                  std::to_string(f.num_clauses()) + "," + fmt(f.density());
    out.row = {{"size", d.size},
               {"seed", seed},
               {"vars", f.num_vars},
               {"clauses", f.num_clauses()},
               {"density", f.density()}};
    out.chart_point = {{static_cast<double>(d.size),
                        static_cast<double>(f.num_clauses())}};
    out.dimacs = dimacs_emit(f);
    out.dimacs_name = "instance-" + std::to_string(d.size) + "-" +
                      std::to_string(d.rep) + ".cnf";
    return out;
  }

  if (c.experiment == "solve" || c.experiment == "scaling") {
    uint64_t seed = derive_seed(c.master_seed, static_cast<uint64_t>(d.size),
                                static_cast<uint64_t>(d.rep));
    CnfFormula f = make_instance(c, d.size, seed);
    SolveResult r;
    if (c.experiment == "solve" && !bridge.empty())
      r = external_solve(f, bridge);
    else
      r = solve(f, {}, opts);
    std::string conflicts =
        r.stats.counters_valid
            ? std::to_string(static_cast<long long>(r.stats.conflicts))
            : std::string();
    if (c.experiment == "scaling") {
      out.point = ScalingPoint{d.size,
                               static_cast<long long>(r.stats.conflicts),
                               r.status, seed};
      out.csv_row = std::to_string(d.size) + "," + std::to_string(seed) +
                    "," + conflicts + "," + status_name(r.status);
      out.row = {{"n", d.size},
                 {"seed", seed},
                 {"conflicts", static_cast<long long>(r.stats.conflicts)},
                 {"status", status_name(r.status)}};
    } else {
      std::string decisions =
          r.stats.counters_valid
              ? std::to_string(static_cast<long long>(r.stats.decisions))
              : std::string();
      std::string restarts =
          r.stats.counters_valid
              ? std::to_string(static_cast<long long>(r.stats.restarts))
              : std::string();
      out.csv_row = std::to_string(d.size) + "," + std::to_string(seed) +
                    "," + status_name(r.status) + "," + conflicts + "," +
                    decisions + "," + restarts;
      out.row = {{"size", d.size},
                 {"seed", seed},
                 {"status", status_name(r.status)},
                 {"conflicts", r.stats.counters_valid
                                   ? json(static_cast<long long>(
                                         r.stats.conflicts))
                                   : json(nullptr)},
                 {"decisions", r.stats.counters_valid
                                   ? json(static_cast<long long>(
                                         r.stats.decisions))
                                   : json(nullptr)},
                 {"restarts", r.stats.counters_valid
                                  ? json(static_cast<long long>(
                                        r.stats.restarts))
                                  : json(nullptr)}};
      if (r.stats.counters_valid)
        out.chart_point = {{static_cast<double>(d.index + 1),
                            static_cast<double>(r.stats.conflicts)}};
    }
    return out;
  }

  if (c.experiment == "homology") {
    uint64_t s = derive_seed(c.master_seed, static_cast<uint64_t>(d.rep));
    uint64_t seed = derive_seed(s, 0);
    CnfFormula f = make_instance(c, d.size, seed);
    BettiVector b = betti_of_formula(f, 3);
    out.csv_row = std::to_string(f.num_vars) + "," + std::to_string(seed) +
                  "," + std::to_string(beta_at(b, 0)) + "," +
                  std::to_string(beta_at(b, 1)) + "," +
                  std::to_string(beta_at(b, 2));
    out.row = {{"n", f.num_vars},
               {"seed", seed},
               {"beta0", beta_at(b, 0)},
               {"beta1", beta_at(b, 1)},
               {"beta2", beta_at(b, 2)}};
    out.chart_point = {{static_cast<double>(d.rep + 1),
                        static_cast<double>(beta_at(b, 2))}};
    return out;
  }

  if (c.experiment == "shatter") {
    uint64_t s = derive_seed(c.master_seed, static_cast<uint64_t>(d.rep));
    uint64_t seed = derive_seed(s, 0);
    CnfFormula f = make_instance(c, d.size, seed);
    int tau = c.tau < 0 ? default_tau(f.num_vars) : c.tau;
    ClusterReport rep =
        shatter_report(f, c.fraction, c.probes, tau, derive_seed(s, 1), opts);
    out.csv_row = std::to_string(rep.n) + "," + std::to_string(seed) + "," +
                  std::to_string(rep.probes_run) + "," +
                  std::to_string(rep.solutions_found) + "," +
                  std::to_string(rep.cluster_count_lower_bound) + "," +
                  fmt_opt(rep.intra_mean) + "," +
                  fmt_opt(rep.intra_diameter) + "," +
                  fmt_opt(rep.inter_mean) + "," + fmt_opt(rep.ratio) + "," +
                  fmt_opt(rep.inter_over_n) + "," +
                  std::to_string(rep.linkage_threshold);
    out.row = {{"n", rep.n},
               {"seed", seed},
               {"probes_run", rep.probes_run},
               {"solutions", rep.solutions_found},
               {"clusters", rep.cluster_count_lower_bound},
               {"intra_mean", json_opt(rep.intra_mean)},
               {"intra_diameter", json_opt(rep.intra_diameter)},
               {"inter_mean", json_opt(rep.inter_mean)},
               {"ratio", json_opt(rep.ratio)},
               {"inter_over_n", json_opt(rep.inter_over_n)},
               {"tau", rep.linkage_threshold}};
    if (rep.inter_over_n)
      out.chart_point = {{static_cast<double>(d.rep + 1), *rep.inter_over_n}};
    return out;
  }

  if (c.experiment == "drunkwalk") {
    CnfFormula f =
        make_instance(c, d.size, derive_seed(c.master_seed, 101));
    TargetSpec target = select_target(f, c.fraction, c.probes,
                                      derive_seed(c.master_seed, 102), opts);
    if (c.tau >= 0) target.tau = c.tau;
    auto strategy = static_cast<WalkStrategy>(d.rep);
    double rate =
        hit_rate(f, strategy, target, c.steps, c.trials,
                 derive_seed(c.master_seed, 200 + static_cast<uint64_t>(d.rep)),
                 opts);
    out.csv_row = std::string(strategy_name(strategy)) + "," +
                  std::to_string(f.num_vars) + "," + std::to_string(c.steps) +
                  "," + std::to_string(c.trials) + "," + fmt(rate);
    out.row = {{"strategy", strategy_name(strategy)},
               {"n", f.num_vars},
               {"steps", c.steps},
               {"trials", c.trials},
               {"hit_rate", rate}};
    out.chart_point = {{static_cast<double>(d.rep + 1), rate}};
    return out;
  }

  if (c.experiment == "xortest") {
    uint64_t s = derive_seed(c.master_seed, static_cast<uint64_t>(d.rep));
    uint64_t seed = derive_seed(s, 0);
    CnfFormula f = make_instance(c, d.size, seed);
    XorReport rep = xor_closure_test(f, c.triples, derive_seed(s, 1), opts);
    out.csv_row = std::to_string(f.num_vars) + "," + std::to_string(seed) +
                  "," + std::to_string(rep.triples_tested) + "," +
                  std::to_string(rep.violations) + "," +
                  fmt(rep.violation_rate);
    out.row = {{"n", f.num_vars},
               {"seed", seed},
               {"triples", rep.triples_tested},
               {"violations", rep.violations},
               {"rate", rep.violation_rate},
               {"sampling", rep.sampling}};
    out.chart_point = {{static_cast<double>(d.rep + 1), rep.violation_rate}};
    return out;
  }

  throw InvalidParameter("config.experiment: unknown '" + c.experiment + "'");
}

const char* csv_header(const std::string& experiment) {
  if (experiment == "gen") return "size,seed,vars,clauses,density";
  if (experiment == "solve")
    return "size,seed,status,conflicts,decisions,restarts";
  if (experiment == "homology") return "n,seed,beta0,beta1,beta2";
  if (experiment == "shatter")
    return "n,seed,probes_run,solutions,clusters,intra_mean,intra_diameter,"
           "inter_mean,ratio,inter_over_n,tau";
  if (experiment == "drunkwalk") return "strategy,n,steps,trials,hit_rate";
  if (experiment == "xortest") return "n,seed,triples,violations,rate";
  return "n,seed,conflicts,status";
}

std::string timestamp_utc() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char b[32];
  std::strftime(b, sizeof b, "%Y%m%d-%H%M%S", &tm);
  return b;
}

fs::path fresh_run_dir(const ExperimentConfig& c) {
  fs::path base = fs::path(c.output_dir) / c.experiment;
  std::string stem = timestamp_utc() + "-" + std::to_string(c.master_seed);
  fs::path dir = base / stem;
  for (int i = 2; fs::exists(dir); ++i)
    dir = base / (stem + "-" + std::to_string(i));
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidParameter(std::string("config: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidParameter("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!kConfigKeys.count(key))
      throw InvalidParameter("config." + key + ": unknown field");
  }

  ExperimentConfig c;
  auto want = [&](const char* key, json::value_t t1,
                  json::value_t t2 = json::value_t::discarded) -> const json* {
    auto it = j.find(key);
    if (it == j.end()) return nullptr;
    if (it->type() != t1 && it->type() != t2)
      throw InvalidParameter(std::string("config.") + key +
                             ": unexpected type");
    return &*it;
  };
  auto want_num = [&](const char* key) -> const json* {
    auto it = j.find(key);
    if (it == j.end()) return nullptr;
    if (!it->is_number())
      throw InvalidParameter(std::string("config.") + key +
                             ": expected a number");
    return &*it;
  };

  if (const json* v = want_num("schema_version"))
    c.schema_version = v->get<int>();
  if (const json* v = want("experiment", json::value_t::string))
    c.experiment = v->get<std::string>();
  if (const json* v = want("family", json::value_t::string))
    c.family = v->get<std::string>();
  if (const json* v = want_num("n")) c.n = v->get<int>();
  if (const json* v = want_num("alpha")) c.alpha = v->get<double>();
  if (const json* v = want_num("k")) c.k = v->get<int>();
  if (const json* v = want_num("m")) c.m = v->get<int>();
  if (const json* v = want("charge", json::value_t::string))
    c.charge = v->get<std::string>();
  if (const json* v = want_num("fraction")) c.fraction = v->get<double>();
  if (const json* v = want_num("probes")) c.probes = v->get<int>();
  if (const json* v = want_num("tau")) c.tau = v->get<int>();
  if (const json* v = want_num("budget")) c.budget = v->get<long long>();
  if (const json* v = want_num("steps")) c.steps = v->get<int>();
  if (const json* v = want_num("trials")) c.trials = v->get<int>();
  if (const json* v = want_num("triples")) c.triples = v->get<long long>();
  if (const json* v = want("sizes", json::value_t::array)) {
    for (const auto& e : *v) {
      if (!e.is_number())
        throw InvalidParameter("config.sizes: expected numbers");
      c.sizes.push_back(e.get<int>());
    }
  }
  if (const json* v = want_num("seeds_per_size"))
    c.seeds_per_size = v->get<int>();
  if (const json* v = want_num("master_seed"))
    c.master_seed = v->get<uint64_t>();
  if (const json* v = want_num("workers")) c.workers = v->get<int>();
  if (const json* v = want("output_dir", json::value_t::string))
    c.output_dir = v->get<std::string>();
  return c;
}

std::string emit_config(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["experiment"] = c.experiment;
  j["family"] = c.family;
  j["n"] = c.n;
  j["alpha"] = c.alpha;
  j["k"] = c.k;
  j["m"] = c.m;
  j["charge"] = c.charge;
  j["fraction"] = c.fraction;
  j["probes"] = c.probes;
  j["tau"] = c.tau;
  j["budget"] = c.budget;
  j["steps"] = c.steps;
  j["trials"] = c.trials;
  j["triples"] = c.triples;
  j["sizes"] = c.sizes;
  j["seeds_per_size"] = c.seeds_per_size;
  j["master_seed"] = c.master_seed;
  j["workers"] = c.workers;
  j["output_dir"] = c.output_dir;
  return j.dump(2) + "\n";
}

void validate_config(const ExperimentConfig& c) {
  std::vector<std::string> errs;
  auto bad = [&](const std::string& field, const std::string& why) {
    errs.push_back("config." + field + ": " + why);
  };

  if (c.schema_version != 1) bad("schema_version", "expected 1");
  if (!kExperiments.count(c.experiment))
    bad("experiment", "unknown '" + c.experiment + "'");
  if (!kFamilies.count(c.family)) bad("family", "unknown '" + c.family + "'");
  if (c.workers < 1 || c.workers > 64) bad("workers", "must be in [1, 64]");
  if (c.output_dir.empty()) bad("output_dir", "must not be empty");
  if (c.budget < 1) bad("budget", "must be >= 1");
  if (!c.sizes.empty())
    for (size_t i = 1; i < c.sizes.size(); ++i)
      if (c.sizes[i] <= c.sizes[i - 1]) {
        bad("sizes", "must be strictly ascending");
        break;
      }

  bool uses_sizes = c.experiment == "scaling" || !c.sizes.empty();
  if (c.experiment == "scaling" && c.sizes.empty())
    bad("sizes", "scaling requires a nonempty size list");

  if (c.family == "random") {
    if (c.alpha <= 0) bad("alpha", "must be > 0");
    if (c.k < 1 || c.k > 30) bad("k", "must be in [1, 30]");
    if (!uses_sizes && c.n < 1) bad("n", "must be >= 1");
    if (!uses_sizes && c.n >= 1 && c.k > c.n)
      bad("k", "must not exceed the variable count");
  } else if (c.family == "tseitin") {
    if (c.charge != "odd" && c.charge != "even")
      bad("charge", "must be odd or even");
    if (!uses_sizes && c.m < 1) bad("m", "expander side must be >= 1");
  } else {
    if (!uses_sizes && c.n < 1) bad("n", "must be >= 1");
    if (c.m < 1) bad("m", "constraint count must be >= 1");
  }
  if (uses_sizes) {
    for (int s : c.sizes) {
      if (s < 1) {
        bad("sizes", "entries must be >= 1");
        break;
      }
      int side = 0;
      if (c.family == "tseitin" && !tseitin_side_of(s, &side)) {
        bad("sizes", "tseitin sizes must be edge-slot counts 4*m^2");
        break;
      }
    }
  }

  if (c.experiment == "scaling" &&
      !(c.family == "random" || c.family == "tseitin"))
    bad("family", "scaling sweeps support random or tseitin");
  if (c.experiment != "drunkwalk" && c.seeds_per_size < 1)
    bad("seeds_per_size", "must be >= 1");

  if (c.experiment == "homology") {
    int vars = single_size(c);
    if (vars > 24)
      bad("n", "homology enumerates solutions, so it requires n <= 24");
  }
  if (c.experiment == "shatter" || c.experiment == "drunkwalk") {
    if (c.fraction < 0.0 || c.fraction >= 1.0)
      bad("fraction", "must be in [0, 1)");
    if (c.probes < 1) bad("probes", "must be >= 1");
    if (c.tau < -1) bad("tau", "must be >= 0, or -1 for the default");
  }
  if (c.experiment == "drunkwalk") {
    if (c.steps < 0) bad("steps", "must be >= 0");
    if (c.trials < 1) bad("trials", "must be >= 1");
  }
  if (c.experiment == "xortest" && c.triples < 1)
    bad("triples", "must be >= 1");

  if (!errs.empty()) {
    std::string msg = errs[0];
    for (size_t i = 1; i < errs.size(); ++i) msg += "; " + errs[i];
    throw InvalidParameter(msg);
  }
}

std::string emit_chart(const ChartSeries& series,
                       const std::optional<ScalingFit>& fit) {
  if (series.points.empty())
    throw InvalidParameter("emit_chart: series has no points");

  const double W = kChartWidth, H = kChartHeight, M = kChartMargin;
  double xmin = series.points[0].first, xmax = xmin;
  double ymin = series.points[0].second, ymax = ymin;
  for (const auto& [x, y] : series.points) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (series.band) {
    ymin = std::min(ymin, series.band->first);
    ymax = std::max(ymax, series.band->second);
  }
  auto transform = [&](double x) {
    return fit && fit->model == ScalingModel::exp_two_thirds
               ? std::pow(x, 2.0 / 3.0)
               : x;
  };
  if (fit) {
    ymin = std::min({ymin, fit->coefficient * transform(xmin) + fit->intercept,
                     fit->coefficient * transform(xmax) + fit->intercept});
    ymax = std::max({ymax, fit->coefficient * transform(xmin) + fit->intercept,
                     fit->coefficient * transform(xmax) + fit->intercept});
  }
  if (xmax == xmin) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (ymax == ymin) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  auto px = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
  auto py = [&](double y) {
    return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M);
  };
  auto num = [](double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.2f", v);
    return std::string(b);
  };
  auto label = [](double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.4g", v);
    return std::string(b);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) +
         "\" height=\"" + num(H) + "\" viewBox=\"0 0 " + num(W) + " " +
         num(H) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"" + num(W / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" +
         series.title + "</text>\n";

  if (series.band) {
    double top = py(series.band->second), bottom = py(series.band->first);
    svg += "<rect x=\"" + num(M) + "\" y=\"" + num(top) + "\" width=\"" +
           num(W - 2 * M) + "\" height=\"" + num(bottom - top) +
           "\" fill=\"#89b4fa\" fill-opacity=\"0.25\"/>\n";
    svg += "<text x=\"" + num(W - M - 4) + "\" y=\"" + num(top - 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\" fill=\"#1e40af\">" +
           label(series.band->first) + " - " + label(series.band->second) +
           "</text>\n";
  }

  // axes with four ticks each
  svg += "<line x1=\"" + num(M) + "\" y1=\"" + num(H - M) + "\" x2=\"" +
         num(W - M) + "\" y2=\"" + num(H - M) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + num(M) + "\" y1=\"" + num(M) + "\" x2=\"" + num(M) +
         "\" y2=\"" + num(H - M) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 3; ++i) {
    double fx = xmin + (xmax - xmin) * i / 3.0;
    double fy = ymin + (ymax - ymin) * i / 3.0;
    svg += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(H - M + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           label(fx) + "</text>\n";
    svg += "<text x=\"" + num(M - 8) + "\" y=\"" + num(py(fy) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           label(fy) + "</text>\n";
  }
  svg += "<text x=\"" + num(W / 2) + "\" y=\"" + num(H - 16) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" +
         series.x_label + "</text>\n";
  svg += "<text x=\"18\" y=\"" + num(H / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 18 " +
         num(H / 2) + ")\">" + series.y_label + "</text>\n";

  if (fit) {
    std::string path;
    for (int i = 0; i <= 64; ++i) {
      double x = xmin + (xmax - xmin) * i / 64.0;
      double y = fit->coefficient * transform(x) + fit->intercept;
      path += (i == 0 ? "M" : " L") + num(px(x)) + " " + num(py(y));
    }
    svg += "<path d=\"" + path +
           "\" fill=\"none\" stroke=\"#d97706\" stroke-width=\"1.5\"/>\n";
  }

  for (const auto& [x, y] : series.points)
    svg += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
           "\" r=\"3.5\" fill=\"#2563eb\"/>\n";

  svg += "</svg>\n";
  return svg;
}

RunRecord run(const ExperimentConfig& config) {
  validate_config(config);
  auto t0 = std::chrono::steady_clock::now();

  std::vector<ItemDesc> descs;
  if (config.experiment == "drunkwalk") {
    for (int i = 0; i < 4; ++i)
      descs.push_back({i, single_size(config), i});
  } else if (config.experiment == "homology" ||
             config.experiment == "shatter" ||
             config.experiment == "xortest") {
    for (int i = 0; i < config.seeds_per_size; ++i)
      descs.push_back({i, single_size(config), i});
  } else {
    int idx = 0;
    for (int size : effective_sizes(config))
      for (int i = 0; i < config.seeds_per_size; ++i)
        descs.push_back({idx++, size, i});
  }

  std::string bridge =
      config.experiment == "solve" ? external_solver_from_env() : "";

  std::vector<ItemResult> results(descs.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= descs.size()) break;
      try {
        ItemResult r = run_one(config, descs[i], bridge);
        r.ok = true;
        results[i] = std::move(r);
      } catch (const std::exception& e) {
        results[i].ok = false;
        results[i].error = e.what();
      }
    }
  };
  size_t pool = std::min<size_t>(static_cast<size_t>(config.workers),
                                 descs.size());
  if (pool <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (size_t i = 0; i < pool; ++i) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }

  RunRecord rec;
  rec.config = config;
  rec.tool_version = kToolVersion;
  {
    SolverOptions o;
    char b[160];
    if (!bridge.empty()) {
      rec.solver_fingerprint = "external: " + bridge;
    } else {
      std::snprintf(b, sizeof b,
                    "internal-cdcl budget=%lld var-decay=%.3f "
                    "clause-decay=%.3f luby=%d",
                    config.budget, o.var_decay, o.clause_decay, o.luby_unit);
      rec.solver_fingerprint = b;
    }
  }

  std::string csv = csv_header(config.experiment);
  csv += "\n";
  json rows = json::array();
  for (size_t i = 0; i < results.size(); ++i) {
    rec.items.push_back({static_cast<int>(i), results[i].ok,
                         results[i].error});
    if (!results[i].ok) continue;
    csv += results[i].csv_row + "\n";
    rows.push_back(results[i].row);
  }

  json summary = json::object();
  std::optional<ScalingFit> chart_fit;
  if (config.experiment == "scaling") {
    std::vector<ScalingPoint> points, unsat_points;
    int censored = 0, sat_excluded = 0;
    for (const auto& r : results)
      if (r.ok && r.point) {
        points.push_back(*r.point);
        if (r.point->status == Status::budget_exhausted)
          censored++;
        else if (r.point->status == Status::sat)
          sat_excluded++;
        else
          unsat_points.push_back(*r.point);
      }
    summary["censored"] = censored;
    summary["sat_excluded"] = sat_excluded;
    summary["fits"] = json::object();
    for (ScalingModel model :
         {ScalingModel::exp_linear, ScalingModel::exp_two_thirds}) {
      try {
        ScalingFit f = fit_scaling(unsat_points, model);
        summary["fits"][scaling_model_name(model)] = {
            {"coefficient", f.coefficient},
            {"intercept", f.intercept},
            {"r_squared", f.r_squared},
            {"points_used", f.points_used}};
      } catch (const FitRefused& e) {
        summary["fits"][scaling_model_name(model)] = {{"refused", e.what()}};
      }
    }
    ScalingModel chart_model = config.family == "tseitin"
                                   ? ScalingModel::exp_linear
                                   : ScalingModel::exp_two_thirds;
    try {
      chart_fit = fit_scaling(unsat_points, chart_model);
    } catch (const FitRefused&) {
    }
  } else if (config.experiment == "shatter") {
    std::vector<double> intra, ratio, iovn, clusters, sols;
    for (const auto& r : results) {
      if (!r.ok) continue;
      sols.push_back(r.row["solutions"].get<double>());
      clusters.push_back(r.row["clusters"].get<double>());
      if (!r.row["intra_mean"].is_null())
        intra.push_back(r.row["intra_mean"].get<double>());
      if (!r.row["ratio"].is_null())
        ratio.push_back(r.row["ratio"].get<double>());
      if (!r.row["inter_over_n"].is_null())
        iovn.push_back(r.row["inter_over_n"].get<double>());
    }
    summary["median_solutions"] = json_opt(median_of(sols));
    summary["median_clusters"] = json_opt(median_of(clusters));
    summary["median_intra_mean"] = json_opt(median_of(intra));
    summary["median_ratio"] = json_opt(median_of(ratio));
    summary["median_inter_over_n"] = json_opt(median_of(iovn));
  } else if (config.experiment == "xortest") {
    std::vector<double> rates;
    for (const auto& r : results)
      if (r.ok) rates.push_back(r.row["rate"].get<double>());
    summary["median_rate"] = json_opt(median_of(rates));
  } else if (config.experiment == "drunkwalk") {
    for (const auto& r : results)
      if (r.ok)
        summary[r.row["strategy"].get<std::string>()] =
            r.row["hit_rate"].get<double>();
  }

  json data;
  data["experiment"] = config.experiment;
  if (config.family == "random") {
    data["alpha_critical"] = kAlphaCritical;
    data["regime"] = config.alpha < kAlphaCritical ? "below-threshold"
                                                   : "above-threshold";
  }
  data["rows"] = rows;
  data["summary"] = summary;

  rec.data_csv = csv;
  rec.data_json = data.dump(2) + "\n";

  fs::path dir = fresh_run_dir(config);
  rec.run_dir = dir.string();
  write_file(dir / "data.csv", rec.data_csv);
  write_file(dir / "data.json", rec.data_json);
  for (const auto& r : results)
    if (r.ok && !r.dimacs_name.empty())
      write_file(dir / r.dimacs_name, r.dimacs);

  ChartSeries series;
  series.title = config.experiment;
  for (const auto& r : results)
    if (r.ok && r.chart_point) series.points.push_back(*r.chart_point);
  if (config.experiment == "shatter") {
    series.x_label = "instance";
    series.y_label = "inter_over_n";
    series.band = {{0.35, 0.41}};
  } else if (config.experiment == "scaling") {
    series.points.clear();
    std::map<int, std::vector<long long>> by_size;
    for (const auto& r : results)
      if (r.ok && r.point && r.point->status == Status::unsat)
        by_size[r.point->n].push_back(r.point->conflicts);
    for (auto& [n, cs] : by_size) {
      std::sort(cs.begin(), cs.end());
      size_t k = cs.size();
      double med = (k % 2 == 1) ? static_cast<double>(cs[k / 2])
                                : (static_cast<double>(cs[k / 2 - 1]) +
                                   static_cast<double>(cs[k / 2])) /
                                      2.0;
      series.points.push_back({static_cast<double>(n),
                               std::log2(std::max(med, 1.0))});
    }
    series.x_label = "n";
    series.y_label = "log2(conflicts)";
  } else if (config.experiment == "drunkwalk") {
    series.x_label = "strategy";
    series.y_label = "hit rate";
  } else if (config.experiment == "xortest") {
    series.x_label = "instance";
    series.y_label = "violation rate";
  } else if (config.experiment == "homology") {
    series.x_label = "instance";
    series.y_label = "beta2";
  } else if (config.experiment == "gen") {
    series.x_label = "size";
    series.y_label = "clauses";
  } else {
    series.x_label = "item";
    series.y_label = "conflicts";
  }
  if (!series.points.empty())
    write_file(dir / "chart.svg", emit_chart(series, chart_fit));

  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  json runj;
  runj["config"] = json::parse(emit_config(config));
  runj["tool_version"] = rec.tool_version;
  runj["solver_fingerprint"] = rec.solver_fingerprint;
  runj["timestamp_utc"] = timestamp_utc();
  runj["wall_seconds"] = rec.wall_seconds;
  runj["items"] = json::array();
  for (const auto& it : rec.items)
    runj["items"].push_back(
        {{"index", it.index}, {"ok", it.ok}, {"error", it.error}});
  write_file(dir / "run.json", runj.dump(2) + "\n");

  return rec;
}

}  // namespace solspace

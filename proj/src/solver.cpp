#include "solspace/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "solspace/errors.hpp"
#include "solspace/rng.hpp"

namespace solspace {

const char* status_name(Status s) {
  switch (s) {
    case Status::sat: return "sat";
    case Status::unsat: return "unsat";
    case Status::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

namespace {

// internal literal encoding: 2*var + sign, var in [0, n)
inline int mk_lit(int var, bool neg) { return var * 2 + (neg ? 1 : 0); }
inline int lit_var(int l) { return l >> 1; }
inline bool lit_sign(int l) { return l & 1; }
inline int lit_neg(int l) { return l ^ 1; }

inline int from_dimacs(int dl) { return mk_lit(std::abs(dl) - 1, dl < 0); }

constexpr int8_t kUndef = -1;
constexpr int kNoReason = -1;

// finite Luby sequence walker, MiniSat's closed form
double luby(double y, int x) {
  int size, seq;
  for (size = 1, seq = 0; size < x + 1; seq++, size = 2 * size + 1) {
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    seq--;
    x = x % size;
  }
  return std::pow(y, seq);
}

struct InternalClause {
  std::vector<int> lits;
  double activity = 0.0;
  int lbd = 0;  // distinct decision levels at learn time
  bool learnt = false;
  bool live = false;
};

struct Watcher {
  int clause;
  int blocker;
};

// max-heap over variable activities with index tiebreak, supporting the
// increase-key updates that activity bumps need
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& act) : act_(act) {}

  void grow_to(int nvars) { pos_.resize(nvars, -1); }

  bool contains(int v) const { return pos_[v] >= 0; }
  bool empty() const { return heap_.empty(); }

  void insert(int v) {
    if (contains(v)) return;
    pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    up(pos_[v]);
  }

  void bumped(int v) {
    if (contains(v)) up(pos_[v]);
  }

  int pop_min() {
    int v = heap_[0];
    heap_[0] = heap_.back();
    pos_[heap_[0]] = 0;
    heap_.pop_back();
    pos_[v] = -1;
    if (!heap_.empty()) down(0);
    return v;
  }

 private:
  bool before(int a, int b) const {
    if (act_[a] != act_[b]) return act_[a] > act_[b];
    return a < b;
  }

  void up(int i) {
    int v = heap_[i];
    while (i > 0) {
      int p = (i - 1) >> 1;
      if (!before(v, heap_[p])) break;
      heap_[i] = heap_[p];
      pos_[heap_[i]] = i;
      i = p;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  void down(int i) {
    int v = heap_[i];
    int n = static_cast<int>(heap_.size());
    for (;;) {
      int c = 2 * i + 1;
      if (c >= n) break;
      if (c + 1 < n && before(heap_[c + 1], heap_[c])) c++;
      if (!before(heap_[c], v)) break;
      heap_[i] = heap_[c];
      pos_[heap_[i]] = i;
      i = c;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  const std::vector<double>& act_;
  std::vector<int> heap_;
  std::vector<int> pos_;
};

}  // namespace

struct Solver::Impl {
  CnfFormula formula;  // input + incrementally added clauses
  SolverOptions opts;
  SolveStats totals;

  int nvars = 0;
  bool ok = true;  // false once an empty clause is derived at level 0

  std::vector<InternalClause> arena;
  std::vector<int> free_slots;
  std::vector<std::vector<Watcher>> watches;  // indexed by watched literal

  std::vector<int8_t> assign;   // per var: kUndef / 0 / 1
  std::vector<int> trail;
  std::vector<int> trail_lim;
  size_t qhead = 0;
  std::vector<int> reason;      // per var: arena slot or kNoReason
  std::vector<int> level;       // per var

  std::vector<double> activity;
  double var_inc = 1.0;
  VarHeap order;
  std::vector<uint8_t> phase;

  double cla_inc = 1.0;
  int64_t num_learnts = 0;
  int64_t num_unprotected = 0;
  double max_learnts = 0.0;
  double adjust_confl = 100.0;
  int64_t adjust_cnt = 100;

  std::vector<uint8_t> seen;
  std::vector<int> analyze_clear;
  std::vector<int> redundant_stack;
  std::vector<int> level_stamp;
  int stamp_counter = 0;

  explicit Impl(const CnfFormula& f, SolverOptions o)
      : formula(f), opts(o), order(activity) {
    formula.check_well_formed();
    if (opts.conflict_budget < 0)
      throw InvalidParameter("conflict budget must be nonnegative");

    nvars = formula.num_vars;
    arena.reserve(formula.clauses.size() + 64);
    watches.resize(2 * static_cast<size_t>(nvars));
    assign.assign(nvars, kUndef);
    reason.assign(nvars, kNoReason);
    level.assign(nvars, 0);
    activity.assign(nvars, 0.0);
    order.grow_to(nvars);
    seen.assign(nvars, 0);
    level_stamp.assign(nvars + 1, 0);

    phase.assign(nvars, 0);
    if (opts.random_polarity) {
      Rng rng(opts.seed);
      for (int v = 0; v < nvars; v++) phase[v] = rng.coin() ? 1 : 0;
    }
    for (int v = 0; v < nvars; v++) order.insert(v);

    for (const Clause& c : formula.clauses)
      if (!attach_input_clause(c)) break;

    max_learnts = std::max<double>(formula.clauses.size() / 3.0, 10000.0);
  }

  int decision_level() const { return static_cast<int>(trail_lim.size()); }

  int8_t value_lit(int l) const {
    int8_t a = assign[lit_var(l)];
    if (a == kUndef) return kUndef;
    return static_cast<int8_t>(a ^ static_cast<int8_t>(lit_sign(l)));
  }

  int alloc_clause(std::vector<int> lits, bool learnt) {
    int slot;
    if (!free_slots.empty()) {
      slot = free_slots.back();
      free_slots.pop_back();
    } else {
      slot = static_cast<int>(arena.size());
      arena.emplace_back();
    }
    InternalClause& c = arena[slot];
    c.lits = std::move(lits);
    c.activity = 0.0;
    c.learnt = learnt;
    c.live = true;
    return slot;
  }

  void attach_watches(int slot) {
    const InternalClause& c = arena[slot];
    watches[lit_neg(c.lits[0])].push_back({slot, c.lits[1]});
    watches[lit_neg(c.lits[1])].push_back({slot, c.lits[0]});
  }

  void free_clause(int slot) {
    arena[slot].lits.clear();
    arena[slot].lits.shrink_to_fit();
    arena[slot].live = false;
    free_slots.push_back(slot);
  }

  void enqueue(int l, int from) {
    int v = lit_var(l);
    assign[v] = lit_sign(l) ? 0 : 1;
    reason[v] = from;
    level[v] = decision_level();
    trail.push_back(l);
  }

  // Digest a construction-time or incrementally added clause. Assumes
  // decision level 0. Returns false once the instance is proven
  // unsatisfiable outright.
  bool attach_input_clause(const Clause& dimacs) {
    if (!ok) return false;
    std::vector<int> lits;
    lits.reserve(dimacs.size());
    for (int dl : dimacs) {
      int l = from_dimacs(dl);
      int8_t val = value_lit(l);
      if (val == 1) return true;  // satisfied at level 0 already
      if (val == 0) continue;     // falsified at level 0, drop
      lits.push_back(l);
    }
    if (lits.empty()) {
      ok = false;
      totals.conflicts++;  // contradiction derived while loading
      return false;
    }
    if (lits.size() == 1) {
      enqueue(lits[0], kNoReason);
      if (propagate() != kNoReason) {
        ok = false;
        totals.conflicts++;
        return false;
      }
      return true;
    }
    attach_watches(alloc_clause(std::move(lits), false));
    return true;
  }

  // returns the conflicting arena slot, or kNoReason
  int propagate() {
    int confl = kNoReason;
    while (qhead < trail.size()) {
      int p = trail[qhead++];  // p just became true
      std::vector<Watcher>& ws = watches[p];
      size_t i = 0, j = 0;
      while (i < ws.size()) {
        Watcher w = ws[i];
        if (value_lit(w.blocker) == 1) {
          ws[j++] = ws[i++];
          continue;
        }
        InternalClause& c = arena[w.clause];
        int false_lit = lit_neg(p);
        if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
        i++;

        int first = c.lits[0];
        if (value_lit(first) == 1) {
          ws[j++] = {w.clause, first};
          continue;
        }
        bool moved = false;
        for (size_t k = 2; k < c.lits.size(); k++) {
          if (value_lit(c.lits[k]) != 0) {
            std::swap(c.lits[1], c.lits[k]);
            watches[lit_neg(c.lits[1])].push_back({w.clause, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;

        // unit or conflicting
        ws[j++] = {w.clause, first};
        if (value_lit(first) == 0) {
          confl = w.clause;
          qhead = trail.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          totals.propagations++;
          enqueue(first, w.clause);
        }
      }
      ws.resize(j);
      if (confl != kNoReason) break;
    }
    return confl;
  }

  void var_bump(int v) {
    activity[v] += var_inc;
    if (activity[v] > 1e100) {
      for (double& a : activity) a *= 1e-100;
      var_inc *= 1e-100;
    }
    order.bumped(v);
  }

  void cla_bump(InternalClause& c) {
    c.activity += cla_inc;
    if (c.activity > 1e20) {
      for (InternalClause& d : arena)
        if (d.live && d.learnt) d.activity *= 1e-20;
      cla_inc *= 1e-20;
    }
  }

  void backtrack_to(int lvl) {
    if (decision_level() <= lvl) return;
    int bound = trail_lim[lvl];
    for (int i = static_cast<int>(trail.size()) - 1; i >= bound; i--) {
      int v = lit_var(trail[i]);
      phase[v] = static_cast<uint8_t>(assign[v]);
      assign[v] = kUndef;
      reason[v] = kNoReason;
      order.insert(v);
    }
    trail.resize(bound);
    trail_lim.resize(lvl);
    qhead = trail.size();
  }

  // first-UIP conflict analysis; fills learnt (learnt[0] = asserting
  // literal) and returns the backjump level
  int analyze(int confl, std::vector<int>& learnt) {
    learnt.clear();
    learnt.push_back(0);  // room for the asserting literal
    int path = 0;
    int p = -1;
    int idx = static_cast<int>(trail.size()) - 1;

    do {
      InternalClause& c = arena[confl];
      if (c.learnt) cla_bump(c);
      for (size_t j = (p == -1 ? 0 : 1); j < c.lits.size(); j++) {
        int q = c.lits[j];
        int v = lit_var(q);
        if (!seen[v] && level[v] > 0) {
          var_bump(v);
          seen[v] = 1;
          if (level[v] == decision_level())
            path++;
          else
            learnt.push_back(q);
        }
      }
      while (!seen[lit_var(trail[idx])]) idx--;
      p = trail[idx--];
      confl = reason[lit_var(p)];
      seen[lit_var(p)] = 0;
      path--;
    } while (path > 0);
    learnt[0] = lit_neg(p);

    // recursive self-subsumption: a literal is redundant when its whole
    // reason cone is already implied by the rest of the clause
    analyze_clear.assign(learnt.begin(), learnt.end());
    uint32_t abstract_levels = 0;
    for (size_t i = 1; i < learnt.size(); i++)
      abstract_levels |= 1u << (level[lit_var(learnt[i])] & 31);
    size_t out = 1;
    for (size_t i = 1; i < learnt.size(); i++) {
      int v = lit_var(learnt[i]);
      if (reason[v] == kNoReason || !lit_redundant(learnt[i], abstract_levels))
        learnt[out++] = learnt[i];
    }
    learnt.resize(out);

    int bt = 0;
    if (learnt.size() > 1) {
      size_t best = 1;
      for (size_t i = 2; i < learnt.size(); i++)
        if (level[lit_var(learnt[i])] > level[lit_var(learnt[best])]) best = i;
      std::swap(learnt[1], learnt[best]);
      bt = level[lit_var(learnt[1])];
    }
    for (int l : analyze_clear) seen[lit_var(l)] = 0;
    return bt;
  }

  bool lit_redundant(int p, uint32_t abstract_levels) {
    redundant_stack.clear();
    redundant_stack.push_back(p);
    size_t top = analyze_clear.size();
    while (!redundant_stack.empty()) {
      int q = redundant_stack.back();
      redundant_stack.pop_back();
      const InternalClause& c = arena[reason[lit_var(q)]];
      for (size_t i = 1; i < c.lits.size(); i++) {
        int l = c.lits[i];
        int v = lit_var(l);
        if (seen[v] || level[v] == 0) continue;
        if (reason[v] != kNoReason &&
            ((1u << (level[v] & 31)) & abstract_levels) != 0) {
          seen[v] = 1;
          redundant_stack.push_back(l);
          analyze_clear.push_back(l);
        } else {
          for (size_t j = top; j < analyze_clear.size(); j++)
            seen[lit_var(analyze_clear[j])] = 0;
          analyze_clear.resize(top);
          return false;
        }
      }
    }
    return true;
  }

  int compute_lbd(const std::vector<int>& lits) {
    stamp_counter++;
    int lbd = 0;
    for (int l : lits) {
      int lv = level[lit_var(l)];
      if (level_stamp[lv] != stamp_counter) {
        level_stamp[lv] = stamp_counter;
        lbd++;
      }
    }
    return lbd;
  }

  // Binaries and low-LBD clauses survive every reduction; the rest go by
  // activity, lowest first.
  bool protected_clause(const InternalClause& c) const {
    return c.lits.size() == 2 || c.lbd <= 3;
  }

  void reduce_db() {
    std::vector<int> learnts;
    for (int s = 0; s < static_cast<int>(arena.size()); s++)
      if (arena[s].live && arena[s].learnt) learnts.push_back(s);
    std::sort(learnts.begin(), learnts.end(), [&](int a, int b) {
      const InternalClause& x = arena[a];
      const InternalClause& y = arena[b];
      bool xp = protected_clause(x), yp = protected_clause(y);
      if (xp != yp) return yp;  // protected clauses last, they are kept
      if (x.activity != y.activity) return x.activity < y.activity;
      return a < b;
    });
    double extra_lim = cla_inc / std::max<int64_t>(num_learnts, 1);
    size_t kill = learnts.size() / 2;
    std::vector<uint8_t> dead(arena.size(), 0);
    for (size_t i = 0; i < learnts.size(); i++) {
      int s = learnts[i];
      const InternalClause& c = arena[s];
      if (protected_clause(c)) continue;
      if (locked(s)) continue;
      if (i < kill || c.activity < extra_lim) dead[s] = 1;
    }
    for (auto& ws : watches) {
      size_t j = 0;
      for (size_t i = 0; i < ws.size(); i++)
        if (!dead[ws[i].clause]) ws[j++] = ws[i];
      ws.resize(j);
    }
    for (int s = 0; s < static_cast<int>(dead.size()); s++)
      if (dead[s]) {
        free_clause(s);
        num_learnts--;
        num_unprotected--;
      }
  }

  bool locked(int slot) const {
    const InternalClause& c = arena[slot];
    int v = lit_var(c.lits[0]);
    return value_lit(c.lits[0]) == 1 && reason[v] == slot;
  }

  int pick_branch_var() {
    while (!order.empty()) {
      int v = order.pop_min();
      if (assign[v] == kUndef) return v;
    }
    return -1;
  }

  SolveResult run(const std::vector<int>& assumptions) {
    auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    uint64_t confl_start = totals.conflicts;
    auto finish = [&](Status st) {
      backtrack_to(0);
      auto t1 = std::chrono::steady_clock::now();
      totals.wall_seconds += std::chrono::duration<double>(t1 - t0).count();
      res.status = st;
      res.stats = totals;
      return res;
    };

    std::vector<int> assume;
    assume.reserve(assumptions.size());
    for (int dl : assumptions) {
      if (dl == 0 || std::abs(dl) > nvars)
        throw InvalidParameter("assumption literal out of range");
      assume.push_back(from_dimacs(dl));
    }

    if (!ok) return finish(Status::unsat);
    backtrack_to(0);

    std::vector<int> learnt;
    uint64_t confl_since_restart = 0;
    int curr_restarts = 0;
    double restart_lim = luby(2.0, 0) * opts.luby_unit;

    for (;;) {
      int confl = propagate();
      if (confl != kNoReason) {
        totals.conflicts++;
        confl_since_restart++;
        if (decision_level() == 0) {
          ok = false;
          return finish(Status::unsat);
        }
        int bt = analyze(confl, learnt);
        backtrack_to(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          int slot = alloc_clause(learnt, true);
          arena[slot].lbd = compute_lbd(arena[slot].lits);
          attach_watches(slot);
          cla_bump(arena[slot]);
          num_learnts++;
          if (!protected_clause(arena[slot])) num_unprotected++;
          enqueue(learnt[0], slot);
        }
        var_inc /= opts.var_decay;
        cla_inc /= opts.clause_decay;

        if (--adjust_cnt == 0) {
          adjust_confl *= 1.5;
          adjust_cnt = static_cast<int64_t>(adjust_confl);
          max_learnts *= 1.1;
        }
        if (static_cast<int64_t>(totals.conflicts - confl_start) >
            opts.conflict_budget)
          return finish(Status::budget_exhausted);
        continue;
      }

      if (confl_since_restart >= restart_lim) {
        totals.restarts++;
        curr_restarts++;
        confl_since_restart = 0;
        restart_lim = luby(2.0, curr_restarts) * opts.luby_unit;
        backtrack_to(0);
        continue;
      }
      if (num_unprotected - static_cast<int64_t>(trail.size()) >=
          static_cast<int64_t>(max_learnts))
        reduce_db();

      // replay assumptions, one level each
      int next = -1;
      while (decision_level() < static_cast<int>(assume.size())) {
        int p = assume[decision_level()];
        if (value_lit(p) == 1) {
          trail_lim.push_back(static_cast<int>(trail.size()));
        } else if (value_lit(p) == 0) {
          return finish(Status::unsat);
        } else {
          next = p;
          break;
        }
      }
      if (next == -1) {
        int v = pick_branch_var();
        if (v == -1) {
          res.witness = extract_model();
          return finish(Status::sat);
        }
        totals.decisions++;
        next = mk_lit(v, phase[v] == 0);
      }
      trail_lim.push_back(static_cast<int>(trail.size()));
      enqueue(next, kNoReason);
    }
  }

  Assignment extract_model() {
    Assignment a(nvars);
    for (int v = 0; v < nvars; v++) a.set(v, assign[v] == 1);
    if (!satisfies(formula, a))
      throw std::logic_error("solver produced a non-model; refusing to return it");
    return a;
  }
};

Solver::Solver(const CnfFormula& f, SolverOptions opts)
    : impl_(std::make_unique<Impl>(f, opts)) {}

Solver::~Solver() = default;

void Solver::add_clause(const Clause& c) {
  for (int dl : c)
    if (dl == 0 || std::abs(dl) > impl_->nvars)
      throw InvalidParameter("added clause has a literal out of range");
  {
    Clause copy = c;
    std::sort(copy.begin(), copy.end(),
              [](int a, int b) { return std::abs(a) < std::abs(b); });
    for (size_t i = 1; i < copy.size(); i++)
      if (std::abs(copy[i]) == std::abs(copy[i - 1]))
        throw InvalidParameter("added clause repeats a variable");
  }
  impl_->backtrack_to(0);
  impl_->formula.clauses.push_back(c);
  if (c.empty()) {
    impl_->ok = false;
    return;
  }
  impl_->attach_input_clause(c);
}

SolveResult Solver::solve(const std::vector<int>& assumptions) {
  return impl_->run(assumptions);
}

const SolveStats& Solver::stats() const { return impl_->totals; }

const CnfFormula& Solver::loaded_formula() const { return impl_->formula; }

SolveResult solve(const CnfFormula& f, const std::vector<int>& assumptions,
                  SolverOptions opts) {
  Solver s(f, opts);
  return s.solve(assumptions);
}

}  // namespace solspace

#pragma once

#include "pbsym/pbcore.hpp"
#include "pbsym/proofio.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pbsym {

// A checking failure, reported as `line:<n> goal:<key> reason:<code>`.
class Rejection : public Error {
 public:
  Rejection(int line, std::string goal, std::string reason, std::string detail = "")
      : Error(format(line, goal, reason, detail)),
        line(line),
        goal(std::move(goal)),
        reason(std::move(reason)),
        detail(std::move(detail)) {}
  int line;
  std::string goal, reason, detail;

 private:
  static std::string format(int line, const std::string& g, const std::string& r, const std::string& d) {
    return "line:" + std::to_string(line) + " goal:" + (g.empty() ? "-" : g) + " reason:" + r +
           (d.empty() ? "" : " detail:" + d);
  }
};

struct Counters {
  uint64_t spec_materializations = 0;
  uint64_t rup_calls = 0;
  uint64_t hinted_rups = 0;
  uint64_t pol_steps = 0;
  uint64_t goals_syntactic = 0, goals_tautology = 0, goals_rup = 0, goals_explicit = 0;
  uint64_t propagations = 0;
  uint64_t propagate_ns = 0;  // wall time spent inside RUP checks
};

using Thunk = std::function<Constraint()>;

// ID-indexed constraint database with nested frames, lazy entries and a shared
// propagation engine over every live materialized constraint.
class Context {
 public:
  explicit Context(Counters& ctr) : ctr_(ctr) { db_.emplace_back(); }

  int64_t next_id() const { return static_cast<int64_t>(db_.size()); }
  int64_t add(Constraint c);
  int64_t add_lazy(Thunk t);
  // Resolves relative (negative) IDs against the current frontier.
  int64_t resolve(int64_t id) const { return id < 0 ? next_id() + id : id; }
  bool alive(int64_t id) const { return id > 0 && id < next_id() && db_[id].alive; }
  bool materialized(int64_t id) const { return alive(id) && db_[id].c != nullptr; }
  CPtr get(int64_t raw_id, int line);
  CPtr peek(int64_t id) const { return alive(id) ? db_[id].c : nullptr; }
  void kill(int64_t id);
  void set_core(int64_t id) { db_[id].core = true; }
  bool is_core(int64_t id) const { return alive(id) && db_[id].core; }

  void push_frame() { frames_.push_back(next_id()); }
  // `release` also returns the frame's IDs, for scratch frames the proof never saw.
  void pop_frame(bool release = false);
  size_t depth() const { return frames_.size(); }
  int64_t frame_start() const { return frames_.empty() ? 1 : frames_.back(); }

  // True iff the live database plus the negation of `goal` propagates to conflict.
  bool unhinted_rup(const Constraint& goal, const std::vector<const Constraint*>& extra = {});
  bool hinted_rup(const Constraint& goal, const std::vector<int64_t>& hints, int line);
  bool falsum_present() const;

  // pol / rup / del; returns the new ID (0 for deletions).
  int64_t run_step(const Step& s, const VarTable& vt);
  // Runs an explicit proof goal: adds the negated goal (unless the goal is a bare
  // contradiction), executes the steps, and checks the closing qed.
  void prove_goal(const Constraint& goal, const ProofGoal& pg, const VarTable& vt, const std::string& key);

  Counters& counters() { return ctr_; }

 private:
  struct Entry {
    CPtr c;
    Thunk thunk;
    int slot = -1;
    bool alive = false;
    bool core = false;
  };
  void materialize(int64_t id);
  void drop(int64_t id);

  Counters& ctr_;
  std::vector<Entry> db_;
  std::vector<int64_t> frames_;
  std::vector<int64_t> pending_;
  std::vector<int64_t> contradictions_;
  Propagator prop_;
};

std::string goal_key_str(const GoalKey& k);

struct Goal {
  GoalKey key;
  Constraint c;
};

using Matcher = std::function<bool(const Constraint&)>;

// Discharges every goal: goals without an explicit proof go through syntactic
// match, tautology and unhinted RUP in that order; explicit proof goals are then
// checked in source order. Rejects proof goals naming unknown keys.
void discharge(Context& ctx, const std::vector<Goal>& goals, const std::vector<ProofGoal>& proofs,
               const VarTable& vt, const Matcher& syntactic, int line, std::vector<std::string>* trace);

}  // namespace pbsym

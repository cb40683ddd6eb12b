#include "pbsym/context.hpp"

#include <chrono>

namespace pbsym {

std::string goal_key_str(const GoalKey& k) {
  return k.order ? "#" + std::to_string(k.k) : std::to_string(k.k);
}

int64_t Context::add(Constraint c) {
  int64_t id = next_id();
  db_.emplace_back();
  Entry& e = db_.back();
  e.c = std::make_shared<const Constraint>(std::move(c));
  e.alive = true;
  e.slot = prop_.add(e.c);
  if (e.c->is_contradiction()) contradictions_.push_back(id);
  return id;
}

int64_t Context::add_lazy(Thunk t) {
  int64_t id = next_id();
  db_.emplace_back();
  db_.back().thunk = std::move(t);
  db_.back().alive = true;
  pending_.push_back(id);
  return id;
}

void Context::materialize(int64_t id) {
  Entry& e = db_[id];
  if (e.c) return;
  e.c = std::make_shared<const Constraint>(e.thunk());
  e.thunk = nullptr;
  e.slot = prop_.add(e.c);
  if (e.c->is_contradiction()) contradictions_.push_back(id);
  ++ctr_.spec_materializations;
}

CPtr Context::get(int64_t raw_id, int line) {
  int64_t id = resolve(raw_id);
  if (!alive(id)) throw Rejection(line, "", "invisible-id", std::to_string(raw_id));
  materialize(id);
  return db_[id].c;
}

void Context::drop(int64_t id) {
  Entry& e = db_[id];
  if (!e.alive) return;
  e.alive = false;
  if (e.slot >= 0) prop_.remove(e.slot);
  e.slot = -1;
  e.c.reset();
  e.thunk = nullptr;
}

void Context::kill(int64_t id) {
  if (id > 0 && id < next_id()) drop(id);
}

void Context::pop_frame(bool release) {
  int64_t start = frames_.back();
  frames_.pop_back();
  for (int64_t id = start; id < next_id(); ++id) drop(id);
  if (!release) return;
  db_.resize(start);
  auto below = [start](std::vector<int64_t>& v) { std::erase_if(v, [start](int64_t id) { return id >= start; }); };
  below(pending_);
  below(contradictions_);
}

namespace {

struct Stopwatch {
  explicit Stopwatch(uint64_t& sink) : sink(sink), t0(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    sink += std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
  }
  uint64_t& sink;
  std::chrono::steady_clock::time_point t0;
};

}  // namespace

bool Context::unhinted_rup(const Constraint& goal, const std::vector<const Constraint*>& extra) {
  ++ctr_.rup_calls;
  Stopwatch sw(ctr_.propagate_ns);
  for (int64_t id : pending_)
    if (alive(id)) materialize(id);
  pending_.clear();
  Constraint ng = negate(goal);
  std::vector<const Constraint*> ex(extra);
  ex.push_back(&ng);
  uint64_t before = prop_.propagations();
  bool ok = prop_.conflict(ex);
  ctr_.propagations += prop_.propagations() - before;
  return ok;
}

bool Context::hinted_rup(const Constraint& goal, const std::vector<int64_t>& hints, int line) {
  ++ctr_.rup_calls;
  ++ctr_.hinted_rups;
  Stopwatch sw(ctr_.propagate_ns);
  std::vector<CPtr> keep;
  std::vector<const Constraint*> db;
  keep.reserve(hints.size());
  for (int64_t h : hints) {
    keep.push_back(get(h, line));
    db.push_back(keep.back().get());
  }
  return rup_check(db, goal);
}

bool Context::falsum_present() const {
  for (int64_t id : contradictions_)
    if (alive(id)) return true;
  return false;
}

int64_t Context::run_step(const Step& s, const VarTable& vt) {
  switch (s.kind) {
    case Step::POL: {
      ++ctr_.pol_steps;
      Constraint c;
      try {
        c = evaluate_polish(s.pol, [&](int64_t id) { return get(id, s.line); });
      } catch (const Rejection&) {
        throw;
      } catch (const Error& e) {
        throw Rejection(s.line, "", "pol-error", e.what());
      }
      return add(std::move(c));
    }
    case Step::RUP: {
      bool ok = s.hints ? hinted_rup(s.c, *s.hints, s.line) : unhinted_rup(s.c);
      if (!ok) throw Rejection(s.line, "", "rup-failed", format_constraint(s.c, vt));
      return add(s.c);
    }
    case Step::DEL_RANGE:
    case Step::DEL_ID: {
      std::vector<int64_t> ids;
      if (s.kind == Step::DEL_RANGE) {
        int64_t a = resolve(s.ids[0]), b = resolve(s.ids[1]);
        for (int64_t i = std::max<int64_t>(a, 1); i < b && i < next_id(); ++i) ids.push_back(i);
      } else {
        for (int64_t i : s.ids) ids.push_back(resolve(i));
      }
      for (int64_t id : ids) {
        if (!alive(id)) continue;
        if (db_[id].core) throw Rejection(s.line, "", "core-deletion", std::to_string(id));
        if (id < frame_start()) throw Rejection(s.line, "", "nonlocal-deletion", std::to_string(id));
      }
      for (int64_t id : ids) kill(id);
      return 0;
    }
    default: throw Rejection(s.line, "", "step-not-allowed-here");
  }
}

void Context::prove_goal(const Constraint& goal, const ProofGoal& pg, const VarTable& vt, const std::string& key) {
  ++ctr_.goals_explicit;
  push_frame();
  try {
    if (!(goal.terms.empty() && goal.is_contradiction())) add(negate(goal));
    for (const auto& st : pg.steps) run_step(st, vt);
    bool ok;
    if (pg.qed_id) {
      CPtr c = get(*pg.qed_id, pg.qed_line);
      ok = c->is_contradiction();
    } else {
      ok = unhinted_rup(falsum());
    }
    if (!ok) throw Rejection(pg.qed_line, key, "qed-no-contradiction");
  } catch (Rejection& r) {
    pop_frame();
    if (r.goal.empty()) throw Rejection(r.line, key, r.reason, r.detail);
    throw;
  }
  pop_frame();
}

}  // namespace pbsym

namespace pbsym {

void discharge(Context& ctx, const std::vector<Goal>& goals, const std::vector<ProofGoal>& proofs,
               const VarTable& vt, const Matcher& syntactic, int line, std::vector<std::string>* trace) {
  std::vector<const ProofGoal*> byidx(goals.size(), nullptr);
  for (const auto& pg : proofs) {
    size_t i = 0;
    while (i < goals.size() && !(goals[i].key == pg.key)) ++i;
    if (i == goals.size()) throw Rejection(pg.line, goal_key_str(pg.key), "unknown-goal");
    byidx[i] = &pg;
  }
  Counters& ctr = ctx.counters();
  auto note = [&](const Goal& g, const char* how) {
    if (trace) trace->push_back("line:" + std::to_string(line) + " goal:" + goal_key_str(g.key) + " " + how);
  };
  for (size_t i = 0; i < goals.size(); ++i) {
    if (byidx[i]) continue;
    const Goal& g = goals[i];
    if (syntactic && syntactic(g.c)) {
      ++ctr.goals_syntactic;
      note(g, "syntactic");
    } else if (g.c.is_trivial()) {
      ++ctr.goals_tautology;
      note(g, "tautology");
    } else if (ctx.unhinted_rup(g.c)) {
      ++ctr.goals_rup;
      note(g, "rup");
    } else {
      throw Rejection(line, goal_key_str(g.key), "goal-undischarged", format_constraint(g.c, vt));
    }
  }
  for (const auto& pg : proofs) {
    size_t i = 0;
    while (!(goals[i].key == pg.key)) ++i;
    ctx.prove_goal(goals[i].c, pg, vt, goal_key_str(pg.key));
    note(goals[i], "explicit");
  }
}

}  // namespace pbsym

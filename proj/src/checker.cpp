#include "pbsym/checker.hpp"

#include <algorithm>
#include <set>

namespace pbsym {

const char* verdict_str(Verdict v) { return v == Verdict::UNSAT ? "UNSAT" : "VERIFIED-DERIVATION"; }

Checker::Checker(VarTable& vt, const Formula& f, bool trace)
    : vt_(vt), ctx_(ctr_), tracing_(trace), loaded_(trivial_order()), formula_size_(f.constraints.size()) {
  for (const auto& c : f.constraints) {
    for (const auto& t : c.terms)
      if (vt_.is_aux(t.lit.var())) throw Rejection(0, "", "aux-in-formula", vt_.name(t.lit.var()));
    add_top(c, true, 0);
  }
}

void Checker::record(int64_t id, bool core) {
  CPtr c = ctx_.peek(id);
  (core ? core_ids_ : derived_ids_).push_back(id);
  by_hash_.emplace(c->hash(), id);
  for (const auto& t : c->terms) occ_[t.lit.var()].push_back(id);
}

void Checker::add_top(Constraint c, bool core, int line) {
  for (const auto& t : c.terms)
    if (vt_.is_aux(t.lit.var())) throw Rejection(line, "", "aux-in-constraint", vt_.name(t.lit.var()));
  int64_t id = ctx_.add(std::move(c));
  if (core) ctx_.set_core(id);
  record(id, core);
}

std::vector<int64_t> Checker::live_core() const {
  std::vector<int64_t> out;
  for (int64_t id : core_ids_)
    if (ctx_.alive(id)) out.push_back(id);
  return out;
}

std::vector<int64_t> Checker::live_derived() const {
  std::vector<int64_t> out;
  for (int64_t id : derived_ids_)
    if (ctx_.alive(id)) out.push_back(id);
  return out;
}

bool Checker::matches(const Constraint& g, bool core_only) const {
  auto [a, b] = by_hash_.equal_range(g.hash());
  for (auto it = a; it != b; ++it) {
    int64_t id = it->second;
    if (!ctx_.alive(id) || (core_only && !ctx_.is_core(id))) continue;
    if (*ctx_.peek(id) == g) return true;
  }
  return false;
}

void Checker::check_rule_inputs(const Step& s) {
  for (const auto& t : s.c.terms)
    if (vt_.is_aux(t.lit.var())) throw Rejection(s.line, "", "aux-in-constraint", vt_.name(t.lit.var()));
  for (const auto& [v, img] : s.w.entries()) {
    if (vt_.is_aux(v)) throw Rejection(s.line, "", "aux-in-witness", vt_.name(v));
    if (img.kind == Image::LIT && vt_.is_aux(img.lit.var()))
      throw Rejection(s.line, "", "aux-in-witness", vt_.name(img.lit.var()));
  }
}

std::vector<Image> Checker::z_image(const Witness& w) const {
  std::vector<Image> out;
  out.reserve(z_.size());
  for (Var x : z_) out.push_back(w.apply(Lit::make(x, false)));
  return out;
}

bool Checker::touches_z(const Witness& w) const {
  for (const auto& [v, img] : w.entries()) {
    (void)img;
    if (v < in_z_.size() && in_z_[v]) return true;
  }
  return false;
}

std::vector<int64_t> Checker::touched_by(const Witness& w, bool core_only) const {
  std::vector<int64_t> ids;
  for (const auto& [v, img] : w.entries()) {
    (void)img;
    auto it = occ_.find(v);
    if (it == occ_.end()) continue;
    for (int64_t id : it->second)
      if (ctx_.alive(id) && (!core_only || ctx_.is_core(id))) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

void Checker::red(const Step& s) {
  check_rule_inputs(s);
  std::vector<Goal> goals;
  goals.push_back({GoalKey{true, 1}, substitute(s.c, s.w)});
  for (int64_t id : touched_by(s.w, false)) goals.push_back({GoalKey{false, id}, substitute(*ctx_.peek(id), s.w)});
  const OrderDef& o = *loaded_;
  bool order_goal = touches_z(s.w) && !o.defs.empty();
  Witness place;
  if (order_goal) {
    place = placement(o, z_image(s.w), images(z_));
    auto inst = instantiate(o.defs, place);
    for (size_t k = 0; k < inst.size(); ++k)
      goals.push_back({GoalKey{true, static_cast<int64_t>(k + 2)}, std::move(inst[k])});
  }
  bool scratch = !s.sub;
  ctx_.push_frame();
  try {
    ctx_.add(negate(s.c));
    if (order_goal)
      for (auto& t : instantiate_spec(loaded_, place)) ctx_.add_lazy(std::move(t));
    static const std::vector<ProofGoal> none;
    discharge(ctx_, goals, s.sub ? s.sub->goals : none, vt_, [&](const Constraint& g) { return matches(g, false); },
              s.line, tracing_ ? &trace_ : nullptr);
  } catch (...) {
    ctx_.pop_frame(scratch);
    throw;
  }
  ctx_.pop_frame(scratch);
  add_top(s.c, false, s.line);
}

void Checker::dom(const Step& s) {
  check_rule_inputs(s);
  const OrderDef& o = *loaded_;
  const std::vector<Image> zw = z_image(s.w);
  static const ScopeBlock empty_leq{true, {}, 0}, empty_geq{false, {}, 0};
  const ScopeBlock* leq = &empty_leq;
  const ScopeBlock* geq = &empty_geq;
  for (const auto& sc : s.sub->scopes) (sc.leq ? leq : geq) = &sc;
  auto* tr = tracing_ ? &trace_ : nullptr;
  const int64_t m = static_cast<int64_t>(o.defs.size());
  ctx_.push_frame();
  try {
    ctx_.add(negate(s.c));
    {
      Witness place = placement(o, zw, images(z_));
      std::vector<Goal> goals;
      for (int64_t id : touched_by(s.w, true)) goals.push_back({GoalKey{false, id}, substitute(*ctx_.peek(id), s.w)});
      auto inst = instantiate(o.defs, place);
      for (int64_t k = 0; k < m; ++k) goals.push_back({GoalKey{true, k + 1}, std::move(inst[k])});
      ctx_.push_frame();
      for (auto& t : instantiate_spec(loaded_, place)) ctx_.add_lazy(std::move(t));
      discharge(ctx_, goals, leq->goals, vt_, [&](const Constraint& g) { return matches(g, true); },
                leq->line ? leq->line : s.line, tr);
      ctx_.pop_frame();
    }
    {
      Witness place = placement(o, images(z_), zw);
      ctx_.push_frame();
      for (auto& t : instantiate_spec(loaded_, place)) ctx_.add_lazy(std::move(t));
      for (auto& c : instantiate(o.defs, place)) ctx_.add(std::move(c));
      std::vector<Goal> goals{{GoalKey{true, m + 1}, falsum()}};
      discharge(ctx_, goals, geq->goals, vt_, nullptr, geq->line ? geq->line : s.line, tr);
      ctx_.pop_frame();
    }
  } catch (...) {
    while (ctx_.depth() > 0) ctx_.pop_frame();
    throw;
  }
  ctx_.pop_frame();
  add_top(s.c, false, s.line);
}

void Checker::step(const Step& s) {
  switch (s.kind) {
    case Step::POL:
    case Step::RUP: {
      int64_t id = ctx_.run_step(s, vt_);
      CPtr c = ctx_.peek(id);
      for (const auto& t : c->terms)
        if (vt_.is_aux(t.lit.var())) {
          ctx_.kill(id);
          throw Rejection(s.line, "", "aux-in-constraint", vt_.name(t.lit.var()));
        }
      record(id, false);
      break;
    }
    case Step::DEL_RANGE:
    case Step::DEL_ID: ctx_.run_step(s, vt_); break;
    case Step::RED: red(s); break;
    case Step::DOM: dom(s); break;
    case Step::DEF_ORDER: {
      if (orders_.count(s.order->name)) throw Rejection(s.line, "", "order-redefined", s.order->name);
      orders_[s.order->name] = define_order(*s.order, vt_, ctr_, tracing_ ? &trace_ : nullptr);
      break;
    }
    case Step::LOAD_ORDER: {
      auto it = orders_.find(s.name);
      if (it == orders_.end()) throw Rejection(s.line, "", "order-unknown", s.name);
      if (s.vars.size() != it->second->arity()) throw Rejection(s.line, "", "order-arity");
      if (!live_derived().empty()) throw Rejection(s.line, "", "derived-nonempty");
      std::set<Var> seen;
      for (Var v : s.vars) {
        if (vt_.is_aux(v)) throw Rejection(s.line, "", "aux-in-binding", vt_.name(v));
        if (!seen.insert(v).second) throw Rejection(s.line, "", "binding-repeated", vt_.name(v));
      }
      loaded_ = it->second;
      z_ = s.vars;
      in_z_.assign(vt_.size(), 0);
      for (Var v : z_) in_z_[v] = 1;
      break;
    }
    case Step::FCOUNT:
      if (!s.ids.empty() && static_cast<size_t>(s.ids[0]) != formula_size_)
        throw Rejection(s.line, "", "formula-count-mismatch");
      break;
    case Step::CONCLUSION:
      if (s.name.rfind("UNSAT", 0) == 0 && !ctx_.falsum_present())
        throw Rejection(s.line, "", "conclusion-unsupported", s.name);
      break;
    case Step::OUTPUT:
    case Step::END: break;
  }
}

void Checker::run(const ProofDocument& doc) {
  for (const auto& s : doc.steps) step(s);
}

CheckOutcome check_text(const std::string& formula, const std::string& proof, bool trace) {
  VarTable vt;
  Formula f = parse_formula(formula, vt);
  ProofDocument doc = parse_proof(proof, vt);
  Checker ch(vt, f, trace);
  ch.run(doc);
  return {ch.verdict(), ch.counters(), ch.trace()};
}

}  // namespace pbsym

#include "pbsym/orderreg.hpp"

#include <set>
#include <unordered_map>

namespace pbsym {

OrderPtr trivial_order() {
  static const OrderPtr t = std::make_shared<const OrderDef>(OrderDef{"", {}, {}, {}, {}, {}});
  return t;
}

std::vector<Image> images(const std::vector<Var>& vs) {
  std::vector<Image> out;
  out.reserve(vs.size());
  for (Var v : vs) out.push_back({Image::LIT, Lit::make(v, false)});
  return out;
}

Witness placement(const OrderDef& o, const std::vector<Image>& left, const std::vector<Image>& right,
                  const std::vector<Var>& aux_to) {
  if (left.size() != o.arity() || right.size() != o.arity()) throw Error("order arity mismatch");
  Witness w;
  for (size_t i = 0; i < o.arity(); ++i) {
    w.set(o.u[i], left[i]);
    w.set(o.v[i], right[i]);
  }
  if (!aux_to.empty()) {
    if (aux_to.size() != o.aux.size()) throw Error("aux arity mismatch");
    for (size_t i = 0; i < o.aux.size(); ++i) w.set(o.aux[i], {Image::LIT, Lit::make(aux_to[i], false)});
  }
  return w;
}

std::vector<Thunk> instantiate_spec(const OrderPtr& o, const Witness& place) {
  auto w = std::make_shared<const Witness>(place);
  std::vector<Thunk> out;
  out.reserve(o->spec.size());
  for (size_t j = 0; j < o->spec.size(); ++j)
    out.push_back([o, w, j] { return substitute(o->spec[j].first, *w); });
  return out;
}

std::vector<Constraint> instantiate(const std::vector<Constraint>& cs, const Witness& place) {
  std::vector<Constraint> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(substitute(c, place));
  return out;
}

void verify_specification(const OrderDef& o, const std::vector<int>& lines, const VarTable& vt, Counters& ctr) {
  std::set<Var> aux(o.aux.begin(), o.aux.end());
  std::unordered_map<Var, std::vector<size_t>> occ;
  std::unordered_multimap<size_t, size_t> seen;
  Propagator prop;
  for (size_t i = 0; i < o.spec.size(); ++i) {
    const auto& [c, w] = o.spec[i];
    int line = i < lines.size() ? lines[i] : 0;
    std::string key = "spec:" + std::to_string(i + 1);
    for (const auto& [v, img] : w.entries()) {
      (void)img;
      if (!aux.count(v)) throw Rejection(line, key, "spec-witness-support", vt.name(v));
    }
    for (const auto& t : c.terms) occ[t.lit.var()].push_back(i);
    std::set<size_t> touched;
    for (const auto& [v, img] : w.entries()) {
      (void)img;
      auto it = occ.find(v);
      if (it != occ.end()) touched.insert(it->second.begin(), it->second.end());
    }
    Constraint nc = negate(c);
    for (size_t j : touched) {
      Constraint g = substitute(o.spec[j].first, w);
      bool ok = false;
      auto [a, b] = seen.equal_range(g.hash());
      for (auto it = a; it != b && !ok; ++it) ok = o.spec[it->second].first == g;
      if (!ok) ok = g.is_trivial();
      if (!ok) {
        ++ctr.rup_calls;
        Constraint ng = negate(g);
        ok = prop.conflict({&nc, &ng});
      }
      if (!ok) throw Rejection(line, key, "spec-goal-undischarged", format_constraint(g, vt));
    }
    prop.add(std::make_shared<const Constraint>(c));
    seen.emplace(c.hash(), i);
  }
}

namespace {

void check_goals(Context& ctx, const OrderDef& o, const Witness& goal_place, const OrderProof& p,
                 const VarTable& vt, int line, const char* what) {
  std::vector<Goal> goals;
  for (size_t k = 0; k < o.defs.size(); ++k)
    goals.push_back({GoalKey{true, static_cast<int64_t>(k + 1)}, substitute(o.defs[k], goal_place)});
  try {
    discharge(ctx, goals, p.goals, vt, nullptr, p.present ? p.line : line, nullptr);
  } catch (const Rejection& r) {
    throw Rejection(r.line, r.goal, std::string(what) + "-" + r.reason, r.detail);
  }
}

}  // namespace

void check_reflexivity(const OrderDef& o, const OrderProof& p, const VarTable& vt, Counters& ctr, int line) {
  Context ctx(ctr);
  Witness uu = placement(o, images(o.u), images(o.u));
  for (auto& t : instantiate_spec(std::make_shared<const OrderDef>(o), uu)) ctx.add_lazy(std::move(t));
  check_goals(ctx, o, uu, p, vt, line, "reflexivity");
}

void check_transitivity(const OrderDef& o, const OrderProof& p, const VarTable& vt, Counters& ctr, int line) {
  const size_t n = o.arity(), m = o.aux.size();
  if (p.fresh_right.size() != n || p.fresh_aux1.size() != m || p.fresh_aux2.size() != m)
    throw Rejection(p.present ? p.line : line, "", "transitivity-fresh-arity");
  std::set<Var> used(o.u.begin(), o.u.end());
  used.insert(o.v.begin(), o.v.end());
  used.insert(o.aux.begin(), o.aux.end());
  for (const auto* list : {&p.fresh_right, &p.fresh_aux1, &p.fresh_aux2})
    for (Var x : *list)
      if (!used.insert(x).second) throw Rejection(p.line, "", "transitivity-fresh-clash", vt.name(x));
  auto od = std::make_shared<const OrderDef>(o);
  Context ctx(ctr);
  Witness uva = placement(o, images(o.u), images(o.v));
  Witness vwb = placement(o, images(o.v), images(p.fresh_right), p.fresh_aux1);
  Witness uwc = placement(o, images(o.u), images(p.fresh_right), p.fresh_aux2);
  for (const Witness* w : {&uva, &vwb, &uwc})
    for (auto& t : instantiate_spec(od, *w)) ctx.add_lazy(std::move(t));
  for (const auto& c : instantiate(o.defs, uva)) ctx.add(c);
  for (const auto& c : instantiate(o.defs, vwb)) ctx.add(c);
  check_goals(ctx, o, uwc, p, vt, line, "transitivity");
}

OrderPtr define_order(const OrderBlock& ob, const VarTable& vt, Counters& ctr, std::vector<std::string>* trace) {
  auto o = std::make_shared<OrderDef>();
  o->name = ob.name;
  o->u = ob.left;
  o->v = ob.right;
  o->aux = ob.aux;
  o->spec = ob.spec;
  o->defs = ob.defs;
  if (o->u.size() != o->v.size()) throw Rejection(ob.line, "", "order-arity");
  std::set<Var> uv(o->u.begin(), o->u.end());
  uv.insert(o->v.begin(), o->v.end());
  if (uv.size() != 2 * o->u.size()) throw Rejection(ob.line, "", "order-vars-repeated");
  std::set<Var> all = uv;
  for (Var a : o->aux) {
    if (!vt.is_aux(a)) throw Rejection(ob.line, "", "order-aux-name", vt.name(a));
    if (!all.insert(a).second) throw Rejection(ob.line, "", "order-aux-clash", vt.name(a));
  }
  for (Var x : uv)
    if (vt.is_aux(x)) throw Rejection(ob.line, "", "order-aux-name", vt.name(x));
  auto scoped = [&](const Constraint& c, int line) {
    for (const auto& t : c.terms)
      if (!all.count(t.lit.var())) throw Rejection(line, "", "order-foreign-variable", vt.name(t.lit.var()));
  };
  for (size_t i = 0; i < o->spec.size(); ++i) scoped(o->spec[i].first, i < ob.spec_lines.size() ? ob.spec_lines[i] : ob.line);
  for (const auto& c : o->defs) scoped(c, ob.line);
  verify_specification(*o, ob.spec_lines, vt, ctr);
  check_reflexivity(*o, ob.refl, vt, ctr, ob.end_line);
  check_transitivity(*o, ob.trans, vt, ctr, ob.end_line);
  if (trace) trace->push_back("line:" + std::to_string(ob.line) + " order:" + ob.name + " validated");
  return o;
}

}  // namespace pbsym

#include "helpers.hpp"

#include <doctest.h>

using namespace th;

TEST_CASE("normalize merges, flips signs and keeps normal input") {
  VarTable vt;
  Lit x1 = vt.parse_lit("x1"), x2 = vt.parse_lit("x2"), x3 = vt.parse_lit("x3");
  Constraint a = normalize({{1, x1}, {1, x1}}, 1);
  CHECK(a == C(vt, "+2 x1 >= 1"));
  Constraint b = normalize({{-1, x1}}, 0);
  REQUIRE(b.terms.size() == 1);
  CHECK(b.terms[0].lit == ~x1);
  CHECK(b.degree == 1);
  Constraint c = normalize({{2, ~x1}, {3, x2}, {2, x3}}, 5);
  CHECK(c.degree == 5);
  CHECK(c.terms.size() == 3);
  CHECK(c.terms[0].lit == ~x1);
  CHECK(c.terms[0].coef == 2);
  CHECK(normalize({{1, x1}, {1, ~x1}}, 1).is_trivial());
}

TEST_CASE("negate follows the complement formula") {
  VarTable vt;
  CHECK(negate(C(vt, "+1 x1 >= 1")) == C(vt, "+1 ~x1 >= 1"));
  CHECK(negate(C(vt, "+2 ~x1 +3 x2 +2 x3 >= 5")) == C(vt, "+2 x1 +3 ~x2 +2 ~x3 >= 3"));
  Constraint bot = falsum();
  CHECK(bot.is_contradiction());
  CHECK(negate(bot).is_trivial());
}

TEST_CASE("substitute folds constants and renames literals") {
  VarTable vt;
  Var x1 = vt.intern("x1"), x3 = vt.intern("x3"), s1 = vt.intern("s1");
  Witness sw;
  sw.set(x1, Image{Image::LIT, Lit::make(x3, false)});
  sw.set(x3, Image{Image::LIT, Lit::make(x1, false)});
  CHECK(substitute(C(vt, "+1 ~x1 +1 ~x3 >= 1"), sw) == C(vt, "+1 ~x3 +1 ~x1 >= 1"));
  Witness z;
  z.set(s1, Image{Image::ZERO, {}});
  CHECK(substitute(C(vt, "+1 ~s1 +1 x1 +1 ~x3 >= 1"), z).is_trivial());
  CHECK(substitute(C(vt, "+1 x1 +1 ~x3 >= 1"), Witness{}) == C(vt, "+1 x1 +1 ~x3 >= 1"));
}

TEST_CASE("polish evaluation matches the worked example") {
  VarTable vt;
  auto doc = parse("pol 9 x2 2 * + x1 w s 2 d;\npol 5;\n", vt);
  CPtr c9 = std::make_shared<Constraint>(C(vt, "+2 ~x1 +3 x2 +2 x3 >= 5"));
  CPtr c5 = std::make_shared<Constraint>(C(vt, "+1 x1 +1 x2 >= 1"));
  auto db = [&](int64_t id) -> CPtr { return id == 9 ? c9 : id == 5 ? c5 : nullptr; };
  CHECK(evaluate_polish(doc.steps[0].pol, db) == C(vt, "+2 x2 +1 x3 >= 2"));
  CHECK(evaluate_polish(doc.steps[1].pol, db) == *c5);
}

TEST_CASE("polish evaluation errors") {
  VarTable vt;
  CPtr c1 = std::make_shared<Constraint>(C(vt, "+1 x1 >= 1"));
  auto db = [&](int64_t id) -> CPtr {
    if (id != 1) throw Error("unknown id");
    return c1;
  };
  for (const char* bad : {"pol +;", "pol 1 0 *;", "pol 1 2 d 0 d;", "pol 7;", "pol 1 1;"}) {
    VarTable v2 = vt;
    auto doc = parse(std::string(bad) + "\n", v2);
    CHECK_THROWS(evaluate_polish(doc.steps[0].pol, db));
  }
}

TEST_CASE("propagation and rup examples") {
  VarTable vt;
  Constraint c = C(vt, "+2 ~x1 +3 x2 +2 x3 >= 5");
  CHECK(c.slack() == 2);
  CHECK(rup_check({&c}, C(vt, "+1 x2 >= 1")));
  Constraint p = C(vt, "+1 x1 >= 1"), q = C(vt, "+1 ~x1 >= 1");
  CHECK(rup_check({&p, &q}, falsum()));
  Constraint r = C(vt, "+3 x2 +2 x3 >= 3");
  CHECK(rup_check({&r}, C(vt, "+1 x2 >= 1")));
  CHECK_FALSE(rup_check({&r}, C(vt, "+1 x3 >= 1")));
  CHECK(rup_check({&c}, C(vt, "+2 x2 +1 x3 >= 2")));
  CHECK(rup_check({}, C(vt, "+1 ~$a3 +1 $a3 >= 1")));
  Constraint d = C(vt, "+1 $d6 >= 1"), nd = C(vt, "+1 ~$d6 >= 1");
  CHECK(rup_check({&d, &nd}, falsum()));
}

TEST_CASE("algebra properties by brute force") {
  std::mt19937 rng(7);
  VarTable vt;
  std::vector<Var> vars;
  for (int i = 1; i <= 5; ++i) vars.push_back(vt.intern("x" + std::to_string(i)));
  for (int it = 0; it < 300; ++it) {
    Constraint a = random_constraint(rng, vars), b = random_constraint(rng, vars);
    if (!a.is_contradiction()) CHECK(negate(negate(a)) == a);
    Constraint sa = saturate(a), na = negate(a), sum = add(a, b), m = multiply(a, 3);
    Int k = 1 + rng() % 3;
    Constraint dv = divide(a, k);
    Var wv = vars[rng() % vars.size()];
    Constraint wk = weaken(a, wv);
    each_assignment(vars, [&](const Assign& x) {
      bool ha = holds(a, x), hb = holds(b, x);
      CHECK(holds(na, x) == !ha);
      CHECK(holds(sa, x) == ha);
      CHECK(holds(m, x) == ha);
      if (ha) {
        CHECK(holds(dv, x));
        CHECK(holds(wk, x));
      }
      if (ha && hb) CHECK(holds(sum, x));
    });
    // Substitution is composition with the witness.
    Witness w;
    w.set(vars[0], Image{Image::LIT, Lit::make(vars[1], rng() % 2)});
    w.set(vars[2], Image{rng() % 2 ? Image::ZERO : Image::ONE, {}});
    Constraint sub = substitute(a, w);
    each_assignment(vars, [&](const Assign& x) {
      Assign y = x;
      for (const auto& [v, img] : w.entries())
        y[v] = img.kind == Image::LIT ? x.at(img.lit.var()) != img.lit.neg() : img.kind == Image::ONE;
      CHECK(holds(sub, x) == holds(a, y));
    });
  }
}

TEST_CASE("rup acceptance implies semantic entailment") {
  std::mt19937 rng(11);
  VarTable vt;
  std::vector<Var> vars;
  for (int i = 1; i <= 6; ++i) vars.push_back(vt.intern("y" + std::to_string(i)));
  int accepted = 0;
  for (int it = 0; it < 400; ++it) {
    std::vector<Constraint> db;
    for (int j = 0; j < 4; ++j) db.push_back(random_constraint(rng, vars, 3));
    Constraint g = random_constraint(rng, vars, 2);
    std::vector<const Constraint*> ptrs;
    for (auto& c : db) ptrs.push_back(&c);
    if (!rup_check(ptrs, g)) continue;
    ++accepted;
    each_assignment(vars, [&](const Assign& x) {
      if (holds_all(db, x)) CHECK(holds(g, x));
    });
  }
  CHECK(accepted > 20);
}

TEST_CASE("propagator reuse across add and remove") {
  VarTable vt;
  Propagator p;
  auto a = std::make_shared<Constraint>(C(vt, "+1 x1 +1 x2 >= 1"));
  auto b = std::make_shared<Constraint>(C(vt, "+1 ~x1 >= 1"));
  int sa = p.add(a);
  p.add(b);
  Constraint ng = negate(C(vt, "+1 x2 >= 1"));
  CHECK(p.conflict({&ng}));
  p.remove(sa);
  CHECK_FALSE(p.conflict({&ng}));
}

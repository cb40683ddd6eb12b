#include "helpers.hpp"
#include "pbsym/benchgen.hpp"
#include "pbsym/symlog.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace th;

namespace {

long choose(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Symmetry> generators_of(const Instance& in, VarTable& vt) { return parse_symmetries(symmetry_text(in), vt); }

}  // namespace

TEST_CASE("PHP(3) is the worked-example instance") {
  Instance in = generate(Family::PHP, {3});
  CHECK(in.num_vars == 6);
  CHECK(in.clauses.size() == 9);
  VarTable a, b;
  Formula f = parse_cnf(to_dimacs(in), a);
  Formula g = parse_cnf(data("php32.cnf"), b);
  REQUIRE(f.constraints.size() == g.constraints.size());
  for (const auto& c : g.constraints) {
    Constraint mapped = c;
    for (auto& t : mapped.terms) t.lit = Lit::make(*a.find(b.name(t.lit.var())), t.lit.neg());
    CHECK(std::find(f.constraints.begin(), f.constraints.end(), mapped) != f.constraints.end());
  }
  auto syms = generators_of(in, a);
  REQUIRE(!syms.empty());
  auto sigma = parse_symmetries("(x1 x3)(x2 x4)\n", a);
  CHECK(substitute(f.constraints[0], syms[0].witness()) == substitute(f.constraints[0], sigma[0].witness()));
  CHECK(format_symmetry(syms[0], a) == format_symmetry(sigma[0], a));
}

TEST_CASE("instance statistics") {
  for (int n = 2; n <= 7; ++n) {
    Instance p = generate(Family::PHP, {n});
    CHECK(p.num_vars == n * (n - 1));
    CHECK(long(p.clauses.size()) == n + (n - 1) * choose(n, 2));
    CHECK(p.generators.size() == size_t((n - 1) + (n - 2)));
    Instance r = generate(Family::RPHP, {n});
    CHECK(r.num_vars == 4 * n * n);
  }
  for (int n = 4; n <= 8; ++n) CHECK(generate(Family::COUNT, {n, 3}).num_vars == choose(n, 3));
  for (int n = 6; n <= 9; ++n) CHECK(generate(Family::CLQCL, {n}).num_vars == choose(n, 2) + 6 * n + 5 * n);
  CHECK(generate(Family::TSEITIN, {2}).num_vars == 4);
  CHECK_THROWS(generate(Family::PHP, {0}));
  CHECK_THROWS(generate(Family::CLQCL, {6, 5, 6}));
  CHECK_THROWS(parse_family("nope"));
  CHECK(parse_family(family_name(Family::TSEITIN)) == Family::TSEITIN);
}

TEST_CASE("generators are symmetries and instances round-trip") {
  std::vector<std::pair<Family, std::vector<int>>> cases{{Family::PHP, {5}},   {Family::RPHP, {3}},
                                                          {Family::CLQCL, {7}}, {Family::COUNT, {6, 3}},
                                                          {Family::TSEITIN, {2}}, {Family::TSEITIN, {3}}};
  for (const auto& [fam, params] : cases) {
    Instance in = generate(fam, params);
    CHECK(to_dimacs(in) == to_dimacs(generate(fam, params)));
    VarTable vt;
    Formula f = parse_cnf(to_dimacs(in), vt);
    CHECK(f.constraints.size() == in.clauses.size());
    for (size_t i = 0; i < in.clauses.size(); ++i) {
      std::vector<std::pair<Int, Lit>> raw;
      for (int l : in.clauses[i]) raw.emplace_back(1, Lit::make(*vt.find("x" + std::to_string(std::abs(l))), l < 0));
      CHECK(f.constraints[i] == normalize(raw, 1));
    }
    auto syms = generators_of(in, vt);
    CHECK(syms.size() == in.generators.size());
    for (const auto& s : syms) {
      CHECK(s.support() > 0);
      CHECK_FALSE(verify_symmetry(f.constraints, s).has_value());
    }
    auto js = nlohmann::json::parse(sidecar_json(in));
    CHECK(js["family"] == family_name(fam));
    CHECK(js["num_vars"] == in.num_vars);
    CHECK(js["symmetries"].size() == in.generators.size());
    CHECK(js["variables"].size() == size_t(in.num_vars));
  }
}

TEST_CASE("TseitinGrid(2) face flip") {
  Instance in = generate(Family::TSEITIN, {2});
  VarTable vt;
  Formula f = parse_cnf(to_dimacs(in), vt);
  auto flip = parse_symmetries("(x1 ~x1)(x2 ~x2)(x3 ~x3)(x4 ~x4)\n", vt);
  CHECK_FALSE(verify_symmetry(f.constraints, flip[0]).has_value());
  CHECK(brute_sat(f.constraints));
}

TEST_CASE("oracles") {
  VarTable vt;
  Formula php = parse_cnf(data("php32.cnf"), vt);
  CHECK_FALSE(brute_sat(php.constraints));
  Formula brk = parse_opb(data("php32_breaking.opb"), vt);
  CHECK(oracle_equisat(php.constraints, brk.constraints));
  CHECK_FALSE(oracle_equisat({C(vt, "+1 x1 >= 1")}, {C(vt, "+1 ~x1 >= 1")}));
  CHECK(oracle_lex({false, true}, {true, false}));
  CHECK_FALSE(oracle_lex({true, false}, {false, true}));
  CHECK(oracle_lex({true, true, false}, {true, true, false}));
  std::vector<Constraint> big;
  for (int i = 0; i < 21; ++i) big.push_back(C(vt, "+1 y" + std::to_string(i) + " >= 1"));
  CHECK_THROWS(brute_sat(big));
}

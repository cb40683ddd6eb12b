#pragma once

#include "pbsym/checker.hpp"
#include "pbsym/proofio.hpp"

#include <map>
#include <random>
#include <string>

namespace th {

using namespace pbsym;

inline std::string data(const std::string& name) { return read_file(std::string(PBSYM_DATA_DIR) + "/" + name); }

// Parses one OPB-style constraint, e.g. "+1 x1 -2 ~x2 >= 1".
inline Constraint C(VarTable& vt, const std::string& text) {
  Formula f = parse_opb(text + " ;", vt);
  return f.constraints.at(0);
}

using Assign = std::map<Var, bool>;

inline bool holds(const Constraint& c, const Assign& a) {
  Int s = 0;
  for (const auto& t : c.terms) {
    bool v = a.at(t.lit.var());
    if (v != t.lit.neg()) s += t.coef;
  }
  return s >= c.degree;
}

inline bool holds_all(const std::vector<Constraint>& cs, const Assign& a) {
  for (const auto& c : cs)
    if (!holds(c, a)) return false;
  return true;
}

// Calls f on every total assignment over vars.
template <class F>
void each_assignment(const std::vector<Var>& vars, F&& f) {
  Assign a;
  for (uint64_t m = 0; m < (uint64_t(1) << vars.size()); ++m) {
    for (size_t i = 0; i < vars.size(); ++i) a[vars[i]] = (m >> i) & 1;
    f(a);
  }
}

inline Constraint random_constraint(std::mt19937& rng, const std::vector<Var>& vars, int maxc = 4) {
  std::vector<std::pair<Int, Lit>> raw;
  for (Var v : vars)
    if (rng() % 3) raw.emplace_back(Int(int(rng() % (2 * maxc + 1)) - maxc), Lit::make(v, rng() % 2));
  return normalize(raw, Int(int(rng() % (2 * maxc + 1)) - 2));
}

inline ProofDocument parse(const std::string& body, VarTable& vt) {
  return parse_proof("pseudo-Boolean proof version 3.0\n" + body, vt);
}

}  // namespace th

#pragma once

#include "pbsym/pbcore.hpp"

#include <string>
#include <vector>

namespace pbsym {

enum class Family { PHP, RPHP, CLQCL, COUNT, TSEITIN };

Family parse_family(const std::string& s);
std::string family_name(Family f);

// A signed variable permutation over 1-based DIMACS indices.
struct Generator {
  std::string label;
  std::vector<std::pair<int, int>> map;  // var -> signed image, non-identity entries only
};

struct Instance {
  Family family;
  std::vector<int> params;
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // DIMACS literals
  std::vector<std::string> names;         // names[v] for v in 1..num_vars; names[0] unused
  std::vector<Generator> generators;
};

// PHP(n), RPHP(n), ClqCl(n, k, c), Count(n, k), TseitinGrid(n). Missing trailing
// parameters take the family defaults (ClqCl k=6 c=5, Count k=3).
Instance generate(Family f, std::vector<int> params);

std::string to_dimacs(const Instance& inst);
// Cycle notation over DIMACS names (x<i>), one generator per line.
std::string symmetry_text(const Instance& inst);
std::string sidecar_json(const Instance& inst);

// Exhaustive satisfiability over every variable mentioned; at most 20 variables.
bool brute_sat(const std::vector<Constraint>& cs);
// True iff sat(F) == sat(F and B).
bool oracle_equisat(const std::vector<Constraint>& f, const std::vector<Constraint>& b);
// alpha <=_lex beta, most significant first, compared as big integers.
bool oracle_lex(const std::vector<bool>& alpha, const std::vector<bool>& beta);

}  // namespace pbsym

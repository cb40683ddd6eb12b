#pragma once

#include "pbsym/proofio.hpp"

#include <iosfwd>
#include <optional>

namespace pbsym {

// A literal permutation, stored as its non-identity variable images.
struct Symmetry {
  std::vector<std::pair<Var, Lit>> map;
  int line = 0;
  Witness witness() const;
  size_t support() const { return map.size(); }
};

// One symmetry per line: cycles `(x1 x3)(~x2 x4)` or pairs `x1 -> x3 x3 -> x1`.
// `#` starts a comment.
std::vector<Symmetry> parse_symmetries(const std::string& text, VarTable& vt);
std::string format_symmetry(const Symmetry& s, const VarTable& vt);
// Index of a constraint whose image is missing from F, if any.
std::optional<size_t> verify_symmetry(const std::vector<Constraint>& f, const Symmetry& s);

enum class Method { NEW, OLD };

struct BreakOptions {
  Method method = Method::NEW;
  bool cp_variant = false;
  std::vector<Var> order;  // lex significance; empty means formula order
};

struct FragmentStats {
  size_t support = 0;
  uint64_t lines = 0, bytes = 0;
};

struct BreakReport {
  std::vector<Constraint> breaking;  // kept constraints, in emission order
  uint64_t order_lines = 0, order_bytes = 0;
  std::vector<FragmentStats> fragments;
  uint64_t lines = 0, bytes = 0;
};

// Writes a complete proof for F plus the breaking constraints of every symmetry.
// Throws Error on an invalid order or a symmetry that is not one of F.
BreakReport emit_break(std::ostream& out, VarTable& vt, const Formula& f, const std::vector<Symmetry>& syms,
                       const BreakOptions& opt);

// Order definitions alone. Both return the number of lines written.
void emit_lex_order(ProofWriter& w, VarTable& vt, size_t n, const std::string& name);
void emit_big_order(ProofWriter& w, VarTable& vt, size_t n, const std::string& name);

}  // namespace pbsym

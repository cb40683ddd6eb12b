#pragma once

#include "pbsym/pbcore.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pbsym {

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Formula {
  std::vector<Constraint> constraints;
  std::vector<Var> vars;  // in order of first appearance (or 1..V for CNF)
};

Formula parse_opb(const std::string& text, VarTable& vt);
Formula parse_cnf(const std::string& text, VarTable& vt);
// Dispatches on content: a `p cnf` header selects DIMACS.
Formula parse_formula(const std::string& text, VarTable& vt);

void write_opb(std::ostream& os, const std::vector<Constraint>& cs, const VarTable& vt);
std::string format_constraint(const Constraint& c, const VarTable& vt);

struct GoalKey {
  bool order = false;  // "#k" when true, else a constraint ID
  int64_t k = 0;
  bool operator==(const GoalKey&) const = default;
};

struct Step;
using Steps = std::vector<Step>;

struct ProofGoal {
  GoalKey key;
  Steps steps;
  std::optional<int64_t> qed_id;  // `qed #k : <id>`
  int line = 0;
  int qed_line = 0;
  bool operator==(const ProofGoal& o) const;
};

struct ScopeBlock {
  bool leq = true;
  std::vector<ProofGoal> goals;
  int line = 0;
  bool operator==(const ScopeBlock& o) const;
};

struct Subproof {
  std::vector<ScopeBlock> scopes;  // dom
  std::vector<ProofGoal> goals;    // red
  int end_line = 0;
  bool operator==(const Subproof& o) const;
};

struct OrderProof {
  bool present = false;
  std::vector<Var> fresh_right, fresh_aux1, fresh_aux2;
  std::vector<ProofGoal> goals;
  int line = 0;
  bool operator==(const OrderProof& o) const;
};

struct OrderBlock {
  std::string name;
  std::vector<Var> left, right, aux;
  std::vector<std::pair<Constraint, Witness>> spec;
  std::vector<int> spec_lines;
  std::vector<Constraint> defs;
  OrderProof trans, refl;
  int line = 0, end_line = 0;
  bool operator==(const OrderBlock& o) const;
};

struct Step {
  enum Kind { POL, RUP, RED, DOM, DEF_ORDER, LOAD_ORDER, DEL_RANGE, DEL_ID, OUTPUT, CONCLUSION, END, FCOUNT };
  Kind kind = POL;
  int line = 0;
  std::vector<PolToken> pol;
  Constraint c;
  std::optional<std::vector<int64_t>> hints;
  Witness w;
  std::shared_ptr<Subproof> sub;
  std::shared_ptr<OrderBlock> order;
  std::string name;  // load_order name, output/conclusion keyword
  std::vector<Var> vars;
  std::vector<int64_t> ids;  // del range [a, b) as ids[0], ids[1]; del id list; conclusion id
  bool operator==(const Step& o) const;
};

struct ProofDocument {
  std::string version = "3.0";
  Steps steps;
  bool operator==(const ProofDocument& o) const = default;
};

ProofDocument parse_proof(const std::string& text, VarTable& vt);
std::string serialize_proof(const ProofDocument& doc, const VarTable& vt);

// Streaming serialization used by the emitter.
class ProofWriter {
 public:
  ProofWriter(std::ostream& os, const VarTable& vt) : os_(os), vt_(vt) {}
  void header(const std::string& version = "3.0");
  void step(const Step& s);
  void line(const std::string& raw);
  uint64_t bytes() const { return bytes_; }
  uint64_t lines() const { return lines_; }

 private:
  void put(const std::string& s);
  std::ostream& os_;
  const VarTable& vt_;
  uint64_t bytes_ = 0, lines_ = 0;
};

std::string format_witness(const Witness& w, const VarTable& vt);
std::string format_pol(const std::vector<PolToken>& toks, const VarTable& vt);
std::vector<std::string> format_step(const Step& s, const VarTable& vt);

std::string read_file(const std::string& path);

}  // namespace pbsym

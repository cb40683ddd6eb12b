#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pbsym {

using Int = boost::multiprecision::cpp_int;
using Var = uint32_t;

struct Lit {
  uint32_t code = 0;  // 2*var + negated

  static Lit make(Var v, bool neg) { return Lit{(v << 1) | (neg ? 1u : 0u)}; }
  Var var() const { return code >> 1; }
  bool neg() const { return code & 1; }
  Lit operator~() const { return Lit{code ^ 1}; }
  bool operator==(const Lit&) const = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Name <-> id interning. Names starting with '$' are order-aux variables.
class VarTable {
 public:
  Var intern(std::string_view name);
  std::optional<Var> find(std::string_view name) const;
  const std::string& name(Var v) const { return names_[v]; }
  bool is_aux(Var v) const { return names_[v].front() == '$'; }
  size_t size() const { return names_.size(); }
  std::string lit_str(Lit l) const { return l.neg() ? "~" + names_[l.var()] : names_[l.var()]; }
  Lit parse_lit(std::string_view tok);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Var> ids_;
};

struct Term {
  Int coef;
  Lit lit;
};

// Normalized: coefficients >= 1, one term per variable, degree >= 0.
// Terms keep first-appearance order; equality ignores order.
struct Constraint {
  std::vector<Term> terms;
  Int degree;

  Int coef_sum() const;
  Int slack() const { return coef_sum() - degree; }
  bool is_contradiction() const { return slack() < 0; }
  bool is_trivial() const { return degree == 0; }
  bool mentions(Var v) const;
  size_t hash() const;
  bool operator==(const Constraint& o) const;
};

using CPtr = std::shared_ptr<const Constraint>;

Constraint normalize(const std::vector<std::pair<Int, Lit>>& raw, const Int& degree);
Constraint negate(const Constraint& c);
Constraint add(const Constraint& a, const Constraint& b);
Constraint multiply(const Constraint& c, const Int& k);
Constraint divide(const Constraint& c, const Int& k);
Constraint saturate(const Constraint& c);
Constraint weaken(const Constraint& c, Var v);
Constraint literal_axiom(Lit l);
Constraint falsum();

struct Image {
  enum Kind : uint8_t { LIT, ZERO, ONE } kind = LIT;
  Lit lit{};
  bool operator==(const Image&) const = default;
};

class Witness {
 public:
  Witness() = default;
  void set(Var v, Image img);
  const Image* get(Var v) const;
  Image apply(Lit l) const;  // ZERO/ONE/LIT, respecting polarity
  const std::vector<std::pair<Var, Image>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  bool operator==(const Witness& o) const { return entries_ == o.entries_; }

 private:
  std::vector<std::pair<Var, Image>> entries_;
  std::unordered_map<Var, size_t> index_;
};

Constraint substitute(const Constraint& c, const Witness& w);

// True iff some term has a variable in the witness support.
bool touches(const Constraint& c, const Witness& w);

struct PolToken {
  enum Kind : uint8_t { ID, AXIOM, SCALAR, MUL, ADD, SAT, DIV, WEAKEN, WVAR } kind;
  int64_t id = 0;
  Lit lit{};
  Int scalar;
  bool operator==(const PolToken&) const = default;
};

using Lookup = std::function<CPtr(int64_t)>;

Constraint evaluate_polish(const std::vector<PolToken>& prog, const Lookup& db);

// Slack-based unit propagation over a mutable constraint set.
class Propagator {
 public:
  int add(CPtr c);
  void remove(int slot);
  void clear();
  // Propagates active slots plus `extra` from the empty assignment; true on conflict.
  bool conflict(const std::vector<const Constraint*>& extra);
  uint64_t propagations() const { return props_; }
  size_t active() const { return live_; }

 private:
  struct Slot {
    CPtr c;
    const Constraint* raw = nullptr;
    Int slack0;
    Int maxcoef;
    bool active = false;
  };
  struct Occ {
    uint32_t slot;
    uint32_t term;
  };

  int push_slot(const Constraint* raw, CPtr owner);
  void index(uint32_t s);
  void compact();
  bool scan(uint32_t s);
  Int& slack_of(uint32_t s);
  void assign(Lit l);

  std::vector<Slot> slots_;
  std::vector<std::vector<Occ>> occ_;
  std::vector<uint32_t> touched_lits_;
  std::vector<uint8_t> listed_;
  std::vector<uint32_t> unit_;
  std::vector<int8_t> val_;
  std::vector<Lit> trail_;
  std::vector<Int> slack_;
  std::vector<uint32_t> stamp_;
  uint32_t epoch_ = 0;
  size_t dead_terms_ = 0, live_terms_ = 0, live_ = 0;
  uint64_t props_ = 0;
};

bool rup_check(const std::vector<const Constraint*>& db, const Constraint& goal);

std::string to_string(const Constraint& c, const VarTable& vt);

}  // namespace pbsym

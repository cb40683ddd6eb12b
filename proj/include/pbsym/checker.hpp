#pragma once

#include "pbsym/context.hpp"
#include "pbsym/orderreg.hpp"
#include "pbsym/proofio.hpp"

#include <map>
#include <unordered_map>

namespace pbsym {

enum class Verdict { UNSAT, VERIFIED_DERIVATION };
const char* verdict_str(Verdict v);

class Checker {
 public:
  Checker(VarTable& vt, const Formula& f, bool trace = false);

  void step(const Step& s);
  void run(const ProofDocument& doc);
  Verdict verdict() const { return ctx_.falsum_present() ? Verdict::UNSAT : Verdict::VERIFIED_DERIVATION; }

  std::vector<int64_t> live_core() const;
  std::vector<int64_t> live_derived() const;
  CPtr constraint(int64_t id) const { return ctx_.peek(id); }
  const Counters& counters() const { return ctr_; }
  const std::vector<std::string>& trace() const { return trace_; }
  const std::vector<Var>& z() const { return z_; }
  OrderPtr loaded() const { return loaded_; }

 private:
  void add_top(Constraint c, bool core, int line);
  void record(int64_t id, bool core);
  bool matches(const Constraint& g, bool core_only) const;
  void check_rule_inputs(const Step& s);
  std::vector<Image> z_image(const Witness& w) const;
  bool touches_z(const Witness& w) const;
  std::vector<int64_t> touched_by(const Witness& w, bool core_only) const;
  void red(const Step& s);
  void dom(const Step& s);

  VarTable& vt_;
  Counters ctr_;
  Context ctx_;
  bool tracing_;
  std::vector<std::string> trace_;
  std::vector<int64_t> core_ids_, derived_ids_;
  std::unordered_multimap<size_t, int64_t> by_hash_;
  std::unordered_map<Var, std::vector<int64_t>> occ_;
  std::map<std::string, OrderPtr> orders_;
  OrderPtr loaded_;
  std::vector<Var> z_;
  std::vector<uint8_t> in_z_;
  size_t formula_size_;
};

struct CheckOutcome {
  Verdict verdict;
  Counters counters;
  std::vector<std::string> trace;
};

// Parses both inputs and checks. Throws ParseError or Rejection.
CheckOutcome check_text(const std::string& formula, const std::string& proof, bool trace = false);

}  // namespace pbsym

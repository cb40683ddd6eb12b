#pragma once

#include "pbsym/context.hpp"
#include "pbsym/proofio.hpp"

#include <memory>

namespace pbsym {

struct OrderDef {
  std::string name;
  std::vector<Var> u, v, aux;
  std::vector<std::pair<Constraint, Witness>> spec;
  std::vector<Constraint> defs;
  size_t arity() const { return u.size(); }
};

using OrderPtr = std::shared_ptr<const OrderDef>;

// The relation that holds everywhere: no variables, no spec, no constraints.
OrderPtr trivial_order();

// Substitution u -> left, v -> right, aux -> aux_to (identity when aux_to is empty).
Witness placement(const OrderDef& o, const std::vector<Image>& left, const std::vector<Image>& right,
                  const std::vector<Var>& aux_to = {});
std::vector<Image> images(const std::vector<Var>& vs);

// Lazy spec instance: each thunk computes one substituted spec constraint.
std::vector<Thunk> instantiate_spec(const OrderPtr& o, const Witness& place);
std::vector<Constraint> instantiate(const std::vector<Constraint>& cs, const Witness& place);

// Checks each entry by redundance against the preceding ones. Throws Rejection.
void verify_specification(const OrderDef& o, const std::vector<int>& lines, const VarTable& vt, Counters& ctr);
void check_reflexivity(const OrderDef& o, const OrderProof& p, const VarTable& vt, Counters& ctr, int line);
void check_transitivity(const OrderDef& o, const OrderProof& p, const VarTable& vt, Counters& ctr, int line);

// Structural checks, spec verification, reflexivity and transitivity.
OrderPtr define_order(const OrderBlock& ob, const VarTable& vt, Counters& ctr,
                      std::vector<std::string>* trace = nullptr);

}  // namespace pbsym

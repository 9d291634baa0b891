#pragma once

#include <string>
#include <vector>

namespace algcsp {

/// A term over a finite signature: a tree whose leaves are variables
/// x0, x1, ... and whose inner nodes are operation symbols.  Every term
/// carries a declared arity; variable indices must stay below it, so a
/// term of arity k induces a k-ary operation on any algebra of matching
/// signature.
class Term {
 public:
  Term() = default;

  static Term variable(int index, int arity);
  static Term apply(std::string op, std::vector<Term> children);

  bool is_variable() const { return op_.empty(); }
  int var() const { return var_; }
  const std::string& op() const { return op_; }
  const std::vector<Term>& children() const { return children_; }

  int arity() const { return arity_; }
  /// Returns a copy with declared arity changed (must cover all variables).
  Term with_arity(int arity) const;
  /// Returns a copy with every variable index shifted by `offset`.
  Term shift_variables(int offset, int new_arity) const;

  int depth() const;
  /// Prefix notation, e.g. "mul(mul(x0,x1),mul(x2,x3))".
  std::string str() const;

  bool operator==(const Term&) const = default;

 private:
  std::string op_;              // empty for a variable leaf
  int var_ = -1;                // variable index when leaf
  int arity_ = 0;               // declared arity of the induced operation
  std::vector<Term> children_;  // subterms when inner node
};

/// f star g: the (l*m)-ary term f(g(x0..x_{m-1}), g(x_m..), ..., g(..x_{lm-1})).
Term star_compose(const Term& f, const Term& g);

}  // namespace algcsp

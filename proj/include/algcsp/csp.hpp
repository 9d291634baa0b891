#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algcsp/algebra.hpp"
#include "algcsp/congruence.hpp"

namespace algcsp {

/// One variable's domain: a subset of the universe of an algebra
/// (normally a subuniverse; validation reports when it is not).
struct Domain {
  std::shared_ptr<const FiniteAlgebra> algebra;
  std::vector<int> elements;  // sorted

  int size() const { return static_cast<int>(elements.size()); }
  bool contains(int e) const;
};

/// A constraint (sigma, R): injective scope plus a relation stored as a
/// lexicographically sorted, deduplicated tuple list.
struct Constraint {
  std::vector<int> scope;
  std::vector<std::vector<int>> tuples;

  int arity() const { return static_cast<int>(scope.size()); }
  bool contains_tuple(std::span<const int> t) const;
  static std::vector<std::vector<int>> normalized(
      std::vector<std::vector<int>> tuples);
};

using Assignment = std::vector<int>;

class CspInstance {
 public:
  CspInstance() = default;
  CspInstance(std::vector<Domain> domains, std::vector<Constraint> constraints);

  int num_variables() const { return static_cast<int>(domains_.size()); }
  const std::vector<Domain>& domains() const { return domains_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

 private:
  std::vector<Domain> domains_;
  std::vector<Constraint> constraints_;
};

/// Scope-restricted tuple of f lies in the relation.  Empty scopes are
/// satisfied exactly when the relation is nonempty.
bool satisfies(const Assignment& f, const Constraint& c);
bool is_solution(const CspInstance& inst, const Assignment& f);

/// Exhaustive oracle: lexicographically least solution, or nullopt after
/// enumerating the full assignment space.  Throws when the space exceeds
/// 2^24.
std::optional<Assignment> brute_force_solve(const CspInstance& inst);
std::vector<Assignment> all_solutions(const CspInstance& inst);

struct ValidationIssue {
  int constraint = -1;  // -1 for domain-level issues
  std::string what;
};
struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Scope sanity, tuple-in-domain membership, closure of each relation
/// under the scoped algebras, and subdirectness onto the scoped domains.
ValidationReport validate(const CspInstance& inst);

/// Shrink every domain to the intersection of the raw constraint
/// projections (iterated to a fixpoint) and re-restrict the relations.
/// Preserves the solution set exactly; an empty domain signals trivial
/// unsatisfiability.
CspInstance normalize(const CspInstance& inst);

/// Restriction of the instance to its first k variables: scopes and
/// relations drop out-of-range positions; empty scopes with nonempty
/// relations are dropped, empty relations kept (unsatisfiable marker).
CspInstance partial_instance(const CspInstance& inst, int k);

/// Same restriction onto an arbitrary sorted variable subset, renumbered
/// by position in `keep`.
CspInstance restrict_to_variables(const CspInstance& inst,
                                  std::span<const int> keep);

/// Quotient instance: per-variable congruences (given on the parent
/// algebra labels of each domain) replace domains by quotient algebras
/// and relations by block-tuple images.
CspInstance quotient_instance(const CspInstance& inst,
                              const std::vector<Congruence>& theta);

/// Block instance: pin each variable inside a chosen congruence class
/// (given in parent labels); relations are intersected with the class
/// products.
CspInstance block_instance(const CspInstance& inst,
                           const std::vector<std::vector<int>>& blocks);

/// npq^{r+1} + Jmq^{m+1} + Jmn with q = max domain cardinality, r = max
/// operation rank, p = operation count, m = max constraint arity, J =
/// constraint count.
long long instance_size_bound(const CspInstance& inst);

}  // namespace algcsp

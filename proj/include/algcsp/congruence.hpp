#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "algcsp/algebra.hpp"

namespace algcsp {

/// A partition of {0,...,n-1} in canonical form: block_id(x) is the least
/// element of the block containing x.  Used both as a plain equivalence
/// relation and, when compatible with an algebra, as a congruence.
class Congruence {
 public:
  Congruence() = default;
  static Congruence zero(int n);  // identity partition 0_A
  static Congruence one(int n);   // all-in-one partition 1_A
  /// Normalizes an arbitrary block-id labelling to least-element ids.
  static Congruence from_block_ids(std::vector<int> ids);
  /// Reflexive-symmetric-transitive closure of the given pairs.
  static Congruence from_pairs(int n,
                               std::span<const std::pair<int, int>> pairs);

  int size() const { return static_cast<int>(block_.size()); }
  int block_id(int x) const { return block_[x]; }
  bool related(int x, int y) const { return block_[x] == block_[y]; }
  int num_blocks() const;
  /// Blocks ordered by least member.
  std::vector<std::vector<int>> blocks() const;
  /// Serialized form, e.g. |01|2|3| on 4 elements -> [0,0,2,3].
  const std::vector<int>& block_ids() const { return block_; }

  Congruence meet(const Congruence& other) const;
  Congruence join(const Congruence& other) const;
  bool leq(const Congruence& other) const;  // refines

  bool operator==(const Congruence&) const = default;
  auto operator<=>(const Congruence&) const = default;

 private:
  std::vector<int> block_;
};

/// Compatibility scan: x ~ y componentwise implies f(x) ~ f(y).
bool is_congruence(const FiniteAlgebra& a, const Congruence& c);

/// Least congruence containing the given pairs: fixpoint closure under
/// reflexivity, symmetry, transitivity and unary basic-operation slices
/// (one coordinate varied, the rest held constant).
Congruence generated_congruence(const FiniteAlgebra& a,
                                std::span<const std::pair<int, int>> pairs);

/// Cg(a,b), via the same fixpoint.
Congruence principal_congruence(const FiniteAlgebra& alg, int a, int b);

/// All congruences with order, meet and join.  Elements are canonically
/// sorted; index 0 need not be 0_A.
class CongruenceLattice {
 public:
  explicit CongruenceLattice(std::vector<Congruence> elements);

  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<Congruence>& elements() const { return elements_; }
  const Congruence& at(int i) const { return elements_[i]; }
  int index_of(const Congruence& c) const;  // -1 when absent

  bool leq(int i, int j) const { return leq_[i][j]; }
  int meet(int i, int j) const { return meet_[i][j]; }
  int join(int i, int j) const { return join_[i][j]; }
  int bottom() const;
  int top() const;

 private:
  std::vector<Congruence> elements_;
  std::vector<std::vector<char>> leq_;
  std::vector<std::vector<int>> meet_, join_;
};

/// Joins of principal congruences, closed under binary join, plus 0_A.
CongruenceLattice congruence_lattice(const FiniteAlgebra& a,
                                     int max_size = 16);

/// Exactly two congruences.
bool is_simple(const FiniteAlgebra& a);

/// Kernel of the projection of a tuple set onto the coordinates in
/// sigma: a congruence on {0,...,|tuples|-1}.
Congruence projection_kernel(const std::vector<std::vector<int>>& tuples,
                             std::span<const int> sigma);

/// theta_sigma: lift a congruence on the sigma-projection of a product
/// (factor sizes given) to the full product; elements are mixed-radix
/// codes, coordinate 0 most significant, both for the product and for
/// the sigma-subproduct.
Congruence lift_congruence(const Congruence& theta, std::span<const int> sigma,
                           std::span<const int> factor_sizes);

/// Join of the two projection kernels is 1_R.  `tuples` must be a
/// subdirect subuniverse of a0 x a1.
bool is_linked(const FiniteAlgebra& a0, const FiniteAlgebra& a1,
               const std::vector<std::vector<int>>& tuples);

/// The quasiidentity  x^y = x^z  ->  x^y = x^(y v z)  over all triples.
bool is_meet_semidistributive(const CongruenceLattice& lattice);

using AlgebraPredicate = std::function<bool(const FiniteAlgebra&)>;

/// Some congruence theta with quotient_pred(A/theta) and class_pred on
/// every theta-class subalgebra, or nullopt after checking the whole
/// congruence lattice.
std::optional<Congruence> malcev_product_witness(
    const FiniteAlgebra& a, const AlgebraPredicate& class_pred,
    const AlgebraPredicate& quotient_pred);

struct QuotientAlgebra {
  FiniteAlgebra algebra;       // universe = blocks, numbered by least member
  std::vector<int> block_of;   // element of A -> block index
};

/// Quotient by a congruence; blocks are numbered in order of their least
/// member.
QuotientAlgebra quotient_algebra(const FiniteAlgebra& a, const Congruence& c);

}  // namespace algcsp

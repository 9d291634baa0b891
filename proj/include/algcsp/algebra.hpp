#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "algcsp/term.hpp"

namespace algcsp {

/// Error type for contract violations (bad arguments, exceeded bounds,
/// malformed inputs).
struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Operation {
  std::string name;
  int arity = 0;
  /// Flat table of length size^arity, arguments in lexicographic order
  /// with argument 0 most significant.
  std::vector<int> table;
};

/// A finite algebra on universe {0,...,n-1} with a list of finitary
/// operations given by total tables.
class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  FiniteAlgebra(int size, std::vector<Operation> ops);

  /// Single binary operation from an n x n table (row = left argument).
  static FiniteAlgebra binar(std::vector<std::vector<int>> table,
                             std::string op_name = "mul");

  int size() const { return size_; }
  const std::vector<Operation>& operations() const { return ops_; }
  int op_index(const std::string& name) const;  // -1 when absent

  int apply(int op, std::span<const int> args) const;
  /// Binar convenience; requires exactly one operation of arity 2.
  int mul(int x, int y) const {
    return ops_[0].table[static_cast<size_t>(x) * size_ + y];
  }

  bool is_binar() const { return ops_.size() == 1 && ops_[0].arity == 2; }
  bool is_idempotent() const;
  bool is_commutative_binar() const;
  /// Commutative idempotent binar.
  bool is_cib() const;
  bool same_type(const FiniteAlgebra& other) const;

  /// All operation tables concatenated (ops in declaration order).
  std::vector<int> flat_tables() const;

  bool operator==(const FiniteAlgebra&) const = default;

 private:
  int size_ = 0;
  std::vector<Operation> ops_;
};

/// Value of the induced term operation t^A at env (env supplies the
/// declared arity; extra entries are ignored).
int eval_term(const FiniteAlgebra& a, const Term& t, std::span<const int> env);

/// Table of the induced term operation, indexed like Operation::table.
std::vector<int> term_table(const FiniteAlgebra& a, const Term& t);

/// Least subuniverse containing `seed` (seed must be nonempty); sorted.
std::vector<int> subuniverse_closure(const FiniteAlgebra& a,
                                     std::span<const int> seed);

bool is_subuniverse(const FiniteAlgebra& a, std::span<const int> elements);

/// Every nonempty subuniverse (singleton closures through the whole
/// algebra), ordered by (size, elements).  Throws when size() exceeds
/// the bound.
std::vector<std::vector<int>> all_subuniverses(const FiniteAlgebra& a,
                                               int max_size = 8);

/// Componentwise product.  Elements are mixed-radix codes with
/// coordinate 0 most significant.
FiniteAlgebra product_algebra(const std::vector<const FiniteAlgebra*>& factors);

int encode_tuple(std::span<const int> tuple, std::span<const int> sizes);
std::vector<int> decode_tuple(int code, std::span<const int> sizes);

/// Subalgebra on `elements` (must be closed), re-indexed to 0..k-1 in
/// element order.
FiniteAlgebra restrict_algebra(const FiniteAlgebra& a,
                               std::span<const int> elements);

/// A bijection b with b(f(x)) = f(b(x)) for every operation, or nullopt
/// after trying all bijections.  Sizes must stay within the bound.
std::optional<std::vector<int>> find_isomorphism(const FiniteAlgebra& a,
                                                 const FiniteAlgebra& b,
                                                 int max_size = 8);

/// Lexicographically minimal concatenated table over all universe
/// permutations.  Identifies isomorphism classes for small algebras.
std::vector<int> canonical_form(const FiniteAlgebra& a);

/// All commutative idempotent binars on n elements, one per isomorphism
/// class, ordered by canonical table.  n <= 5.
std::vector<FiniteAlgebra> enumerate_cibs(int n);

/// Commutative, idempotent and associative (requires a binar).
bool is_semilattice(const FiniteAlgebra& a);

}  // namespace algcsp

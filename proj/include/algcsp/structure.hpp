#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "algcsp/algebra.hpp"
#include "algcsp/congruence.hpp"
#include "algcsp/term.hpp"

namespace algcsp {

/// Abelianness via the diagonal criterion: generate the congruence of
/// A^2 from all pairs of diagonal elements and test whether the diagonal
/// is a full block.  Throws when size() > max_size.
bool is_abelian(const FiniteAlgebra& a, int max_size = 6);

/// Sinks of C: elements s fixed by every slice f(d,...,x,...,d) of a
/// basic operation at a coordinate the operation depends on, with
/// constants d ranging over the subuniverse generated by C.  For a binar
/// this is exactly {s in C : s.d = s for all d in Sg(C)}.
std::vector<int> find_sinks(const FiniteAlgebra& a, std::span<const int> c);

struct AbsorptionCertificate {
  enum class Kind {
    Absorbing,      // term verified by full one-coordinate-outside scan
    SinkEscape,     // subuniverse C with sink s, s not in B, B meets C
    AbelianParent,  // abelian subuniverse C with {} != B n C < C
    ExhaustedBound  // bounded search found nothing; inconclusive negative
  };
  Kind kind;
  std::optional<Term> term;        // Absorbing
  int sink = -1;                   // SinkEscape
  std::vector<int> subuniverse;    // SinkEscape / AbelianParent witness C
  int max_arity = 0;               // ExhaustedBound: bounds used
  int max_depth = 0;

  bool absorbing() const { return kind == Kind::Absorbing; }
};

/// Decide whether B absorbs A, within term bounds.  Positive answers
/// carry a term checked by direct scan; negative answers carry a sound
/// certificate, or ExhaustedBound when the bounded search is all we have.
AbsorptionCertificate check_absorbing(const FiniteAlgebra& a,
                                      std::span<const int> b,
                                      int max_arity = 4, int max_depth = 3);

struct MinimalAbsorbing {
  std::vector<std::vector<int>> masses;  // minimal absorbing subuniverses
  /// Subuniverses whose verdict was ExhaustedBound (treated as not
  /// absorbing); empty means every verdict was certified.
  std::vector<std::vector<int>> exhausted;
};

/// Minimal elements of the absorbing-subuniverse poset (the whole
/// algebra when it is absorption-free).
MinimalAbsorbing minimal_absorbing(const FiniteAlgebra& a, int max_arity = 4,
                                   int max_depth = 3);

/// Cube-term-blocker search for a CIB: a pair (D, S) of subuniverses
/// witnessing a 2-element semilattice quotient of a subalgebra, or
/// nullopt.  D is the preimage of the semilattice bottom.
std::optional<std::pair<std::vector<int>, std::vector<int>>> has_ctb_cib(
    const FiniteAlgebra& a);

/// A CIB has an edge term exactly when it has no cube-term blocker.
bool has_edge_term_cib(const FiniteAlgebra& a);

/// Iterate s on its second variable until t(x,t(x,y)) = t(x,y) holds
/// pointwise; nullopt when no iterate up to |A|! works.
std::optional<Term> iterate_second(const FiniteAlgebra& a, const Term& s);

struct EcStructure {
  Congruence theta;
  Term t;  // binary; meet operation of the quotient chain
  /// theta-classes ordered by the quotient chain, least block first.
  std::vector<std::vector<int>> class_order;
};

/// Edge-by-Chain detection: a congruence whose classes are singleton or
/// abelian, together with an iterated binary term under which the
/// quotient is a linearly ordered meet semilattice.
std::optional<EcStructure> detect_ec(const FiniteAlgebra& a);

struct AffineRep {
  int prime = 0;
  int coeff = 0;   // r with x.y = r(x + y); 2r = 1 for a CIB
  int offset = 0;  // 0 for a CIB
  std::vector<int> element_map;  // bijection A -> Z_p
};

/// Affine representation of an abelian CIB of prime size (trivial
/// representation for a one-element algebra); nullopt when no bijection
/// and coefficient fit.
std::optional<AffineRep> affine_representation(const FiniteAlgebra& a);

}  // namespace algcsp

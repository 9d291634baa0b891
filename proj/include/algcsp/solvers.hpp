#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algcsp/csp.hpp"

namespace algcsp {

struct SolveOutcome {
  bool sat = false;
  std::optional<Assignment> witness;  // re-verified before return when set
  std::string strategy;
  std::vector<std::string> trace;
};

/// Arc-consistency preprocessing plus chronological depth-first search.
/// Complete; no polynomial-time claim attached.
SolveOutcome backtracking_solve(const CspInstance& inst);

/// Domains must all be copies of one affine CIB (Sq3 in scope).  Each
/// relation is fitted as an affine subspace over GF(p) and the stacked
/// linear system is solved by Gaussian elimination.  Throws on a
/// non-affine relation.
SolveOutcome affine_solve(const CspInstance& inst);

/// Domains isomorphic to Sq3, to the 2-element semilattice, or trivial.
/// Solves the restriction to the Sq3 variables and extends by semilattice
/// bottoms.
SolveOutcome sq3s2_solve(const CspInstance& inst);

/// Domains are subalgebras of the 4-element quotient-example algebra:
/// solve the quotient instance over {Sq3, S2}, then rebuild a concrete
/// witness from the quotient solution.
SolveOutcome quotient_block_solve(const CspInstance& inst);

/// Domains are subalgebras of one of the 7 simple 4-element CIBs: the
/// decision is read off the restriction to the Sq3-copy variables;
/// witnesses come from seeded backtracking.
SolveOutcome simple4_solve(const CspInstance& inst);

/// Least-block algorithm over an EC parent algebra: per-variable chains
/// of congruence classes, minimal block indices chosen left to right.
SolveOutcome least_block_solve(const CspInstance& inst);

/// Wraps brute_force_solve (tag "oracle").
SolveOutcome oracle_solve(const CspInstance& inst);

/// Structural classification: semilattices -> backtracking; one affine
/// abelian CIB -> affine; {Sq3, S2} -> sq3s2; the quotient-example
/// algebra -> quotient-block; the simple 4-element family -> simple4;
/// EC parent -> least-block; otherwise oracle with a "fallback" tag.
SolveOutcome dispatch_solve(const CspInstance& inst);

SolveOutcome solve_with_strategy(const CspInstance& inst,
                                 const std::string& strategy);

}  // namespace algcsp

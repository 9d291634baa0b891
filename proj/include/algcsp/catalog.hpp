#pragma once

#include <memory>
#include <vector>

#include "algcsp/algebra.hpp"

namespace algcsp::catalog {

// Tables follow the source figures element for element.

const FiniteAlgebra& sq3();        // 3-element Steiner quasigroup, abelian
const FiniteAlgebra& s2();         // 2-element meet semilattice, 0 bottom
const FiniteAlgebra& t1();         // simple 3-element CIB
const FiniteAlgebra& t2();         // simple 3-element CIB
const FiniteAlgebra& example_a();  // 4-element CIB with A/|01|2|3| = Sq3
const FiniteAlgebra& simple4(int i);  // A_0 .. A_6
const FiniteAlgebra& mass3();      // 3-element algebra with singleton masses
const FiniteAlgebra& majority2();  // <{0,1}, majority(x,y,z)>
const FiniteAlgebra& xor2();       // <{0,1}, x+y+z mod 2>

std::shared_ptr<const FiniteAlgebra> sq3_ptr();
std::shared_ptr<const FiniteAlgebra> s2_ptr();
std::shared_ptr<const FiniteAlgebra> example_a_ptr();
std::shared_ptr<const FiniteAlgebra> simple4_ptr(int i);

/// The nonsimple 4-element CIBs solved by the least-block strategy:
/// members of enumerate_cibs(4) having a semilattice quotient over an
/// Sq3 class but no Sq3 quotient (the one algebra with both is handled
/// by the quotient-block route).
std::vector<FiniteAlgebra> sl_over_sq3_family();

}  // namespace algcsp::catalog

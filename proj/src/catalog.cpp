#include "algcsp/catalog.hpp"

#include <array>

#include "algcsp/congruence.hpp"
#include "algcsp/structure.hpp"

namespace algcsp::catalog {

namespace {

std::shared_ptr<const FiniteAlgebra> make_binar(
    std::vector<std::vector<int>> table) {
  return std::make_shared<const FiniteAlgebra>(
      FiniteAlgebra::binar(std::move(table)));
}

std::shared_ptr<const FiniteAlgebra> make_ternary(std::string name,
                                                  std::vector<int> table) {
  Operation op{std::move(name), 3, std::move(table)};
  return std::make_shared<const FiniteAlgebra>(
      FiniteAlgebra(2, {std::move(op)}));
}

const std::shared_ptr<const FiniteAlgebra> kSq3 = make_binar({{0, 2, 1},  //
                                                              {2, 1, 0},
                                                              {1, 0, 2}});
const std::shared_ptr<const FiniteAlgebra> kS2 = make_binar({{0, 0},  //
                                                             {0, 1}});
const std::shared_ptr<const FiniteAlgebra> kT1 = make_binar({{0, 0, 1},  //
                                                             {0, 1, 2},
                                                             {1, 2, 2}});
const std::shared_ptr<const FiniteAlgebra> kT2 = make_binar({{0, 0, 2},  //
                                                             {0, 1, 1},
                                                             {2, 1, 2}});
const std::shared_ptr<const FiniteAlgebra> kExampleA =
    make_binar({{0, 0, 3, 2},  //
                {0, 1, 3, 2},
                {3, 3, 2, 1},
                {2, 2, 1, 3}});
const std::shared_ptr<const FiniteAlgebra> kMass3 = make_binar({{0, 1, 2},  //
                                                                {1, 1, 0},
                                                                {2, 0, 2}});

// The first displayed 4x4 form: row 0 is (0, 0, u2, u3), {1,2,3} a Steiner
// triple, {0,1} a meet pair.
std::shared_ptr<const FiniteAlgebra> simple4_form(int u2, int u3) {
  return make_binar({{0, 0, u2, u3},
                     {0, 1, 3, 2},
                     {u2, 3, 2, 1},
                     {u3, 2, 1, 3}});
}

const std::array<std::shared_ptr<const FiniteAlgebra>, 7> kSimple4 = {
    simple4_form(0, 1), simple4_form(1, 1), simple4_form(1, 2),
    simple4_form(0, 3), simple4_form(1, 3), simple4_form(2, 2),
    simple4_form(2, 3)};

std::shared_ptr<const FiniteAlgebra> make_majority() {
  std::vector<int> table(8);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        table[4 * x + 2 * y + z] = (x + y + z >= 2) ? 1 : 0;
  return make_ternary("maj", std::move(table));
}

std::shared_ptr<const FiniteAlgebra> make_xor() {
  std::vector<int> table(8);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) table[4 * x + 2 * y + z] = (x + y + z) % 2;
  return make_ternary("xor3", std::move(table));
}

const std::shared_ptr<const FiniteAlgebra> kMajority = make_majority();
const std::shared_ptr<const FiniteAlgebra> kXor = make_xor();

}  // namespace

const FiniteAlgebra& sq3() { return *kSq3; }
const FiniteAlgebra& s2() { return *kS2; }
const FiniteAlgebra& t1() { return *kT1; }
const FiniteAlgebra& t2() { return *kT2; }
const FiniteAlgebra& example_a() { return *kExampleA; }
const FiniteAlgebra& simple4(int i) { return *kSimple4.at(i); }
const FiniteAlgebra& mass3() { return *kMass3; }
const FiniteAlgebra& majority2() { return *kMajority; }
const FiniteAlgebra& xor2() { return *kXor; }

std::shared_ptr<const FiniteAlgebra> sq3_ptr() { return kSq3; }
std::shared_ptr<const FiniteAlgebra> s2_ptr() { return kS2; }
std::shared_ptr<const FiniteAlgebra> example_a_ptr() { return kExampleA; }
std::shared_ptr<const FiniteAlgebra> simple4_ptr(int i) {
  return kSimple4.at(i);
}

std::vector<FiniteAlgebra> sl_over_sq3_family() {
  std::vector<FiniteAlgebra> family;
  for (const FiniteAlgebra& a : enumerate_cibs(4)) {
    if (is_simple(a)) continue;
    const CongruenceLattice lattice = congruence_lattice(a);
    bool has_sq3_quotient = false;
    bool has_sl_over_sq3 = false;
    for (const Congruence& theta : lattice.elements()) {
      const int nb = theta.num_blocks();
      if (nb == 1 || nb == 4) continue;
      if (nb == 3) {
        auto q = quotient_algebra(a, theta);
        if (find_isomorphism(q.algebra, sq3())) has_sq3_quotient = true;
      } else {  // two blocks, quotient is the 2-element semilattice
        for (const auto& block : theta.blocks()) {
          if (block.size() != 3) continue;
          FiniteAlgebra cls = restrict_algebra(a, block);
          if (find_isomorphism(cls, sq3())) has_sl_over_sq3 = true;
        }
      }
    }
    if (has_sl_over_sq3 && !has_sq3_quotient) family.push_back(a);
  }
  return family;
}

}  // namespace algcsp::catalog

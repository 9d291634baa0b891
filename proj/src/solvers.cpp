#include "algcsp/solvers.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "algcsp/catalog.hpp"
#include "algcsp/structure.hpp"

namespace algcsp {

namespace {

SolveOutcome finish(SolveOutcome out, const CspInstance& inst) {
  if (out.sat && out.witness && !is_solution(inst, *out.witness))
    throw AlgebraError("internal: witness failed re-verification");
  return out;
}

// ---------------------------------------------------------------- GF(p)

struct LinearSystemGF {
  int p = 3;
  int nvars = 0;
  std::vector<std::vector<int>> rows;  // coefficients, rhs last

  void add(std::vector<int> row) { rows.push_back(std::move(row)); }

  std::optional<std::vector<int>> solve() const {
    std::vector<std::vector<int>> m = rows;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < nvars && rank < static_cast<int>(m.size());
         ++col) {
      int pr = -1;
      for (int r = rank; r < static_cast<int>(m.size()); ++r)
        if (m[r][col] != 0) {
          pr = r;
          break;
        }
      if (pr < 0) continue;
      std::swap(m[rank], m[pr]);
      int inv = 1;
      while ((m[rank][col] * inv) % p != 1) ++inv;
      for (int& v : m[rank]) v = (v * inv) % p;
      for (int r = 0; r < static_cast<int>(m.size()); ++r) {
        if (r == rank || m[r][col] == 0) continue;
        const int factor = m[r][col];
        for (int c = 0; c <= nvars; ++c)
          m[r][c] = ((m[r][c] - factor * m[rank][c]) % p + p) % p;
      }
      pivot_col.push_back(col);
      ++rank;
    }
    for (int r = rank; r < static_cast<int>(m.size()); ++r)
      if (m[r][nvars] != 0) return std::nullopt;  // 0 = nonzero
    std::vector<int> x(nvars, 0);  // free variables at 0
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = m[r][nvars];
    return x;
  }
};

// Reduced row-echelon basis of the span of `vectors` over GF(p).
std::vector<std::vector<int>> rref_basis(std::vector<std::vector<int>> vectors,
                                         int p, int m,
                                         std::vector<int>& pivot_cols) {
  std::vector<std::vector<int>> basis;
  for (auto v : vectors) {
    for (size_t b = 0; b < basis.size(); ++b) {
      const int c = pivot_cols.size() > b ? pivot_cols[b] : -1;
      if (c >= 0 && v[c] != 0) {
        const int f = v[c];
        for (int j = 0; j < m; ++j) v[j] = ((v[j] - f * basis[b][j]) % p + p) % p;
      }
    }
    int lead = -1;
    for (int j = 0; j < m; ++j)
      if (v[j] != 0) {
        lead = j;
        break;
      }
    if (lead < 0) continue;
    int inv = 1;
    while ((v[lead] * inv) % p != 1) ++inv;
    for (int& e : v) e = (e * inv) % p;
    // Eliminate the new pivot from earlier rows.
    for (size_t b = 0; b < basis.size(); ++b) {
      const int f = basis[b][lead];
      if (f)
        for (int j = 0; j < m; ++j)
          basis[b][j] = ((basis[b][j] - f * v[j]) % p + p) % p;
    }
    basis.push_back(std::move(v));
    pivot_cols.push_back(lead);
    // Keep rows ordered by pivot column.
    for (size_t b = basis.size() - 1; b > 0; --b)
      if (pivot_cols[b] < pivot_cols[b - 1]) {
        std::swap(basis[b], basis[b - 1]);
        std::swap(pivot_cols[b], pivot_cols[b - 1]);
      }
  }
  return basis;
}

// ---------------------------------------------------- domain templates

struct DomainShape {
  enum Kind { Trivial, Semilattice2, Sq3Like, Other } kind = Other;
  int bottom = -1;             // parent label of the semilattice bottom
  std::vector<int> to_field;   // position in elements -> Z_p
  int prime = 0;
};

DomainShape classify_domain(const Domain& d) {
  DomainShape shape;
  const FiniteAlgebra sub = restrict_algebra(*d.algebra, d.elements);
  if (d.size() == 1) {
    shape.kind = DomainShape::Trivial;
    shape.bottom = d.elements[0];
    return shape;
  }
  if (d.size() == 2 && is_semilattice(sub)) {
    shape.kind = DomainShape::Semilattice2;
    shape.bottom = sub.mul(0, 1) == 0 ? d.elements[0] : d.elements[1];
    return shape;
  }
  if (d.size() == 3 && sub.is_cib()) {
    if (auto rep = affine_representation(sub); rep && rep->prime == 3) {
      shape.kind = DomainShape::Sq3Like;
      shape.to_field = rep->element_map;
      shape.prime = 3;
      return shape;
    }
  }
  return shape;
}

}  // namespace

// ------------------------------------------------------- backtracking

SolveOutcome backtracking_solve(const CspInstance& inst) {
  SolveOutcome out;
  out.strategy = "backtracking";
  const int n = inst.num_variables();
  std::vector<std::vector<int>> dom(n);
  for (int i = 0; i < n; ++i) dom[i] = inst.domains()[i].elements;
  for (const Constraint& c : inst.constraints())
    if (c.tuples.empty()) return finish(std::move(out), inst);  // unsat
  std::vector<const Constraint*> cons;
  for (const Constraint& c : inst.constraints())
    if (!c.scope.empty()) cons.push_back(&c);
  std::vector<std::vector<std::vector<int>>> live(cons.size());
  for (size_t j = 0; j < cons.size(); ++j) live[j] = cons[j]->tuples;

  // Arc consistency: filter tuples against domains, domains against
  // tuple projections, to a fixpoint.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t j = 0; j < cons.size(); ++j) {
      const auto& scope = cons[j]->scope;
      std::vector<std::vector<int>> kept;
      for (const auto& t : live[j]) {
        bool ok = true;
        for (size_t p = 0; p < scope.size(); ++p)
          if (!std::binary_search(dom[scope[p]].begin(), dom[scope[p]].end(),
                                  t[p]))
            ok = false;
        if (ok) kept.push_back(t);
      }
      if (kept.size() != live[j].size()) {
        live[j] = std::move(kept);
        changed = true;
      }
      if (live[j].empty()) return finish(std::move(out), inst);
      for (size_t p = 0; p < scope.size(); ++p) {
        std::set<int> support;
        for (const auto& t : live[j]) support.insert(t[p]);
        std::vector<int> kept_dom;
        for (int e : dom[scope[p]])
          if (support.count(e)) kept_dom.push_back(e);
        if (kept_dom.size() != dom[scope[p]].size()) {
          dom[scope[p]] = std::move(kept_dom);
          changed = true;
          if (dom[scope[p]].empty()) return finish(std::move(out), inst);
        }
      }
    }
  }

  // Constraints become checkable once their last scope variable is set.
  std::vector<std::vector<const Constraint*>> ready(n);
  for (const Constraint* c : cons) {
    int last = 0;
    for (int v : c->scope) last = std::max(last, v);
    ready[last].push_back(c);
  }
  Assignment f(n, -1);
  auto dfs = [&](auto&& self, int var) -> bool {
    if (var == n) return true;
    for (int e : dom[var]) {
      f[var] = e;
      bool ok = true;
      for (const Constraint* c : ready[var])
        if (!satisfies(f, *c)) {
          ok = false;
          break;
        }
      if (ok && self(self, var + 1)) return true;
    }
    f[var] = -1;
    return false;
  };
  if (dfs(dfs, 0)) {
    out.sat = true;
    out.witness = f;
  }
  return finish(std::move(out), inst);
}

// ------------------------------------------------------------- affine

SolveOutcome affine_solve(const CspInstance& inst) {
  SolveOutcome out;
  out.strategy = "affine";
  const int n = inst.num_variables();
  std::vector<DomainShape> shapes;
  int p = 0;
  for (const Domain& d : inst.domains()) {
    DomainShape s = classify_domain(d);
    if (s.kind != DomainShape::Sq3Like)
      throw AlgebraError("affine_solve: domain is not an affine CIB copy");
    if (p == 0) p = s.prime;
    if (p != s.prime) throw AlgebraError("affine_solve: mixed primes");
    shapes.push_back(std::move(s));
  }
  if (p == 0) p = 3;

  LinearSystemGF sys;
  sys.p = p;
  sys.nvars = n;
  for (const Constraint& c : inst.constraints()) {
    if (c.tuples.empty()) return finish(std::move(out), inst);  // unsat
    if (c.scope.empty()) continue;
    const int m = c.arity();
    // Map tuples into GF(p)^m.
    std::vector<std::vector<int>> vecs;
    vecs.reserve(c.tuples.size());
    for (const auto& t : c.tuples) {
      std::vector<int> v(m);
      for (int q = 0; q < m; ++q) {
        const Domain& d = inst.domains()[c.scope[q]];
        const int pos = static_cast<int>(
            std::lower_bound(d.elements.begin(), d.elements.end(), t[q]) -
            d.elements.begin());
        v[q] = shapes[c.scope[q]].to_field[pos];
      }
      vecs.push_back(std::move(v));
    }
    // Affine-hull fit: difference vectors from the first tuple span the
    // direction space; the coset size must match the tuple count exactly.
    const std::vector<int> v0 = vecs[0];
    std::vector<std::vector<int>> diffs;
    for (const auto& v : vecs) {
      std::vector<int> dvec(m);
      for (int q = 0; q < m; ++q) dvec[q] = ((v[q] - v0[q]) % p + p) % p;
      diffs.push_back(std::move(dvec));
    }
    std::vector<int> pivots;
    const auto basis = rref_basis(std::move(diffs), p, m, pivots);
    long long coset = 1;
    for (size_t i = 0; i < basis.size(); ++i) coset *= p;
    if (coset != static_cast<long long>(c.tuples.size()))
      throw AlgebraError("affine_solve: relation is not an affine subspace");
    // Kernel rows of the basis matrix give the constraint equations.
    std::vector<char> is_pivot(m, 0);
    for (int col : pivots) is_pivot[col] = 1;
    for (int free_col = 0; free_col < m; ++free_col) {
      if (is_pivot[free_col]) continue;
      std::vector<int> u(m, 0);
      u[free_col] = 1;
      for (size_t b = 0; b < basis.size(); ++b)
        u[pivots[b]] = ((-basis[b][free_col]) % p + p) % p;
      std::vector<int> row(n + 1, 0);
      int rhs = 0;
      for (int q = 0; q < m; ++q) {
        row[c.scope[q]] = (row[c.scope[q]] + u[q]) % p;
        rhs = (rhs + u[q] * v0[q]) % p;
      }
      row[n] = rhs;
      sys.add(std::move(row));
    }
  }
  auto x = sys.solve();
  if (!x) return finish(std::move(out), inst);
  Assignment f(n);
  for (int i = 0; i < n; ++i) {
    const auto& map = shapes[i].to_field;
    const int pos = static_cast<int>(
        std::find(map.begin(), map.end(), (*x)[i]) - map.begin());
    f[i] = inst.domains()[i].elements[pos];
  }
  out.sat = true;
  out.witness = std::move(f);
  return finish(std::move(out), inst);
}

// -------------------------------------------------------------- sq3s2

SolveOutcome sq3s2_solve(const CspInstance& inst) {
  SolveOutcome out;
  out.strategy = "sq3s2";
  const int n = inst.num_variables();
  std::vector<int> alpha;
  std::vector<int> bottom(n, -1);
  for (int i = 0; i < n; ++i) {
    const DomainShape s = classify_domain(inst.domains()[i]);
    switch (s.kind) {
      case DomainShape::Sq3Like:
        alpha.push_back(i);
        break;
      case DomainShape::Trivial:
      case DomainShape::Semilattice2:
        bottom[i] = s.bottom;
        break;
      default:
        throw AlgebraError("sq3s2_solve: domain not isomorphic to Sq3 or S2");
    }
  }
  {
    std::string line = "alpha =";
    for (int i : alpha) line += " " + std::to_string(i);
    out.trace.push_back(line);
  }
  const CspInstance restricted = restrict_to_variables(inst, alpha);
  const SolveOutcome sub = affine_solve(restricted);
  if (!sub.sat) return finish(std::move(out), inst);
  Assignment g(n);
  for (int i = 0; i < n; ++i) g[i] = bottom[i];
  for (size_t j = 0; j < alpha.size(); ++j) g[alpha[j]] = (*sub.witness)[j];
  if (!is_solution(inst, g))
    throw AlgebraError("internal: sink extension failed verification");
  out.sat = true;
  out.witness = std::move(g);
  return finish(std::move(out), inst);
}

// ----------------------------------------------------- quotient-block

SolveOutcome quotient_block_solve(const CspInstance& inst) {
  SolveOutcome out;
  out.strategy = "quotient-block";
  const int n = inst.num_variables();
  const FiniteAlgebra& parent = catalog::example_a();
  for (const Domain& d : inst.domains()) {
    if (!(*d.algebra == parent))
      throw AlgebraError("quotient_block_solve: parent is not the target");
    if (!is_subuniverse(parent, d.elements))
      throw AlgebraError("quotient_block_solve: domain is not a subalgebra");
  }
  const Congruence big_theta =
      Congruence::from_block_ids({0, 0, 2, 3});  // |01|2|3|
  std::vector<Congruence> theta;
  for (const Domain& d : inst.domains())
    theta.push_back(d.size() == 4 ? big_theta : Congruence::zero(4));

  const CspInstance quot = quotient_instance(inst, theta);
  const SolveOutcome sub = sq3s2_solve(quot);
  out.trace.push_back(sub.sat ? "quotient instance sat"
                              : "quotient instance unsat");
  if (!sub.sat) return finish(std::move(out), inst);

  Assignment g(n);
  for (int i = 0; i < n; ++i) {
    const Domain& d = inst.domains()[i];
    const int q = (*sub.witness)[i];
    // Quotient labels follow block least members, so the preimage is the
    // theta-class of the q-th block of the induced partition.
    std::vector<int> block;
    {
      std::map<int, std::vector<int>> by_id;
      for (int e : d.elements) by_id[theta[i].block_id(e)].push_back(e);
      int idx = 0;
      for (auto& [id, elems] : by_id) {
        if (idx == q) block = elems;
        ++idx;
      }
    }
    if (d.size() == 2) {
      g[i] = 0;  // semilattice variables are sent to the bottom
    } else if (block.size() == 2) {
      g[i] = 0;  // the {0,1} class of a full variable
    } else {
      g[i] = block.at(0);
    }
  }
  if (!is_solution(inst, g))
    throw AlgebraError("internal: quotient-block witness failed verification");
  out.sat = true;
  out.witness = std::move(g);
  return finish(std::move(out), inst);
}

// ------------------------------------------------------------ simple4

SolveOutcome simple4_solve(const CspInstance& inst) {
  SolveOutcome out;
  out.strategy = "simple4";
  const int n = inst.num_variables();
  int family = -1;
  for (int i = 0; i < 7; ++i)
    if (!inst.domains().empty() &&
        *inst.domains()[0].algebra == catalog::simple4(i))
      family = i;
  if (family < 0 && n > 0)
    throw AlgebraError("simple4_solve: parent is not one of the 7 algebras");
  for (const Domain& d : inst.domains()) {
    if (family >= 0 && !(*d.algebra == catalog::simple4(family)))
      throw AlgebraError("simple4_solve: mixed parents");
    if (!is_subuniverse(*d.algebra, d.elements))
      throw AlgebraError("simple4_solve: domain is not a subalgebra");
  }
  std::vector<int> alpha;
  for (int i = 0; i < n; ++i)
    if (inst.domains()[i].elements == std::vector<int>{1, 2, 3})
      alpha.push_back(i);
  {
    std::string line = "alpha =";
    for (int i : alpha) line += " " + std::to_string(i);
    out.trace.push_back(line);
  }
  const SolveOutcome sub = affine_solve(restrict_to_variables(inst, alpha));
  if (!sub.sat) return finish(std::move(out), inst);
  out.sat = true;  // the decision is read off the alpha-instance
  // Witness: seeded search with the alpha variables pinned.
  std::vector<Domain> pinned = inst.domains();
  for (size_t j = 0; j < alpha.size(); ++j)
    pinned[alpha[j]].elements = {(*sub.witness)[j]};
  SolveOutcome seeded =
      backtracking_solve(CspInstance(pinned, inst.constraints()));
  if (seeded.sat) {
    out.witness = std::move(seeded.witness);
  } else {
    SolveOutcome full = backtracking_solve(inst);
    if (full.sat)
      out.witness = std::move(full.witness);
    else
      out.trace.push_back("decision sat but exhaustive witness search failed");
  }
  return finish(std::move(out), inst);
}

// -------------------------------------------------------- least-block

SolveOutcome least_block_solve(const CspInstance& inst) {
  SolveOutcome out;
  out.strategy = "least-block";
  const int n = inst.num_variables();
  if (n == 0) {
    out.sat = inst.constraints().empty();
    if (out.sat) out.witness = Assignment{};
    return finish(std::move(out), inst);
  }
  const FiniteAlgebra& parent = *inst.domains()[0].algebra;
  for (const Domain& d : inst.domains())
    if (!(*d.algebra == parent))
      throw AlgebraError("least_block_solve: mixed parents");
  const auto ec = detect_ec(parent);
  if (!ec) throw AlgebraError("least_block_solve: parent is not EC");
  const auto t_table = term_table(parent, ec->t);
  const int ps = parent.size();
  // Chain law: lower-or-equal blocks absorb higher ones under t.
  {
    std::vector<int> level(ps);
    for (size_t ci = 0; ci < ec->class_order.size(); ++ci)
      for (int e : ec->class_order[ci]) level[e] = static_cast<int>(ci);
    for (int u = 0; u < ps; ++u)
      for (int v = 0; v < ps; ++v)
        if (level[u] <= level[v] && t_table[u * ps + v] != u)
          throw AlgebraError("least_block_solve: chain law violated");
  }
  std::vector<std::vector<std::vector<int>>> chain(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& cls : ec->class_order) {
      std::vector<int> inter;
      for (int e : cls)
        if (inst.domains()[i].contains(e)) inter.push_back(e);
      if (!inter.empty()) chain[i].push_back(std::move(inter));
    }
  }
  std::vector<int> js;
  std::vector<std::vector<int>> blocks;
  Assignment last_witness;
  for (int k = 0; k < n; ++k) {
    int chosen = -1;
    for (int j = 0; j < static_cast<int>(chain[k].size()); ++j) {
      blocks.resize(k + 1);
      blocks[k] = chain[k][j];
      const CspInstance partial = partial_instance(inst, k + 1);
      const CspInstance restricted = block_instance(partial, blocks);
      const SolveOutcome attempt = backtracking_solve(restricted);
      if (attempt.sat) {
        chosen = j;
        last_witness = *attempt.witness;
        break;
      }
    }
    if (chosen < 0) {
      out.trace.push_back("failure at variable " + std::to_string(k));
      return finish(std::move(out), inst);
    }
    js.push_back(chosen);
  }
  {
    std::string line = "j =";
    for (int j : js) line += " " + std::to_string(j);
    out.trace.push_back(line);
  }
  out.sat = true;
  out.witness = std::move(last_witness);
  return finish(std::move(out), inst);
}

// ----------------------------------------------------------- dispatch

SolveOutcome oracle_solve(const CspInstance& inst) {
  SolveOutcome out;
  out.strategy = "oracle";
  auto f = brute_force_solve(inst);
  if (f) {
    out.sat = true;
    out.witness = std::move(f);
  }
  return finish(std::move(out), inst);
}

SolveOutcome dispatch_solve(const CspInstance& inst) {
  const int n = inst.num_variables();
  bool all_semilattice = n > 0;
  bool all_affine = n > 0;
  int prime = 0;
  bool all_sq3s2 = n > 0;
  bool shared_parent = n > 0;
  for (int i = 0; i < n && (all_semilattice || all_affine || all_sq3s2 ||
                            shared_parent);
       ++i) {
    const Domain& d = inst.domains()[i];
    const FiniteAlgebra sub = restrict_algebra(*d.algebra, d.elements);
    if (!sub.is_binar() || !is_semilattice(sub)) all_semilattice = false;
    std::optional<AffineRep> rep;
    if (sub.is_cib()) rep = affine_representation(sub);
    if (rep && rep->prime >= 2) {
      if (prime == 0) prime = rep->prime;
      if (prime != rep->prime) all_affine = false;
    } else {
      all_affine = false;
    }
    const DomainShape shape = classify_domain(d);
    if (shape.kind == DomainShape::Other) all_sq3s2 = false;
    if (!(*d.algebra == *inst.domains()[0].algebra)) shared_parent = false;
  }
  auto tag = [&](SolveOutcome o, const std::string& note) {
    o.trace.insert(o.trace.begin(), "dispatch: " + note);
    return o;
  };
  if (all_semilattice) return tag(backtracking_solve(inst), "semilattice");
  if (all_affine) return tag(affine_solve(inst), "affine");
  if (all_sq3s2) return tag(sq3s2_solve(inst), "sq3s2");
  if (shared_parent && n > 0) {
    const FiniteAlgebra& parent = *inst.domains()[0].algebra;
    if (parent == catalog::example_a())
      return tag(quotient_block_solve(inst), "quotient-block");
    for (int i = 0; i < 7; ++i)
      if (parent == catalog::simple4(i))
        return tag(simple4_solve(inst), "simple4");
    if (parent.is_binar() && parent.size() <= 8 && detect_ec(parent))
      return tag(least_block_solve(inst), "least-block");
  }
  return tag(oracle_solve(inst), "fallback");
}

SolveOutcome solve_with_strategy(const CspInstance& inst,
                                 const std::string& strategy) {
  if (strategy == "oracle") return oracle_solve(inst);
  if (strategy == "backtracking") return backtracking_solve(inst);
  if (strategy == "affine") return affine_solve(inst);
  if (strategy == "sq3s2") return sq3s2_solve(inst);
  if (strategy == "quotient-block") return quotient_block_solve(inst);
  if (strategy == "simple4") return simple4_solve(inst);
  if (strategy == "least-block") return least_block_solve(inst);
  if (strategy == "auto") return dispatch_solve(inst);
  throw AlgebraError("unknown strategy: " + strategy);
}

}  // namespace algcsp

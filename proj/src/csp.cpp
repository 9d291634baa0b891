#include "algcsp/csp.hpp"

#include <algorithm>
#include <set>

namespace algcsp {

bool Domain::contains(int e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

std::vector<std::vector<int>> Constraint::normalized(
    std::vector<std::vector<int>> tuples) {
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  return tuples;
}

bool Constraint::contains_tuple(std::span<const int> t) const {
  std::vector<int> key(t.begin(), t.end());
  return std::binary_search(tuples.begin(), tuples.end(), key);
}

CspInstance::CspInstance(std::vector<Domain> domains,
                         std::vector<Constraint> constraints)
    : domains_(std::move(domains)), constraints_(std::move(constraints)) {
  for (Domain& d : domains_) {
    if (!d.algebra) throw AlgebraError("domain without algebra");
    std::sort(d.elements.begin(), d.elements.end());
    d.elements.erase(std::unique(d.elements.begin(), d.elements.end()),
                     d.elements.end());
    for (int e : d.elements)
      if (e < 0 || e >= d.algebra->size())
        throw AlgebraError("domain element outside algebra universe");
  }
  const int n = num_variables();
  for (Constraint& c : constraints_) {
    std::set<int> seen;
    for (int v : c.scope) {
      if (v < 0 || v >= n) throw AlgebraError("scope variable out of range");
      if (!seen.insert(v).second) throw AlgebraError("scope not injective");
    }
    for (const auto& t : c.tuples)
      if (t.size() != c.scope.size())
        throw AlgebraError("tuple length does not match scope");
    c.tuples = Constraint::normalized(std::move(c.tuples));
  }
}

bool satisfies(const Assignment& f, const Constraint& c) {
  std::vector<int> key;
  key.reserve(c.scope.size());
  for (int v : c.scope) {
    if (v >= static_cast<int>(f.size()))
      throw AlgebraError("satisfies: assignment not total on scope");
    key.push_back(f[v]);
  }
  if (c.scope.empty()) return !c.tuples.empty();
  return std::binary_search(c.tuples.begin(), c.tuples.end(), key);
}

bool is_solution(const CspInstance& inst, const Assignment& f) {
  if (static_cast<int>(f.size()) != inst.num_variables()) return false;
  for (int i = 0; i < inst.num_variables(); ++i)
    if (!inst.domains()[i].contains(f[i])) return false;
  for (const Constraint& c : inst.constraints())
    if (!satisfies(f, c)) return false;
  return true;
}

namespace {

long long search_space(const CspInstance& inst) {
  long long total = 1;
  for (const Domain& d : inst.domains()) {
    total *= std::max(d.size(), 1);
    if (total > (1LL << 24)) return -1;
  }
  return total;
}

template <typename Visit>
void enumerate_assignments(const CspInstance& inst, Visit&& visit) {
  const int n = inst.num_variables();
  for (const Domain& d : inst.domains())
    if (d.elements.empty()) return;
  std::vector<int> idx(n, 0);
  Assignment f(n);
  bool done = n == 0;
  if (n == 0) {
    Assignment empty;
    bool ok = true;
    for (const Constraint& c : inst.constraints())
      ok = ok && satisfies(empty, c);
    if (ok) visit(empty);
    return;
  }
  while (!done) {
    for (int i = 0; i < n; ++i) f[i] = inst.domains()[i].elements[idx[i]];
    bool ok = true;
    for (const Constraint& c : inst.constraints())
      if (!satisfies(f, c)) {
        ok = false;
        break;
      }
    if (ok && !visit(f)) return;
    int i = n - 1;
    while (i >= 0 && ++idx[i] == inst.domains()[i].size()) idx[i--] = 0;
    done = i < 0;
  }
}

}  // namespace

std::optional<Assignment> brute_force_solve(const CspInstance& inst) {
  if (search_space(inst) < 0)
    throw AlgebraError("brute_force_solve: search space exceeds 2^24");
  std::optional<Assignment> result;
  enumerate_assignments(inst, [&](const Assignment& f) {
    result = f;
    return false;  // lexicographically least is the first one found
  });
  return result;
}

std::vector<Assignment> all_solutions(const CspInstance& inst) {
  if (search_space(inst) < 0)
    throw AlgebraError("all_solutions: search space exceeds 2^24");
  std::vector<Assignment> out;
  enumerate_assignments(inst, [&](const Assignment& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

ValidationReport validate(const CspInstance& inst) {
  ValidationReport report;
  for (int i = 0; i < inst.num_variables(); ++i)
    if (inst.domains()[i].elements.empty())
      report.issues.push_back({-1, "empty domain " + std::to_string(i)});
  for (size_t j = 0; j < inst.constraints().size(); ++j) {
    const Constraint& c = inst.constraints()[j];
    const int m = c.arity();
    bool membership_ok = true;
    for (const auto& t : c.tuples)
      for (int p = 0; p < m; ++p)
        if (!inst.domains()[c.scope[p]].contains(t[p])) membership_ok = false;
    if (!membership_ok) {
      report.issues.push_back(
          {static_cast<int>(j), "tuple outside scoped domains"});
      continue;
    }
    // Closure of the relation under the scoped algebras (componentwise).
    if (!c.tuples.empty() && m > 0) {
      const FiniteAlgebra& parent = *inst.domains()[c.scope[0]].algebra;
      bool typed = true;
      for (int p = 1; p < m; ++p)
        if (!inst.domains()[c.scope[p]].algebra->same_type(parent))
          typed = false;
      if (!typed) {
        report.issues.push_back(
            {static_cast<int>(j), "mixed similarity types in scope"});
      } else {
        bool closed = true;
        for (size_t oi = 0; oi < parent.operations().size() && closed; ++oi) {
          const int k = parent.operations()[oi].arity;
          if (k == 0) continue;
          std::vector<size_t> pick(k, 0);
          std::vector<int> image(m);
          bool done = false;
          while (!done && closed) {
            for (int p = 0; p < m; ++p) {
              std::vector<int> args(k);
              for (int q = 0; q < k; ++q) args[q] = c.tuples[pick[q]][p];
              image[p] = inst.domains()[c.scope[p]].algebra->apply(
                  static_cast<int>(oi), args);
            }
            if (!c.contains_tuple(image)) closed = false;
            int q = k - 1;
            while (q >= 0 && ++pick[q] == c.tuples.size()) pick[q--] = 0;
            done = q < 0;
          }
        }
        if (!closed)
          report.issues.push_back(
              {static_cast<int>(j),
               "relation not closed under the operations"});
      }
    }
    // Subdirectness onto the scoped domains.
    for (int p = 0; p < m; ++p) {
      std::set<int> proj;
      for (const auto& t : c.tuples) proj.insert(t[p]);
      if (static_cast<int>(proj.size()) !=
          inst.domains()[c.scope[p]].size()) {
        report.issues.push_back(
            {static_cast<int>(j),
             "not subdirect at position " + std::to_string(p)});
      }
    }
  }
  return report;
}

CspInstance normalize(const CspInstance& inst) {
  std::vector<Domain> domains = inst.domains();
  std::vector<Constraint> constraints = inst.constraints();
  bool changed = true;
  while (changed) {
    changed = false;
    // Shrink domains to the raw projections of every covering constraint.
    for (const Constraint& c : constraints) {
      for (int p = 0; p < c.arity(); ++p) {
        std::set<int> proj;
        for (const auto& t : c.tuples) proj.insert(t[p]);
        Domain& d = domains[c.scope[p]];
        std::vector<int> kept;
        for (int e : d.elements)
          if (proj.count(e)) kept.push_back(e);
        if (kept.size() != d.elements.size()) {
          d.elements = std::move(kept);
          changed = true;
        }
      }
    }
    // Re-restrict relations to the shrunken domains.
    for (Constraint& c : constraints) {
      std::vector<std::vector<int>> kept;
      for (const auto& t : c.tuples) {
        bool inside = true;
        for (int p = 0; p < c.arity(); ++p)
          if (!domains[c.scope[p]].contains(t[p])) inside = false;
        if (inside) kept.push_back(t);
      }
      if (kept.size() != c.tuples.size()) {
        c.tuples = std::move(kept);
        changed = true;
      }
    }
  }
  return CspInstance(std::move(domains), std::move(constraints));
}

CspInstance restrict_to_variables(const CspInstance& inst,
                                  std::span<const int> keep) {
  std::vector<int> position(inst.num_variables(), -1);
  std::vector<Domain> domains;
  for (size_t i = 0; i < keep.size(); ++i) {
    position[keep[i]] = static_cast<int>(i);
    domains.push_back(inst.domains()[keep[i]]);
  }
  std::vector<Constraint> constraints;
  for (const Constraint& c : inst.constraints()) {
    std::vector<int> positions;  // positions of in-scope coordinates
    Constraint partial;
    for (int p = 0; p < c.arity(); ++p) {
      if (position[c.scope[p]] >= 0) {
        positions.push_back(p);
        partial.scope.push_back(position[c.scope[p]]);
      }
    }
    if (partial.scope.empty()) {
      // The empty partial scope is satisfied vacuously; keep only the
      // unsatisfiable marker of an empty relation.
      if (c.tuples.empty()) constraints.push_back(Constraint{{}, {}});
      continue;
    }
    std::vector<std::vector<int>> tuples;
    tuples.reserve(c.tuples.size());
    for (const auto& t : c.tuples) {
      std::vector<int> proj;
      proj.reserve(positions.size());
      for (int p : positions) proj.push_back(t[p]);
      tuples.push_back(std::move(proj));
    }
    partial.tuples = Constraint::normalized(std::move(tuples));
    constraints.push_back(std::move(partial));
  }
  return CspInstance(std::move(domains), std::move(constraints));
}

CspInstance partial_instance(const CspInstance& inst, int k) {
  if (k < 0 || k > inst.num_variables())
    throw AlgebraError("partial_instance: k out of range");
  std::vector<int> keep(k);
  for (int i = 0; i < k; ++i) keep[i] = i;
  return restrict_to_variables(inst, keep);
}

CspInstance quotient_instance(const CspInstance& inst,
                              const std::vector<Congruence>& theta) {
  const int n = inst.num_variables();
  if (static_cast<int>(theta.size()) != n)
    throw AlgebraError("quotient_instance: one congruence per variable");
  std::vector<Domain> domains;
  // block_label[i][e]: quotient element for parent label e of variable i.
  std::vector<std::vector<int>> block_label(n);
  for (int i = 0; i < n; ++i) {
    const Domain& d = inst.domains()[i];
    if (theta[i].size() != d.algebra->size())
      throw AlgebraError("quotient_instance: congruence on wrong universe");
    const FiniteAlgebra sub = restrict_algebra(*d.algebra, d.elements);
    // Induced partition on the subalgebra's re-indexed universe.
    std::vector<int> ids(d.elements.size());
    for (size_t p = 0; p < d.elements.size(); ++p)
      ids[p] = theta[i].block_id(d.elements[p]);
    const Congruence induced = Congruence::from_block_ids(std::move(ids));
    if (!is_congruence(sub, induced))
      throw AlgebraError("quotient_instance: incompatible congruence");
    QuotientAlgebra q = quotient_algebra(sub, induced);
    block_label[i].assign(d.algebra->size(), -1);
    for (size_t p = 0; p < d.elements.size(); ++p)
      block_label[i][d.elements[p]] = q.block_of[p];
    Domain qd;
    qd.algebra = std::make_shared<const FiniteAlgebra>(std::move(q.algebra));
    qd.elements.resize(qd.algebra->size());
    for (int e = 0; e < qd.algebra->size(); ++e) qd.elements[e] = e;
    domains.push_back(std::move(qd));
  }
  std::vector<Constraint> constraints;
  for (const Constraint& c : inst.constraints()) {
    Constraint qc;
    qc.scope = c.scope;
    std::vector<std::vector<int>> tuples;
    tuples.reserve(c.tuples.size());
    for (const auto& t : c.tuples) {
      std::vector<int> image(t.size());
      for (int p = 0; p < c.arity(); ++p)
        image[p] = block_label[c.scope[p]][t[p]];
      tuples.push_back(std::move(image));
    }
    qc.tuples = Constraint::normalized(std::move(tuples));
    constraints.push_back(std::move(qc));
  }
  return CspInstance(std::move(domains), std::move(constraints));
}

CspInstance block_instance(const CspInstance& inst,
                           const std::vector<std::vector<int>>& blocks) {
  const int n = inst.num_variables();
  if (static_cast<int>(blocks.size()) != n)
    throw AlgebraError("block_instance: one block per variable");
  std::vector<Domain> domains;
  for (int i = 0; i < n; ++i) {
    Domain d = inst.domains()[i];
    for (int e : blocks[i])
      if (!d.contains(e))
        throw AlgebraError("block_instance: block outside domain");
    d.elements = blocks[i];
    std::sort(d.elements.begin(), d.elements.end());
    // Congruence classes of idempotent algebras are subuniverses.
    if (!is_subuniverse(*d.algebra, d.elements))
      throw AlgebraError("block_instance: class is not a subuniverse");
    domains.push_back(std::move(d));
  }
  std::vector<Constraint> constraints;
  for (const Constraint& c : inst.constraints()) {
    Constraint bc;
    bc.scope = c.scope;
    for (const auto& t : c.tuples) {
      bool inside = true;
      for (int p = 0; p < c.arity(); ++p)
        if (!std::binary_search(domains[c.scope[p]].elements.begin(),
                                domains[c.scope[p]].elements.end(), t[p]))
          inside = false;
      if (inside) bc.tuples.push_back(t);
    }
    constraints.push_back(std::move(bc));
  }
  return CspInstance(std::move(domains), std::move(constraints));
}

long long instance_size_bound(const CspInstance& inst) {
  const long long n = inst.num_variables();
  long long q = 0, p = 0, r = 0;
  for (const Domain& d : inst.domains()) {
    q = std::max<long long>(q, d.size());
    p = std::max<long long>(p, static_cast<long long>(
                                   d.algebra->operations().size()));
    for (const Operation& op : d.algebra->operations())
      r = std::max<long long>(r, op.arity);
  }
  const long long big_j = static_cast<long long>(inst.constraints().size());
  long long m = 0;
  for (const Constraint& c : inst.constraints())
    m = std::max<long long>(m, c.arity());
  auto power = [](long long base, long long exp) {
    long long v = 1;
    for (long long i = 0; i < exp; ++i) v *= base;
    return v;
  };
  return n * p * power(q, r + 1) + big_j * m * power(q, m + 1) + big_j * m * n;
}

}  // namespace algcsp

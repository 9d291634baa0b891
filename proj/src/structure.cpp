#include "algcsp/structure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace algcsp {

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

bool op_depends_on(const FiniteAlgebra& a, int op, int pos) {
  const int k = a.operations()[op].arity;
  const int n = a.size();
  std::vector<int> consts(k - 1, 0), args(k);
  bool done = (k == 0);
  while (!done) {
    int first = -1;
    for (int x = 0; x < n; ++x) {
      int ci = 0;
      for (int j = 0; j < k; ++j) args[j] = (j == pos) ? x : consts[ci++];
      const int v = a.apply(op, args);
      if (x == 0)
        first = v;
      else if (v != first)
        return true;
    }
    int j = k - 2;
    while (j >= 0 && ++consts[j] == n) consts[j--] = 0;
    done = j < 0 || k == 1;
  }
  return false;
}

// Distinct binary term operations reachable within the depth bound,
// paired with a witnessing term of that depth.
std::vector<std::pair<std::vector<int>, Term>> binary_term_pool(
    const FiniteAlgebra& a, int max_depth) {
  std::map<std::vector<int>, Term> seen;
  std::vector<std::pair<std::vector<int>, Term>> pool;
  auto add = [&](const Term& t) {
    auto table = term_table(a, t);
    if (seen.emplace(table, t).second) pool.emplace_back(table, t);
  };
  add(Term::variable(0, 2));
  add(Term::variable(1, 2));
  size_t level_start = 0;
  for (int d = 0; d < max_depth; ++d) {
    const size_t level_end = pool.size();
    for (size_t oi = 0; oi < a.operations().size(); ++oi) {
      const int k = a.operations()[oi].arity;
      if (k < 1) continue;
      // All argument tuples drawing at least one child from the newest
      // level keep the enumeration from repeating whole levels.
      std::vector<size_t> pick(k, 0);
      bool done = false;
      while (!done) {
        bool fresh = (d == 0);
        for (int j = 0; j < k; ++j) fresh |= pick[j] >= level_start;
        if (fresh) {
          std::vector<Term> children;
          children.reserve(k);
          for (int j = 0; j < k; ++j) children.push_back(pool[pick[j]].second);
          add(Term::apply(a.operations()[oi].name, std::move(children)));
        }
        int j = k - 1;
        while (j >= 0 && ++pick[j] == level_end) pick[j--] = 0;
        done = j < 0;
      }
    }
    level_start = level_end;
    if (pool.size() > 512) break;  // pool saturation guard
  }
  return pool;
}

// Per-algebra data reused across absorption queries on the same algebra:
// subuniverses with abelian flags and sinks, plus the candidate term list.
struct AbsorptionContext {
  std::vector<std::vector<int>> subs;
  std::vector<char> abelian;
  std::vector<std::vector<int>> sinks;
  std::map<std::pair<int, int>, std::vector<Term>> candidates;  // by bounds
};

AbsorptionContext& absorption_context(const FiniteAlgebra& a) {
  thread_local std::map<std::vector<int>, AbsorptionContext> cache;
  std::vector<int> key = a.flat_tables();
  key.push_back(a.size());
  auto [it, fresh] = cache.emplace(std::move(key), AbsorptionContext{});
  AbsorptionContext& ctx = it->second;
  if (fresh) {
    ctx.subs = all_subuniverses(a, std::max(a.size(), 8));
    for (const auto& c : ctx.subs) {
      ctx.abelian.push_back(is_abelian(restrict_algebra(a, c), 16) ? 1 : 0);
      ctx.sinks.push_back(find_sinks(a, c));
    }
  }
  return ctx;
}

bool verify_absorbing(const FiniteAlgebra& a, std::span<const int> b,
                      const Term& t) {
  const int k = t.arity();
  const int n = a.size();
  const std::vector<int> bs(b.begin(), b.end());
  const int m = static_cast<int>(bs.size());
  std::vector<int> env(k), pick(k - 1, 0);
  for (int pos = 0; pos < k; ++pos) {
    std::fill(pick.begin(), pick.end(), 0);
    bool done = false;
    while (!done) {
      int ci = 0;
      for (int j = 0; j < k; ++j)
        if (j != pos) env[j] = bs[pick[ci++]];
      for (int x = 0; x < n; ++x) {
        env[pos] = x;
        if (!std::binary_search(bs.begin(), bs.end(), eval_term(a, t, env)))
          return false;
      }
      int j = k - 2;
      while (j >= 0 && ++pick[j] == m) pick[j--] = 0;
      done = j < 0 || k == 1;
    }
  }
  return true;
}

}  // namespace

bool is_abelian(const FiniteAlgebra& a, int max_size) {
  if (a.size() > max_size) throw AlgebraError("is_abelian: size bound exceeded");
  if (a.size() == 1) return true;
  const FiniteAlgebra square = product_algebra({&a, &a});
  const int n = a.size();
  auto diag = [&](int x) { return x * n + x; };
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x + 1 < n; ++x) pairs.emplace_back(diag(x), diag(x + 1));
  const Congruence theta = generated_congruence(square, pairs);
  // Abelian iff the diagonal is a full block of Cg(D(A)^2).
  const int diag_block = theta.block_id(diag(0));
  for (int code = 0; code < square.size(); ++code) {
    const bool on_diag = (code / n) == (code % n);
    if ((theta.block_id(code) == diag_block) != on_diag) return false;
  }
  return true;
}

std::vector<int> find_sinks(const FiniteAlgebra& a, std::span<const int> c) {
  if (c.empty()) return {};
  const std::vector<int> gen = subuniverse_closure(a, c);
  std::vector<int> sinks;
  for (int s : c) {
    bool is_sink = true;
    for (size_t oi = 0; oi < a.operations().size() && is_sink; ++oi) {
      const int k = a.operations()[oi].arity;
      if (k == 0) continue;
      std::vector<int> consts(k - 1), args(k);
      for (int pos = 0; pos < k && is_sink; ++pos) {
        if (!op_depends_on(a, static_cast<int>(oi), pos)) continue;
        std::vector<size_t> pick(k - 1, 0);
        bool done = false;
        while (!done && is_sink) {
          int ci = 0;
          for (int j = 0; j < k; ++j)
            args[j] = (j == pos) ? s : gen[pick[ci++]];
          if (a.apply(static_cast<int>(oi), args) != s) is_sink = false;
          int j = k - 2;
          while (j >= 0 && ++pick[j] == gen.size()) pick[j--] = 0;
          done = j < 0 || k == 1;
        }
      }
    }
    if (is_sink) sinks.push_back(s);
  }
  std::sort(sinks.begin(), sinks.end());
  return sinks;
}

AbsorptionCertificate check_absorbing(const FiniteAlgebra& a,
                                      std::span<const int> b, int max_arity,
                                      int max_depth) {
  std::vector<int> bs(b.begin(), b.end());
  std::sort(bs.begin(), bs.end());
  if (bs.empty()) throw AlgebraError("check_absorbing: empty subuniverse");
  if (static_cast<int>(bs.size()) == a.size())
    return {AbsorptionCertificate::Kind::Absorbing, Term::variable(0, 1)};

  AbsorptionContext& ctx = absorption_context(a);
  auto in_b = [&](int e) { return std::binary_search(bs.begin(), bs.end(), e); };

  // Sound negatives first.  An absorbing B would intersect every abelian
  // subuniverse it meets in a full copy (restriction + absorption-freeness
  // of abelian algebras), and would contain every sink of every
  // subuniverse it meets.
  for (size_t ci = 0; ci < ctx.subs.size(); ++ci) {
    const auto& c = ctx.subs[ci];
    size_t inter = 0;
    for (int e : c) inter += in_b(e) ? 1 : 0;
    if (inter == 0) continue;
    if (inter < c.size() && ctx.abelian[ci]) {
      AbsorptionCertificate cert{AbsorptionCertificate::Kind::AbelianParent};
      cert.subuniverse = c;
      return cert;
    }
    for (int s : ctx.sinks[ci]) {
      if (!in_b(s)) {
        AbsorptionCertificate cert{AbsorptionCertificate::Kind::SinkEscape};
        cert.sink = s;
        cert.subuniverse = c;
        return cert;
      }
    }
  }

  // Bounded positive search: basic operations, the two-variable pool, and
  // star combinations of shallow pool members.
  auto [cand_it, cand_fresh] =
      ctx.candidates.try_emplace({max_arity, max_depth});
  std::vector<Term>& candidates = cand_it->second;
  if (cand_fresh) {
    for (const Operation& op : a.operations()) {
      if (op.arity >= 1 && op.arity <= max_arity) {
        std::vector<Term> vars;
        for (int j = 0; j < op.arity; ++j)
          vars.push_back(Term::variable(j, op.arity));
        candidates.push_back(Term::apply(op.name, std::move(vars)));
      }
    }
    const auto pool = binary_term_pool(a, max_depth);
    for (const auto& [table, t] : pool)
      if (!t.is_variable()) candidates.push_back(t);
    std::vector<Term> shallow;
    for (const auto& [table, t] : pool)
      if (t.depth() <= 2) shallow.push_back(t);
    for (const Term& f : shallow)
      for (const Term& g : shallow) {
        if (f.arity() * g.arity() > max_arity) continue;
        if (f.is_variable() && g.is_variable()) continue;
        candidates.push_back(star_compose(f, g));
      }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Term& x, const Term& y) {
                       if (x.arity() != y.arity()) return x.arity() < y.arity();
                       return x.depth() < y.depth();
                     });
  }
  for (const Term& t : candidates) {
    if (verify_absorbing(a, bs, t))
      return {AbsorptionCertificate::Kind::Absorbing, t};
  }

  AbsorptionCertificate cert{AbsorptionCertificate::Kind::ExhaustedBound};
  cert.max_arity = max_arity;
  cert.max_depth = max_depth;
  return cert;
}

MinimalAbsorbing minimal_absorbing(const FiniteAlgebra& a, int max_arity,
                                   int max_depth) {
  const auto subs = all_subuniverses(a, std::max(a.size(), 8));
  std::vector<std::vector<int>> absorbing;
  MinimalAbsorbing result;
  for (const auto& s : subs) {
    const auto cert = check_absorbing(a, s, max_arity, max_depth);
    if (cert.absorbing())
      absorbing.push_back(s);
    else if (cert.kind == AbsorptionCertificate::Kind::ExhaustedBound)
      result.exhausted.push_back(s);
  }
  for (const auto& s : absorbing) {
    bool minimal = true;
    for (const auto& t : absorbing) {
      if (t == s || t.size() >= s.size()) continue;
      if (std::includes(s.begin(), s.end(), t.begin(), t.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) result.masses.push_back(s);
  }
  return result;
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> has_ctb_cib(
    const FiniteAlgebra& a) {
  if (!a.is_cib()) throw AlgebraError("has_ctb_cib: not a CIB");
  for (const auto& b : all_subuniverses(a, std::max(a.size(), 8))) {
    if (b.size() < 2) continue;
    const FiniteAlgebra sub = restrict_algebra(a, b);
    for (const Congruence& theta : congruence_lattice(sub).elements()) {
      if (theta.num_blocks() != 2) continue;
      // Two-element CIB quotient: always a semilattice; the bottom block
      // is the one the mixed product lands in.
      const auto blocks = theta.blocks();
      const int x = blocks[0][0], y = blocks[1][0];
      const int bottom = theta.related(sub.mul(x, y), x) ? 0 : 1;
      std::vector<int> d;
      for (int e : blocks[bottom]) d.push_back(b[e]);
      return std::make_pair(std::move(d), b);
    }
  }
  return std::nullopt;
}

bool has_edge_term_cib(const FiniteAlgebra& a) {
  return !has_ctb_cib(a).has_value();
}

namespace {

Term substitute_second(const Term& s, const Term& t) {
  if (s.is_variable()) return s.var() == 1 ? t : s;
  std::vector<Term> children;
  children.reserve(s.children().size());
  for (const Term& c : s.children())
    children.push_back(substitute_second(c, t));
  return Term::apply(s.op(), std::move(children));
}

}  // namespace

std::optional<Term> iterate_second(const FiniteAlgebra& a, const Term& s) {
  if (s.arity() != 2) throw AlgebraError("iterate_second: term not binary");
  const long long bound = std::min<long long>(factorial(a.size()), 100000);
  Term t = s;
  for (long long k = 1; k <= bound; ++k) {
    const auto table = term_table(a, t);
    const int n = a.size();
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        if (table[x * n + table[x * n + y]] != table[x * n + y]) ok = false;
    if (ok) return t;
    t = substitute_second(s, t);
  }
  return std::nullopt;
}

std::optional<EcStructure> detect_ec(const FiniteAlgebra& a) {
  if (!a.is_idempotent()) throw AlgebraError("detect_ec: not idempotent");
  if (!a.is_binar()) return std::nullopt;
  // s(x,y) = y.(x.y): the Mal'tsev-derived binary term for CIB classes.
  const std::string& mul = a.operations()[0].name;
  const Term x = Term::variable(0, 2), y = Term::variable(1, 2);
  const Term s = Term::apply(mul, {y, Term::apply(mul, {x, y})});
  for (const Congruence& theta : congruence_lattice(a).elements()) {
    bool classes_ok = true;
    for (const auto& block : theta.blocks()) {
      if (block.size() == 1) continue;
      if (!is_abelian(restrict_algebra(a, block), 16)) {
        classes_ok = false;
        break;
      }
    }
    if (!classes_ok) continue;
    const auto t = iterate_second(a, s);
    if (!t) continue;
    const auto table = term_table(a, *t);
    const int n = a.size();
    // Within every class t must project onto its first argument.
    bool proj_ok = true;
    for (int u = 0; u < n && proj_ok; ++u)
      for (int v = 0; v < n && proj_ok; ++v)
        if (theta.related(u, v) && table[u * n + v] != u) proj_ok = false;
    if (!proj_ok) continue;
    // The quotient under t must be a linearly ordered meet semilattice.
    const auto blocks = theta.blocks();
    const int m = static_cast<int>(blocks.size());
    std::vector<int> block_of(n);
    for (int bi = 0; bi < m; ++bi)
      for (int e : blocks[bi]) block_of[e] = bi;
    std::vector<int> qt(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        qt[i * m + j] = block_of[table[blocks[i][0] * n + blocks[j][0]]];
    bool chain_ok = true;
    for (int i = 0; i < m && chain_ok; ++i) {
      if (qt[i * m + i] != i) chain_ok = false;
      for (int j = 0; j < m && chain_ok; ++j) {
        if (qt[i * m + j] != qt[j * m + i]) chain_ok = false;
        if (qt[i * m + j] != i && qt[i * m + j] != j) chain_ok = false;
        for (int k = 0; k < m && chain_ok; ++k)
          if (qt[qt[i * m + j] * m + k] != qt[i * m + (qt[j * m + k])])
            chain_ok = false;
      }
    }
    if (!chain_ok) continue;
    // Sort classes by the chain order, least block first.
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return i != j && qt[i * m + j] == i; });
    EcStructure ec;
    ec.theta = theta;
    ec.t = *t;
    for (int i : order) ec.class_order.push_back(blocks[i]);
    return ec;
  }
  return std::nullopt;
}

std::optional<AffineRep> affine_representation(const FiniteAlgebra& a) {
  if (!a.is_cib()) return std::nullopt;
  const int n = a.size();
  if (n == 1) return AffineRep{1, 0, 0, {0}};
  const bool prime = (n == 2 || n == 3 || n == 5 || n == 7);
  if (!prime) return std::nullopt;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    for (int r = 0; r < n; ++r)
      for (int b = 0; b < n; ++b) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
          for (int y = 0; y < n && ok; ++y)
            if (perm[a.mul(x, y)] != (r * perm[x] + r * perm[y] + b) % n)
              ok = false;
        if (ok) return AffineRep{n, r, b, perm};
      }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace algcsp

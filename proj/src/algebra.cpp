#include "algcsp/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace algcsp {

namespace {

long long ipow(int base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(int size, std::vector<Operation> ops)
    : size_(size), ops_(std::move(ops)) {
  if (size <= 0) throw AlgebraError("algebra size must be positive");
  for (const Operation& op : ops_) {
    if (op.arity < 0) throw AlgebraError("negative arity");
    if (static_cast<long long>(op.table.size()) != ipow(size, op.arity))
      throw AlgebraError("table length does not match size^arity");
    for (int v : op.table)
      if (v < 0 || v >= size) throw AlgebraError("table entry out of range");
  }
}

FiniteAlgebra FiniteAlgebra::binar(std::vector<std::vector<int>> table,
                                   std::string op_name) {
  const int n = static_cast<int>(table.size());
  Operation op;
  op.name = std::move(op_name);
  op.arity = 2;
  op.table.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw AlgebraError("ragged table");
    op.table.insert(op.table.end(), row.begin(), row.end());
  }
  return FiniteAlgebra(n, {std::move(op)});
}

int FiniteAlgebra::op_index(const std::string& name) const {
  for (size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return static_cast<int>(i);
  return -1;
}

int FiniteAlgebra::apply(int op, std::span<const int> args) const {
  const Operation& f = ops_[op];
  if (static_cast<int>(args.size()) != f.arity)
    throw AlgebraError("arity mismatch in apply");
  size_t idx = 0;
  for (int a : args) {
    if (a < 0 || a >= size_) throw AlgebraError("element out of range");
    idx = idx * size_ + a;
  }
  return f.table[idx];
}

bool FiniteAlgebra::is_idempotent() const {
  for (const Operation& op : ops_) {
    for (int a = 0; a < size_; ++a) {
      size_t idx = 0;
      for (int j = 0; j < op.arity; ++j) idx = idx * size_ + a;
      if (op.table[idx] != a) return false;
    }
  }
  return true;
}

bool FiniteAlgebra::is_commutative_binar() const {
  if (!is_binar()) return false;
  for (int x = 0; x < size_; ++x)
    for (int y = x + 1; y < size_; ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

bool FiniteAlgebra::is_cib() const {
  return is_binar() && is_idempotent() && is_commutative_binar();
}

bool FiniteAlgebra::same_type(const FiniteAlgebra& other) const {
  if (ops_.size() != other.ops_.size()) return false;
  for (size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name != other.ops_[i].name ||
        ops_[i].arity != other.ops_[i].arity)
      return false;
  return true;
}

std::vector<int> FiniteAlgebra::flat_tables() const {
  std::vector<int> flat;
  for (const Operation& op : ops_)
    flat.insert(flat.end(), op.table.begin(), op.table.end());
  return flat;
}

int eval_term(const FiniteAlgebra& a, const Term& t, std::span<const int> env) {
  if (static_cast<int>(env.size()) < t.arity())
    throw AlgebraError("environment shorter than term arity");
  if (t.is_variable()) {
    int v = env[t.var()];
    if (v < 0 || v >= a.size()) throw AlgebraError("element out of range");
    return v;
  }
  const int op = a.op_index(t.op());
  if (op < 0) throw AlgebraError("unknown operation symbol: " + t.op());
  if (static_cast<int>(t.children().size()) != a.operations()[op].arity)
    throw AlgebraError("arity mismatch for " + t.op());
  std::vector<int> args;
  args.reserve(t.children().size());
  for (const Term& c : t.children()) args.push_back(eval_term(a, c, env));
  return a.apply(op, args);
}

std::vector<int> term_table(const FiniteAlgebra& a, const Term& t) {
  const int k = t.arity(), n = a.size();
  std::vector<int> table(static_cast<size_t>(ipow(n, k)));
  std::vector<int> env(k, 0);
  for (size_t idx = 0; idx < table.size(); ++idx) {
    size_t rest = idx;
    for (int j = k - 1; j >= 0; --j) {
      env[j] = static_cast<int>(rest % n);
      rest /= n;
    }
    table[idx] = eval_term(a, t, env);
  }
  return table;
}

std::vector<int> subuniverse_closure(const FiniteAlgebra& a,
                                     std::span<const int> seed) {
  if (seed.empty()) throw AlgebraError("closure of empty seed");
  std::vector<char> in(a.size(), 0);
  std::vector<int> elems;
  for (int e : seed) {
    if (e < 0 || e >= a.size()) throw AlgebraError("seed element out of range");
    if (!in[e]) {
      in[e] = 1;
      elems.push_back(e);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t oi = 0; oi < a.operations().size(); ++oi) {
      const int k = a.operations()[oi].arity;
      std::vector<int> pick(k, 0), args(k);
      const int m = static_cast<int>(elems.size());
      if (k == 0) {
        int v = a.apply(static_cast<int>(oi), {});
        if (!in[v]) {
          in[v] = 1;
          elems.push_back(v);
          changed = true;
        }
        continue;
      }
      bool done = false;
      while (!done) {
        for (int j = 0; j < k; ++j) args[j] = elems[pick[j]];
        int v = a.apply(static_cast<int>(oi), args);
        if (!in[v]) {
          in[v] = 1;
          elems.push_back(v);
          changed = true;
        }
        int j = k - 1;
        while (j >= 0 && ++pick[j] == m) pick[j--] = 0;
        done = j < 0;
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool is_subuniverse(const FiniteAlgebra& a, std::span<const int> elements) {
  if (elements.empty()) return false;
  std::vector<int> v(elements.begin(), elements.end());
  std::sort(v.begin(), v.end());
  return subuniverse_closure(a, v) == v;
}

std::vector<std::vector<int>> all_subuniverses(const FiniteAlgebra& a,
                                               int max_size) {
  if (a.size() > max_size)
    throw AlgebraError("all_subuniverses: size bound exceeded");
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> work;
  for (int e = 0; e < a.size(); ++e) {
    std::vector<int> seed = {e};
    auto cl = subuniverse_closure(a, seed);
    if (found.insert(cl).second) work.push_back(cl);
  }
  // Every subuniverse arises from a smaller one by adjoining a generator.
  for (size_t i = 0; i < work.size(); ++i) {
    std::vector<int> base = work[i];
    for (int e = 0; e < a.size(); ++e) {
      if (std::binary_search(base.begin(), base.end(), e)) continue;
      std::vector<int> seed = base;
      seed.push_back(e);
      auto cl = subuniverse_closure(a, seed);
      if (found.insert(cl).second) work.push_back(cl);
    }
  }
  std::vector<std::vector<int>> result(found.begin(), found.end());
  std::sort(result.begin(), result.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return result;
}

int encode_tuple(std::span<const int> tuple, std::span<const int> sizes) {
  int code = 0;
  for (size_t i = 0; i < tuple.size(); ++i) code = code * sizes[i] + tuple[i];
  return code;
}

std::vector<int> decode_tuple(int code, std::span<const int> sizes) {
  std::vector<int> t(sizes.size());
  for (size_t i = sizes.size(); i-- > 0;) {
    t[i] = code % sizes[i];
    code /= sizes[i];
  }
  return t;
}

FiniteAlgebra product_algebra(const std::vector<const FiniteAlgebra*>& factors) {
  if (factors.empty()) throw AlgebraError("empty product");
  for (const FiniteAlgebra* f : factors)
    if (!factors[0]->same_type(*f)) throw AlgebraError("type mismatch");
  std::vector<int> sizes;
  long long total = 1;
  for (const FiniteAlgebra* f : factors) {
    sizes.push_back(f->size());
    total *= f->size();
    if (total > (1 << 20)) throw AlgebraError("product too large");
  }
  const int n = static_cast<int>(total);
  std::vector<Operation> ops;
  for (size_t oi = 0; oi < factors[0]->operations().size(); ++oi) {
    const Operation& proto = factors[0]->operations()[oi];
    Operation op{proto.name, proto.arity, {}};
    op.table.resize(static_cast<size_t>(ipow(n, op.arity)));
    std::vector<std::vector<int>> args(op.arity);
    std::vector<int> slot(op.arity), res(factors.size());
    for (size_t idx = 0; idx < op.table.size(); ++idx) {
      size_t rest = idx;
      for (int j = op.arity - 1; j >= 0; --j) {
        args[j] = decode_tuple(static_cast<int>(rest % n), sizes);
        rest /= n;
      }
      for (size_t c = 0; c < factors.size(); ++c) {
        for (int j = 0; j < op.arity; ++j) slot[j] = args[j][c];
        res[c] = factors[c]->apply(static_cast<int>(oi), slot);
      }
      op.table[idx] = encode_tuple(res, sizes);
    }
    ops.push_back(std::move(op));
  }
  return FiniteAlgebra(n, std::move(ops));
}

FiniteAlgebra restrict_algebra(const FiniteAlgebra& a,
                               std::span<const int> elements) {
  std::vector<int> elems(elements.begin(), elements.end());
  std::sort(elems.begin(), elems.end());
  if (subuniverse_closure(a, elems) != elems)
    throw AlgebraError("restriction to a non-closed set");
  std::vector<int> index(a.size(), -1);
  for (size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  const int n = static_cast<int>(elems.size());
  std::vector<Operation> ops;
  for (size_t oi = 0; oi < a.operations().size(); ++oi) {
    const Operation& proto = a.operations()[oi];
    Operation op{proto.name, proto.arity, {}};
    op.table.resize(static_cast<size_t>(ipow(n, op.arity)));
    std::vector<int> args(op.arity);
    for (size_t idx = 0; idx < op.table.size(); ++idx) {
      size_t rest = idx;
      for (int j = op.arity - 1; j >= 0; --j) {
        args[j] = elems[rest % n];
        rest /= n;
      }
      op.table[idx] = index[a.apply(static_cast<int>(oi), args)];
    }
    ops.push_back(std::move(op));
  }
  return FiniteAlgebra(n, std::move(ops));
}

std::optional<std::vector<int>> find_isomorphism(const FiniteAlgebra& a,
                                                 const FiniteAlgebra& b,
                                                 int max_size) {
  if (a.size() != b.size() || !a.same_type(b)) return std::nullopt;
  if (a.size() > max_size)
    throw AlgebraError("find_isomorphism: size bound exceeded");
  const int n = a.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (size_t oi = 0; oi < a.operations().size() && ok; ++oi) {
      const Operation& fa = a.operations()[oi];
      std::vector<int> args(fa.arity), mapped(fa.arity);
      const size_t count = fa.table.size();
      for (size_t idx = 0; idx < count && ok; ++idx) {
        size_t rest = idx;
        for (int j = fa.arity - 1; j >= 0; --j) {
          args[j] = static_cast<int>(rest % n);
          rest /= n;
        }
        for (int j = 0; j < fa.arity; ++j) mapped[j] = perm[args[j]];
        if (perm[fa.table[idx]] != b.apply(static_cast<int>(oi), mapped))
          ok = false;
      }
    }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::vector<int> canonical_form(const FiniteAlgebra& a) {
  const int n = a.size();
  std::vector<int> perm(n), inv(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  do {
    for (int i = 0; i < n; ++i) inv[perm[i]] = i;
    std::vector<int> flat;
    for (size_t oi = 0; oi < a.operations().size(); ++oi) {
      const Operation& op = a.operations()[oi];
      std::vector<int> args(op.arity);
      for (size_t idx = 0; idx < op.table.size(); ++idx) {
        size_t rest = idx;
        for (int j = op.arity - 1; j >= 0; --j) {
          args[j] = inv[rest % n];  // preimage under perm
          rest /= n;
        }
        flat.push_back(perm[a.apply(static_cast<int>(oi), args)]);
      }
    }
    if (best.empty() || flat < best) best = std::move(flat);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

// Lex comparison of table against its relabeling by perm, entry by entry.
bool binar_table_is_canonical(const std::vector<int>& flat, int n,
                              const std::vector<std::vector<int>>& perms) {
  for (const auto& p : perms) {
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[p[i]] = i;
    for (int idx = 0; idx < n * n; ++idx) {
      const int x = inv[idx / n], y = inv[idx % n];
      const int v = p[flat[x * n + y]];
      if (v != flat[idx]) {
        if (v < flat[idx]) return false;  // relabeling is smaller
        break;                            // larger; next permutation
      }
    }
  }
  return true;
}

}  // namespace

std::vector<FiniteAlgebra> enumerate_cibs(int n) {
  if (n < 1 || n > 5) throw AlgebraError("enumerate_cibs: n must be 1..5");
  std::vector<std::vector<int>> perms;
  {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    while (std::next_permutation(p.begin(), p.end())) perms.push_back(p);
  }
  // Free entries: the n(n-1)/2 cells above the diagonal.
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cells.emplace_back(i, j);
  const int m = static_cast<int>(cells.size());
  std::vector<int> choice(m, 0);
  std::vector<int> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) flat[i * n + i] = i;
  std::vector<FiniteAlgebra> out;
  bool done = false;
  while (!done) {
    for (int c = 0; c < m; ++c) {
      auto [i, j] = cells[c];
      flat[i * n + j] = flat[j * n + i] = choice[c];
    }
    if (binar_table_is_canonical(flat, n, perms)) {
      Operation op{"mul", 2, flat};
      out.emplace_back(n, std::vector<Operation>{std::move(op)});
    }
    int c = m - 1;
    while (c >= 0 && ++choice[c] == n) choice[c--] = 0;
    done = c < 0;
  }
  // Ascending table enumeration already yields canonical order.
  return out;
}

bool is_semilattice(const FiniteAlgebra& a) {
  if (!a.is_binar()) throw AlgebraError("is_semilattice: not a binar");
  if (!a.is_cib()) return false;
  const int n = a.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (a.mul(a.mul(x, y), z) != a.mul(x, a.mul(y, z))) return false;
  return true;
}

}  // namespace algcsp

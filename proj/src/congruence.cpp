#include "algcsp/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace algcsp {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);  // keep least element as root
    parent[y] = x;
    return true;
  }
};

std::vector<int> canonical_ids(UnionFind& uf) {
  std::vector<int> ids(uf.parent.size());
  for (size_t x = 0; x < ids.size(); ++x) ids[x] = uf.find(static_cast<int>(x));
  return ids;
}

// All unary maps x -> f(c_0,...,x,...,c_{k-1}) over basic operations,
// one slice per (operation, coordinate, constant tuple).
std::vector<std::vector<int>> basic_translations(const FiniteAlgebra& a) {
  const int n = a.size();
  std::vector<std::vector<int>> maps;
  for (size_t oi = 0; oi < a.operations().size(); ++oi) {
    const int k = a.operations()[oi].arity;
    if (k == 0) continue;
    std::vector<int> consts(k - 1, 0), args(k);
    for (int pos = 0; pos < k; ++pos) {
      std::fill(consts.begin(), consts.end(), 0);
      bool done = false;
      while (!done) {
        std::vector<int> m(n);
        for (int x = 0; x < n; ++x) {
          int ci = 0;
          for (int j = 0; j < k; ++j)
            args[j] = (j == pos) ? x : consts[ci++];
          m[x] = a.apply(static_cast<int>(oi), args);
        }
        maps.push_back(std::move(m));
        int j = k - 2;
        while (j >= 0 && ++consts[j] == n) consts[j--] = 0;
        done = j < 0 || k == 1;
      }
    }
  }
  return maps;
}

}  // namespace

Congruence Congruence::zero(int n) {
  Congruence c;
  c.block_.resize(n);
  std::iota(c.block_.begin(), c.block_.end(), 0);
  return c;
}

Congruence Congruence::one(int n) {
  Congruence c;
  c.block_.assign(n, 0);
  return c;
}

Congruence Congruence::from_block_ids(std::vector<int> ids) {
  const int n = static_cast<int>(ids.size());
  std::map<int, int> least;
  for (int x = 0; x < n; ++x)
    if (!least.count(ids[x])) least[ids[x]] = x;
  Congruence c;
  c.block_.resize(n);
  for (int x = 0; x < n; ++x) c.block_[x] = least[ids[x]];
  return c;
}

Congruence Congruence::from_pairs(int n,
                                  std::span<const std::pair<int, int>> pairs) {
  UnionFind uf(n);
  for (auto [x, y] : pairs) uf.unite(x, y);
  Congruence c;
  c.block_ = canonical_ids(uf);
  return c;
}

int Congruence::num_blocks() const {
  std::set<int> ids(block_.begin(), block_.end());
  return static_cast<int>(ids.size());
}

std::vector<std::vector<int>> Congruence::blocks() const {
  std::map<int, std::vector<int>> by_id;
  for (int x = 0; x < size(); ++x) by_id[block_[x]].push_back(x);
  std::vector<std::vector<int>> out;
  out.reserve(by_id.size());
  for (auto& [id, elems] : by_id) out.push_back(std::move(elems));
  return out;
}

Congruence Congruence::meet(const Congruence& other) const {
  std::map<std::pair<int, int>, int> least;
  Congruence c;
  c.block_.resize(size());
  for (int x = 0; x < size(); ++x) {
    auto key = std::make_pair(block_[x], other.block_[x]);
    c.block_[x] = least.emplace(key, x).first->second;
  }
  return c;
}

Congruence Congruence::join(const Congruence& other) const {
  UnionFind uf(size());
  for (int x = 0; x < size(); ++x) {
    uf.unite(x, block_[x]);
    uf.unite(x, other.block_[x]);
  }
  Congruence c;
  c.block_ = canonical_ids(uf);
  return c;
}

bool Congruence::leq(const Congruence& other) const {
  for (int x = 0; x < size(); ++x)
    if (other.block_[x] != other.block_[block_[x]]) return false;
  return true;
}

bool is_congruence(const FiniteAlgebra& a, const Congruence& c) {
  if (c.size() != a.size()) return false;
  for (const auto& m : basic_translations(a))
    for (int x = 0; x < a.size(); ++x) {
      const int rep = c.block_id(x);
      if (rep != x && !c.related(m[x], m[rep])) return false;
    }
  return true;
}

Congruence generated_congruence(const FiniteAlgebra& a,
                                std::span<const std::pair<int, int>> pairs) {
  const auto maps = basic_translations(a);
  UnionFind uf(a.size());
  std::vector<std::pair<int, int>> work(pairs.begin(), pairs.end());
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (!uf.unite(x, y)) continue;
    for (const auto& m : maps) work.emplace_back(m[x], m[y]);
  }
  Congruence c;
  c.block_ = canonical_ids(uf);
  return c;
}

Congruence principal_congruence(const FiniteAlgebra& alg, int a, int b) {
  if (a < 0 || a >= alg.size() || b < 0 || b >= alg.size())
    throw AlgebraError("principal_congruence: element out of range");
  std::pair<int, int> p{a, b};
  return generated_congruence(alg, std::span(&p, 1));
}

CongruenceLattice::CongruenceLattice(std::vector<Congruence> elements)
    : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()),
                  elements_.end());
  const int k = size();
  leq_.assign(k, std::vector<char>(k, 0));
  meet_.assign(k, std::vector<int>(k, -1));
  join_.assign(k, std::vector<int>(k, -1));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      leq_[i][j] = elements_[i].leq(elements_[j]);
      meet_[i][j] = index_of(elements_[i].meet(elements_[j]));
      join_[i][j] = index_of(elements_[i].join(elements_[j]));
      if (meet_[i][j] < 0 || join_[i][j] < 0)
        throw AlgebraError("congruence set not closed under meet/join");
    }
}

int CongruenceLattice::index_of(const Congruence& c) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), c);
  if (it == elements_.end() || !(*it == c)) return -1;
  return static_cast<int>(it - elements_.begin());
}

int CongruenceLattice::bottom() const {
  return index_of(Congruence::zero(elements_.empty() ? 0 : elements_[0].size()));
}

int CongruenceLattice::top() const {
  return index_of(Congruence::one(elements_.empty() ? 0 : elements_[0].size()));
}

CongruenceLattice congruence_lattice(const FiniteAlgebra& a, int max_size) {
  if (a.size() > max_size)
    throw AlgebraError("congruence_lattice: size bound exceeded");
  std::set<Congruence> found;
  found.insert(Congruence::zero(a.size()));
  std::vector<Congruence> work;
  for (int x = 0; x < a.size(); ++x)
    for (int y = x + 1; y < a.size(); ++y) {
      Congruence c = principal_congruence(a, x, y);
      if (found.insert(c).second) work.push_back(std::move(c));
    }
  // Every congruence is a join of principal ones.
  std::vector<Congruence> principals = work;
  for (size_t i = 0; i < work.size(); ++i)
    for (const Congruence& p : principals) {
      Congruence j = work[i].join(p);
      if (found.insert(j).second) work.push_back(std::move(j));
    }
  return CongruenceLattice(std::vector<Congruence>(found.begin(), found.end()));
}

bool is_simple(const FiniteAlgebra& a) {
  return congruence_lattice(a).size() == 2;
}

Congruence projection_kernel(const std::vector<std::vector<int>>& tuples,
                             std::span<const int> sigma) {
  if (sigma.empty()) throw AlgebraError("projection_kernel: empty scope");
  for (int j : sigma)
    if (!tuples.empty() &&
        (j < 0 || j >= static_cast<int>(tuples.front().size())))
      throw AlgebraError("projection_kernel: coordinate out of range");
  std::map<std::vector<int>, int> least;
  std::vector<int> ids(tuples.size());
  for (size_t i = 0; i < tuples.size(); ++i) {
    std::vector<int> key;
    key.reserve(sigma.size());
    for (int j : sigma) key.push_back(tuples[i][j]);
    ids[i] = least.emplace(std::move(key), static_cast<int>(i)).first->second;
  }
  return Congruence::from_block_ids(std::move(ids));
}

Congruence lift_congruence(const Congruence& theta, std::span<const int> sigma,
                           std::span<const int> factor_sizes) {
  std::vector<int> sub_sizes;
  long long sub_total = 1, total = 1;
  for (int j : sigma) {
    if (j < 0 || j >= static_cast<int>(factor_sizes.size()))
      throw AlgebraError("lift_congruence: coordinate out of range");
    sub_sizes.push_back(factor_sizes[j]);
    sub_total *= factor_sizes[j];
  }
  for (int s : factor_sizes) total *= s;
  if (theta.size() != sub_total)
    throw AlgebraError("lift_congruence: dimension mismatch");
  std::vector<int> ids(static_cast<size_t>(total));
  std::vector<int> sub(sigma.size());
  std::map<int, int> least;
  for (int code = 0; code < total; ++code) {
    std::vector<int> t = decode_tuple(code, factor_sizes);
    for (size_t i = 0; i < sigma.size(); ++i) sub[i] = t[sigma[i]];
    const int cls = theta.block_id(encode_tuple(sub, sub_sizes));
    ids[code] = least.emplace(cls, code).first->second;
  }
  return Congruence::from_block_ids(std::move(ids));
}

bool is_linked(const FiniteAlgebra& a0, const FiniteAlgebra& a1,
               const std::vector<std::vector<int>>& tuples) {
  std::set<int> p0, p1;
  for (const auto& t : tuples) {
    p0.insert(t[0]);
    p1.insert(t[1]);
  }
  if (static_cast<int>(p0.size()) != a0.size() ||
      static_cast<int>(p1.size()) != a1.size())
    throw AlgebraError("is_linked: relation is not subdirect");
  const int s0[] = {0}, s1[] = {1};
  Congruence eta0 = projection_kernel(tuples, s0);
  Congruence eta1 = projection_kernel(tuples, s1);
  return eta0.join(eta1) == Congruence::one(static_cast<int>(tuples.size()));
}

bool is_meet_semidistributive(const CongruenceLattice& lattice) {
  const int k = lattice.size();
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      for (int z = 0; z < k; ++z) {
        if (lattice.meet(x, y) != lattice.meet(x, z)) continue;
        if (lattice.meet(x, y) != lattice.meet(x, lattice.join(y, z)))
          return false;
      }
  return true;
}

std::optional<Congruence> malcev_product_witness(
    const FiniteAlgebra& a, const AlgebraPredicate& class_pred,
    const AlgebraPredicate& quotient_pred) {
  for (const Congruence& theta : congruence_lattice(a).elements()) {
    if (!quotient_pred(quotient_algebra(a, theta).algebra)) continue;
    bool ok = true;
    for (const auto& block : theta.blocks()) {
      if (!class_pred(restrict_algebra(a, block))) {
        ok = false;
        break;
      }
    }
    if (ok) return theta;
  }
  return std::nullopt;
}

QuotientAlgebra quotient_algebra(const FiniteAlgebra& a, const Congruence& c) {
  if (!is_congruence(a, c))
    throw AlgebraError("quotient_algebra: not a congruence");
  const auto blocks = c.blocks();  // ordered by least member
  const int n = static_cast<int>(blocks.size());
  std::vector<int> block_of(a.size());
  for (int b = 0; b < n; ++b)
    for (int e : blocks[b]) block_of[e] = b;
  std::vector<Operation> ops;
  for (size_t oi = 0; oi < a.operations().size(); ++oi) {
    const Operation& proto = a.operations()[oi];
    Operation op{proto.name, proto.arity, {}};
    long long count = 1;
    for (int j = 0; j < op.arity; ++j) count *= n;
    op.table.resize(static_cast<size_t>(count));
    std::vector<int> args(op.arity);
    for (size_t idx = 0; idx < op.table.size(); ++idx) {
      size_t rest = idx;
      for (int j = op.arity - 1; j >= 0; --j) {
        args[j] = blocks[rest % n][0];  // least representative
        rest /= n;
      }
      op.table[idx] = block_of[a.apply(static_cast<int>(oi), args)];
    }
    ops.push_back(std::move(op));
  }
  return {FiniteAlgebra(n, std::move(ops)), std::move(block_of)};
}

}  // namespace algcsp

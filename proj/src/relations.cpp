#include "cds/relations.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "cds/closure.hpp"
#include "cds/error.hpp"

namespace cds {

namespace {

void require_same_size(const BinRel& r, const BinRel& s, const char* op) {
  if (r.size() != s.size()) throw InputError(std::string(op) + ": relation size mismatch");
}

}  // namespace

BinRel BinRel::diagonal(std::size_t n) {
  BinRel r(n);
  for (std::size_t a = 0; a < n; ++a) r.set(a, a);
  return r;
}

BinRel BinRel::full(std::size_t n) {
  BinRel r(n);
  for (auto& row : r.rows_) row.set_all();
  return r;
}

BinRel BinRel::from_pairs(std::size_t n, const std::vector<Pair>& pairs) {
  BinRel r(n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw InputError("relation pair out of range");
    r.set(a, b);
  }
  return r;
}

std::size_t BinRel::count() const {
  std::size_t c = 0;
  for (const auto& row : rows_) c += row.count();
  return c;
}

std::vector<Pair> BinRel::pairs() const {
  std::vector<Pair> out;
  for (std::size_t a = 0; a < n_; ++a)
    rows_[a].for_each([&](std::size_t b) {
      out.emplace_back(static_cast<Element>(a), static_cast<Element>(b));
    });
  return out;
}

Bitset BinRel::image(const Bitset& s) const {
  Bitset out(n_);
  s.for_each([&](std::size_t a) { out |= rows_[a]; });
  return out;
}

bool BinRel::is_reflexive() const {
  for (std::size_t a = 0; a < n_; ++a)
    if (!test(a, a)) return false;
  return true;
}

bool BinRel::is_symmetric() const { return *this == converse(*this); }

bool BinRel::is_transitive() const { return compose(*this, *this).is_subset_of(*this); }

bool BinRel::is_admissible(const FiniteAlgebra& alg) const {
  if (alg.size() != n_) throw InputError("is_admissible: size mismatch");
  auto ps = pairs();
  for (std::size_t op = 0; op < alg.signature().size(); ++op) {
    const std::size_t r = alg.signature()[op].arity;
    if (r == 0) {
      Element c = alg.table(op)[0];
      if (!test(c, c)) return false;
      continue;
    }
    if (ps.empty()) return false;
    std::vector<std::size_t> idx(r, 0);
    std::vector<Element> xs(r), ys(r);
    for (;;) {
      for (std::size_t i = 0; i < r; ++i) {
        xs[i] = ps[idx[i]].first;
        ys[i] = ps[idx[i]].second;
      }
      if (!test(alg.apply(op, xs), alg.apply(op, ys))) return false;
      std::size_t i = r;
      while (i > 0 && ++idx[i - 1] == ps.size()) idx[--i] = 0;
      if (i == 0) break;
    }
  }
  return true;
}

bool BinRel::is_subset_of(const BinRel& o) const {
  require_same_size(*this, o, "subset");
  for (std::size_t a = 0; a < n_; ++a)
    if (!rows_[a].is_subset_of(o.rows_[a])) return false;
  return true;
}

std::string BinRel::to_string() const {
  std::string out;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) out += test(a, b) ? '1' : '0';
    out += '\n';
  }
  return out;
}

BinRel compose(const BinRel& r, const BinRel& s) {
  require_same_size(r, s, "compose");
  BinRel out(r.size());
  for (std::size_t a = 0; a < r.size(); ++a) out.row(a) = s.image(r.row(a));
  return out;
}

BinRel converse(const BinRel& r) {
  BinRel out(r.size());
  for (std::size_t a = 0; a < r.size(); ++a) r.row(a).for_each([&](std::size_t b) { out.set(b, a); });
  return out;
}

BinRel meet(const BinRel& r, const BinRel& s) {
  require_same_size(r, s, "meet");
  BinRel out = r;
  for (std::size_t a = 0; a < r.size(); ++a) out.row(a) &= s.row(a);
  return out;
}

BinRel join(const BinRel& r, const BinRel& s) {
  require_same_size(r, s, "join");
  BinRel out = r;
  for (std::size_t a = 0; a < r.size(); ++a) out.row(a) |= s.row(a);
  return out;
}

BinRel transitive_closure(const BinRel& r) {
  // Warshall on bit rows.
  BinRel out = r;
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      if (out.test(a, k)) out.row(a) |= Bitset(out.row(k));
  return out;
}

BinRel compose_alt(const BinRel& r, const BinRel& s, std::size_t m) {
  require_same_size(r, s, "compose_alt");
  BinRel out = BinRel::diagonal(r.size());
  for (std::size_t i = 0; i < m; ++i) out = compose(out, i % 2 == 0 ? r : s);
  return out;
}

// ---------------------------------------------------------------------------

Congruence::Congruence(const std::vector<std::size_t>& labels) {
  const std::size_t n = labels.size();
  block_.assign(n, 0);
  std::unordered_map<std::size_t, std::size_t> ids;
  ids.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto [it, inserted] = ids.emplace(labels[a], members_.size());
    if (inserted) members_.emplace_back();
    block_[a] = it->second;
    members_[it->second].push_back(a);
  }
}

Congruence Congruence::identity(std::size_t n) {
  std::vector<std::size_t> l(n);
  std::iota(l.begin(), l.end(), 0);
  return Congruence(l);
}

Congruence Congruence::full(std::size_t n) { return Congruence(std::vector<std::size_t>(n, 0)); }

Congruence Congruence::from_relation(const BinRel& r) {
  if (!r.is_equivalence()) throw InputError("relation is not an equivalence");
  std::vector<std::size_t> labels(r.size());
  for (std::size_t a = 0; a < r.size(); ++a) {
    std::size_t least = a;
    for (std::size_t b = 0; b < a; ++b)
      if (r.test(a, b)) {
        least = b;
        break;
      }
    labels[a] = least;
  }
  return Congruence(labels);
}

BinRel Congruence::to_relation() const {
  BinRel r(size());
  for (const auto& m : members_)
    for (auto a : m)
      for (auto b : m) r.set(a, b);
  return r;
}

Bitset Congruence::image(const Bitset& s) const {
  Bitset out(size());
  std::vector<char> hit(members_.size(), 0);
  s.for_each([&](std::size_t a) {
    std::size_t b = block_[a];
    if (hit[b]) return;
    hit[b] = 1;
    for (auto x : members_[b]) out.set(x);
  });
  return out;
}

bool Congruence::is_admissible(const FiniteAlgebra& a) const {
  return to_relation().is_admissible(a);
}

std::string Congruence::to_string() const {
  std::string out = "{";
  for (std::size_t b = 0; b < members_.size(); ++b) {
    if (b) out += ',';
    out += '{';
    for (std::size_t i = 0; i < members_[b].size(); ++i) {
      if (i) out += ',';
      out += std::to_string(members_[b][i]);
    }
    out += '}';
  }
  out += '}';
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> labels() {
    std::vector<std::size_t> l(parent.size());
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = find(i);
    return l;
  }
};

}  // namespace

Congruence meet(const Congruence& a, const Congruence& b) {
  if (a.size() != b.size()) throw InputError("meet: congruence size mismatch");
  std::vector<std::size_t> labels(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) labels[x] = a.block(x) * b.size() + b.block(x);
  return Congruence(labels);
}

Congruence join(const Congruence& a, const Congruence& b) {
  if (a.size() != b.size()) throw InputError("join: congruence size mismatch");
  UnionFind uf(a.size());
  for (const auto* c : {&a, &b})
    for (std::size_t blk = 0; blk < c->block_count(); ++blk) {
      const auto& m = c->members(blk);
      for (std::size_t i = 1; i < m.size(); ++i) uf.unite(m[0], m[i]);
    }
  return Congruence(uf.labels());
}

// ---------------------------------------------------------------------------

BinRel admissible_closure(const FiniteAlgebra& a, const std::vector<Pair>& pairs) {
  const std::size_t n = a.size();
  Closure closure(a.signature(), {&a, &a});
  for (Element x = 0; x < n; ++x) {
    Element t[2] = {x, x};
    closure.add_seed(t);
  }
  for (auto [x, y] : pairs) {
    Element t[2] = {x, y};
    closure.add_seed(t);
  }
  closure.run();
  BinRel out(n);
  for (std::size_t i = 0; i < closure.size(); ++i) {
    auto t = closure.tuple(i);
    out.set(t[0], t[1]);
  }
  return out;
}

BinRel tolerance_generate(const FiniteAlgebra& a, const std::vector<Pair>& pairs) {
  std::vector<Pair> both = pairs;
  for (auto [x, y] : pairs) both.emplace_back(y, x);
  return admissible_closure(a, both);
}

Congruence congruence_generate(const FiniteAlgebra& a, const std::vector<Pair>& pairs) {
  BinRel current = join(BinRel::diagonal(a.size()), BinRel::from_pairs(a.size(), pairs));
  for (;;) {
    BinRel adm = admissible_closure(a, current.pairs());
    BinRel eq = transitive_closure(join(adm, converse(adm)));
    if (eq == current) break;
    current = std::move(eq);
  }
  return Congruence::from_relation(current);
}

std::vector<Congruence> all_congruences(const FiniteAlgebra& a, std::size_t cap) {
  const std::size_t n = a.size();
  if (n > cap)
    throw CapExceeded("all_congruences: universe of " + std::to_string(n) +
                          " elements exceeds cap " + std::to_string(cap),
                      0);
  std::set<Congruence> found;
  found.insert(Congruence::identity(n));
  std::vector<Congruence> principal;
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y) {
      Congruence c = congruence_generate(a, {{x, y}});
      if (found.insert(c).second) principal.push_back(c);
    }
  // Close under joins with principal congruences; every congruence is a join
  // of principal ones.
  std::vector<Congruence> work(found.begin(), found.end());
  for (std::size_t i = 0; i < work.size(); ++i)
    for (const auto& p : principal) {
      Congruence j = join(work[i], p);
      if (found.insert(j).second) work.push_back(j);
    }
  std::vector<Congruence> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const Congruence& x, const Congruence& y) {
    if (x.block_count() != y.block_count()) return x.block_count() > y.block_count();
    return x < y;
  });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Pair> off_diagonal(std::size_t n) {
  std::vector<Pair> out;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (x != y) out.emplace_back(x, y);
  return out;
}

// Calls f(subset) for every subset of `items` of size <= k, by size then
// lexicographically.
template <class F>
void for_each_subset(const std::vector<Pair>& items, std::size_t k, F&& f) {
  std::vector<Pair> chosen;
  for (std::size_t size = 0; size <= std::min(k, items.size()); ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      chosen.clear();
      for (auto i : idx) chosen.push_back(items[i]);
      f(chosen);
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == items.size() - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

struct OrderedFamily {
  std::vector<BinRel> items;
  std::set<BinRel> seen;
  void add(BinRel r) {
    if (seen.insert(r).second) items.push_back(std::move(r));
  }
};

}  // namespace

std::vector<BinRel> reflexive_admissible_by_budget(const FiniteAlgebra& a, std::size_t budget) {
  OrderedFamily fam;
  for_each_subset(off_diagonal(a.size()), budget,
                  [&](const std::vector<Pair>& ps) { fam.add(admissible_closure(a, ps)); });
  return fam.items;
}

std::vector<BinRel> reflexive_admissible_exhaustive(const FiniteAlgebra& a) {
  const std::size_t n = a.size();
  if (n > kExhaustiveRelationLimit)
    throw CapExceeded("exhaustive relation enumeration limited to " +
                          std::to_string(kExhaustiveRelationLimit) + " elements",
                      0);
  auto off = off_diagonal(n);
  std::vector<BinRel> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << off.size()); ++mask) {
    BinRel r = BinRel::diagonal(n);
    for (std::size_t i = 0; i < off.size(); ++i)
      if (mask >> i & 1) r.set(off[i].first, off[i].second);
    if (r.is_admissible(a)) out.push_back(std::move(r));
  }
  return out;
}

RelationFamily enumerate_reflexive_admissible(const FiniteAlgebra& a, std::size_t budget) {
  OrderedFamily fam;
  for (auto& r : reflexive_admissible_by_budget(a, budget)) fam.add(std::move(r));
  bool exhaustive = a.size() <= kExhaustiveRelationLimit;
  if (exhaustive)
    for (auto& r : reflexive_admissible_exhaustive(a)) fam.add(std::move(r));
  if (a.size() <= kDefaultCongruenceCap)
    for (const auto& c : all_congruences(a)) fam.add(c.to_relation());
  return {std::move(fam.items), exhaustive, budget};
}

RelationFamily enumerate_tolerances(const FiniteAlgebra& a, std::size_t budget) {
  auto base = enumerate_reflexive_admissible(a, budget);
  OrderedFamily fam;
  for (auto& r : base.relations)
    if (r.is_symmetric()) fam.add(std::move(r));
  for_each_subset(off_diagonal(a.size()), budget,
                  [&](const std::vector<Pair>& ps) { fam.add(tolerance_generate(a, ps)); });
  return {std::move(fam.items), base.exhaustive, budget};
}

}  // namespace cds

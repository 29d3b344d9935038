#include "cds/conditions.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "cds/error.hpp"

namespace cds {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::J: return "J";
    case Variant::JConv: return "JConv";
    case Variant::Jr: return "Jr";
    case Variant::JrConv: return "JrConv";
    case Variant::D: return "D";
    case Variant::T: return "T";
    case Variant::DayLevel: return "DayLevel";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Value: return "value";
    case Outcome::Exceeded: return "exceeded";
    case Outcome::CapExceeded: return "cap-exceeded";
  }
  return "?";
}

std::string to_string(TermScheme s) {
  switch (s) {
    case TermScheme::Jonsson: return "jonsson";
    case TermScheme::Directed: return "directed";
    case TermScheme::Gumm: return "gumm";
    case TermScheme::PJ: return "pj";
  }
  return "?";
}

std::string to_string(AlphaKind k) { return k == AlphaKind::Congruence ? "congruence" : "tolerance"; }

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Holds: return "holds";
    case CheckStatus::HoldsWithinBudget: return "holds-within-budget";
    case CheckStatus::Fails: return "fails";
    case CheckStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Schemes and their generator instantiation

Instantiation instantiate(const InclusionScheme& s) {
  Instantiation inst;
  inst.generators = s.chain.size() + 1;
  std::set<char> vars{s.alpha};
  for (const auto& c : s.chain) vars.insert(c.begin(), c.end());
  for (char v : vars) {
    std::vector<std::size_t> parent(inst.generators);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
      return parent[i] == i ? i : parent[i] = root(parent[i]);
    };
    auto unite = [&](std::size_t a, std::size_t b) {
      a = root(a);
      b = root(b);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    for (std::size_t i = 1; i <= s.chain.size(); ++i)
      if (s.chain[i - 1].count(v)) unite(i - 1, i);
    if (v == s.alpha) unite(0, inst.generators - 1);
    GeneratorPartition p(inst.generators);
    for (std::size_t g = 0; g < inst.generators; ++g) p[g] = root(g);
    inst.partitions.emplace(v, std::move(p));
  }
  return inst;
}

namespace {

const Expr kA = Expr::var('a');
const Expr kB = Expr::var('b');
const Expr kC = Expr::var('c');

std::vector<std::set<char>> alternating_chain(std::size_t m, std::set<char> odd,
                                              std::set<char> even) {
  std::vector<std::set<char>> chain;
  for (std::size_t i = 1; i <= m; ++i) chain.push_back(i % 2 ? odd : even);
  return chain;
}

}  // namespace

InclusionScheme dist_scheme(std::size_t m, std::size_t k, bool converse) {
  InclusionScheme s;
  s.alpha = 'a';
  s.chain = alternating_chain(m + 1, {'b'}, {'c'});
  s.rhs = converse ? alternating(kA ^ kC, kA ^ kB, k + 1) : alternating(kA ^ kB, kA ^ kC, k + 1);
  return s;
}

InclusionScheme day_scheme(std::size_t m, std::size_t k) {
  InclusionScheme s;
  s.alpha = 'a';
  s.chain = alternating_chain(m, {'b'}, {'a', 'c'});
  s.rhs = alternating(kA ^ kB, kA ^ kC, k);
  return s;
}

InclusionScheme tschantz_scheme(std::size_t m, std::size_t k) {
  InclusionScheme s;
  s.alpha = 'a';
  s.chain = alternating_chain(m, {'b'}, {'c'});
  s.rhs = Expr::compose({kA ^ (kC * kB), alternating(kA ^ kC, kA ^ kB, k)});
  return s;
}

// ---------------------------------------------------------------------------
// Lazy evaluation on restricted free algebras

namespace {

std::vector<GeneratorPartition> relevant_partitions(const Instantiation& inst) {
  std::vector<GeneratorPartition> out;
  bool merged = true;
  for (const auto& [v, p] : inst.partitions) {
    out.push_back(p);
    merged = merged && p.front() == p.back();
  }
  // Keep x0 and the last generator apart, so the diagonal is decided exactly.
  if (merged && inst.generators > 1) {
    GeneratorPartition discrete(inst.generators);
    for (std::size_t g = 0; g < inst.generators; ++g) discrete[g] = g;
    out.push_back(discrete);
  }
  return out;
}

RelEnv kernel_env(const FreeAlgebra& f, const Instantiation& inst) {
  RelEnv env;
  for (const auto& [v, p] : inst.partitions) env.emplace(v, RelValue(f.generator_kernel(p)));
  return env;
}

std::size_t least_member(const Bitset& s) {
  std::size_t least = s.size();
  s.for_each([&](std::size_t u) { least = std::min(least, u); });
  return least;
}

/// Right side prefix o (first o second o first ...), minimized over the
/// number of alternating factors k + offset.
struct Layered {
  InclusionScheme lhs;
  std::optional<Expr> prefix;
  Expr first;
  Expr second;
  std::size_t offset = 0;
};

struct LayeredRun {
  std::shared_ptr<FreeAlgebra> algebra;
  std::optional<std::size_t> k;
  std::optional<std::size_t> upper_bound;
  std::vector<std::size_t> chain;
  std::vector<std::string> labels;
  bool cap = false;
  std::string cap_note;
};

/// Least k <= k_max (or success at any k <= `accept` when given) on the
/// lazily generated restricted free algebra. A success on a partial closure
/// is sound; a failure needs the complete closure, except at k = 0 without a
/// prefix.
LayeredRun run_layered(const std::vector<FiniteAlgebra>& bases, const Layered& q,
                       std::size_t k_max, std::optional<std::size_t> accept,
                       FreeAlgebraCaps caps) {
  Instantiation inst = instantiate(q.lhs);
  LayeredRun run;
  run.algebra =
      std::make_shared<FreeAlgebra>(bases, inst.generators, relevant_partitions(inst), caps);
  FreeAlgebra& f = *run.algebra;
  const std::size_t depth = (accept ? *accept : k_max) + q.offset;

  std::vector<Bitset> layers;
  RelEnv env;
  auto compute = [&]() -> std::optional<std::size_t> {
    env = kernel_env(f, inst);
    const std::size_t n = f.size();
    const std::size_t target = f.generator(inst.generators - 1);
    layers.clear();
    Bitset start(n);
    start.set(f.generator(0));
    layers.push_back(q.prefix ? image(*q.prefix, env, start) : start);
    for (std::size_t j = 0;; ++j) {
      if (layers[j].test(target)) return j <= q.offset ? 0 : j - q.offset;
      if (j == depth) return std::nullopt;
      layers.push_back(image(j % 2 == 0 ? q.first : q.second, env, layers[j]));
    }
  };

  std::optional<std::size_t> found;
  try {
    for (;;) {
      found = compute();
      if (found) run.upper_bound = found;
      // Without a prefix, k = 0 only compares generators, so it is exact early.
      const std::size_t floor = q.prefix ? 0 : 1;
      if (found && (*found <= floor || (accept && *found <= *accept))) break;
      if (f.is_complete()) break;
      f.step();
    }
  } catch (const CapExceeded& e) {
    run.cap = true;
    run.cap_note = e.what();
    found.reset();
  }
  if (!found) return run;
  run.k = found;

  // Backtrack through the layers, least element at each step.
  const std::size_t top = (accept ? *accept : *found) + q.offset;
  while (layers.size() <= top) {
    std::size_t j = layers.size() - 1;
    layers.push_back(image(j % 2 == 0 ? q.first : q.second, env, layers[j]));
  }
  const std::size_t n = f.size();
  std::vector<std::size_t> path(top + 1);
  path[top] = f.generator(inst.generators - 1);
  for (std::size_t i = top; i > 0; --i) {
    Bitset t(n);
    t.set(path[i]);
    Bitset pre = image((i - 1) % 2 == 0 ? q.first : q.second, env, t, true);
    pre &= layers[i - 1];
    path[i - 1] = least_member(pre);
    if (path[i - 1] == n) throw InternalError("witness backtracking failed");
  }
  if (q.prefix) {
    run.chain.push_back(f.generator(0));
    run.labels.push_back(q.prefix->to_string());
  }
  run.chain.insert(run.chain.end(), path.begin(), path.end());
  for (std::size_t i = 0; i < top; ++i)
    run.labels.push_back((i % 2 == 0 ? q.first : q.second).to_string());
  return run;
}

Layered dist_layered(std::size_t m, bool converse) {
  Layered q;
  q.lhs = dist_scheme(m, 0, converse);
  q.first = converse ? (kA ^ kC) : (kA ^ kB);
  q.second = converse ? (kA ^ kB) : (kA ^ kC);
  q.offset = 1;
  return q;
}

SpectrumResult spectrum_from(Variant v, std::size_t m, std::size_t k_max, LayeredRun& run) {
  SpectrumResult r;
  r.variant = v;
  r.m = m;
  r.k_max = k_max;
  r.free_size = run.algebra->size();
  r.free_complete = run.algebra->is_complete();
  if (run.cap) {
    r.outcome = Outcome::CapExceeded;
    r.upper_bound = run.upper_bound;
    r.note = run.cap_note;
    return r;
  }
  if (!run.k) {
    r.outcome = Outcome::Exceeded;
    return r;
  }
  r.outcome = Outcome::Value;
  r.value = run.k;
  Witness w;
  w.algebra = run.algebra;
  w.m = m;
  w.converse = v == Variant::JConv;
  w.chain = run.chain;
  w.labels = run.labels;
  r.witness = std::move(w);
  return r;
}

}  // namespace

std::optional<Witness> check_dist(const std::vector<FiniteAlgebra>& bases, std::size_t m,
                                  std::size_t k, bool converse, FreeAlgebraCaps caps) {
  LayeredRun run = run_layered(bases, dist_layered(m, converse), k, k, caps);
  if (run.cap) throw CapExceeded(run.cap_note, run.algebra->size());
  if (!run.k) return std::nullopt;
  Witness w;
  w.algebra = run.algebra;
  w.m = m;
  w.converse = converse;
  w.chain = std::move(run.chain);
  w.labels = std::move(run.labels);
  return w;
}

bool verify_dist_terms(const std::vector<FiniteAlgebra>& bases, std::size_t m, bool converse,
                       const std::vector<Term>& terms) {
  if (terms.size() < 2) return false;
  const std::size_t n = m + 2;
  std::vector<Term> ident, close, beta, gamma;
  for (std::size_t j = 0; j < n; ++j) {
    ident.push_back(Term::var(j));
    close.push_back(Term::var(j == n - 1 ? 0 : j));
    beta.push_back(Term::var(j % 2 == 1 ? j - 1 : j));
    gamma.push_back(Term::var(j % 2 == 0 && j > 0 ? j - 1 : j));
  }
  const Term x = Term::var(0);
  if (!holds_identity(bases, terms.front(), x, n)) return false;
  for (const auto& t : terms)
    if (!holds_identity(bases, substitute(t, close), x, n)) return false;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    const auto& sub = ((i % 2 == 0) != converse) ? beta : gamma;
    if (!holds_identity(bases, substitute(terms[i], sub), substitute(terms[i + 1], sub), n))
      return false;
  }
  return holds_identity(bases, terms.back(), Term::var(n - 1), n);
}

std::vector<Term> extract_chain_terms(const Witness& w) {
  const FreeAlgebra& f = *w.algebra;
  if (w.chain.size() < 2) throw InputError("witness chain needs at least two elements");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < w.chain.size(); ++i) {
    if (i == 0)
      terms.push_back(Term::var(0));
    else if (i + 1 == w.chain.size())
      terms.push_back(Term::var(f.generators() - 1));
    else
      terms.push_back(f.element_term(w.chain[i]));
  }
  if (!verify_dist_terms(f.bases(), w.m, w.converse, terms))
    throw InternalError("extracted chain terms fail their identities");
  return terms;
}

SpectrumResult jonsson_level(const std::vector<FiniteAlgebra>& bases, std::size_t m,
                             std::size_t k_max, bool converse, FreeAlgebraCaps caps) {
  LayeredRun run = run_layered(bases, dist_layered(m, converse), k_max, std::nullopt, caps);
  SpectrumResult r = spectrum_from(converse ? Variant::JConv : Variant::J, m, k_max, run);
  if (r.witness) r.terms = extract_chain_terms(*r.witness);
  if (m == 1 && !converse && r.outcome != Outcome::CapExceeded) {
    try {
      TermChain tc = find_terms(bases, TermScheme::Jonsson, k_max + 2, caps);
      bool agree = r.value ? tc.length == *r.value + 2 : (!tc.length || *tc.length > k_max + 2);
      if (!agree) throw InternalError("Jonsson level disagrees with the Jonsson term search");
    } catch (const CapExceeded& e) {
      r.note = std::string("term-search cross-check skipped: ") + e.what();
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Term chains in F(3)

namespace {

enum Pattern { XXZ = 0, XZZ = 1, XZX = 2 };

struct Shadows {
  std::vector<std::array<std::size_t, 3>> id;  // per element, per pattern
};

Shadows compute_shadows(const FreeAlgebra& f) {
  static const std::array<std::array<int, 3>, 3> pick{{{0, 0, 1}, {0, 1, 1}, {0, 1, 0}}};
  std::array<std::vector<std::size_t>, 3> positions;
  for (std::size_t b = 0; b < f.bases().size(); ++b) {
    const std::size_t n = f.bases()[b].size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < n; ++c)
        for (int p = 0; p < 3; ++p) {
          std::array<std::size_t, 2> v{a, c};
          std::size_t code = 0;
          for (int i = 0; i < 3; ++i) code = code * n + v[pick[p][i]];
          positions[p].push_back(*f.coordinate_index(b, code));
        }
  }
  std::map<std::vector<Element>, std::size_t> ids;
  Shadows s;
  s.id.resize(f.size());
  std::vector<Element> key;
  for (std::size_t e = 0; e < f.size(); ++e) {
    auto t = f.tuple(e);
    for (int p = 0; p < 3; ++p) {
      key.clear();
      for (auto i : positions[p]) key.push_back(t[i]);
      s.id[e][p] = ids.emplace(key, ids.size()).first->second;
    }
  }
  return s;
}

}  // namespace

TermChain find_terms(const std::vector<FiniteAlgebra>& bases, TermScheme scheme,
                     std::size_t max_len, FreeAlgebraCaps caps) {
  if (max_len < 2) throw InputError("find_terms: max_len must be at least 2");
  auto f = std::make_shared<FreeAlgebra>(FreeAlgebra::build(bases, 3, caps));
  const std::size_t n = f->size();
  const Shadows sh = compute_shadows(*f);
  const std::size_t x = f->generator(0), z = f->generator(2);
  const std::size_t proj = sh.id[x][XZZ];

  std::vector<bool> j2(n);
  for (std::size_t e = 0; e < n; ++e) j2[e] = sh.id[e][XZX] == proj;

  // Linking rule for an edge leaving an element at chain index of parity par:
  // source pattern and target pattern whose shadows must agree.
  const bool directed = scheme == TermScheme::Directed;
  auto rule = [&](std::size_t par) -> std::pair<Pattern, Pattern> {
    if (directed) return {XZZ, XXZ};
    return par == 0 ? std::pair{XXZ, XXZ} : std::pair{XZZ, XZZ};
  };
  std::map<std::pair<int, std::size_t>, std::vector<std::size_t>> by;
  for (std::size_t e = 0; e < n; ++e)
    if (j2[e])
      for (int p = 0; p < 3; ++p) by[{p, sh.id[e][p]}].push_back(e);
  auto group = [&](Pattern p, std::size_t id) -> const std::vector<std::size_t>& {
    static const std::vector<std::size_t> none;
    auto it = by.find({p, id});
    return it == by.end() ? none : it->second;
  };

  // Backward BFS from the last projection over states (element, parity).
  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  std::vector<std::array<std::size_t, 2>> dist(n, {kInf, kInf});
  std::vector<std::pair<std::size_t, std::size_t>> queue;
  for (std::size_t par = 0; par < 2; ++par) {
    dist[z][par] = 0;
    queue.push_back({z, par});
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    auto [e, par] = queue[qi];
    const std::size_t pp = 1 - par;
    auto [src, dst] = rule(pp);
    for (auto u : group(src, sh.id[e][dst]))
      if (dist[u][pp] == kInf) {
        dist[u][pp] = dist[e][par] + 1;
        queue.push_back({u, pp});
      }
  }

  TermChain out;
  out.scheme = scheme;
  out.free_size = n;
  std::vector<std::size_t> chain;
  auto walk = [&](std::size_t e, std::size_t par) {
    chain.push_back(e);
    while (dist[e][par] > 0) {
      auto [src, dst] = rule(par);
      std::size_t next = kInf;
      for (auto u : group(dst, sh.id[e][src]))
        if (dist[u][1 - par] == dist[e][par] - 1) next = std::min(next, u);
      if (next == kInf) throw InternalError("term chain walk failed");
      e = next;
      par = 1 - par;
      chain.push_back(e);
    }
  };

  if (scheme == TermScheme::Jonsson || scheme == TermScheme::Directed) {
    if (x == z) {
      out.length = 2;
      chain = {x, z};
    } else if (dist[x][0] != kInf) {
      out.length = dist[x][0] + 1;
      walk(x, 0);
    }
  } else {
    // p first: x = p(x,z,z) and p(x,x,z) = j_1(x,x,z), with j_1 at odd index.
    std::size_t best = kInf, best_p = kInf, best_j = kInf;
    for (std::size_t p = 0; p < n; ++p) {
      if (sh.id[p][XZZ] != proj) continue;
      for (auto j : group(XXZ, sh.id[p][XXZ])) {
        if (dist[j][1] == kInf) continue;
        std::size_t len = dist[j][1] + 2;
        if (len < best || (len == best && (p < best_p || (p == best_p && j < best_j)))) {
          best = len;
          best_p = p;
          best_j = j;
        }
      }
    }
    if (best != kInf) {
      out.length = best;
      chain.push_back(best_p);
      walk(best_j, 1);
    }
  }
  if (!out.length) return out;
  out.elements = chain;

  const std::size_t limit = scheme == TermScheme::PJ ? std::min<std::size_t>(3, max_len) : max_len;
  if (*out.length > limit) return out;

  std::vector<Term> terms;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i == 0 && scheme != TermScheme::Gumm && scheme != TermScheme::PJ)
      terms.push_back(Term::var(0));
    else if (i + 1 == chain.size())
      terms.push_back(Term::var(2));
    else
      terms.push_back(f->element_term(chain[i]));
  }
  if (scheme == TermScheme::PJ) terms = {terms[0], terms.size() == 3 ? terms[1] : Term::var(2)};
  if (!verify_chain(bases, scheme, terms))
    throw InternalError("term chain fails its identities for scheme " + to_string(scheme));
  out.terms = std::move(terms);
  return out;
}

bool verify_chain(const std::vector<FiniteAlgebra>& bases, TermScheme scheme,
                  const std::vector<Term>& terms) {
  const Term x = Term::var(0), y = Term::var(1), z = Term::var(2);
  auto sub = [](const Term& t, const Term& a, const Term& b, const Term& c) {
    return substitute(t, {a, b, c});
  };
  auto eq = [&](const Term& l, const Term& r) { return holds_identity(bases, l, r, 3); };
  if (terms.size() < 2) return false;

  if (scheme == TermScheme::PJ) {
    if (terms.size() != 2) return false;
    const Term &p = terms[0], &j = terms[1];
    return eq(sub(p, x, y, y), x) && eq(sub(p, x, x, y), sub(j, x, x, y)) &&
           eq(sub(j, x, y, y), y) && eq(sub(j, x, y, x), x);
  }

  std::size_t first_j = 0;
  if (scheme == TermScheme::Gumm) {
    const Term& p = terms[0];
    if (!eq(sub(p, x, z, z), x) || !eq(sub(p, x, x, z), sub(terms[1], x, x, z))) return false;
    first_j = 1;
  } else if (!eq(terms[0], x)) {
    return false;
  }
  for (std::size_t i = first_j; i < terms.size(); ++i)
    if (!eq(sub(terms[i], x, y, x), x)) return false;
  for (std::size_t i = first_j; i + 1 < terms.size(); ++i) {
    const Term &a = terms[i], &b = terms[i + 1];
    bool ok;
    if (scheme == TermScheme::Directed)
      ok = eq(sub(a, x, z, z), sub(b, x, x, z));
    else if (i % 2 == 0)
      ok = eq(sub(a, x, x, z), sub(b, x, x, z));
    else
      ok = eq(sub(a, x, z, z), sub(b, x, z, z));
    if (!ok) return false;
  }
  return eq(terms.back(), z);
}

// ---------------------------------------------------------------------------

IdentityCheck check_identity_generic(const std::vector<FiniteAlgebra>& bases,
                                     const InclusionScheme& scheme, FreeAlgebraCaps caps) {
  InclusionScheme s = make_scheme(scheme.lhs(), scheme.rhs);
  Instantiation inst = instantiate(s);
  auto f = std::make_shared<FreeAlgebra>(bases, inst.generators, relevant_partitions(inst), caps);
  IdentityCheck out;
  out.algebra = f;
  for (;;) {
    RelEnv env = kernel_env(*f, inst);
    const std::size_t a = f->generator(0), b = f->generator(inst.generators - 1);
    if (contains(s.rhs, env, a, b)) {
      out.holds = true;
      out.path = composition_path(s.rhs, env, a, b);
      return out;
    }
    if (f->is_complete()) return out;
    f->step();
  }
}

SpectrumResult day_function(const std::vector<FiniteAlgebra>& bases, std::size_t m,
                            std::size_t k_max, FreeAlgebraCaps caps) {
  if (m == 0) throw InputError("day_function: m must be positive");
  Layered q;
  q.lhs = day_scheme(m, 0);
  q.first = kA ^ kB;
  q.second = kA ^ kC;
  LayeredRun run = run_layered(bases, q, k_max, std::nullopt, caps);
  return spectrum_from(Variant::D, m, k_max, run);
}

SpectrumResult day_level(const std::vector<FiniteAlgebra>& bases, std::size_t k_max,
                         FreeAlgebraCaps caps) {
  SpectrumResult r = day_function(bases, 3, k_max, caps);
  r.variant = Variant::DayLevel;
  return r;
}

SpectrumResult tschantz_function(const std::vector<FiniteAlgebra>& bases, std::size_t m,
                                 std::size_t k_max, FreeAlgebraCaps caps) {
  if (m < 2) throw InputError("tschantz_function: m must be at least 2");
  Layered q;
  q.lhs = tschantz_scheme(m, 0);
  q.prefix = kA ^ (kC * kB);
  q.first = kA ^ kC;
  q.second = kA ^ kB;
  LayeredRun run = run_layered(bases, q, k_max, std::nullopt, caps);
  SpectrumResult r = spectrum_from(Variant::T, m, k_max, run);
  if (m == 2 && r.outcome != Outcome::CapExceeded) {
    try {
      TermChain tc = find_terms(bases, TermScheme::Gumm, k_max + 2, caps);
      bool agree = r.value ? tc.length == *r.value + 2 : (!tc.length || *tc.length > k_max + 2);
      if (!agree) throw InternalError("Tschantz value disagrees with the Gumm term search");
      if (r.value && tc.terms) r.terms = *tc.terms;
    } catch (const CapExceeded& e) {
      r.note = std::string("term-search cross-check skipped: ") + e.what();
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Per-algebra relation checks

bool replay(const Counterexample& c, const FiniteAlgebra* algebra) {
  RelEnv env;
  for (const auto& [name, r] : c.relations) {
    if (r.size() != c.size) return false;
    if (algebra && (r.size() != algebra->size() || !r.is_reflexive() || !r.is_admissible(*algebra)))
      return false;
    env.emplace(name, RelValue(r));
  }
  if (c.a >= c.size || c.b >= c.size) return false;
  Expr lhs = parse_expr(c.lhs), rhs = parse_expr(c.rhs);
  return contains(lhs, env, c.a, c.b) && !contains(rhs, env, c.a, c.b);
}

RelationFamily alpha_family(const FiniteAlgebra& a, AlphaKind kind, std::size_t budget) {
  if (kind == AlphaKind::Tolerance) return enumerate_tolerances(a, budget);
  RelationFamily fam;
  fam.exhaustive = true;
  fam.budget = budget;
  for (const auto& c : all_congruences(a)) fam.relations.push_back(c.to_relation());
  return fam;
}

namespace {

std::optional<std::pair<std::size_t, std::size_t>> first_outside(const BinRel& l, const BinRel& r) {
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < l.size(); ++b)
      if (l.test(a, b) && !r.test(a, b)) return std::pair{a, b};
  return std::nullopt;
}

std::size_t checked_cases(std::size_t alphas, std::size_t rels, std::size_t factors,
                          std::size_t cap) {
  std::size_t c = alphas;
  for (std::size_t i = 0; i < factors; ++i) {
    if (rels && c > cap / rels) return cap + 1;
    c *= rels;
  }
  return c;
}

}  // namespace

RelationCheck check_smile_C(const FiniteAlgebra& a, std::size_t m, std::size_t k, std::size_t l,
                            AlphaKind alpha_kind, std::size_t budget, std::size_t case_cap) {
  return check_smile_C(a, m, k, l, alpha_family(a, alpha_kind, budget),
                       enumerate_reflexive_admissible(a, budget), case_cap);
}

RelationCheck check_smile_C(const FiniteAlgebra& a, std::size_t m, std::size_t k, std::size_t l,
                            const RelationFamily& alphas, const RelationFamily& relations,
                            std::size_t case_cap) {
  if (l > 24) throw InputError("check_smile_C: at most 25 relation factors");
  RelationCheck out;
  out.budget = relations.budget;
  out.exhaustive = alphas.exhaustive && relations.exhaustive;
  const std::size_t cases =
      checked_cases(alphas.relations.size(), relations.relations.size(), l + 1, case_cap);
  if (cases > case_cap) {
    out.status = CheckStatus::BudgetExceeded;
    return out;
  }
  const auto& rels = relations.relations;
  std::vector<std::size_t> idx(l + 1, 0);
  for (const auto& alpha : alphas.relations) {
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      ++out.cases;
      BinRel r = rels[idx[0]];
      BinRel theta = meet(alpha, rels[idx[0]]);
      for (std::size_t i = 1; i <= l; ++i) {
        r = compose(r, rels[idx[i]]);
        theta = compose(theta, meet(alpha, rels[idx[i]]));
      }
      BinRel lhs = meet(alpha, compose_alt(r, converse(r), m));
      BinRel rhs = compose_alt(theta, converse(theta), k);
      if (auto bad = first_outside(lhs, rhs)) {
        Counterexample c;
        c.algebra = a.name();
        c.size = a.size();
        c.relations.emplace('a', alpha);
        std::vector<Expr> s, as;
        for (std::size_t i = 0; i <= l; ++i) {
          const char name = static_cast<char>('b' + i);
          c.relations.emplace(name, rels[idx[i]]);
          s.push_back(Expr::var(name));
          as.push_back(kA ^ Expr::var(name));
        }
        Expr re = Expr::compose(s), te = Expr::compose(as);
        c.lhs = (kA ^ alternating(re, Expr::converse(re), m)).to_string();
        c.rhs = alternating(te, Expr::converse(te), k).to_string();
        c.a = bad->first;
        c.b = bad->second;
        out.status = CheckStatus::Fails;
        out.counterexample = std::move(c);
        return out;
      }
      std::size_t i = l + 1;
      while (i > 0 && ++idx[i - 1] == rels.size()) idx[--i] = 0;
      if (i == 0) break;
    }
  }
  out.status = out.exhaustive ? CheckStatus::Holds : CheckStatus::HoldsWithinBudget;
  return out;
}

SpectrumResult relational_level(const FiniteAlgebra& a, std::size_t m, std::size_t k_max,
                                AlphaKind alpha_kind, std::size_t budget, bool converse) {
  RelationFamily alphas = alpha_family(a, alpha_kind, budget);
  RelationFamily rels = enumerate_reflexive_admissible(a, budget);
  SpectrumResult r;
  r.variant = converse ? Variant::JrConv : Variant::Jr;
  r.m = m;
  r.k_max = k_max;
  r.budget = budget;
  r.exhaustive = alphas.exhaustive && rels.exhaustive;
  std::size_t worst = 0;
  for (const auto& alpha : alphas.relations)
    for (const auto& s : rels.relations)
      for (const auto& t : rels.relations) {
        BinRel lhs = meet(alpha, compose_alt(s, t, m + 1));
        BinRel as = meet(alpha, s), at = meet(alpha, t);
        const BinRel& p = converse ? at : as;
        const BinRel& q = converse ? as : at;
        BinRel cur = p;
        std::size_t j = 1;
        while (!lhs.is_subset_of(cur)) {
          if (j == k_max + 1) {
            r.outcome = Outcome::Exceeded;
            r.note = "inclusion fails at k_max for some relation triple";
            return r;
          }
          ++j;
          cur = compose(cur, j % 2 == 1 ? p : q);
        }
        worst = std::max(worst, j - 1);
      }
  r.outcome = Outcome::Value;
  r.value = worst;
  return r;
}

}  // namespace cds

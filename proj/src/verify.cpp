#include "cds/verify.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <future>

#include "cds/error.hpp"

namespace cds {

std::string to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::Pass: return "pass";
    case ReportStatus::Fail: return "fail";
    case ReportStatus::BudgetExceeded: return "budget-exceeded";
    case ReportStatus::Skipped: return "skipped";
    case ReportStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

Json to_json(const TheoremReport& r, const VerifyConfig& cfg) {
  Json j{{"theorem", r.theorem}, {"inputs", r.inputs}, {"status", to_string(r.status)}};
  j["level"] = r.level;
  j["values"] = r.values;
  j["notes"] = r.notes;
  if (r.counterexample) j["counterexample"] = to_json(*r.counterexample);
  j["config"] = Json{{"caps", to_json(cfg.caps)},
                     {"k_max", cfg.k_max},
                     {"budget", cfg.budget},
                     {"case_cap", cfg.case_cap},
                     {"member_max_size", cfg.member_max_size}};
  return j;
}

const SpectrumResult& SpectrumCache::jonsson(const Variety& v, std::size_t m, bool converse) {
  auto key = std::make_tuple(v.name, m, converse);
  auto it = jonsson_.find(key);
  if (it == jonsson_.end()) {
    SpectrumResult r;
    try {
      r = jonsson_level(v.bases, m, cfg_.k_max, converse, cfg_.caps);
    } catch (const CapExceeded& e) {
      r.variant = converse ? Variant::JConv : Variant::J;
      r.m = m;
      r.k_max = cfg_.k_max;
      r.outcome = Outcome::CapExceeded;
      r.note = e.what();
    }
    it = jonsson_.emplace(key, std::move(r)).first;
  }
  return it->second;
}

const TermChain& SpectrumCache::terms(const Variety& v, TermScheme s) {
  auto key = std::make_pair(v.name, s);
  auto it = terms_.find(key);
  if (it == terms_.end()) it = terms_.emplace(key, find_terms(v.bases, s, cfg_.k_max + 2, cfg_.caps)).first;
  return it->second;
}

const SpectrumResult& SpectrumCache::day(const Variety& v) {
  auto it = day_.find(v.name);
  if (it == day_.end()) {
    SpectrumResult r;
    try {
      r = day_level(v.bases, cfg_.k_max, cfg_.caps);
    } catch (const CapExceeded& e) {
      r.variant = Variant::DayLevel;
      r.outcome = Outcome::CapExceeded;
      r.note = e.what();
    }
    it = day_.emplace(v.name, std::move(r)).first;
  }
  return it->second;
}

std::vector<FiniteAlgebra> members(const Variety& v, std::size_t max_size) {
  std::vector<FiniteAlgebra> out;
  for (const auto& b : v.bases)
    if (b.size() <= max_size) out.push_back(b);
  for (std::size_t i = 0; i < v.bases.size(); ++i)
    for (std::size_t j = i; j < v.bases.size(); ++j)
      if (v.bases[i].size() * v.bases[j].size() <= max_size)
        out.push_back(direct_product(v.bases[i], v.bases[j]));
  return out;
}

namespace {

std::optional<std::pair<std::size_t, std::size_t>> outside(const BinRel& l, const BinRel& r) {
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < l.size(); ++b)
      if (l.test(a, b) && !r.test(a, b)) return std::pair{a, b};
  return std::nullopt;
}

/// Counterexample when one side is not contained in the other, checking
/// lhs <= rhs first.
std::optional<Counterexample> compare(const std::string& algebra, const RelEnv& env,
                                      const std::map<char, BinRel>& rels, const Expr& lhs,
                                      const Expr& rhs, bool equality) {
  const BinRel l = evaluate(lhs, env), r = evaluate(rhs, env);
  auto make = [&](const Expr& x, const Expr& y, std::pair<std::size_t, std::size_t> p) {
    Counterexample c;
    c.algebra = algebra;
    c.size = l.size();
    c.relations = rels;
    c.lhs = x.to_string();
    c.rhs = y.to_string();
    c.a = p.first;
    c.b = p.second;
    return c;
  };
  if (auto p = outside(l, r)) return make(lhs, rhs, *p);
  if (equality)
    if (auto p = outside(r, l)) return make(rhs, lhs, *p);
  return std::nullopt;
}

std::vector<std::string> base_names(const Variety& v) {
  std::vector<std::string> out;
  for (const auto& b : v.bases) out.push_back(b.name());
  return out;
}

/// Iterates every tuple in [0,n)^len in lexicographic order until `f`
/// returns false.
void odometer(std::size_t n, std::size_t len, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (n == 0 && len > 0) return;
  std::vector<std::size_t> idx(len, 0);
  for (;;) {
    if (!f(idx)) return;
    std::size_t pos = len;
    while (pos > 0) {
      if (++idx[pos - 1] < n) break;
      idx[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) return;
  }
}

void merge(ReportStatus& into, ReportStatus s) {
  auto rank = [](ReportStatus x) {
    switch (x) {
      case ReportStatus::Fail: return 3;
      case ReportStatus::BudgetExceeded: return 2;
      case ReportStatus::Pass: return 1;
      default: return 0;
    }
  };
  if (rank(s) > rank(into)) into = s;
}

/// Variety-level check of a restricted inclusion; a failure on a complete
/// free algebra yields a counterexample built from its generator kernels.
struct FreeCheck {
  bool holds = false;
  bool capped = false;
  std::size_t size = 0;
  std::optional<Counterexample> counterexample;
  std::string note;
};

FreeCheck free_check(const std::vector<FiniteAlgebra>& bases, const InclusionScheme& scheme,
                     const FreeAlgebraCaps& caps) {
  FreeCheck out;
  try {
    IdentityCheck ic = check_identity_generic(bases, scheme, caps);
    out.holds = ic.holds;
    out.size = ic.algebra->size();
    if (!ic.holds) {
      Instantiation inst = instantiate(scheme);
      Counterexample c;
      c.algebra = "F(" + std::to_string(inst.generators) + ")";
      c.size = ic.algebra->size();
      for (const auto& [v, p] : inst.partitions)
        c.relations.emplace(v, ic.algebra->generator_kernel(p).to_relation());
      c.lhs = scheme.lhs().to_string();
      c.rhs = scheme.rhs.to_string();
      c.a = ic.algebra->generator(0);
      c.b = ic.algebra->generator(inst.generators - 1);
      out.counterexample = std::move(c);
    }
  } catch (const CapExceeded& e) {
    out.capped = true;
    out.note = e.what();
  }
  return out;
}

/// Member-level check over every member of the variety; stops at the first
/// counterexample.
std::optional<Counterexample> members_law(const std::vector<FiniteAlgebra>& ms, const Expr& lhs,
                                          const Expr& rhs, bool equality, std::size_t& cases,
                                          const std::string& vars = "abc") {
  for (const auto& a : ms) {
    LawCheck lc = check_congruence_law(a, lhs, rhs, equality, vars);
    cases += lc.cases;
    if (lc.counterexample) return lc.counterexample;
  }
  return std::nullopt;
}

Json member_names(const std::vector<FiniteAlgebra>& ms) {
  Json out = Json::array();
  for (const auto& a : ms) out.push_back(a.name());
  return out;
}

Json spectrum_value(const SpectrumResult& r) {
  if (r.value) return *r.value;
  return r.outcome == Outcome::CapExceeded ? Json("cap-exceeded") : Json("exceeded");
}

const Expr kA = Expr::var('a'), kB = Expr::var('b'), kC = Expr::var('c');

}  // namespace

LawCheck check_congruence_law(const FiniteAlgebra& a, const Expr& lhs, const Expr& rhs,
                              bool equality, const std::string& vars) {
  const std::vector<Congruence> cons = all_congruences(a);
  LawCheck out;
  odometer(cons.size(), vars.size(), [&](const std::vector<std::size_t>& idx) {
    RelEnv env;
    std::map<char, BinRel> rels;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      env.emplace(vars[i], RelValue(cons[idx[i]]));
      rels.emplace(vars[i], cons[idx[i]].to_relation());
    }
    ++out.cases;
    out.counterexample = compare(a.name(), env, rels, lhs, rhs, equality);
    return !out.counterexample;
  });
  return out;
}

TheoremReport verify_corollary_ell(const Variety& v, std::size_t m, std::size_t l,
                                   SpectrumCache& cache) {
  TheoremReport r;
  r.theorem = "corollary-ell";
  r.inputs = Json{{"algebras", base_names(v)}, {"m", m}, {"l", l}};
  r.level = "variety";
  if (m == 0 || l == 0) throw InputError("corollary-ell: m and l must be positive");
  const SpectrumResult& jm = cache.jonsson(v, m);
  r.values["J(m)"] = spectrum_value(jm);
  if (!jm.value) {
    r.status = jm.outcome == Outcome::CapExceeded ? ReportStatus::BudgetExceeded
                                                  : ReportStatus::NotApplicable;
    r.notes.push_back("J(m) not determined within k_max and caps");
    return r;
  }
  const std::size_t bound = *jm.value * l;
  r.values["bound"] = bound;
  if (l == 1) {
    r.notes.push_back("l = 1: the bound is J(m) itself");
    return r;
  }
  InclusionScheme s = dist_scheme(m * l, bound, false);
  FreeCheck fc = free_check(v.bases, s, cache.config().caps);
  r.values["free_elements"] = fc.size;
  if (fc.capped) {
    r.status = ReportStatus::BudgetExceeded;
    r.notes.push_back(fc.note);
  } else if (!fc.holds) {
    r.status = ReportStatus::Fail;
    r.counterexample = fc.counterexample;
  } else {
    r.values["J(ml)"] = "<= " + std::to_string(bound);
  }
  return r;
}

namespace {

/// Claim for T o T' o R o S with R <= T, S <= T', alpha a congruence.
std::optional<Counterexample> claim_ru(const FiniteAlgebra& a, const VerifyConfig& cfg,
                                       std::size_t& cases, bool& capped, bool& exhaustive) {
  const std::vector<Congruence> cons = all_congruences(a);
  RelationFamily fam = enumerate_reflexive_admissible(a, cfg.budget);
  exhaustive = exhaustive && fam.exhaustive;
  const Expr t = Expr::var('t'), r = Expr::var('r'), s = Expr::var('s');
  const Expr tt = t * Expr::converse(t);
  const Expr lhs = kA ^ Expr::compose({t, Expr::converse(t), r, s});
  const Expr rhs = Expr::compose({kA ^ tt, kA ^ r, kA ^ s});
  for (const auto& T : fam.relations) {
    const BinRel Tc = converse(T);
    for (const auto& R : fam.relations) {
      if (!R.is_subset_of(T)) continue;
      for (const auto& S : fam.relations) {
        if (!S.is_subset_of(Tc)) continue;
        for (const auto& alpha : cons) {
          if (++cases > cfg.case_cap) {
            capped = true;
            return std::nullopt;
          }
          RelEnv env{{'a', RelValue(alpha)}, {'t', RelValue(T)}, {'r', RelValue(R)},
                     {'s', RelValue(S)}};
          std::map<char, BinRel> rels{{'a', alpha.to_relation()}, {'t', T}, {'r', R}, {'s', S}};
          if (auto c = compare(a.name(), env, rels, lhs, rhs, true)) return c;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TheoremReport verify_theorem_4gt(const Variety& v, SpectrumCache& cache) {
  const VerifyConfig& cfg = cache.config();
  TheoremReport r;
  r.theorem = "theorem-4gt";
  r.inputs = Json{{"algebras", base_names(v)}, {"m_max", cfg.m_max}};
  r.level = "member";
  const TermChain& gumm = cache.terms(v, TermScheme::Gumm);
  r.values["gumm_terms"] = gumm.length ? Json(*gumm.length) : Json("exceeded");
  if (!gumm.length || *gumm.length > 3) {
    r.status = ReportStatus::Skipped;
    r.level = "none";
    r.notes.push_back("hypothesis not established, skipped");
    return r;
  }
  const std::vector<FiniteAlgebra> ms = members(v, cfg.member_max_size);
  r.inputs["members"] = member_names(ms);
  std::vector<std::pair<std::string, std::pair<Expr, Expr>>> laws;
  laws.push_back({"4a", {(kA ^ (kB * kC)) * (kA ^ kB), (kA ^ kB) * (kA ^ (kC * kB))}});
  laws.push_back({"4b",
                  {(kA ^ Expr::compose({kB, kC, kB})) * (kA ^ kC),
                   Expr::compose({kA ^ (kB * kC), kA ^ kB, kA ^ kC})}});
  for (std::size_t m = 2; m <= cfg.m_max; ++m)
    laws.push_back({"4c(m=" + std::to_string(m) + ")",
                    {kA ^ alternating(kB, kC, m + 2),
                     (kA ^ (kB * kC)) * alternating(kA ^ kB, kA ^ kC, m)}});
  std::size_t cases = 0;
  for (const auto& [name, law] : laws) {
    if (auto c = members_law(ms, law.first, law.second, true, cases)) {
      r.status = ReportStatus::Fail;
      r.counterexample = c;
      r.notes.push_back(name + " fails");
      return r;
    }
  }
  r.values["triples"] = cases;
  std::size_t ru_cases = 0;
  bool capped = false, exhaustive = true;
  for (const auto& a : ms) {
    if (auto c = claim_ru(a, cfg, ru_cases, capped, exhaustive)) {
      r.status = ReportStatus::Fail;
      r.counterexample = c;
      r.notes.push_back("claim on T, R, S fails");
      return r;
    }
    if (capped) break;
  }
  r.values["claim_cases"] = std::min(ru_cases, cfg.case_cap);
  r.values["claim_exhaustive"] = exhaustive && !capped;
  if (capped) {
    r.status = ReportStatus::BudgetExceeded;
    r.notes.push_back("claim on T, R, S stopped at the case cap");
  }
  return r;
}

TheoremReport verify_corollary_th3d(const Variety& v, SpectrumCache& cache) {
  const VerifyConfig& cfg = cache.config();
  TheoremReport r;
  r.theorem = "corollary-th3d";
  r.inputs = Json{{"algebras", base_names(v)}, {"n_max", cfg.n_max}};
  const SpectrumResult& j1 = cache.jonsson(v, 1);
  r.values["J(1)"] = spectrum_value(j1);
  if (!j1.value || *j1.value != 2) {
    r.status = ReportStatus::Skipped;
    r.level = "none";
    r.notes.push_back("precondition J(1) = 2 not met, skipped");
    return r;
  }
  const std::vector<FiniteAlgebra> ms = members(v, cfg.member_max_size);
  r.inputs["members"] = member_names(ms);
  std::size_t cases = 0;
  if (auto c = members_law(ms, (kA ^ Expr::compose({kB, kC, kB})) * (kA ^ kC),
                           alternating(kA ^ kB, kA ^ kC, 4), true, cases)) {
    r.status = ReportStatus::Fail;
    r.level = "member";
    r.counterexample = c;
    return r;
  }
  r.values["triples"] = cases;
  bool all_free = true;
  for (std::size_t n = 3; n <= cfg.n_max; ++n) {
    const std::string key = "J(" + std::to_string(n) + ")";
    const SpectrumResult* known = nullptr;
    if (n <= 2) known = &cache.jonsson(v, n);
    if (known && known->value) {
      r.values[key] = *known->value;
      if (*known->value > n) {
        r.status = ReportStatus::Fail;
        r.notes.push_back(key + " exceeds " + std::to_string(n));
      }
      continue;
    }
    FreeCheck fc = free_check(v.bases, dist_scheme(n, n, false), cfg.caps);
    if (fc.capped) {
      all_free = false;
      r.values[key] = "member-check only";
      r.notes.push_back("n = " + std::to_string(n) + ": member-check only (" + fc.note + ")");
    } else if (!fc.holds) {
      r.status = ReportStatus::Fail;
      r.counterexample = fc.counterexample;
      r.values[key] = "> " + std::to_string(n);
    } else {
      r.values[key] = "<= " + std::to_string(n);
    }
  }
  r.level = all_free ? "variety+member" : "member";
  return r;
}

TheoremReport verify_prop_kk(const FiniteAlgebra& a, const std::vector<Term>& chain,
                             std::size_t l, AlphaKind alpha_kind, const VerifyConfig& cfg) {
  if (chain.size() < 2 || !verify_chain({a}, TermScheme::Directed, chain))
    throw InputError("prop-kk: precondition failed, the chain is not a directed Jonsson chain");
  if (l == 0) throw InputError("prop-kk: l must be positive");
  TheoremReport r;
  r.theorem = "prop-kk";
  Json terms = Json::array();
  for (const auto& t : chain) terms.push_back(t.to_string());
  r.inputs = Json{{"algebra", a.name()}, {"chain", terms}, {"l", l},
                  {"alpha", to_string(alpha_kind)}};
  r.level = "member";
  const std::size_t k = chain.size() - 1;
  r.values["k"] = k;

  const RelationFamily alphas = alpha_family(a, alpha_kind, cfg.budget);
  const RelationFamily rels = enumerate_reflexive_admissible(a, cfg.budget);
  const std::vector<Congruence> cons = all_congruences(a);
  r.values["alphas"] = alphas.relations.size();
  r.values["relations"] = rels.relations.size();
  const bool exhaustive = alphas.exhaustive && rels.exhaustive;
  r.values["exhaustive"] = exhaustive;

  std::size_t cases = 0;
  bool capped = false;
  std::optional<Counterexample> cex;
  auto run = [&](const std::vector<char>& names, const std::vector<const std::vector<BinRel>*>& fams,
                 const Expr& lhs, const Expr& rhs) {
    std::size_t total = 1;
    for (const auto* f : fams) total *= f->size();
    if (total == 0) return;
    std::vector<std::size_t> idx(fams.size(), 0);
    for (;;) {
      if (++cases > cfg.case_cap) {
        capped = true;
        return;
      }
      RelEnv env;
      std::map<char, BinRel> named;
      for (std::size_t i = 0; i < fams.size(); ++i) {
        env.emplace(names[i], RelValue((*fams[i])[idx[i]]));
        named.emplace(names[i], (*fams[i])[idx[i]]);
      }
      if ((cex = compare(a.name(), env, named, lhs, rhs, false))) return;
      std::size_t pos = fams.size();
      while (pos > 0) {
        if (++idx[pos - 1] < fams[pos - 1]->size()) break;
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) return;
    }
  };

  // alpha(S_1 o ... o S_l) <= (alpha S_1 o ... o alpha S_l)^(k-1)
  {
    std::vector<char> names{'a'};
    std::vector<const std::vector<BinRel>*> fams{&alphas.relations};
    std::vector<Expr> plain, cut;
    for (std::size_t i = 0; i < l; ++i) {
      const char n = static_cast<char>('b' + i);
      names.push_back(n);
      fams.push_back(&rels.relations);
      plain.push_back(Expr::var(n));
      cut.push_back(kA ^ Expr::var(n));
    }
    const Expr body = Expr::compose(cut);
    std::vector<Expr> pow(k - 1, body);
    run(names, fams, kA ^ Expr::compose(plain), Expr::compose(pow));
  }
  const Expr s = Expr::var('s'), t = Expr::var('t');
  std::vector<BinRel> con_rels;
  for (const auto& c : cons) con_rels.push_back(c.to_relation());
  if (!cex && !capped && l % 2 == 0) {
    run({'a', 's', 't'}, {&alphas.relations, &rels.relations, &rels.relations},
        kA ^ alternating(s, t, l), alternating(kA ^ s, kA ^ t, l * (k - 1)));
  }
  if (!cex && !capped && l % 2 == 1) {
    const std::size_t kp = l * (k - 1) + 2 >= k ? l * (k - 1) + 2 - k : 0;
    r.values["k_prime"] = kp;
    run({'a', 'b', 't'}, {&alphas.relations, &con_rels, &rels.relations},
        kA ^ alternating(kB, t, l), alternating(kA ^ kB, kA ^ t, kp));
  }
  r.values["cases"] = std::min(cases, cfg.case_cap);
  if (cex) {
    r.status = ReportStatus::Fail;
    r.counterexample = cex;
  } else if (capped) {
    r.status = ReportStatus::BudgetExceeded;
    r.notes.push_back("stopped at the case cap");
  } else if (!exhaustive) {
    r.notes.push_back("holds within budget " + std::to_string(cfg.budget));
  }
  return r;
}

TheoremReport verify_lemma_gt_and_jgt(const Variety& v, SpectrumCache& cache) {
  const VerifyConfig& cfg = cache.config();
  TheoremReport r;
  r.theorem = "lemma-gt-jgt";
  r.inputs = Json{{"algebras", base_names(v)}};
  const TermChain& gumm = cache.terms(v, TermScheme::Gumm);
  if (!gumm.length) {
    r.status = ReportStatus::NotApplicable;
    r.level = "none";
    r.notes.push_back("no Gumm chain within the search bound");
    return r;
  }
  const std::size_t k = *gumm.length - 2;
  r.values["gumm_terms"] = *gumm.length;
  r.values["k"] = k;
  const SpectrumResult& j1 = cache.jonsson(v, 1);
  const SpectrumResult& j2 = cache.jonsson(v, 2);
  const SpectrumResult& c1 = cache.jonsson(v, 1, true);
  const SpectrumResult& c2 = cache.jonsson(v, 2, true);
  r.values["J(1)"] = spectrum_value(j1);
  r.values["J(2)"] = spectrum_value(j2);
  r.values["Jconv(1)"] = spectrum_value(c1);
  r.values["Jconv(2)"] = spectrum_value(c2);
  if (!j1.value || !j2.value || !c1.value || !c2.value) {
    const bool capped = j1.outcome == Outcome::CapExceeded || j2.outcome == Outcome::CapExceeded ||
                        c1.outcome == Outcome::CapExceeded || c2.outcome == Outcome::CapExceeded;
    r.status = capped ? ReportStatus::BudgetExceeded : ReportStatus::NotApplicable;
    r.level = "none";
    r.notes.push_back("spectra not determined within k_max and caps");
    return r;
  }

  const Expr lhs = kA ^ Expr::compose({kB, kC, kB});
  const Expr rhs = (kA ^ (kC * kB)) * alternating(kA ^ kC, kA ^ kB, 2 * k);
  const std::vector<FiniteAlgebra> ms = members(v, cfg.member_max_size);
  r.inputs["members"] = member_names(ms);
  std::size_t cases = 0;
  if (auto c = members_law(ms, lhs, rhs, false, cases)) {
    r.status = ReportStatus::Fail;
    r.level = "member";
    r.counterexample = c;
    return r;
  }
  r.values["triples"] = cases;
  FreeCheck fc = free_check(v.bases, make_scheme(lhs, rhs), cfg.caps);
  if (fc.capped) {
    r.level = "member";
    r.notes.push_back("free-algebra check skipped: " + fc.note);
  } else if (!fc.holds) {
    r.status = ReportStatus::Fail;
    r.level = "variety";
    r.counterexample = fc.counterexample;
    return r;
  } else {
    r.level = "variety+member";
    r.values["free_elements"] = fc.size;
  }

  auto check = [&](const std::string& name, std::size_t lhs_value, std::size_t bound) {
    r.values[name] = bound;
    if (lhs_value > bound) {
      r.status = ReportStatus::Fail;
      r.notes.push_back(name + " violated");
    }
  };
  const std::size_t b2 = *c1.value + 2 * k - (*c1.value % 2 == 1 && 2 * k > 0 ? 1 : 0);
  const std::size_t b2c = *j1.value + 2 * k - (*j1.value % 2 == 0 && 2 * k > 0 ? 1 : 0);
  check("bound J(2)", *j2.value, b2);
  check("bound Jconv(2)", *c2.value, b2c);

  const SpectrumResult& day = cache.day(v);
  r.values["day_level"] = spectrum_value(day);
  if (day.value) {
    const std::size_t m = std::max<std::size_t>(2, *day.value);
    const std::size_t extra = 2 * m * m - 2 * m - 2;
    r.values["modularity"] = m;
    check("bound J(2) by modularity", *j2.value, *c1.value + extra);
    check("bound Jconv(2) by modularity", *c2.value, *j1.value + extra);
  } else {
    r.notes.push_back("Day level not determined, modularity bound skipped");
  }
  return r;
}

TheoremReport verify_prop_nip(const FiniteAlgebra& a, const FiniteAlgebra& b,
                              const std::vector<std::size_t>& m_list, SpectrumCache& cache) {
  TheoremReport r;
  r.theorem = "prop-nip";
  r.inputs = Json{{"algebras", {a.name(), b.name()}}, {"m", m_list}};
  r.level = "variety";
  const FiniteAlgebra p = nonindexed_product(a, b);
  const Variety va{a.name(), {a}}, vb{b.name(), {b}}, vp{p.name(), {p}};
  for (std::size_t m : m_list) {
    const SpectrumResult& ja = cache.jonsson(va, m);
    const SpectrumResult& jb = cache.jonsson(vb, m);
    const SpectrumResult& jp = cache.jonsson(vp, m);
    const std::string key = "m=" + std::to_string(m);
    r.values[key] = Json{{"first", spectrum_value(ja)},
                         {"second", spectrum_value(jb)},
                         {"product", spectrum_value(jp)}};
    if (!ja.value || !jb.value || !jp.value) {
      merge(r.status, ReportStatus::BudgetExceeded);
      r.notes.push_back(key + ": spectrum not determined");
      continue;
    }
    if (*jp.value != std::max(*ja.value, *jb.value)) {
      r.status = ReportStatus::Fail;
      r.notes.push_back(key + ": product spectrum differs from the maximum");
    }
  }
  return r;
}

TheoremReport verify_spectrum_monotone(const Variety& v, std::size_t m_max, SpectrumCache& cache) {
  TheoremReport r;
  r.theorem = "spectrum-monotone";
  r.inputs = Json{{"algebras", base_names(v)}, {"m_max", m_max}};
  r.level = "variety";
  std::optional<std::size_t> prev;
  for (std::size_t m = 1; m <= m_max; ++m) {
    const SpectrumResult& j = cache.jonsson(v, m);
    r.values["J(" + std::to_string(m) + ")"] = spectrum_value(j);
    if (!j.value) {
      merge(r.status, j.outcome == Outcome::CapExceeded ? ReportStatus::BudgetExceeded
                                                        : ReportStatus::NotApplicable);
      break;
    }
    if (prev && *j.value < *prev) {
      r.status = ReportStatus::Fail;
      r.notes.push_back("J decreases at m = " + std::to_string(m));
    }
    prev = j.value;
  }
  return r;
}

TheoremReport verify_j1_bound(const Variety& v, std::size_t m_max, SpectrumCache& cache) {
  TheoremReport r;
  r.theorem = "j1-bound";
  r.inputs = Json{{"algebras", base_names(v)}, {"m_max", m_max}};
  r.level = "variety";
  const SpectrumResult& j1 = cache.jonsson(v, 1);
  r.values["J(1)"] = spectrum_value(j1);
  if (!j1.value || *j1.value != 1) {
    r.status = ReportStatus::Skipped;
    r.notes.push_back("precondition J(1) = 1 not met, skipped");
    return r;
  }
  for (std::size_t m = 2; m <= m_max; ++m) {
    const SpectrumResult& j = cache.jonsson(v, m);
    r.values["J(" + std::to_string(m) + ")"] = spectrum_value(j);
    if (!j.value) {
      merge(r.status, ReportStatus::BudgetExceeded);
      continue;
    }
    if (*j.value > m) {
      r.status = ReportStatus::Fail;
      r.notes.push_back("J(" + std::to_string(m) + ") exceeds m");
    }
  }
  return r;
}

TheoremReport verify_k_permutable(const Variety& v, std::size_t m_max, SpectrumCache& cache) {
  const VerifyConfig& cfg = cache.config();
  TheoremReport r;
  r.theorem = "k-permutable";
  r.inputs = Json{{"algebras", base_names(v)}, {"m_max", m_max}};
  r.level = "variety+member";
  const std::vector<FiniteAlgebra> ms = members(v, cfg.member_max_size);
  bool any = false;
  for (std::size_t k = 1; k <= m_max; ++k) {
    // J(k) < k iff (k+1,k)-dist; small k reuse the cached spectrum.
    std::optional<std::size_t> jk;
    if (k <= 2) {
      const SpectrumResult& j = cache.jonsson(v, k);
      if (!j.value || *j.value >= k) continue;
      jk = j.value;
    } else {
      FreeCheck below = free_check(v.bases, dist_scheme(k, k - 1, false), cfg.caps);
      if (!below.holds) continue;
    }
    any = true;
    const std::string key = std::to_string(k) + "-permutable";
    FreeCheck fc = free_check(v.bases, make_scheme(kA ^ alternating(kB, kC, k + 1), alternating(kC, kB, k)),
                              cfg.caps);
    std::size_t cases = 0;
    auto cex = members_law(ms, alternating(kB, kC, k), alternating(kC, kB, k), true, cases, "bc");
    r.values[key] = Json{{"J", jk ? Json(*jk) : Json("< " + std::to_string(k))},
                         {"variety", fc.capped ? Json("cap-exceeded") : Json(fc.holds)},
                         {"member_pairs", cases}};
    if (cex) {
      r.status = ReportStatus::Fail;
      r.counterexample = cex;
      return r;
    }
    if (fc.capped) {
      r.level = "member";
      r.notes.push_back(key + ": free-algebra check skipped (" + fc.note + ")");
    } else if (!fc.holds) {
      r.status = ReportStatus::Fail;
      r.counterexample = fc.counterexample;
      return r;
    }
  }
  if (!any) {
    r.status = ReportStatus::Skipped;
    r.level = "none";
    r.notes.push_back("no k <= m_max with J(k) < k");
  }
  return r;
}

TheoremReport verify_jconv_proximity(const Variety& v, SpectrumCache& cache) {
  TheoremReport r;
  r.theorem = "jconv-proximity";
  r.inputs = Json{{"algebras", base_names(v)}, {"m", {1}}};
  r.level = "variety";
  const SpectrumResult& j = cache.jonsson(v, 1);
  const SpectrumResult& c = cache.jonsson(v, 1, true);
  r.values["J(1)"] = spectrum_value(j);
  r.values["Jconv(1)"] = spectrum_value(c);
  if (!j.value || !c.value) {
    r.status = ReportStatus::BudgetExceeded;
    return r;
  }
  const std::size_t d = *j.value > *c.value ? *j.value - *c.value : *c.value - *j.value;
  r.values["difference"] = d;
  if (d > 1) r.status = ReportStatus::Fail;
  return r;
}

std::vector<Variety> load_corpus(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(dir, ec))
    if (e.is_regular_file() && e.path().extension() == ".alg") files.push_back(e.path());
  if (ec) throw InputError("cannot read corpus directory " + dir);
  std::sort(files.begin(), files.end(),
            [](const auto& x, const auto& y) { return x.filename() < y.filename(); });
  std::vector<Variety> out;
  for (const auto& f : files) {
    FiniteAlgebra a = load_algebra(f.string());
    out.push_back({a.name(), {a}});
  }
  return out;
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{
      "corollary-ell", "theorem-4gt", "corollary-th3d", "prop-kk",      "lemma-gt-jgt",
      "prop-nip",      "spectrum-monotone", "j1-bound", "k-permutable", "jconv-proximity"};
  return ids;
}

namespace {

bool disjoint(const Signature& a, const Signature& b) {
  for (const auto& x : a.ops())
    for (const auto& y : b.ops())
      if (x.name == y.name) return false;
  return true;
}

}  // namespace

std::vector<TheoremReport> verify_all(const std::vector<Variety>& corpus, SpectrumCache& cache,
                                      const std::string& id) {
  const auto& ids = theorem_ids();
  if (id != "all" && std::find(ids.begin(), ids.end(), id) == ids.end())
    throw InputError("unknown theorem id '" + id + "'");
  auto wanted = [&](const std::string& x) { return id == "all" || id == x; };
  const std::size_t m_max = 2;
  std::vector<TheoremReport> out;
  if (wanted("corollary-ell"))
    for (const auto& v : corpus)
      for (std::size_t m : {1, 2})
        for (std::size_t l : {1, 2}) out.push_back(verify_corollary_ell(v, m, l, cache));
  if (wanted("theorem-4gt"))
    for (const auto& v : corpus) out.push_back(verify_theorem_4gt(v, cache));
  if (wanted("corollary-th3d"))
    for (const auto& v : corpus) out.push_back(verify_corollary_th3d(v, cache));
  if (wanted("prop-kk"))
    for (const auto& v : corpus) {
      if (v.bases.size() != 1) continue;
      const TermChain& d = cache.terms(v, TermScheme::Directed);
      for (std::size_t l : {1, 2})
        for (AlphaKind kind : {AlphaKind::Congruence, AlphaKind::Tolerance}) {
          if (!d.terms) {
            TheoremReport r;
            r.theorem = "prop-kk";
            r.inputs = Json{{"algebra", v.name}, {"l", l}, {"alpha", to_string(kind)}};
            r.status = ReportStatus::NotApplicable;
            r.level = "none";
            r.notes.push_back("no directed chain within the search bound");
            out.push_back(r);
            continue;
          }
          out.push_back(verify_prop_kk(v.bases[0], *d.terms, l, kind, cache.config()));
        }
    }
  if (wanted("lemma-gt-jgt"))
    for (const auto& v : corpus) out.push_back(verify_lemma_gt_and_jgt(v, cache));
  if (wanted("prop-nip")) {
    // Pairs run concurrently, each with a private cache; reports keep pair order.
    std::vector<std::future<TheoremReport>> jobs;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      for (std::size_t j = i + 1; j < corpus.size(); ++j) {
        if (corpus[i].bases.size() != 1 || corpus[j].bases.size() != 1) continue;
        const FiniteAlgebra& a = corpus[i].bases[0];
        const FiniteAlgebra& b = corpus[j].bases[0];
        if (!disjoint(a.signature(), b.signature())) continue;
        jobs.push_back(std::async(std::launch::async, [&a, &b, cfg = cache.config()] {
          SpectrumCache local(cfg);
          return verify_prop_nip(a, b, {1}, local);
        }));
      }
    for (auto& f : jobs) out.push_back(f.get());
  }
  if (wanted("spectrum-monotone"))
    for (const auto& v : corpus) out.push_back(verify_spectrum_monotone(v, m_max, cache));
  if (wanted("j1-bound"))
    for (const auto& v : corpus) out.push_back(verify_j1_bound(v, m_max, cache));
  if (wanted("k-permutable"))
    for (const auto& v : corpus) out.push_back(verify_k_permutable(v, 3, cache));
  if (wanted("jconv-proximity"))
    for (const auto& v : corpus) out.push_back(verify_jconv_proximity(v, cache));
  return out;
}

}  // namespace cds

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cds/conditions.hpp"
#include "cds/report.hpp"

namespace cds {

enum class ReportStatus { Pass, Fail, BudgetExceeded, Skipped, NotApplicable };
std::string to_string(ReportStatus s);

struct VerifyConfig {
  FreeAlgebraCaps caps;
  std::size_t k_max = 12;
  std::size_t budget = kDefaultRelationBudget;
  std::size_t case_cap = kDefaultCaseCap;
  /// Largest member (base or pairwise product) checked over congruence triples.
  std::size_t member_max_size = 16;
  std::size_t m_max = 4;
  std::size_t n_max = 3;
};

/// A variety given by its generating algebras.
struct Variety {
  std::string name;
  std::vector<FiniteAlgebra> bases;
};

struct TheoremReport {
  std::string theorem;
  Json inputs = Json::object();
  ReportStatus status = ReportStatus::Pass;
  /// "variety", "member", or "variety+member".
  std::string level;
  Json values = Json::object();
  std::vector<std::string> notes;
  std::optional<Counterexample> counterexample;
};

Json to_json(const TheoremReport& r, const VerifyConfig& cfg);

/// Memoized spectra and term chains per variety name.
class SpectrumCache {
 public:
  explicit SpectrumCache(VerifyConfig cfg) : cfg_(cfg) {}
  const VerifyConfig& config() const { return cfg_; }

  const SpectrumResult& jonsson(const Variety& v, std::size_t m, bool converse = false);
  const TermChain& terms(const Variety& v, TermScheme s);
  const SpectrumResult& day(const Variety& v);

 private:
  VerifyConfig cfg_;
  std::map<std::tuple<std::string, std::size_t, bool>, SpectrumResult> jonsson_;
  std::map<std::pair<std::string, TermScheme>, TermChain> terms_;
  std::map<std::string, SpectrumResult> day_;
};

/// Bases followed by their pairwise direct products (i <= j), keeping those of
/// at most `max_size` elements.
std::vector<FiniteAlgebra> members(const Variety& v, std::size_t max_size);

struct LawCheck {
  std::optional<Counterexample> counterexample;
  std::size_t cases = 0;
};

/// lhs = rhs (or lhs <= rhs) over every assignment of congruences of `a` to
/// `vars`.
LawCheck check_congruence_law(const FiniteAlgebra& a, const Expr& lhs, const Expr& rhs,
                              bool equality, const std::string& vars = "abc");

TheoremReport verify_corollary_ell(const Variety& v, std::size_t m, std::size_t l,
                                   SpectrumCache& cache);
TheoremReport verify_theorem_4gt(const Variety& v, SpectrumCache& cache);
TheoremReport verify_corollary_th3d(const Variety& v, SpectrumCache& cache);
/// `chain` lists the directed terms d_0 = x0, ..., d_k = x2.
TheoremReport verify_prop_kk(const FiniteAlgebra& a, const std::vector<Term>& chain,
                             std::size_t l, AlphaKind alpha_kind, const VerifyConfig& cfg);
TheoremReport verify_lemma_gt_and_jgt(const Variety& v, SpectrumCache& cache);
TheoremReport verify_prop_nip(const FiniteAlgebra& a, const FiniteAlgebra& b,
                              const std::vector<std::size_t>& m_list, SpectrumCache& cache);
TheoremReport verify_spectrum_monotone(const Variety& v, std::size_t m_max, SpectrumCache& cache);
TheoremReport verify_j1_bound(const Variety& v, std::size_t m_max, SpectrumCache& cache);
TheoremReport verify_k_permutable(const Variety& v, std::size_t m_max, SpectrumCache& cache);
TheoremReport verify_jconv_proximity(const Variety& v, SpectrumCache& cache);

/// Every *.alg file of the directory, sorted by file name, one variety each.
std::vector<Variety> load_corpus(const std::string& dir);

const std::vector<std::string>& theorem_ids();
/// Reports for every theorem id (or only `id`) over the corpus, in a fixed
/// order.
std::vector<TheoremReport> verify_all(const std::vector<Variety>& corpus, SpectrumCache& cache,
                                      const std::string& id = "all");

}  // namespace cds

#include "cds/free_algebra.hpp"

#include <algorithm>
#include <cstring>
#include <set>
#include <string>
#include <unordered_map>

#include "cds/error.hpp"

namespace cds {

namespace {

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > limit / base) return limit + 1;
    r *= base;
  }
  return r;
}

}  // namespace

std::vector<std::size_t> constant_assignments(std::size_t n, std::size_t generators,
                                              const GeneratorPartition& partition) {
  if (partition.size() != generators) throw InputError("partition size differs from generator count");
  // Canonical block ids in order of first generator.
  std::vector<std::size_t> block(generators);
  std::vector<std::size_t> labels;
  for (std::size_t g = 0; g < generators; ++g) {
    auto it = std::find(labels.begin(), labels.end(), partition[g]);
    block[g] = static_cast<std::size_t>(it - labels.begin());
    if (it == labels.end()) labels.push_back(partition[g]);
  }
  const std::size_t q = labels.size();
  std::vector<std::size_t> out;
  std::vector<std::size_t> vals(q, 0);
  for (;;) {
    std::size_t code = 0;
    for (std::size_t g = 0; g < generators; ++g) code = code * n + vals[block[g]];
    out.push_back(code);
    std::size_t i = q;
    while (i > 0 && ++vals[i - 1] == n) vals[--i] = 0;
    if (i == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

FreeAlgebra::FreeAlgebra(std::vector<FiniteAlgebra> bases, std::size_t generators,
                         FreeAlgebraCaps caps)
    : bases_(std::make_shared<const std::vector<FiniteAlgebra>>(std::move(bases))),
      generators_(generators),
      caps_(caps) {
  init(nullptr);
}

FreeAlgebra::FreeAlgebra(std::vector<FiniteAlgebra> bases, std::size_t generators,
                         const std::vector<GeneratorPartition>& relevant, FreeAlgebraCaps caps)
    : bases_(std::make_shared<const std::vector<FiniteAlgebra>>(std::move(bases))),
      generators_(generators),
      caps_(caps) {
  init(&relevant);
}

FreeAlgebra FreeAlgebra::build(std::vector<FiniteAlgebra> bases, std::size_t generators,
                               FreeAlgebraCaps caps) {
  FreeAlgebra f(std::move(bases), generators, caps);
  f.complete();
  return f;
}

void FreeAlgebra::init(const std::vector<GeneratorPartition>* relevant) {
  if (bases_->empty()) throw InputError("free algebra: at least one base algebra required");
  if (generators_ == 0) throw InputError("free algebra: at least one generator required");
  const Signature& sig = bases_->front().signature();
  for (const auto& a : *bases_)
    if (a.signature() != sig) throw InputError("free algebra: base signatures differ");

  restricted_ = relevant != nullptr;
  std::size_t width = 0;
  for (std::size_t b = 0; b < bases_->size(); ++b) {
    const std::size_t n = (*bases_)[b].size();
    if (!restricted_) {
      std::size_t count = checked_pow(n, generators_, caps_.max_width);
      width += count;
      if (width > caps_.max_width)
        throw CapExceeded("free algebra tuple width exceeds cap " + std::to_string(caps_.max_width),
                          0);
      for (std::size_t code = 0; code < count; ++code) coords_.push_back({b, code});
    } else {
      if (checked_pow(n, generators_, std::size_t{1} << 40) > (std::size_t{1} << 40))
        throw CapExceeded("free algebra assignment space too large", 0);
      std::set<std::size_t> codes;
      for (const auto& p : *relevant)
        for (auto c : constant_assignments(n, generators_, p)) codes.insert(c);
      width += codes.size();
      if (width > caps_.max_width)
        throw CapExceeded("free algebra tuple width exceeds cap " + std::to_string(caps_.max_width),
                          0);
      for (auto c : codes) coords_.push_back({b, c});
    }
  }
  for (std::size_t i = 0; i < coords_.size(); ++i)
    coord_index_.emplace(std::make_pair(coords_[i].base, coords_[i].code), i);

  std::vector<const FiniteAlgebra*> per_coord;
  per_coord.reserve(coords_.size());
  for (const auto& c : coords_) per_coord.push_back(&(*bases_)[c.base]);
  closure_ = std::make_unique<Closure>(sig, std::move(per_coord), caps_.max_elements);

  std::vector<Element> t(coords_.size());
  for (std::size_t g = 0; g < generators_; ++g) {
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      const std::size_t n = (*bases_)[coords_[i].base].size();
      std::size_t code = coords_[i].code;
      for (std::size_t k = generators_ - 1; k > g; --k) code /= n;
      t[i] = static_cast<Element>(code % n);
    }
    generator_index_.push_back(closure_->add_seed(t));
  }
}

bool FreeAlgebra::step() {
  try {
    return closure_->step();
  } catch (const CapExceeded& e) {
    throw CapExceeded(std::string("free algebra on ") + std::to_string(generators_) +
                          " generators: " + e.what(),
                      e.partial());
  }
}

void FreeAlgebra::complete() {
  while (step()) {
  }
}

std::optional<std::size_t> FreeAlgebra::coordinate_index(std::size_t base, std::size_t code) const {
  auto it = coord_index_.find({base, code});
  if (it == coord_index_.end()) return std::nullopt;
  return it->second;
}

Term FreeAlgebra::element_term(std::size_t e) const {
  if (e >= size()) throw InputError("element_term: index out of range");
  std::vector<std::optional<Term>> memo(e + 1);
  auto rec = [&](auto&& self, std::size_t i) -> const Term& {
    if (memo[i]) return *memo[i];
    const Provenance& p = provenance(i);
    if (p.is_seed()) {
      memo[i] = Term::var(p.seed);
    } else {
      std::vector<Term> children;
      for (auto o : p.operands) children.push_back(self(self, o));
      memo[i] = Term::node(signature()[p.op].name, std::move(children));
    }
    return *memo[i];
  };
  return rec(rec, e);
}

std::vector<std::size_t> FreeAlgebra::kernel_positions(const GeneratorPartition& partition) const {
  std::vector<std::size_t> pos;
  for (std::size_t b = 0; b < bases_->size(); ++b)
    for (auto code : constant_assignments((*bases_)[b].size(), generators_, partition)) {
      auto i = coordinate_index(b, code);
      if (!i) throw InputError("generator_kernel: partition is not among the kept coordinates");
      pos.push_back(*i);
    }
  return pos;
}

Congruence FreeAlgebra::generator_kernel(const GeneratorPartition& partition) const {
  auto pos = kernel_positions(partition);
  std::unordered_map<std::string, std::size_t> ids;
  std::vector<std::size_t> labels(size());
  std::string key(pos.size() * sizeof(Element), '\0');
  for (std::size_t e = 0; e < size(); ++e) {
    auto t = tuple(e);
    for (std::size_t i = 0; i < pos.size(); ++i)
      std::memcpy(key.data() + i * sizeof(Element), &t[pos[i]], sizeof(Element));
    labels[e] = ids.emplace(key, ids.size()).first->second;
  }
  return Congruence(labels);
}

FiniteAlgebra FreeAlgebra::to_finite_algebra(std::size_t max_table) const {
  if (!is_complete()) throw InputError("to_finite_algebra: closure not complete");
  const Signature& sig = signature();
  const std::size_t n = size();
  std::vector<std::vector<Element>> tables;
  std::vector<Element> result(width());
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t r = sig[op].arity;
    std::size_t len = checked_pow(n, r, max_table);
    if (len > max_table)
      throw CapExceeded("free algebra table for '" + sig[op].name + "' exceeds " +
                            std::to_string(max_table) + " entries",
                        n);
    std::vector<Element> table(len);
    std::vector<std::size_t> args(r);
    for (std::size_t code = 0; code < len; ++code) {
      std::size_t c = code;
      for (std::size_t i = r; i > 0; --i) {
        args[i - 1] = c % n;
        c /= n;
      }
      for (std::size_t k = 0; k < width(); ++k) {
        const FiniteAlgebra& a = (*bases_)[coords_[k].base];
        std::size_t v = 0;
        for (std::size_t i = 0; i < r; ++i) v = v * a.size() + tuple(args[i])[k];
        result[k] = a.table(op)[v];
      }
      auto idx = find(result);
      if (!idx) throw InternalError("free algebra not closed under '" + sig[op].name + "'");
      table[code] = static_cast<Element>(*idx);
    }
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra("F" + std::to_string(generators_), n, sig, std::move(tables));
}

}  // namespace cds

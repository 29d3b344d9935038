#pragma once

#include <set>
#include <string>
#include <vector>

#include "cds/algebra.hpp"
#include "cds/relations.hpp"

namespace fixtures {

inline cds::FiniteAlgebra corpus(const std::string& name) {
  return cds::load_algebra(std::string(CDS_CORPUS_DIR) + "/" + name + ".alg");
}

/// Three-element chain lattice 0 < 1 < 2.
inline cds::FiniteAlgebra chain3() {
  return cds::parse_algebra(
      "algebra chain3\nsize 3\n"
      "op meet 2\n0 0 0\n0 1 1\n0 1 2\n"
      "op join 2\n0 1 2\n1 1 2\n2 2 2\n");
}

/// Pentagon lattice: 0 < a=1 < b=2 < 4, 0 < c=3 < 4.
inline cds::FiniteAlgebra pentagon() {
  return cds::parse_algebra(
      "algebra pentagon\nsize 5\n"
      "op meet 2\n"
      "0 0 0 0 0\n0 1 1 0 1\n0 1 2 0 2\n0 0 0 3 3\n0 1 2 3 4\n"
      "op join 2\n"
      "0 1 2 3 4\n1 1 2 4 4\n2 2 2 4 4\n3 4 4 3 4\n4 4 4 4 4\n");
}

/// Four-element set with the identity map: every equivalence is a congruence.
inline cds::FiniteAlgebra set4() {
  return cds::parse_algebra("algebra set4\nsize 4\nop id 1\n0 1 2 3\n");
}

/// Brute-force oracle: every equivalence relation of {0..n-1} as a label
/// vector, by restricted growth strings.
inline std::vector<std::vector<std::size_t>> all_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> rgs(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t max) -> void {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::size_t b = 0; b <= max + 1; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(max, b));
    }
  };
  if (n == 0) return out;
  rgs[0] = 0;
  rec(rec, 1, 0);
  return out;
}

/// Brute-force oracle: admissible equivalences of `a`.
inline std::set<cds::Congruence> brute_congruences(const cds::FiniteAlgebra& a) {
  std::set<cds::Congruence> out;
  for (const auto& p : all_partitions(a.size())) {
    cds::Congruence c(p);
    if (c.is_admissible(a)) out.insert(c);
  }
  return out;
}

/// Brute-force oracle: every reflexive admissible relation.
inline std::set<cds::BinRel> brute_reflexive_admissible(const cds::FiniteAlgebra& a) {
  const std::size_t n = a.size();
  std::vector<cds::Pair> off;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y) off.push_back({static_cast<cds::Element>(x), static_cast<cds::Element>(y)});
  std::set<cds::BinRel> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << off.size()); ++mask) {
    cds::BinRel r = cds::BinRel::diagonal(n);
    for (std::size_t i = 0; i < off.size(); ++i)
      if (mask >> i & 1) r.set(off[i].first, off[i].second);
    if (r.is_admissible(a)) out.insert(r);
  }
  return out;
}

}  // namespace fixtures

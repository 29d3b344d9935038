#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cds/algebra.hpp"
#include "cds/closure.hpp"
#include "cds/relations.hpp"
#include "cds/term.hpp"

namespace cds {

struct FreeAlgebraCaps {
  std::size_t max_elements = 200000;
  std::size_t max_width = std::size_t{1} << 20;
};

/// Block label per generator; generators with equal labels are identified.
using GeneratorPartition = std::vector<std::size_t>;

/// One coordinate of the function-power representation: an assignment of the
/// generators into one base algebra.
struct Coordinate {
  std::size_t base = 0;
  std::size_t code = 0;  // assignment, generator 0 most significant
};

/// Free algebra F_V(n) of V = HSP(bases), realized as the subalgebra of
/// prod_A A^(A^n) generated by the projections. Elements are value tuples
/// indexed by Coordinate.
///
/// A restricted free algebra keeps only the coordinates whose assignment is
/// constant on the blocks of at least one of a given list of generator
/// partitions. Its elements are the images of F_V(n) under that projection,
/// which is all that is needed to compare elements modulo the kernels of
/// those partitions.
///
/// Construction can be advanced round by round (step) or run to completion.
class FreeAlgebra {
 public:
  FreeAlgebra(std::vector<FiniteAlgebra> bases, std::size_t generators,
              FreeAlgebraCaps caps = {});
  FreeAlgebra(std::vector<FiniteAlgebra> bases, std::size_t generators,
              const std::vector<GeneratorPartition>& relevant, FreeAlgebraCaps caps = {});

  /// Full free algebra, closure completed.
  static FreeAlgebra build(std::vector<FiniteAlgebra> bases, std::size_t generators,
                           FreeAlgebraCaps caps = {});

  bool step();
  void complete();
  bool is_complete() const { return closure_->closed(); }
  bool is_restricted() const { return restricted_; }

  std::size_t size() const { return closure_->size(); }
  std::size_t generators() const { return generators_; }
  std::size_t width() const { return coords_.size(); }
  std::size_t rounds() const { return closure_->rounds(); }
  const std::vector<FiniteAlgebra>& bases() const { return *bases_; }
  const Signature& signature() const { return bases_->front().signature(); }
  const std::vector<Coordinate>& coordinates() const { return coords_; }
  const FreeAlgebraCaps& caps() const { return caps_; }

  /// Element index of generator y_i.
  std::size_t generator(std::size_t i) const { return generator_index_[i]; }
  std::span<const Element> tuple(std::size_t e) const { return closure_->tuple(e); }
  const Provenance& provenance(std::size_t e) const { return closure_->provenance(e); }
  std::optional<std::size_t> find(std::span<const Element> tuple) const {
    return closure_->find(tuple);
  }
  /// Coordinate index of (base, assignment code), if kept.
  std::optional<std::size_t> coordinate_index(std::size_t base, std::size_t code) const;

  /// Term over x0..x(n-1) whose term function is element e, rebuilt from
  /// provenance.
  Term element_term(std::size_t e) const;

  /// Kernel of the substitution merging generators with equal labels,
  /// restricted to the elements found so far. On the complete algebra this is
  /// the congruence generated by the identified generator pairs.
  Congruence generator_kernel(const GeneratorPartition& partition) const;

  /// The algebra as a FiniteAlgebra over element indices. Requires a
  /// complete closure; throws CapExceeded for oversized tables.
  FiniteAlgebra to_finite_algebra(std::size_t max_table = std::size_t{1} << 24) const;

 private:
  void init(const std::vector<GeneratorPartition>* relevant);
  std::vector<std::size_t> kernel_positions(const GeneratorPartition& partition) const;

  std::shared_ptr<const std::vector<FiniteAlgebra>> bases_;
  std::size_t generators_;
  FreeAlgebraCaps caps_;
  bool restricted_ = false;
  std::vector<Coordinate> coords_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> coord_index_;
  std::unique_ptr<Closure> closure_;
  std::vector<std::size_t> generator_index_;
};

/// Assignments (codes) of `generators` variables into a universe of size n
/// that are constant on the blocks of `partition`, in increasing order.
std::vector<std::size_t> constant_assignments(std::size_t n, std::size_t generators,
                                              const GeneratorPartition& partition);

}  // namespace cds

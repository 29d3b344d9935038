#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cds/algebra.hpp"

namespace cds {

/// Subuniverse generation inside a product of algebras A_0 x ... x A_{w-1}
/// (all of one signature). Elements are w-tuples; provenance records how each
/// tuple was first produced. Generation proceeds in rounds: a round applies
/// every operation to every operand tuple that uses at least one element
/// found in the previous round, ops in signature order and operand tuples in
/// row-major order. The order is part of the contract.
class Closure {
 public:
  Closure(const Signature& signature, std::vector<const FiniteAlgebra*> coordinates,
          std::size_t max_elements = std::numeric_limits<std::size_t>::max());

  Closure(const Closure&) = delete;
  Closure& operator=(const Closure&) = delete;

  std::size_t width() const { return width_; }
  std::size_t size() const { return provenance_.size(); }
  std::size_t rounds() const { return rounds_; }
  bool closed() const { return closed_; }

  /// Adds a seed tuple (ignored if already present) and returns its index.
  std::size_t add_seed(std::span<const Element> tuple);

  /// Runs one round. Returns false once nothing new can be produced.
  bool step();
  void run();

  std::span<const Element> tuple(std::size_t i) const {
    return {storage_.data() + i * width_, width_};
  }
  const Provenance& provenance(std::size_t i) const { return provenance_[i]; }
  std::optional<std::size_t> find(std::span<const Element> tuple) const;

 private:
  struct Hash {
    const Closure* self;
    std::size_t operator()(std::uint32_t i) const;
  };
  struct Equal {
    const Closure* self;
    bool operator()(std::uint32_t a, std::uint32_t b) const;
  };

  static constexpr std::uint32_t kProbe = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::size_t kMaxSlicedArity = 6;

  std::span<const Element> slot(std::uint32_t i) const {
    return i == kProbe ? std::span<const Element>(probe_) : tuple(i);
  }
  const std::uint64_t* packed_slot(std::uint32_t i) const {
    return i == kProbe ? packed_probe_.data() : packed_.data() + i * words_;
  }
  void pack_probe();
  void unpack_probe();
  void apply_sliced(std::size_t op, std::span<const std::size_t> operands);
  /// Inserts probe_ if new; returns its index and whether it was inserted.
  std::pair<std::size_t, bool> insert_probe(Provenance prov);
  /// Inserts probe_, known to be absent.
  std::size_t insert_new(Provenance prov);
  void apply(std::size_t op, std::span<const std::size_t> operands);
  /// All operand tuples of `op` over [0,n) touching [lo,n), with table codes
  /// accumulated per coordinate along the prefix.
  void sweep_generic(std::size_t op, std::size_t n, std::size_t lo);

  const Signature& signature_;
  std::size_t width_;
  std::size_t max_elements_;
  std::vector<std::size_t> coord_size_;
  std::vector<std::vector<const Element*>> coord_table_;  // [op][coordinate]
  std::vector<Element> storage_;
  std::vector<Provenance> provenance_;
  std::vector<Element> probe_;
  // Bit-sliced mode: every coordinate has two elements, so a tuple is a bit
  // vector and an operation is evaluated word-parallel from its truth table.
  struct Group {
    const FiniteAlgebra* algebra;
    std::vector<std::uint64_t> mask;
  };
  bool sliced_ = false;
  std::size_t words_ = 0;
  std::vector<Group> groups_;
  std::vector<std::uint64_t> packed_;
  std::vector<std::uint64_t> packed_probe_;
  // Open-addressing index over element ids, with cached hashes.
  std::optional<std::size_t> lookup_probe();
  void grow();
  static constexpr std::uint32_t kEmpty = kProbe;
  std::vector<std::uint32_t> slots_;
  std::vector<std::uint64_t> hashes_;
  std::uint64_t probe_hash_ = 0;
  std::size_t probe_slot_ = 0;
  std::size_t frontier_ = 0;
  std::size_t rounds_ = 0;
  bool closed_ = false;
};

}  // namespace cds

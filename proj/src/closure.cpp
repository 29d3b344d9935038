#include "cds/closure.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "cds/error.hpp"

namespace cds {

Closure::Closure(const Signature& signature, std::vector<const FiniteAlgebra*> coordinates,
                 std::size_t max_elements)
    : signature_(signature),
      width_(coordinates.size()),
      max_elements_(max_elements),
      probe_(coordinates.size()),
      slots_(64, kEmpty) {
  coord_size_.reserve(width_);
  for (const auto* a : coordinates) {
    if (a->signature() != signature) throw InputError("closure: signature mismatch");
    coord_size_.push_back(a->size());
  }
  sliced_ = width_ > 0;
  for (const auto* a : coordinates) sliced_ = sliced_ && a->size() == 2;
  for (const auto& op : signature.ops()) sliced_ = sliced_ && op.arity <= kMaxSlicedArity;
  if (sliced_) {
    words_ = (width_ + 63) / 64;
    packed_probe_.assign(words_, 0);
    for (std::size_t c = 0; c < width_; ++c) {
      auto it = std::find_if(groups_.begin(), groups_.end(),
                             [&](const Group& g) { return g.algebra == coordinates[c]; });
      if (it == groups_.end()) {
        groups_.push_back({coordinates[c], std::vector<std::uint64_t>(words_, 0)});
        it = groups_.end() - 1;
      }
      it->mask[c / 64] |= std::uint64_t{1} << (c % 64);
    }
  }
  coord_table_.resize(signature.size());
  for (std::size_t op = 0; op < signature.size(); ++op) {
    coord_table_[op].reserve(width_);
    for (const auto* a : coordinates) coord_table_[op].push_back(a->table(op).data());
  }
}

std::size_t Closure::Hash::operator()(std::uint32_t i) const {
  if (self->sliced_) {
    const std::uint64_t* w = self->packed_slot(i);
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::size_t k = 0; k < self->words_; ++k) {
      h ^= w[k];
      h *= 0xbf58476d1ce4e5b9ull;
      h ^= h >> 31;
    }
    return h;
  }
  auto t = self->slot(i);
  const auto* bytes = reinterpret_cast<const unsigned char*>(t.data());
  const std::size_t len = t.size() * sizeof(Element);
  std::uint64_t lane[4] = {0x9e3779b97f4a7c15ull, 0xbf58476d1ce4e5b9ull, 0x94d049bb133111ebull,
                           0x2545f4914f6cdd1dull};
  std::size_t pos = 0;
  for (; pos + 32 <= len; pos += 32)
    for (int k = 0; k < 4; ++k) {
      std::uint64_t w;
      std::memcpy(&w, bytes + pos + 8 * k, 8);
      lane[k] = (lane[k] ^ w) * 0xff51afd7ed558ccdull;
      lane[k] ^= lane[k] >> 32;
    }
  for (; pos < len; pos += sizeof(Element)) {
    Element e;
    std::memcpy(&e, bytes + pos, sizeof(Element));
    lane[0] = (lane[0] ^ e) * 0xc4ceb9fe1a85ec53ull;
  }
  std::uint64_t h = lane[0] ^ (lane[1] * 3) ^ (lane[2] * 5) ^ (lane[3] * 7);
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h;
}

bool Closure::Equal::operator()(std::uint32_t a, std::uint32_t b) const {
  if (self->sliced_) {
    const std::uint64_t* x = self->packed_slot(a);
    const std::uint64_t* y = self->packed_slot(b);
    for (std::size_t k = 0; k < self->words_; ++k)
      if (x[k] != y[k]) return false;
    return true;
  }
  auto x = self->slot(a);
  auto y = self->slot(b);
  return std::memcmp(x.data(), y.data(), x.size() * sizeof(Element)) == 0;
}

std::optional<std::size_t> Closure::find(std::span<const Element> tuple) const {
  auto& self = const_cast<Closure&>(*this);
  if (tuple.size() != width_) return std::nullopt;
  self.probe_.assign(tuple.begin(), tuple.end());
  self.pack_probe();
  return self.lookup_probe();
}

std::optional<std::size_t> Closure::lookup_probe() {
  probe_hash_ = Hash{this}(kProbe);
  const std::size_t mask = slots_.size() - 1;
  Equal eq{this};
  for (std::size_t pos = probe_hash_ & mask;; pos = (pos + 1) & mask) {
    const std::uint32_t id = slots_[pos];
    if (id == kEmpty) {
      probe_slot_ = pos;
      return std::nullopt;
    }
    if (hashes_[id] == probe_hash_ && eq(id, kProbe)) return id;
  }
}

void Closure::grow() {
  std::vector<std::uint32_t> next(slots_.size() * 2, kEmpty);
  const std::size_t mask = next.size() - 1;
  for (auto id : slots_) {
    if (id == kEmpty) continue;
    std::size_t pos = hashes_[id] & mask;
    while (next[pos] != kEmpty) pos = (pos + 1) & mask;
    next[pos] = id;
  }
  slots_ = std::move(next);
}

std::pair<std::size_t, bool> Closure::insert_probe(Provenance prov) {
  if (auto id = lookup_probe()) return {*id, false};
  return {insert_new(std::move(prov)), true};
}

std::size_t Closure::insert_new(Provenance prov) {
  if (size() >= max_elements_)
    throw CapExceeded("closure exceeded " + std::to_string(max_elements_) + " elements (width " +
                          std::to_string(width_) + ")",
                      size());
  std::size_t id = size();
  storage_.insert(storage_.end(), probe_.begin(), probe_.end());
  if (sliced_) packed_.insert(packed_.end(), packed_probe_.begin(), packed_probe_.end());
  provenance_.push_back(std::move(prov));
  hashes_.push_back(probe_hash_);
  slots_[probe_slot_] = static_cast<std::uint32_t>(id);
  if (2 * size() > slots_.size()) grow();
  return id;
}

std::size_t Closure::add_seed(std::span<const Element> tuple) {
  if (tuple.size() != width_) throw InputError("closure: seed has wrong width");
  for (std::size_t c = 0; c < width_; ++c)
    if (tuple[c] >= coord_size_[c]) throw InputError("closure: seed entry out of range");
  probe_.assign(tuple.begin(), tuple.end());
  pack_probe();
  Provenance p;
  p.seed = size();
  auto [id, inserted] = insert_probe(std::move(p));
  if (inserted) closed_ = false;
  return id;
}

void Closure::pack_probe() {
  if (!sliced_) return;
  std::fill(packed_probe_.begin(), packed_probe_.end(), 0);
  for (std::size_t c = 0; c < width_; ++c)
    if (probe_[c]) packed_probe_[c / 64] |= std::uint64_t{1} << (c % 64);
}

void Closure::unpack_probe() {
  for (std::size_t c = 0; c < width_; ++c)
    probe_[c] = static_cast<Element>((packed_probe_[c / 64] >> (c % 64)) & 1u);
}

void Closure::apply_sliced(std::size_t op, std::span<const std::size_t> operands) {
  const std::size_t r = operands.size();
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t res = 0;
    for (const auto& g : groups_) {
      if (!g.mask[w]) continue;
      const auto& table = g.algebra->table(op);
      std::uint64_t val = 0;
      for (std::size_t code = 0; code < table.size(); ++code) {
        if (!table[code]) continue;
        std::uint64_t term = ~std::uint64_t{0};
        for (std::size_t i = 0; i < r; ++i) {
          const std::uint64_t x = packed_[operands[i] * words_ + w];
          term &= ((code >> (r - 1 - i)) & 1u) ? x : ~x;
        }
        val |= term;
      }
      res |= val & g.mask[w];
    }
    packed_probe_[w] = res;
  }
  if (lookup_probe()) return;
  unpack_probe();
  Provenance p;
  p.op = op;
  p.operands.assign(operands.begin(), operands.end());
  insert_new(std::move(p));
}

void Closure::apply(std::size_t op, std::span<const std::size_t> operands) {
  if (sliced_) {
    apply_sliced(op, operands);
    return;
  }
  const auto& tables = coord_table_[op];
  const std::size_t r = operands.size();
  for (std::size_t c = 0; c < width_; ++c) {
    std::size_t code = 0;
    const std::size_t n = coord_size_[c];
    for (std::size_t i = 0; i < r; ++i) code = code * n + storage_[operands[i] * width_ + c];
    probe_[c] = tables[c][code];
  }
  if (lookup_probe()) return;
  Provenance p;
  p.op = op;
  p.operands.assign(operands.begin(), operands.end());
  insert_new(std::move(p));
}

void Closure::sweep_generic(std::size_t op, std::size_t n, std::size_t lo) {
  const auto& tables = coord_table_[op];
  const std::size_t r = signature_[op].arity;
  std::vector<std::size_t> idx(r, 0);
  std::vector<std::vector<std::size_t>> acc(r, std::vector<std::size_t>(width_, 0));
  auto rec = [&](auto&& self, std::size_t pos, bool touches) -> void {
    if (pos + 1 == r) {
      const auto& base = acc[pos];
      for (std::size_t v = touches ? 0 : lo; v < n; ++v) {
        const Element* x = storage_.data() + v * width_;
        for (std::size_t c = 0; c < width_; ++c) probe_[c] = tables[c][base[c] + x[c]];
        pack_probe();
        if (lookup_probe()) continue;
        idx[pos] = v;
        Provenance p;
        p.op = op;
        p.operands = idx;
        insert_new(std::move(p));
      }
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      idx[pos] = v;
      const Element* x = storage_.data() + v * width_;
      auto& next = acc[pos + 1];
      for (std::size_t c = 0; c < width_; ++c) next[c] = (acc[pos][c] + x[c]) * coord_size_[c];
      self(self, pos + 1, touches || v >= lo);
    }
  };
  if (r == 0) return;
  rec(rec, 0, false);
}

bool Closure::step() {
  if (closed_) return false;
  const std::size_t n = size();
  const std::size_t lo = frontier_;
  const std::size_t before = n;

  for (std::size_t op = 0; op < signature_.size(); ++op) {
    const std::size_t r = signature_[op].arity;
    if (r == 0) {
      if (rounds_ == 0) apply(op, {});
      continue;
    }
    if (n == 0) continue;
    if (!sliced_) {
      sweep_generic(op, n, lo);
      continue;
    }
    // Row-major over [0,n)^r, restricted to tuples touching the frontier.
    std::vector<std::size_t> idx(r, 0);
    auto rec = [&](auto&& self, std::size_t pos, bool touches) -> void {
      if (pos == r) {
        apply(op, idx);
        return;
      }
      const std::size_t start = (pos + 1 == r && !touches) ? lo : 0;
      for (std::size_t v = start; v < n; ++v) {
        idx[pos] = v;
        self(self, pos + 1, touches || v >= lo);
      }
    };
    rec(rec, 0, false);
  }

  ++rounds_;
  frontier_ = before;
  if (size() == before) {
    closed_ = true;
    return false;
  }
  return true;
}

void Closure::run() {
  while (step()) {
  }
}

}  // namespace cds

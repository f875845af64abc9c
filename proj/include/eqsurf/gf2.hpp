#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace eqsurf::gf2 {

/// Dense bit vector over Z/2.
class BitVec {
public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool v = true) {
    if (v) w_[i / 64] |= (std::uint64_t{1} << (i % 64));
    else w_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }
  void flip(std::size_t i) { w_[i / 64] ^= (std::uint64_t{1} << (i % 64)); }
  BitVec& operator^=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  bool any() const {
    for (auto x : w_)
      if (x) return true;
    return false;
  }
  /// Index of the lowest set bit, or size() if none.
  std::size_t first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return k * 64 + static_cast<std::size_t>(__builtin_ctzll(w_[k]));
    return n_;
  }
  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Rank of a list of vectors of equal length.
inline std::size_t rank(std::vector<BitVec> rows) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t piv = rows[i].first();
    if (piv == rows[i].size()) continue;
    ++r;
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j].get(piv)) rows[j] ^= rows[i];
  }
  return r;
}

/// Incremental echelon basis; reports whether a vector lies in the span and
/// can express it in terms of the inserted vectors.
class Echelon {
public:
  explicit Echelon(std::size_t n) : n_(n) {}

  /// Reduces v against the basis. Returns the residue and, in `combo`, the set
  /// of inserted-vector indices whose sum was subtracted.
  BitVec reduce(BitVec v, BitVec* combo = nullptr) const {
    BitVec c(tags_.empty() ? 0 : tags_.front().size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (v.get(pivots_[i])) {
        v ^= rows_[i];
        if (combo) c ^= tags_[i];
      }
    }
    if (combo) *combo = c;
    return v;
  }

  bool contains(const BitVec& v) const { return !reduce(v).any(); }

  /// Inserts v; returns false if it was already in the span.
  bool insert(const BitVec& v) {
    BitVec tag(capacity_);
    BitVec combo;
    BitVec red = reduce(v, &combo);
    if (!red.any()) return false;
    grow();
    tag = BitVec(capacity_);
    for (std::size_t k = 0; k < combo.size(); ++k)
      if (combo.get(k)) tag.set(k);
    tag.set(count_);
    std::size_t piv = red.first();
    // keep rows fully reduced at the new pivot
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].get(piv)) {
        rows_[i] ^= red;
        BitVec t = tags_[i];
        for (std::size_t k = 0; k < tag.size(); ++k)
          if (tag.get(k)) t.flip(k);
        tags_[i] = t;
      }
    }
    rows_.push_back(red);
    tags_.push_back(tag);
    pivots_.push_back(piv);
    ++count_;
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return n_; }

private:
  void grow() {
    if (count_ < capacity_) return;
    capacity_ = capacity_ ? capacity_ * 2 : 8;
    for (auto& t : tags_) {
      BitVec n(capacity_);
      for (std::size_t k = 0; k < t.size(); ++k)
        if (t.get(k)) n.set(k);
      t = n;
    }
  }

  std::size_t n_;
  std::size_t count_ = 0;
  std::size_t capacity_ = 0;
  std::vector<BitVec> rows_;
  std::vector<BitVec> tags_;
  std::vector<std::size_t> pivots_;
};

}  // namespace eqsurf::gf2

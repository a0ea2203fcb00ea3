#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chanmatch/rational.hpp"

namespace chanmatch {

/// Dense square matrix of exact rationals, row-major. Rows index the sent
/// symbol / source point, columns the received symbol / reference point.
/// All symbols are 0-indexed in the API; file formats use 1-indexed labels.
class RatMat {
 public:
  RatMat() : n_(0) {}
  explicit RatMat(int n) : n_(n), a_(static_cast<size_t>(n) * n) {
    if (n <= 0) throw std::invalid_argument("matrix size must be positive");
  }
  RatMat(int n, std::vector<Rat> entries) : n_(n), a_(std::move(entries)) {
    if (n <= 0 || a_.size() != static_cast<size_t>(n) * n)
      throw std::invalid_argument("matrix entry count does not match size");
  }

  int n() const { return n_; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<Rat>& entries() const { return a_; }

  friend bool operator==(const RatMat&, const RatMat&) = default;

 private:
  int n_;
  std::vector<Rat> a_;
};

/// Row-stochastic matrix: entry (i, j) is the probability that j is received
/// when i is sent. Entries must lie in [0, 1] and every row must sum to
/// exactly 1.
class Channel {
 public:
  explicit Channel(RatMat m);

  int n() const { return m_.n(); }
  const RatMat& mat() const { return m_; }
  const Rat& at(int i, int j) const { return m_.at(i, j); }

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  RatMat m_;
};

/// Symmetric nonnegative matrix with zero diagonal. Whether it is a
/// semimetric or a metric is a separate classification, not an invariant.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(RatMat m);

  int n() const { return m_.n(); }
  const RatMat& mat() const { return m_; }
  const Rat& at(int i, int j) const { return m_.at(i, j); }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  RatMat m_;
};

/// Column-wise dense ranks of a matrix: rank 1 is the extreme element of the
/// column and equal entries share a rank, so every column uses the ranks
/// 1..k for some k with no gaps.
struct WeakOrderMatrix {
  int n = 0;
  std::vector<int> ranks;  // row-major

  int at(int i, int j) const { return ranks[static_cast<size_t>(i) * n + j]; }
  friend bool operator==(const WeakOrderMatrix&, const WeakOrderMatrix&) = default;
};

/// Nonempty subset of the symbol set, kept sorted and unique.
struct Code {
  std::vector<int> members;

  Code() = default;
  Code(std::initializer_list<int> m) : members(m) { normalize(); }
  explicit Code(std::vector<int> m) : members(std::move(m)) { normalize(); }

  void normalize();
  void validate(int n) const;  // nonempty, members within [0, n)
};

/// Value per nonempty subset of [n], indexed by bitmask (bit i-1 set <=>
/// element i in the subset). Storage uses 2^n slots with slot 0 fixed at
/// zero so that lattice transforms can run in place.
class SubsetVector {
 public:
  SubsetVector() : n_(0), v_(1) {}
  explicit SubsetVector(int n);
  SubsetVector(int n, std::vector<Rat> values);  // 2^n - 1 values, masks 1..2^n-1

  int n() const { return n_; }
  uint32_t mask_count() const { return (uint32_t{1} << n_) - 1; }
  const Rat& at(uint32_t mask) const { return v_[mask]; }
  Rat& at(uint32_t mask) { return v_[mask]; }

  /// The 2^n - 1 values in ascending bitmask order (the file order).
  std::vector<Rat> values() const { return {v_.begin() + 1, v_.end()}; }

  bool all_nonnegative() const;
  bool all_positive() const;
  bool all_integer() const;

  friend bool operator==(const SubsetVector&, const SubsetVector&) = default;

 private:
  int n_;
  std::vector<Rat> v_;
};

/// A weight vector over F_2^n is a subset vector read as v -> w(v); it is a
/// semimetric weight when strictly positive.
using WeightVector = SubsetVector;

/// Family of n sets given by the membership mask of each ground element.
/// Elements belonging to no set are disallowed (they sit in no minterm).
struct SetFamily {
  int n = 0;
  std::vector<uint32_t> members;  // one mask per ground element, each in [1, 2^n-1]

  long long ground_size() const { return static_cast<long long>(members.size()); }
  void validate() const;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;
};

/// Fixed-length word over {0,1}; position p corresponds to character p of
/// the serialized form (leftmost character is position 0).
class CubeWord {
 public:
  CubeWord() : nbits_(0) {}
  explicit CubeWord(int nbits) : nbits_(nbits), blocks_((nbits + 63) / 64, 0) {
    if (nbits < 0) throw std::invalid_argument("negative word length");
  }

  int size() const { return nbits_; }
  bool get(int p) const { return (blocks_[p >> 6] >> (p & 63)) & 1; }
  void set(int p, bool v) {
    uint64_t bit = uint64_t{1} << (p & 63);
    if (v) blocks_[p >> 6] |= bit; else blocks_[p >> 6] &= ~bit;
  }

  int weight() const;
  CubeWord operator^(const CubeWord& o) const;
  int hamming(const CubeWord& o) const { return (*this ^ o).weight(); }

  std::string str() const;
  static CubeWord from_string(std::string_view bits);

  friend bool operator==(const CubeWord&, const CubeWord&) = default;

 private:
  int nbits_;
  std::vector<uint64_t> blocks_;
};

inline int popcount_mask(uint32_t m) { return __builtin_popcount(m); }

}  // namespace chanmatch

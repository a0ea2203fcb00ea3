#include "chanmatch/types.hpp"

#include <algorithm>
#include <bit>

namespace chanmatch {

Channel::Channel(RatMat m) : m_(std::move(m)) {
  const int n = m_.n();
  const Rat zero(0), one(1);
  for (int i = 0; i < n; ++i) {
    Rat sum(0);
    for (int j = 0; j < n; ++j) {
      const Rat& p = m_.at(i, j);
      if (p < zero || p > one)
        throw std::invalid_argument("channel entry out of [0,1] at row " + std::to_string(i + 1) +
                                    ", column " + std::to_string(j + 1));
      sum += p;
    }
    if (sum != one)
      throw std::invalid_argument("channel row " + std::to_string(i + 1) + " sums to " + sum.str() +
                                  ", expected 1");
  }
}

DistanceMatrix::DistanceMatrix(RatMat m) : m_(std::move(m)) {
  const int n = m_.n();
  const Rat zero(0);
  for (int i = 0; i < n; ++i) {
    if (m_.at(i, i) != zero)
      throw std::invalid_argument("distance diagonal entry nonzero at " + std::to_string(i + 1));
    for (int j = 0; j < i; ++j) {
      if (m_.at(i, j) != m_.at(j, i))
        throw std::invalid_argument("distance not symmetric at (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
      if (m_.at(i, j) < zero)
        throw std::invalid_argument("negative distance at (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
    }
  }
}

void Code::normalize() {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

void Code::validate(int n) const {
  if (members.empty()) throw std::invalid_argument("code must be nonempty");
  if (members.front() < 0 || members.back() >= n)
    throw std::invalid_argument("code member out of range");
}

SubsetVector::SubsetVector(int n) : n_(n) {
  if (n < 1 || n > 30) throw std::invalid_argument("subset vector dimension out of range");
  v_.assign(size_t{1} << n, Rat(0));
}

SubsetVector::SubsetVector(int n, std::vector<Rat> values) : SubsetVector(n) {
  if (values.size() != mask_count())
    throw std::invalid_argument("subset vector needs 2^n - 1 values");
  std::copy(values.begin(), values.end(), v_.begin() + 1);
}

bool SubsetVector::all_nonnegative() const {
  return std::all_of(v_.begin(), v_.end(), [](const Rat& r) { return r.sign() >= 0; });
}

bool SubsetVector::all_positive() const {
  return std::all_of(v_.begin() + 1, v_.end(), [](const Rat& r) { return r.sign() > 0; });
}

bool SubsetVector::all_integer() const {
  return std::all_of(v_.begin(), v_.end(), [](const Rat& r) { return r.is_integer(); });
}

void SetFamily::validate() const {
  if (n < 0 || n > 30) throw std::invalid_argument("set family dimension out of range");
  const uint32_t limit = (n == 0) ? 0 : (uint32_t{1} << n) - 1;
  for (uint32_t m : members)
    if (m < 1 || m > limit)
      throw std::invalid_argument("ground element with out-of-range membership mask");
}

int CubeWord::weight() const {
  int w = 0;
  for (uint64_t b : blocks_) w += std::popcount(b);
  return w;
}

CubeWord CubeWord::operator^(const CubeWord& o) const {
  if (nbits_ != o.nbits_) throw std::invalid_argument("xor of words of different length");
  CubeWord r(nbits_);
  for (size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = blocks_[i] ^ o.blocks_[i];
  return r;
}

std::string CubeWord::str() const {
  std::string s(nbits_, '0');
  for (int p = 0; p < nbits_; ++p)
    if (get(p)) s[p] = '1';
  return s;
}

CubeWord CubeWord::from_string(std::string_view bits) {
  CubeWord w(static_cast<int>(bits.size()));
  for (size_t p = 0; p < bits.size(); ++p) {
    if (bits[p] == '1') w.set(static_cast<int>(p), true);
    else if (bits[p] != '0') throw std::invalid_argument("bit string may contain only 0 and 1");
  }
  return w;
}

}  // namespace chanmatch

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chanmatch {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Exact rational scalar. Every probability, distance and minterm count in
/// this library is a Rat; there is no floating point anywhere. Values are
/// kept canonical (reduced, denominator >= 1) by the underlying
/// boost::multiprecision rational.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long long v) : v_(v) {}  // NOLINT: implicit by design, mirrors integer literals
  Rat(long long num, long long den) : Rat(BigInt(num), BigInt(den)) {}
  Rat(BigInt num, BigInt den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    v_ = BigRat(std::move(num), std::move(den));
  }
  explicit Rat(BigRat v) : v_(std::move(v)) {}

  /// Accepts integer literals ("0", "-3") and fractions ("5/8"). Any other
  /// shape, including a zero or signed denominator, is rejected.
  static Rat parse(std::string_view text);

  const BigRat& value() const { return v_; }
  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_.sign(); }

  std::string str() const;

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(BigRat(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(BigRat(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(BigRat(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.v_.is_zero()) throw std::invalid_argument("division by zero");
    return Rat(BigRat(a.v_ / b.v_));
  }
  Rat operator-() const { return Rat(BigRat(-v_)); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  BigRat v_;
};

inline Rat Rat::parse(std::string_view text) {
  auto is_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  bool neg = !num.empty() && num.front() == '-';
  std::string_view mag = neg ? num.substr(1) : num;
  if (!is_digits(mag) || !is_digits(den))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  BigInt n{std::string(mag)};
  BigInt d{std::string(den)};
  if (d == 0) throw std::invalid_argument("malformed rational (zero denominator): '" + std::string(text) + "'");
  if (neg) n = -n;
  return Rat(std::move(n), std::move(d));
}

inline std::string Rat::str() const {
  std::string s = numerator().str();
  if (!is_integer()) {
    s += '/';
    s += denominator().str();
  }
  return s;
}

}  // namespace chanmatch

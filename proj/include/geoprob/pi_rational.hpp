// Exact numbers of the form (num/den) * pi^(k/2) and finite sums of them.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoprob {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace detail {

inline double pi_half_power_value(int k) {
  // Repeated multiplication keeps even powers within a couple of ulps.
  double v = 1.0;
  const double base = k >= 0 ? std::numbers::pi : 1.0 / std::numbers::pi;
  for (int i = 0; i < std::abs(k) / 2; ++i) v *= base;
  if (k % 2 != 0) v *= k > 0 ? std::sqrt(std::numbers::pi) : 1.0 / std::sqrt(std::numbers::pi);
  return v;
}

}  // namespace detail

/// (num/den) * pi^(pi_half_power/2), always reduced with den > 0.
class PiRational {
 public:
  PiRational() : num_(0), den_(1) {}
  PiRational(BigInt num, BigInt den = 1, int pi_half_power = 0)
      : num_(std::move(num)), den_(std::move(den)), pi_half_power_(pi_half_power) {
    if (den_ == 0) throw std::domain_error("PiRational: zero denominator");
    normalize();
  }
  PiRational(long long num, long long den = 1, int pi_half_power = 0)
      : PiRational(BigInt(num), BigInt(den), pi_half_power) {}
  PiRational(int num) : PiRational(BigInt(num)) {}

  static PiRational pi_power(int half_power) { return PiRational(1, 1, half_power); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  int pi_half_power() const { return pi_half_power_; }
  bool is_zero() const { return num_ == 0; }

  /// Rational coefficient num/den.
  BigRational coefficient() const { return BigRational(num_, den_); }

  double to_double() const {
    return coefficient().convert_to<double>() * detail::pi_half_power_value(pi_half_power_);
  }

  PiRational operator-() const { return PiRational(-num_, den_, pi_half_power_); }

  friend PiRational operator*(const PiRational& a, const PiRational& b) {
    return PiRational(a.num_ * b.num_, a.den_ * b.den_, a.pi_half_power_ + b.pi_half_power_);
  }
  friend PiRational operator/(const PiRational& a, const PiRational& b) {
    if (b.is_zero()) throw std::domain_error("PiRational: division by zero");
    return PiRational(a.num_ * b.den_, a.den_ * b.num_, a.pi_half_power_ - b.pi_half_power_);
  }
  PiRational& operator*=(const PiRational& o) { return *this = *this * o; }
  PiRational& operator/=(const PiRational& o) { return *this = *this / o; }

  PiRational pow(int e) const {
    if (e < 0) return PiRational(1) / pow(-e);
    PiRational r(1);
    PiRational b = *this;
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  /// Same-power sum; throws if the pi powers differ and both terms are nonzero.
  friend PiRational add_like(const PiRational& a, const PiRational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.pi_half_power_ != b.pi_half_power_) {
      throw std::domain_error("PiRational: adding unlike powers of pi");
    }
    return PiRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, a.pi_half_power_);
  }

  friend bool operator==(const PiRational& a, const PiRational& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.num_ == b.num_ && a.den_ == b.den_ && a.pi_half_power_ == b.pi_half_power_;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const PiRational& v) {
    os << v.num_;
    if (v.den_ != 1) os << "/" << v.den_;
    if (v.pi_half_power_ != 0 && !v.is_zero()) {
      os << "*pi";
      if (v.pi_half_power_ % 2 == 0) {
        if (v.pi_half_power_ != 2) os << "^" << v.pi_half_power_ / 2;
      } else {
        os << "^(" << v.pi_half_power_ << "/2)";
      }
    }
    return os;
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      pi_half_power_ = 0;
      return;
    }
    const BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
  int pi_half_power_ = 0;
};

/// Finite sum of PiRational terms with distinct pi powers, e.g. 1 - 35/(12 pi^2).
class PiSum {
 public:
  PiSum() = default;
  PiSum(const PiRational& term) { *this += term; }

  PiSum& operator+=(const PiRational& t) {
    if (t.is_zero()) return *this;
    auto it = terms_.find(t.pi_half_power());
    if (it == terms_.end()) {
      terms_.emplace(t.pi_half_power(), t);
    } else {
      it->second = add_like(it->second, t);
      if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
  }
  PiSum& operator-=(const PiRational& t) { return *this += -t; }
  friend PiSum operator+(PiSum a, const PiRational& t) { return a += t; }
  friend PiSum operator-(PiSum a, const PiRational& t) { return a -= t; }
  friend PiSum operator+(PiSum a, const PiSum& b) {
    for (const auto& t : b.terms()) a += t;
    return a;
  }

  /// Terms in decreasing order of pi power.
  std::vector<PiRational> terms() const {
    std::vector<PiRational> out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) out.push_back(it->second);
    return out;
  }

  bool is_single_term() const { return terms_.size() <= 1; }
  PiRational single_term() const {
    if (terms_.empty()) return PiRational(0);
    if (terms_.size() > 1) throw std::domain_error("PiSum: more than one term");
    return terms_.begin()->second;
  }

  double to_double() const {
    double s = 0.0;
    for (const auto& [k, t] : terms_) s += t.to_double();
    return s;
  }

  friend bool operator==(const PiSum& a, const PiSum& b) { return a.terms() == b.terms(); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms()) {
      if (!first) os << (t.num() < 0 ? " - " : " + ");
      os << (first ? t : (t.num() < 0 ? -t : t));
      first = false;
    }
    return os.str();
  }

 private:
  std::map<int, PiRational> terms_;
};

}  // namespace geoprob

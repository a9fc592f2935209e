#pragma once

// Elements a + b*sqrt(D) of an imaginary quadratic field. D == 0 marks a
// plain rational that has not been tied to a field yet; it combines with any
// D. Two values with different nonzero D never combine.

#include <cstdlib>
#include <ostream>
#include <regex>
#include <string>

#include "mukai/rational.hpp"

namespace mukai {

inline bool is_squarefree(long n) {
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return n != 0;
}

class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rational& a) : a_(a) {}
  QuadExt(int a) : a_(a) {}
  QuadExt(const Rational& a, const Rational& b, long D) : a_(a), b_(b), D_(D) {
    if (D >= 0 || !is_squarefree(D))
      throw Error(Errc::ContextMismatch, "D must be negative and squarefree, got " + std::to_string(D));
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long D() const { return D_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QuadExt conj() const { return make(a_, -b_, D_); }
  // a^2 - D b^2
  Rational norm() const { return a_ * a_ - Rational(D_) * b_ * b_; }
  QuadExt inverse() const {
    Rational n = norm();
    if (n.is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero in quadratic field");
    return make(a_ / n, -b_ / n, D_);
  }

  QuadExt operator-() const { return make(-a_, -b_, D_); }
  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return make(x.a_ + y.a_, x.b_ + y.b_, join(x, y));
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return make(x.a_ - y.a_, x.b_ - y.b_, join(x, y));
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    long D = join(x, y);
    return make(x.a_ * y.a_ + Rational(D) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, D);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    join(x, y);
    return x * y.inverse();
  }
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
  QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    if (x.D_ != 0 && y.D_ != 0 && x.D_ != y.D_) return false;
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  // "p/q+r/s*sqrt(D)"; a bare rational is printed without the radical.
  std::string to_string() const {
    if (D_ == 0) return a_.to_string();
    return a_.to_string() + "+" + b_.to_string() + "*sqrt(" + std::to_string(D_) + ")";
  }
  static QuadExt parse(const std::string& s) {
    static const std::regex re(R"(^\s*([-+]?\d+(?:/\d+)?)\s*\+\s*([-+]?\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(-\d+)\s*\)\s*$)");
    std::smatch m;
    if (std::regex_match(s, m, re)) {
      return QuadExt(Rational::parse(m[1]), Rational::parse(m[2]), std::stol(m[3]));
    }
    return QuadExt(Rational::parse(s));
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& q) { return os << q.to_string(); }

 private:
  static long join(const QuadExt& x, const QuadExt& y) {
    if (x.D_ != 0 && y.D_ != 0 && x.D_ != y.D_)
      throw Error(Errc::ContextMismatch,
                  "sqrt(" + std::to_string(x.D_) + ") vs sqrt(" + std::to_string(y.D_) + ")");
    return x.D_ != 0 ? x.D_ : y.D_;
  }
  static QuadExt make(Rational a, Rational b, long D) {
    QuadExt q;
    q.a_ = std::move(a);
    q.b_ = std::move(b);
    q.D_ = D;
    return q;
  }

  Rational a_;
  Rational b_;
  long D_ = 0;
};

inline bool is_zero(const QuadExt& q) { return q.is_zero(); }

}  // namespace mukai

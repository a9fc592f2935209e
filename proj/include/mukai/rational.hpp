#pragma once

// Exact rationals. Values whose numerator and denominator fit in 63 bits are
// kept inline; anything larger falls back to GMP.

#include <gmpxx.h>

#include <climits>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>

#include "mukai/error.hpp"

namespace mukai {

using Integer = mpz_class;

class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}
  Rational(long v) { set_small_or_big(static_cast<__int128>(v), 1); }
  Rational(long long v) { set_small_or_big(static_cast<__int128>(v), 1); }
  Rational(unsigned v) { set_small_or_big(static_cast<__int128>(v), 1); }
  Rational(unsigned long v) { set_small_or_big(static_cast<__int128>(v), 1); }
  Rational(long long n, long long d) {
    if (d == 0) throw Error(Errc::DivisionByZero, "zero denominator");
    set_reduced128(n, d);
  }
  explicit Rational(const mpz_class& z) { set_big(mpq_class(z)); }
  Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw Error(Errc::DivisionByZero, "zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    set_big(std::move(q));
  }
  explicit Rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    set_big(std::move(c));
  }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  // Accepts "p", "-p", "p/q".
  static Rational parse(const std::string& s) {
    if (s.empty()) throw Error(Errc::ParseError, "empty rational");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error(Errc::ParseError, "bad rational '" + s + "'");
    if (q.get_den() == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + s + "'");
    q.canonicalize();
    Rational r;
    r.set_big(std::move(q));
    return r;
  }

  std::string to_string() const {
    if (!big_) {
      std::string s = std::to_string(num_);
      if (den_ != 1) s += "/" + std::to_string(den_);
      return s;
    }
    return big_->get_str(10);
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  }
  mpz_class numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }
  mpz_class denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const { return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0); }
  bool is_small() const { return !big_; }

  Rational operator-() const {
    if (!big_) {
      Rational r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    Rational r;
    r.set_big(-*big_);
    return r;
  }

  Rational inverse() const {
    if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    if (!big_) {
      Rational r;
      r.num_ = num_ < 0 ? -den_ : den_;
      r.den_ = num_ < 0 ? -num_ : num_;
      return r;
    }
    Rational r;
    r.set_big(1 / *big_);
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      Rational r;
      if (a.den_ == 1 && b.den_ == 1) {
        long long s;
        if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != INT64_MIN) {
          r.num_ = s;
          return r;
        }
      }
      __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
      __int128 d = static_cast<__int128>(a.den_) * b.den_;
      r.set_reduced128(n, d);
      return r;
    }
    Rational r;
    r.set_big(a.to_mpq() + b.to_mpq());
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      Rational r;
      if (a.den_ == 1 && b.den_ == 1) {
        long long s;
        if (!__builtin_sub_overflow(a.num_, b.num_, &s) && s != INT64_MIN) {
          r.num_ = s;
          return r;
        }
      }
      __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
      __int128 d = static_cast<__int128>(a.den_) * b.den_;
      r.set_reduced128(n, d);
      return r;
    }
    Rational r;
    r.set_big(a.to_mpq() - b.to_mpq());
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      Rational r;
      if (a.num_ == 0 || b.num_ == 0) return r;
      if (a.den_ == 1 && b.den_ == 1) {
        long long p;
        if (!__builtin_mul_overflow(a.num_, b.num_, &p) && p != INT64_MIN) {
          r.num_ = p;
          return r;
        }
      }
      long long g1 = std::gcd(a.num_, b.den_);
      long long g2 = std::gcd(b.num_, a.den_);
      __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
      __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
      r.set_small_or_big(n, d);
      return r;
    }
    Rational r;
    r.set_big(a.to_mpq() * b.to_mpq());
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: small values are never stored big
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      __int128 l = static_cast<__int128>(a.num_) * b.den_;
      __int128 r = static_cast<__int128>(b.num_) * a.den_;
      return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static __int128 abs128(__int128 x) { return x < 0 ? -x : x; }
  static __int128 gcd128(__int128 a, __int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static bool fits(__int128 x) { return x <= INT64_MAX && x > INT64_MIN; }
  static mpz_class to_mpz(__int128 x) {
    bool neg = x < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  // n/d with d != 0, arbitrary common factors.
  void set_reduced128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
    set_small_or_big(n, d);
  }
  // n/d already reduced, d > 0.
  void set_small_or_big(__int128 n, __int128 d) {
    if (fits(n) && fits(d)) {
      num_ = static_cast<long long>(n);
      den_ = static_cast<long long>(d);
      big_.reset();
      return;
    }
    mpq_class q(to_mpz(n), to_mpz(d));
    q.canonicalize();
    set_big(std::move(q));
  }
  void set_big(mpq_class q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() && q.get_num() != LONG_MIN) {
      num_ = q.get_num().get_si();
      den_ = q.get_den().get_si();
      big_.reset();
    } else {
      num_ = 0;
      den_ = 1;
      big_ = std::make_unique<mpq_class>(std::move(q));
    }
  }

  long long num_ = 0;
  long long den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Floor division for integers, matching Euclid's algorithm on signed values.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

}  // namespace mukai

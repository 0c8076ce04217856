#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include "acat/common.hpp"

namespace acat {

enum class RingKind { Integers, PrimeField, Rationals };

inline bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Base ring descriptor: Z, F_p (p prime) or Q.  Arithmetic is exact everywhere.
struct Ring {
  RingKind kind = RingKind::PrimeField;
  unsigned long p = 2;  // modulus, meaningful only for PrimeField

  static Ring integers() { return Ring{RingKind::Integers, 0}; }
  static Ring rationals() { return Ring{RingKind::Rationals, 0}; }
  static Ring prime_field(unsigned long p) {
    require(is_prime(p), "prime_field: modulus " + std::to_string(p) + " is not prime");
    return Ring{RingKind::PrimeField, p};
  }

  bool is_field() const { return kind != RingKind::Integers; }
  bool is_finite() const { return kind == RingKind::PrimeField; }

  std::string name() const {
    switch (kind) {
      case RingKind::Integers: return "Z";
      case RingKind::Rationals: return "Q";
      case RingKind::PrimeField: return "F" + std::to_string(p);
    }
    return "?";
  }

  // Parses "Z", "Q", "F2", "F5", "F_2", ...
  static Ring parse(const std::string& s) {
    if (s == "Z") return integers();
    if (s == "Q") return rationals();
    if (!s.empty() && s[0] == 'F') {
      std::string digits = s.substr(s.size() > 1 && s[1] == '_' ? 2 : 1);
      require(!digits.empty(), "Ring::parse: bad ring name '" + s + "'");
      return prime_field(std::stoul(digits));
    }
    throw usage_error("Ring::parse: unknown ring '" + s + "'");
  }

  friend bool operator==(const Ring& a, const Ring& b) = default;
};

// Exact ring element.  The active alternative matches the ring kind:
// PrimeField -> unsigned long in [0,p),  Integers -> mpz,  Rationals -> mpq.
class Scalar {
 public:
  Scalar() : ring_(Ring::prime_field(2)), v_(0ul) {}

  Scalar(const Ring& R, long x) : ring_(R) { init_from_long(x); }
  Scalar(const Ring& R, const mpz_class& x) : ring_(R) { init_from_mpz(x); }

  static Scalar zero(const Ring& R) { return Scalar(R, 0); }
  static Scalar one(const Ring& R) { return Scalar(R, 1); }

  static Scalar from_string(const Ring& R, const std::string& s) {
    if (R.kind == RingKind::Rationals) {
      mpq_class q(s);
      q.canonicalize();
      Scalar r;
      r.ring_ = R;
      r.v_ = q;
      return r;
    }
    return Scalar(R, mpz_class(s));
  }

  const Ring& ring() const { return ring_; }

  bool is_zero() const {
    switch (ring_.kind) {
      case RingKind::PrimeField: return fp() == 0;
      case RingKind::Integers: return z() == 0;
      case RingKind::Rationals: return q() == 0;
    }
    return true;
  }
  bool is_one() const {
    switch (ring_.kind) {
      case RingKind::PrimeField: return fp() == 1 % ring_.p;
      case RingKind::Integers: return z() == 1;
      case RingKind::Rationals: return q() == 1;
    }
    return false;
  }

  Scalar operator-() const {
    Scalar r = *this;
    switch (ring_.kind) {
      case RingKind::PrimeField: r.v_ = fp() == 0 ? 0ul : ring_.p - fp(); break;
      case RingKind::Integers: r.v_ = mpz_class(-z()); break;
      case RingKind::Rationals: r.v_ = mpq_class(-q()); break;
    }
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    Scalar r = a;
    switch (a.ring_.kind) {
      case RingKind::PrimeField: r.v_ = (a.fp() + b.fp()) % a.ring_.p; break;
      case RingKind::Integers: r.v_ = mpz_class(a.z() + b.z()); break;
      case RingKind::Rationals: r.v_ = mpq_class(a.q() + b.q()); break;
    }
    return r;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    Scalar r = a;
    switch (a.ring_.kind) {
      case RingKind::PrimeField: r.v_ = mulmod(a.fp(), b.fp(), a.ring_.p); break;
      case RingKind::Integers: r.v_ = mpz_class(a.z() * b.z()); break;
      case RingKind::Rationals: {
        mpq_class t = a.q() * b.q();
        t.canonicalize();
        r.v_ = t;
        break;
      }
    }
    return r;
  }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  bool is_unit() const {
    switch (ring_.kind) {
      case RingKind::PrimeField: return fp() != 0;
      case RingKind::Integers: return z() == 1 || z() == -1;
      case RingKind::Rationals: return q() != 0;
    }
    return false;
  }

  Scalar inverse() const {
    require(is_unit(), "Scalar::inverse: " + to_string() + " is not a unit in " + ring_.name());
    Scalar r = *this;
    switch (ring_.kind) {
      case RingKind::PrimeField: {
        // Fermat: p prime, fp != 0.
        unsigned long acc = 1, base = fp(), e = ring_.p - 2;
        while (e) {
          if (e & 1) acc = mulmod(acc, base, ring_.p);
          base = mulmod(base, base, ring_.p);
          e >>= 1;
        }
        r.v_ = acc;
        break;
      }
      case RingKind::Integers: r.v_ = z(); break;  // +-1 are self-inverse
      case RingKind::Rationals: {
        mpq_class t = 1 / q();
        t.canonicalize();
        r.v_ = t;
        break;
      }
    }
    return r;
  }

  // Exact division; fails (returns false) over Z when b does not divide a.
  bool divide_exact(const Scalar& b, Scalar& out) const {
    check_same(b);
    if (b.is_zero()) return false;
    if (ring_.kind == RingKind::Integers) {
      if (!mpz_divisible_p(z().get_mpz_t(), b.z().get_mpz_t())) return false;
      out = *this;
      out.v_ = mpz_class(z() / b.z());
      return true;
    }
    out = *this * b.inverse();
    return true;
  }

  // Integer payload (PrimeField lifts to [0,p)).  Usage error over Q with denominator.
  mpz_class as_integer() const {
    switch (ring_.kind) {
      case RingKind::PrimeField: return mpz_class(static_cast<unsigned long>(fp()));
      case RingKind::Integers: return z();
      case RingKind::Rationals:
        require(q().get_den() == 1, "Scalar::as_integer: not an integer");
        return q().get_num();
    }
    return 0;
  }

  std::string to_string() const {
    switch (ring_.kind) {
      case RingKind::PrimeField: return std::to_string(fp());
      case RingKind::Integers: return z().get_str();
      case RingKind::Rationals: return q().get_str();
    }
    return "?";
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.ring_ != b.ring_) return false;
    switch (a.ring_.kind) {
      case RingKind::PrimeField: return a.fp() == b.fp();
      case RingKind::Integers: return a.z() == b.z();
      case RingKind::Rationals: return a.q() == b.q();
    }
    return false;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Total order used only for deterministic container keys.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    require(a.ring_ == b.ring_, "Scalar: comparing over different rings");
    switch (a.ring_.kind) {
      case RingKind::PrimeField: return a.fp() < b.fp();
      case RingKind::Integers: return a.z() < b.z();
      case RingKind::Rationals: return a.q() < b.q();
    }
    return false;
  }

 private:
  Ring ring_;
  std::variant<unsigned long, mpz_class, mpq_class> v_;

  unsigned long fp() const { return std::get<unsigned long>(v_); }
  const mpz_class& z() const { return std::get<mpz_class>(v_); }
  const mpq_class& q() const { return std::get<mpq_class>(v_); }

  static unsigned long mulmod(unsigned long a, unsigned long b, unsigned long p) {
    return static_cast<unsigned long>((static_cast<unsigned __int128>(a) * b) % p);
  }

  void init_from_long(long x) {
    switch (ring_.kind) {
      case RingKind::PrimeField: {
        long m = x % static_cast<long>(ring_.p);
        if (m < 0) m += static_cast<long>(ring_.p);
        v_ = static_cast<unsigned long>(m);
        break;
      }
      case RingKind::Integers: v_ = mpz_class(x); break;
      case RingKind::Rationals: v_ = mpq_class(x); break;
    }
  }
  void init_from_mpz(const mpz_class& x) {
    switch (ring_.kind) {
      case RingKind::PrimeField: {
        mpz_class m = x % static_cast<unsigned long>(ring_.p);
        if (m < 0) m += static_cast<unsigned long>(ring_.p);
        v_ = m.get_ui();
        break;
      }
      case RingKind::Integers: v_ = x; break;
      case RingKind::Rationals: v_ = mpq_class(x); break;
    }
  }

  void check_same(const Scalar& b) const {
    require(ring_ == b.ring_, "Scalar: mixed rings " + ring_.name() + " / " + b.ring_.name());
  }
};

// (-1)^e as a scalar.
inline Scalar sign_scalar(const Ring& R, long e) {
  return ((e % 2 + 2) % 2 == 0) ? Scalar::one(R) : -Scalar::one(R);
}

}  // namespace acat

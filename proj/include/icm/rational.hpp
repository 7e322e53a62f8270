#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace icm {

// Exact arbitrary-precision fraction, always reduced with a positive
// denominator. Thin value wrapper over mpq_class that keeps GMP expression
// templates out of user code.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I n) : q_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)

  template <std::integral I, std::integral J>
  Rational(I num, J den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
  }

  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "a/b" or "a" with an optional sign. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  const mpq_class& get() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  // "a/b", or bare "a" when the denominator is 1.
  std::string str() const;
  double to_double() const { return q_.get_d(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Point of the unit square, ordered lexicographically.
struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

std::ostream& operator<<(std::ostream& os, const Point& p);

}  // namespace icm

template <>
struct std::hash<icm::Rational> {
  std::size_t operator()(const icm::Rational& r) const { return r.hash(); }
};

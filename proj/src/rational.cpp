#include "icm/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace icm {

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class to_mpz(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

std::size_t hash_mpz(mpz_srcptr z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) + 0x51ed270b;
  const std::size_t limbs = mpz_size(z);
  for (std::size_t i = 0; i < limbs; ++i)
    h = h * 1099511628211ULL ^ static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i)));
  return h;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!valid_integer(num, true))
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  mpz_class n = to_mpz(num);
  mpz_class d = 1;
  if (slash != std::string_view::npos) {
    const auto den = text.substr(slash + 1);
    if (!valid_integer(den, false))
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    d = to_mpz(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

std::size_t Rational::hash() const {
  const std::size_t h1 = hash_mpz(q_.get_num_mpz_t());
  const std::size_t h2 = hash_mpz(q_.get_den_mpz_t());
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << '(' << p.x << ", " << p.y << ')';
}

}  // namespace icm

#include "wqa/rational.hpp"

#include <ostream>

#include "wqa/errors.hpp"

namespace wqa {

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw Error("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  auto slash = text.find('/');
  auto check_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!check_int(num) || !check_int(den))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  mpq_class v{mpz_class(num), mpz_class(den)};
  if (v.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  v.canonicalize();
  return Rational(std::move(v));
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

long Rational::num_long() const {
  if (!v_.get_num().fits_slong_p()) throw Error("numerator does not fit in long");
  return v_.get_num().get_si();
}

long Rational::den_long() const {
  if (!v_.get_den().fits_slong_p()) throw Error("denominator does not fit in long");
  return v_.get_den().get_si();
}

Rational Rational::abs() const {
  return sign() < 0 ? -*this : *this;
}

Rational Rational::operator-() const {
  return Rational(mpq_class(-v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.v_ == 0) throw Error("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow(const Rational& base, unsigned exp) {
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), base.v_.get_num_mpz_t(), exp);
  mpz_pow_ui(r.get_den_mpz_t(), base.v_.get_den_mpz_t(), exp);
  r.canonicalize();  // base is canonical, so this only fixes signs for exp = 0
  return Rational(std::move(r));
}

const Rational& Rational::zero() {
  static const Rational z(0);
  return z;
}

const Rational& Rational::one() {
  static const Rational o(1);
  return o;
}

std::size_t Rational::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](const mpz_class& z) {
    h ^= std::hash<std::string>()(z.get_str()) + 0x9e3779b9 + (h << 6) + (h >> 2);
  };
  mix(v_.get_num());
  mix(v_.get_den());
  return h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

} // namespace wqa

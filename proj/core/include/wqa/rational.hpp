#ifndef WQA_RATIONAL_HPP
#define WQA_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace wqa {

/// Exact rational number in canonical form: denominator > 0 and
/// gcd(|numerator|, denominator) = 1.  All weights, thresholds and word
/// values in the library are carried by this type; no floating point
/// ever enters the value path.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}                    // NOLINT: implicit by design
  Rational(long num, long den);
  static Rational parse(std::string_view text);  // "p/q" or "p"

  /// Canonical "p/q" rendering (integers print as "p/1").
  std::string str() const;

  long num_long() const;  // throws Error if it does not fit
  long den_long() const;
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  Rational abs() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  static Rational pow(const Rational& base, unsigned exp);
  static const Rational& zero();
  static const Rational& one();

  /// Hash over the canonical representation (for dedup tables).
  std::size_t hash() const;

private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace wqa

template <> struct std::hash<wqa::Rational> {
  std::size_t operator()(const wqa::Rational& r) const { return r.hash(); }
};

#endif

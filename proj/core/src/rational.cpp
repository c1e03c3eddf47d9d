#include "nichols/rational.hpp"

#include <limits>
#include <stdexcept>

namespace nichols {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(__int128 v) {
  return v >= std::numeric_limits<int64_t>::min() + 1 && v <= std::numeric_limits<int64_t>::max();
}

BigInt to_bigint(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<uint64_t>(u);
  return neg ? BigInt(-r) : r;
}

}  // namespace

Rational::Rational(int64_t n, int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  *this = from_i128(n, d);
}

Rational::Rational(const BigRational& r) {
  const BigInt& n = boost::multiprecision::numerator(r);
  const BigInt& d = boost::multiprecision::denominator(r);
  static const BigInt lo = BigInt(std::numeric_limits<int64_t>::min()) + 1;
  static const BigInt hi = BigInt(std::numeric_limits<int64_t>::max());
  if (n >= lo && n <= hi && d <= hi) {
    num_ = static_cast<int64_t>(n);
    den_ = static_cast<int64_t>(d);
  } else {
    big_ = std::make_shared<const BigRational>(r);
    num_ = 0;
    den_ = 1;
  }
}

Rational Rational::from_i128(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  if (n == 0) return r;
  if (fits64(n) && fits64(d)) {
    r.num_ = static_cast<int64_t>(n);
    r.den_ = static_cast<int64_t>(d);
    return r;
  }
  return Rational(BigRational(to_bigint(n), to_bigint(d)));
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigRational(BigInt(s)));
    }
    BigInt n(s.substr(0, slash));
    BigInt d(s.substr(slash + 1));
    if (d == 0) throw std::domain_error("rational with zero denominator");
    return Rational(BigRational(n, d));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

bool Rational::is_integer() const { return big_ ? denominator(*big_) == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return big_->sign();
  return (num_ > 0) - (num_ < 0);
}

BigRational Rational::to_big() const {
  if (big_) return *big_;
  return BigRational(num_, den_);
}

std::string Rational::to_string() const {
  if (big_) return big_->str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (big_) return Rational(BigRational(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_i128(static_cast<__int128>(a.num_) + b.num_, 1);
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return Rational::from_i128(n, d);
  }
  return Rational(a.to_big() + b.to_big());
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    // cross-cancel first so the products stay small
    __int128 g1 = gcd128(a.num_, b.den_);
    __int128 g2 = gcd128(b.num_, a.den_);
    __int128 n = (static_cast<__int128>(a.num_) / g1) * (b.num_ / g2);
    __int128 d = (static_cast<__int128>(a.den_) / g2) * (b.den_ / g1);
    return Rational::from_i128(n, d);
  }
  return Rational(a.to_big() * b.to_big());
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational");
  if (big_) return Rational(BigRational(1) / *big_);
  return from_i128(den_, num_);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a big value never equals a fast-path value
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }
  BigRational x = a.to_big(), y = b.to_big();
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

size_t Rational::hash() const {
  if (big_) return std::hash<std::string>()(big_->str());
  return std::hash<int64_t>()(num_) * 1000003u ^ std::hash<int64_t>()(den_);
}

}  // namespace nichols

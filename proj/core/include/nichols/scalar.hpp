#pragma once

#include "nichols/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nichols {

struct NotAUnit : std::domain_error {
  using std::domain_error::domain_error;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// a + b*w with w^2 = -1 - w.
class QOmega {
 public:
  QOmega() = default;
  QOmega(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QOmega(int64_t a) : a_(a) {}              // NOLINT(google-explicit-constructor)
  QOmega(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QOmega omega() { return QOmega(0, 1); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_one() const { return a_.is_one() && b_.is_zero(); }

  QOmega operator-() const { return QOmega(-a_, -b_); }
  friend QOmega operator+(const QOmega& x, const QOmega& y) { return QOmega(x.a_ + y.a_, x.b_ + y.b_); }
  friend QOmega operator-(const QOmega& x, const QOmega& y) { return QOmega(x.a_ - y.a_, x.b_ - y.b_); }
  friend QOmega operator*(const QOmega& x, const QOmega& y);
  QOmega& operator+=(const QOmega& y) { return *this = *this + y; }
  QOmega& operator-=(const QOmega& y) { return *this = *this - y; }
  QOmega& operator*=(const QOmega& y) { return *this = *this * y; }

  // Galois conjugate w -> w^2.
  QOmega conjugate() const { return QOmega(a_ - b_, -b_); }
  Rational norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
  QOmega inverse() const;

  friend bool operator==(const QOmega& x, const QOmega& y) = default;

  std::string to_string() const;
  size_t hash() const { return a_.hash() * 31u + b_.hash(); }

 private:
  Rational a_;
  Rational b_;
};

// Laurent polynomial in q (= q1) with coefficients in Q(w); q2 := -w q^-1.
// Invariant: terms sorted by strictly increasing exponent, no zero coefficient.
class Scalar {
 public:
  struct Term {
    int64_t exp;
    QOmega coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };
  using Terms = boost::container::small_vector<Term, 1>;

  Scalar() = default;
  Scalar(int64_t c) : Scalar(QOmega(c)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational c) : Scalar(QOmega(std::move(c))) {}  // NOLINT(google-explicit-constructor)
  Scalar(QOmega c, int64_t exp = 0);  // NOLINT(google-explicit-constructor)

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar omega() { return Scalar(QOmega::omega()); }
  static Scalar q1() { return Scalar(QOmega(1), 1); }
  static Scalar q2() { return Scalar(-QOmega::omega(), -1); }
  static Scalar monomial(QOmega c, int64_t exp) { return Scalar(std::move(c), exp); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].exp == 0 && terms_[0].coeff.is_one(); }
  bool is_unit() const { return terms_.size() == 1; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == 0); }
  // Only meaningful when is_constant().
  QOmega constant() const { return terms_.empty() ? QOmega() : terms_[0].coeff; }

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

  // Throws NotAUnit unless the value is a single q-monomial.
  Scalar inverse() const;
  Scalar pow(int64_t e) const;

  friend bool operator==(const Scalar& x, const Scalar& y) { return x.terms_ == y.terms_; }

  std::string to_string() const;
  static Scalar parse(std::string_view text);
  // Named constants of the text grammar: w, omega, q, q1, q2.
  static std::optional<Scalar> symbol(std::string_view name);
  size_t hash() const;

 private:
  Terms terms_;
};

// Element of Q(zeta_n) in the power basis 1, z, ..., z^{phi(n)-1}.
// Binary operations on different orders lift both sides to the lcm.
class CyclotomicNumber {
 public:
  CyclotomicNumber() : CyclotomicNumber(1) {}
  explicit CyclotomicNumber(int order);
  CyclotomicNumber(int order, std::vector<Rational> coeffs);

  static CyclotomicNumber from_rational(const Rational& r, int order = 1);
  static CyclotomicNumber zeta_power(int order, int64_t k);
  static CyclotomicNumber one() { return from_rational(1); }
  static CyclotomicNumber zero() { return CyclotomicNumber(1); }

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  bool is_one() const;

  CyclotomicNumber lift(int order) const;

  CyclotomicNumber operator-() const;
  friend CyclotomicNumber operator+(const CyclotomicNumber& x, const CyclotomicNumber& y);
  friend CyclotomicNumber operator-(const CyclotomicNumber& x, const CyclotomicNumber& y);
  friend CyclotomicNumber operator*(const CyclotomicNumber& x, const CyclotomicNumber& y);
  friend CyclotomicNumber operator/(const CyclotomicNumber& x, const CyclotomicNumber& y) { return x * y.inverse(); }
  CyclotomicNumber& operator+=(const CyclotomicNumber& y) { return *this = *this + y; }
  CyclotomicNumber& operator-=(const CyclotomicNumber& y) { return *this = *this - y; }
  CyclotomicNumber& operator*=(const CyclotomicNumber& y) { return *this = *this * y; }

  CyclotomicNumber inverse() const;
  CyclotomicNumber pow(int64_t e) const;
  // Smallest k > 0 with x^k = 1, if x is a root of unity.
  std::optional<int> root_of_unity_order() const;

  friend bool operator==(const CyclotomicNumber& x, const CyclotomicNumber& y);

  std::string to_string() const;
  static CyclotomicNumber parse(std::string_view text);
  // w (order 3), i (order 4) and zN (primitive N-th root).
  static std::optional<CyclotomicNumber> symbol(std::string_view name);
  size_t hash() const;

 private:
  int order_;
  std::vector<Rational> coeffs_;
};

// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<int64_t>& cyclotomic_polynomial(int n);
int euler_phi(int n);

// Ring map Q(w)[q^{+-1}] -> Q(zeta_n): w maps to zeta_n^{n/3}, q to image_of_q1.
class Specialization {
 public:
  Specialization(int n, CyclotomicNumber image_of_q1);
  // q1 -> zeta_n^k.
  static Specialization q1_to_zeta_power(int n, int64_t k);
  static Specialization q1_to_omega() { return q1_to_zeta_power(3, 1); }

  int n() const { return n_; }
  const CyclotomicNumber& image_of_q1() const { return q1_; }
  const CyclotomicNumber& image_of_omega() const { return w_; }

  CyclotomicNumber operator()(const Scalar& a) const;
  CyclotomicNumber operator()(const QOmega& a) const;

  std::string to_string() const;
  // Accepts "w", "-w", "1", "z24^5", "zeta(24,5)"-free grammar: any CyclotomicNumber expression.
  static Specialization parse(std::string_view q1_text);

 private:
  int n_;
  CyclotomicNumber q1_;
  CyclotomicNumber q1_inv_;
  CyclotomicNumber w_;
};

std::string to_string(const Scalar& s);
std::string to_string(const CyclotomicNumber& c);

// Coefficient-field traits used by the templated algebra code.
template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Scalar> {
  static const char* name() { return "Q(w)[q1^+-1]"; }
  static std::optional<Scalar> symbol(std::string_view s) { return Scalar::symbol(s); }
  static Scalar from_rational(const Rational& r) { return Scalar(r); }
  static bool is_unit(const Scalar& s) { return s.is_unit(); }
  // Scalars whose printed form needs no parentheses when followed by a word.
  static bool is_atomic(const Scalar& s) { return s.terms().size() == 1 && (s.terms()[0].coeff.a().is_zero() || s.terms()[0].coeff.b().is_zero()); }
};

template <>
struct FieldTraits<CyclotomicNumber> {
  static const char* name() { return "Q(zeta_n)"; }
  static std::optional<CyclotomicNumber> symbol(std::string_view s) { return CyclotomicNumber::symbol(s); }
  static CyclotomicNumber from_rational(const Rational& r) { return CyclotomicNumber::from_rational(r); }
  static bool is_unit(const CyclotomicNumber& c) { return !c.is_zero(); }
  static bool is_atomic(const CyclotomicNumber&) { return false; }
};

}  // namespace nichols

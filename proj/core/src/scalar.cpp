#include "nichols/scalar.hpp"

#include "nichols/expr_parse.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace nichols {

// ---------------------------------------------------------------- QOmega

QOmega operator*(const QOmega& x, const QOmega& y) {
  // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, w^2 = -1 - w
  const Rational bd = x.b_ * y.b_;
  return QOmega(x.a_ * y.a_ - bd, x.a_ * y.b_ + x.b_ * y.a_ - bd);
}

QOmega QOmega::inverse() const {
  Rational n = norm();
  if (n.is_zero()) throw NotAUnit("inverse of zero in Q(w)");
  Rational inv = n.inverse();
  QOmega c = conjugate();
  return QOmega(c.a_ * inv, c.b_ * inv);
}

std::string QOmega::to_string() const {
  if (b_.is_zero()) return a_.to_string();
  std::string wpart;
  Rational mag = b_.sign() < 0 ? -b_ : b_;
  wpart = mag.is_one() ? "w" : mag.to_string() + "*w";
  if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + wpart;
  return a_.to_string() + (b_.sign() < 0 ? "-" : "+") + wpart;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(QOmega c, int64_t exp) {
  if (!c.is_zero()) terms_.push_back(Term{exp, std::move(c)});
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

Scalar::Terms merge(const Scalar::Terms& x, const Scalar::Terms& y, bool subtract) {
  Scalar::Terms out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].exp < y[j].exp)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].exp < x[i].exp) {
      out.push_back(Scalar::Term{y[j].exp, subtract ? -y[j].coeff : y[j].coeff});
      ++j;
    } else {
      QOmega c = subtract ? x[i].coeff - y[j].coeff : x[i].coeff + y[j].coeff;
      if (!c.is_zero()) out.push_back(Scalar::Term{x[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Scalar operator+(const Scalar& x, const Scalar& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  Scalar r;
  r.terms_ = merge(x.terms_, y.terms_, false);
  return r;
}

Scalar operator-(const Scalar& x, const Scalar& y) {
  if (y.is_zero()) return x;
  Scalar r;
  r.terms_ = merge(x.terms_, y.terms_, true);
  return r;
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  Scalar r;
  if (x.is_zero() || y.is_zero()) return r;
  if (x.terms_.size() == 1 && y.terms_.size() == 1) {
    r.terms_.push_back(Scalar::Term{x.terms_[0].exp + y.terms_[0].exp, x.terms_[0].coeff * y.terms_[0].coeff});
    return r;
  }
  std::map<int64_t, QOmega> acc;
  for (const auto& s : x.terms_)
    for (const auto& t : y.terms_) acc[s.exp + t.exp] += s.coeff * t.coeff;
  for (auto& [e, c] : acc)
    if (!c.is_zero()) r.terms_.push_back(Scalar::Term{e, std::move(c)});
  return r;
}

Scalar Scalar::inverse() const {
  if (terms_.size() != 1) throw NotAUnit("scalar '" + to_string() + "' is not a unit");
  return Scalar(terms_[0].coeff.inverse(), -terms_[0].exp);
}

Scalar Scalar::pow(int64_t e) const {
  Scalar base = e < 0 ? inverse() : *this;
  uint64_t n = e < 0 ? static_cast<uint64_t>(-e) : static_cast<uint64_t>(e);
  Scalar r = one();
  while (n) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

size_t Scalar::hash() const {
  size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& t : terms_) h = (h ^ (std::hash<int64_t>()(t.exp) + t.coeff.hash())) * 1099511628211ull;
  return h;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::string piece;
    if (t.exp == 0) {
      piece = t.coeff.to_string();
    } else {
      std::string qpart = t.exp == 1 ? "q" : "q^" + std::to_string(t.exp);
      const QOmega& c = t.coeff;
      if (c.is_one()) piece = qpart;
      else if ((-c).is_one()) piece = "-" + qpart;
      else if (c.a().is_zero() || c.b().is_zero()) piece = c.to_string() + "*" + qpart;
      else piece = "(" + c.to_string() + ")*" + qpart;
    }
    if (!out.empty() && piece[0] != '-') out += "+";
    out += piece;
  }
  return out;
}

std::optional<Scalar> Scalar::symbol(std::string_view name) {
  if (name == "w" || name == "omega") return Scalar::omega();
  if (name == "q" || name == "q1") return Scalar::q1();
  if (name == "q2") return Scalar::q2();
  return std::nullopt;
}

Scalar Scalar::parse(std::string_view text) {
  detail::ExprParser<Scalar> p(text, &Scalar::symbol, [](const Rational& r) { return Scalar(r); });
  return p.parse();
}

std::string to_string(const Scalar& s) { return s.to_string(); }

// ---------------------------------------------------------------- cyclotomics

int euler_phi(int n) {
  if (n <= 0) throw std::invalid_argument("euler_phi of non-positive integer");
  int result = n, m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

std::vector<int64_t> poly_exact_div(std::vector<int64_t> num, const std::vector<int64_t>& den) {
  // den is monic
  std::vector<int64_t> q(num.size() - den.size() + 1, 0);
  for (size_t i = q.size(); i-- > 0;) {
    int64_t c = num[i + den.size() - 1];
    q[i] = c;
    for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  return q;
}

}  // namespace

const std::vector<int64_t>& cyclotomic_polynomial(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<int64_t>> cache;
  if (n <= 0) throw std::invalid_argument("cyclotomic polynomial of non-positive order");
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  // x^n - 1 = prod_{d | n} Phi_d
  std::vector<int64_t> p(static_cast<size_t>(n) + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    auto it = cache.find(d);
    if (it == cache.end()) {
      // divisors of d are divisors of n below d, hence already cached
      std::vector<int64_t> pd(static_cast<size_t>(d) + 1, 0);
      pd[0] = -1;
      pd[d] = 1;
      for (int e = 1; e < d; ++e)
        if (d % e == 0) pd = poly_exact_div(pd, cache.at(e));
      it = cache.emplace(d, std::move(pd)).first;
    }
    p = poly_exact_div(p, it->second);
  }
  return cache.emplace(n, std::move(p)).first->second;
}

namespace {

std::vector<Rational> reduce_mod_phi(std::vector<Rational> poly, int n) {
  const auto& phi = cyclotomic_polynomial(n);
  const size_t deg = phi.size() - 1;
  for (size_t i = poly.size(); i-- > deg;) {
    if (poly[i].is_zero()) continue;
    Rational c = poly[i];
    for (size_t j = 0; j <= deg; ++j)
      if (phi[j] != 0) poly[i - deg + j] -= c * Rational(phi[j]);
  }
  poly.resize(deg);
  return poly;
}

}  // namespace

CyclotomicNumber::CyclotomicNumber(int order) : order_(order) {
  if (order <= 0) throw std::invalid_argument("cyclotomic order must be positive");
  coeffs_.assign(static_cast<size_t>(euler_phi(order)), Rational());
}

CyclotomicNumber::CyclotomicNumber(int order, std::vector<Rational> coeffs) : order_(order) {
  if (order <= 0) throw std::invalid_argument("cyclotomic order must be positive");
  coeffs_ = reduce_mod_phi(std::move(coeffs), order);
}

CyclotomicNumber CyclotomicNumber::from_rational(const Rational& r, int order) {
  CyclotomicNumber c(order);
  c.coeffs_[0] = r;
  return c;
}

CyclotomicNumber CyclotomicNumber::zeta_power(int order, int64_t k) {
  int64_t m = ((k % order) + order) % order;
  std::vector<Rational> p(static_cast<size_t>(std::max<int64_t>(m + 1, 1)), Rational());
  p[m] = 1;
  return CyclotomicNumber(order, std::move(p));
}

bool CyclotomicNumber::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& r) { return r.is_zero(); });
}

bool CyclotomicNumber::is_one() const {
  if (!coeffs_[0].is_one()) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& r) { return r.is_zero(); });
}

CyclotomicNumber CyclotomicNumber::lift(int order) const {
  if (order == order_) return *this;
  if (order % order_ != 0) throw std::invalid_argument("cannot lift to an order that is not a multiple");
  const int step = order / order_;
  std::vector<Rational> p(coeffs_.size() * step + 1, Rational());
  for (size_t i = 0; i < coeffs_.size(); ++i) p[i * step] = coeffs_[i];
  return CyclotomicNumber(order, std::move(p));
}

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

namespace {

int common_order(int a, int b) { return std::lcm(a, b); }

}  // namespace

CyclotomicNumber operator+(const CyclotomicNumber& x, const CyclotomicNumber& y) {
  if (x.order_ != y.order_) {
    int n = common_order(x.order_, y.order_);
    return x.lift(n) + y.lift(n);
  }
  CyclotomicNumber r = x;
  for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += y.coeffs_[i];
  return r;
}

CyclotomicNumber operator-(const CyclotomicNumber& x, const CyclotomicNumber& y) { return x + (-y); }

CyclotomicNumber operator*(const CyclotomicNumber& x, const CyclotomicNumber& y) {
  if (x.order_ != y.order_) {
    int n = common_order(x.order_, y.order_);
    return x.lift(n) * y.lift(n);
  }
  std::vector<Rational> p(x.coeffs_.size() + y.coeffs_.size(), Rational());
  for (size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (x.coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < y.coeffs_.size(); ++j)
      if (!y.coeffs_[j].is_zero()) p[i + j] += x.coeffs_[i] * y.coeffs_[j];
  }
  return CyclotomicNumber(x.order_, std::move(p));
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw NotAUnit("inverse of zero cyclotomic number");
  // Solve M v = e_0 where column j of M is this * z^j.
  const size_t d = coeffs_.size();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
  for (size_t j = 0; j < d; ++j) {
    CyclotomicNumber col = *this * zeta_power(order_, static_cast<int64_t>(j));
    for (size_t i = 0; i < d; ++i) m[i][j] = col.coeffs_[i];
  }
  m[0][d] = 1;
  for (size_t c = 0; c < d; ++c) {
    size_t piv = c;
    while (piv < d && m[piv][c].is_zero()) ++piv;
    if (piv == d) throw NotAUnit("singular multiplication matrix");
    std::swap(m[piv], m[c]);
    Rational inv = m[c][c].inverse();
    for (size_t k = c; k <= d; ++k) m[c][k] *= inv;
    for (size_t r = 0; r < d; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      Rational f = m[r][c];
      for (size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<Rational> v(d);
  for (size_t i = 0; i < d; ++i) v[i] = m[i][d];
  return CyclotomicNumber(order_, std::move(v));
}

CyclotomicNumber CyclotomicNumber::pow(int64_t e) const {
  CyclotomicNumber base = e < 0 ? inverse() : *this;
  uint64_t n = e < 0 ? static_cast<uint64_t>(-e) : static_cast<uint64_t>(e);
  CyclotomicNumber r = from_rational(1, order_);
  while (n) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

std::optional<int> CyclotomicNumber::root_of_unity_order() const {
  // Roots of unity in Q(zeta_n) have order dividing lcm(2, n).
  const int bound = std::lcm(2, order_);
  CyclotomicNumber p = *this;
  for (int k = 1; k <= bound; ++k) {
    if (p.is_one()) return k;
    p *= *this;
  }
  return std::nullopt;
}

bool operator==(const CyclotomicNumber& x, const CyclotomicNumber& y) {
  if (x.order_ == y.order_) return x.coeffs_ == y.coeffs_;
  int n = common_order(x.order_, y.order_);
  return x.lift(n).coeffs_ == y.lift(n).coeffs_;
}

std::string CyclotomicNumber::to_string() const {
  std::string out;
  const std::string z = "z" + std::to_string(order_);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c.is_zero()) continue;
    std::string piece;
    if (i == 0) {
      piece = c.to_string();
    } else {
      std::string zp = i == 1 ? z : z + "^" + std::to_string(i);
      if (c.is_one()) piece = zp;
      else if ((-c).is_one()) piece = "-" + zp;
      else piece = c.to_string() + "*" + zp;
    }
    if (!out.empty() && piece[0] != '-') out += "+";
    out += piece;
  }
  return out.empty() ? "0" : out;
}

std::optional<CyclotomicNumber> CyclotomicNumber::symbol(std::string_view name) {
  if (name == "w" || name == "omega") return zeta_power(3, 1);
  if (name == "i") return zeta_power(4, 1);
  if (name.size() > 1 && name[0] == 'z' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    int n = std::stoi(std::string(name.substr(1)));
    if (n <= 0) return std::nullopt;
    return zeta_power(n, 1);
  }
  return std::nullopt;
}

CyclotomicNumber CyclotomicNumber::parse(std::string_view text) {
  detail::ExprParser<CyclotomicNumber> p(text, &CyclotomicNumber::symbol,
                                         [](const Rational& r) { return from_rational(r); });
  return p.parse();
}

size_t CyclotomicNumber::hash() const {
  // Consistent with == only between values of the same order.
  size_t h = 0;
  for (const auto& c : coeffs_) h = h * 1000003u ^ c.hash();
  return h;
}

std::string to_string(const CyclotomicNumber& c) { return c.to_string(); }

// ---------------------------------------------------------------- specialization

Specialization::Specialization(int n, CyclotomicNumber image_of_q1) : n_(n) {
  if (n <= 0 || n % 3 != 0) throw std::invalid_argument("specialization order must be a positive multiple of 3");
  if (n % image_of_q1.order() != 0)
    throw std::invalid_argument("image of q1 does not live in Q(zeta_" + std::to_string(n) + ")");
  q1_ = image_of_q1.lift(n);
  if (!q1_.root_of_unity_order())
    throw std::invalid_argument("image of q1 must be a root of unity, got " + q1_.to_string());
  q1_inv_ = q1_.inverse();
  w_ = CyclotomicNumber::zeta_power(n, n / 3);
}

Specialization Specialization::q1_to_zeta_power(int n, int64_t k) {
  return Specialization(n, CyclotomicNumber::zeta_power(n, k));
}

CyclotomicNumber Specialization::operator()(const QOmega& a) const {
  return CyclotomicNumber::from_rational(a.a(), n_) + CyclotomicNumber::from_rational(a.b(), n_) * w_;
}

CyclotomicNumber Specialization::operator()(const Scalar& s) const {
  CyclotomicNumber r(n_);
  for (const auto& t : s.terms()) {
    CyclotomicNumber q = t.exp >= 0 ? q1_.pow(t.exp) : q1_inv_.pow(-t.exp);
    r += (*this)(t.coeff) * q;
  }
  return r;
}

std::string Specialization::to_string() const { return "q1 -> " + q1_.to_string(); }

Specialization Specialization::parse(std::string_view q1_text) {
  CyclotomicNumber v = CyclotomicNumber::parse(q1_text);
  int n = std::lcm(3, v.order());
  return Specialization(n, v);
}

}  // namespace nichols

#include "strata/poly.hpp"

#include <algorithm>
#include <sstream>

#include "strata/matrix.hpp"

namespace strata {

UPoly::UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

UPoly UPoly::monomial(const Rational& c, int k) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const Rational& s) const {
  std::vector<Rational> r = c_;
  for (auto& x : r) x *= s;
  return UPoly(std::move(r));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  return *this * Rational(1 / lead());
}

Rational UPoly::eval(const Rational& x) const {
  Rational r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

double UPoly::eval(double x) const {
  double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->get_d();
  return r;
}

std::string UPoly::to_string(const std::string& var) const {
  return MultiPoly::from_univariate(*this, 0).to_string({var});
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rational> q(a.degree() - db + 1, Rational(0));
  for (int k = a.degree(); k >= db; --k) {
    if (rem[k] == 0) continue;
    Rational f = rem[k] / b.lead();
    q[k - db] = f;
    for (int i = 0; i <= db; ++i) rem[k - db + i] -= f * b.coeff(i);
  }
  rem.resize(db);
  return {UPoly(std::move(q)), UPoly(std::move(rem))};
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& p) {
  // Yun's algorithm.
  std::vector<std::pair<UPoly, int>> out;
  if (p.degree() < 1) return out;
  UPoly dp = p.derivative();
  UPoly a = gcd(p, dp);
  UPoly b = divmod(p, a).first;
  UPoly c = divmod(dp, a).first;
  UPoly d = c - b.derivative();
  int k = 1;
  while (b.degree() >= 1) {
    UPoly g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g.monic(), k);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++k;
  }
  return out;
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() < 1) return p.is_zero() ? p : UPoly::constant(1);
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

int order_at(const UPoly& p, const Rational& x) {
  if (p.is_zero()) throw ZeroPolynomial("order of the zero polynomial");
  int k = 0;
  UPoly q = p;
  const UPoly lin({-x, Rational(1)});
  while (q.eval(x) == 0) {
    q = divmod(q, lin).first;
    ++k;
  }
  return k;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> s{p, p.derivative()};
  while (!s.back().is_zero()) {
    UPoly r = divmod(s[s.size() - 2], s.back()).second;
    if (r.is_zero()) break;
    s.push_back(-r);
  }
  if (s.back().is_zero()) s.pop_back();
  return s;
}

namespace {

int variations(const std::vector<UPoly>& seq, const Rational& x) {
  int v = 0, last = 0;
  for (const auto& f : seq) {
    int s = f.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

int sturm_count(const std::vector<UPoly>& seq, const Rational& a, const Rational& b) {
  return variations(seq, a) - variations(seq, b);
}

Rational root_bound(const UPoly& p) {
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) m = std::max<Rational>(m, abs(p.coeff(i) / p.lead()));
  return m + 1;
}

std::vector<RootInterval> isolate_real_roots(const UPoly& p) {
  std::vector<RootInterval> out;
  UPoly q = squarefree_part(p);
  if (q.degree() < 1) return out;
  const auto seq = sturm_sequence(q);
  const Rational B = root_bound(q);
  // Work list of (lo, hi] with endpoints that are not roots.
  struct Item {
    Rational lo, hi;
    int count;
  };
  std::vector<Item> stack{{-B, B, sturm_count(seq, -B, B)}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.count == 0) continue;
    if (it.count == 1) {
      out.push_back({it.lo, it.hi});
      continue;
    }
    Rational mid = (it.lo + it.hi) / 2;
    if (q.eval(mid) == 0) {
      Rational d = (it.hi - it.lo) / 4;
      while (q.eval(mid - d) == 0 || q.eval(mid + d) == 0 || sturm_count(seq, mid - d, mid + d) != 1) d /= 2;
      out.push_back({mid, mid});
      stack.push_back({it.lo, mid - d, sturm_count(seq, it.lo, mid - d)});
      stack.push_back({mid + d, it.hi, sturm_count(seq, mid + d, it.hi)});
    } else {
      int left = sturm_count(seq, it.lo, mid);
      stack.push_back({it.lo, mid, left});
      stack.push_back({mid, it.hi, it.count - left});
    }
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

RootInterval refine_root(const UPoly& p, RootInterval r, const Rational& w) {
  if (r.exact()) return r;
  int slo = p.sign_at(r.lo);
  while (r.hi - r.lo > w) {
    Rational mid = (r.lo + r.hi) / 2;
    int s = p.sign_at(mid);
    if (s == 0) return {mid, mid};
    if (s == slo) r.lo = mid;
    else r.hi = mid;
  }
  return r;
}

bool has_root_in(const UPoly& p, const RootInterval& r) {
  if (p.degree() < 1) return false;
  if (r.exact()) return p.eval(r.lo) == 0;
  return sturm_count(sturm_sequence(p), r.lo, r.hi) > 0;
}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) t_[{}] = c;
}

MultiPoly MultiPoly::var(int idx, int power) {
  Monomial m(idx + 1, 0);
  m[idx] = power;
  if (power == 0) m.clear();
  MultiPoly p;
  p.t_[m] = 1;
  return p;
}

MultiPoly MultiPoly::from_univariate(const UPoly& p, int idx) {
  MultiPoly r;
  for (int k = 0; k <= p.degree(); ++k)
    if (p.coeff(k) != 0) r += MultiPoly::var(idx, k) * MultiPoly(p.coeff(k));
  return r;
}

Rational MultiPoly::constant_term() const {
  auto it = t_.find(Monomial{});
  return it == t_.end() ? Rational(0) : it->second;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [m, c] : o.t_) {
    auto& x = t_[m];
    x += c;
    if (x == 0) t_.erase(m);
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [m, c] : o.t_) {
    auto& x = t_[m];
    x -= c;
    if (x == 0) t_.erase(m);
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) {
      Monomial m(std::max(ma.size(), mb.size()), 0);
      for (size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      auto& x = r.t_[m];
      x += ca * cb;
      if (x == 0) r.t_.erase(m);
    }
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

namespace {

int exponent(const Monomial& m, int var) { return var < static_cast<int>(m.size()) ? m[var] : 0; }

Monomial with_exponent(Monomial m, int var, int e) {
  if (var >= static_cast<int>(m.size())) m.resize(var + 1, 0);
  m[var] = e;
  while (!m.empty() && m.back() == 0) m.pop_back();
  return m;
}

}  // namespace

int MultiPoly::degree(int var) const {
  int d = -1;
  for (const auto& [m, c] : t_) d = std::max(d, exponent(m, var));
  return d;
}

MultiPoly MultiPoly::coeff(int var, int k) const {
  MultiPoly r;
  for (const auto& [m, c] : t_)
    if (exponent(m, var) == k) r.t_[with_exponent(m, var, 0)] = c;
  return r;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly r;
  for (const auto& [m, c] : t_) {
    int e = exponent(m, var);
    if (e == 0) continue;
    r.t_[with_exponent(m, var, e - 1)] = c * e;
  }
  return r;
}

MultiPoly MultiPoly::integrate(int var) const {
  MultiPoly r;
  for (const auto& [m, c] : t_) {
    int e = exponent(m, var);
    r.t_[with_exponent(m, var, e + 1)] = c / (e + 1);
  }
  return r;
}

MultiPoly MultiPoly::substitute(int var, const Rational& v) const {
  MultiPoly r;
  for (const auto& [m, c] : t_) {
    int e = exponent(m, var);
    Rational f = c;
    for (int k = 0; k < e; ++k) f *= v;
    MultiPoly term;
    if (f != 0) term.t_[with_exponent(m, var, 0)] = f;
    r += term;
  }
  return r;
}

MultiPoly MultiPoly::substitute(int var, const MultiPoly& p) const {
  MultiPoly r;
  const int d = degree(var);
  MultiPoly pw(1);
  for (int k = 0; k <= d; ++k) {
    r += coeff(var, k) * pw;
    pw = pw * p;
  }
  return r;
}

UPoly MultiPoly::to_univariate(int var) const {
  std::vector<Rational> c(std::max(degree(var) + 1, 0), Rational(0));
  for (const auto& [m, x] : t_) {
    for (int i = 0; i < static_cast<int>(m.size()); ++i)
      if (i != var && m[i] != 0) throw std::domain_error("polynomial is not univariate");
    c[exponent(m, var)] = x;
  }
  return UPoly(std::move(c));
}

int MultiPoly::num_vars() const {
  int k = 0;
  for (const auto& [m, c] : t_) k = std::max(k, static_cast<int>(m.size()));
  return k;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::vector<std::pair<Monomial, Rational>> terms(t_.begin(), t_.end());
  auto total = [](const Monomial& m) {
    int s = 0;
    for (int e : m) s += e;
    return s;
  };
  std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    int ta = total(a.first), tb = total(b.first);
    if (ta != tb) return ta > tb;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "v" + std::to_string(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) os << strata::to_string(mag);
    else if (mag == 1) os << mono;
    else os << strata::to_string(mag) << "*" << mono;
  }
  return os.str();
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto& [lb, cb] = *b.terms().rbegin();
  MultiPoly q, rem = a;
  while (!rem.is_zero()) {
    const auto& [lr, cr] = *rem.terms().rbegin();
    Monomial m(std::max(lr.size(), lb.size()), 0);
    for (size_t i = 0; i < m.size(); ++i) {
      int e = exponent(lr, static_cast<int>(i)) - exponent(lb, static_cast<int>(i));
      if (e < 0) throw std::domain_error("polynomial division is not exact");
      m[i] = e;
    }
    while (!m.empty() && m.back() == 0) m.pop_back();
    MultiPoly term(cr / cb);
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i]) term = term * MultiPoly::var(static_cast<int>(i), m[i]);
    q += term;
    rem -= term * b;
  }
  return q;
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, int var) {
  if (p.is_zero() || q.is_zero()) throw ZeroPolynomial("resultant of a zero polynomial");
  const int m = p.degree(var), k = q.degree(var), N = m + k;
  if (N == 0) return MultiPoly(1);
  Matrix<MultiPoly> S(N, N);
  for (int r = 0; r < k; ++r)
    for (int i = 0; i <= m; ++i) S(r, r + i) = p.coeff(var, m - i);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= k; ++i) S(k + r, r + i) = q.coeff(var, k - i);
  return det_cofactor(S);
}

MultiPoly discriminant(const MultiPoly& p, int var) {
  if (p.is_zero()) throw ZeroPolynomial("discriminant of the zero polynomial");
  const int k = p.degree(var);
  if (k <= 1) return MultiPoly(1);
  MultiPoly d = divide_exact(resultant(p, p.derivative(var), var), p.coeff(var, k));
  return (k * (k - 1) / 2) % 2 ? -d : d;
}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = MultiPoly(1);
    return;
  }
  if (den_.is_constant()) {
    num_ = num_ * MultiPoly(Rational(1) / den_.constant_term());
    den_ = MultiPoly(1);
    return;
  }
  try {
    num_ = divide_exact(num_, den_);
    den_ = MultiPoly(1);
  } catch (const std::domain_error&) {
  }
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) num_ += o.num_;
  else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw std::domain_error("division by the zero rational function");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

}  // namespace strata

#include "gblocks/cyclotomic.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

namespace gb {

namespace {
std::atomic<int> g_conductor_limit{64};
}

void set_conductor_limit(int n) {
  if (n < 1) throw std::invalid_argument("conductor limit must be positive");
  g_conductor_limit = n;
}
int conductor_limit() { return g_conductor_limit; }

int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

namespace detail {

// Reduction data for one conductor: red[j] = ζ^j in the power basis.
struct CycloTables {
  int n = 1;
  int phi = 1;
  std::vector<std::vector<long>> red;
  std::vector<int> units;  // k in [1,N) with gcd(k,N)=1
};

namespace {

using Poly = std::vector<long>;  // low degree first

Poly poly_divexact(Poly num, const Poly& den) {
  const int dn = static_cast<int>(den.size()) - 1;
  Poly q(num.size() - den.size() + 1, 0);
  for (int i = static_cast<int>(num.size()) - 1; i >= dn; --i) {
    const long c = num[i] / den[dn];  // den monic
    q[i - dn] = c;
    for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

Poly cyclotomic_poly(int n) {
  static std::map<int, Poly> cache;  // guarded by the registry mutex
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  Poly p(n + 1, 0);  // x^n - 1
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_divexact(p, cyclotomic_poly(d));
  cache[n] = p;
  return p;
}

std::unique_ptr<CycloTables> build(int n) {
  auto t = std::make_unique<CycloTables>();
  t->n = n;
  const Poly phi_n = cyclotomic_poly(n);
  t->phi = static_cast<int>(phi_n.size()) - 1;
  t->red.assign(n, std::vector<long>(t->phi, 0));
  std::vector<long> cur(t->phi, 0);
  cur[0] = 1;
  for (int j = 0; j < n; ++j) {
    t->red[j] = cur;
    // multiply by x and reduce by the monic phi_n
    std::vector<long> nxt(t->phi, 0);
    const long top = cur[t->phi - 1];
    for (int i = t->phi - 1; i > 0; --i) nxt[i] = cur[i - 1];
    nxt[0] = 0;
    for (int i = 0; i < t->phi; ++i) nxt[i] -= top * phi_n[i];
    cur = nxt;
  }
  for (int k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) t->units.push_back(k % n);
  return t;
}

const CycloTables* tables(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycloTables>> reg;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = reg[n];
  if (!slot) slot = build(n);
  return slot.get();
}

const CycloTables* rational_tables() {
  static const CycloTables* t = tables(1);
  return t;
}

}  // namespace
}  // namespace detail

namespace {

long mod(long a, long n) { return ((a % n) + n) % n; }

void check_limit(int n) {
  if (n > conductor_limit())
    throw ConductorError("conductor " + std::to_string(n) + " exceeds limit " +
                         std::to_string(conductor_limit()));
}

}  // namespace

Cyclotomic::Cyclotomic() : t_(detail::rational_tables()), c_(1, mpq_class(0)) {}
Cyclotomic::Cyclotomic(long v) : t_(detail::rational_tables()), c_(1, mpq_class(v)) {}
Cyclotomic::Cyclotomic(const mpq_class& q) : t_(detail::rational_tables()), c_(1, q) { c_[0].canonicalize(); }

Cyclotomic Cyclotomic::zeta(int n, long k) {
  if (n < 1) throw std::invalid_argument("conductor must be positive");
  check_limit(n);
  Cyclotomic z;
  z.t_ = detail::tables(n);
  const auto& r = z.t_->red[mod(k, n)];
  z.c_.assign(z.t_->phi, mpq_class(0));
  for (int i = 0; i < z.t_->phi; ++i) z.c_[i] = r[i];
  return z;
}

int Cyclotomic::conductor() const { return t_->n; }

bool Cyclotomic::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Cyclotomic Cyclotomic::embed(int m) const {
  const int n = t_->n;
  if (m == n) return *this;
  if (m % n != 0) throw std::invalid_argument("embed: conductor must divide target");
  check_limit(m);
  Cyclotomic r;
  r.t_ = detail::tables(m);
  r.c_.assign(r.t_->phi, mpq_class(0));
  const int step = m / n;
  for (int i = 0; i < t_->phi; ++i) {
    if (c_[i] == 0) continue;
    const auto& red = r.t_->red[(static_cast<long>(i) * step) % m];
    for (int k = 0; k < r.t_->phi; ++k)
      if (red[k]) r.c_[k] += c_[i] * red[k];
  }
  return r;
}

void Cyclotomic::unify(Cyclotomic& a, Cyclotomic& b) {
  if (a.t_ == b.t_) return;
  const int l = std::lcm(a.t_->n, b.t_->n);
  a = a.embed(l);
  b = b.embed(l);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.t_->n == 1) {
    c_[0] += o.c_[0];
    return *this;
  }
  Cyclotomic b = o;
  unify(*this, b);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

void Cyclotomic::add_product(const Cyclotomic& x, const Cyclotomic& y) {
  if (t_->n == 1 && x.t_->n == 1 && y.t_->n == 1) {
    c_[0] += x.c_[0] * y.c_[0];
    return;
  }
  *this += x * y;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.t_->n == 1) {
    for (auto& q : c_) q *= o.c_[0];
    return *this;
  }
  if (t_->n == 1) {
    const mpq_class s = c_[0];
    *this = o;
    for (auto& q : c_) q *= s;
    return *this;
  }
  Cyclotomic b = o;
  unify(*this, b);
  const int n = t_->n, phi = t_->phi;
  std::vector<mpq_class> acc(n, mpq_class(0));
  for (int i = 0; i < phi; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < phi; ++j)
      if (b.c_[j] != 0) acc[(i + j) % n] += c_[i] * b.c_[j];
  }
  for (int k = 0; k < phi; ++k) c_[k] = 0;
  for (int e = 0; e < n; ++e) {
    if (acc[e] == 0) continue;
    const auto& red = t_->red[e];
    for (int k = 0; k < phi; ++k)
      if (red[k]) c_[k] += acc[e] * red[k];
  }
  return *this;
}

Cyclotomic Cyclotomic::galois(long k) const {
  const int n = t_->n;
  if (std::gcd(mod(k, n), static_cast<long>(n)) != 1 && n > 1)
    throw std::invalid_argument("galois: exponent not a unit");
  Cyclotomic r;
  r.t_ = t_;
  r.c_.assign(t_->phi, mpq_class(0));
  for (int i = 0; i < t_->phi; ++i) {
    if (c_[i] == 0) continue;
    const auto& red = t_->red[mod(static_cast<long>(i) * k, n)];
    for (int j = 0; j < t_->phi; ++j)
      if (red[j]) r.c_[j] += c_[i] * red[j];
  }
  return r;
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(zeta)");
  if (t_->n == 1) return Cyclotomic(mpq_class(1) / c_[0]);
  // x^{-1} = (prod_{σ≠1} σ(x)) / N(x), N(x) rational
  Cyclotomic num(1L);
  for (int k : t_->units)
    if (k != 1) num *= galois(k);
  Cyclotomic norm = *this * num;
  if (!norm.is_rational()) throw std::logic_error("norm is not rational");
  const mpq_class inv = mpq_class(1) / norm.c_[0];
  for (auto& q : num.c_) q *= inv;
  return num;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

Cyclotomic Cyclotomic::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclotomic r(1L), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.t_ == b.t_) return a.c_ == b.c_;
  Cyclotomic x = a, y = b;
  Cyclotomic::unify(x, y);
  return x.c_ == y.c_;
}

std::string Cyclotomic::str() const {
  std::string out;
  for (int i = 0; i < t_->phi; ++i) {
    const mpq_class& q = c_[i];
    if (q == 0) continue;
    const bool neg = q < 0;
    const mpq_class aq = abs(q);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    const bool unit = aq == 1;
    if (i == 0) {
      out += aq.get_str();
      continue;
    }
    if (!unit) out += aq.get_str() + "*";
    out += i == 1 ? "z" : "z^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> s = 0;
  for (int i = 0; i < t_->phi; ++i)
    s += c_[i].get_d() * std::polar(1.0, 2 * std::numbers::pi * i / t_->n);
  return s;
}

Cyclotomic Cyclotomic::parse(std::string_view text, int n) {
  if (n < 1) throw std::invalid_argument("conductor must be positive");
  check_limit(n);
  auto fail = [&](const std::string& why) {
    return std::invalid_argument("cannot parse scalar '" + std::string(text) + "': " + why);
  };
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw fail("empty");
  Cyclotomic total;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw fail("expected + or -");
    }
    first = false;
    mpq_class coef = 1;
    bool have_coef = false;
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
    if (j > i) {
      try {
        coef = mpq_class(s.substr(i, j - i));
      } catch (const std::invalid_argument&) {
        throw fail("bad rational");
      }
      if (coef.get_den() == 0) throw fail("zero denominator");
      coef.canonicalize();
      have_coef = true;
      i = j;
    }
    long e = 0;
    if (i < s.size() && s[i] == '*') {
      if (!have_coef) throw fail("dangling *");
      ++i;
      if (i >= s.size() || s[i] != 'z') throw fail("expected z after *");
    }
    if (i < s.size() && s[i] == 'z') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t k = i;
        if (k < s.size() && s[k] == '-') ++k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == i || (k == i + 1 && s[i] == '-')) throw fail("bad exponent");
        e = std::stol(s.substr(i, k - i));
        i = k;
      }
    } else if (!have_coef) {
      throw fail("expected a term");
    }
    total += Cyclotomic(mpq_class(sign) * coef) * zeta(n, e);
  }
  return total.embed(n);
}

}  // namespace gb

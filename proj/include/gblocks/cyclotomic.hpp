#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gb {

struct ConductorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Process-wide bound on conductors produced by arithmetic (default 64).
void set_conductor_limit(int n);
int conductor_limit();

namespace detail {
struct CycloTables;
}

// Exact element of Q(ζ_N), stored as rational coefficients of ζ_N^0..ζ_N^{φ(N)-1}
// modulo the N-th cyclotomic polynomial. Operands of different conductor are
// embedded into the lcm conductor. Equality is exact.
class Cyclotomic {
 public:
  Cyclotomic();  // zero, conductor 1
  Cyclotomic(long v);  // NOLINT(google-explicit-constructor)
  explicit Cyclotomic(const mpq_class& q);

  static Cyclotomic zeta(int n, long k = 1);  // ζ_n^k
  // Parses "a/b*z^k + c*z - d" with z = ζ_n; exponents may be negative.
  static Cyclotomic parse(std::string_view text, int n);

  int conductor() const;
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  mpq_class rational_part() const { return c_[0]; }

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o);
  void add_product(const Cyclotomic& x, const Cyclotomic& y);  // *this += x * y
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  Cyclotomic inverse() const;  // throws std::domain_error on zero
  Cyclotomic conj() const;     // complex conjugation ζ -> ζ^{-1}
  Cyclotomic galois(long k) const;  // ζ -> ζ^k, gcd(k, N) = 1
  Cyclotomic pow(long e) const;
  Cyclotomic embed(int m) const;  // same value at conductor m (N | m)

  std::string str() const;  // "1/2*z^2 + 1/2*z^14"; "0" for zero
  std::complex<double> to_complex() const;

 private:
  const detail::CycloTables* t_;
  std::vector<mpq_class> c_;

  static void unify(Cyclotomic& a, Cyclotomic& b);
};

int euler_phi(int n);

}  // namespace gb

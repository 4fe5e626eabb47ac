#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace bidisk {

using cplx = std::complex<double>;

inline constexpr double kTrimTol = 1e-12;
inline constexpr double kGcdRelTol = 1e-9;

// Bivariate polynomial stored as a dense coefficient grid: row a is the
// z1-exponent, column b the z2-exponent.  The zero polynomial has an empty
// grid and degree -1 in both variables.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(cplx constant);
  explicit BiPoly(Eigen::MatrixXcd coeffs);

  static BiPoly monomial(int a, int b, cplx c = 1.0);
  static BiPoly zero() { return {}; }

  int deg1() const { return static_cast<int>(c_.rows()) - 1; }
  int deg2() const { return static_cast<int>(c_.cols()) - 1; }
  bool is_zero() const { return c_.size() == 0; }
  bool is_constant() const { return deg1() <= 0 && deg2() <= 0; }

  cplx coeff(int a, int b) const;
  const Eigen::MatrixXcd& coeffs() const { return c_; }

  cplx operator()(cplx z1, cplx z2) const;
  double max_abs() const;

  // p(z2, z1).
  BiPoly swapped() const;
  // Coefficient-wise complex conjugate.
  BiPoly conj() const;

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator-() const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator*(cplx s) const;

 private:
  void trim();
  Eigen::MatrixXcd c_;
};

BiPoly poly_mul(const BiPoly& f, const BiPoly& g);

// conj(p(1/z̄1, 1/z̄2))·z1^m z2^n.
BiPoly reflect(const BiPoly& p, int m, int n);

// Quotient f / g when the least-squares remainder is below kGcdRelTol
// times the dividend norm.
std::optional<BiPoly> divide_exact(const BiPoly& f, const BiPoly& g);

struct GcdResult {
  BiPoly gcd;
  // Degrees of the gcd estimated from Sylvester ranks on random slices.
  int slice_deg1 = 0;
  int slice_deg2 = 0;
  // The remainder sequence disagreed with the slice degrees.  gcd is then
  // rebuilt at the slice degrees when such a factor divides both inputs.
  bool flagged = false;
};

GcdResult poly_gcd(const BiPoly& f, const BiPoly& g);

struct ReducedFraction {
  BiPoly num;
  BiPoly den;
  BiPoly cancelled;
  bool flagged = false;
};

ReducedFraction reduce_fraction(const BiPoly& q, const BiPoly& p);

// Laurent polynomial on the symmetric window [-A, A] x [-B, B].
class LaurentBiPoly {
 public:
  LaurentBiPoly() = default;
  LaurentBiPoly(int A, int B);

  int A() const { return A_; }
  int B() const { return B_; }
  cplx coeff(int a, int b) const;
  void add(int a, int b, cplx v);
  const Eigen::MatrixXcd& coeffs() const { return c_; }

  LaurentBiPoly operator+(const LaurentBiPoly& o) const;
  LaurentBiPoly operator-(const LaurentBiPoly& o) const;

 private:
  int A_ = 0;
  int B_ = 0;
  Eigen::MatrixXcd c_ = Eigen::MatrixXcd::Zero(1, 1);
};

// f(z)·conj(g(1/z̄)).
LaurentBiPoly mul_star(const BiPoly& f, const BiPoly& g);

double laurent_identity_residual(const LaurentBiPoly& L);

class MatPoly {
 public:
  MatPoly() = default;
  explicit MatPoly(int d);

  static MatPoly identity(int d);
  static MatPoly constant(const Eigen::MatrixXcd& M);
  static MatPoly diagonal(const std::vector<BiPoly>& entries);

  int d() const { return d_; }
  BiPoly& operator()(int i, int j) { return e_[i * d_ + j]; }
  const BiPoly& operator()(int i, int j) const { return e_[i * d_ + j]; }

  int deg1() const;
  int deg2() const;

  Eigen::MatrixXcd operator()(cplx z1, cplx z2) const;
  Eigen::MatrixXcd coeff(int a, int b) const;

  MatPoly operator*(const MatPoly& o) const;
  MatPoly operator+(const MatPoly& o) const;
  MatPoly operator*(const BiPoly& s) const;

  MatPoly swapped() const;

 private:
  int d_ = 0;
  std::vector<BiPoly> e_;
};

BiPoly mat_determinant(const MatPoly& M);

}  // namespace bidisk

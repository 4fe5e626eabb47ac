#include "bidisk/inner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>

namespace bidisk {

RationalInnerMatrix::RationalInnerMatrix(MatPoly Q, BiPoly p, std::string label)
    : Q_(std::move(Q)), p_(std::move(p)), label_(std::move(label)) {
  if (p_.is_zero()) throw std::invalid_argument("denominator p is identically zero");
  if (std::abs(p_.coeff(0, 0)) <= kTrimTol) throw std::invalid_argument("p(0,0) = 0: Taylor recursion undefined");
  deg_ = degree(*this);
}

RationalInnerMatrix RationalInnerMatrix::unchecked(MatPoly Q, BiPoly p, std::string label) {
  return RationalInnerMatrix(std::move(Q), std::move(p), std::move(label));
}

RationalInnerMatrix RationalInnerMatrix::create(MatPoly Q, BiPoly p, std::string label) {
  RationalInnerMatrix t(std::move(Q), std::move(p), std::move(label));
  const InnerReport r = verify_inner_exact(t);
  if (!r.pass)
    throw NotInnerError("'" + t.label_ + "' is not inner: Laurent residual " + std::to_string(r.residual), r.residual);
  return t;
}

RationalInnerMatrix RationalInnerMatrix::relabeled(std::string label) const {
  RationalInnerMatrix t = *this;
  t.label_ = std::move(label);
  return t;
}

Eigen::MatrixXcd RationalInnerMatrix::operator()(cplx z1, cplx z2) const { return Q_(z1, z2) / p_(z1, z2); }

InnerReport verify_inner_exact(const RationalInnerMatrix& theta) {
  const int d = theta.d();
  const MatPoly& Q = theta.Q();
  const LaurentBiPoly pp = mul_star(theta.p(), theta.p());
  double residual = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      LaurentBiPoly left(0, 0), right(0, 0);
      for (int k = 0; k < d; ++k) {
        left = left + mul_star(Q(i, k), Q(j, k));
        right = right + mul_star(Q(k, j), Q(k, i));
      }
      if (i == j) {
        left = left - pp;
        right = right - pp;
      }
      residual = std::max({residual, laurent_identity_residual(left), laurent_identity_residual(right)});
    }
  return {residual <= kInnerTol, residual};
}

InnerReport verify_inner_grid(const RationalInnerMatrix& theta, int N) {
  if (N < 2) throw std::invalid_argument("verify_inner_grid: N must be >= 2");
  const int d = theta.d();
  double worst = 0.0;
  for (int s = 0; s < N; ++s)
    for (int t = 0; t < N; ++t) {
      const cplx z1 = std::polar(1.0, 2.0 * std::numbers::pi * s / N);
      const cplx z2 = std::polar(1.0, 2.0 * std::numbers::pi * t / N);
      const Eigen::MatrixXcd Qv = theta.Q()(z1, z2);
      const double p2 = std::norm(theta.p()(z1, z2));
      const double r1 = (Qv * Qv.adjoint() - p2 * Eigen::MatrixXcd::Identity(d, d)).norm();
      const double r2 = (Qv.adjoint() * Qv - p2 * Eigen::MatrixXcd::Identity(d, d)).norm();
      worst = std::max(worst, std::max(r1, r2) / (1.0 + p2));
    }
  return {worst <= kInnerTol, worst};
}

Degree degree(const RationalInnerMatrix& theta) {
  Degree out{0, 0};
  const bool constant_p = theta.p().is_constant();
  for (int i = 0; i < theta.d(); ++i)
    for (int j = 0; j < theta.d(); ++j) {
      const BiPoly& q = theta.Q()(i, j);
      if (q.is_zero()) continue;
      if (constant_p) {
        out.m1 = std::max(out.m1, q.deg1());
        out.m2 = std::max(out.m2, q.deg2());
        continue;
      }
      const ReducedFraction r = reduce_fraction(q, theta.p());
      out.m1 = std::max({out.m1, r.num.deg1(), r.den.deg1()});
      out.m2 = std::max({out.m2, r.num.deg2(), r.den.deg2()});
    }
  return out;
}

DetDegree det_degree(const RationalInnerMatrix& theta) {
  const BiPoly det = mat_determinant(theta.Q());
  BiPoly pd(1.0);
  for (int k = 0; k < theta.d(); ++k) pd = pd * theta.p();
  const ReducedFraction r = reduce_fraction(det, pd);
  DetDegree out;
  out.D1 = std::max({0, r.num.deg1(), r.den.deg1()});
  out.D2 = std::max({0, r.num.deg2(), r.den.deg2()});
  out.flagged = r.flagged;
  return out;
}

RationalInnerMatrix from_scalar(const BiPoly& q, const BiPoly& p, std::string label) {
  MatPoly Q(1);
  Q(0, 0) = q;
  return RationalInnerMatrix::create(std::move(Q), p, std::move(label));
}

RationalInnerMatrix from_stable_poly(const BiPoly& p, int m, int n, std::string label) {
  return from_scalar(reflect(p, m, n), p, std::move(label));
}

RationalInnerMatrix diagonal(const std::vector<RationalInnerMatrix>& scalars, std::string label) {
  if (scalars.empty()) throw std::invalid_argument("diagonal: empty list");
  std::vector<BiPoly> nums, dens;
  BiPoly common(1.0);
  for (const auto& s : scalars) {
    if (s.d() != 1) throw std::invalid_argument("diagonal: inputs must be scalar");
    const ReducedFraction r = reduce_fraction(s.Q()(0, 0), s.p());
    nums.push_back(r.num);
    dens.push_back(r.den);
    if (r.den.is_constant()) continue;
    const GcdResult g = poly_gcd(common, r.den);
    auto extra = divide_exact(r.den, g.gcd);
    if (!extra) throw std::runtime_error("diagonal: inexact lcm division");
    common = common * *extra;
  }
  std::vector<BiPoly> entries;
  for (size_t i = 0; i < nums.size(); ++i) {
    auto cofactor = divide_exact(common, dens[i]);
    if (!cofactor) throw std::runtime_error("diagonal: denominator does not divide lcm");
    entries.push_back(nums[i] * *cofactor);
  }
  return RationalInnerMatrix::create(MatPoly::diagonal(entries), common, std::move(label));
}

RationalInnerMatrix product_one_var(const std::vector<std::pair<RationalInnerMatrix, RationalInnerMatrix>>& factors,
                                    std::string label) {
  if (factors.empty()) throw std::invalid_argument("product_one_var: no factors");
  const int d = factors.front().first.d();
  MatPoly Q = MatPoly::identity(d);
  BiPoly p(1.0);
  for (const auto& [phi, psi] : factors) {
    if (phi.d() != d || psi.d() != d) throw std::invalid_argument("product_one_var: size mismatch");
    if (phi.Q().deg2() > 0 || phi.p().deg2() > 0)
      throw std::invalid_argument("product_one_var: '" + phi.label() + "' depends on z2");
    if (psi.Q().deg1() > 0 || psi.p().deg1() > 0)
      throw std::invalid_argument("product_one_var: '" + psi.label() + "' depends on z1");
    Q = Q * phi.Q() * psi.Q();
    p = p * phi.p() * psi.p();
  }
  return RationalInnerMatrix::create(std::move(Q), std::move(p), std::move(label));
}

RationalInnerMatrix swap_variables(const RationalInnerMatrix& theta) {
  return RationalInnerMatrix::unchecked(theta.Q().swapped(), theta.p().swapped(), theta.label() + "_swapped");
}

namespace {

void require_unitary(const Eigen::MatrixXcd& U, int d, const char* name) {
  if (U.rows() != d || U.cols() != d) throw std::invalid_argument(std::string(name) + " has the wrong size");
  const double err = (U * U.adjoint() - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (err > 1e-12) throw std::invalid_argument(std::string(name) + " is not unitary (error " + std::to_string(err) + ")");
}

}  // namespace

RationalInnerMatrix unitary_conjugate(const RationalInnerMatrix& theta, const Eigen::MatrixXcd& U,
                                      const Eigen::MatrixXcd& V) {
  require_unitary(U, theta.d(), "U");
  require_unitary(V, theta.d(), "V");
  MatPoly Q = MatPoly::constant(U) * theta.Q() * MatPoly::constant(V);
  return RationalInnerMatrix::create(std::move(Q), theta.p(), theta.label() + "_conj");
}

namespace {

BiPoly z1() { return BiPoly::monomial(1, 0); }
BiPoly z2() { return BiPoly::monomial(0, 1); }

}  // namespace

RationalInnerMatrix builtin(const std::string& name) {
  if (name == "ex41_diag_z1z2_1") {
    return RationalInnerMatrix::create(MatPoly::diagonal({z1() * z2(), BiPoly(1.0)}), BiPoly(1.0), name);
  }
  if (name == "ex42_symmetric") {
    MatPoly Q(2);
    Q(0, 0) = (z1() + z2()) * 0.5;
    Q(0, 1) = (z1() - z2()) * 0.5;
    Q(1, 0) = (z1() - z2()) * 0.5;
    Q(1, 1) = (z1() + z2()) * 0.5;
    return RationalInnerMatrix::create(std::move(Q), BiPoly(1.0), name);
  }
  if (name == "ex43_deg2") {
    MatPoly Q(2);
    Q(0, 0) = z1() * (z1() + z2()) * 0.5;
    Q(0, 1) = z1() * (z1() - z2()) * 0.5;
    Q(1, 0) = (z1() - z2()) * 0.5;
    Q(1, 1) = (z1() + z2()) * 0.5;
    return RationalInnerMatrix::create(std::move(Q), BiPoly(1.0), name);
  }
  if (name == "scalar_z1z2") return from_scalar(z1() * z2(), BiPoly(1.0), name);
  if (name == "scalar_favorite") return from_stable_poly(BiPoly(2.0) - z1() - z2(), 1, 1, name);
  static const std::regex z2n(R"(scalar_z2n\((\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, z2n)) {
    const int n = std::stoi(m[1].str());
    if (n > 64) throw std::invalid_argument("scalar_z2n: exponent too large");
    return from_scalar(BiPoly::monomial(0, n), BiPoly(1.0), name);
  }
  throw std::invalid_argument("unknown builtin '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"ex41_diag_z1z2_1", "ex42_symmetric", "ex43_deg2", "scalar_z1z2", "scalar_z2n(n)", "scalar_favorite"};
}

}  // namespace bidisk

#include "bidisk/poly.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bidisk {

BiPoly::BiPoly(cplx constant) : c_(Eigen::MatrixXcd::Constant(1, 1, constant)) { trim(); }

BiPoly::BiPoly(Eigen::MatrixXcd coeffs) : c_(std::move(coeffs)) {
  for (Eigen::Index i = 0; i < c_.size(); ++i) {
    if (!std::isfinite(c_.data()[i].real()) || !std::isfinite(c_.data()[i].imag()))
      throw std::invalid_argument("BiPoly: non-finite coefficient");
  }
  trim();
}

BiPoly BiPoly::monomial(int a, int b, cplx c) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(a + 1, b + 1);
  m(a, b) = c;
  return BiPoly(std::move(m));
}

void BiPoly::trim() {
  Eigen::Index rows = c_.rows(), cols = c_.cols();
  bool changed = true;
  while (changed && rows > 0 && cols > 0) {
    changed = false;
    if (c_.row(rows - 1).head(cols).cwiseAbs().maxCoeff() <= kTrimTol) {
      --rows;
      changed = true;
    }
    if (rows > 0 && c_.col(cols - 1).head(rows).cwiseAbs().maxCoeff() <= kTrimTol) {
      --cols;
      changed = true;
    }
  }
  if (rows == 0 || cols == 0) {
    c_.resize(0, 0);
    return;
  }
  if (rows != c_.rows() || cols != c_.cols()) {
    Eigen::MatrixXcd t = c_.topLeftCorner(rows, cols);
    c_ = std::move(t);
  }
}

cplx BiPoly::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a >= c_.rows() || b >= c_.cols()) return 0.0;
  return c_(a, b);
}

cplx BiPoly::operator()(cplx z1, cplx z2) const {
  cplx acc = 0.0;
  for (Eigen::Index a = c_.rows() - 1; a >= 0; --a) {
    cplx row = 0.0;
    for (Eigen::Index b = c_.cols() - 1; b >= 0; --b) row = row * z2 + c_(a, b);
    acc = acc * z1 + row;
  }
  return acc;
}

double BiPoly::max_abs() const { return is_zero() ? 0.0 : c_.cwiseAbs().maxCoeff(); }

BiPoly BiPoly::swapped() const { return BiPoly(Eigen::MatrixXcd(c_.transpose())); }

BiPoly BiPoly::conj() const { return BiPoly(Eigen::MatrixXcd(c_.conjugate())); }

BiPoly BiPoly::operator+(const BiPoly& o) const {
  Eigen::Index r = std::max(c_.rows(), o.c_.rows()), c = std::max(c_.cols(), o.c_.cols());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r, c);
  m.topLeftCorner(c_.rows(), c_.cols()) += c_;
  m.topLeftCorner(o.c_.rows(), o.c_.cols()) += o.c_;
  return BiPoly(std::move(m));
}

BiPoly BiPoly::operator-() const { return BiPoly(Eigen::MatrixXcd(-c_)); }

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator*(const BiPoly& o) const { return poly_mul(*this, o); }

BiPoly BiPoly::operator*(cplx s) const { return BiPoly(Eigen::MatrixXcd(c_ * s)); }

BiPoly poly_mul(const BiPoly& f, const BiPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const auto& F = f.coeffs();
  const auto& G = g.coeffs();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(F.rows() + G.rows() - 1, F.cols() + G.cols() - 1);
  for (Eigen::Index a = 0; a < F.rows(); ++a)
    for (Eigen::Index b = 0; b < F.cols(); ++b) {
      if (F(a, b) == 0.0) continue;
      out.block(a, b, G.rows(), G.cols()) += F(a, b) * G;
    }
  return BiPoly(std::move(out));
}

BiPoly reflect(const BiPoly& p, int m, int n) {
  if (m < p.deg1() || n < p.deg2()) throw std::invalid_argument("reflect: degree below polynomial degree");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m + 1, n + 1);
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= n; ++b) out(a, b) = std::conj(p.coeff(m - a, n - b));
  return BiPoly(std::move(out));
}

std::optional<BiPoly> divide_exact(const BiPoly& f, const BiPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
  if (f.is_zero()) return BiPoly{};
  const int qa = f.deg1() - g.deg1(), qb = f.deg2() - g.deg2();
  if (qa < 0 || qb < 0) return std::nullopt;
  // f = g * q as a least-squares convolution system; pivoting on a single
  // leading coefficient is unstable when that coefficient is small.
  const int rows = (f.deg1() + 1) * (f.deg2() + 1), cols = (qa + 1) * (qb + 1);
  const int fb = f.deg2() + 1;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(rows, cols);
  for (int a = 0; a <= qa; ++a)
    for (int b = 0; b <= qb; ++b)
      for (int i = 0; i <= g.deg1(); ++i)
        for (int j = 0; j <= g.deg2(); ++j) M((a + i) * fb + b + j, a * (qb + 1) + b) = g.coeff(i, j);
  Eigen::VectorXcd rhs(rows);
  for (int a = 0; a <= f.deg1(); ++a)
    for (int b = 0; b <= f.deg2(); ++b) rhs(a * fb + b) = f.coeff(a, b);
  const Eigen::VectorXcd x = M.colPivHouseholderQr().solve(rhs);
  if ((M * x - rhs).cwiseAbs().maxCoeff() > kGcdRelTol * f.max_abs()) return std::nullopt;
  Eigen::MatrixXcd q(qa + 1, qb + 1);
  for (int a = 0; a <= qa; ++a)
    for (int b = 0; b <= qb; ++b) q(a, b) = x(a * (qb + 1) + b);
  return BiPoly(std::move(q));
}

namespace {

using UPoly = Eigen::VectorXcd;

UPoly utrim(UPoly v, double tol) {
  Eigen::Index n = v.size();
  while (n > 0 && std::abs(v(n - 1)) <= tol) --n;
  return v.head(n);
}

double unorm(const UPoly& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Quotient and remainder of univariate division.
std::pair<UPoly, UPoly> udivmod(UPoly f, const UPoly& g) {
  const Eigen::Index n = f.size(), m = g.size();
  if (n < m) return {UPoly(), f};
  UPoly q = UPoly::Zero(n - m + 1);
  for (Eigen::Index k = n - m; k >= 0; --k) {
    q(k) = f(k + m - 1) / g(m - 1);
    f.segment(k, m) -= q(k) * g;
    f(k + m - 1) = 0.0;
  }
  return {q, f.head(m - 1)};
}

UPoly ugcd(UPoly f, UPoly g) {
  const double scale = std::max(unorm(f), unorm(g));
  if (scale == 0.0) return UPoly::Ones(1);
  f = utrim(f / scale, 1e-14);
  g = utrim(g / scale, 1e-14);
  if (f.size() < g.size()) std::swap(f, g);
  while (g.size() > 0) {
    UPoly r = utrim(udivmod(f, g).second, 0.0);
    if (unorm(r) <= kGcdRelTol) r.resize(0);
    f = g;
    g = r.size() ? UPoly(r / unorm(r)) : r;
  }
  if (f.size() == 0) return UPoly::Ones(1);
  return f / f(f.size() - 1);
}

UPoly row_of(const BiPoly& f, int a) {
  UPoly v = f.coeffs().row(a).transpose();
  return utrim(v, 0.0);
}

BiPoly from_z2(const UPoly& v) {
  if (v.size() == 0) return {};
  return BiPoly(Eigen::MatrixXcd(v.transpose()));
}

UPoly content(const BiPoly& f) {
  UPoly c;
  for (int a = 0; a <= f.deg1(); ++a) {
    UPoly r = row_of(f, a);
    if (r.size() == 0) continue;
    c = c.size() == 0 ? UPoly(r / r(r.size() - 1)) : ugcd(c, r);
    if (c.size() == 1) break;
  }
  return c.size() ? c : UPoly::Ones(1);
}

BiPoly primitive(const BiPoly& f, const UPoly& c) {
  if (c.size() <= 1) return c.size() ? f * (1.0 / c(0)) : f;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(f.deg1() + 1, std::max<Eigen::Index>(1, f.deg2() + 2 - c.size()));
  for (int a = 0; a <= f.deg1(); ++a) {
    UPoly r = row_of(f, a);
    if (r.size() == 0) continue;
    UPoly q = udivmod(r, c).first;
    out.row(a).head(q.size()) = q.transpose();
  }
  return BiPoly(std::move(out));
}

BiPoly chop(const BiPoly& f, double rel) {
  if (f.is_zero()) return f;
  Eigen::MatrixXcd m = f.coeffs();
  const double eps = rel * m.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (std::abs(m.data()[i]) <= eps) m.data()[i] = 0.0;
  return BiPoly(std::move(m));
}

BiPoly normalized(const BiPoly& f) { return f.is_zero() ? f : f * (1.0 / f.max_abs()); }

// Pseudo-remainder of F by G with respect to z1.  A step whose result is
// below kGcdRelTol times the cancelled terms counts as an exact zero.
BiPoly prem(BiPoly R, const BiPoly& G) {
  const int m = G.deg1();
  const BiPoly lcG = from_z2(row_of(G, m));
  while (!R.is_zero() && R.deg1() >= m) {
    const int top = R.deg1();
    const BiPoly lcR = from_z2(row_of(R, top));
    BiPoly shifted = poly_mul(BiPoly::monomial(top - m, 0), G);
    const BiPoly left = poly_mul(lcG, R), right = poly_mul(lcR, shifted);
    BiPoly next = left - right;
    if (next.is_zero() || next.max_abs() <= kGcdRelTol * std::max(left.max_abs(), right.max_abs())) return {};
    if (next.deg1() >= top) {
      Eigen::MatrixXcd c = next.coeffs().topRows(top);
      next = c.rows() ? BiPoly(std::move(c)) : BiPoly{};
    }
    R = chop(normalized(next), 1e-13);
  }
  return R;
}

int sylvester_gcd_degree(UPoly f, UPoly g) {
  const double sf = unorm(f), sg = unorm(g);
  if (sf == 0.0 && sg == 0.0) return 0;
  if (sf == 0.0) return static_cast<int>(utrim(g / sg, 1e-10).size()) - 1;
  if (sg == 0.0) return static_cast<int>(utrim(f / sf, 1e-10).size()) - 1;
  f = utrim(f / sf, 1e-10);
  g = utrim(g / sg, 1e-10);
  const Eigen::Index n = f.size() - 1, m = g.size() - 1;
  if (n == 0 || m == 0) return 0;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n + m, n + m);
  for (Eigen::Index i = 0; i < m; ++i) S.block(i, i, 1, n + 1) = f.reverse().transpose();
  for (Eigen::Index i = 0; i < n; ++i) S.block(m + i, i, 1, m + 1) = g.reverse().transpose();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > kGcdRelTol * s(0)) ++rank;
  return static_cast<int>(n + m) - rank;
}

UPoly slice_z2(const BiPoly& f, cplx z2) {
  UPoly v = UPoly::Zero(std::max(1, f.deg1() + 1));
  for (int a = 0; a <= f.deg1(); ++a) {
    cplx acc = 0.0;
    for (int b = f.deg2(); b >= 0; --b) acc = acc * z2 + f.coeff(a, b);
    v(a) = acc;
  }
  return v;
}

int slice_degree(const BiPoly& f, const BiPoly& g) {
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> r(0.3, 0.9), t(0.0, 2.0 * M_PI);
  int best = -1;
  for (int s = 0; s < 5; ++s) {
    const cplx z = std::polar(r(rng), t(rng));
    const int k = sylvester_gcd_degree(slice_z2(f, z), slice_z2(g, z));
    best = best < 0 ? k : std::min(best, k);
  }
  return best;
}

BiPoly gcd_core(BiPoly F, BiPoly G) {
  F = normalized(F);
  G = normalized(G);
  if (F.deg1() < G.deg1()) std::swap(F, G);
  const UPoly cF = content(F), cG = content(G);
  const UPoly c = ugcd(cF, cG);
  F = normalized(primitive(F, cF));
  G = normalized(primitive(G, cG));
  BiPoly result;
  while (true) {
    if (G.is_zero()) {
      result = F;
      break;
    }
    if (G.deg1() == 0) {
      result = BiPoly(1.0);
      break;
    }
    BiPoly R = prem(F, G);
    if (R.is_zero() || R.max_abs() <= kGcdRelTol) {
      result = G;
      break;
    }
    F = G;
    G = normalized(primitive(R, content(R)));
  }
  return poly_mul(from_z2(c), normalized(primitive(result, content(result))));
}

// Common factor of bidegree (k1, k2) from the cofactor relation f·v = g·u,
// with u = f/h and v = g/h.  Empty when the relation has no clean solution.
std::optional<BiPoly> gcd_with_degrees(const BiPoly& f, const BiPoly& g, int k1, int k2) {
  const int u1 = f.deg1() - k1, u2 = f.deg2() - k2, v1 = g.deg1() - k1, v2 = g.deg2() - k2;
  if (u1 < 0 || u2 < 0 || v1 < 0 || v2 < 0) return std::nullopt;
  const int r1 = f.deg1() + v1, r2 = f.deg2() + v2;
  const int nu = (u1 + 1) * (u2 + 1), nv = (v1 + 1) * (v2 + 1);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero((r1 + 1) * (r2 + 1), nu + nv);
  const BiPoly F = normalized(f), G = normalized(g);
  for (int a = 0; a <= v1; ++a)
    for (int b = 0; b <= v2; ++b)
      for (int i = 0; i <= F.deg1(); ++i)
        for (int j = 0; j <= F.deg2(); ++j) M((a + i) * (r2 + 1) + b + j, nu + a * (v2 + 1) + b) += F.coeff(i, j);
  for (int a = 0; a <= u1; ++a)
    for (int b = 0; b <= u2; ++b)
      for (int i = 0; i <= G.deg1(); ++i)
        for (int j = 0; j <= G.deg2(); ++j) M((a + i) * (r2 + 1) + b + j, a * (u2 + 1) + b) -= G.coeff(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
  const Eigen::VectorXcd x = svd.matrixV().col(M.cols() - 1);
  Eigen::MatrixXcd u(u1 + 1, u2 + 1);
  for (int a = 0; a <= u1; ++a)
    for (int b = 0; b <= u2; ++b) u(a, b) = x(a * (u2 + 1) + b);
  const BiPoly U(std::move(u));
  if (U.is_zero()) return std::nullopt;
  auto h = divide_exact(F, U);
  if (!h || h->deg1() != k1 || h->deg2() != k2 || !divide_exact(G, *h)) return std::nullopt;
  return normalized(*h);
}

}  // namespace

GcdResult poly_gcd(const BiPoly& f, const BiPoly& g) {
  GcdResult out;
  if (f.is_zero() && g.is_zero()) {
    out.gcd = BiPoly(1.0);
    return out;
  }
  if (f.is_zero() || g.is_zero()) {
    out.gcd = normalized(f.is_zero() ? g : f);
    out.slice_deg1 = out.gcd.deg1();
    out.slice_deg2 = out.gcd.deg2();
    return out;
  }
  if (f.is_constant() || g.is_constant()) {
    out.gcd = BiPoly(1.0);
    return out;
  }
  out.gcd = gcd_core(f, g);
  out.slice_deg1 = slice_degree(f, g);
  out.slice_deg2 = slice_degree(f.swapped(), g.swapped());
  out.flagged = out.slice_deg1 != std::max(0, out.gcd.deg1()) || out.slice_deg2 != std::max(0, out.gcd.deg2());
  if (out.flagged) {
    if (out.slice_deg1 == 0 && out.slice_deg2 == 0) {
      out.gcd = BiPoly(1.0);
    } else if (auto h = gcd_with_degrees(f, g, out.slice_deg1, out.slice_deg2)) {
      out.gcd = *h;
    }
  }
  return out;
}

namespace {

const std::vector<std::pair<cplx, cplx>>& sample_points() {
  static const std::vector<std::pair<cplx, cplx>> pts = {
      {{0.31, 0.17}, {-0.23, 0.41}}, {{-0.37, 0.11}, {0.29, -0.19}}, {{0.13, -0.43}, {0.47, 0.07}},
      {{0.52, 0.21}, {-0.11, -0.38}}, {{-0.08, 0.61}, {0.33, 0.27}}};
  return pts;
}

}  // namespace

ReducedFraction reduce_fraction(const BiPoly& q, const BiPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("reduce_fraction: zero denominator");
  ReducedFraction out{q, p, BiPoly(1.0), false};
  if (p.is_constant()) return out;
  GcdResult g = poly_gcd(q, p);
  out.flagged = g.flagged;
  if (g.gcd.is_constant()) return out;
  for (const auto& [z1, z2] : sample_points()) {
    const cplx v = g.gcd(z1, z2);
    if (std::abs(v) > 1e-6) {
      g.gcd = g.gcd * (1.0 / v);
      break;
    }
  }
  auto qn = divide_exact(q, g.gcd);
  auto pn = divide_exact(p, g.gcd);
  if (!qn || !pn) {
    out.flagged = true;
    return out;
  }
  out.num = *qn;
  out.den = *pn;
  out.cancelled = g.gcd;
  return out;
}

LaurentBiPoly::LaurentBiPoly(int A, int B)
    : A_(A), B_(B), c_(Eigen::MatrixXcd::Zero(2 * A + 1, 2 * B + 1)) {
  if (A < 0 || B < 0) throw std::invalid_argument("LaurentBiPoly: negative window");
}

cplx LaurentBiPoly::coeff(int a, int b) const {
  if (std::abs(a) > A_ || std::abs(b) > B_) return 0.0;
  return c_(a + A_, b + B_);
}

void LaurentBiPoly::add(int a, int b, cplx v) {
  if (std::abs(a) > A_ || std::abs(b) > B_) throw std::out_of_range("LaurentBiPoly: index outside window");
  c_(a + A_, b + B_) += v;
}

LaurentBiPoly LaurentBiPoly::operator+(const LaurentBiPoly& o) const {
  LaurentBiPoly out(std::max(A_, o.A_), std::max(B_, o.B_));
  out.c_.block(out.A_ - A_, out.B_ - B_, c_.rows(), c_.cols()) += c_;
  out.c_.block(out.A_ - o.A_, out.B_ - o.B_, o.c_.rows(), o.c_.cols()) += o.c_;
  return out;
}

LaurentBiPoly LaurentBiPoly::operator-(const LaurentBiPoly& o) const {
  LaurentBiPoly neg = o;
  neg.c_ = -neg.c_;
  return *this + neg;
}

LaurentBiPoly mul_star(const BiPoly& f, const BiPoly& g) {
  if (f.is_zero() || g.is_zero()) return LaurentBiPoly(0, 0);
  LaurentBiPoly out(std::max(f.deg1(), g.deg1()), std::max(f.deg2(), g.deg2()));
  for (int a = 0; a <= f.deg1(); ++a)
    for (int b = 0; b <= f.deg2(); ++b) {
      const cplx fa = f.coeff(a, b);
      if (fa == 0.0) continue;
      for (int c = 0; c <= g.deg1(); ++c)
        for (int e = 0; e <= g.deg2(); ++e) out.add(a - c, b - e, fa * std::conj(g.coeff(c, e)));
    }
  return out;
}

double laurent_identity_residual(const LaurentBiPoly& L) { return L.coeffs().cwiseAbs().maxCoeff(); }

MatPoly::MatPoly(int d) : d_(d), e_(static_cast<size_t>(d) * d) {
  if (d < 1) throw std::invalid_argument("MatPoly: d must be >= 1");
}

MatPoly MatPoly::identity(int d) {
  MatPoly m(d);
  for (int i = 0; i < d; ++i) m(i, i) = BiPoly(1.0);
  return m;
}

MatPoly MatPoly::constant(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("MatPoly::constant: matrix not square");
  MatPoly m(static_cast<int>(M.rows()));
  for (int i = 0; i < m.d_; ++i)
    for (int j = 0; j < m.d_; ++j) m(i, j) = BiPoly(M(i, j));
  return m;
}

MatPoly MatPoly::diagonal(const std::vector<BiPoly>& entries) {
  MatPoly m(static_cast<int>(entries.size()));
  for (int i = 0; i < m.d_; ++i) m(i, i) = entries[i];
  return m;
}

int MatPoly::deg1() const {
  int m = -1;
  for (const auto& e : e_) m = std::max(m, e.deg1());
  return m;
}

int MatPoly::deg2() const {
  int m = -1;
  for (const auto& e : e_) m = std::max(m, e.deg2());
  return m;
}

Eigen::MatrixXcd MatPoly::operator()(cplx z1, cplx z2) const {
  Eigen::MatrixXcd m(d_, d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) m(i, j) = (*this)(i, j)(z1, z2);
  return m;
}

Eigen::MatrixXcd MatPoly::coeff(int a, int b) const {
  Eigen::MatrixXcd m(d_, d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) m(i, j) = (*this)(i, j).coeff(a, b);
  return m;
}

MatPoly MatPoly::operator*(const MatPoly& o) const {
  if (d_ != o.d_) throw std::invalid_argument("MatPoly: size mismatch");
  MatPoly m(d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k) m(i, j) = m(i, j) + (*this)(i, k) * o(k, j);
  return m;
}

MatPoly MatPoly::operator+(const MatPoly& o) const {
  if (d_ != o.d_) throw std::invalid_argument("MatPoly: size mismatch");
  MatPoly m(d_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
  return m;
}

MatPoly MatPoly::operator*(const BiPoly& s) const {
  MatPoly m(d_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * s;
  return m;
}

MatPoly MatPoly::swapped() const {
  MatPoly m(d_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i].swapped();
  return m;
}

namespace {

BiPoly cofactor_det(const std::vector<std::vector<BiPoly>>& M) {
  const size_t n = M.size();
  if (n == 1) return M[0][0];
  if (n == 2) return M[0][0] * M[1][1] - M[0][1] * M[1][0];
  BiPoly acc;
  for (size_t j = 0; j < n; ++j) {
    if (M[0][j].is_zero()) continue;
    std::vector<std::vector<BiPoly>> minor(n - 1);
    for (size_t i = 1; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        if (k != j) minor[i - 1].push_back(M[i][k]);
    BiPoly term = M[0][j] * cofactor_det(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

BiPoly bareiss_det(std::vector<std::vector<BiPoly>> M) {
  const size_t n = M.size();
  BiPoly prev(1.0);
  bool negate = false;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k].is_zero()) {
      size_t r = k + 1;
      while (r < n && M[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(M[k], M[r]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        BiPoly num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        auto q = divide_exact(num, prev);
        if (!q) throw std::runtime_error("mat_determinant: inexact Bareiss division");
        M[i][j] = *q;
      }
    prev = M[k][k];
  }
  return negate ? -M[n - 1][n - 1] : M[n - 1][n - 1];
}

}  // namespace

BiPoly mat_determinant(const MatPoly& M) {
  std::vector<std::vector<BiPoly>> rows(M.d(), std::vector<BiPoly>(M.d()));
  for (int i = 0; i < M.d(); ++i)
    for (int j = 0; j < M.d(); ++j) rows[i][j] = M(i, j);
  return M.d() <= 4 ? cofactor_det(rows) : bareiss_det(std::move(rows));
}

}  // namespace bidisk

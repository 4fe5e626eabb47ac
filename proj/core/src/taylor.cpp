#include "bidisk/taylor.hpp"

#include <algorithm>
#include <cmath>

namespace bidisk {

std::string to_string(DecayClass c) {
  switch (c) {
    case DecayClass::FINITE: return "FINITE";
    case DecayClass::GEOMETRIC: return "GEOMETRIC";
    case DecayClass::SLOW: return "SLOW";
  }
  return "?";
}

TaylorTable::TaylorTable(int d, int A, int B)
    : d_(d), A_(A), B_(B), c_(static_cast<size_t>(A + 1) * (B + 1), Eigen::MatrixXcd::Zero(d, d)) {
  if (A < 0 || B < 0 || d < 1) throw std::invalid_argument("TaylorTable: bad dimensions");
}

void TaylorTable::update_tail_norm() {
  tail_norm_ = 0.0;
  for (int a = 0; a <= A_; ++a)
    for (int b = 0; b <= B_; ++b)
      if (a == A_ || b == B_) tail_norm_ = std::max(tail_norm_, (*this)(a, b).norm());
}

TaylorTable expand(const RationalInnerMatrix& theta, int A, int B) {
  const BiPoly& p = theta.p();
  const cplx p00 = p.coeff(0, 0);
  if (std::abs(p00) <= kTrimTol) throw std::invalid_argument("expand: p(0,0) = 0");
  TaylorTable T(theta.d(), A, B);
  // Processing a ascending then b ascending visits every (a-c, b-e) first.
  for (int a = 0; a <= A; ++a)
    for (int b = 0; b <= B; ++b) {
      Eigen::MatrixXcd acc = theta.Q().coeff(a, b);
      for (int c = 0; c <= std::min(a, p.deg1()); ++c)
        for (int e = 0; e <= std::min(b, p.deg2()); ++e) {
          if (c == 0 && e == 0) continue;
          const cplx pc = p.coeff(c, e);
          if (pc != 0.0) acc -= pc * T(a - c, b - e);
        }
      T(a, b) = acc / p00;
    }
  T.update_tail_norm();
  return T;
}

TailDiagnostic tail_diagnostic(const TaylorTable& T) {
  TailDiagnostic out;
  out.tail_norm = T.tail_norm();
  double peak = 0.0;
  const int N = std::min(T.A(), T.B());
  std::vector<double> frame(N + 1, 0.0);
  for (int a = 0; a <= T.A(); ++a)
    for (int b = 0; b <= T.B(); ++b) {
      const double n = T(a, b).norm();
      peak = std::max(peak, n);
      const int k = std::max(a, b);
      if (k <= N) frame[k] = std::max(frame[k], n);
    }
  if (out.tail_norm == 0.0) {
    out.decay_class = DecayClass::FINITE;
    return out;
  }
  // Fit on the outermost 5 frames still above roundoff so that fast
  // geometric decay is not mistaken for a polynomial tail.
  int hi = N;
  while (hi > 0 && frame[hi] <= 1e-14 * peak) --hi;
  const int lo = std::max(0, hi - 4);
  const int count = hi - lo + 1;
  if (count < 2) {
    out.decay_class = DecayClass::FINITE;
    return out;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int n = lo; n <= hi; ++n) {
    const double y = std::log(std::max(frame[n], 1e-300));
    sx += n;
    sy += y;
    sxx += double(n) * n;
    sxy += n * y;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  out.ratio = std::exp(slope);
  out.decay_class = out.ratio < 0.95 ? DecayClass::GEOMETRIC : DecayClass::SLOW;
  return out;
}

double recursion_residual(const RationalInnerMatrix& theta, const TaylorTable& T) {
  const BiPoly& p = theta.p();
  double worst = 0.0;
  for (int a = 0; a <= T.A(); ++a)
    for (int b = 0; b <= T.B(); ++b) {
      Eigen::MatrixXcd acc = -theta.Q().coeff(a, b);
      for (int c = 0; c <= std::min(a, p.deg1()); ++c)
        for (int e = 0; e <= std::min(b, p.deg2()); ++e) acc += p.coeff(c, e) * T(a - c, b - e);
      worst = std::max(worst, acc.cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace bidisk

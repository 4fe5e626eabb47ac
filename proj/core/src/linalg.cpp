#include "bidisk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bidisk {

namespace {

// Reduces a tall matrix to its n×n triangular factor; singular values and
// right singular vectors are unchanged.
Eigen::MatrixXcd compress_rows(const Eigen::MatrixXcd& M) {
  if (M.rows() <= M.cols()) return M;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(M);
  return qr.matrixQR().topRows(M.cols()).triangularView<Eigen::Upper>();
}

}  // namespace

NullSpace null_space(const Eigen::MatrixXcd& M, double rel_tol, double scale_floor) {
  const Eigen::Index n = M.cols();
  NullSpace out;
  if (n == 0) {
    out.basis.resize(0, 0);
    return out;
  }
  if (M.rows() == 0) {
    out.basis = Eigen::MatrixXcd::Identity(n, n);
    out.sigmas = Eigen::VectorXd::Zero(0);
    return out;
  }
  Eigen::MatrixXcd R = compress_rows(M);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R, Eigen::ComputeFullV);
  out.sigmas = svd.singularValues();
  const double smax = out.sigmas.size() ? out.sigmas(0) : 0.0;
  const double thr = rel_tol * std::max(smax, scale_floor);
  int rank = 0;
  for (Eigen::Index i = 0; i < out.sigmas.size(); ++i)
    if (out.sigmas(i) > thr && out.sigmas(i) > 0.0) ++rank;
  out.rank = rank;
  out.basis = svd.matrixV().rightCols(n - rank);
  return out;
}

Orthonormalized orthonormalize(const Eigen::MatrixXcd& U, double rel_tol) {
  Orthonormalized out;
  const Eigen::Index m = U.rows(), n = U.cols();
  if (n == 0) {
    out.Q.resize(m, 0);
    out.X.resize(0, 0);
    return out;
  }
  Eigen::MatrixXcd Qthin;
  Eigen::MatrixXcd R;
  if (m > n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(U);
    R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    Qthin = qr.householderQ() * Eigen::MatrixXcd::Identity(m, n);
  } else {
    R = U;
    Qthin = Eigen::MatrixXcd::Identity(m, m);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index keep = 0;
  while (keep < s.size() && s(keep) > rel_tol * s(0) && s(keep) > 0.0) ++keep;
  out.Q = Qthin * svd.matrixU().leftCols(keep);
  out.X = svd.matrixV().leftCols(keep) * s.head(keep).cwiseInverse().asDiagonal();
  return out;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& M) {
  if (M.size() == 0) return Eigen::VectorXd::Zero(0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(compress_rows(M));
  return svd.singularValues();
}

double subspace_angle(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V) {
  if (U.cols() != V.cols()) throw std::invalid_argument("subspace_angle: dimension mismatch");
  if (U.cols() == 0) return 0.0;
  const Eigen::VectorXd c = singular_values(U.adjoint() * V);
  const double cmin = std::clamp(c.minCoeff(), -1.0, 1.0);
  // sin of the largest angle from the residual, accurate for small angles.
  const Eigen::MatrixXcd resid = V - U * (U.adjoint() * V);
  const double smax = singular_values(resid).maxCoeff();
  return smax < 0.5 ? std::asin(std::min(1.0, smax)) : std::acos(cmin);
}

}  // namespace bidisk

#pragma once

#include <Eigen/Dense>

namespace bidisk {

inline constexpr double kRankTol = 1e-8;

struct NullSpace {
  Eigen::MatrixXcd basis;  // orthonormal, cols x nullity
  Eigen::VectorXd sigmas;  // descending
  int rank = 0;
};

// Right null space of M, counting σ > rel_tol·max(σ_max, scale_floor) as rank.
NullSpace null_space(const Eigen::MatrixXcd& M, double rel_tol, double scale_floor = 0.0);

struct Orthonormalized {
  Eigen::MatrixXcd Q;  // orthonormal columns spanning range(U)
  Eigen::MatrixXcd X;  // U·X = Q
};

// Thin SVD route; singular directions with σ <= rel_tol·σ_max are dropped.
Orthonormalized orthonormalize(const Eigen::MatrixXcd& U, double rel_tol);

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& M);

// Largest principal angle (radians) between the column spans of two
// orthonormal matrices of equal column count.
double subspace_angle(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V);

}  // namespace bidisk

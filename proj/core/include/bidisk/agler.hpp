#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bidisk/model_space.hpp"

namespace bidisk {

struct AglerSpaces {
  Subspace model;
  Subspace smax1;
  Subspace smin2;
  Subspace hkmax1;
  Subspace hkmin2;
  // Orthonormal coordinates of each space in the model basis.
  Eigen::MatrixXcd smax1_coords, smin2_coords, hkmax1_coords, hkmin2_coords;
  int K_depth = 0;
};

struct AglerOptions {
  int K_depth = -1;  // -1 selects A
  std::optional<Pad> pad;
};

Subspace compute_smax1(const RationalInnerMatrix& theta, const Subspace& basis, int K_depth);
Subspace compute_smin2(const RationalInnerMatrix& theta, const Subspace& basis, const Subspace& smax1);

AglerSpaces compute_agler_spaces(const RationalInnerMatrix& theta, int A, int B, const AglerOptions& opt = {});

struct KernelDims {
  int hkmax1 = 0;
  int hkmin2 = 0;
};

KernelDims kernel_space_dims(const RationalInnerMatrix& theta, const AglerSpaces& spaces);

// (dim H(K^max_2), dim H(K^min_1)) of Θ, through the z1 pipeline on Θ with
// the variables swapped.
KernelDims swapped_kernel_dims(const RationalInnerMatrix& theta, int A, int B, const AglerOptions& opt = {});

using Point = std::pair<cplx, cplx>;
using SamplePair = std::pair<Point, Point>;

// Points with each coordinate uniform in the disk of the given radius.
std::vector<Point> sample_points(int n, std::uint64_t seed, double radius = 0.7);
std::vector<SamplePair> sample_pairs(int n, std::uint64_t seed, double radius = 0.7);

double agler_kernel_residual(const RationalInnerMatrix& theta, const AglerSpaces& spaces,
                             const std::vector<SamplePair>& samples);

struct KernelFormulaCheck {
  // Coefficients on the inner truncation grid.
  Vec formula1, matrix1, formula2, matrix2;
  double max_diff() const;
};

// [S*_{z1}, S_{z1}] on the S^max_1 and S^min_2 parts of the model kernel at w
// in direction e: closed formulas against the compressed commutator C.
KernelFormulaCheck commutator_kernel_formula(const RationalInnerMatrix& theta, const AglerSpaces& spaces,
                                             const OpMatrix& C, Point w, const Eigen::VectorXcd& e);

// Smallest singular value of C restricted to H(K^max_1); empty when that
// space is {0}.
std::optional<double> commutator_injectivity(const RationalInnerMatrix& theta, const AglerSpaces& spaces,
                                        const OpMatrix& C);

}  // namespace bidisk

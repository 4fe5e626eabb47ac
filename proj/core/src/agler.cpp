#include "bidisk/agler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bidisk/parallel.hpp"

namespace bidisk {

namespace {

double coefficient_mass(const BiPoly& p) { return p.coeffs().cwiseAbs().sum(); }

Eigen::MatrixXcd coords_in(const Subspace& V, const Subspace& sub) { return V.basis.adjoint() * sub.basis; }

// S ⊖ z_j·S' where S' is the part of S whose numerators leave room for one
// more power of z_j.  Coordinates are relative to the model basis V.
Eigen::MatrixXcd wandering_coords(const RationalInnerMatrix& theta, const Subspace& V, const Eigen::MatrixXcd& X,
                                  int j) {
  const Eigen::Index s = X.cols();
  if (s == 0) return Eigen::MatrixXcd::Zero(V.dim(), 0);
  const TruncGrid& g = V.grid;
  const Eigen::MatrixXcd R = V.numerators * X;
  const int edge_count = (j == 1 ? g.B + 1 : g.A + 1) * g.d;
  Eigen::MatrixXcd top(edge_count, s);
  int row = 0;
  if (j == 1) {
    for (int b = 0; b <= g.B; ++b)
      for (int k = 0; k < g.d; ++k) top.row(row++) = R.row(g.index(g.A, b, k));
  } else {
    for (int a = 0; a <= g.A; ++a)
      for (int k = 0; k < g.d; ++k) top.row(row++) = R.row(g.index(a, g.B, k));
  }
  const NullSpace keep = null_space(top, kRankTol, coefficient_mass(theta.p()));
  const Eigen::Index t = keep.basis.cols();
  const Eigen::Index h = s - t;
  if (h <= 0) return Eigen::MatrixXcd::Zero(V.dim(), 0);

  Eigen::MatrixXcd shifted(V.dim(), t);
  const Eigen::MatrixXcd Y = V.basis * (X * keep.basis);
  for (Eigen::Index c = 0; c < t; ++c) shifted.col(c) = V.basis.adjoint() * shift(Y.col(c), V.ambient, j);
  shifted = X * (X.adjoint() * shifted);
  Eigen::MatrixXcd W = X;
  if (t > 0) {
    const Orthonormalized Z = orthonormalize(shifted, kRankTol);
    W -= Z.Q * (Z.Q.adjoint() * X);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(W, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(h);
}

}  // namespace

Subspace compute_smax1(const RationalInnerMatrix& theta, const Subspace& V, int K_depth) {
  if (K_depth < 1) throw std::invalid_argument("compute_smax1: K_depth must be >= 1");
  if (V.ambient.A - V.grid.A < K_depth)
    throw std::invalid_argument("compute_smax1: insufficient z1 pad for the requested invariance depth");
  const ThetaAction act(theta);
  const TruncGrid region = act.constraint_region(V.ambient);
  const Eigen::Index n = V.dim();
  const Eigen::Index per = (region.A >= 0 && region.B >= 0) ? region.size() : 0;
  Eigen::MatrixXcd M(per * K_depth, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Vec f = V.basis.col(c);
    for (int k = 1; k <= K_depth; ++k) {
      f = shift(f, V.ambient, 1);
      if (per) M.block((k - 1) * per, c, per, 1) = act.constraint(f, V.ambient);
    }
  }
  const NullSpace ns = null_space(M, kRankTol, coefficient_mass(theta.p()));
  return V.span(ns.basis, "Smax1_" + theta.label());
}

Subspace compute_smin2(const RationalInnerMatrix& theta, const Subspace& V, const Subspace& smax1) {
  const Eigen::MatrixXcd X = coords_in(V, smax1);
  Eigen::MatrixXcd Y;
  if (X.cols() == 0) {
    Y = Eigen::MatrixXcd::Identity(V.dim(), V.dim());
  } else {
    Y = null_space(X.adjoint(), kRankTol).basis;
  }
  return V.span(Y, "Smin2_" + theta.label());
}

AglerSpaces compute_agler_spaces(const RationalInnerMatrix& theta, int A, int B, const AglerOptions& opt) {
  AglerSpaces s;
  s.K_depth = opt.K_depth < 0 ? A : opt.K_depth;
  const Pad base = opt.pad ? *opt.pad : choose_pad(theta).pad;
  if (base.p2 < 1) throw std::invalid_argument("agler: z2 pad must be at least 1");
  s.model = model_basis(theta, {A, B, theta.d()}, {base.p1 + std::max(1, s.K_depth), base.p2});
  if (s.K_depth >= 1) {
    s.smax1 = compute_smax1(theta, s.model, s.K_depth);
  } else {
    s.smax1 = s.model.span(Eigen::MatrixXcd::Identity(s.model.dim(), s.model.dim()), "Smax1_" + theta.label());
  }
  s.smin2 = compute_smin2(theta, s.model, s.smax1);
  s.smax1_coords = coords_in(s.model, s.smax1);
  s.smin2_coords = coords_in(s.model, s.smin2);
  s.hkmax1_coords = wandering_coords(theta, s.model, s.smax1_coords, 1);
  s.hkmin2_coords = wandering_coords(theta, s.model, s.smin2_coords, 2);
  s.hkmax1 = s.model.span(s.hkmax1_coords, "HKmax1_" + theta.label());
  s.hkmin2 = s.model.span(s.hkmin2_coords, "HKmin2_" + theta.label());
  return s;
}

KernelDims kernel_space_dims(const RationalInnerMatrix&, const AglerSpaces& spaces) {
  return {spaces.hkmax1.dim(), spaces.hkmin2.dim()};
}

KernelDims swapped_kernel_dims(const RationalInnerMatrix& theta, int A, int B, const AglerOptions& opt) {
  const RationalInnerMatrix sw = swap_variables(theta);
  AglerOptions o = opt;
  if (opt.pad) o.pad = Pad{opt.pad->p2, opt.pad->p1};
  return kernel_space_dims(sw, compute_agler_spaces(sw, B, A, o));
}

std::vector<Point> sample_points(int n, std::uint64_t seed, double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&] { return std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng)); };
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    const cplx a = draw();
    const cplx b = draw();
    out.emplace_back(a, b);
  }
  return out;
}

std::vector<SamplePair> sample_pairs(int n, std::uint64_t seed, double radius) {
  const std::vector<Point> pts = sample_points(2 * n, seed, radius);
  std::vector<SamplePair> out;
  for (int i = 0; i < n; ++i) out.emplace_back(pts[2 * i], pts[2 * i + 1]);
  return out;
}

double agler_kernel_residual(const RationalInnerMatrix& theta, const AglerSpaces& spaces,
                             const std::vector<SamplePair>& samples) {
  const int d = theta.d();
  const TruncGrid& amb = spaces.model.ambient;
  std::vector<double> res(samples.size(), 0.0);
  parallel_for(samples.size(), [&](size_t i) {
    const auto& [z, w] = samples[i];
    const Eigen::MatrixXcd H1z = evaluate_columns(spaces.hkmax1.basis, amb, z.first, z.second);
    const Eigen::MatrixXcd H1w = evaluate_columns(spaces.hkmax1.basis, amb, w.first, w.second);
    const Eigen::MatrixXcd H2z = evaluate_columns(spaces.hkmin2.basis, amb, z.first, z.second);
    const Eigen::MatrixXcd H2w = evaluate_columns(spaces.hkmin2.basis, amb, w.first, w.second);
    const Eigen::MatrixXcd K1 = H1z * H1w.adjoint();
    const Eigen::MatrixXcd K2 = H2z * H2w.adjoint();
    const Eigen::MatrixXcd Tz = theta(z.first, z.second);
    const Eigen::MatrixXcd Tw = theta(w.first, w.second);
    const Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(d, d) - Tz * Tw.adjoint() -
                               (1.0 - z.first * std::conj(w.first)) * K2 -
                               (1.0 - z.second * std::conj(w.second)) * K1;
    res[i] = R.norm();
  });
  return res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
}

double KernelFormulaCheck::max_diff() const {
  return std::max((formula1 - matrix1).cwiseAbs().maxCoeff(), (formula2 - matrix2).cwiseAbs().maxCoeff());
}

KernelFormulaCheck commutator_kernel_formula(const RationalInnerMatrix& theta, const AglerSpaces& spaces,
                                             const OpMatrix& C, Point w, const Eigen::VectorXcd& e) {
  if (theta.deg().m1 > 1) throw std::invalid_argument("commutator_kernel_formula: requires deg_1 Θ <= 1");
  const Subspace& V = spaces.model;
  const TruncGrid& amb = V.ambient;
  if (C.matrix.rows() != V.dim()) throw std::invalid_argument("commutator_kernel_formula: C not on the model basis");
  if (e.size() != theta.d()) throw std::invalid_argument("commutator_kernel_formula: e has the wrong size");
  const ThetaAction act(theta);

  // Kernel of the truncated model space at w in direction e, as coordinates.
  const Eigen::VectorXcd c = evaluate_columns(V.basis, amb, w.first, w.second).adjoint() * e;
  const Eigen::MatrixXcd& X1 = spaces.smax1_coords;
  const Eigen::MatrixXcd& X2 = spaces.smin2_coords;
  const Eigen::VectorXcd k1 = X1 * (X1.adjoint() * c);
  const Eigen::VectorXcd k2 = X2 * (X2.adjoint() * c);

  KernelFormulaCheck out;
  // [S*, S] = -(SS* - S*S).
  out.matrix1 = embed(Vec(V.basis * (-(C.matrix * k1))), amb, V.grid);
  out.matrix2 = embed(Vec(V.basis * (-(C.matrix * k2))), amb, V.grid);

  const Subspace& H = spaces.hkmax1;
  const BiPoly p0(Eigen::MatrixXcd(theta.p().coeffs().row(0)));
  Vec g1 = Vec::Zero(amb.size());
  Vec g2 = Vec::Zero(amb.size());
  for (int i = 0; i < H.dim(); ++i) {
    const Vec phi = H.basis.col(i);
    const cplx a1 = evaluate(phi, amb, w.first, w.second).dot(e);
    Vec at_zero = Vec::Zero(amb.size());
    at_zero.head(Eigen::Index(amb.B + 1) * amb.d) = phi.head(Eigen::Index(amb.B + 1) * amb.d);
    g1 += a1 * at_zero;

    const Vec f = embed(Vec(H.numerators.col(i)), V.grid, amb);
    const cplx a2 = evaluate(backshift(phi, amb, 1), amb, w.first, w.second).dot(e);
    g2 += a2 * ThetaAction::div_poly(p0, backshift(f, amb, 1), amb);
  }
  out.formula1 = embed(act.project(g1, amb), amb, V.grid);
  out.formula2 = embed(act.project(g2, amb), amb, V.grid);
  return out;
}

std::optional<double> commutator_injectivity(const RationalInnerMatrix&, const AglerSpaces& spaces, const OpMatrix& C) {
  if (spaces.hkmax1_coords.cols() == 0) return std::nullopt;
  if (C.matrix.rows() != spaces.model.dim()) throw std::invalid_argument("commutator_injectivity: C not on the model basis");
  const Eigen::VectorXd s = singular_values(C.matrix * spaces.hkmax1_coords);
  return s(s.size() - 1);
}

}  // namespace bidisk

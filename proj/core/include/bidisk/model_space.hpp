#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bidisk/grid.hpp"
#include "bidisk/linalg.hpp"
#include "bidisk/taylor.hpp"

namespace bidisk {

struct Pad {
  int p1 = 0;
  int p2 = 0;
  bool operator==(const Pad&) const = default;
};

inline constexpr int kMaxPad = 48;
inline constexpr int kDecayTableSize = 40;

// Orthonormal columns living on the padded grid `ambient`; each column equals
// numerator/p where the numerator is supported on `grid`.
struct Subspace {
  TruncGrid grid;
  TruncGrid ambient;
  Eigen::MatrixXcd basis;
  Eigen::MatrixXcd numerators;
  std::string label;

  int dim() const { return static_cast<int>(basis.cols()); }
  Eigen::MatrixXcd restricted() const { return embed(basis, ambient, grid); }
  // Sub-subspace spanned by basis·coords (coords orthonormal).
  Subspace span(const Eigen::MatrixXcd& coords, std::string sublabel) const;
};

struct OpMatrix {
  Eigen::MatrixXcd matrix;
  std::string domain;
  std::string codomain;
};

OpMatrix analytic_mult(const TaylorTable& T, const TruncGrid& grid);
OpMatrix adjoint_mult(const TaylorTable& T, const TruncGrid& grid);
Vec project_model(const TaylorTable& T, const TruncGrid& grid, const Vec& f);

struct PadChoice {
  Pad pad;
  TailDiagnostic decay;
  // ρ^min(pad) for non-polynomial Θ, 0 otherwise.
  double tail_estimate = 0.0;
};

// (m1+2, m2+2) for polynomial Θ; otherwise grown until the fitted Taylor
// decay reaches roundoff, capped at kMaxPad.
PadChoice choose_pad(const RationalInnerMatrix& theta);
double tail_estimate(const TailDiagnostic& decay, Pad pad);

Subspace model_basis(const RationalInnerMatrix& theta, const TruncGrid& grid, Pad pad);

struct CompressedShift {
  OpMatrix S;
  Eigen::MatrixXcd forward;   // P_Θ(z_j φ) on the ambient grid
  Eigen::MatrixXcd backward;  // T_{z̄j} φ on the ambient grid
  int j = 1;
};

CompressedShift compressed_shift(const RationalInnerMatrix& theta, const Subspace& basis, int j);

// SS* - S*S compressed to the basis, from the exact images of S and S*.
OpMatrix commutator(const CompressedShift& S);
// SS* - S*S for a plain square matrix.
OpMatrix commutator(const OpMatrix& S);

struct RankResult {
  int rank = 0;
  Eigen::VectorXd sigmas;
};

RankResult numerical_rank(const OpMatrix& C, double tol_rel = kRankTol, double tol_abs = 1e-10);

enum class Verdict { STABLE, DIVERGENT, INCONCLUSIVE };
std::string to_string(Verdict v);

struct RankLevel {
  int A = 0;
  int B = 0;
  Pad pad;
  int dim_model = 0;
  std::vector<double> sigmas;
  int rank = 0;
};

struct RankReport {
  std::string label;
  Degree deg;
  DetDegree det_deg;
  DecayClass decay = DecayClass::FINITE;
  std::vector<RankLevel> levels;
  std::optional<int> stabilized_rank;
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::vector<std::string> warnings;
  std::string limitation;
};

struct SweepOptions {
  std::optional<Pad> pad;
  double tol_rel = kRankTol;
  double tol_abs = 1e-10;
  int j = 1;
};

using Schedule = std::vector<std::pair<int, int>>;

void validate_schedule(const Schedule& s);
Verdict classify_ranks(const std::vector<int>& ranks);

RankLevel rank_level(const RationalInnerMatrix& theta, int A, int B, Pad pad, const SweepOptions& opt);
RankReport rank_sweep(const RationalInnerMatrix& theta, const Schedule& schedule, const SweepOptions& opt = {});

}  // namespace bidisk

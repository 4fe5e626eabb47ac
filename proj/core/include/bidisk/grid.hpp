#pragma once

#include <vector>

#include "bidisk/inner.hpp"

namespace bidisk {

using Vec = Eigen::VectorXcd;

// Flat coordinates for d-vector coefficient grids: (a, b, k) -> ((a*(B+1))+b)*d+k.
struct TruncGrid {
  int A = 0;
  int B = 0;
  int d = 1;

  Eigen::Index size() const { return Eigen::Index(A + 1) * (B + 1) * d; }
  Eigen::Index index(int a, int b, int k) const { return (Eigen::Index(a) * (B + 1) + b) * d + k; }
  bool contains(int a, int b) const { return a >= 0 && b >= 0 && a <= A && b <= B; }
  TruncGrid padded(int p1, int p2) const { return {A + p1, B + p2, d}; }
  bool operator==(const TruncGrid&) const = default;
};

// Zero-extends or truncates coefficients between grids of equal d.
Vec embed(const Vec& v, const TruncGrid& from, const TruncGrid& to);
Eigen::MatrixXcd embed(const Eigen::MatrixXcd& v, const TruncGrid& from, const TruncGrid& to);

// Multiplication by z_j, dropping the overflow row or column.
Vec shift(const Vec& v, const TruncGrid& g, int j, int times = 1);
// T_{z̄j}: drop the z_j-free part and divide by z_j.
Vec backshift(const Vec& v, const TruncGrid& g, int j);

// The d-vector value of a truncated coefficient vector as a polynomial.
Eigen::VectorXcd evaluate(const Vec& v, const TruncGrid& g, cplx z1, cplx z2);
// Row of d×n values for every column of V.
Eigen::MatrixXcd evaluate_columns(const Eigen::MatrixXcd& V, const TruncGrid& g, cplx z1, cplx z2);

// Matrix-free actions of Θ = Q/p on coefficient grids.  mul and adj are
// exactly P T_Θ P and P T_Θ* P for the grid projection P.
class ThetaAction {
 public:
  explicit ThetaAction(const RationalInnerMatrix& theta);

  int q_deg1() const { return qdeg1_; }
  int q_deg2() const { return qdeg2_; }

  Vec mul_numerator(const Vec& v, const TruncGrid& g) const;
  Vec adj_numerator(const Vec& v, const TruncGrid& g) const;
  Vec div_p(const Vec& v, const TruncGrid& g) const;
  Vec adj_div_p(const Vec& v, const TruncGrid& g) const;

  Vec mul(const Vec& v, const TruncGrid& g) const { return div_p(mul_numerator(v, g), g); }
  Vec adj(const Vec& v, const TruncGrid& g) const { return adj_div_p(adj_numerator(v, g), g); }
  Vec project(const Vec& v, const TruncGrid& g) const { return v - mul(adj(v, g), g); }

  // T_{Q*} v on the indices a <= A - deg1 Q, b <= B - deg2 Q, where every
  // contributing coefficient lies inside the grid.
  TruncGrid constraint_region(const TruncGrid& g) const;
  Vec constraint(const Vec& v, const TruncGrid& g) const;

  // Forward division of v by a polynomial other than p (used for p(0, z2)).
  static Vec div_poly(const BiPoly& q, const Vec& v, const TruncGrid& g);

 private:
  struct MatTerm {
    int a, b;
    Eigen::MatrixXcd M;
  };
  struct ScalarTerm {
    int a, b;
    cplx c;
  };
  int d_;
  int qdeg1_ = 0, qdeg2_ = 0;
  std::vector<MatTerm> q_;
  std::vector<ScalarTerm> p_;
  cplx p00_;
};

}  // namespace bidisk

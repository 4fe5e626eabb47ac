#pragma once

#include <string>
#include <vector>

#include "bidisk/inner.hpp"

namespace bidisk {

enum class DecayClass { FINITE, GEOMETRIC, SLOW };

std::string to_string(DecayClass c);

class TaylorTable {
 public:
  TaylorTable(int d, int A, int B);

  int d() const { return d_; }
  int A() const { return A_; }
  int B() const { return B_; }
  double tail_norm() const { return tail_norm_; }

  const Eigen::MatrixXcd& operator()(int a, int b) const { return c_[static_cast<size_t>(a) * (B_ + 1) + b]; }
  Eigen::MatrixXcd& operator()(int a, int b) { return c_[static_cast<size_t>(a) * (B_ + 1) + b]; }

  void update_tail_norm();

 private:
  int d_, A_, B_;
  double tail_norm_ = 0.0;
  std::vector<Eigen::MatrixXcd> c_;
};

TaylorTable expand(const RationalInnerMatrix& theta, int A, int B);

struct TailDiagnostic {
  double tail_norm = 0.0;
  DecayClass decay_class = DecayClass::FINITE;
  // Fitted per-frame decay ratio of the outer frame norms (0 when FINITE).
  double ratio = 0.0;
};

TailDiagnostic tail_diagnostic(const TaylorTable& T);

// Largest |p(0,0)Θ_ab + Σ p_ce Θ_{a-c,b-e} - Q_ab| over the table.
double recursion_residual(const RationalInnerMatrix& theta, const TaylorTable& T);

}  // namespace bidisk

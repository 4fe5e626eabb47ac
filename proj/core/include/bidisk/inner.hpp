#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bidisk/poly.hpp"

namespace bidisk {

inline constexpr double kInnerTol = 1e-9;

struct NotInnerError : std::invalid_argument {
  NotInnerError(const std::string& what, double residual)
      : std::invalid_argument(what), residual(residual) {}
  double residual;
};

struct Degree {
  int m1 = 0;
  int m2 = 0;
  bool operator==(const Degree&) const = default;
};

struct DetDegree {
  int D1 = 0;
  int D2 = 0;
  // Set when the gcd slice oracle disagreed with the remainder sequence.
  bool flagged = false;
  bool operator==(const DetDegree& o) const { return D1 == o.D1 && D2 == o.D2; }
};

// Θ = Q/p.  Instances built through create() are inner; unchecked() keeps
// arbitrary candidates so that verification can report on them.
class RationalInnerMatrix {
 public:
  static RationalInnerMatrix create(MatPoly Q, BiPoly p, std::string label);
  static RationalInnerMatrix unchecked(MatPoly Q, BiPoly p, std::string label);

  int d() const { return Q_.d(); }
  const MatPoly& Q() const { return Q_; }
  const BiPoly& p() const { return p_; }
  const Degree& deg() const { return deg_; }
  const std::string& label() const { return label_; }
  bool polynomial() const { return p_.is_constant(); }

  Eigen::MatrixXcd operator()(cplx z1, cplx z2) const;

  RationalInnerMatrix relabeled(std::string label) const;

 private:
  RationalInnerMatrix(MatPoly Q, BiPoly p, std::string label);
  MatPoly Q_;
  BiPoly p_;
  Degree deg_;
  std::string label_;
};

struct InnerReport {
  bool pass = false;
  double residual = 0.0;
};

InnerReport verify_inner_exact(const RationalInnerMatrix& theta);
InnerReport verify_inner_grid(const RationalInnerMatrix& theta, int N);

Degree degree(const RationalInnerMatrix& theta);
DetDegree det_degree(const RationalInnerMatrix& theta);

RationalInnerMatrix from_scalar(const BiPoly& q, const BiPoly& p, std::string label = "scalar");
RationalInnerMatrix from_stable_poly(const BiPoly& p, int m, int n, std::string label = "stable");

RationalInnerMatrix diagonal(const std::vector<RationalInnerMatrix>& scalars, std::string label = "diagonal");

// Each pair is (Φ_i(z1), Ψ_i(z2)); the result is Φ_1Ψ_1·Φ_2Ψ_2·…
RationalInnerMatrix product_one_var(const std::vector<std::pair<RationalInnerMatrix, RationalInnerMatrix>>& factors,
                                    std::string label = "product");

RationalInnerMatrix swap_variables(const RationalInnerMatrix& theta);

RationalInnerMatrix unitary_conjugate(const RationalInnerMatrix& theta, const Eigen::MatrixXcd& U,
                                      const Eigen::MatrixXcd& V);

// Accepts the fixed names and scalar_z2n(n) with n >= 0.
RationalInnerMatrix builtin(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace bidisk

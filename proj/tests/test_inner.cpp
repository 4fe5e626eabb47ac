#include <doctest.h>

#include "bidisk/experiments.hpp"
#include "bidisk/inner.hpp"
#include "oracles.hpp"

using namespace bidisk;
using oracle::cplx;

namespace {

BiPoly z1() { return BiPoly::monomial(1, 0); }
BiPoly z2() { return BiPoly::monomial(0, 1); }

RationalInnerMatrix scalar_poly(const BiPoly& q, const std::string& label = "scalar") {
  return from_scalar(q, BiPoly(1.0), label);
}

std::vector<RationalInnerMatrix> all_builtins() {
  std::vector<RationalInnerMatrix> out;
  for (const char* n : {"ex41_diag_z1z2_1", "ex42_symmetric", "ex43_deg2", "scalar_z1z2", "scalar_z2n(0)",
                        "scalar_z2n(2)", "scalar_z2n(3)", "scalar_favorite"})
    out.push_back(builtin(n));
  return out;
}

MatPoly non_inner_q() {
  MatPoly Q(2);
  Q(0, 0) = z1() + BiPoly(1.0);
  Q(1, 1) = BiPoly(1.0);
  return Q;
}

double qdiff(const MatPoly& A, const MatPoly& B) {
  double m = 0.0;
  for (int i = 0; i < A.d(); ++i)
    for (int k = 0; k < A.d(); ++k) m = std::max(m, (A(i, k) - B(i, k)).max_abs());
  return m;
}

}  // namespace

TEST_CASE("verify_inner_exact: spec examples") {
  const InnerReport ex42 = verify_inner_exact(builtin("ex42_symmetric"));
  CHECK(ex42.pass);
  CHECK(ex42.residual == 0.0);
  const InnerReport id = verify_inner_exact(RationalInnerMatrix::create(MatPoly::identity(2), BiPoly(1.0), "I"));
  CHECK(id.pass);
  CHECK(id.residual == 0.0);
  const InnerReport bad = verify_inner_exact(RationalInnerMatrix::unchecked(non_inner_q(), BiPoly(1.0), "bad"));
  CHECK_FALSE(bad.pass);
  CHECK(bad.residual >= 1.0);
}

TEST_CASE("verify_inner_grid: spec examples") {
  CHECK(verify_inner_grid(builtin("ex43_deg2"), 64).residual <= 1e-12);
  const RationalInnerMatrix dz = diagonal({scalar_poly(z1()), scalar_poly(z2())});
  CHECK(verify_inner_grid(dz, 8).residual < 1e-15);
  // ‖diag(|1+τ1|² − 1, 0)‖ / (1 + 1) = 3/2 at τ1 = 1, a grid point.
  const InnerReport bad = verify_inner_grid(RationalInnerMatrix::unchecked(non_inner_q(), BiPoly(1.0), "bad"), 16);
  CHECK(bad.residual >= 1.0);
  CHECK(std::abs(bad.residual - 1.5) < 1e-12);
  CHECK_THROWS_AS(verify_inner_grid(dz, 1), std::invalid_argument);
}

TEST_CASE("exact innerness is roundoff-exact on every builtin and both checks agree") {
  for (const auto& t : all_builtins()) {
    CAPTURE(t.label());
    const InnerReport e = verify_inner_exact(t);
    CHECK(e.pass);
    CHECK(e.residual <= 1e-15);
    CHECK(verify_inner_grid(t, 32).pass == e.pass);
  }
  const RationalInnerMatrix bad = RationalInnerMatrix::unchecked(non_inner_q(), BiPoly(1.0), "bad");
  CHECK(verify_inner_grid(bad, 32).pass == verify_inner_exact(bad).pass);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(RationalInnerMatrix::create(non_inner_q(), BiPoly(1.0), "bad"), NotInnerError);
  try {
    RationalInnerMatrix::create(non_inner_q(), BiPoly(1.0), "bad");
  } catch (const NotInnerError& e) {
    CHECK(e.residual >= 1.0);
  }
  CHECK_THROWS_AS(RationalInnerMatrix::unchecked(MatPoly::identity(1), z1(), "p00"), std::invalid_argument);
  CHECK_THROWS_AS(RationalInnerMatrix::unchecked(MatPoly::identity(1), BiPoly{}, "zero"), std::invalid_argument);
  CHECK_THROWS_AS(from_scalar(z1() + BiPoly(1.0), BiPoly(1.0)), NotInnerError);
}

TEST_CASE("degree: spec examples") {
  CHECK(builtin("ex42_symmetric").deg() == Degree{1, 1});
  CHECK(builtin("ex43_deg2").deg() == Degree{2, 1});
  CHECK(RationalInnerMatrix::create(MatPoly::identity(3), BiPoly(1.0), "I").deg() == Degree{0, 0});
  CHECK(builtin("scalar_z2n(3)").deg() == Degree{0, 3});
  CHECK(builtin("scalar_favorite").deg() == Degree{1, 1});
}

TEST_CASE("degree reduces common factors of entries") {
  // (z1z2·p)/p with p stable: deg (1,1) after reduction.
  oracle::Gen gen(31);
  const BiPoly p = gen.stable(1, 2);
  const RationalInnerMatrix t = from_scalar(BiPoly::monomial(1, 1) * p, p, "padded");
  CHECK(t.deg() == Degree{1, 1});
}

TEST_CASE("det_degree: spec examples") {
  CHECK(det_degree(builtin("ex42_symmetric")).D2 == 1);
  CHECK(det_degree(builtin("ex41_diag_z1z2_1")) == DetDegree{1, 1});
  CHECK(det_degree(RationalInnerMatrix::create(MatPoly::identity(2), BiPoly(1.0), "I")) == DetDegree{0, 0});
  CHECK(det_degree(builtin("ex43_deg2")) == DetDegree{2, 1});
}

TEST_CASE("from_scalar and from_stable_poly") {
  const RationalInnerMatrix t = from_scalar(BiPoly::monomial(1, 1), BiPoly(1.0));
  CHECK(t.d() == 1);
  CHECK(t.deg() == Degree{1, 1});
  const BiPoly p4 = BiPoly(4.0) - z1() - z2();
  const RationalInnerMatrix s4 = from_stable_poly(p4, 1, 1);
  CHECK(verify_inner_exact(s4).pass);
  CHECK((s4.Q()(0, 0) - (BiPoly::monomial(1, 1, 4.0) - z2() - z1())).max_abs() == 0.0);
  const RationalInnerMatrix s2 = from_stable_poly(BiPoly(2.0) - z1() - z2(), 1, 1);
  CHECK(verify_inner_exact(s2).pass);
  // Boundary singularity at τ = (1,1): both numerator and denominator vanish.
  CHECK(std::abs(s2.p()(1.0, 1.0)) == 0.0);
  CHECK(std::abs(s2.Q()(0, 0)(1.0, 1.0)) == 0.0);
}

TEST_CASE("diagonal: spec examples") {
  const RationalInnerMatrix d1 = diagonal({scalar_poly(BiPoly::monomial(1, 1)), scalar_poly(BiPoly(1.0))});
  CHECK(qdiff(d1.Q(), builtin("ex41_diag_z1z2_1").Q()) == 0.0);
  const RationalInnerMatrix d2 = diagonal({scalar_poly(z2()), scalar_poly(z2())});
  CHECK(qdiff(d2.Q(), MatPoly::identity(2) * z2()) == 0.0);
  const RationalInnerMatrix d3 = diagonal({scalar_poly(BiPoly::monomial(1, 1)), scalar_poly(BiPoly::monomial(0, 2))});
  CHECK(d3.deg() == Degree{1, 2});
  CHECK(det_degree(d3) == DetDegree{1, 3});
  CHECK_THROWS_AS(diagonal({}), std::invalid_argument);
  CHECK_THROWS_AS(diagonal({builtin("ex42_symmetric")}), std::invalid_argument);
}

TEST_CASE("diagonal of rational scalars uses a common denominator") {
  oracle::Gen gen(32);
  const BiPoly p1 = gen.stable(1, 1), p2 = gen.stable(0, 2);
  const RationalInnerMatrix a = from_stable_poly(p1, 1, 1), b = from_stable_poly(p2, 0, 2);
  const RationalInnerMatrix t = diagonal({a, b});
  CHECK(verify_inner_exact(t).pass);
  CHECK(t.p().deg1() == 1);
  CHECK(t.p().deg2() == 3);
  for (int s = 0; s < 5; ++s) {
    const cplx u = gen.in_disk(0.9), v = gen.in_disk(0.9);
    const Eigen::MatrixXcd M = t(u, v);
    CHECK(std::abs(M(0, 0) - a(u, v)(0, 0)) < 1e-12);
    CHECK(std::abs(M(1, 1) - b(u, v)(0, 0)) < 1e-12);
    CHECK(std::abs(M(0, 1)) == 0.0);
  }
  CHECK(det_degree(t) == DetDegree{1, 3});
}

TEST_CASE("product_one_var: spec examples") {
  oracle::Gen gen(33);
  const Eigen::MatrixXcd U = gen.unitary(2);
  const RationalInnerMatrix phi = unitary_conjugate(
      RationalInnerMatrix::create(MatPoly::diagonal({z1(), BiPoly(1.0)}), BiPoly(1.0), "phi"), U, U.adjoint());
  const RationalInnerMatrix I2 = RationalInnerMatrix::create(MatPoly::identity(2), BiPoly(1.0), "I");
  const RationalInnerMatrix t = product_one_var({{phi, I2}});
  CHECK(verify_inner_exact(t).pass);
  CHECK(t.deg() == Degree{1, 0});

  const RationalInnerMatrix id = product_one_var({{I2, I2}, {I2, I2}});
  CHECK(qdiff(id.Q(), MatPoly::identity(2)) == 0.0);

  const RationalInnerMatrix a = RationalInnerMatrix::create(MatPoly::identity(2) * z1(), BiPoly(1.0), "z1I");
  const RationalInnerMatrix b = RationalInnerMatrix::create(MatPoly::identity(2) * z2(), BiPoly(1.0), "z2I");
  const RationalInnerMatrix zz = product_one_var({{a, b}});
  CHECK(qdiff(zz.Q(), MatPoly::identity(2) * BiPoly::monomial(1, 1)) == 0.0);
  CHECK(det_degree(zz) == DetDegree{2, 2});

  CHECK_THROWS_AS(product_one_var({{b, a}}), std::invalid_argument);
  CHECK_THROWS_AS(product_one_var({}), std::invalid_argument);
}

TEST_CASE("builtin names") {
  CHECK(verify_inner_exact(builtin("ex42_symmetric")).residual == 0.0);
  const RationalInnerMatrix z3 = builtin("scalar_z2n(3)");
  CHECK((z3.Q()(0, 0) - BiPoly::monomial(0, 3)).max_abs() == 0.0);
  CHECK(builtin("ex43_deg2").deg() == Degree{2, 1});
  CHECK_THROWS_AS(builtin("nope"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("scalar_z2n(-1)"), std::invalid_argument);
  const auto names = builtin_names();
  CHECK(std::find(names.begin(), names.end(), "ex42_symmetric") != names.end());
}

TEST_CASE("swap_variables") {
  const RationalInnerMatrix s = swap_variables(builtin("scalar_z1z2"));
  CHECK((s.Q()(0, 0) - BiPoly::monomial(1, 1)).max_abs() == 0.0);
  const RationalInnerMatrix z = swap_variables(builtin("scalar_z2n(2)"));
  CHECK((z.Q()(0, 0) - BiPoly::monomial(2, 0)).max_abs() == 0.0);
  CHECK(swap_variables(builtin("ex43_deg2")).deg() == Degree{1, 2});
  oracle::Gen gen(34);
  for (const auto& t : all_builtins()) {
    const RationalInnerMatrix w = swap_variables(t);
    CHECK(w.deg() == Degree{t.deg().m2, t.deg().m1});
    CHECK(verify_inner_exact(w).pass);
    const cplx u = gen.in_disk(0.8), v = gen.in_disk(0.8);
    CHECK((w(u, v) - t(v, u)).norm() < 1e-12);
  }
}

TEST_CASE("unitary_conjugate") {
  const RationalInnerMatrix ex42 = builtin("ex42_symmetric");
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(2, 2);
  CHECK(qdiff(unitary_conjugate(ex42, I, I).Q(), ex42.Q()) == 0.0);
  Eigen::MatrixXcd D = I;
  D(1, 1) = -1.0;
  const RationalInnerMatrix c = unitary_conjugate(ex42, D, D);
  CHECK(verify_inner_exact(c).pass);
  CHECK(c.deg() == ex42.deg());
  oracle::Gen gen(35);
  const RationalInnerMatrix ex41 = builtin("ex41_diag_z1z2_1");
  for (int t = 0; t < 5; ++t) {
    const RationalInnerMatrix r = unitary_conjugate(ex41, gen.unitary(2), gen.unitary(2));
    CHECK(verify_inner_exact(r).pass);
    CHECK(det_degree(r) == det_degree(ex41));
  }
  Eigen::MatrixXcd N = I;
  N(0, 1) = 1e-6;
  CHECK_THROWS_AS(unitary_conjugate(ex42, N, I), std::invalid_argument);
  CHECK_THROWS_AS(unitary_conjugate(ex42, Eigen::MatrixXcd::Identity(3, 3), I), std::invalid_argument);
}

TEST_CASE("det_degree is invariant under unitary conjugation and obeys D2 <= d·m2") {
  oracle::Gen gen(36);
  for (const auto& t : all_builtins()) {
    CAPTURE(t.label());
    const DetDegree base = det_degree(t);
    CHECK(base.D2 <= t.d() * t.deg().m2);
    CHECK(base.D1 <= t.d() * t.deg().m1);
    const RationalInnerMatrix c = unitary_conjugate(t, gen.unitary(t.d()), gen.unitary(t.d()));
    CHECK(det_degree(c) == base);
  }
  for (FamilyKind kind : {FamilyKind::DIAGONAL, FamilyKind::PRODUCT}) {
    FamilySpec spec;
    spec.kind = kind;
    spec.count = 30;
    spec.seed = 37;
    for (const auto& item : generate_family(spec)) {
      REQUIRE(item.theta.has_value());
      const DetDegree dd = det_degree(*item.theta);
      CAPTURE(item.label);
      CHECK(dd.D2 <= 2 * item.theta->deg().m2);
      CHECK(dd.D1 <= 2 * item.theta->deg().m1);
    }
  }
}

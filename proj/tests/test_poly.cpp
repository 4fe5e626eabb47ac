#include <doctest.h>

#include "bidisk/poly.hpp"
#include "oracles.hpp"

using namespace bidisk;
using oracle::cplx;

namespace {

BiPoly z1() { return BiPoly::monomial(1, 0); }
BiPoly z2() { return BiPoly::monomial(0, 1); }
BiPoly c(cplx v) { return BiPoly(v); }

double max_diff(const BiPoly& f, const BiPoly& g) { return (f - g).max_abs(); }

}  // namespace

TEST_CASE("poly_mul: monomials, identity and a square") {
  CHECK(max_diff(z1() * z2(), BiPoly::monomial(1, 1)) == 0.0);
  oracle::Gen gen(11);
  const BiPoly f = gen.poly(2, 3);
  CHECK(max_diff(c(1.0) * f, f) == 0.0);
  const BiPoly s = z1() + z2();
  const BiPoly expected = BiPoly::monomial(2, 0) + BiPoly::monomial(1, 1, 2.0) + BiPoly::monomial(0, 2);
  CHECK(max_diff(s * s, expected) == 0.0);
}

TEST_CASE("poly_mul: convolution matches the naive oracle and degrees add") {
  oracle::Gen gen(12);
  for (int t = 0; t < 50; ++t) {
    const BiPoly f = gen.poly(gen.integer(0, 3), gen.integer(0, 3));
    const BiPoly g = gen.poly(gen.integer(0, 3), gen.integer(0, 3));
    const BiPoly h = poly_mul(f, g);
    CHECK(max_diff(h, oracle::naive_mul(f, g)) < 1e-12);
    CHECK(h.deg1() <= f.deg1() + g.deg1());
    CHECK(h.deg2() <= f.deg2() + g.deg2());
    // Gaussian coefficients: leading products are nonzero almost surely.
    CHECK(h.deg1() == f.deg1() + g.deg1());
    CHECK(h.deg2() == f.deg2() + g.deg2());
  }
}

TEST_CASE("zero polynomial and trimming") {
  CHECK(BiPoly().is_zero());
  CHECK(BiPoly().deg1() == -1);
  const BiPoly t = z1() - z1();
  CHECK(t.is_zero());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(1, 0) = 2.0;
  m(2, 2) = 1e-14;
  const BiPoly p(m);
  CHECK(p.deg1() == 1);
  CHECK(p.deg2() == 0);
}

TEST_CASE("mat_determinant: identity, diagonal, ex42 numerator") {
  CHECK(max_diff(mat_determinant(MatPoly::identity(3)), c(1.0)) == 0.0);
  oracle::Gen gen(13);
  const BiPoly p1 = gen.poly(1, 2), p2 = gen.poly(2, 1);
  CHECK(max_diff(mat_determinant(MatPoly::diagonal({p1, p2})), p1 * p2) < 1e-12);
  MatPoly Q(2);
  Q(0, 0) = (z1() + z2()) * 0.5;
  Q(0, 1) = (z1() - z2()) * 0.5;
  Q(1, 0) = (z1() - z2()) * 0.5;
  Q(1, 1) = (z1() + z2()) * 0.5;
  // ¼((z1+z2)² − (z1−z2)²) = z1z2.
  CHECK(max_diff(mat_determinant(Q), BiPoly::monomial(1, 1)) < 1e-15);
}

TEST_CASE("mat_determinant agrees with numeric determinants at random points") {
  oracle::Gen gen(14);
  for (int d : {1, 2, 3, 4, 5, 6}) {
    MatPoly M(d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) M(i, k) = gen.poly(gen.integer(0, 2), gen.integer(0, 2));
    const BiPoly det = mat_determinant(M);
    for (int s = 0; s < 20; ++s) {
      const cplx a = gen.in_disk(0.95), b = gen.in_disk(0.95);
      const cplx ref = M(a, b).determinant();
      CHECK(std::abs(det(a, b) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("reflect") {
  CHECK(max_diff(reflect(c(1.0), 1, 1), BiPoly::monomial(1, 1)) == 0.0);
  const BiPoly p = c(2.0) - z1() - z2();
  const BiPoly expected = BiPoly::monomial(1, 1, 2.0) - z2() - z1();
  CHECK(max_diff(reflect(p, 1, 1), expected) == 0.0);
  oracle::Gen gen(15);
  for (int t = 0; t < 10; ++t) {
    const BiPoly f = gen.poly(gen.integer(0, 3), gen.integer(0, 3));
    const int m = f.deg1() + gen.integer(0, 2), n = f.deg2() + gen.integer(0, 2);
    CHECK(max_diff(reflect(reflect(f, m, n), m, n), f) == 0.0);
    const BiPoly r = reflect(f, m, n);
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= n; ++b) CHECK(r.coeff(a, b) == std::conj(f.coeff(m - a, n - b)));
  }
  CHECK_THROWS_AS(reflect(z1() * z1(), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(reflect(z2(), 1, 0), std::invalid_argument);
}

TEST_CASE("divide_exact") {
  oracle::Gen gen(16);
  for (int t = 0; t < 20; ++t) {
    const BiPoly g = gen.poly(gen.integer(0, 2), gen.integer(0, 2));
    const BiPoly q = gen.poly(gen.integer(0, 2), gen.integer(0, 2));
    const auto r = divide_exact(g * q, g);
    REQUIRE(r.has_value());
    CHECK(max_diff(*r, q) < 1e-9 * std::max(1.0, q.max_abs()));
  }
  CHECK_FALSE(divide_exact(z1() + c(1.0), z2() + c(1.0)).has_value());
  CHECK_FALSE(divide_exact(z1(), z1() * z1()).has_value());
  CHECK(divide_exact(BiPoly{}, z1())->is_zero());
  CHECK_THROWS_AS(divide_exact(z1(), BiPoly{}), std::invalid_argument);
}

TEST_CASE("reduce_fraction: spec examples") {
  // (z1z2(2−z1), 2−z1) -> (z1z2, 1) up to a constant.
  const BiPoly f = c(2.0) - z1();
  const ReducedFraction r = reduce_fraction(BiPoly::monomial(1, 1) * f, f);
  CHECK_FALSE(r.flagged);
  CHECK(r.den.is_constant());
  CHECK(r.num.deg1() == 1);
  CHECK(r.num.deg2() == 1);
  CHECK(max_diff(r.num * (c(1.0) * (1.0 / r.den.coeff(0, 0))), BiPoly::monomial(1, 1)) < 1e-12);
  CHECK(max_diff(r.num * f, BiPoly::monomial(1, 1) * f * r.den) < 1e-12);

  oracle::Gen gen(17);
  const BiPoly p = gen.stable(1, 2);
  const ReducedFraction same = reduce_fraction(p, p);
  CHECK(same.num.is_constant());
  CHECK(same.den.is_constant());
  CHECK(std::abs(same.num.coeff(0, 0) - same.den.coeff(0, 0)) < 1e-12);

  const ReducedFraction coprime = reduce_fraction(z1(), z2());
  CHECK(max_diff(coprime.num, z1()) == 0.0);
  CHECK(max_diff(coprime.den, z2()) == 0.0);
  CHECK(coprime.cancelled.is_constant());
}

TEST_CASE("reduce_fraction: back-multiplication on shared random factors") {
  oracle::Gen gen(18);
  for (int t = 0; t < 30; ++t) {
    const BiPoly h = gen.stable(gen.integer(0, 2), gen.integer(1, 2));
    const BiPoly f = gen.poly(gen.integer(0, 2), gen.integer(0, 2));
    const BiPoly g = gen.stable(gen.integer(0, 1), gen.integer(0, 2));
    const BiPoly q = f * h, p = g * h;
    const ReducedFraction r = reduce_fraction(q, p);
    CHECK_FALSE(r.flagged);
    const double scale = std::max(q.max_abs(), p.max_abs()) * std::max(r.num.max_abs(), r.den.max_abs());
    CHECK(max_diff(r.num * p, q * r.den) <= 1e-9 * scale);
    CHECK(r.den.deg1() == g.deg1());
    CHECK(r.den.deg2() == g.deg2());
    // p′ keeps the normalization of p divided by the cancelled factor.
    CHECK(max_diff(r.den * r.cancelled, p) <= 1e-9 * p.max_abs());
  }
}

TEST_CASE("poly_gcd: recovers a planted common factor in both variables") {
  oracle::Gen gen(19);
  for (int t = 0; t < 20; ++t) {
    const BiPoly h = gen.poly(gen.integer(1, 2), gen.integer(1, 2));
    const BiPoly f = gen.poly(1, 1) * h, g = gen.poly(1, 2) * h;
    const GcdResult r = poly_gcd(f, g);
    CHECK_FALSE(r.flagged);
    CHECK(r.gcd.deg1() == h.deg1());
    CHECK(r.gcd.deg2() == h.deg2());
    CHECK(r.slice_deg1 == h.deg1());
    CHECK(r.slice_deg2 == h.deg2());
  }
  CHECK(poly_gcd(z1(), z2()).gcd.is_constant());
  CHECK(poly_gcd(c(3.0), z2()).gcd.is_constant());
}

TEST_CASE("laurent_identity_residual") {
  CHECK(laurent_identity_residual(LaurentBiPoly(2, 2)) == 0.0);
  LaurentBiPoly L(1, 1);
  L.add(1, 0, 1.0);
  L.add(1, 0, -1.0);
  CHECK(laurent_identity_residual(L) == 0.0);
  LaurentBiPoly M(1, 1);
  M.add(-1, 0, 1.0);
  M.add(0, 0, 2.0);
  CHECK(laurent_identity_residual(M) == 2.0);
}

TEST_CASE("mul_star matches torus products") {
  oracle::Gen gen(20);
  const BiPoly f = gen.poly(2, 1), g = gen.poly(1, 2);
  const LaurentBiPoly L = mul_star(f, g);
  for (int s = 0; s < 10; ++s) {
    const cplx t1 = std::polar(1.0, gen.uniform(0, 2 * M_PI)), t2 = std::polar(1.0, gen.uniform(0, 2 * M_PI));
    cplx v = 0.0;
    for (int a = -L.A(); a <= L.A(); ++a)
      for (int b = -L.B(); b <= L.B(); ++b) v += L.coeff(a, b) * std::pow(t1, a) * std::pow(t2, b);
    CHECK(std::abs(v - f(t1, t2) * std::conj(g(t1, t2))) < 1e-12);
  }
}

TEST_CASE("MatPoly arithmetic matches evaluation") {
  oracle::Gen gen(21);
  MatPoly A(2), B(2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      A(i, k) = gen.poly(1, 1);
      B(i, k) = gen.poly(1, 2);
    }
  const cplx a = gen.in_disk(0.9), b = gen.in_disk(0.9);
  CHECK(((A * B)(a, b) - A(a, b) * B(a, b)).norm() < 1e-12);
  CHECK(((A + B)(a, b) - (A(a, b) + B(a, b))).norm() < 1e-12);
  CHECK((A.swapped()(a, b) - A(b, a)).norm() < 1e-12);
  CHECK(A.deg1() == 1);
  CHECK(B.deg2() == 2);
}

TEST_CASE("poly_gcd: planted factors over many seeds, with the slice result on disagreement") {
  oracle::Gen gen(22);
  int flagged = 0;
  for (int t = 0; t < 300; ++t) {
    const BiPoly h = gen.poly(gen.integer(0, 2), gen.integer(0, 3));
    const BiPoly f = gen.poly(gen.integer(0, 2), gen.integer(0, 2)) * h;
    const BiPoly g = gen.stable(gen.integer(0, 2), gen.integer(0, 2)) * h;
    const GcdResult r = poly_gcd(f, g);
    CHECK(r.slice_deg1 == h.deg1());
    CHECK(r.slice_deg2 == h.deg2());
    CHECK(std::max(0, r.gcd.deg1()) == h.deg1());
    CHECK(std::max(0, r.gcd.deg2()) == h.deg2());
    flagged += r.flagged;
  }
  MESSAGE("remainder sequence disagreed with the slice oracle on " << flagged << " of 300");
}

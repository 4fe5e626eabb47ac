#include "bidisk/grid.hpp"

#include <algorithm>

namespace bidisk {

Vec embed(const Vec& v, const TruncGrid& from, const TruncGrid& to) {
  if (from.d != to.d) throw std::invalid_argument("embed: vector dimension mismatch");
  Vec out = Vec::Zero(to.size());
  const int A = std::min(from.A, to.A), B = std::min(from.B, to.B), d = to.d;
  for (int a = 0; a <= A; ++a)
    out.segment(to.index(a, 0, 0), Eigen::Index(B + 1) * d) = v.segment(from.index(a, 0, 0), Eigen::Index(B + 1) * d);
  return out;
}

Eigen::MatrixXcd embed(const Eigen::MatrixXcd& v, const TruncGrid& from, const TruncGrid& to) {
  Eigen::MatrixXcd out(to.size(), v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) out.col(j) = embed(Vec(v.col(j)), from, to);
  return out;
}

Vec shift(const Vec& v, const TruncGrid& g, int j, int times) {
  Vec out = Vec::Zero(g.size());
  const int da = j == 1 ? times : 0, db = j == 2 ? times : 0;
  for (int a = 0; a + da <= g.A; ++a)
    for (int b = 0; b + db <= g.B; ++b)
      out.segment(g.index(a + da, b + db, 0), g.d) = v.segment(g.index(a, b, 0), g.d);
  return out;
}

Vec backshift(const Vec& v, const TruncGrid& g, int j) {
  Vec out = Vec::Zero(g.size());
  const int da = j == 1 ? 1 : 0, db = j == 2 ? 1 : 0;
  for (int a = 0; a + da <= g.A; ++a)
    for (int b = 0; b + db <= g.B; ++b)
      out.segment(g.index(a, b, 0), g.d) = v.segment(g.index(a + da, b + db, 0), g.d);
  return out;
}

Eigen::VectorXcd evaluate(const Vec& v, const TruncGrid& g, cplx z1, cplx z2) {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(g.d);
  for (int a = g.A; a >= 0; --a) {
    Eigen::VectorXcd row = Eigen::VectorXcd::Zero(g.d);
    for (int b = g.B; b >= 0; --b) row = row * z2 + v.segment(g.index(a, b, 0), g.d);
    acc = acc * z1 + row;
  }
  return acc;
}

Eigen::MatrixXcd evaluate_columns(const Eigen::MatrixXcd& V, const TruncGrid& g, cplx z1, cplx z2) {
  std::vector<cplx> w(static_cast<size_t>(g.A + 1) * (g.B + 1));
  cplx pa = 1.0;
  for (int a = 0; a <= g.A; ++a, pa *= z1) {
    cplx pb = pa;
    for (int b = 0; b <= g.B; ++b, pb *= z2) w[static_cast<size_t>(a) * (g.B + 1) + b] = pb;
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(g.d, V.cols());
  for (size_t m = 0; m < w.size(); ++m)
    for (int k = 0; k < g.d; ++k) out.row(k) += w[m] * V.row(static_cast<Eigen::Index>(m) * g.d + k);
  return out;
}

ThetaAction::ThetaAction(const RationalInnerMatrix& theta) : d_(theta.d()), p00_(theta.p().coeff(0, 0)) {
  const MatPoly& Q = theta.Q();
  qdeg1_ = std::max(0, Q.deg1());
  qdeg2_ = std::max(0, Q.deg2());
  for (int a = 0; a <= qdeg1_; ++a)
    for (int b = 0; b <= qdeg2_; ++b) {
      Eigen::MatrixXcd M = Q.coeff(a, b);
      if (M.cwiseAbs().maxCoeff() > 0.0) q_.push_back({a, b, std::move(M)});
    }
  const BiPoly& p = theta.p();
  for (int a = 0; a <= p.deg1(); ++a)
    for (int b = 0; b <= p.deg2(); ++b)
      if ((a || b) && p.coeff(a, b) != 0.0) p_.push_back({a, b, p.coeff(a, b)});
}

Vec ThetaAction::mul_numerator(const Vec& v, const TruncGrid& g) const {
  Vec out = Vec::Zero(g.size());
  const int d = d_;
  for (const auto& t : q_)
    for (int a = t.a; a <= g.A; ++a)
      for (int b = t.b; b <= g.B; ++b) {
        const cplx* src = v.data() + g.index(a - t.a, b - t.b, 0);
        cplx* dst = out.data() + g.index(a, b, 0);
        for (int i = 0; i < d; ++i) {
          cplx s = 0.0;
          for (int k = 0; k < d; ++k) s += t.M(i, k) * src[k];
          dst[i] += s;
        }
      }
  return out;
}

Vec ThetaAction::adj_numerator(const Vec& v, const TruncGrid& g) const {
  Vec out = Vec::Zero(g.size());
  const int d = d_;
  for (const auto& t : q_)
    for (int a = 0; a + t.a <= g.A; ++a)
      for (int b = 0; b + t.b <= g.B; ++b) {
        const cplx* src = v.data() + g.index(a + t.a, b + t.b, 0);
        cplx* dst = out.data() + g.index(a, b, 0);
        for (int i = 0; i < d; ++i) {
          cplx s = 0.0;
          for (int k = 0; k < d; ++k) s += std::conj(t.M(k, i)) * src[k];
          dst[i] += s;
        }
      }
  return out;
}

TruncGrid ThetaAction::constraint_region(const TruncGrid& g) const {
  return {g.A - qdeg1_, g.B - qdeg2_, g.d};
}

Vec ThetaAction::constraint(const Vec& v, const TruncGrid& g) const {
  const TruncGrid r = constraint_region(g);
  if (r.A < 0 || r.B < 0) return Vec();
  Vec out = Vec::Zero(r.size());
  const int d = d_;
  for (const auto& t : q_)
    for (int a = 0; a <= r.A; ++a)
      for (int b = 0; b <= r.B; ++b) {
        const cplx* src = v.data() + g.index(a + t.a, b + t.b, 0);
        cplx* dst = out.data() + r.index(a, b, 0);
        for (int i = 0; i < d; ++i) {
          cplx s = 0.0;
          for (int k = 0; k < d; ++k) s += std::conj(t.M(k, i)) * src[k];
          dst[i] += s;
        }
      }
  return out;
}

Vec ThetaAction::div_p(const Vec& v, const TruncGrid& g) const {
  if (p_.empty()) return v / p00_;
  Vec y = v;
  const int d = d_;
  const cplx inv = 1.0 / p00_;
  for (int a = 0; a <= g.A; ++a)
    for (int b = 0; b <= g.B; ++b) {
      cplx* dst = y.data() + g.index(a, b, 0);
      for (const auto& t : p_) {
        if (t.a > a || t.b > b) continue;
        const cplx* src = y.data() + g.index(a - t.a, b - t.b, 0);
        for (int k = 0; k < d; ++k) dst[k] -= t.c * src[k];
      }
      for (int k = 0; k < d; ++k) dst[k] *= inv;
    }
  return y;
}

Vec ThetaAction::adj_div_p(const Vec& v, const TruncGrid& g) const {
  if (p_.empty()) return v / std::conj(p00_);
  Vec y = v;
  const int d = d_;
  const cplx inv = 1.0 / std::conj(p00_);
  for (int a = g.A; a >= 0; --a)
    for (int b = g.B; b >= 0; --b) {
      cplx* dst = y.data() + g.index(a, b, 0);
      for (const auto& t : p_) {
        if (a + t.a > g.A || b + t.b > g.B) continue;
        const cplx* src = y.data() + g.index(a + t.a, b + t.b, 0);
        const cplx c = std::conj(t.c);
        for (int k = 0; k < d; ++k) dst[k] -= c * src[k];
      }
      for (int k = 0; k < d; ++k) dst[k] *= inv;
    }
  return y;
}

Vec ThetaAction::div_poly(const BiPoly& q, const Vec& v, const TruncGrid& g) {
  const cplx q00 = q.coeff(0, 0);
  if (std::abs(q00) <= kTrimTol) throw std::invalid_argument("div_poly: zero constant term");
  Vec y = v;
  for (int a = 0; a <= g.A; ++a)
    for (int b = 0; b <= g.B; ++b) {
      cplx* dst = y.data() + g.index(a, b, 0);
      for (int c = 0; c <= std::min(a, q.deg1()); ++c)
        for (int e = 0; e <= std::min(b, q.deg2()); ++e) {
          if (!c && !e) continue;
          const cplx qc = q.coeff(c, e);
          if (qc == 0.0) continue;
          const cplx* src = y.data() + g.index(a - c, b - e, 0);
          for (int k = 0; k < g.d; ++k) dst[k] -= qc * src[k];
        }
      for (int k = 0; k < g.d; ++k) dst[k] /= q00;
    }
  return y;
}

}  // namespace bidisk

#include "bidisk/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bidisk/parallel.hpp"

namespace bidisk {

Subspace Subspace::span(const Eigen::MatrixXcd& coords, std::string sublabel) const {
  Subspace s;
  s.grid = grid;
  s.ambient = ambient;
  s.basis = basis * coords;
  s.numerators = numerators * coords;
  s.label = std::move(sublabel);
  return s;
}

namespace {

void require_cover(const TaylorTable& T, const TruncGrid& g) {
  if (T.A() < g.A || T.B() < g.B) throw std::invalid_argument("Taylor table cutoff below grid degree");
  if (T.d() != g.d) throw std::invalid_argument("Taylor table size does not match grid");
}

Vec table_mul(const TaylorTable& T, const TruncGrid& g, const Vec& f) {
  Vec out = Vec::Zero(g.size());
  for (int c = 0; c <= g.A; ++c)
    for (int e = 0; e <= g.B; ++e) {
      const Eigen::MatrixXcd& M = T(c, e);
      if (M.cwiseAbs().maxCoeff() == 0.0) continue;
      for (int a = c; a <= g.A; ++a)
        for (int b = e; b <= g.B; ++b)
          out.segment(g.index(a, b, 0), g.d) += M * f.segment(g.index(a - c, b - e, 0), g.d);
    }
  return out;
}

Vec table_adj(const TaylorTable& T, const TruncGrid& g, const Vec& f) {
  Vec out = Vec::Zero(g.size());
  for (int c = 0; c <= g.A; ++c)
    for (int e = 0; e <= g.B; ++e) {
      const Eigen::MatrixXcd& M = T(c, e);
      if (M.cwiseAbs().maxCoeff() == 0.0) continue;
      for (int a = 0; a + c <= g.A; ++a)
        for (int b = 0; b + e <= g.B; ++b)
          out.segment(g.index(a, b, 0), g.d) += M.adjoint() * f.segment(g.index(a + c, b + e, 0), g.d);
    }
  return out;
}

std::string grid_name(const TruncGrid& g) {
  std::ostringstream s;
  s << "grid(" << g.A << "," << g.B << ")x" << g.d;
  return s.str();
}

}  // namespace

OpMatrix analytic_mult(const TaylorTable& T, const TruncGrid& grid) {
  require_cover(T, grid);
  const Eigen::Index n = grid.size();
  OpMatrix op{Eigen::MatrixXcd::Zero(n, n), grid_name(grid), grid_name(grid)};
  for (int a = 0; a <= grid.A; ++a)
    for (int b = 0; b <= grid.B; ++b)
      for (int c = 0; a + c <= grid.A; ++c)
        for (int e = 0; b + e <= grid.B; ++e)
          op.matrix.block(grid.index(a + c, b + e, 0), grid.index(a, b, 0), grid.d, grid.d) = T(c, e);
  return op;
}

OpMatrix adjoint_mult(const TaylorTable& T, const TruncGrid& grid) {
  require_cover(T, grid);
  const Eigen::Index n = grid.size();
  OpMatrix op{Eigen::MatrixXcd::Zero(n, n), grid_name(grid), grid_name(grid)};
  for (int a = 0; a <= grid.A; ++a)
    for (int b = 0; b <= grid.B; ++b)
      for (int c = 0; c <= a; ++c)
        for (int e = 0; e <= b; ++e)
          op.matrix.block(grid.index(a - c, b - e, 0), grid.index(a, b, 0), grid.d, grid.d) = T(c, e).adjoint();
  return op;
}

Vec project_model(const TaylorTable& T, const TruncGrid& grid, const Vec& f) {
  require_cover(T, grid);
  return f - table_mul(T, grid, table_adj(T, grid, f));
}

double tail_estimate(const TailDiagnostic& decay, Pad pad) {
  if (decay.decay_class == DecayClass::FINITE) return 0.0;
  const double rho = std::clamp(decay.ratio, 0.0, 1.0);
  return std::pow(rho, std::min(pad.p1, pad.p2));
}

PadChoice choose_pad(const RationalInnerMatrix& theta) {
  PadChoice out;
  const Degree m = theta.deg();
  out.pad = {m.m1 + 2, m.m2 + 2};
  if (theta.polynomial()) {
    out.decay.decay_class = DecayClass::FINITE;
    return out;
  }
  out.decay = tail_diagnostic(expand(theta, kDecayTableSize, kDecayTableSize));
  if (out.decay.decay_class != DecayClass::FINITE) {
    const double rho = std::clamp(out.decay.ratio, 1e-300, 0.999);
    const int need = static_cast<int>(std::ceil(std::log(1e-16) / std::log(rho)));
    out.pad.p1 = std::clamp(std::max(out.pad.p1, need), 0, kMaxPad);
    out.pad.p2 = std::clamp(std::max(out.pad.p2, need), 0, kMaxPad);
    out.pad.p1 = std::max(out.pad.p1, m.m1 + 2);
    out.pad.p2 = std::max(out.pad.p2, m.m2 + 2);
  }
  out.tail_estimate = tail_estimate(out.decay, out.pad);
  return out;
}

Subspace model_basis(const RationalInnerMatrix& theta, const TruncGrid& grid, Pad pad) {
  if (pad.p1 < 0 || pad.p2 < 0) throw std::invalid_argument("model_basis: negative pad");
  if (grid.d != theta.d()) throw std::invalid_argument("model_basis: grid dimension does not match Θ");
  const TruncGrid amb = grid.padded(pad.p1, pad.p2);
  const ThetaAction act(theta);
  const TruncGrid region = act.constraint_region(amb);
  const Eigen::Index n = grid.size();
  const Eigen::Index rows = (region.A >= 0 && region.B >= 0) ? region.size() : 0;

  Eigen::MatrixXcd U(amb.size(), n);
  Eigen::MatrixXcd C(rows, n);
  for (int a = 0; a <= grid.A; ++a)
    for (int b = 0; b <= grid.B; ++b)
      for (int k = 0; k < grid.d; ++k) {
        const Eigen::Index col = grid.index(a, b, k);
        Vec e = Vec::Zero(amb.size());
        e(amb.index(a, b, k)) = 1.0;
        U.col(col) = act.div_p(e, amb);
        if (rows) C.col(col) = act.constraint(U.col(col), amb);
      }

  const NullSpace ns = null_space(C, kRankTol);
  const Orthonormalized o = orthonormalize(U * ns.basis, kRankTol);
  Subspace s;
  s.grid = grid;
  s.ambient = amb;
  s.basis = o.Q;
  s.numerators = ns.basis * o.X;
  s.label = "K_" + theta.label();
  return s;
}

CompressedShift compressed_shift(const RationalInnerMatrix& theta, const Subspace& V, int j) {
  if (j != 1 && j != 2) throw std::invalid_argument("compressed_shift: j must be 1 or 2");
  const int headroom = j == 1 ? V.ambient.A - V.grid.A : V.ambient.B - V.grid.B;
  if (headroom < 1) throw std::invalid_argument("compressed_shift: pad too small for multiplication by z_j");
  const ThetaAction act(theta);
  const Eigen::Index n = V.dim();
  CompressedShift out;
  out.j = j;
  out.forward.resize(V.ambient.size(), n);
  out.backward.resize(V.ambient.size(), n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const Vec phi = V.basis.col(c);
    out.forward.col(c) = act.project(shift(phi, V.ambient, j), V.ambient);
    out.backward.col(c) = backshift(phi, V.ambient, j);
  }
  out.S.matrix = V.basis.adjoint() * out.forward;
  out.S.domain = V.label;
  out.S.codomain = V.label;
  return out;
}

namespace {

void check_hermitian(const Eigen::MatrixXcd& C) {
  const double h = (C - C.adjoint()).norm();
  if (h > 1e-12) throw std::logic_error("commutator is not Hermitian: ||C - C*|| = " + std::to_string(h));
}

}  // namespace

OpMatrix commutator(const CompressedShift& S) {
  OpMatrix C{S.backward.adjoint() * S.backward - S.forward.adjoint() * S.forward, S.S.domain, S.S.codomain};
  check_hermitian(C.matrix);
  return C;
}

OpMatrix commutator(const OpMatrix& S) {
  if (S.matrix.rows() != S.matrix.cols()) throw std::invalid_argument("commutator: matrix not square");
  OpMatrix C{S.matrix * S.matrix.adjoint() - S.matrix.adjoint() * S.matrix, S.domain, S.codomain};
  check_hermitian(C.matrix);
  return C;
}

RankResult numerical_rank(const OpMatrix& C, double tol_rel, double tol_abs) {
  RankResult r;
  r.sigmas = singular_values(C.matrix);
  if (r.sigmas.size() == 0 || r.sigmas(0) == 0.0) return r;
  const double smax = r.sigmas(0);
  for (Eigen::Index i = 0; i < r.sigmas.size(); ++i)
    if (r.sigmas(i) > tol_rel * smax && r.sigmas(i) > tol_abs) ++r.rank;
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::STABLE: return "STABLE";
    case Verdict::DIVERGENT: return "DIVERGENT";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

void validate_schedule(const Schedule& s) {
  if (s.size() < 3) throw std::invalid_argument("schedule needs at least 3 levels");
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i].first < 0 || s[i].second < 0) throw std::invalid_argument("schedule degrees must be nonnegative");
    if (i && (s[i].first <= s[i - 1].first || s[i].second <= s[i - 1].second))
      throw std::invalid_argument("schedule must be strictly increasing in both coordinates");
  }
}

Verdict classify_ranks(const std::vector<int>& r) {
  const size_t n = r.size();
  if (n >= 3 && r[n - 1] == r[n - 2] && r[n - 2] == r[n - 3]) return Verdict::STABLE;
  bool increasing = n >= 2;
  for (size_t i = 1; i < n; ++i) increasing = increasing && r[i] > r[i - 1];
  return increasing ? Verdict::DIVERGENT : Verdict::INCONCLUSIVE;
}

RankLevel rank_level(const RationalInnerMatrix& theta, int A, int B, Pad pad, const SweepOptions& opt) {
  RankLevel lvl;
  lvl.A = A;
  lvl.B = B;
  lvl.pad = pad;
  const Subspace V = model_basis(theta, {A, B, theta.d()}, pad);
  lvl.dim_model = V.dim();
  const RankResult r = numerical_rank(commutator(compressed_shift(theta, V, opt.j)), opt.tol_rel, opt.tol_abs);
  lvl.rank = r.rank;
  lvl.sigmas.assign(r.sigmas.data(), r.sigmas.data() + r.sigmas.size());
  return lvl;
}

RankReport rank_sweep(const RationalInnerMatrix& theta, const Schedule& schedule, const SweepOptions& opt) {
  validate_schedule(schedule);
  if (!(opt.tol_rel > 0.0) || !(opt.tol_abs > 0.0)) throw std::invalid_argument("tolerances must be positive");
  RankReport rep;
  rep.label = theta.label();
  rep.deg = theta.deg();
  rep.det_deg = det_degree(theta);
  PadChoice choice = choose_pad(theta);
  if (opt.pad) {
    if (opt.pad->p1 < 1 || opt.pad->p2 < 1) throw std::invalid_argument("pad must be at least (1,1)");
    choice.pad = *opt.pad;
    choice.tail_estimate = tail_estimate(choice.decay, choice.pad);
  }
  rep.decay = choice.decay.decay_class;
  rep.levels.resize(schedule.size());
  parallel_for(schedule.size(), [&](size_t i) {
    rep.levels[i] = rank_level(theta, schedule[i].first, schedule[i].second, choice.pad, opt);
  });
  std::vector<int> ranks;
  for (const auto& l : rep.levels) ranks.push_back(l.rank);
  rep.verdict = classify_ranks(ranks);

  bool unreliable = false;
  if (rep.decay == DecayClass::SLOW) {
    std::ostringstream w;
    w << "Taylor decay is SLOW (fitted frame ratio " << choice.decay.ratio
      << "); truncated commutator ranks are unreliable";
    rep.warnings.push_back(w.str());
    unreliable = true;
  } else if (choice.tail_estimate > opt.tol_rel) {
    std::ostringstream w;
    w << "estimated truncation tail " << choice.tail_estimate << " at pad (" << choice.pad.p1 << ","
      << choice.pad.p2 << ") exceeds the rank tolerance";
    rep.warnings.push_back(w.str());
    unreliable = true;
  }
  if (rep.det_deg.flagged) rep.warnings.push_back("gcd slice oracle disagreed while reducing det Θ");
  if (unreliable && rep.verdict != Verdict::INCONCLUSIVE) {
    rep.warnings.push_back("verdict " + to_string(rep.verdict) + " demoted to INCONCLUSIVE");
    rep.verdict = Verdict::INCONCLUSIVE;
  }
  if (rep.verdict == Verdict::STABLE) rep.stabilized_rank = ranks.back();
  rep.limitation = "ranks come from finite truncations of K_Θ; stabilization is numerical evidence, not a proof";
  return rep;
}

}  // namespace bidisk

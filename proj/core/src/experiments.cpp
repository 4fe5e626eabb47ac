#include "bidisk/experiments.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>

#include "bidisk/parallel.hpp"

namespace bidisk {

std::string to_string(ConjectureVerdict v) {
  switch (v) {
    case ConjectureVerdict::CONSISTENT: return "CONSISTENT";
    case ConjectureVerdict::VIOLATION_CANDIDATE: return "VIOLATION_CANDIDATE";
    case ConjectureVerdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::DIAGONAL: return "diagonal";
    case FamilyKind::PRODUCT: return "product";
    case FamilyKind::CONJUGATED: return "conjugated";
  }
  return "?";
}

FamilyKind family_kind_from_string(const std::string& s) {
  if (s == "diagonal") return FamilyKind::DIAGONAL;
  if (s == "product") return FamilyKind::PRODUCT;
  if (s == "conjugated") return FamilyKind::CONJUGATED;
  throw std::invalid_argument("unknown family kind '" + s + "' (expected diagonal, product or conjugated)");
}

ConjectureRecord conjecture_report(const RationalInnerMatrix& theta, const Schedule& schedule,
                                   const SweepOptions& opt) {
  validate_schedule(schedule);
  ConjectureRecord rec;
  rec.label = theta.label();
  rec.deg = theta.deg();
  rec.report = rank_sweep(theta, schedule, opt);
  rec.det_deg = rec.report.det_deg;
  rec.warnings = rec.report.warnings;
  const bool clean = rec.warnings.empty() && !rec.det_deg.flagged;
  const Verdict v = rec.report.verdict;
  if (rec.deg.m1 <= 1) {
    rec.predicted_rank = rec.det_deg.D2;
    if (v == Verdict::STABLE) {
      const int r = *rec.report.stabilized_rank;
      if (r == rec.det_deg.D2) {
        rec.verdict = ConjectureVerdict::CONSISTENT;
      } else if (clean) {
        rec.verdict = ConjectureVerdict::VIOLATION_CANDIDATE;
      } else {
        rec.warnings.push_back("stabilized rank " + std::to_string(r) + " differs from deg_2 det Θ = " +
                               std::to_string(rec.det_deg.D2) + " under truncation warnings");
      }
    } else {
      rec.warnings.push_back("rank sweep did not stabilize (" + to_string(v) + ")");
    }
  } else {
    if (v == Verdict::DIVERGENT) {
      rec.verdict = ConjectureVerdict::CONSISTENT;
    } else if (v == Verdict::STABLE && clean) {
      rec.verdict = ConjectureVerdict::VIOLATION_CANDIDATE;
    } else if (v == Verdict::STABLE) {
      rec.warnings.push_back("deg_1 Θ >= 2 but the rank stabilized under truncation warnings");
    }
  }
  return rec;
}

Eigen::MatrixXcd random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd G(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) G(i, k) = cplx(n(rng), n(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
  const Eigen::MatrixXcd R = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const cplx r = R(k, k);
    if (std::abs(r) > 0.0) Q.col(k) *= r / std::abs(r);
  }
  return Q;
}

BiPoly random_stable_poly(int m, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.3, 1.0);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m + 1, n + 1);
  double mass = 0.0;
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= n; ++b) {
      if (!a && !b) continue;
      c(a, b) = cplx(g(rng), g(rng));
      mass += std::abs(c(a, b));
    }
  if (mass > 0.0) c *= 0.3 * u(rng) / mass;
  c(0, 0) = 1.0;
  return BiPoly(std::move(c));
}

namespace {

std::string indexed(const std::string& prefix, int i) {
  std::ostringstream s;
  s << prefix << "_" << std::setw(4) << std::setfill('0') << i;
  return s.str();
}

RationalInnerMatrix random_scalar(int max_m1, int max_m2, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> da(0, max_m1), db(0, max_m2), coin(0, 1);
  const int m = da(rng), n = db(rng);
  if ((m || n) && coin(rng)) return from_stable_poly(random_stable_poly(m, n, rng), m, n, "stable");
  return from_scalar(BiPoly::monomial(m, n), BiPoly(1.0), "monomial");
}

RationalInnerMatrix monomial_factor(int d, int var, int max_exp, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(0, max_exp);
  std::vector<BiPoly> diag;
  for (int k = 0; k < d; ++k) diag.push_back(var == 1 ? BiPoly::monomial(e(rng), 0) : BiPoly::monomial(0, e(rng)));
  const Eigen::MatrixXcd U = random_unitary(d, rng), V = random_unitary(d, rng);
  MatPoly Q = MatPoly::constant(U) * MatPoly::diagonal(diag) * MatPoly::constant(V);
  return RationalInnerMatrix::create(std::move(Q), BiPoly(1.0), var == 1 ? "phi" : "psi");
}

RationalInnerMatrix generate_one(const FamilySpec& spec, int index, std::mt19937_64& rng) {
  switch (spec.kind) {
    case FamilyKind::DIAGONAL: {
      std::vector<RationalInnerMatrix> entries;
      for (int k = 0; k < spec.d; ++k) entries.push_back(random_scalar(spec.max_m1, spec.max_m2, rng));
      return diagonal(entries, indexed("diagonal", index));
    }
    case FamilyKind::PRODUCT: {
      // Split the z2 budget so several factors can still meet the cap.
      const int per_m2 = std::max(1, spec.max_m2 / spec.factors);
      for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<std::pair<RationalInnerMatrix, RationalInnerMatrix>> factors;
        for (int f = 0; f < spec.factors; ++f)
          factors.emplace_back(monomial_factor(spec.d, 1, 1, rng), monomial_factor(spec.d, 2, per_m2, rng));
        RationalInnerMatrix t = product_one_var(factors, indexed("product", index));
        if (t.deg().m1 <= spec.max_m1 && t.deg().m2 <= spec.max_m2) return t;
      }
      throw std::runtime_error("could not meet the degree caps within 32 attempts");
    }
    case FamilyKind::CONJUGATED: {
      RationalInnerMatrix base = [&] {
        if (spec.d == 2) {
          static const char* names[] = {"ex41_diag_z1z2_1", "ex42_symmetric", "ex43_deg2"};
          return builtin(names[index % 3]);
        }
        std::vector<RationalInnerMatrix> entries;
        for (int k = 0; k < spec.d; ++k) entries.push_back(random_scalar(1, spec.max_m2, rng));
        return diagonal(entries);
      }();
      const Eigen::MatrixXcd U = random_unitary(spec.d, rng), V = random_unitary(spec.d, rng);
      return unitary_conjugate(base, U, V).relabeled(indexed("conjugated_" + base.label(), index));
    }
  }
  throw std::logic_error("unhandled family kind");
}

}  // namespace

std::vector<BatchItem> generate_family(const FamilySpec& spec) {
  if (spec.d < 1) throw std::invalid_argument("family: d must be >= 1");
  if (spec.count < 0) throw std::invalid_argument("family: count must be >= 0");
  if (spec.factors < 1) throw std::invalid_argument("family: factors must be >= 1");
  std::vector<BatchItem> items;
  for (int i = 0; i < spec.count; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(spec.kind)};
    std::mt19937_64 rng(seq);
    BatchItem item;
    item.label = indexed(to_string(spec.kind), i);
    try {
      item.theta = generate_one(spec, i, rng);
      item.label = item.theta->label();
    } catch (const std::exception& e) {
      item.error = e.what();
    }
    items.push_back(std::move(item));
  }
  return items;
}

json record_to_json(const ConjectureRecord& r) {
  return {{"label", r.label},
          {"deg", {r.deg.m1, r.deg.m2}},
          {"det_deg", {r.det_deg.D1, r.det_deg.D2}},
          {"predicted_rank", r.predicted_rank ? json(*r.predicted_rank) : json("INFINITE")},
          {"verdict", to_string(r.verdict)},
          {"warnings", r.warnings},
          {"report", report_to_json(r.report)}};
}

std::string summary_csv(const BatchSummary& s) {
  std::ostringstream out;
  out << "label,m1,m2,D1,D2,stabilized_rank,verdict\n";
  for (const auto& r : s.results) {
    if (!r.record) {
      out << r.label << ",,,,,,ERROR\n";
      continue;
    }
    const ConjectureRecord& c = *r.record;
    out << c.label << "," << c.deg.m1 << "," << c.deg.m2 << "," << c.det_deg.D1 << "," << c.det_deg.D2 << ","
        << (c.report.stabilized_rank ? std::to_string(*c.report.stabilized_rank) : "NONE") << ","
        << to_string(c.verdict) << "\n";
  }
  return out.str();
}

namespace {

std::string file_safe(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') c = '_';
  return out;
}

}  // namespace

BatchSummary run_batch(const std::vector<BatchItem>& items, const Schedule& schedule, const std::string& out_dir,
                       const SweepOptions& opt) {
  validate_schedule(schedule);
  namespace fs = std::filesystem;
  const fs::path root(out_dir);
  fs::create_directories(root / "items");

  BatchSummary s;
  s.results.resize(items.size());
  std::mutex writer;
  parallel_for(items.size(), [&](size_t i) {
    const BatchItem& item = items[i];
    BatchResult res;
    res.label = item.label;
    res.error = item.error;
    if (item.theta && res.error.empty()) {
      try {
        const InnerReport inner = verify_inner_exact(*item.theta);
        if (!inner.pass) throw std::invalid_argument("not inner: Laurent residual " + std::to_string(inner.residual));
        SweepOptions o = opt;
        res.record = conjecture_report(*item.theta, schedule, o);
      } catch (const std::exception& e) {
        res.error = e.what();
      }
    } else if (res.error.empty()) {
      res.error = "no inner function";
    }
    const json j = res.record ? record_to_json(*res.record) : json{{"label", res.label}, {"error", res.error}};
    std::ostringstream name;
    name << std::setw(4) << std::setfill('0') << i << "_" << file_safe(res.label) << ".json";
    {
      std::lock_guard<std::mutex> lock(writer);
      write_json_file((root / "items" / name.str()).string(), j);
    }
    s.results[i] = std::move(res);
  });

  std::vector<std::string> violations;
  for (size_t i = 0; i < s.results.size(); ++i) {
    const BatchResult& r = s.results[i];
    if (!r.record) {
      ++s.errors;
      continue;
    }
    switch (r.record->verdict) {
      case ConjectureVerdict::CONSISTENT: ++s.consistent; break;
      case ConjectureVerdict::VIOLATION_CANDIDATE: ++s.violation_candidates; break;
      case ConjectureVerdict::INCONCLUSIVE: ++s.inconclusive; break;
    }
    const ConjectureRecord& c = *r.record;
    // Truncation-limited reports (SLOW decay, tail warnings) say nothing about the bound.
    if (c.deg.m1 <= 1 && c.report.warnings.empty())
      for (const auto& l : c.report.levels)
        if (l.rank > items[i].theta->d() * c.deg.m2)
          violations.push_back(c.label + " at (" + std::to_string(l.A) + "," + std::to_string(l.B) + "): rank " +
                               std::to_string(l.rank) + " > " + std::to_string(items[i].theta->d() * c.deg.m2));
  }
  {
    std::ofstream csv(root / "summary.csv");
    if (!csv) throw std::runtime_error("cannot write summary.csv in '" + out_dir + "'");
    csv << summary_csv(s);
  }
  if (!violations.empty()) {
    std::string msg = "rank bound d*deg_2 violated for deg_1 <= 1 (implementation fault):";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ScreeningFailure(msg);
  }
  return s;
}

}  // namespace bidisk

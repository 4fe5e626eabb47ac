#include "bidisk/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "bidisk/agler.hpp"

namespace bidisk::cli {

namespace {

// Raised after a report has been printed, when the command itself is a failed
// validation (e.g. `inner check` on a non-inner input).
struct ValidationExit {};

struct Common {
  bool quiet = false;
  bool json_stdout = false;
  std::string out;
};

std::string fmt(double x, int prec = 6) {
  std::ostringstream s;
  s << std::setprecision(prec) << x;
  return s.str();
}

// Aligned text table.
struct Table {
  std::vector<std::string> head;
  std::vector<std::vector<std::string>> rows;

  void print(std::ostream& os) const {
    std::vector<size_t> w(head.size(), 0);
    for (size_t c = 0; c < head.size(); ++c) w[c] = head[c].size();
    for (const auto& r : rows)
      for (size_t c = 0; c < r.size() && c < w.size(); ++c) w[c] = std::max(w[c], r[c].size());
    auto line = [&](const std::vector<std::string>& r) {
      for (size_t c = 0; c < w.size(); ++c) {
        const std::string cell = c < r.size() ? r[c] : "";
        if (c + 1 == w.size()) os << cell;
        else os << std::left << std::setw(static_cast<int>(w[c])) << cell << "  ";
      }
      os << "\n";
    };
    line(head);
    for (const auto& r : rows) line(r);
  }
};

void emit(const json& j, const Common& c, std::ostream& out) {
  if (!c.out.empty()) write_json_file(c.out, j);
  if (c.json_stdout) out << j.dump(2) << "\n";
}

bool tables(const Common& c) { return !c.quiet && !c.json_stdout; }

void add_common(CLI::App* app, Common& c, bool with_out = true) {
  if (with_out) app->add_option("--out", c.out, "Write the JSON report to this path");
  app->add_flag("--json", c.json_stdout, "Print the JSON report instead of a table");
}

std::string list_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

SweepOptions sweep_options(const std::vector<int>& pad, double tol) {
  SweepOptions o;
  if (!pad.empty()) o.pad = Pad{pad[0], pad[1]};
  if (!(tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  o.tol_rel = tol;
  return o;
}

AglerOptions agler_options(const std::vector<int>& pad, int depth) {
  AglerOptions o;
  o.K_depth = depth;
  if (!pad.empty()) o.pad = Pad{pad[0], pad[1]};
  return o;
}

void check_trunc(const std::vector<int>& t) {
  if (t.size() != 2 || t[0] < 0 || t[1] < 0) throw std::invalid_argument("--trunc needs two nonnegative integers A B");
}

}  // namespace

Schedule parse_schedule(const std::string& text) {
  Schedule s;
  std::stringstream levels(text);
  std::string level;
  while (std::getline(levels, level, ';')) {
    if (level.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = level.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("schedule level '" + level + "' is not of the form A,B");
    try {
      size_t used_a = 0, used_b = 0;
      const std::string sa = level.substr(0, comma), sb = level.substr(comma + 1);
      const int a = std::stoi(sa, &used_a), b = std::stoi(sb, &used_b);
      if (sa.find_first_not_of(" \t", used_a) != std::string::npos ||
          sb.find_first_not_of(" \t", used_b) != std::string::npos)
        throw std::invalid_argument("trailing characters");
      s.emplace_back(a, b);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("schedule level '" + level + "' is not of the form A,B");
    }
  }
  validate_schedule(s);
  return s;
}

RationalInnerMatrix load_theta(const std::string& source, bool require_inner) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) {
    RationalInnerMatrix t = theta_from_json(read_json_file(source));
    if (!require_inner) return t;
    return RationalInnerMatrix::create(t.Q(), t.p(), t.label());
  }
  return builtin(source);
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compressed shifts, commutator ranks and Agler subspaces for matrix inner functions on the bidisk",
               "bidisk-lab"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress text tables");

  Common common;
  std::string source;
  std::function<void()> action;

  // inner check / inner expand
  auto* inner = app.add_subcommand("inner", "Innerness checks and Taylor expansion");
  inner->require_subcommand(1);
  int grid_n = 32;
  bool exact = false;
  auto* check = inner->add_subcommand("check", "Verify that a candidate Θ is inner");
  check->add_option("source", source, "Θ JSON file or builtin name")->required();
  check->add_option("--grid", grid_n, "Torus grid size for the sampled check")->check(CLI::Range(2, 4096));
  check->add_flag("--exact", exact, "Check the Laurent identity Q Q* = |p|^2 I coefficientwise");
  add_common(check, common);
  check->callback([&] {
    action = [&] {
      const RationalInnerMatrix t = load_theta(source, false);
      const InnerReport r = exact ? verify_inner_exact(t) : verify_inner_grid(t, grid_n);
      const json j = {{"label", t.label()},
                      {"method", exact ? "exact" : "grid"},
                      {"grid", exact ? json(nullptr) : json(grid_n)},
                      {"residual", r.residual},
                      {"tolerance", kInnerTol},
                      {"inner", r.pass}};
      emit(j, common, out);
      if (tables(common)) {
        Table tb{{"label", "method", "residual", "inner"}, {}};
        tb.rows.push_back({t.label(), exact ? "exact" : "grid " + std::to_string(grid_n), fmt(r.residual, 3),
                           r.pass ? "yes" : "no"});
        tb.print(out);
      }
      if (!r.pass) {
        err << "error: " << t.label() << " is not inner (residual " << fmt(r.residual, 3) << " > " << kInnerTol
            << ")\n";
        throw ValidationExit{};
      }
    };
  });

  std::vector<int> trunc;
  auto* expand_cmd = inner->add_subcommand("expand", "Taylor coefficients of Θ on a truncation grid");
  expand_cmd->add_option("source", source, "Θ JSON file or builtin name")->required();
  expand_cmd->add_option("--trunc", trunc, "Cutoff A B")->expected(2)->required();
  add_common(expand_cmd, common);
  expand_cmd->callback([&] {
    action = [&] {
      check_trunc(trunc);
      const RationalInnerMatrix t = load_theta(source);
      const TaylorTable T = expand(t, trunc[0], trunc[1]);
      const TailDiagnostic diag = tail_diagnostic(T);
      emit(table_to_json(T), common, out);
      if (tables(common)) {
        Table tb{{"label", "A", "B", "tail_norm", "decay", "ratio"}, {}};
        tb.rows.push_back({t.label(), std::to_string(T.A()), std::to_string(T.B()), fmt(T.tail_norm(), 3),
                           to_string(diag.decay_class), fmt(diag.ratio, 4)});
        tb.print(out);
      }
    };
  });

  // rank
  std::string schedule_text = "4,4;6,6;8,8";
  std::vector<int> pad;
  double tol = kRankTol;
  auto* rank = app.add_subcommand("rank", "Rank sweep of the compressed z1 commutator");
  rank->add_option("source", source, "Θ JSON file or builtin name")->required();
  rank->add_option("--schedule", schedule_text, "Truncation levels \"A,B;A,B;...\"");
  rank->add_option("--pad", pad, "Explicit pad p1 p2")->expected(2);
  rank->add_option("--tol", tol, "Relative rank tolerance");
  add_common(rank, common);
  rank->callback([&] {
    action = [&] {
      const Schedule s = parse_schedule(schedule_text);
      const RationalInnerMatrix t = load_theta(source);
      const RankReport r = rank_sweep(t, s, sweep_options(pad, tol));
      emit(report_to_json(r), common, out);
      for (const auto& w : r.warnings) err << "warning: " << w << "\n";
      if (tables(common)) {
        out << r.label << "  deg (" << r.deg.m1 << "," << r.deg.m2 << ")  det_deg (" << r.det_deg.D1 << ","
            << r.det_deg.D2 << ")  decay " << to_string(r.decay) << "\n";
        Table tb{{"A", "B", "pad", "dim_model", "rank", "sigma_1", "sigma_(rank+1)"}, {}};
        for (const auto& l : r.levels) {
          const std::string next =
              l.rank < static_cast<int>(l.sigmas.size()) ? fmt(l.sigmas[static_cast<size_t>(l.rank)], 3) : "-";
          tb.rows.push_back({std::to_string(l.A), std::to_string(l.B),
                             std::to_string(l.pad.p1) + "," + std::to_string(l.pad.p2), std::to_string(l.dim_model),
                             std::to_string(l.rank), l.sigmas.empty() ? "-" : fmt(l.sigmas[0], 6), next});
        }
        tb.print(out);
        out << "stabilized_rank: " << (r.stabilized_rank ? std::to_string(*r.stabilized_rank) : "none")
            << ", verdict: " << to_string(r.verdict) << "\n";
      }
    };
  });

  // agler dims / agler verify
  auto* agler = app.add_subcommand("agler", "Canonical Agler subspaces");
  agler->require_subcommand(1);
  int depth = -1, samples = 25;
  std::uint64_t seed = 0;
  auto agler_json = [&](const RationalInnerMatrix& t, const AglerSpaces& sp) {
    const DetDegree dd = det_degree(t);
    const KernelDims k = kernel_space_dims(t, sp);
    return json{{"label", t.label()},
                {"trunc", {sp.model.grid.A, sp.model.grid.B}},
                {"pad", {sp.model.ambient.A - sp.model.grid.A, sp.model.ambient.B - sp.model.grid.B}},
                {"K_depth", sp.K_depth},
                {"dim_model", sp.model.dim()},
                {"dim_smax1", sp.smax1.dim()},
                {"dim_smin2", sp.smin2.dim()},
                {"dim_hkmax1", k.hkmax1},
                {"dim_hkmin2", k.hkmin2},
                {"det_deg", {dd.D1, dd.D2}},
                {"dims_match_det_degree", k.hkmax1 == dd.D2 && k.hkmin2 == dd.D1}};
  };
  auto agler_table = [&](const json& j) {
    Table tb{{"label", "A", "B", "dim_model", "smax1", "smin2", "hkmax1", "hkmin2", "det_deg", "match"}, {}};
    tb.rows.push_back({j["label"].get<std::string>(), std::to_string(j["trunc"][0].get<int>()),
                       std::to_string(j["trunc"][1].get<int>()), std::to_string(j["dim_model"].get<int>()),
                       std::to_string(j["dim_smax1"].get<int>()), std::to_string(j["dim_smin2"].get<int>()),
                       std::to_string(j["dim_hkmax1"].get<int>()), std::to_string(j["dim_hkmin2"].get<int>()),
                       "(" + std::to_string(j["det_deg"][0].get<int>()) + "," +
                           std::to_string(j["det_deg"][1].get<int>()) + ")",
                       j["dims_match_det_degree"].get<bool>() ? "yes" : "no"});
    tb.print(out);
  };

  auto* dims = agler->add_subcommand("dims", "Dimensions of S^max_1, S^min_2 and their kernel spaces");
  dims->add_option("source", source, "Θ JSON file or builtin name")->required();
  dims->add_option("--trunc", trunc, "Truncation A B")->expected(2)->required();
  dims->add_option("--pad", pad, "Base pad p1 p2")->expected(2);
  dims->add_option("--depth", depth, "z1 invariance depth for S^max_1 (default A)");
  add_common(dims, common);
  dims->callback([&] {
    action = [&] {
      check_trunc(trunc);
      const RationalInnerMatrix t = load_theta(source);
      const AglerSpaces sp = compute_agler_spaces(t, trunc[0], trunc[1], agler_options(pad, depth));
      json j = agler_json(t, sp);
      j["residual"] = nullptr;
      emit(j, common, out);
      if (tables(common)) agler_table(j);
    };
  });

  auto* verify = agler->add_subcommand("verify", "Agler identity residual and commutator kernel formulas");
  verify->add_option("source", source, "Θ JSON file or builtin name")->required();
  verify->add_option("--trunc", trunc, "Truncation A B")->expected(2)->required();
  verify->add_option("--samples", samples, "Number of sample pairs (z, w)")->check(CLI::Range(1, 100000));
  verify->add_option("--seed", seed, "Sampling seed");
  verify->add_option("--pad", pad, "Base pad p1 p2")->expected(2);
  verify->add_option("--depth", depth, "z1 invariance depth for S^max_1 (default A)");
  add_common(verify, common);
  verify->callback([&] {
    action = [&] {
      check_trunc(trunc);
      const RationalInnerMatrix t = load_theta(source);
      const AglerSpaces sp = compute_agler_spaces(t, trunc[0], trunc[1], agler_options(pad, depth));
      json j = agler_json(t, sp);
      j["samples"] = samples;
      j["seed"] = seed;
      j["residual"] = agler_kernel_residual(t, sp, sample_pairs(samples, seed));
      const OpMatrix C = commutator(compressed_shift(t, sp.model, 1));
      const auto inj = commutator_injectivity(t, sp, C);
      j["injectivity_sigma_min"] = inj ? json(*inj) : json(nullptr);
      if (t.deg().m1 <= 1) {
        const std::vector<Point> ws = sample_points(samples, seed + 1);
        std::mt19937_64 rng(seed + 2);
        std::normal_distribution<double> n(0.0, 1.0);
        double worst = 0.0;
        for (const Point& w : ws) {
          Eigen::VectorXcd e(t.d());
          for (int i = 0; i < t.d(); ++i) e(i) = cplx(n(rng), n(rng));
          e.normalize();
          worst = std::max(worst, commutator_kernel_formula(t, sp, C, w, e).max_diff());
        }
        j["formula_max_diff"] = worst;
      } else {
        j["formula_max_diff"] = nullptr;
      }
      emit(j, common, out);
      if (tables(common)) {
        agler_table(j);
        out << "residual: " << fmt(j["residual"].get<double>(), 3) << ", formula_max_diff: "
            << (j["formula_max_diff"].is_null() ? "n/a" : fmt(j["formula_max_diff"].get<double>(), 3))
            << ", injectivity_sigma_min: " << (inj ? fmt(*inj, 6) : "n/a") << "\n";
      }
    };
  });

  // conjecture run
  auto* conj = app.add_subcommand("conjecture", "Conjecture harness");
  conj->require_subcommand(1);
  FamilySpec fam;
  std::string kind = "diagonal";
  std::vector<std::string> inputs;
  std::string out_dir;
  auto* run = conj->add_subcommand("run", "Screen a generated family or a list of inputs");
  run->add_option("--kind", kind, "diagonal | product | conjugated");
  run->add_option("--d", fam.d, "Matrix size")->check(CLI::Range(1, 16));
  run->add_option("--count", fam.count, "Number of generated items")->check(CLI::NonNegativeNumber);
  run->add_option("--seed", fam.seed, "Family seed");
  run->add_option("--max-m1", fam.max_m1, "Cap on deg_1 of generated items")->check(CLI::NonNegativeNumber);
  run->add_option("--max-m2", fam.max_m2, "Cap on deg_2 of generated items")->check(CLI::NonNegativeNumber);
  run->add_option("--factors", fam.factors, "Factor pairs for the product kind")->check(CLI::PositiveNumber);
  run->add_option("--input", inputs, "Θ JSON files or builtin names, screened instead of a generated family");
  run->add_option("--schedule", schedule_text, "Truncation levels \"A,B;A,B;...\"");
  run->add_option("--pad", pad, "Explicit pad p1 p2")->expected(2);
  run->add_option("--tol", tol, "Relative rank tolerance");
  run->add_option("--out", out_dir, "Output directory for items/*.json and summary.csv")->required();
  run->callback([&] {
    action = [&] {
      const Schedule s = parse_schedule(schedule_text);
      const SweepOptions opt = sweep_options(pad, tol);
      std::vector<BatchItem> items;
      if (inputs.empty()) {
        fam.kind = family_kind_from_string(kind);
        items = generate_family(fam);
      } else {
        for (const auto& src : inputs) {
          BatchItem it;
          it.label = src;
          try {
            it.theta = load_theta(src, false);
            it.label = it.theta->label();
          } catch (const std::exception& e) {
            it.error = e.what();
          }
          items.push_back(std::move(it));
        }
      }
      const BatchSummary sum = run_batch(items, s, out_dir, opt);
      if (!quiet) {
        Table tb{{"label", "deg", "det_deg", "ranks", "stabilized", "predicted", "verdict"}, {}};
        for (const auto& r : sum.results) {
          if (!r.record) {
            tb.rows.push_back({r.label, "-", "-", "-", "-", "-", "ERROR: " + r.error});
            continue;
          }
          const ConjectureRecord& c = *r.record;
          std::vector<int> ranks;
          for (const auto& l : c.report.levels) ranks.push_back(l.rank);
          tb.rows.push_back({c.label, "(" + std::to_string(c.deg.m1) + "," + std::to_string(c.deg.m2) + ")",
                             "(" + std::to_string(c.det_deg.D1) + "," + std::to_string(c.det_deg.D2) + ")",
                             list_ints(ranks),
                             c.report.stabilized_rank ? std::to_string(*c.report.stabilized_rank) : "none",
                             c.predicted_rank ? std::to_string(*c.predicted_rank) : "inf", to_string(c.verdict)});
        }
        tb.print(out);
        out << "consistent: " << sum.consistent << ", violation_candidates: " << sum.violation_candidates
            << ", inconclusive: " << sum.inconclusive << ", errors: " << sum.errors << "\n";
      }
    };
  });

  // examples
  auto* examples = app.add_subcommand("examples", "Builtin inner functions");
  examples->require_subcommand(1);
  auto* list = examples->add_subcommand("list", "List builtin names");
  list->callback([&] {
    action = [&] {
      for (const auto& n : builtin_names()) out << n << "\n";
    };
  });
  std::string name;
  auto* show = examples->add_subcommand("show", "Print a builtin as Θ JSON");
  show->add_option("name", name, "Builtin name")->required();
  show->add_option("--out", common.out, "Write the Θ JSON to this path");
  show->callback([&] {
    action = [&] {
      const json j = theta_to_json(builtin(name));
      if (!common.out.empty()) write_json_file(common.out, j);
      else out << j.dump(2) << "\n";
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  common.quiet = quiet;
  try {
    if (action) action();
    return 0;
  } catch (const ValidationExit&) {
    return 2;
  } catch (const NotInnerError& e) {
    err << "error: " << e.what() << " (residual " << fmt(e.residual, 3) << ")\n";
    return 2;
  } catch (const ScreeningFailure& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bidisk::cli

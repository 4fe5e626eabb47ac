#include "bidisk/io.hpp"

#include <fstream>
#include <stdexcept>

namespace bidisk {

json poly_to_json(const BiPoly& p) {
  json terms = json::array();
  for (int a = 0; a <= p.deg1(); ++a)
    for (int b = 0; b <= p.deg2(); ++b) {
      const cplx c = p.coeff(a, b);
      if (c == 0.0) continue;
      terms.push_back({{"a", a}, {"b", b}, {"re", c.real()}, {"im", c.imag()}});
    }
  return terms;
}

BiPoly poly_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a list of terms");
  int A = 0, B = 0;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("a") || !t.contains("b"))
      throw std::invalid_argument("polynomial term needs integer fields a and b");
    const int a = t.at("a").get<int>(), b = t.at("b").get<int>();
    if (a < 0 || b < 0) throw std::invalid_argument("polynomial exponents must be nonnegative");
    A = std::max(A, a);
    B = std::max(B, b);
  }
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(A + 1, B + 1);
  for (const auto& t : j) {
    const double re = t.value("re", 0.0), im = t.value("im", 0.0);
    c(t.at("a").get<int>(), t.at("b").get<int>()) += cplx(re, im);
  }
  return BiPoly(std::move(c));
}

json theta_to_json(const RationalInnerMatrix& theta) {
  json Q = json::array();
  for (int i = 0; i < theta.d(); ++i) {
    json row = json::array();
    for (int k = 0; k < theta.d(); ++k) row.push_back(poly_to_json(theta.Q()(i, k)));
    Q.push_back(row);
  }
  return {{"d", theta.d()}, {"p", poly_to_json(theta.p())}, {"Q", Q}, {"label", theta.label()}};
}

RationalInnerMatrix theta_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("p") || !j.contains("Q"))
    throw std::invalid_argument("Θ JSON needs fields d, p and Q");
  const int d = j.at("d").get<int>();
  if (d < 1) throw std::invalid_argument("Θ JSON: d must be >= 1");
  const json& Qj = j.at("Q");
  if (!Qj.is_array() || static_cast<int>(Qj.size()) != d) throw std::invalid_argument("Θ JSON: Q must have d rows");
  MatPoly Q(d);
  for (int i = 0; i < d; ++i) {
    if (!Qj[i].is_array() || static_cast<int>(Qj[i].size()) != d)
      throw std::invalid_argument("Θ JSON: every row of Q must have d entries");
    for (int k = 0; k < d; ++k) Q(i, k) = poly_from_json(Qj[i][k]);
  }
  return RationalInnerMatrix::unchecked(std::move(Q), poly_from_json(j.at("p")), j.value("label", "input"));
}

json table_to_json(const TaylorTable& T) {
  json coeffs = json::array();
  for (int a = 0; a <= T.A(); ++a)
    for (int b = 0; b <= T.B(); ++b) {
      const Eigen::MatrixXcd& M = T(a, b);
      json re = json::array(), im = json::array();
      for (int i = 0; i < T.d(); ++i) {
        json rr = json::array(), ri = json::array();
        for (int k = 0; k < T.d(); ++k) {
          rr.push_back(M(i, k).real());
          ri.push_back(M(i, k).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
      }
      coeffs.push_back({{"a", a}, {"b", b}, {"re", re}, {"im", im}});
    }
  const TailDiagnostic diag = tail_diagnostic(T);
  return {{"d", T.d()},
          {"A", T.A()},
          {"B", T.B()},
          {"tail_norm", T.tail_norm()},
          {"decay_class", to_string(diag.decay_class)},
          {"coeffs", coeffs}};
}

TaylorTable table_from_json(const json& j) {
  TaylorTable T(j.at("d").get<int>(), j.at("A").get<int>(), j.at("B").get<int>());
  for (const auto& c : j.at("coeffs")) {
    const int a = c.at("a").get<int>(), b = c.at("b").get<int>();
    if (a < 0 || b < 0 || a > T.A() || b > T.B()) throw std::invalid_argument("table JSON: index outside cutoff");
    Eigen::MatrixXcd M(T.d(), T.d());
    for (int i = 0; i < T.d(); ++i)
      for (int k = 0; k < T.d(); ++k) M(i, k) = cplx(c.at("re")[i][k].get<double>(), c.at("im")[i][k].get<double>());
    T(a, b) = M;
  }
  T.update_tail_norm();
  return T;
}

json report_to_json(const RankReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"A", l.A},
                      {"B", l.B},
                      {"pad", {l.pad.p1, l.pad.p2}},
                      {"dim_model", l.dim_model},
                      {"sigmas", l.sigmas},
                      {"rank", l.rank}});
  return {{"label", r.label},
          {"deg", {r.deg.m1, r.deg.m2}},
          {"det_deg", {r.det_deg.D1, r.det_deg.D2}},
          {"decay_class", to_string(r.decay)},
          {"levels", levels},
          {"stabilized_rank", r.stabilized_rank ? json(*r.stabilized_rank) : json(nullptr)},
          {"verdict", to_string(r.verdict)},
          {"warnings", r.warnings},
          {"limitation", r.limitation}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace bidisk

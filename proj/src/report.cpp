#include "qfzeta/report.hpp"

#include <cmath>
#include <set>

namespace qfzeta {

Json complex_json(Complex z) { return Json{{"re", real_json(z.real())}, {"im", real_json(z.imag())}}; }

Json real_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json matrix_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

Json reals(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(real_json(x));
  return out;
}

Json complexes(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (Complex z : v) out.push_back(complex_json(z));
  return out;
}

Json moebius_json(const MoebiusMap& m) {
  return Json::array({complex_json(m.a()), complex_json(m.b()), complex_json(m.c()), complex_json(m.d())});
}

}  // namespace

Json class_json(const ConjugacyClass& c, const GroupDefinition& group) {
  return Json{{"word", format_word(c.canonical_word, group)},
              {"trace", complex_json(c.multiplier.trace)},
              {"lambda", complex_json(c.multiplier.lambda)},
              {"primitive", c.primitive},
              {"length", c.word_length}};
}

Json classes_json(const std::vector<ConjugacyClass>& classes, const GroupDefinition& group) {
  Json out = Json::array();
  for (const auto& c : classes) out.push_back(class_json(c, group));
  return out;
}

Json series_json(const SeriesValue& v, int n) {
  return Json{{"value", complex_json(v.value)},
              {"n", n},
              {"L", v.truncation_length},
              {"tail_estimate", real_json(v.tail_estimate)},
              {"terms_used", v.terms_used},
              {"increments", reals(v.increments)}};
}

Json product_json(const ProductValue& v, const std::string& kind, double parameter, const ZetaOptions& options) {
  Json j{{"function", kind}};
  if (kind == "F") {
    j["n"] = static_cast<int>(parameter);
  } else {
    j["s"] = parameter;
  }
  j["value"] = complex_json(v.value);
  j["log"] = complex_json(v.log_value);
  j["L"] = v.L;
  j["M"] = v.M;
  j["m_cutoff"] = options.m_cutoff;
  j["tail_estimate"] = real_json(v.tail_estimate);
  j["log_tail"] = real_json(v.log_tail);
  j["m_tail"] = real_json(v.m_tail);
  j["n_classes"] = v.n_classes;
  j["n_primitive"] = v.n_primitive;
  j["factors"] = v.factors;
  j["increments"] = reals(v.increments);
  return j;
}

Json polygon_json(const FundamentalPolygon& p, const GroupDefinition& group) {
  Json sides = Json::array();
  for (const auto& s : p.sides) {
    Json side{{"start", complex_json(s.start)},
              {"end", complex_json(s.end)},
              {"geodesic", Json{{"vertical", s.geodesic.vertical},
                                {"x", s.geodesic.x},
                                {"radius", s.geodesic.radius}}},
              {"boundary", s.boundary},
              {"partner", s.partner}};
    if (!s.boundary) {
      side["word"] = format_word(s.word, group);
      side["element"] = moebius_json(s.element);
    }
    sides.push_back(std::move(side));
  }
  return Json{{"center", complex_json(p.center)},
              {"compact", p.compact},
              {"enumeration_length", p.enumeration_length},
              {"vertices", complexes(p.vertices)},
              {"sides", std::move(sides)}};
}

Json kernel_json(const KernelSum& k) {
  return Json{{"value", complex_json(k.value)},
              {"n", k.n},
              {"L", k.L},
              {"tail_estimate", real_json(k.tail_estimate)},
              {"terms_used", k.terms},
              {"increments", reals(k.increments)}};
}

Json period_json(const PeriodMatrix& p) {
  return Json{{"side", to_string(p.side)},
              {"n", p.n},
              {"L", p.L},
              {"quad_order", p.order},
              {"check_order", p.check_order},
              {"refinement_change", real_json(p.refinement_change)},
              {"hermitian_defect", real_json(p.hermitian_defect)},
              {"condition_number", real_json(p.condition_number)},
              {"determinant", complex_json(p.determinant)},
              {"entries", matrix_json(p.entries)}};
}

Json kappa_json(const KappaMatrix& k) {
  return Json{{"side", to_string(k.side)},
              {"entries", matrix_json(k.entries)},
              {"determinant", complex_json(k.determinant)},
              {"direct_determinant", complex_json(k.direct_determinant)},
              {"eigenvalues", complexes(k.eigenvalues)},
              {"max_off_diagonal", real_json(k.max_off_diagonal)},
              {"basis_gram", period_json(k.basis_gram)},
              {"dual_gram", period_json(k.dual_gram)}};
}

Json basis_json(const DifferentialBasis& b) {
  return Json{{"side", to_string(b.side())},
              {"n", b.n()},
              {"L", b.truncation_length()},
              {"size", b.size()},
              {"anchors", complexes(b.anchors())},
              {"coefficients", matrix_json(b.coefficients())},
              {"condition_number", real_json(b.condition_number)}};
}

Json error_json(const Error& e) {
  return Json{{"schema", kSchemaVersion},
              {"error", Json{{"code", e.code()}, {"module", e.module()}, {"kind", e.kind()}, {"message", e.what()}}}};
}

namespace {

const std::set<std::string>& vocabulary() {
  static const std::set<std::string> keys{
      // envelope
      "schema", "command", "config", "group", "result", "timing", "error",
      // config
      "group_file", "n", "s", "max_word_len", "m_trunc", "quad_order", "check_order", "seed", "deterministic",
      "kernel_length", "center", "condition_bound", "tolerances", "quad_tol",
      // group
      "type", "rank_or_genus", "generators", "name", "matrix", "marking", "real", "fuchsian_frame",
      // error
      "code", "module", "kind", "message",
      // numbers
      "re", "im",
      // classes
      "classes", "count", "word", "trace", "lambda", "primitive", "length", "by_length",
      // series / products
      "value", "L", "M", "m_cutoff", "tail_estimate", "log_tail", "m_tail", "terms_used", "increments", "function",
      "log", "n_classes", "n_primitive", "factors",
      // polygon
      "polygon", "compact", "enumeration_length", "vertices", "sides", "start", "end", "geodesic", "vertical", "x",
      "radius", "boundary", "partner", "element", "area", "gauss_bonnet_area", "area_target", "area_order",
      // bers
      "side", "entries", "refinement_change", "hermitian_defect", "condition_number", "determinant",
      "direct_determinant", "eigenvalues", "max_off_diagonal", "basis_gram", "dual_gram", "size", "anchors",
      "coefficients", "basis", "dual", "N_plus", "N_minus", "det_product", "kappa_minus", "kappa_plus", "dimension",
      "poles", "samples",
      // checks
      "checks", "passed", "all_passed", "skipped", "tolerance", "reason", "seconds"};
  return keys;
}

void check_keys(const Json& j, const std::string& path) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (!vocabulary().count(key)) throw cli_error("SchemaError", "unknown key '" + key + "' at " + path);
      check_keys(value, path + "/" + key);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) check_keys(j[i], path + "/" + std::to_string(i));
  }
}

}  // namespace

void validate_report(const Json& report) {
  if (!report.is_object() || !report.contains("schema") || report["schema"] != kSchemaVersion) {
    throw cli_error("SchemaError", "report schema must be 1");
  }
  check_keys(report, "");
}

}  // namespace qfzeta

#include "qfzeta/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

namespace qfzeta {

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::vector<std::string> kCommands{"classes", "series", "zeta", "f", "domain", "period", "kappa", "check"};
const std::vector<std::string> kDescriptions{
    "primitive and non-primitive conjugacy classes up to --max-word-len",
    "multiplier series: sum of |lambda|^n over classes",
    "Selberg zeta Z(s) of a Fuchsian group",
    "the product F(n) over primitive classes",
    "Dirichlet fundamental polygon and its area",
    "period matrices N_plus, N_minus of a theta basis and its Bers dual",
    "kappa_minus and kappa_plus with their eigenvalues",
    "identity suite: reflection, reality, kernel symmetries, kappa"};

[[noreturn]] void parse_error(const std::string& what) { throw cli_error("ParseError", what); }

int default_length(const std::string& command) {
  if (command == "classes") return 4;
  if (command == "domain") return -1;
  return 6;
}

Json group_json(const GroupDefinition& g, bool has_frame) {
  Json gens = Json::array();
  for (const auto& gen : g.generators()) {
    const MoebiusMap& m = gen.map;
    gens.push_back(Json{{"name", gen.name},
                        {"matrix", Json::array({complex_json(m.a()), complex_json(m.b()), complex_json(m.c()),
                                                complex_json(m.d())})}});
  }
  return Json{{"type", g.kind() == GroupKind::free ? "free" : "surface"},
              {"rank_or_genus", g.rank_or_genus()},
              {"generators", std::move(gens)},
              {"real", g.is_real()},
              {"fuchsian_frame", has_frame}};
}

Json config_json(const RunConfig& c, int L, int kernel_len) {
  Json j{{"command", c.command},        {"group_file", c.group_file}, {"n", c.n},
         {"s", c.s},                    {"max_word_len", L},          {"kernel_length", kernel_len},
         {"m_trunc", c.m_trunc},        {"quad_order", c.quad_order}, {"check_order", c.quad_order + 8},
         {"seed", c.seed},              {"deterministic", c.deterministic}};
  j["tolerances"] = Json{{"quad_tol", c.quad_tol}, {"condition_bound", c.condition_bound}};
  return j;
}

BersOptions bers_options(const RunConfig& c, int kernel_len) {
  BersOptions o;
  o.kernel_length = kernel_len;
  o.quad_order = c.quad_order;
  o.check_order = c.quad_order + 8;
  o.seed = c.seed;
  o.quad_tol = c.quad_tol;
  o.condition_bound = c.condition_bound;
  return o;
}

// Theta basis on `side` with default poles, its dual, and both Gram matrices.
struct BersPair {
  DifferentialBasis basis;
  DifferentialBasis dual;
  PeriodMatrix basis_gram;
  PeriodMatrix dual_gram;
};

BersPair bers_pair(const BersWorkspace& ws, int n, Side side) {
  const std::size_t d = ws.dimension(n);
  if (d == 0) throw bers_error("Unsupported", "period matrices need a surface group");
  DifferentialBasis basis = theta_basis(ws, n, default_points(ws, opposite(side), d), side);
  DifferentialBasis dual = bers_dual(ws, basis);
  PeriodMatrix nb = period_matrix(ws, basis);
  PeriodMatrix nd = period_matrix(ws, dual);
  return {std::move(basis), std::move(dual), std::move(nb), std::move(nd)};
}

Json period_result(const BersPair& p) {
  // N_plus belongs to the plus-side member of the pair.
  const bool plus = p.basis.side() == Side::plus;
  const PeriodMatrix& np = plus ? p.basis_gram : p.dual_gram;
  const PeriodMatrix& nm = plus ? p.dual_gram : p.basis_gram;
  return Json{{"dimension", p.basis.size()},
              {"basis", basis_json(p.basis)},
              {"dual", basis_json(p.dual)},
              {"N_plus", period_json(np)},
              {"N_minus", period_json(nm)},
              {"det_product", complex_json(np.determinant * nm.determinant)}};
}

Json check_entry(const std::string& name, bool passed, double value, double tolerance) {
  return Json{{"name", name}, {"passed", passed}, {"value", real_json(value)}, {"tolerance", tolerance}};
}

Json skipped_entry(const std::string& name, const std::string& reason) {
  return Json{{"name", name}, {"passed", true}, {"skipped", true}, {"reason", reason}};
}

double eigen_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

Json run_check(const RunConfig& c, const GroupDefinition& g, int L, int kernel_len) {
  Json checks = Json::array();
  ZetaOptions zo;
  zo.m_trunc = c.m_trunc;

  // F of the conjugate group mirrors F bit for bit.
  const ProductValue f = F_function(g, c.n, L, zo);
  const ProductValue fbar = F_function(conjugate_group(g), c.n, L, zo);
  const bool mirrored = fbar.log_value == std::conj(f.log_value) && fbar.value == std::conj(f.value);
  checks.push_back(check_entry("reflection_F", mirrored, std::abs(fbar.log_value - std::conj(f.log_value)), 0.0));

  BersWorkspace ws(g, bers_options(c, kernel_len));
  if (g.is_real()) {
    const ZetaLadder ladder = zeta_ladder(g, c.n, L, true, zo);
    double worst_im = 0.0;
    for (const auto& v : ladder.F) worst_im = std::max(worst_im, std::abs(v.log_value.imag()));
    checks.push_back(check_entry("fuchsian_F_real", worst_im < 1e-10, worst_im, 1e-10));
    checks.push_back(check_entry("F_equals_Z_termwise", ladder.max_factor_difference == 0.0,
                                 ladder.max_factor_difference, 0.0));
  } else {
    checks.push_back(skipped_entry("fuchsian_F_real", "group has non-real generators"));
    checks.push_back(skipped_entry("F_equals_Z_termwise", "group has non-real generators"));
  }

  // Kernel identities on a small grid; frame groups use points of their own components.
  std::vector<Complex> zs{{0.1, -1.0}, {-0.4, -1.3}}, wp{{0.2, 1.1}, {-0.3, 0.8}};
  if (ws.has_frame()) {
    const MoebiusMap& h = ws.frame().h;
    for (auto& z : zs) z = h(z);
    for (auto& w : wp) w = h(w);
  }
  const double inter = intertwining_residual(ws, c.n, zs, wp);
  checks.push_back(check_entry("kernel_intertwining", inter == 0.0, inter, 0.0));
  const double adj = adjoint_residual(ws, c.n, zs, wp);
  checks.push_back(check_entry("kernel_adjoint", adj <= 1e-12, adj, 1e-12));

  if (ws.has_quadrature() && ws.dimension(c.n) > 0) {
    const BersPair minus = bers_pair(ws, c.n, Side::plus);
    const KappaMatrix km = kappa_matrix(minus.basis_gram, minus.dual_gram);
    checks.push_back(check_entry("kappa_minus_identity", km.max_off_diagonal < 1e-3, km.max_off_diagonal, 1e-3));
    const double det_err = std::abs(km.determinant - 1.0);
    checks.push_back(check_entry("det_product_one", det_err < 1e-3, det_err, 1e-3));
    const double det_gap = std::abs(km.direct_determinant - km.determinant);
    checks.push_back(check_entry("det_kappa_factorises", det_gap < 1e-3, det_gap, 1e-3));
    const BersPair plus = bers_pair(ws, c.n, Side::minus);
    const KappaMatrix kp = kappa_matrix(plus.basis_gram, plus.dual_gram);
    const double ev = eigen_distance(km.eigenvalues, kp.eigenvalues);
    checks.push_back(check_entry("kappa_plus_minus_spectra", ev < 1e-3, ev, 1e-3));
  } else {
    const std::string why = ws.has_frame() ? "no compact fundamental domain" : "no Fuchsian frame";
    for (const char* name : {"kappa_minus_identity", "det_product_one", "det_kappa_factorises", "kappa_plus_minus_spectra"}) {
      checks.push_back(skipped_entry(name, why));
    }
  }
  bool all = true;
  for (const auto& e : checks) all = all && e["passed"].get<bool>();
  return Json{{"checks", std::move(checks)}, {"all_passed", all}};
}

}  // namespace

RunConfig parse_arguments(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Multiplier series, zeta products and Bers operators of Fuchsian and quasi-Fuchsian groups", "qfzeta"};
  app.require_subcommand(1);
  app.footer("Run 'qfzeta <command> --help' for the options of a command.");
  std::optional<int> max_len, kernel_len;
  for (std::size_t i = 0; i < kCommands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(kCommands[i], kDescriptions[i]);
    sub->add_option("group", c.group_file, "group definition file")->required();
    sub->add_option("--n", c.n, "differential weight n >= 2");
    sub->add_option("--s", c.s, "real s > 1 for Z(s)");
    sub->add_option("--max-word-len", max_len, "word length budget for classes and elements");
    sub->add_option("--kernel-len", kernel_len, "word length budget for Poincare sums");
    sub->add_option("--m-trunc", c.m_trunc, "largest m in the products over m");
    sub->add_option("--quad-order", c.quad_order, "Gauss-Legendre order");
    sub->add_option("--seed", c.seed, "seed for collocation resampling");
    sub->add_option("--quad-tol", c.quad_tol, "relative Gram change allowed between quadrature orders");
    sub->add_option("--condition-bound", c.condition_bound, "largest accepted Gram or collocation condition number");
    sub->add_flag("--deterministic", c.deterministic, "omit timing fields");
    sub->add_option("--out", c.out, "output path (default stdout)");
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    throw cli_error("Help", parsed.empty() ? app.help() : parsed.front()->help());
  } catch (const CLI::CallForAllHelp&) {
    throw cli_error("Help", app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    parse_error(e.what());
  }
  for (const std::string& name : kCommands) {
    if (app.got_subcommand(name)) c.command = name;
  }
  c.max_word_len = max_len;
  c.kernel_len = kernel_len;
  if (c.n < 2) parse_error("--n must be >= 2");
  if (!(c.s > 1.0) || !std::isfinite(c.s)) parse_error("--s must be a real number > 1");
  if (max_len && *max_len < 0) parse_error("--max-word-len must be >= 0");
  if (kernel_len && *kernel_len < 0) parse_error("--kernel-len must be >= 0");
  if (c.m_trunc < 0) parse_error("--m-trunc must be >= 0");
  if (c.quad_order < 1) parse_error("--quad-order must be >= 1");
  if (!(c.quad_tol > 0.0)) parse_error("--quad-tol must be > 0");
  if (!(c.condition_bound >= 1.0)) parse_error("--condition-bound must be >= 1");
  return c;
}

Json run(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const GroupDefinition g = read_group_file(c.group_file);
  g.validate();
  const int L = c.max_word_len.value_or(default_length(c.command));
  const int kernel_len = c.kernel_len.value_or(6);
  ZetaOptions zo;
  zo.m_trunc = c.m_trunc;

  Json result;
  bool has_frame = fuchsian_frame(g).has_value();
  if (c.command == "classes") {
    const auto classes = conjugacy_classes(g, L);
    Json by_length = Json::array();
    for (int l = 1; l <= L; ++l) {
      by_length.push_back(std::count_if(classes.begin(), classes.end(),
                                        [l](const ConjugacyClass& k) { return k.word_length == l; }));
    }
    result = Json{{"count", classes.size()}, {"by_length", std::move(by_length)}, {"classes", classes_json(classes, g)}};
  } else if (c.command == "series") {
    result = series_json(multiplier_series(g, c.n, L, zo), c.n);
  } else if (c.command == "f") {
    result = product_json(F_function(g, c.n, L, zo), "F", c.n, zo);
  } else if (c.command == "zeta") {
    result = product_json(selberg_Z(g, c.s, L, zo), "Z", c.s, zo);
  } else if (c.command == "domain") {
    const auto frame = fuchsian_frame(g);
    if (!frame) throw zeta_error("NotFuchsian", "the Dirichlet domain needs a Fuchsian group or a Moebius conjugate of one");
    DomainOptions dopt;
    const FundamentalPolygon p = dirichlet_domain(frame->fuchsian, Complex(0.0, 1.0), L, dopt);
    result = Json{{"polygon", polygon_json(p, frame->fuchsian)},
                  {"area", real_json(hyperbolic_area(p, dopt.area_order))},
                  {"area_order", dopt.area_order}};
    if (p.compact) result["gauss_bonnet_area"] = real_json(gauss_bonnet_area(p));
    if (g.kind() == GroupKind::surface) result["area_target"] = 4.0 * kPi * (g.genus() - 1);
  } else if (c.command == "period") {
    BersWorkspace ws(g, bers_options(c, kernel_len));
    result = period_result(bers_pair(ws, c.n, Side::plus));
  } else if (c.command == "kappa") {
    BersWorkspace ws(g, bers_options(c, kernel_len));
    const BersPair minus = bers_pair(ws, c.n, Side::plus);
    const BersPair plus = bers_pair(ws, c.n, Side::minus);
    result = Json{{"dimension", minus.basis.size()},
                  {"kappa_minus", kappa_json(kappa_matrix(minus.basis_gram, minus.dual_gram))},
                  {"kappa_plus", kappa_json(kappa_matrix(plus.basis_gram, plus.dual_gram))}};
  } else if (c.command == "check") {
    result = run_check(c, g, L, kernel_len);
  } else {
    parse_error("unknown command '" + c.command + "'");
  }

  Json report{{"schema", kSchemaVersion},
              {"command", c.command},
              {"config", config_json(c, L, kernel_len)},
              {"group", group_json(g, has_frame)},
              {"result", std::move(result)}};
  if (!c.deterministic) {
    report["timing"] = Json{{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  }
  return report;
}

bool report_passed(const Json& report) {
  const Json& r = report["result"];
  return !r.is_object() || !r.contains("all_passed") || r["all_passed"].get<bool>();
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto fail = [&](const Error& e, int code) {
    out << error_json(e).dump(2) << "\n";
    err << e.code() << ": " << e.what() << "\n";
    return code;
  };
  try {
    const RunConfig c = parse_arguments(args);
    const Json report = run(c);
    const std::string text = report.dump(2) + "\n";
    if (c.out.empty()) {
      out << text;
    } else {
      // Write beside the target and rename, so the path never holds a partial report.
      const std::string tmp = c.out + ".tmp";
      {
        std::ofstream f(tmp, std::ios::binary);
        f << text;
        if (!f) throw cli_error("IOError", "cannot write " + tmp);
      }
      if (std::rename(tmp.c_str(), c.out.c_str()) != 0) throw cli_error("IOError", "cannot rename to " + c.out);
    }
    return report_passed(report) ? 0 : 1;
  } catch (const Error& e) {
    if (e.code() == "cli.Help") {
      out << e.what();
      return 0;
    }
    return fail(e, e.kind() == "ParseError" ? 2 : 3);
  } catch (const std::exception& e) {
    return fail(cli_error("Internal", e.what()), 3);
  }
}

}  // namespace qfzeta

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfzeta/report.hpp"

namespace qfzeta {

struct RunConfig {
  std::string command;     ///< classes, series, zeta, f, domain, period, kappa, check
  std::string group_file;
  int n = 2;
  double s = 2.0;
  std::optional<int> max_word_len;  ///< class / element budget; per-command default when unset
  std::optional<int> kernel_len;    ///< Poincare sum budget for the bers commands
  int m_trunc = 64;
  int quad_order = 16;              ///< Gram matrices are checked against quad_order + 8
  double quad_tol = 1e-6;           ///< Gram refinement tolerance
  double condition_bound = 1e8;     ///< basis selection and collocation
  std::uint64_t seed = 1;
  bool deterministic = false;       ///< omit timing so repeated runs are byte-identical
  std::string out;                  ///< write here instead of stdout
};

/// Throws cli.ParseError for bad flags or budgets, cli.Help with the usage text.
RunConfig parse_arguments(const std::vector<std::string>& args);

/// Runs one command and returns the full report. Throws module errors.
Json run(const RunConfig& config);

/// True when the report's identity checks all passed (always true for non-check commands).
bool report_passed(const Json& report);

/// Process entry: exit 0 on success, 1 when a check fails, 2 on ParseError,
/// 3 on any other error. Errors print only the error object.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfzeta

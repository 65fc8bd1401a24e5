#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qfzeta/bers.hpp"
#include "qfzeta/conjugacy.hpp"
#include "qfzeta/domain.hpp"
#include "qfzeta/errors.hpp"
#include "qfzeta/zeta.hpp"

namespace qfzeta {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"re": x, "im": y}.
Json complex_json(Complex z);
/// Finite values as numbers, others as the strings "inf", "-inf", "nan".
Json real_json(double x);
/// Row-major rows of [re, im] pairs.
Json matrix_json(const Eigen::MatrixXcd& m);

Json class_json(const ConjugacyClass& c, const GroupDefinition& group);
Json classes_json(const std::vector<ConjugacyClass>& classes, const GroupDefinition& group);
Json series_json(const SeriesValue& v, int n);
/// kind is "F" or "Z"; parameter is n or s.
Json product_json(const ProductValue& v, const std::string& kind, double parameter, const ZetaOptions& options);
Json polygon_json(const FundamentalPolygon& p, const GroupDefinition& group);
Json kernel_json(const KernelSum& k);
Json period_json(const PeriodMatrix& p);
Json kappa_json(const KappaMatrix& k);
Json basis_json(const DifferentialBasis& b);

/// {"schema": 1, "error": {"code", "module", "kind", "message"}}.
Json error_json(const Error& e);

/// Rejects documents whose schema is not 1 or that carry keys outside the
/// report vocabulary. Throws cli.SchemaError.
void validate_report(const Json& report);

}  // namespace qfzeta

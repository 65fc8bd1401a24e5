#include "qfzeta/group_definition.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "qfzeta/errors.hpp"

namespace qfzeta {

GroupDefinition::GroupDefinition(GroupKind kind, int rank_or_genus,
                                 std::vector<NamedGenerator> generators,
                                 std::optional<Marking> marking)
    : kind_(kind),
      rank_or_genus_(rank_or_genus),
      generators_(std::move(generators)),
      marking_(std::move(marking)) {
  const std::size_t expected =
      kind_ == GroupKind::surface ? 2 * static_cast<std::size_t>(rank_or_genus_)
                                  : static_cast<std::size_t>(rank_or_genus_);
  // free 0 is the trivial group, used as a closed-form reference.
  if (rank_or_genus_ < 0 || generators_.size() != expected) {
    throw moebius_error("InvalidGroup", "generator count does not match the declared type");
  }
  if (kind_ == GroupKind::surface && rank_or_genus_ < 2) {
    throw moebius_error("InvalidGroup", "surface groups need genus at least 2");
  }
  if (marking_) {
    if (marking_->order.size() != generators_.size()) {
      throw moebius_error("InvalidGroup", "marking must list every generator exactly once");
    }
    std::vector<bool> seen(generators_.size(), false);
    for (int idx : marking_->order) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= generators_.size() || seen[idx]) {
        throw moebius_error("InvalidGroup", "marking must list every generator exactly once");
      }
      seen[idx] = true;
    }
  }
}

std::vector<int> GroupDefinition::relator_order() const {
  if (marking_) return marking_->order;
  std::vector<int> order(generators_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  return order;
}

int GroupDefinition::marked_a(int i) const {
  const auto order = relator_order();
  const std::size_t pos =
      kind_ == GroupKind::surface ? 2 * static_cast<std::size_t>(i - 1) : static_cast<std::size_t>(i - 1);
  if (i < 1 || pos >= order.size()) {
    throw moebius_error("DegenerateMarking", "marking has no generator a_" + std::to_string(i));
  }
  return order[pos];
}

MoebiusMap GroupDefinition::relator_value() const {
  if (kind_ != GroupKind::surface) {
    throw moebius_error("InvalidGroup", "free groups carry no relator");
  }
  const auto order = relator_order();
  MoebiusMap product;
  for (int i = 0; i < rank_or_genus_; ++i) {
    const MoebiusMap& a = generators_[order[2 * i]].map;
    const MoebiusMap& b = generators_[order[2 * i + 1]].map;
    product = product * a * b * a.inverse() * b.inverse();
  }
  return product;
}

void GroupDefinition::validate(const Tolerances& tol) const {
  for (const auto& g : generators_) {
    if (classify(g.map, tol) != Classification::loxodromic) {
      throw moebius_error("NotLoxodromic", "generator " + g.name + " is " +
                                               to_string(classify(g.map, tol)));
    }
  }
  if (kind_ == GroupKind::surface) {
    const double err = relator_value().distance(MoebiusMap{});
    if (err > tol.relator) {
      std::ostringstream msg;
      msg << "surface relator evaluates to " << err << " away from the identity";
      throw moebius_error("InvalidGroup", msg.str());
    }
  }
}

GroupDefinition GroupDefinition::conjugated_by(const MoebiusMap& h) const {
  std::vector<NamedGenerator> gens;
  gens.reserve(generators_.size());
  const MoebiusMap hinv = h.inverse();
  for (const auto& g : generators_) gens.push_back({g.name, h * g.map * hinv});
  return GroupDefinition(kind_, rank_or_genus_, std::move(gens), marking_);
}

bool GroupDefinition::is_real(double tol) const {
  for (const auto& g : generators_) {
    const MoebiusMap& m = g.map;
    const double im = std::max({std::abs(m.a().imag()), std::abs(m.b().imag()),
                                std::abs(m.c().imag()), std::abs(m.d().imag())});
    const double scale = std::max({std::abs(m.a()), std::abs(m.b()), std::abs(m.c()),
                                   std::abs(m.d()), 1.0});
    if (im > tol * scale) return false;
  }
  return true;
}

GroupDefinition conjugate_group(const GroupDefinition& group) {
  std::vector<NamedGenerator> gens;
  gens.reserve(group.generator_count());
  for (const auto& g : group.generators()) gens.push_back({g.name, g.map.conj()});
  return GroupDefinition(group.kind(), group.rank_or_genus(), std::move(gens), group.marking());
}

Normalization normalize_marked_group(const GroupDefinition& group, const Tolerances& tol) {
  if (group.generator_count() < 2) {
    throw moebius_error("DegenerateMarking", "normalisation needs two marked generators");
  }
  const int i1 = group.marked_a(1);
  const int i2 = group.marked_a(2);
  const FixedPoints f1 = fixed_points(group.generators()[i1].map, tol);
  const FixedPoints f2 = fixed_points(group.generators()[i2].map, tol);
  const MoebiusMap h = map_to_zero_infinity_one(f1.attracting, f1.repelling, f2.attracting);
  return {group.conjugated_by(h), h};
}

namespace {

[[noreturn]] void parse_fail(const std::string& source, int line, const std::string& what) {
  throw moebius_error("ParseError", source + ":" + std::to_string(line) + ": " + what);
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_complex(const std::string& token, Complex& out) {
  const auto comma = token.find(',');
  if (comma == std::string::npos || token.find(',', comma + 1) != std::string::npos) return false;
  double re = 0.0, im = 0.0;
  if (!parse_double(std::string_view(token).substr(0, comma), re)) return false;
  if (!parse_double(std::string_view(token).substr(comma + 1), im)) return false;
  out = Complex(re, im);
  return true;
}

}  // namespace

GroupDefinition parse_group(std::istream& in, const std::string& source) {
  std::optional<GroupKind> kind;
  int count = 0;
  std::vector<NamedGenerator> gens;
  std::map<std::string, int> index;
  std::optional<std::vector<std::string>> marking_names;
  int marking_line = 0;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;

    if (keyword == "type") {
      if (kind) parse_fail(source, lineno, "duplicate type line");
      std::string which;
      std::string extra;
      if (!(ls >> which >> count) || (ls >> extra)) {
        parse_fail(source, lineno, "expected 'type free <r>' or 'type surface <g>'");
      }
      if (which == "free") {
        kind = GroupKind::free;
      } else if (which == "surface") {
        kind = GroupKind::surface;
      } else {
        parse_fail(source, lineno, "unknown group type '" + which + "'");
      }
      if (count < 0 || (kind == GroupKind::surface && count < 1)) parse_fail(source, lineno, "rank/genus out of range");
    } else if (keyword == "gen") {
      std::string name, eq;
      if (!(ls >> name >> eq) || eq != "=") parse_fail(source, lineno, "expected 'gen <name> = (...)'");
      std::string rest;
      std::getline(ls, rest);
      const auto open = rest.find('(');
      const auto close = rest.rfind(')');
      if (open == std::string::npos || close == std::string::npos || close < open) {
        parse_fail(source, lineno, "matrix entries must be enclosed in parentheses");
      }
      if (rest.find_first_not_of(" \t\r", close + 1) != std::string::npos ||
          rest.find_first_not_of(" \t\r") != open) {
        parse_fail(source, lineno, "unexpected text around the matrix");
      }
      std::istringstream entries(rest.substr(open + 1, close - open - 1));
      std::vector<Complex> values;
      std::string token;
      while (entries >> token) {
        Complex z;
        if (!parse_complex(token, z)) parse_fail(source, lineno, "bad complex entry '" + token + "'");
        values.push_back(z);
      }
      if (values.size() != 4) parse_fail(source, lineno, "expected four complex entries");
      if (index.count(name)) parse_fail(source, lineno, "duplicate generator '" + name + "'");
      try {
        gens.push_back({name, MoebiusMap(values[0], values[1], values[2], values[3])});
      } catch (const Error& e) {
        parse_fail(source, lineno, e.what());
      }
      index[name] = static_cast<int>(gens.size()) - 1;
    } else if (keyword == "marking") {
      if (marking_names) parse_fail(source, lineno, "duplicate marking line");
      marking_names.emplace();
      std::string name;
      while (ls >> name) marking_names->push_back(name);
      marking_line = lineno;
    } else {
      parse_fail(source, lineno, "unknown keyword '" + keyword + "'");
    }
  }

  if (!kind) parse_fail(source, lineno, "missing type line");
  std::optional<Marking> marking;
  if (marking_names) {
    Marking m;
    for (const auto& name : *marking_names) {
      auto it = index.find(name);
      if (it == index.end()) parse_fail(source, marking_line, "marking names unknown generator '" + name + "'");
      m.order.push_back(it->second);
    }
    marking = std::move(m);
  }
  try {
    return GroupDefinition(*kind, count, std::move(gens), std::move(marking));
  } catch (const Error& e) {
    parse_fail(source, lineno, e.what());
  }
}

GroupDefinition read_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw moebius_error("ParseError", "cannot open group file '" + path + "'");
  return parse_group(in, path);
}

std::string format_group(const GroupDefinition& group) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "type " << (group.kind() == GroupKind::free ? "free " : "surface ") << group.rank_or_genus()
     << "\n";
  for (const auto& g : group.generators()) {
    const MoebiusMap& m = g.map;
    os << "gen " << g.name << " = (";
    const Complex e[4] = {m.a(), m.b(), m.c(), m.d()};
    for (int i = 0; i < 4; ++i) {
      os << (i ? " " : "") << e[i].real() << "," << e[i].imag();
    }
    os << ")\n";
  }
  if (group.marking()) {
    os << "marking";
    for (int idx : group.marking()->order) os << " " << group.generators()[idx].name;
    os << "\n";
  }
  return os.str();
}

}  // namespace qfzeta

#pragma once

#include <stdexcept>
#include <string>

namespace qfzeta {

// Every failure carries a module-qualified code such as "moebius.NotLoxodromic"
// so that the CLI can emit a machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string kind, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)), kind_(std::move(kind)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& kind() const noexcept { return kind_; }
  std::string code() const { return module_ + "." + kind_; }

 private:
  std::string module_;
  std::string kind_;
};

inline Error moebius_error(const std::string& kind, const std::string& what) {
  return Error("moebius", kind, what);
}
inline Error group_error(const std::string& kind, const std::string& what) {
  return Error("group", kind, what);
}
inline Error zeta_error(const std::string& kind, const std::string& what) {
  return Error("zeta", kind, what);
}
inline Error domain_error(const std::string& kind, const std::string& what) {
  return Error("domain", kind, what);
}
inline Error bers_error(const std::string& kind, const std::string& what) {
  return Error("bers", kind, what);
}
inline Error cli_error(const std::string& kind, const std::string& what) {
  return Error("cli", kind, what);
}

}  // namespace qfzeta

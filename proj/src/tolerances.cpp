#include "qgamma/errors.hpp"

#include <cstdlib>
#include <optional>

namespace qgamma::tol {

namespace {

std::optional<double> g_psd_override;
std::optional<double> g_solver_override;

double parse_env(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || raw[0] == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v >= 0.0)) {
    throw Error(std::string(name) + ": invalid tolerance '" + raw + "'");
  }
  return v;
}

}  // namespace

double herm() { return 1e-10; }

double psd() {
  if (g_psd_override) return *g_psd_override;
  return parse_env("QGAMMA_PSD_TOL", 1e-10);
}

double spec() { return 1e-9; }

double solver() {
  if (g_solver_override) return *g_solver_override;
  return parse_env("QGAMMA_SOLVER_TOL", 1e-8);
}

void set_psd(double v) {
  if (!(v >= 0.0)) throw Error("set_psd: tolerance must be nonnegative");
  g_psd_override = v;
}

void set_solver(double v) {
  if (!(v >= 0.0)) throw Error("set_solver: tolerance must be nonnegative");
  g_solver_override = v;
}

void reset_overrides() {
  g_psd_override.reset();
  g_solver_override.reset();
}

void validate_environment() {
  parse_env("QGAMMA_PSD_TOL", 1e-10);
  parse_env("QGAMMA_SOLVER_TOL", 1e-8);
}

}  // namespace qgamma::tol

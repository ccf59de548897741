#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgamma/bregman.hpp"
#include "qgamma/channels.hpp"
#include "qgamma/checks.hpp"
#include "qgamma/divergence.hpp"
#include "qgamma/io.hpp"
#include "qgamma/projection.hpp"
#include "qgamma/quasientropy.hpp"

namespace {

// Exit codes: 0 ok / PASS, 1 audit or check FAIL, 2 usage, parse or
// environment errors, 3 infeasible projection, 4 iteration limit.
constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kInfeasible = 3;
constexpr int kMaxIterations = 4;

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string format_divergence(const qgamma::DivergenceValue& d) {
  if (d.infinite) return "inf";
  return format_value(d.value);
}

struct GammaRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

GammaRange parse_range(const std::string& text) {
  GammaRange r;
  char tail = '\0';
  const int n = std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &r.start, &r.stop, &r.step, &tail);
  if (n != 3) throw qgamma::ParseError("range must look like a:b:step, got '" + text + "'");
  if (!(r.start >= 0.0) || !(r.start < r.stop) || !(r.stop <= 1.0) || !(r.step > 0.0)) {
    throw qgamma::ParseError("range requires 0 <= a < b <= 1 and step > 0");
  }
  return r;
}

qgamma::DivergenceValue divergence_at(const qgamma::State& omega, const qgamma::State& phi,
                                      double gamma) {
  // Endpoints use the closed boundary forms.
  if (gamma <= 1e-12) return qgamma::relative_entropy_0(omega, phi);
  if (gamma >= 1.0 - 1e-12) return qgamma::relative_entropy_1(omega, phi);
  return qgamma::gamma_divergence(omega, phi, gamma);
}

std::vector<int> parse_shape(const std::string& text) {
  std::vector<int> dims;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    try {
      dims.push_back(std::stoi(text.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw qgamma::ParseError("shape must be a comma-separated list of integers");
    }
    pos = next + 1;
  }
  if (dims.empty()) throw qgamma::ParseError("shape must be nonempty");
  return dims;
}

int run(int argc, char** argv) {
  CLI::App app{"gamma-family quantum relative entropies on block-diagonal matrix algebras"};
  app.require_subcommand(1);
  std::optional<double> psd_tol_flag;
  std::optional<double> solver_tol_flag;
  app.add_option("--psd-tol", psd_tol_flag, "Override the PSD clipping tolerance");
  app.add_option("--solver-tol", solver_tol_flag, "Override the solver stopping tolerance");

  // div / quasi
  std::string omega_path, phi_path;
  double gamma = 0.5;
  auto* div = app.add_subcommand("div", "Divergence between two state files");
  div->add_option("omega", omega_path, "First state (JSON)")->required();
  div->add_option("phi", phi_path, "Second state (JSON)")->required();
  div->add_option("--gamma", gamma, "Index in [0,1]; 0 and 1 use the closed boundary forms")
      ->required();

  auto* quasi = app.add_subcommand("quasi", "Divergence via the quasi-entropy spectral path");
  quasi->add_option("omega", omega_path, "First state (JSON)")->required();
  quasi->add_option("phi", phi_path, "Second state (JSON)")->required();
  quasi->add_option("--gamma", gamma, "Index in (0,1)")->required();

  // sweep
  std::string range_text = "0.1:0.9:0.1";
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "Divergence curve over a gamma grid, written as CSV");
  sweep->add_option("omega", omega_path)->required();
  sweep->add_option("phi", phi_path)->required();
  sweep->add_option("--range", range_text, "Grid a:b:step, endpoints included when on-grid")
      ->required();
  sweep->add_option("--out", out_path, "Output CSV path")->required();

  // project
  std::string constraints_path;
  std::optional<double> project_gamma;
  int max_iterations = 10000;
  auto* project = app.add_subcommand("project", "Bregman projection onto affine constraints");
  project->add_option("psi", omega_path, "State to project (JSON)")->required();
  project->add_option("constraints", constraints_path, "Constraint set (JSON)")->required();
  project->add_option("--gamma", project_gamma,
                      "Override the embedding index from the constraints file");
  project->add_option("--out", out_path, "Output JSON path")->required();
  project->add_option("--max-iterations", max_iterations, "Iteration cap");

  // audit
  std::string kind;
  long trials = 1000;
  int dim = 2;
  std::uint64_t seed = 0;
  std::optional<double> audit_gamma;
  auto* audit = app.add_subcommand("audit", "Randomized property audit");
  audit
      ->add_option("--kind", kind,
                   "One of monotone, convexity, duality, cosine, quasi, pythagoras")
      ->required();
  audit->add_option("--trials", trials, "Number of random trials")->required();
  audit->add_option("--dim", dim, "Block dimension of sampled states");
  audit->add_option("--seed", seed, "Base seed");
  audit->add_option("--gamma", audit_gamma, "Fixed gamma (default: per-trial grid)");

  // gen
  std::string gen_what = "state";
  std::string shape_text = "2";
  bool normalized = false;
  int in_dim = 2, out_dim = 2, kraus_count = 2;
  auto* gen = app.add_subcommand("gen", "Generate random states and channels");
  gen->add_option("what", gen_what, "state | channel")->required();
  gen->add_option("--shape", shape_text, "Block dimensions, e.g. 2,2 (state)");
  gen->add_flag("--normalized", normalized, "Scale the state to unit trace");
  gen->add_option("--in-dim", in_dim, "Input dimension (channel)");
  gen->add_option("--out-dim", out_dim, "Output dimension (channel)");
  gen->add_option("--kraus-count", kraus_count, "Number of Kraus operators (channel)");
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--out", out_path, "Output JSON path")->required();

  // check
  std::string suite = "all";
  auto* check = app.add_subcommand("check", "Run the acceptance criteria");
  check->add_option("--suite", suite, "all or a module name");
  check->add_option("--seed", seed, "Base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }

  try {
    qgamma::tol::validate_environment();
    if (psd_tol_flag) qgamma::tol::set_psd(*psd_tol_flag);
    if (solver_tol_flag) qgamma::tol::set_solver(*solver_tol_flag);

    if (div->parsed() || quasi->parsed()) {
      if (gamma < 0.0 || gamma > 1.0) {
        std::cerr << "gamma must lie in [0,1]\n";
        return kUsage;
      }
      const qgamma::State omega = qgamma::load_state(omega_path);
      const qgamma::State phi = qgamma::load_state(phi_path);
      if (quasi->parsed()) {
        std::cout << format_value(qgamma::quasi_entropy_gamma(omega, phi, gamma)) << "\n";
      } else {
        std::cout << format_divergence(divergence_at(omega, phi, gamma)) << "\n";
      }
      return kOk;
    }

    if (sweep->parsed()) {
      const GammaRange range = parse_range(range_text);
      const qgamma::State omega = qgamma::load_state(omega_path);
      const qgamma::State phi = qgamma::load_state(phi_path);
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return kUsage;
      }
      out << "gamma,divergence\n";
      for (int k = 0;; ++k) {
        const double g = range.start + k * range.step;
        if (g > range.stop + 1e-12) break;
        out << format_value(g) << "," << format_divergence(divergence_at(omega, phi, g)) << "\n";
      }
      return kOk;
    }

    if (project->parsed()) {
      const qgamma::State psi = qgamma::load_state(omega_path);
      qgamma::ConstraintSet set = qgamma::load_constraint_set(constraints_path);
      if (project_gamma) {
        set = qgamma::ConstraintSet(*project_gamma, set.constraints());
      }
      qgamma::ProjectionOptions opts;
      opts.max_iterations = max_iterations;
      const qgamma::ProjectionResult result = qgamma::bregman_project(psi, set, opts);
      qgamma::Json j;
      j["projected"] = qgamma::to_json(result.projected);
      j["divergence"] = result.divergence;
      j["kkt_residual"] = result.kkt_residual;
      j["feasibility_residual"] = result.feasibility_residual;
      j["iterations"] = result.iterations;
      j["converged"] = result.converged;
      qgamma::save_json(out_path, j);
      if (!result.converged) {
        std::cerr << "iteration limit reached; partial result written\n";
        return kMaxIterations;
      }
      return kOk;
    }

    if (audit->parsed()) {
      const qgamma::checks::AuditOutcome outcome =
          qgamma::checks::run_audit(kind, trials, dim, seed, audit_gamma);
      std::printf("%-10s worst %.9g (tol %.3g) over %ld trials: %s\n", kind.c_str(), outcome.worst,
                  outcome.tolerance, trials, outcome.pass ? "PASS" : "FAIL");
      if (!outcome.pass) {
        std::printf("  offending trial %ld (seed %" PRIu64 ")\n", outcome.worst_trial,
                    outcome.worst_seed);
        return kFail;
      }
      return kOk;
    }

    if (gen->parsed()) {
      if (gen_what == "state") {
        const qgamma::AlgebraShape shape(parse_shape(shape_text));
        qgamma::save_json(out_path, qgamma::to_json(qgamma::random_state(shape, seed, normalized)));
      } else if (gen_what == "channel") {
        qgamma::save_json(out_path,
                          qgamma::to_json(qgamma::random_channel(in_dim, out_dim, kraus_count, seed)));
      } else {
        std::cerr << "gen expects 'state' or 'channel'\n";
        return kUsage;
      }
      return kOk;
    }

    if (check->parsed()) {
      const std::vector<qgamma::checks::CriterionResult> results =
          qgamma::checks::run_acceptance(seed, suite);
      std::printf("%-26s %-6s %-13s %s\n", "criterion", "status", "worst", "tolerance");
      const qgamma::checks::CriterionResult* first_fail = nullptr;
      for (const auto& r : results) {
        std::printf("%-26s %-6s %-13.3e %.0e\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.worst,
                    r.tolerance);
        if (!r.pass && first_fail == nullptr) first_fail = &r;
      }
      if (first_fail != nullptr) {
        std::cerr << "FAILED: " << first_fail->name << "\n";
        return kFail;
      }
      return kOk;
    }
  } catch (const qgamma::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const qgamma::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

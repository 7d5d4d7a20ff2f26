#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bjorth/bjorth.hpp"

using nlohmann::json;
using namespace bjorth;

namespace {

// One tolerance knob scales the whole certificate chain: the witness band
// gets the flag value, the relative band two decades less, clustering and
// optimization one decade less.
ToleranceConfig tol_from_flag(double t) {
  ToleranceConfig cfg;
  if (t > 0.0) {
    cfg.witnessTol = t;
    cfg.relTol = t / 100.0;
    cfg.clusterTol = t / 10.0;
    cfg.optTol = t / 10.0;
  }
  return cfg;
}

int exit_for(Status s) {
  switch (s) {
    case Status::True: return 0;
    case Status::False: return 1;
    default: return 2;
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  const auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double, std::milli>(dt).count();
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

json vector_json(const Matrix& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.rows(); ++i) out.push_back(complex_json(v(i, 0)));
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

json config_json(const ToleranceConfig& cfg, std::uint64_t seed) {
  return json{{"relTol", cfg.relTol},
              {"clusterTol", cfg.clusterTol},
              {"witnessTol", cfg.witnessTol},
              {"optTol", cfg.optTol},
              {"seed", seed}};
}

std::string vector_human(const Matrix& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.rows(); ++i) {
    if (i) out += ", ";
    out += format_complex(v(i, 0));
  }
  return out + "]";
}

struct WitnessInfo {
  Matrix vec;
  double normAttain = 0.0;
  double orthogonality = 0.0;
};

void print_check_report(const std::string& relation, Status status, double margin,
                        std::optional<double> eps, const std::optional<WitnessInfo>& wit,
                        const std::optional<Matrix>& state, const ToleranceConfig& cfg,
                        std::uint64_t seed, double ms, bool jsonOut) {
  if (jsonOut) {
    json rep{{"relation", relation},
             {"status", to_string(status)},
             {"margin", margin},
             {"config", config_json(cfg, seed)},
             {"timingMs", ms}};
    if (eps) rep["epsilon"] = *eps;
    if (wit) {
      rep["witness"] = json{{"vector", vector_json(wit->vec)},
                            {"residuals", json{{"normAttain", wit->normAttain},
                                               {"orthogonality", wit->orthogonality}}}};
    }
    if (state) rep["state"] = matrix_json(*state);
    std::cout << rep.dump() << "\n";
    return;
  }
  std::cout << "relation: " << relation << "\n";
  std::cout << "status: " << to_string(status) << "\n";
  std::cout << "margin: " << margin << "\n";
  if (eps) std::cout << "epsilon: " << *eps << "\n";
  if (wit) {
    std::cout << "witness vector: " << vector_human(wit->vec) << "\n";
    std::cout << "residuals: normAttain " << wit->normAttain << ", orthogonality "
              << wit->orthogonality << "\n";
  }
  if (state) std::cout << "witness state: " << state->rows() << "x" << state->cols()
                       << " density matrix\n";
  std::cout << "timingMs: " << ms << "\n";
}

int run_check(const std::string& relation, const std::string& xpath, const std::string& ypath,
              std::optional<double> eps, double tolFlag, std::uint64_t seed, bool jsonOut) {
  const bool needsEps = relation == "eps" || relation == "eps-bj" || relation == "eps-strong";
  if (needsEps && !eps) {
    std::cerr << "check: relation '" << relation << "' requires --eps\n";
    return 64;
  }
  const Matrix x = parse_matrix_file(xpath);
  const Matrix y = parse_matrix_file(ypath);
  const ToleranceConfig cfg = tol_from_flag(tolFlag);
  const auto t0 = std::chrono::steady_clock::now();

  Status status = Status::Uncertain;
  double margin = 0.0;
  std::optional<WitnessInfo> wit;
  std::optional<Matrix> state;

  const auto witness_from = [&](const Verdict& v) {
    if (!v.witnessVector) return;
    WitnessInfo w;
    w.vec = *v.witnessVector;
    const double nx = op_norm(x);
    w.normAttain = std::abs(vnorm(x * w.vec) - nx);
    if (relation == "strong") {
      w.orthogonality = vnorm((y.adjoint() * x) * w.vec);
    } else {
      w.orthogonality = std::abs(vdot(w.vec, (y.adjoint() * x) * w.vec));
    }
    wit = w;
    if (v.witnessState) state = v.witnessState->p;
  };

  if (relation == "exact") {
    const Verdict v = exact_ortho(x, y, cfg);
    status = v.status;
    margin = v.margin;
  } else if (relation == "bj") {
    const Verdict v = bj_ortho(x, y, cfg);
    status = v.status;
    margin = v.margin;
    witness_from(v);
  } else if (relation == "strong") {
    const Verdict v = strong_bj_ortho(x, y, cfg);
    status = v.status;
    margin = v.margin;
    witness_from(v);
  } else if (relation == "eps") {
    const EpsVerdict v = eps_ortho(x, y, *eps, cfg);
    status = v.status;
    margin = v.slack;
    if (v.minimizerArg && std::holds_alternative<Matrix>(*v.minimizerArg)) {
      const Matrix& dir = std::get<Matrix>(*v.minimizerArg);
      if (dir.cols() == 1) {
        WitnessInfo w;
        w.vec = dir;
        w.normAttain = std::abs(vnorm(dir) - 1.0);
        w.orthogonality = vnorm((x.adjoint() * y) * dir);
        wit = w;
      }
    }
  } else if (relation == "eps-bj") {
    const EpsVerdict v = eps_bj(x, y, *eps, cfg);
    status = v.status;
    margin = v.slack;
  } else {  // eps-strong, the only remaining relation the option validator admits
    const EpsVerdict v = eps_strong_bj(x, y, *eps, cfg);
    status = v.status;
    margin = v.slack;
    if (status == Status::True) {
      if (auto dm = sufficient_state_check(x, y, *eps, cfg)) state = dm->p;
    }
  }

  print_check_report(relation, status, margin, needsEps ? eps : std::nullopt, wit, state, cfg,
                     seed, elapsed_ms(t0), jsonOut);
  return exit_for(status);
}

int run_gamma(const std::string& xpath, const std::string& ypath, double tolFlag,
              std::uint64_t seed, bool jsonOut) {
  const Matrix t = parse_matrix_file(xpath);
  const Matrix s = parse_matrix_file(ypath);
  const ToleranceConfig cfg = tol_from_flag(tolFlag);
  const auto t0 = std::chrono::steady_clock::now();
  const GammaResult g = gamma_min(t, s, cfg);
  const double ms = elapsed_ms(t0);

  if (jsonOut) {
    const json rep{{"gamma", complex_json(g.gamma)},
                   {"minValue", g.minValue},
                   {"pythagoreanSlack", g.pythagoreanSlack},
                   {"unique", g.unique},
                   {"config", config_json(cfg, seed)},
                   {"timingMs", ms}};
    std::cout << rep.dump() << "\n";
  } else {
    std::cout << "gamma: " << format_complex(g.gamma) << "\n";
    std::cout << "minValue: " << g.minValue << "\n";
    std::cout << "pythagoreanSlack: " << g.pythagoreanSlack << "\n";
    std::cout << "unique: " << (g.unique ? "true" : "false") << "\n";
    std::cout << "timingMs: " << ms << "\n";
  }
  return 0;
}

int run_suite_cmd(std::size_t dim, std::size_t trials, std::uint64_t seed,
                  const std::vector<double>& grid, double tolFlag, bool jsonOut) {
  SuiteConfig sc;
  sc.dim = dim;
  sc.trials = trials;
  sc.seed = seed;
  sc.tol = tol_from_flag(tolFlag);
  if (!grid.empty()) sc.epsGrid = grid;
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteResult r = run_suite(sc);
  const double ms = elapsed_ms(t0);

  if (jsonOut) {
    json parts = json::array();
    for (const SubSuiteResult& p : r.parts) {
      parts.push_back(json{{"name", p.name},
                           {"pass", p.pass},
                           {"fail", p.fail},
                           {"uncertain", p.uncertain},
                           {"vacuous", p.vacuous},
                           {"notes", p.notes}});
    }
    const json rep{{"dim", sc.dim},
                   {"trials", sc.trials},
                   {"seed", sc.seed},
                   {"epsGrid", sc.epsGrid},
                   {"parts", parts},
                   {"totals", json{{"pass", r.pass},
                                   {"fail", r.fail},
                                   {"uncertain", r.uncertain},
                                   {"vacuous", r.vacuous}}},
                   {"config", config_json(sc.tol, seed)},
                   {"timingMs", ms}};
    std::cout << rep.dump() << "\n";
  } else {
    for (const SubSuiteResult& p : r.parts) {
      std::cout << p.name << ": pass " << p.pass << ", fail " << p.fail << ", uncertain "
                << p.uncertain << ", vacuous " << p.vacuous << "\n";
      for (const std::string& note : p.notes) std::cout << "  " << note << "\n";
    }
    std::cout << "totals: pass " << r.pass << ", fail " << r.fail << ", uncertain "
              << r.uncertain << ", vacuous " << r.vacuous << "\n";
    std::cout << "timingMs: " << ms << "\n";
  }
  return r.fail == 0 ? 0 : 1;
}

int run_demo_l2(std::size_t n, double tolFlag, bool jsonOut) {
  const ToleranceConfig cfg = tol_from_flag(tolFlag);
  const auto t0 = std::chrono::steady_clock::now();

  // Truncation of the diagonal shift-weight operator: entries k/(k+1) grow
  // toward 1 but the norm is attained at the last coordinate, so the
  // norm-attaining witness escapes to infinity as the truncation grows.
  Matrix t(n, n), s(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    t(k - 1, k - 1) = cd(static_cast<double>(k) / static_cast<double>(k + 1), 0.0);
  }
  s(0, 0) = cd(1.0, 0.0);

  const double normExpected = static_cast<double>(n) / static_cast<double>(n + 1);
  const double gapExpected =
      normExpected - static_cast<double>(n - 1) / static_cast<double>(n);
  const double norm = op_norm(t);
  const NormAttainSpace nas = norm_attain_space(t, cfg);
  const double gap = nas.opNorm - nas.restrictedNorm;
  const Verdict v = strong_bj_ortho(t, s, cfg);
  double witnessOverlap = 0.0;
  if (v.witnessVector) {
    witnessOverlap = std::abs(vdot(Matrix::basis(n, n - 1), *v.witnessVector));
  }
  const double ms = elapsed_ms(t0);

  if (jsonOut) {
    json rep{{"N", n},
             {"norm", norm},
             {"normExpected", normExpected},
             {"status", to_string(v.status)},
             {"witnessOverlap", witnessOverlap},
             {"gap", gap},
             {"gapExpected", gapExpected},
             {"timingMs", ms}};
    if (v.witnessVector) rep["witness"] = json{{"vector", vector_json(*v.witnessVector)}};
    std::cout << rep.dump() << "\n";
  } else {
    std::cout << "N: " << n << "\n";
    std::cout << "norm: " << norm << " (expected " << normExpected << ")\n";
    std::cout << "strong verdict: " << to_string(v.status) << "\n";
    std::cout << "witness overlap with last basis vector: " << witnessOverlap << "\n";
    std::cout << "spectral gap: " << gap << " (expected " << gapExpected << ")\n";
    std::cout << "timingMs: " << ms << "\n";
  }
  return exit_for(v.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonality deciders for complex matrices over the matrix algebra"};
  app.require_subcommand(1);

  std::string relation, xpath, ypath;
  double epsFlag = -1.0;
  double tolFlag = -1.0;
  std::uint64_t seed = 1;
  bool jsonOut = false;

  CLI::App* check = app.add_subcommand("check", "Decide one orthogonality relation for a pair of matrix files");
  check->add_option("relation", relation, "Relation to decide")
      ->required()
      ->check(CLI::IsMember({"exact", "bj", "strong", "eps", "eps-bj", "eps-strong"}));
  check->add_option("x", xpath, "Left matrix file")->required();
  check->add_option("y", ypath, "Right matrix file")->required();
  check->add_option("--eps", epsFlag, "Relaxation parameter for the eps relations");
  check->add_option("--tol", tolFlag, "Witness tolerance; other bands scale from it");
  check->add_option("--seed", seed, "Seed echoed into the report");
  check->add_flag("--json", jsonOut, "Emit a JSON report");

  std::string gx, gy;
  double gtol = -1.0;
  std::uint64_t gseed = 1;
  bool gjson = false;
  CLI::App* gamma = app.add_subcommand("gamma", "Minimize ||T + z S|| over complex z");
  gamma->add_option("T", gx, "Matrix file for T")->required();
  gamma->add_option("S", gy, "Matrix file for S")->required();
  gamma->add_option("--tol", gtol, "Witness tolerance; other bands scale from it");
  gamma->add_option("--seed", gseed, "Seed echoed into the report");
  gamma->add_flag("--json", gjson, "Emit a JSON report");

  std::size_t dim = 3, trials = 100;
  std::uint64_t sseed = 1;
  std::vector<double> grid;
  double stol = -1.0;
  bool sjson = false;
  CLI::App* suite = app.add_subcommand("suite", "Run the randomized property suite");
  suite->add_option("--dim", dim, "Matrix dimension (1 to 8)");
  suite->add_option("--trials", trials, "Instances per sub-suite");
  suite->add_option("--seed", sseed, "Base seed");
  suite->add_option("--eps-grid", grid, "Comma-separated epsilon grid")->delimiter(',');
  suite->add_option("--tol", stol, "Witness tolerance; other bands scale from it");
  suite->add_flag("--json", sjson, "Emit a JSON report");

  std::size_t demoN = 10;
  double dtol = -1.0;
  bool djson = false;
  CLI::App* demo = app.add_subcommand("demo-l2", "Finite truncations of the diagonal weight operator");
  demo->add_option("--N", demoN, "Truncation size")->check(CLI::Range(2, 500));
  demo->add_option("--tol", dtol, "Witness tolerance; other bands scale from it");
  demo->add_flag("--json", djson, "Emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (check->parsed()) {
      std::optional<double> eps;
      if (check->count("--eps") > 0) eps = epsFlag;
      return run_check(relation, xpath, ypath, eps, tolFlag, seed, jsonOut);
    }
    if (gamma->parsed()) return run_gamma(gx, gy, gtol, gseed, gjson);
    if (suite->parsed()) return run_suite_cmd(dim, trials, sseed, grid, stol, sjson);
    if (demo->parsed()) return run_demo_l2(demoN, dtol, djson);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 64;
  } catch (const EpsilonRangeError& e) {
    std::cerr << e.what() << "\n";
    return 64;
  } catch (const DimensionError& e) {
    std::cerr << e.what() << "\n";
    return 65;
  } catch (const ZeroDirectionError& e) {
    std::cerr << e.what() << "\n";
    return 65;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return 70;
}

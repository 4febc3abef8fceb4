// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ptd/channels.hpp"
#include "ptd/distances.hpp"
#include "ptd/harness.hpp"
#include "ptd/io.hpp"
#include "ptd/linalg.hpp"
#include "ptd/random.hpp"

using namespace ptd;

namespace {

constexpr double kExactTol = 1e-10;   // criteria 1-3, 5, 6
constexpr double kUnitaryTol = 1e-9;  // criteria 4, 7-9, 11

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Largest deviation seen, against a pinned tolerance.
struct Worst {
  double value = 0.0;
  void see(double deviation) { value = std::max(value, deviation); }
  bool within(double tol) const { return value <= tol; }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Singular values by SVD; independent of the library's Jacobi solver.
double svd_distance(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t k) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c) - b(r, c);
  }
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  return 0.5 * s.head(static_cast<Eigen::Index>(k)).sum();
}

struct Shell {
  int exit_code;
  std::string out;
};

Shell shell(const std::string& args) {
  const std::string cmd = std::string(PTD_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

SuiteReport suite(SuiteName name, std::size_t dim, std::size_t trials, std::uint64_t seed,
                  std::size_t povms = 300) {
  SuiteOptions o;
  o.dim = dim;
  o.trials = trials;
  o.seed = seed;
  o.povms_per_pair = povms;
  return run_suite(name, o);
}

// Worst margin of the named assertions across reports, plus the failure total.
Outcome from_suites(const std::vector<SuiteReport>& reports,
                    const std::vector<std::string>& assertions) {
  Outcome out;
  std::size_t failures = 0;
  std::size_t checks = 0;
  for (const auto& r : reports) {
    failures += r.failure_count;
    checks += r.checks;
    for (const auto& a : assertions) {
      const double w = r.worst(a);
      if (std::isnan(w)) {
        out.pass = false;
        out.detail += "missing " + a + "; ";
        continue;
      }
      if (w < -r.tolerances.at(a)) out.pass = false;
    }
  }
  out.pass = out.pass && failures == 0;
  std::string margins;
  for (const auto& a : assertions) {
    double w = INFINITY;
    for (const auto& r : reports) w = std::min(w, r.worst(a));
    margins += a + "=" + num(w) + " ";
  }
  out.detail += std::to_string(checks) + " checks, " + std::to_string(failures) +
                " failures; worst margins " + margins;
  return out;
}

Outcome qubit_closed_form() {
  Rng rng(101);
  Worst worst;
  for (int i = 0; i < 1000; ++i) {
    const auto rho = random_density_matrix(2, rng.uniform_index(1, 2), rng);
    const auto sigma = random_density_matrix(2, rng.uniform_index(1, 2), rng);
    const double gap = distance(bloch_from_qubit(rho), bloch_from_qubit(sigma));
    const auto profile = distance_profile(rho, sigma);
    worst.see(std::abs(profile.at(1) - 0.25 * gap));
    worst.see(std::abs(profile.at(2) - 0.5 * gap));
  }
  return {worst.within(kExactTol), "1000 pairs, max deviation " + num(worst.value)};
}

Outcome metric_axioms() {
  std::vector<SuiteReport> reports;
  for (std::size_t d : {2, 3, 4, 6}) reports.push_back(suite(SuiteName::Metric, d, 500, 200 + d));
  return from_suites(reports, {"symmetry", "non_negative", "identity", "distinct_positive", "triangle",
                               "upper_bound"});
}

Outcome pure_collapse() {
  Worst worst;
  for (std::size_t d : {2, 3, 4}) {
    Rng rng(300 + d);
    for (int i = 0; i < 500; ++i) {
      const auto rho = random_pure_state(d, rng);
      const auto sigma = random_pure_state(d, rng);
      const auto profile = distance_profile(rho, sigma);
      const double full = profile.trace_distance();
      worst.see(std::abs(profile.at(1) - 0.5 * full));
      for (std::size_t k = 2; k <= d; ++k) worst.see(std::abs(profile.at(k) - full));
      // Cross-check the whole distance by SVD.
      worst.see(std::abs(full - svd_distance(rho.matrix(), sigma.matrix(), d)));
    }
  }
  return {worst.within(kExactTol), "1500 pure pairs, max deviation " + num(worst.value)};
}

Outcome unitary_invariance() {
  Rng rng(401);
  Worst worst;
  for (int i = 0; i < 500; ++i) {
    const std::size_t d = rng.uniform_index(2, 6);
    const auto rho = random_density_matrix(d, rng.uniform_index(1, d), rng);
    const auto sigma = random_density_matrix(d, rng.uniform_index(1, d), rng);
    const auto u = random_unitary(d, rng);
    const auto before = distance_profile(rho, sigma);
    const auto after = distance_profile(unitary_conjugate(u, rho), unitary_conjugate(u, sigma));
    for (std::size_t k = 1; k <= d; ++k) worst.see(std::abs(before.at(k) - after.at(k)));
  }
  return {worst.within(kUnitaryTol), "500 instances, max deviation " + num(worst.value)};
}

Outcome commuting_states() {
  Rng rng(501);
  Worst worst;
  for (int i = 0; i < 500; ++i) {
    const std::size_t d = rng.uniform_index(2, 6);
    const auto basis = random_unitary(d, rng);
    const auto p = random_probability_vector(d, rng);
    const auto q = random_probability_vector(d, rng);
    const auto rho = DensityMatrix::validate(conjugate_by(basis, ComplexMatrix::diagonal(p)));
    const auto sigma = DensityMatrix::validate(conjugate_by(basis, ComplexMatrix::diagonal(q)));
    const auto profile = distance_profile(rho, sigma);
    for (std::size_t k = 1; k <= d; ++k) {
      worst.see(std::abs(profile.at(k) - classical_partitioned_distance(p, q, k)));
    }
  }
  return {worst.within(kExactTol), "500 pairs, max deviation " + num(worst.value)};
}

Outcome strong_convexity() {
  std::vector<SuiteReport> reports;
  for (std::size_t d : {2, 3, 4}) reports.push_back(suite(SuiteName::Convexity, d, 167, 600 + d));
  return from_suites(reports, {"strong_convexity", "joint_convexity", "first_input_convexity"});
}

Outcome measurement_bound() {
  std::vector<SuiteReport> reports;
  const std::size_t pairs[] = {17, 17, 16};
  for (std::size_t d : {2, 3, 4}) {
    reports.push_back(suite(SuiteName::PovmBound, d, pairs[d - 2], 700 + d, 300));
  }
  return from_suites(reports, {"measurement_bound", "optimal_saturation",
                               "optimal_gaps_equal_singular_values"});
}

Outcome gap_submajorization() {
  std::vector<SuiteReport> reports;
  const std::size_t trials[] = {334, 333, 333};
  for (std::size_t d : {2, 3, 4}) {
    reports.push_back(suite(SuiteName::Majorization, d, trials[d - 2], 800 + d));
  }
  return from_suites(reports, {"gap_submajorization"});
}

Outcome channel_contractivity() {
  std::vector<SuiteReport> reports;
  const std::size_t trials[] = {167, 167, 166};
  for (std::size_t d : {2, 3, 4}) {
    reports.push_back(suite(SuiteName::Contractivity, d, trials[d - 2], 900 + d));
  }
  return from_suites(reports, {"bistochastic_contraction", "bistochastic_submajorization",
                               "subunital_contraction", "subunital_submajorization",
                               "measurement_bistochastic", "measurement_contraction",
                               "trace_distance_nonincrease"});
}

Outcome coarse_graining_witness() {
  Outcome out;
  const std::vector<std::size_t> f{0, 0, 0, 1, 1};
  const auto channel = coarse_graining(f, 2);
  const auto rho = maximally_mixed(5);
  const auto sigma = DensityMatrix::validate(ComplexMatrix::diagonal({0, 0, 0, 0.5, 0.5}));
  const auto report = contractivity_report(channel, rho, sigma);
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  const auto& r = report.rows;
  const bool values = near(r[0].d_in, 0.15) && near(r[0].d_out, 0.3) && near(r[1].d_in, 0.3) &&
                      near(r[1].d_out, 0.6) && near(r[4].d_in, 0.6) && near(r[4].d_out, 0.6);
  out.detail = "D_1 " + num(r[0].d_in) + "->" + num(r[0].d_out) + ", D_2 " + num(r[1].d_in) + "->" +
               num(r[1].d_out) + ", D_5 " + num(r[4].d_in) + "->" + num(r[4].d_out);

  const auto dir = std::filesystem::temp_directory_path() / "ptd-acceptance";
  std::filesystem::create_directories(dir);
  const auto kraus_path = (dir / "coarse.json").string();
  std::ofstream(kraus_path) << io::emit_kraus(channel);

  const auto probe = shell("probe " + kraus_path + " --dim 5 --pairs 1000 --seed 0");
  const auto verdict = io::parse_json(probe.out);
  bool witness = probe.exit_code == 3 && verdict["verdict"] == "violates_teor0" &&
                 verdict["witness"]["k"] == 1 &&
                 near(verdict["witness"]["d_in"].get<double>(), 0.15) &&
                 near(verdict["witness"]["d_out"].get<double>(), 0.3);
  if (witness) {
    const auto w_sigma = io::parse_state(io::emit_json(verdict["witness"]["sigma"]));
    witness = max_abs_diff(w_sigma.matrix(), sigma.matrix()) == 0.0;
  }
  const auto check = shell("channel check " + kraus_path);
  const bool flag = check.exit_code == 0 && io::parse_json(check.out)["teor0"] == false;
  std::filesystem::remove_all(dir);

  out.pass = values && witness && flag;
  out.detail += witness ? "; probe: violates_teor0 with the diagonal witness" : "; probe: no matching witness";
  out.detail += flag ? "; channel check: teor0 = false" : "; channel check: unexpected";
  return out;
}

Outcome ky_fan_principle() {
  Rng rng(1101);
  Worst excess;
  Worst gap;
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = rng.uniform_index(1, 6);
    const auto h = random_hermitian(d, rng);
    for (std::size_t k = 1; k <= d; ++k) {
      const auto check = max_over_constrained_operators(h, k, 200, rng);
      excess.see(check.max_observed - check.top_sum);
      gap.see(std::abs(check.eigenprojector_value - check.top_sum));
    }
  }
  return {excess.within(kUnitaryTol) && gap.within(kUnitaryTol),
          "200 matrices, max excess " + num(excess.value) + ", eigenprojector gap " + num(gap.value)};
}

Outcome cli_round_trip() {
  Rng rng(1201);
  bool exact = true;
  std::size_t files = 0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = rng.uniform_index(1, 5);
    const std::vector<std::string> canonical{
        io::emit_state(random_density_matrix(d, rng.uniform_index(1, d), rng)),
        io::emit_operator(random_ginibre(d, d + 1, rng)),
        io::emit_kraus(random_trace_preserving_channel(d, 2, 3, rng)),
        io::emit_povm(random_rank_one_povm(d, d + 2, rng)),
        io::emit_vector(random_probability_vector(d + 1, rng))};
    for (const auto& text : canonical) {
      exact = exact && io::canonicalize(text) == text;
      ++files;
    }
  }
  const auto first = shell("suite metric --dim 3 --trials 500 --seed 7");
  const auto second = shell("suite metric --dim 3 --trials 500 --seed 7");
  const bool same = first.exit_code == 0 && !first.out.empty() && first.out == second.out;
  return {exact && same, std::to_string(files) + " canonical files " +
                             (exact ? "byte-identical" : "differ") + "; suite report " +
                             (same ? "identical across runs" : "differs")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"qubit closed form", qubit_closed_form},
      {"metric axioms", metric_axioms},
      {"pure-state collapse", pure_collapse},
      {"unitary invariance", unitary_invariance},
      {"commuting states", commuting_states},
      {"strong convexity", strong_convexity},
      {"measurement bound", measurement_bound},
      {"gap submajorization", gap_submajorization},
      {"channel contractivity", channel_contractivity},
      {"coarse-graining witness", coarse_graining_witness},
      {"Ky Fan maximum principle", ky_fan_principle},
      {"CLI round trip", cli_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Every criterion has a two-minute budget.
    if (seconds > 120.0) outcome.pass = false;
    failed += !outcome.pass;
    std::printf("%s %2zu %s: %s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

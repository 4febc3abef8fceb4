#include "ptd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "ptd/channels.hpp"
#include "ptd/distances.hpp"
#include "ptd/error.hpp"
#include "ptd/majorization.hpp"
#include "ptd/measurements.hpp"
#include "ptd/random.hpp"

namespace ptd {
namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Assertion results and observations from one trial, merged in trial order.
class TrialLog {
 public:
  struct Check {
    std::string assertion;
    double margin;
    double tol;
    std::string summary;
  };

  template <class Summary>
  void check(const std::string& assertion, double margin, double tol, Summary&& summary) {
    Check c{assertion, margin, tol, {}};
    if (!(margin >= -tol)) c.summary = summary();
    checks_.push_back(std::move(c));
  }
  void check(const std::string& assertion, double margin, double tol) {
    check(assertion, margin, tol, [] { return std::string(); });
  }

  void observe_max(const std::string& name, double value) {
    auto [it, inserted] = maxima_.emplace(name, value);
    if (!inserted) it->second = std::max(it->second, value);
  }
  void observe_count(const std::string& name, double increment) { counts_[name] += increment; }

  const std::vector<Check>& checks() const { return checks_; }
  const std::map<std::string, double>& maxima() const { return maxima_; }
  const std::map<std::string, double>& counts() const { return counts_; }

 private:
  std::vector<Check> checks_;
  std::map<std::string, double> maxima_;
  std::map<std::string, double> counts_;
};

DensityMatrix random_state_any_rank(std::size_t d, Rng& rng) {
  return random_density_matrix(d, rng.uniform_index(1, d), rng);
}

// ---------------------------------------------------------------------------
// metric: bounds, symmetry, identity, triangle, k-monotonicity, unitary
// invariance, commuting states, pure-state collapse.

void metric_trial(std::size_t d, Rng& rng, TrialLog& log) {
  const auto rho = random_state_any_rank(d, rng);
  const auto sigma = random_state_any_rank(d, rng);
  const auto omega = random_state_any_rank(d, rng);

  const auto rs = distance_profile(rho, sigma);
  const auto sr = distance_profile(sigma, rho);
  const auto rw = distance_profile(rho, omega);
  const auto ws = distance_profile(omega, sigma);
  const auto rr = distance_profile(rho, rho);

  const auto u = random_unitary(d, rng);
  const auto rotated = distance_profile(unitary_conjugate(u, rho), unitary_conjugate(u, sigma));

  const auto basis = random_unitary(d, rng);
  const auto mu = random_probability_vector(d, rng);
  const auto nu = random_probability_vector(d, rng);
  const auto commuting = distance_profile(
      DensityMatrix::validate(conjugate_by(basis, ComplexMatrix::diagonal(mu))),
      DensityMatrix::validate(conjugate_by(basis, ComplexMatrix::diagonal(nu))));

  const auto pure = distance_profile(random_pure_state(d, rng), random_pure_state(d, rng));
  const double s1 = jordan_decomposition(rho, sigma).singular.front();

  for (std::size_t k = 1; k <= d; ++k) {
    const double dk = rs.at(k);
    const std::string at = "k=" + std::to_string(k) + " ";
    log.check("non_negative", dk, 1e-10, [&] { return at + "D=" + num(dk); });
    log.check("upper_bound", 1.0 - dk, 1e-10, [&] { return at + "D=" + num(dk); });
    log.check("symmetry", -std::abs(dk - sr.at(k)), 0.0,
              [&] { return at + num(dk) + " vs " + num(sr.at(k)); });
    log.check("identity", -rr.at(k), 1e-10, [&] { return at + "D(rho,rho)=" + num(rr.at(k)); });
    log.check("distinct_positive", dk - 1e-10, 0.0, [&] { return at + "D=" + num(dk); });
    log.check("triangle", rw.at(k) + ws.at(k) - dk, 1e-10, [&] {
      return at + num(dk) + " > " + num(rw.at(k)) + " + " + num(ws.at(k));
    });
    if (k < d) {
      log.check("monotone_in_k", rs.at(k + 1) - dk, 0.0);
      log.check("bounded_step", dk + 0.5 * s1 - rs.at(k + 1), 1e-12);
    }
    log.check("unitary_invariance", -std::abs(rotated.at(k) - dk), 1e-9,
              [&] { return at + num(rotated.at(k)) + " vs " + num(dk); });
    const double classical = classical_partitioned_distance(mu, nu, k);
    log.check("commuting_classical", -std::abs(commuting.at(k) - classical), 1e-10,
              [&] { return at + num(commuting.at(k)) + " vs " + num(classical); });
    const double expected = k == 1 ? 0.5 * pure.trace_distance() : pure.trace_distance();
    log.check("pure_collapse", -std::abs(pure.at(k) - expected), 1e-10,
              [&] { return at + num(pure.at(k)) + " vs " + num(expected); });
  }
}

// ---------------------------------------------------------------------------
// convexity: strong convexity with the classical L1 term, joint convexity,
// convexity in either input.

void convexity_trial(std::size_t d, Rng& rng, TrialLog& log) {
  const std::size_t m = rng.uniform_index(1, 5);
  const auto p = random_probability_vector(m, rng);
  const auto q = random_probability_vector(m, rng);
  std::vector<DensityMatrix> rhos;
  std::vector<DensityMatrix> sigmas;
  for (std::size_t i = 0; i < m; ++i) {
    rhos.push_back(random_state_any_rank(d, rng));
    sigmas.push_back(random_state_any_rank(d, rng));
  }
  const auto fixed = random_state_any_rank(d, rng);
  const double l1 = classical_partitioned_distance(p, q, m);

  const auto strong = distance_profile(mixture(p, rhos), mixture(q, sigmas));
  const auto joint = distance_profile(mixture(p, rhos), mixture(p, sigmas));
  const auto first = distance_profile(mixture(p, rhos), fixed);
  const auto second = distance_profile(fixed, mixture(p, sigmas));
  std::vector<DistanceProfile> pairwise;
  std::vector<DistanceProfile> to_fixed;
  std::vector<DistanceProfile> from_fixed;
  for (std::size_t i = 0; i < m; ++i) {
    pairwise.push_back(distance_profile(rhos[i], sigmas[i]));
    to_fixed.push_back(distance_profile(rhos[i], fixed));
    from_fixed.push_back(distance_profile(fixed, sigmas[i]));
  }

  for (std::size_t k = 1; k <= d; ++k) {
    double avg_pair = 0.0;
    double avg_to = 0.0;
    double avg_from = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      avg_pair += p[i] * pairwise[i].at(k);
      avg_to += p[i] * to_fixed[i].at(k);
      avg_from += p[i] * from_fixed[i].at(k);
    }
    const std::string at = "k=" + std::to_string(k) + " m=" + std::to_string(m) + " ";
    log.check("strong_convexity", avg_pair + l1 - strong.at(k), 1e-10, [&] {
      return at + num(strong.at(k)) + " > " + num(avg_pair) + " + " + num(l1);
    });
    log.check("joint_convexity", avg_pair - joint.at(k), 1e-10,
              [&] { return at + num(joint.at(k)) + " > " + num(avg_pair); });
    log.check("first_input_convexity", avg_to - first.at(k), 1e-10,
              [&] { return at + num(first.at(k)) + " > " + num(avg_to); });
    log.check("second_input_convexity", avg_from - second.at(k), 1e-10,
              [&] { return at + num(second.at(k)) + " > " + num(avg_from); });
  }
}

// ---------------------------------------------------------------------------
// povm_bound: trace-bounded POVMs never beat D_k; the eigenbasis PVM attains
// every D_k and its sorted gaps are the singular values. Excesses of general
// POVMs (elements of trace > 1) are recorded only.

double top_half_sum(const std::vector<double>& sorted, std::size_t k) {
  double s = 0.0;
  for (std::size_t j = 0; j < std::min(k, sorted.size()); ++j) s += sorted[j];
  return 0.5 * s;
}

void povm_bound_trial(std::size_t d, std::size_t povms, Rng& rng, TrialLog& log) {
  const auto rho = random_state_any_rank(d, rng);
  const auto sigma = random_state_any_rank(d, rng);
  const auto jordan = jordan_decomposition(rho, sigma);
  const auto profile = distance_profile(jordan);

  const auto best = measure_pair(optimal_pvm(rho, sigma), rho, sigma);
  double entrywise = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    entrywise = std::max(entrywise, std::abs(best.gaps_sorted[j] - jordan.singular[j]));
  }
  log.check("optimal_gaps_equal_singular_values", -entrywise, 1e-9,
            [&] { return "max |gap_j - s_j| = " + num(entrywise); });

  std::vector<double> best_random(d, 0.0);
  for (std::size_t t = 0; t < povms; ++t) {
    const std::size_t n = rng.uniform_index(d, 2 * d + 2);
    const auto stats = measure_pair(random_rank_one_povm(d, n, rng), rho, sigma);
    for (std::size_t k = 1; k <= d; ++k) {
      best_random[k - 1] = std::max(best_random[k - 1], top_half_sum(stats.gaps_sorted, k));
    }
  }

  // General POVMs: pair up rank-one elements, so traces may exceed one.
  const std::size_t general = std::max<std::size_t>(1, povms / 10);
  for (std::size_t t = 0; t < general; ++t) {
    const auto fine = random_rank_one_povm(d, 2 * d, rng);
    std::vector<ComplexMatrix> merged;
    for (std::size_t m = 0; m + 1 < fine.outcomes(); m += 2) {
      merged.push_back(fine.elements()[m] + fine.elements()[m + 1]);
    }
    const auto stats = measure_pair(Povm::validate(std::move(merged)), rho, sigma);
    for (std::size_t k = 1; k < d; ++k) {
      const double excess = top_half_sum(stats.gaps_sorted, k) - profile.at(k);
      log.observe_max("general_povm_max_excess", excess);
      if (excess > 1e-9) log.observe_count("general_povm_excess_count", 1.0);
    }
  }

  for (std::size_t k = 1; k <= d; ++k) {
    const std::string at = "k=" + std::to_string(k) + " ";
    const double bound = profile.at(k);
    log.check("measurement_bound", bound - best_random[k - 1], 1e-9,
              [&] { return at + num(best_random[k - 1]) + " > D_k=" + num(bound); });
    const double attained = top_half_sum(best.gaps_sorted, k);
    log.check("optimal_saturation", -std::abs(attained - bound), 1e-9,
              [&] { return at + num(attained) + " vs D_k=" + num(bound); });
  }
}

// ---------------------------------------------------------------------------
// majorization: measured gaps are weakly submajorized by s(rho - sigma), and
// fully majorized for the eigenbasis PVM.

void majorization_trial(std::size_t d, Rng& rng, TrialLog& log) {
  const auto rho = random_state_any_rank(d, rng);
  const auto sigma = random_state_any_rank(d, rng);
  const std::size_t n = rng.uniform_index(d, 2 * d + 2);
  const auto povm = random_rank_one_povm(d, n, rng);

  const auto check = check_gap_majorization(povm, rho, sigma);
  log.check("gap_submajorization", check.report.worst_margin(), kMajorizationTolerance,
            [&] { return "n=" + std::to_string(n) + " worst=" + num(check.report.worst_margin()); });
  if (check.full) log.observe_count("random_povm_full_majorization_count", 1.0);

  const auto optimal = check_gap_majorization(optimal_pvm(rho, sigma), rho, sigma);
  const double optimal_margin = std::min(optimal.report.worst_margin(),
                                         -std::abs(optimal.classical_l1 - optimal.trace_distance));
  log.check("optimal_pvm_majorization", optimal_margin, kMajorizationTolerance,
            [&] { return "margin=" + num(optimal_margin); });

  const OrderedVector gaps(measure_pair(povm, rho, sigma).gaps_sorted);
  log.check("reflexive", weakly_submajorized(gaps, gaps).worst_margin(), 0.0);

  const OrderedVector singular(jordan_decomposition(rho, sigma).singular);
  const bool plain = weakly_submajorized(gaps, singular).holds;
  const bool padded = weakly_submajorized(gaps.padded(gaps.size() + 3), singular).holds;
  log.check("padding_invariance", plain == padded ? 0.0 : -1.0, 0.0);
}

// ---------------------------------------------------------------------------
// contractivity: bistochastic, trace-nonincreasing subunital (unnormalized),
// measurement and isometric channels contract every D_k; arbitrary
// trace-preserving channels only the trace distance.

void contraction_checks(const std::string& prefix, const ContractivityReport& report,
                        TrialLog& log) {
  log.check(prefix + "_contraction", -report.max_increase(), kChannelTolerance,
            [&] { return "max increase " + num(report.max_increase()); });
  log.check(prefix + "_submajorization", report.submajorization.worst_margin(),
            kChannelTolerance,
            [&] { return "worst margin " + num(report.submajorization.worst_margin()); });
}

void contractivity_trial(std::size_t d, Rng& rng, TrialLog& log) {
  const auto rho = random_state_any_rank(d, rng);
  const auto sigma = random_state_any_rank(d, rng);

  const auto bistochastic = random_bistochastic_channel(d, rng);
  log.check("bistochastic_flags",
            bistochastic.flags().bistochastic && bistochastic.flags().subunital ? 0.0 : -1.0, 0.0);
  contraction_checks("bistochastic", contractivity_report(bistochastic, rho, sigma), log);

  const auto lossy = random_subunital_contraction(d, rng);
  log.check("subunital_flags", lossy.flags().subunital ? 0.0 : -1.0, 0.0);
  contraction_checks("subunital",
                     contractivity_report(lossy, rho, sigma, ContractivityMode::Unnormalized), log);

  const auto povm = random_rank_one_povm(d, rng.uniform_index(d, 2 * d + 2), rng);
  const auto measurement = measurement_channel(povm);
  const double residual = std::max(measurement.flags().trace_preserving_residual,
                                   measurement.flags().unital_residual);
  log.check("measurement_bistochastic", -residual, 1e-9,
            [&] { return "Gram residual " + num(residual); });
  contraction_checks("measurement", contractivity_report(measurement, rho, sigma), log);

  const auto isometry = random_trace_preserving_channel(d, rng.uniform_index(d, d + 2), 1, rng);
  contraction_checks("isometry", contractivity_report(isometry, rho, sigma), log);

  const std::size_t dim_out = rng.uniform_index(d > 1 ? d - 1 : 1, d + 1);
  const std::size_t n_kraus = std::max<std::size_t>(rng.uniform_index(2, 3), (d + dim_out - 1) / dim_out);
  const auto generic = random_trace_preserving_channel(d, dim_out, n_kraus, rng);
  const auto report = contractivity_report(generic, rho, sigma);
  const auto& last = report.rows.back();
  log.check("trace_distance_nonincrease", last.d_in - last.d_out, kChannelTolerance,
            [&] { return num(last.d_out) + " > " + num(last.d_in); });
  log.observe_max("generic_tp_max_partitioned_increase", report.max_increase());
  if (!generic.flags().subunital && report.any_violation) {
    log.observe_count("generic_tp_violation_count", 1.0);
  }
}

}  // namespace

SuiteName parse_suite_name(std::string_view name) {
  if (name == "metric") return SuiteName::Metric;
  if (name == "convexity") return SuiteName::Convexity;
  if (name == "povm_bound") return SuiteName::PovmBound;
  if (name == "majorization") return SuiteName::Majorization;
  if (name == "contractivity") return SuiteName::Contractivity;
  throw Error(ErrorCode::UnknownSuite, "unknown suite '" + std::string(name) + "'");
}

std::string_view to_string(SuiteName name) {
  switch (name) {
    case SuiteName::Metric: return "metric";
    case SuiteName::Convexity: return "convexity";
    case SuiteName::PovmBound: return "povm_bound";
    case SuiteName::Majorization: return "majorization";
    case SuiteName::Contractivity: return "contractivity";
  }
  return "unknown";
}

double SuiteReport::worst(const std::string& assertion) const {
  const auto it = worst_margins.find(assertion);
  return it == worst_margins.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
}

SuiteReport run_suite(SuiteName name, const SuiteOptions& options) {
  if (options.dim < 2 || options.trials < 1) {
    throw Error(ErrorCode::ParameterOutOfRange, "suites need dim >= 2 and trials >= 1");
  }
  const auto start = std::chrono::steady_clock::now();
  const std::size_t d = options.dim;

  std::vector<TrialLog> logs(options.trials);
  detail::parallel_for(options.trials, options.jobs, [&](std::size_t t) {
    Rng rng = Rng::stream(options.seed, t);
    switch (name) {
      case SuiteName::Metric: metric_trial(d, rng, logs[t]); break;
      case SuiteName::Convexity: convexity_trial(d, rng, logs[t]); break;
      case SuiteName::PovmBound: povm_bound_trial(d, options.povms_per_pair, rng, logs[t]); break;
      case SuiteName::Majorization: majorization_trial(d, rng, logs[t]); break;
      case SuiteName::Contractivity: contractivity_trial(d, rng, logs[t]); break;
    }
  });

  SuiteReport report;
  report.name = std::string(to_string(name));
  report.dim = d;
  report.trials = options.trials;
  report.seed = options.seed;
  for (std::size_t t = 0; t < logs.size(); ++t) {
    for (const auto& c : logs[t].checks()) {
      ++report.checks;
      auto [it, inserted] = report.worst_margins.emplace(c.assertion, c.margin);
      if (!inserted) it->second = std::min(it->second, c.margin);
      report.tolerances[c.assertion] = c.tol;
      if (!(c.margin >= -c.tol)) {
        ++report.failure_count;
        if (report.failures.size() < SuiteReport::kMaxStoredFailures) {
          report.failures.push_back(
              {t, Rng::derive_seed(options.seed, t), c.assertion, c.summary, c.margin});
        }
      }
    }
    for (const auto& [key, value] : logs[t].maxima()) {
      auto [it, inserted] = report.observations.emplace(key, value);
      if (!inserted) it->second = std::max(it->second, value);
    }
    for (const auto& [key, value] : logs[t].counts()) report.observations[key] += value;
  }
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Black-box probing.

std::vector<std::pair<DensityMatrix, DensityMatrix>> probe_pairs(std::size_t dim_in,
                                                                 std::size_t n_pairs,
                                                                 std::uint64_t seed) {
  if (dim_in < 1) throw Error(ErrorCode::InvalidDimension, "probe dimension must be positive");
  const std::size_t d = dim_in;
  const std::size_t n_diag = n_pairs * 2 / 10;
  const std::size_t n_full = n_pairs * 4 / 10;
  const std::size_t n_pure = n_pairs * 3 / 10;
  const std::size_t structured = std::min(n_diag, d - 1);

  auto sparse_distribution = [&](Rng& rng) {
    std::vector<double> v = random_probability_vector(d, rng);
    for (auto& x : v) {
      if (rng.uniform() < 0.3) x = 0.0;
    }
    double total = 0.0;
    for (double x : v) total += x;
    if (total == 0.0) {
      v.assign(d, 0.0);
      v[rng.uniform_index(0, d - 1)] = 1.0;
      total = 1.0;
    }
    for (auto& x : v) x /= total;
    return v;
  };

  std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs;
  pairs.reserve(n_pairs);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    Rng rng = Rng::stream(seed, i);
    if (i < structured) {
      // 1/d against the uniform mixture of basis states tail..d-1, with
      // tail = d-2, d-3, ..., 1 and finally d-1.
      const std::size_t tail = i + 1 < structured ? d - 2 - i : d - 1;
      std::vector<double> block(d, 0.0);
      for (std::size_t j = tail; j < d; ++j) block[j] = 1.0 / static_cast<double>(d - tail);
      pairs.emplace_back(maximally_mixed(d),
                         DensityMatrix::validate(ComplexMatrix::diagonal(block)));
    } else if (i < n_diag) {
      const bool computational = (i - structured) % 2 == 0;
      const auto basis = computational ? ComplexMatrix::identity(d) : random_unitary(d, rng);
      const auto mu = sparse_distribution(rng);
      const auto nu = sparse_distribution(rng);
      pairs.emplace_back(DensityMatrix::validate(conjugate_by(basis, ComplexMatrix::diagonal(mu))),
                         DensityMatrix::validate(conjugate_by(basis, ComplexMatrix::diagonal(nu))));
    } else if (i < n_diag + n_full) {
      auto rho = random_density_matrix(d, d, rng);
      auto sigma = random_density_matrix(d, d, rng);
      pairs.emplace_back(std::move(rho), std::move(sigma));
    } else if (i < n_diag + n_full + n_pure) {
      auto rho = random_pure_state(d, rng);
      auto sigma = random_pure_state(d, rng);
      pairs.emplace_back(std::move(rho), std::move(sigma));
    } else {
      const auto rho = random_density_matrix(d, d, rng);
      const auto other = random_density_matrix(d, rng.uniform_index(1, d), rng);
      const double eps = std::pow(10.0, rng.uniform(-3.0, -1.0));
      const std::vector<double> w{1.0 - eps, eps};
      const std::vector<DensityMatrix> parts{rho, other};
      pairs.emplace_back(rho, mixture(w, parts));
    }
  }
  return pairs;
}

std::string ProbeVerdict::message() const {
  if (outcome == ProbeOutcome::ViolatesSubunital && witness) {
    return "D_" + std::to_string(witness->k) + " increased from " + num(witness->d_in) + " to " +
           num(witness->d_out) + " on probe pair " + std::to_string(witness->pair_index) +
           "; the channel cannot satisfy sum_m E_m E_m^dagger <= 1";
  }
  return "no partitioned-distance increase above " + num(tolerance) + " across " +
         std::to_string(pairs_probed) +
         " probe pairs; this is evidence for, not a proof of, sum_m E_m E_m^dagger <= 1";
}

ProbeVerdict blackbox_probe(const StateOracle& oracle, std::size_t dim_in, std::size_t n_pairs,
                            std::uint64_t seed, const ProbeOptions& options) {
  const auto pairs = probe_pairs(dim_in, n_pairs, seed);

  struct PairResult {
    std::vector<double> singular_in;
    std::vector<double> singular_out;
    std::size_t dim_out = 0;
  };
  auto run_oracle = [&](const DensityMatrix& state, std::size_t index) {
    try {
      return DensityMatrix::validate(oracle(state), 1e-9);
    } catch (const Error& e) {
      throw Error(ErrorCode::OracleReturnedInvalidState,
                  "probe pair " + std::to_string(index) + ": " + e.what(), e.magnitude(), index);
    }
  };

  std::vector<PairResult> results(pairs.size());
  detail::parallel_for(pairs.size(), options.jobs, [&](std::size_t i) {
    const auto out_rho = run_oracle(pairs[i].first, i);
    const auto out_sigma = run_oracle(pairs[i].second, i);
    if (out_rho.dim() != out_sigma.dim()) {
      throw Error(ErrorCode::OracleReturnedInvalidState,
                  "probe pair " + std::to_string(i) + ": output dimensions differ", std::nullopt,
                  i);
    }
    results[i].dim_out = out_rho.dim();
    results[i].singular_in = jordan_decomposition(pairs[i].first, pairs[i].second).singular;
    results[i].singular_out = jordan_decomposition(out_rho, out_sigma).singular;
  });

  ProbeVerdict verdict;
  verdict.pairs_probed = pairs.size();
  verdict.dim_in = dim_in;
  verdict.tolerance = options.tolerance;
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto& r = results[i];
    if (verdict.dim_out == 0) verdict.dim_out = r.dim_out;
    if (r.dim_out != verdict.dim_out) {
      throw Error(ErrorCode::OracleReturnedInvalidState,
                  "probe pair " + std::to_string(i) + ": output dimension changed", std::nullopt,
                  i);
    }
    const std::size_t padded = std::max(dim_in, r.dim_out);
    r.singular_in.resize(padded, 0.0);
    r.singular_out.resize(padded, 0.0);
    const auto in = profile_from_singular_values(r.singular_in);
    const auto out = profile_from_singular_values(r.singular_out);
    if (verdict.max_increase.empty()) {
      verdict.max_increase.assign(padded, -std::numeric_limits<double>::infinity());
    }
    std::size_t worst_k = 0;
    for (std::size_t k = 1; k <= padded; ++k) {
      const double increase = out.at(k) - in.at(k);
      verdict.max_increase[k - 1] = std::max(verdict.max_increase[k - 1], increase);
      if (worst_k == 0 && increase > options.tolerance) worst_k = k;
    }
    if (!verdict.witness && worst_k != 0) {
      verdict.witness =
          ProbeWitness{pairs[i].first, pairs[i].second, i, worst_k, in.at(worst_k), out.at(worst_k)};
      verdict.outcome = ProbeOutcome::ViolatesSubunital;
    }
  }
  return verdict;
}

}  // namespace ptd

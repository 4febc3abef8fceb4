#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptd/matrix.hpp"
#include "ptd/states.hpp"

namespace ptd {

enum class SuiteName { Metric, Convexity, PovmBound, Majorization, Contractivity };

// "metric", "convexity", "povm_bound", "majorization", "contractivity";
// anything else throws UnknownSuite.
SuiteName parse_suite_name(std::string_view name);
std::string_view to_string(SuiteName name);

struct SuiteOptions {
  std::size_t dim = 3;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  // Random POVMs per state pair in the povm_bound suite.
  std::size_t povms_per_pair = 300;
};

struct SuiteFailure {
  std::size_t trial = 0;
  std::uint64_t seed = 0;  // Rng::stream seed that replays the trial
  std::string assertion;
  std::string summary;
  double margin = 0.0;
};

// Every assertion is phrased as a margin that must stay >= -tolerance.
// worst_margins holds the minimum seen per assertion; observations hold
// quantities that are recorded but never asserted.
struct SuiteReport {
  std::string name;
  std::size_t dim = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t checks = 0;
  std::size_t failure_count = 0;
  std::vector<SuiteFailure> failures;  // first kMaxStoredFailures only
  std::map<std::string, double> worst_margins;
  std::map<std::string, double> tolerances;
  std::map<std::string, double> observations;
  double wall_time_seconds = 0.0;

  static constexpr std::size_t kMaxStoredFailures = 50;

  bool passed() const noexcept { return failure_count == 0; }
  double worst(const std::string& assertion) const;
};

// Trial t draws everything from Rng::stream(seed, t); reports are identical
// for identical (name, options) apart from wall_time_seconds, whatever jobs is.
SuiteReport run_suite(SuiteName name, const SuiteOptions& options);

// Black-box channel audit. The oracle maps a dim_in state to an output
// state; it is called from several threads when jobs > 1.
using StateOracle = std::function<ComplexMatrix(const DensityMatrix&)>;

struct ProbeOptions {
  double tolerance = 1e-7;
  std::size_t jobs = 1;
};

struct ProbeWitness {
  DensityMatrix rho;
  DensityMatrix sigma;
  std::size_t pair_index = 0;
  std::size_t k = 0;  // smallest k whose increase exceeds the tolerance
  double d_in = 0.0;
  double d_out = 0.0;
};

enum class ProbeOutcome { ConsistentWithSubunital, ViolatesSubunital };

struct ProbeVerdict {
  std::size_t pairs_probed = 0;
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  double tolerance = 0.0;
  std::vector<double> max_increase;  // per k, over all pairs; padded to max(dim_in, dim_out)
  std::optional<ProbeWitness> witness;  // first pair whose increase exceeds the tolerance
  ProbeOutcome outcome = ProbeOutcome::ConsistentWithSubunital;

  std::string message() const;
};

// Probe set, in order: diagonal pairs (starting with 1/d against uniform
// mixtures of the last m basis states, m = 2..d-1 then m = 1, then random computational-basis and
// shared-random-basis diagonals) 20%, full-rank Ginibre pairs 40%, Haar pure
// pairs 30%, perturbed-identical pairs 10%. Pair i uses Rng::stream(seed, i).
// Throws OracleReturnedInvalidState when an output fails state validation
// at 1e-9.
ProbeVerdict blackbox_probe(const StateOracle& oracle, std::size_t dim_in, std::size_t n_pairs,
                            std::uint64_t seed, const ProbeOptions& options = {});

// The probe pairs blackbox_probe would use, exposed for replay and tests.
std::vector<std::pair<DensityMatrix, DensityMatrix>> probe_pairs(std::size_t dim_in,
                                                                 std::size_t n_pairs,
                                                                 std::uint64_t seed);

}  // namespace ptd

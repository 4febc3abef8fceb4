#include "commands.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "ptd/channels.hpp"
#include "ptd/distances.hpp"
#include "ptd/error.hpp"
#include "ptd/harness.hpp"
#include "ptd/majorization.hpp"
#include "ptd/measurements.hpp"

namespace ptd::cli {
namespace {

using io::Json;

std::string fmt(double x) { return io::format_number(x); }

Json array_of(std::span<const double> values) {
  Json a = Json::array();
  for (double v : values) a.push_back(v);
  return a;
}

Json vector_entries(const ComplexMatrix& columns, std::size_t c) {
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t r = 0; r < columns.rows(); ++r) {
    re.push_back(columns(r, c).real());
    im.push_back(columns(r, c).imag());
  }
  Json v = Json::object();
  v["re"] = std::move(re);
  v["im"] = std::move(im);
  return v;
}

DensityMatrix load_state(const std::string& path) { return io::parse_state(io::read_text(path)); }

double half_top_sum(const std::vector<double>& sorted, std::size_t k) {
  double s = 0.0;
  for (std::size_t j = 0; j < std::min(k, sorted.size()); ++j) s += sorted[j];
  return 0.5 * s;
}

Output profile_output(const std::vector<double>& values) {
  Output out;
  out.header = {"k", "distance"};
  for (std::size_t k = 1; k <= values.size(); ++k) out.rows.push_back({std::to_string(k), fmt(values[k - 1])});
  out.json["dim"] = values.size();
  out.json["profile"] = array_of(values);
  out.json["trace_distance"] = values.empty() ? 0.0 : values.back();
  return out;
}

Json flags_json(const ChannelFlags& f) {
  Json j = Json::object();
  j["trace_preserving"] = f.trace_preserving;
  j["trace_nonincreasing"] = f.trace_nonincreasing;
  j["unital"] = f.unital;
  j["teor0"] = f.subunital;
  j["bistochastic"] = f.bistochastic;
  Json r = Json::object();
  r["trace_preserving"] = f.trace_preserving_residual;
  r["trace_excess"] = f.trace_excess;
  r["unital"] = f.unital_residual;
  r["subunital_excess"] = f.subunital_excess;
  j["residuals"] = std::move(r);
  return j;
}

// External command as a channel: state file on stdin, state file on stdout.
StateOracle exec_oracle(const std::string& command) {
  auto counter = std::make_shared<std::atomic<std::uint64_t>>(0);
  const auto dir = std::filesystem::temp_directory_path();
  const std::string stem = "ptd-probe-" + std::to_string(::getpid()) + "-";
  return [command, counter, dir, stem](const DensityMatrix& rho) {
    const std::string id = std::to_string((*counter)++);
    const std::string in = (dir / (stem + id + ".in.json")).string();
    const std::string out = (dir / (stem + id + ".out.json")).string();
    io::write_text(in, io::emit_state(rho));
    const std::string line = command + " < '" + in + "' > '" + out + "'";
    const int status = std::system(line.c_str());
    std::string text;
    try {
      text = io::read_text(out);
    } catch (const Error&) {
    }
    std::filesystem::remove(in);
    std::filesystem::remove(out);
    if (status != 0) {
      throw Error(ErrorCode::OracleReturnedInvalidState,
                  "oracle command exited with status " + std::to_string(status));
    }
    try {
      return io::parse_state_matrix(text);
    } catch (const Error& e) {
      throw Error(ErrorCode::OracleReturnedInvalidState,
                  std::string("oracle output unreadable: ") + e.what());
    }
  };
}

}  // namespace

std::string render(const Output& out, Format format) {
  if (!out.raw.empty()) return out.raw;
  if (format == Format::Csv) return io::emit_csv(out.header, out.rows);
  return io::emit_json(out.json);
}

Output dist(const std::string& a, const std::string& b, std::optional<std::size_t> k) {
  const auto rho = load_state(a);
  const auto sigma = load_state(b);
  if (!k) return profile_output(distance_profile(rho, sigma).values);
  Output out;
  const double value = partitioned_distance(rho, sigma, *k);
  out.json["dim"] = rho.dim();
  out.json["k"] = *k;
  out.json["distance"] = value;
  out.header = {"k", "distance"};
  out.rows.push_back({std::to_string(*k), fmt(value)});
  return out;
}

Output spectrum(const std::string& a, const std::string& b) {
  const auto jordan = jordan_decomposition(load_state(a), load_state(b));
  Output out;
  out.json["dim"] = jordan.dim();
  out.json["singular_values"] = array_of(jordan.singular);
  out.json["positive_eigenvalues"] = array_of(jordan.kappa);
  out.json["negative_eigenvalues"] = array_of(jordan.tau);
  out.json["kernel_dimension"] = jordan.kernel_vectors.cols();
  Json support = Json::array();
  out.header = {"j", "singular_value", "side"};
  for (std::size_t j = 0; j < jordan.merged.size(); ++j) {
    const auto& e = jordan.merged[j];
    const bool positive = e.side == Side::Positive;
    Json entry = Json::object();
    entry["side"] = positive ? "positive" : "negative";
    entry["value"] = e.value;
    entry["vector"] = vector_entries(positive ? jordan.kappa_vectors : jordan.tau_vectors, e.index);
    support.push_back(std::move(entry));
    out.rows.push_back({std::to_string(j + 1), fmt(e.value), positive ? "positive" : "negative"});
  }
  for (std::size_t j = jordan.merged.size(); j < jordan.dim(); ++j) {
    out.rows.push_back({std::to_string(j + 1), "0", "kernel"});
  }
  out.json["support"] = std::move(support);
  return out;
}

Output cdist(const std::string& p_path, const std::string& q_path, std::optional<std::size_t> k) {
  const auto p = io::parse_vector(io::read_text(p_path));
  const auto q = io::parse_vector(io::read_text(q_path));
  if (k) {
    Output out;
    const double value = classical_partitioned_distance(p, q, *k);
    out.json["length"] = p.size();
    out.json["k"] = *k;
    out.json["distance"] = value;
    out.header = {"k", "distance"};
    out.rows.push_back({std::to_string(*k), fmt(value)});
    return out;
  }
  std::vector<double> values;
  for (std::size_t j = 1; j <= p.size(); ++j) values.push_back(classical_partitioned_distance(p, q, j));
  return profile_output(values);
}

Output pvm_opt(const std::string& a, const std::string& b, const std::string& povm_out) {
  const auto rho = load_state(a);
  const auto sigma = load_state(b);
  const auto pvm = optimal_pvm(rho, sigma);
  io::write_text(povm_out, io::emit_povm(pvm));
  const auto stats = measure_pair(pvm, rho, sigma);
  const auto singular = jordan_decomposition(rho, sigma).singular;
  double residual = 0.0;
  Output out;
  out.header = {"j", "gap", "singular_value"};
  for (std::size_t j = 0; j < singular.size(); ++j) {
    residual = std::max(residual, std::abs(stats.gaps_sorted[j] - singular[j]));
    out.rows.push_back({std::to_string(j + 1), fmt(stats.gaps_sorted[j]), fmt(singular[j])});
  }
  out.json["dim"] = pvm.dim();
  out.json["outcomes"] = pvm.outcomes();
  out.json["gaps_sorted"] = array_of(stats.gaps_sorted);
  out.json["singular_values"] = array_of(singular);
  out.json["max_gap_residual"] = residual;
  out.json["povm_file"] = povm_out;
  return out;
}

Output measure(const std::string& povm_path, const std::string& a, const std::string& b,
               const Common& common) {
  const double tol = common.tol.value_or(1e-9);
  const auto povm = io::parse_povm(io::read_text(povm_path));
  const auto rho = load_state(a);
  const auto sigma = load_state(b);
  const auto stats = measure_pair(povm, rho, sigma);
  const auto profile = distance_profile(rho, sigma);

  Output out;
  out.header = {"k", "measured", "partitioned", "margin"};
  Json rows = Json::array();
  bool within = true;
  for (std::size_t k = 1; k <= profile.dim; ++k) {
    const double measured = half_top_sum(stats.gaps_sorted, k);
    const double margin = profile.at(k) - measured;
    within = within && margin >= -tol;
    Json row = Json::object();
    row["k"] = k;
    row["measured"] = measured;
    row["partitioned"] = profile.at(k);
    row["margin"] = margin;
    rows.push_back(std::move(row));
    out.rows.push_back({std::to_string(k), fmt(measured), fmt(profile.at(k)), fmt(margin)});
  }
  out.json["dim"] = povm.dim();
  out.json["outcomes"] = povm.outcomes();
  out.json["small_trace"] = povm.small_trace();
  out.json["p"] = array_of(stats.p);
  out.json["q"] = array_of(stats.q);
  out.json["gaps_sorted"] = array_of(stats.gaps_sorted);
  out.json["rows"] = std::move(rows);
  out.json["within_bound"] = within;
  out.json["tolerance"] = tol;
  // Only trace-bounded POVMs are guaranteed to stay below D_k.
  if (povm.small_trace() && !within) out.exit_code = kExitViolation;
  return out;
}

Output majorize(const std::string& x_path, const std::string& y_path, bool strict,
                const Common& common) {
  const double tol = common.tol.value_or(kMajorizationTolerance);
  const OrderedVector x(io::parse_vector(io::read_text(x_path)));
  const OrderedVector y(io::parse_vector(io::read_text(y_path)));
  const auto report = weakly_submajorized(x, y, tol);
  const bool full = majorized(x, y, tol);

  Output out;
  out.json["weak"] = report.holds;
  out.json["majorized"] = full;
  out.json["verdict"] = full ? "majorized" : report.holds ? "weakly_submajorized" : "not_submajorized";
  out.json["padded_length"] = report.padded_length;
  out.json["margins"] = array_of(report.margins);
  out.json["worst_margin"] = report.worst_margin();
  out.json["total_difference"] = report.total_difference;
  out.json["tolerance"] = tol;
  out.header = {"k", "margin"};
  for (std::size_t k = 0; k < report.margins.size(); ++k) {
    out.rows.push_back({std::to_string(k + 1), fmt(report.margins[k])});
  }
  if (strict ? !full : !report.holds) out.exit_code = kExitViolation;
  return out;
}

Output channel_check(const std::string& kraus, const Common& common) {
  const auto channel = KrausChannel::build(io::parse_kraus_operators(io::read_text(kraus)),
                                           common.tol.value_or(kChannelTolerance));
  Output out;
  out.json["dim_in"] = channel.dim_in();
  out.json["dim_out"] = channel.dim_out();
  out.json["kraus_operators"] = channel.kraus().size();
  const Json flags = flags_json(channel.flags());
  for (const auto& [key, value] : flags.items()) out.json[key] = value;
  const auto& f = channel.flags();
  out.header = {"flag", "value", "residual"};
  out.rows = {
      {"trace_preserving", f.trace_preserving ? "true" : "false", fmt(f.trace_preserving_residual)},
      {"trace_nonincreasing", f.trace_nonincreasing ? "true" : "false", fmt(f.trace_excess)},
      {"unital", f.unital ? "true" : "false", fmt(f.unital_residual)},
      {"teor0", f.subunital ? "true" : "false", fmt(f.subunital_excess)},
      {"bistochastic", f.bistochastic ? "true" : "false",
       fmt(std::max(f.trace_preserving_residual, f.unital_residual))},
  };
  return out;
}

Output channel_apply(const std::string& kraus, const std::string& state, bool state_only,
                     const std::string& state_out) {
  const auto channel = io::parse_kraus(io::read_text(kraus));
  const auto result = apply(channel, load_state(state));
  if (!state_out.empty()) io::write_text(state_out, io::emit_state(result.state));
  Output out;
  if (state_only) {
    out.raw = io::emit_state(result.state);
    return out;
  }
  out.json["success_probability"] = result.success_probability;
  out.json["state"] = io::state_json(result.state.matrix());
  out.header = {"success_probability"};
  out.rows.push_back({fmt(result.success_probability)});
  return out;
}

Output channel_contract(const std::string& kraus, const std::string& a, const std::string& b,
                        bool unnormalized, const Common& common) {
  const double tol = common.tol.value_or(kChannelTolerance);
  const auto channel = io::parse_kraus(io::read_text(kraus));
  const auto mode = unnormalized || !channel.flags().trace_preserving
                        ? ContractivityMode::Unnormalized
                        : ContractivityMode::Normalized;
  const auto report = contractivity_report(channel, load_state(a), load_state(b), mode, tol);

  Output out;
  out.json["mode"] = mode == ContractivityMode::Normalized ? "normalized" : "unnormalized";
  out.json["padded_dim"] = report.padded_dim;
  out.json["teor0"] = channel.flags().subunital;
  out.json["singular_in"] = array_of(report.singular_in);
  out.json["singular_out"] = array_of(report.singular_out);
  Json rows = Json::array();
  out.header = {"k", "d_in", "d_out", "increase", "violated"};
  for (const auto& r : report.rows) {
    Json row = Json::object();
    row["k"] = r.k;
    row["d_in"] = r.d_in;
    row["d_out"] = r.d_out;
    row["increase"] = r.d_out - r.d_in;
    row["violated"] = r.violated;
    rows.push_back(std::move(row));
    out.rows.push_back({std::to_string(r.k), fmt(r.d_in), fmt(r.d_out), fmt(r.d_out - r.d_in),
                        r.violated ? "true" : "false"});
  }
  out.json["rows"] = std::move(rows);
  Json sub = Json::object();
  sub["holds"] = report.submajorization.holds;
  sub["margins"] = array_of(report.submajorization.margins);
  out.json["submajorization"] = std::move(sub);
  out.json["tolerance"] = tol;
  out.json["verdict"] = report.any_violation ? "increase_detected" : "contractive";
  if (report.any_violation) out.exit_code = kExitViolation;
  return out;
}

Output probe(const std::string& kraus, const std::string& exec, std::size_t dim,
             std::size_t pairs, const Common& common) {
  StateOracle oracle;
  if (!exec.empty()) {
    if (dim == 0) throw Error(ErrorCode::ParameterOutOfRange, "--exec needs --dim");
    oracle = exec_oracle(exec);
  } else {
    auto channel = std::make_shared<KrausChannel>(io::parse_kraus(io::read_text(kraus)));
    if (dim == 0) dim = channel->dim_in();
    if (dim != channel->dim_in()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "--dim " + std::to_string(dim) + " but the channel acts on dimension " +
                      std::to_string(channel->dim_in()));
    }
    oracle = [channel](const DensityMatrix& rho) { return apply(*channel, rho).state.matrix(); };
  }
  ProbeOptions options;
  options.tolerance = common.tol.value_or(options.tolerance);
  options.jobs = common.jobs;
  const auto verdict = blackbox_probe(oracle, dim, pairs, common.seed, options);
  const bool violates = verdict.outcome == ProbeOutcome::ViolatesSubunital;

  Output out;
  out.json["pairs_probed"] = verdict.pairs_probed;
  out.json["dim_in"] = verdict.dim_in;
  out.json["dim_out"] = verdict.dim_out;
  out.json["seed"] = common.seed;
  out.json["tolerance"] = verdict.tolerance;
  out.json["max_increase"] = array_of(verdict.max_increase);
  out.json["verdict"] = violates ? "violates_teor0" : "consistent_with_teor0";
  out.json["message"] = verdict.message();
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    Json witness = Json::object();
    witness["pair_index"] = w.pair_index;
    witness["k"] = w.k;
    witness["d_in"] = w.d_in;
    witness["d_out"] = w.d_out;
    witness["rho"] = io::state_json(w.rho.matrix());
    witness["sigma"] = io::state_json(w.sigma.matrix());
    out.json["witness"] = std::move(witness);
  }
  out.header = {"k", "max_increase"};
  for (std::size_t k = 0; k < verdict.max_increase.size(); ++k) {
    out.rows.push_back({std::to_string(k + 1), fmt(verdict.max_increase[k])});
  }
  if (violates) out.exit_code = kExitViolation;
  return out;
}

Output suite(const std::string& name, std::size_t dim, std::size_t trials,
             std::size_t povms_per_pair, const Common& common) {
  SuiteOptions options;
  options.dim = dim;
  options.trials = trials;
  options.seed = common.seed;
  options.jobs = common.jobs;
  options.povms_per_pair = povms_per_pair;
  const auto report = run_suite(parse_suite_name(name), options);
  std::fprintf(stderr, "suite %s: %.3f s\n", report.name.c_str(), report.wall_time_seconds);

  Output out;
  out.json["suite"] = report.name;
  out.json["dim"] = report.dim;
  out.json["trials"] = report.trials;
  out.json["seed"] = report.seed;
  out.json["checks"] = report.checks;
  out.json["failure_count"] = report.failure_count;
  out.json["passed"] = report.passed();
  Json assertions = Json::object();
  out.header = {"assertion", "worst_margin", "tolerance", "status"};
  for (const auto& [assertion, margin] : report.worst_margins) {
    const double tol = report.tolerances.at(assertion);
    Json a = Json::object();
    a["worst_margin"] = margin;
    a["tolerance"] = tol;
    assertions[assertion] = std::move(a);
    out.rows.push_back({assertion, fmt(margin), fmt(tol), margin >= -tol ? "pass" : "fail"});
  }
  out.json["assertions"] = std::move(assertions);
  Json observations = Json::object();
  for (const auto& [key, value] : report.observations) observations[key] = value;
  out.json["observations"] = std::move(observations);
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    Json j = Json::object();
    j["trial"] = f.trial;
    j["seed"] = f.seed;
    j["assertion"] = f.assertion;
    j["margin"] = f.margin;
    j["summary"] = f.summary;
    failures.push_back(std::move(j));
  }
  out.json["failures"] = std::move(failures);
  if (!report.passed()) out.exit_code = kExitViolation;
  return out;
}

}  // namespace ptd::cli

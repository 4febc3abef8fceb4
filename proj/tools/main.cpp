#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "ptd/error.hpp"

namespace {

using namespace ptd::cli;

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--seed", common.seed, "Random seed");
  cmd->add_option("--tol", common.tol, "Assertion tolerance");
  cmd->add_option("--format", common.format, "Report format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}}));
  cmd->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partitioned trace distances, measurements and channel contractivity"};
  app.require_subcommand(1);
  Common common;
  Output out;
  std::function<Output()> run;

  std::string a, b, c;
  std::optional<std::size_t> k;
  bool flag = false;
  std::string path;

  auto* dist = app.add_subcommand("dist", "Partitioned distances D_k between two states");
  dist->add_option("state_a", a)->required();
  dist->add_option("state_b", b)->required();
  auto* k_opt = dist->add_option("-k", k, "Single k");
  dist->add_flag("--profile", flag, "All k (default)")->excludes(k_opt);
  dist->callback([&] { run = [&] { return ptd::cli::dist(a, b, k); }; });

  auto* spect = app.add_subcommand("spectrum", "Singular values and Jordan eigendata of a - b");
  spect->add_option("state_a", a)->required();
  spect->add_option("state_b", b)->required();
  spect->callback([&] { run = [&] { return spectrum(a, b); }; });

  auto* cd = app.add_subcommand("cdist", "Classical partitioned distance of two vectors");
  cd->add_option("p", a)->required();
  cd->add_option("q", b)->required();
  cd->add_option("-k", k, "Single k");
  cd->callback([&] { run = [&] { return cdist(a, b, k); }; });

  auto* pvm = app.add_subcommand("pvm-opt", "Eigenbasis PVM attaining every D_k");
  pvm->add_option("state_a", a)->required();
  pvm->add_option("state_b", b)->required();
  pvm->add_option("-o,--output", path, "POVM file to write")->required();
  pvm->callback([&] { run = [&] { return pvm_opt(a, b, path); }; });

  auto* meas = app.add_subcommand("measure", "Outcome statistics against D_k");
  meas->add_option("povm", c)->required();
  meas->add_option("state_a", a)->required();
  meas->add_option("state_b", b)->required();
  meas->callback([&] { run = [&] { return measure(c, a, b, common); }; });

  auto* maj = app.add_subcommand("majorize", "Is x weakly submajorized by y");
  maj->add_option("x", a)->required();
  maj->add_option("y", b)->required();
  maj->add_flag("--strict", flag, "Require majorization (equal totals)");
  maj->callback([&] { run = [&] { return majorize(a, b, flag, common); }; });

  auto* channel = app.add_subcommand("channel", "Kraus channel tools");
  channel->require_subcommand(1);
  auto* check = channel->add_subcommand("check", "Channel flags with residuals");
  check->add_option("kraus", c)->required();
  check->callback([&] { run = [&] { return channel_check(c, common); }; });
  auto* app_cmd = channel->add_subcommand("apply", "Apply a channel to a state");
  app_cmd->add_option("kraus", c)->required();
  app_cmd->add_option("state", a)->required();
  app_cmd->add_flag("--state-only", flag, "Print only the output state file");
  app_cmd->add_option("-o,--output", path, "Also write the output state here");
  app_cmd->callback([&] { run = [&] { return channel_apply(c, a, flag, path); }; });
  auto* contract = channel->add_subcommand("contract", "Per-k comparison before and after");
  contract->add_option("kraus", c)->required();
  contract->add_option("state_a", a)->required();
  contract->add_option("state_b", b)->required();
  contract->add_flag("--unnormalized", flag, "Compare raw outputs");
  contract->callback([&] { run = [&] { return channel_contract(c, a, b, flag, common); }; });

  std::string exec;
  std::size_t dim = 0;
  std::size_t pairs = 1000;
  auto* pr = app.add_subcommand("probe", "Black-box search for a D_k increase");
  auto* kraus_opt = pr->add_option("kraus", c);
  auto* exec_opt = pr->add_option("--exec", exec, "Oracle command: state on stdin, state on stdout");
  kraus_opt->excludes(exec_opt);
  pr->add_option("--dim", dim, "Input dimension");
  pr->add_option("--pairs", pairs, "Number of probe pairs")->check(CLI::PositiveNumber);
  pr->callback([&] {
    if (c.empty() && exec.empty()) throw CLI::ValidationError("probe", "need a Kraus file or --exec");
    run = [&] { return probe(c, exec, dim, pairs, common); };
  });

  std::size_t trials = 100;
  std::size_t povms = 300;
  std::size_t suite_dim = 3;
  auto* st = app.add_subcommand("suite", "Randomized property suite");
  st->add_option("name", a, "metric | convexity | povm_bound | majorization | contractivity")
      ->required();
  st->add_option("--dim", suite_dim)->check(CLI::Range(2, 64));
  st->add_option("--trials", trials)->check(CLI::PositiveNumber);
  st->add_option("--povms", povms, "Random POVMs per pair (povm_bound)")->check(CLI::PositiveNumber);
  st->callback([&] { run = [&] { return suite(a, suite_dim, trials, povms, common); }; });

  for (auto* cmd : {dist, spect, cd, pvm, meas, maj, check, app_cmd, contract, pr, st}) {
    add_common(cmd, common);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    out = run();
  } catch (const ptd::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    const bool usage = e.code() == ptd::ErrorCode::ParseError ||
                       e.code() == ptd::ErrorCode::UnknownSuite;
    return usage ? kExitUsage : kExitInvalid;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  }
  std::cout << render(out, common.format);
  std::cout.flush();
  return out.exit_code;
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptd/io.hpp"

namespace ptd::cli {

enum class Format { Json, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitViolation = 3;

struct Common {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  Format format = Format::Json;
  std::size_t jobs = 1;
};

// A report renders as canonical JSON or as a CSV table.
struct Output {
  io::Json json = io::Json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int exit_code = kExitOk;
  std::string raw;  // when set, printed verbatim instead of the report
};

std::string render(const Output& out, Format format);

Output dist(const std::string& a, const std::string& b, std::optional<std::size_t> k);
Output spectrum(const std::string& a, const std::string& b);
Output cdist(const std::string& p, const std::string& q, std::optional<std::size_t> k);
Output pvm_opt(const std::string& a, const std::string& b, const std::string& povm_out);
Output measure(const std::string& povm, const std::string& a, const std::string& b,
               const Common& common);
Output majorize(const std::string& x, const std::string& y, bool strict, const Common& common);
Output channel_check(const std::string& kraus, const Common& common);
Output channel_apply(const std::string& kraus, const std::string& state, bool state_only,
                     const std::string& state_out);
Output channel_contract(const std::string& kraus, const std::string& a, const std::string& b,
                        bool unnormalized, const Common& common);
// Exactly one of kraus / exec is non-empty.
Output probe(const std::string& kraus, const std::string& exec, std::size_t dim,
             std::size_t pairs, const Common& common);
Output suite(const std::string& name, std::size_t dim, std::size_t trials,
             std::size_t povms_per_pair, const Common& common);

}  // namespace ptd::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sepscan/onesided.hpp"
#include "sepscan/symext.hpp"

namespace sepscan::cli {

inline constexpr int kExitSeparable = 0;
inline constexpr int kExitEntangled = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitInput = 64;
inline constexpr int kExitConfig = 65;
inline constexpr int kExitInternal = 70;

struct RunConfig {
  std::string command;  // test|witness|symext|wopt|qsep-verify|qsep-reduce|gadget|net|state

  std::string input;
  std::string op;
  std::string instance;
  std::string cert;
  std::string graph;
  std::string output;       // optional artifact file
  std::string witness_out;  // witness operator file
  std::string net_cache;    // empty disables caching

  double delta = 0.0;
  std::string delta_rational;  // qsep-reduce keeps delta exact
  std::uint64_t seed = 1;
  int threads = 0;

  OneSidedTolerances onesided;

  // symext
  std::optional<int> kmax;
  bool ppt = true;
  bool strict = false;
  bool dykstra = false;
  ExtensionOptions extension;
  double entangled_threshold = 1e-3;

  // wopt / witness
  std::string side = "A";
  bool absolute = false;

  // gadget
  int clique = 0;
  std::uint64_t max_net_points = 2'000'000;

  // net and state
  int m = 2;
  int n = 2;
  bool real = false;
  bool quotient = false;
  std::size_t verify_samples = 0;
  std::string state_name;
  double w = 0.5;
  int terms = 6;
  int rational_bits = 0;  // state: also emit the exact dyadic form
};

/// Executes one command and writes a JSON report to `out`. Diagnostics go to
/// `err`. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) into a RunConfig
/// and runs it. Usage errors exit with 64.
int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sepscan::cli

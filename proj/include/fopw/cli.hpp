// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fopw/pipeline.hpp"

namespace fopw {

/// Options shared by the subcommands after parsing.
struct RunConfig {
  std::string subcommand;
  Mode mode = Mode::kStrict;
  std::vector<std::uint64_t> delta;
  std::optional<std::uint64_t> lhat, rhat, rstar;
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::string trace_path;

  bool has_overrides() const { return !delta.empty() || lhat || rhat || rstar; }
  /// Lab mode needs the full table; strict mode takes none of it. Throws
  /// PreconditionError otherwise.
  Thresholds thresholds() const;
};

/// Exit codes: 0 true / success, 1 false, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fopw

// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdcell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConvergence = 3;

inline constexpr const char* kVersion = "0.1.0";

struct Grid {
  double min;
  double max;
  int count;
  bool log;
  std::vector<double> points() const;
};

/// Parses `min:max:count:lin|log`; throws ConfigurationError when malformed,
/// count < 2, min >= max, or a log grid starts at a non-positive value.
Grid parse_grid(const std::string& text);

/// Runs the command line; returns the process exit code. Tables go to
/// `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdcell::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "manifest.hpp"
#include "report.hpp"

namespace ecgi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Scores every row on a pool of `config.workers` threads. Results follow
/// manifest order. The first failing row (in manifest order) is rethrown
/// with its pair_id in the message.
std::vector<PairScore> score_manifest(const std::vector<ManifestRow>& rows,
                                      const RunConfig& config);

/// Entry point shared by the `ecgi` binary and the tests. `args` excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecgi::cli

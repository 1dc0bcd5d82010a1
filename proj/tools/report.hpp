#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ecgi/paired.hpp"
#include "ecgi/scoring.hpp"

namespace ecgi::cli {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  EcgiOptions ecgi;
  OutputFormat format = OutputFormat::Json;
  int workers = 1;
  std::string label_a = "LCI";
  std::string label_b = "WL";
  std::optional<std::filesystem::path> dump_gradient;
  std::optional<std::filesystem::path> dump_mask;
  std::optional<std::filesystem::path> dump_pmf;
};

/// Scores: 4 decimals.
std::string format_score(double v);
/// p-values: 6 decimals, scientific (6 digits) below 1e-4.
std::string format_p(double p);

/// Worker count is deliberately absent from the rendered config so that
/// reports do not depend on it.
std::string render_json(const RunConfig& config, const std::vector<PairScore>& pairs,
                        const PairedReport& summary);
std::string render_csv(const RunConfig& config, const std::vector<PairScore>& pairs,
                       const PairedReport& summary);

}  // namespace ecgi::cli

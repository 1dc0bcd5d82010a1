#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "ecgi/imaging.hpp"

namespace ecgi::cli {

/// One image pair from a comparison manifest.
struct ManifestRow {
  std::string pair_id;
  std::filesystem::path path_a;
  std::filesystem::path path_b;
  std::optional<RoiRect> roi_a;  ///< absent means the full image
  std::optional<RoiRect> roi_b;
  int line = 0;
};

/// Parses the CSV manifest. The header must name pair_id, path_a and
/// path_b; roi_{a,b}_{x,y,w,h} columns are optional and may be left empty.
/// Relative paths are resolved against `base_dir`. Throws MalformedManifest
/// with the offending line number.
std::vector<ManifestRow> parse_manifest(std::istream& in,
                                        const std::filesystem::path& base_dir);

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);

/// Splits one CSV record; handles double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace ecgi::cli

#include "manifest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>

#include <fmt/core.h>

#include "ecgi/error.hpp"

namespace ecgi::cli {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

[[noreturn]] void malformed(int line, const std::string& what) {
  throw Error(ErrorCode::MalformedManifest, fmt::format("manifest line {}: {}", line, what));
}

int parse_int(const std::string& cell, int line, const std::string& column) {
  int value = 0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    malformed(line, fmt::format("column {} is not an integer: '{}'", column, cell));
  }
  return value;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? cur : trim(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(was_quoted ? cur : trim(cur));
  return fields;
}

std::vector<ManifestRow> parse_manifest(std::istream& in,
                                        const std::filesystem::path& base_dir) {
  std::string raw;
  int line_no = 0;
  std::map<std::string, std::size_t> column;
  std::vector<ManifestRow> rows;
  std::set<std::string> seen_ids;

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) continue;
    const auto cells = split_csv_line(raw);

    if (column.empty()) {
      for (std::size_t i = 0; i < cells.size(); ++i) column[cells[i]] = i;
      for (const char* required : {"pair_id", "path_a", "path_b"}) {
        if (!column.contains(required)) {
          malformed(line_no, fmt::format("header lacks column '{}'", required));
        }
      }
      continue;
    }

    if (cells.size() != column.size()) {
      malformed(line_no, fmt::format("expected {} fields, found {}", column.size(), cells.size()));
    }
    auto cell = [&](const std::string& name) -> std::string {
      const auto it = column.find(name);
      return it == column.end() ? std::string{} : cells[it->second];
    };

    auto read_roi = [&](char side) -> std::optional<RoiRect> {
      std::array<std::string, 4> parts;
      int filled = 0;
      const std::array<const char*, 4> names{"x", "y", "w", "h"};
      for (int k = 0; k < 4; ++k) {
        parts[k] = cell(fmt::format("roi_{}_{}", side, names[k]));
        if (!parts[k].empty()) ++filled;
      }
      if (filled == 0) return std::nullopt;
      if (filled != 4) malformed(line_no, fmt::format("roi_{} is partially specified", side));
      RoiRect roi;
      roi.x = parse_int(parts[0], line_no, fmt::format("roi_{}_x", side));
      roi.y = parse_int(parts[1], line_no, fmt::format("roi_{}_y", side));
      roi.w = parse_int(parts[2], line_no, fmt::format("roi_{}_w", side));
      roi.h = parse_int(parts[3], line_no, fmt::format("roi_{}_h", side));
      if (roi.x < 0 || roi.y < 0 || roi.w < kMinImageSide || roi.h < kMinImageSide) {
        malformed(line_no, fmt::format("roi_{} ({},{},{},{}) is invalid", side, roi.x, roi.y,
                                       roi.w, roi.h));
      }
      return roi;
    };

    ManifestRow row;
    row.line = line_no;
    row.pair_id = cell("pair_id");
    if (row.pair_id.empty()) malformed(line_no, "empty pair_id");
    if (!seen_ids.insert(row.pair_id).second) {
      malformed(line_no, fmt::format("duplicate pair_id '{}'", row.pair_id));
    }
    const std::string a = cell("path_a");
    const std::string b = cell("path_b");
    if (a.empty() || b.empty()) malformed(line_no, "empty image path");
    row.path_a = resolve(a);
    row.path_b = resolve(b);
    row.roi_a = read_roi('a');
    row.roi_b = read_roi('b');
    if (row.roi_a && row.roi_b &&
        (row.roi_a->w != row.roi_b->w || row.roi_a->h != row.roi_b->h)) {
      malformed(line_no, fmt::format("ROIs differ in size ({}x{} vs {}x{})", row.roi_a->w,
                                     row.roi_a->h, row.roi_b->w, row.roi_b->h));
    }
    rows.push_back(std::move(row));
  }
  if (column.empty()) throw Error(ErrorCode::MalformedManifest, "manifest is empty");
  return rows;
}

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UnreadableFile, fmt::format("cannot read manifest {}", path.string()));
  return parse_manifest(in, path.parent_path());
}

}  // namespace ecgi::cli

#include "app.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include "ecgi/debug_io.hpp"
#include "ecgi/error.hpp"

namespace ecgi::cli {

namespace {

std::string safe_stem(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

void dump_intermediates(const EcgiResult& r, const RunConfig& config, const std::string& stem) {
  const int w = r.gradient.width();
  const int h = r.gradient.height();
  if (config.dump_gradient) {
    const auto& dir = *config.dump_gradient;
    std::filesystem::create_directories(dir);
    write_raster_f32(dir / fmt::format("{}.F.{}x{}.f32", stem, w, h), r.gradient);
    write_gray_png(dir / fmt::format("{}.F.png", stem), gradient_preview(r.gradient));
    write_raster_f32(dir / fmt::format("{}.G.{}x{}.f32", stem, w, h), r.final_gradient);
    write_gray_png(dir / fmt::format("{}.G.png", stem), gradient_preview(r.final_gradient));
  }
  if (config.dump_mask) {
    const auto& dir = *config.dump_mask;
    std::filesystem::create_directories(dir);
    write_gray_png(dir / fmt::format("{}.mask.png", stem), mask_preview(r.mask));
    std::ofstream csv(dir / fmt::format("{}.regions.csv", stem));
    write_regions_csv(csv, r.regions);
  }
  if (config.dump_pmf) {
    const auto& dir = *config.dump_pmf;
    std::filesystem::create_directories(dir);
    std::ofstream tsv(dir / fmt::format("{}.pmf.tsv", stem));
    write_pmf_tsv(tsv, r.pmf);
  }
}

ColorImage load_region(const std::filesystem::path& path, const std::optional<RoiRect>& roi) {
  ColorImage image = load_image(path);
  return roi ? crop_roi(image, *roi) : image;
}

std::optional<RoiRect> parse_roi(const std::string& text) {
  if (text.empty()) return std::nullopt;
  RoiRect roi;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream in(text);
  if (!(in >> roi.x >> c1 >> roi.y >> c2 >> roi.w >> c3 >> roi.h) || c1 != ',' || c2 != ',' ||
      c3 != ',' || !(in >> std::ws).eof()) {
    throw CLI::ValidationError("--roi", "expected x,y,w,h");
  }
  return roi;
}

int default_workers() {
  if (const char* env = std::getenv("ECGI_WORKERS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      return 0;  // rejected by validation below
    }
  }
  return 1;
}

}  // namespace

std::vector<PairScore> score_manifest(const std::vector<ManifestRow>& rows,
                                      const RunConfig& config) {
  std::vector<PairScore> scores(rows.size());
  std::vector<std::string> failures(rows.size());
  std::vector<char> failed(rows.size(), 0);
  std::vector<ErrorCode> codes(rows.size(), ErrorCode::UnreadableFile);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};

  auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= rows.size()) return;
      const ManifestRow& row = rows[i];
      try {
        const EcgiResult a = ecgi_score(load_region(row.path_a, row.roi_a), config.ecgi);
        const EcgiResult b = ecgi_score(load_region(row.path_b, row.roi_b), config.ecgi);
        const std::string stem = safe_stem(row.pair_id);
        dump_intermediates(a, config, stem + "_a");
        dump_intermediates(b, config, stem + "_b");
        scores[i] = PairScore{row.pair_id, a.score, b.score};
      } catch (const Error& e) {
        failures[i] = e.what();
        codes[i] = e.code();
        failed[i] = 1;
        abort.store(true);
      } catch (const std::exception& e) {
        failures[i] = e.what();
        failed[i] = 1;
        abort.store(true);
      }
    }
  };

  const int n_threads =
      std::max(1, std::min<int>(config.workers, static_cast<int>(rows.size())));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (failed[i]) {
      throw Error(codes[i],
                  fmt::format("pair '{}' (manifest line {}): {}", rows[i].pair_id, rows[i].line,
                              failures[i]));
    }
  }
  return scores;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy of color gradients image (ECGI) scoring", "ecgi"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  config.workers = default_workers();
  HighlightParams& hp = config.ecgi.highlight;
  bool no_mask = false;

  app.add_option("--grad-threshold", hp.validity_threshold, "Gradient validity threshold")
      ->capture_default_str();
  app.add_option("--area-min", hp.area_min, "Minimum MSER area (pixels)")->capture_default_str();
  app.add_option("--area-max", hp.area_max, "Maximum MSER area (pixels)")->capture_default_str();
  app.add_option("--mser-delta", hp.mser_delta, "MSER stability delta (gray levels)")
      ->capture_default_str();
  app.add_option("--mser-max-variation", hp.mser_max_variation, "MSER maximum variation")
      ->capture_default_str();
  app.add_option("--closing-radius", hp.closing_radius, "Closing radius (pixels)")
      ->capture_default_str();
  app.add_option("--lum-threshold", hp.luminance_threshold,
                 "Mean luminance at which a component counts as specular")
      ->capture_default_str();
  app.add_option("--quant-max", config.ecgi.quant_max, "Upper end of the histogram range")
      ->capture_default_str();
  app.add_option("--workers", config.workers, "Worker threads (default $ECGI_WORKERS or 1)");
  app.add_flag("--no-highlight-mask", no_mask, "Skip specular highlight suppression");
  std::string dump_gradient, dump_mask, dump_pmf;
  app.add_option("--dump-gradient", dump_gradient, "Write F and G rasters to DIR");
  app.add_option("--dump-mask", dump_mask, "Write masks and region tables to DIR");
  app.add_option("--dump-pmf", dump_pmf, "Write PMF tables to DIR");

  std::string image_path, roi_text;
  auto* score = app.add_subcommand("score", "Score a single image");
  score->add_option("image", image_path, "Image file")->required();
  score->add_option("--roi", roi_text, "Region of interest x,y,w,h");

  std::string hist_out;
  auto* histogram = app.add_subcommand("histogram", "Emit the 256-bin gradient PMF as TSV");
  histogram->add_option("image", image_path, "Image file")->required();
  histogram->add_option("--roi", roi_text, "Region of interest x,y,w,h");
  histogram->add_option("--out", hist_out, "Output file (default stdout)");

  std::string manifest_path, report_out, format = "json";
  auto* compare = app.add_subcommand("compare", "Score and compare a manifest of image pairs");
  compare->add_option("--manifest", manifest_path, "Pair manifest (CSV)")->required();
  compare->add_option("--out", report_out, "Report file (default stdout)");
  compare->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  compare->add_option("--label-a", config.label_a, "Label of side A")->capture_default_str();
  compare->add_option("--label-b", config.label_b, "Label of side B")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  std::optional<RoiRect> roi;
  try {
    app.parse(reversed);
    roi = parse_roi(roi_text);
    if (config.workers < 1) throw CLI::ValidationError("--workers", "must be >= 1");
    config.ecgi.highlight.validate();
    if (!(config.ecgi.quant_max > 0.0)) {
      throw CLI::ValidationError("--quant-max", "must be positive");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  config.ecgi.suppress_highlights = !no_mask;
  if (!dump_gradient.empty()) config.dump_gradient = dump_gradient;
  if (!dump_mask.empty()) config.dump_mask = dump_mask;
  if (!dump_pmf.empty()) config.dump_pmf = dump_pmf;
  config.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

  try {
    if (score->parsed() || histogram->parsed()) {
      const EcgiResult r = ecgi_score(load_region(image_path, roi), config.ecgi);
      dump_intermediates(r, config, safe_stem(std::filesystem::path(image_path).stem().string()));
      if (score->parsed()) {
        fmt::print(out, "image: {}\n", image_path);
        if (roi) {
          fmt::print(out, "roi: {},{},{},{}\n", roi->x, roi->y, roi->w, roi->h);
        } else {
          fmt::print(out, "roi: full\n");
        }
        fmt::print(out, "score: {}\n", format_score(r.score));
        fmt::print(out, "complemental_value: {:.6f}\n", r.complemental_value);
        fmt::print(out, "mask_pixels: {}\n", r.mask_pixel_count);
      } else if (hist_out.empty()) {
        write_pmf_tsv(out, r.pmf);
      } else {
        std::ofstream file(hist_out);
        if (!file) throw Error(ErrorCode::UnreadableFile, fmt::format("cannot write {}", hist_out));
        write_pmf_tsv(file, r.pmf);
      }
      return kExitOk;
    }

    const auto rows = read_manifest(manifest_path);
    const auto pairs = score_manifest(rows, config);
    const PairedReport summary = summarize(pairs);
    const std::string text = config.format == OutputFormat::Json
                                 ? render_json(config, pairs, summary)
                                 : render_csv(config, pairs, summary);
    if (report_out.empty()) {
      out << text;
    } else {
      std::ofstream file(report_out, std::ios::binary);
      if (!file) throw Error(ErrorCode::UnreadableFile, fmt::format("cannot write {}", report_out));
      file << text;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace ecgi::cli

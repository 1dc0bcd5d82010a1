#include "report.hpp"

#include <cmath>

#include <fmt/core.h>
#include <json.hpp>

namespace ecgi::cli {

namespace {

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

// Non-finite values are not valid JSON numbers; they are emitted as strings.
std::string json_number(const std::string& formatted, double v) {
  return std::isfinite(v) ? formatted : json_string(formatted);
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.4f}", v);
}

std::string score_json(double v) { return json_number(format_real(v), v); }

std::string boxplot_json(const BoxplotSummary& b, const std::string& indent) {
  std::string outliers;
  for (std::size_t i = 0; i < b.outliers.size(); ++i) {
    if (i) outliers += ", ";
    outliers += score_json(b.outliers[i]);
  }
  return fmt::format(
      "{{\n{0}  \"median\": {1},\n{0}  \"q25\": {2},\n{0}  \"q75\": {3},\n"
      "{0}  \"whisker_low\": {4},\n{0}  \"whisker_high\": {5},\n{0}  \"outliers\": [{6}]\n{0}}}",
      indent, score_json(b.median), score_json(b.q25), score_json(b.q75),
      score_json(b.whisker_low), score_json(b.whisker_high), outliers);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_score(double v) { return format_real(v); }

std::string format_p(double p) {
  if (p > 0.0 && p < 1e-4) return fmt::format("{:.6e}", p);
  return fmt::format("{:.6f}", p);
}

std::string render_json(const RunConfig& config, const std::vector<PairScore>& pairs,
                        const PairedReport& summary) {
  const HighlightParams& h = config.ecgi.highlight;
  std::string out = "{\n  \"config\": {\n";
  out += fmt::format("    \"label_a\": {},\n", json_string(config.label_a));
  out += fmt::format("    \"label_b\": {},\n", json_string(config.label_b));
  out += fmt::format("    \"grad_threshold\": {},\n", h.validity_threshold);
  out += fmt::format("    \"area_min\": {},\n", h.area_min);
  out += fmt::format("    \"area_max\": {},\n", h.area_max);
  out += fmt::format("    \"mser_delta\": {},\n", h.mser_delta);
  out += fmt::format("    \"mser_max_variation\": {},\n", h.mser_max_variation);
  out += fmt::format("    \"closing_radius\": {},\n", h.closing_radius);
  out += fmt::format("    \"lum_threshold\": {},\n", h.luminance_threshold);
  out += fmt::format("    \"quant_max\": {},\n", config.ecgi.quant_max);
  out += fmt::format("    \"highlight_mask\": {},\n",
                     config.ecgi.suppress_highlights ? "true" : "false");
  out += "    \"test\": \"paired t-test, two-tailed\"\n  },\n";

  out += "  \"pairs\": [";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const PairScore& p = pairs[i];
    out += i ? ",\n" : "\n";
    out += fmt::format("    {{\"pair_id\": {}, \"s_a\": {}, \"s_b\": {}, \"delta\": {}}}",
                       json_string(p.pair_id), score_json(p.s_a), score_json(p.s_b),
                       score_json(p.delta()));
  }
  out += pairs.empty() ? "],\n" : "\n  ],\n";

  out += "  \"summary\": {\n";
  out += fmt::format("    \"n\": {},\n", summary.n);
  out += fmt::format("    \"mean_a\": {},\n", score_json(summary.mean_a));
  out += fmt::format("    \"mean_b\": {},\n", score_json(summary.mean_b));
  out += fmt::format("    \"t\": {},\n", score_json(summary.test.t));
  out += fmt::format("    \"df\": {},\n", summary.test.df);
  out += fmt::format("    \"p\": {},\n", format_p(summary.test.p));
  out += fmt::format("    \"pct_a_greater\": {},\n", score_json(summary.pct_a_greater));
  out += fmt::format("    \"pct_ties\": {},\n", score_json(summary.pct_ties));
  out += fmt::format("    \"boxplot_a\": {},\n", boxplot_json(summary.boxplot_a, "    "));
  out += fmt::format("    \"boxplot_b\": {}\n", boxplot_json(summary.boxplot_b, "    "));
  out += "  }\n}\n";
  return out;
}

std::string render_csv(const RunConfig& config, const std::vector<PairScore>& pairs,
                       const PairedReport& summary) {
  std::string out = "pair_id,s_a,s_b,delta\n";
  for (const PairScore& p : pairs) {
    out += fmt::format("{},{},{},{}\n", csv_field(p.pair_id), format_score(p.s_a),
                       format_score(p.s_b), format_score(p.delta()));
  }
  out += fmt::format("# label_a={} label_b={}\n", config.label_a, config.label_b);
  out += fmt::format("# n={} mean_a={} mean_b={}\n", summary.n, format_score(summary.mean_a),
                     format_score(summary.mean_b));
  out += fmt::format("# t={} df={} p={} (two-tailed)\n", format_score(summary.test.t),
                     summary.test.df, format_p(summary.test.p));
  out += fmt::format("# pct_a_greater={} pct_ties={}\n", format_score(summary.pct_a_greater),
                     format_score(summary.pct_ties));
  return out;
}

}  // namespace ecgi::cli

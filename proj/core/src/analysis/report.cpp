// Copyright 2026 The revcor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "revcor/analysis/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "common/text.hpp"
#include "revcor/error.hpp"
#include "revcor/profile/profile_io.hpp"

namespace revcor::analysis {
namespace {

using profile::format_number;

constexpr double kPanelWidth = 420.0;
constexpr double kPanelHeight = 300.0;
constexpr double kMarginLeft = 56.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 44.0;
constexpr const char* kColourA = "#1f77b4";
constexpr const char* kColourB = "#d62728";

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Scale {
  double x0, x1, y0, y1;    // data range
  double left, top, w, h;   // pixel box

  double x(double v) const { return x1 == x0 ? left + w / 2 : left + (v - x0) / (x1 - x0) * w; }
  double y(double v) const { return top + (y1 - v) / (y1 - y0) * h; }
};

void panel(std::string& svg, const GroupStats& g, const Labels& labels, std::string_view title,
           double offset_x) {
  const auto& segs = g.segments;
  double extent = 0.0;
  for (const auto& s : segs) {
    for (double v : {s.mean_a + s.ci95_a, s.mean_a - s.ci95_a, s.mean_b + s.ci95_b,
                     s.mean_b - s.ci95_b}) {
      if (std::isfinite(v)) extent = std::max(extent, std::abs(v));
    }
  }
  extent = extent > 0.0 ? extent * 1.2 : 1.0;
  const Scale sc{segs.empty() ? 0.0 : segs.front().time_s,
                 segs.empty() ? 1.0 : segs.back().time_s,
                 -extent,
                 extent,
                 offset_x + kMarginLeft,
                 kMarginTop,
                 kPanelWidth - kMarginLeft - kMarginRight,
                 kPanelHeight - kMarginTop - kMarginBottom};

  svg += fmt::format("<g class=\"panel\" data-domain=\"{}\">\n", to_string(g.domain));
  svg += fmt::format(
      "<text x=\"{:.2f}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
      sc.left + sc.w / 2, title);
  svg += fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
      "stroke=\"#888\"/>\n",
      sc.left, sc.top, sc.w, sc.h);
  svg += fmt::format(
      "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#bbb\" "
      "stroke-dasharray=\"4 3\"/>\n",
      sc.left, sc.y(0.0), sc.left + sc.w, sc.y(0.0));
  for (const auto& s : segs) {
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"10\">{:.1f}</text>\n",
        sc.x(s.time_s), sc.top + sc.h + 14, s.time_s);
  }
  for (double v : {-extent / 1.2, 0.0, extent / 1.2}) {
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"10\">{:.1f}</text>\n",
        sc.left - 4, sc.y(v) + 3, v);
  }
  svg += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"11\">time (s)</text>\n",
      sc.left + sc.w / 2, kPanelHeight - 6);

  for (int option = 0; option < 2; ++option) {
    const char* colour = option == 0 ? kColourA : kColourB;
    const auto mean = [&](const SegmentStats& s) { return option == 0 ? s.mean_a : s.mean_b; };
    const auto ci = [&](const SegmentStats& s) { return option == 0 ? s.ci95_a : s.ci95_b; };

    std::string band, line;
    for (const auto& s : segs) {
      band += fmt::format("{:.2f},{:.2f} ", sc.x(s.time_s), sc.y(mean(s) + ci(s)));
    }
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
      band += fmt::format("{:.2f},{:.2f} ", sc.x(it->time_s), sc.y(mean(*it) - ci(*it)));
    }
    for (const auto& s : segs) line += fmt::format("{:.2f},{:.2f} ", sc.x(s.time_s), sc.y(mean(s)));
    if (!band.empty()) band.pop_back();
    if (!line.empty()) line.pop_back();

    svg += fmt::format("<polygon class=\"ci-{}\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.2\" "
                       "stroke=\"none\"/>\n",
                       option == 0 ? 'a' : 'b', band, colour);
    svg += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                       line, colour);
    for (const auto& s : segs) {
      svg += fmt::format(
          "<circle class=\"point-{}\" data-t=\"{:.1f}\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" "
          "fill=\"{}\"/>\n",
          option == 0 ? 'a' : 'b', s.time_s, sc.x(s.time_s), sc.y(mean(s)), colour);
    }
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" fill=\"{}\">{}</text>\n",
        sc.left + 6, sc.top + 14 + 14 * option, colour, xml_escape(labels[option]));
  }
  for (const auto& s : segs) {
    if (!s.significant) continue;
    svg += fmt::format(
        "<text class=\"star\" data-t=\"{:.1f}\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" "
        "font-size=\"14\">*</text>\n",
        s.time_s, sc.x(s.time_s), sc.top - 4);
  }
  svg += "</g>\n";
}

}  // namespace

std::string stats_to_csv(const GroupStats& pitch, const GroupStats& rate) {
  std::string out = "segment_time_s,domain,mean_A,mean_B,ci_A,ci_B,t,df,p,significant\n";
  for (const auto* g : {&pitch, &rate}) {
    for (const auto& s : g->segments) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", format_number(s.time_s),
                         to_string(g->domain), format_number(s.mean_a), format_number(s.mean_b),
                         format_number(s.ci95_a), format_number(s.ci95_b), format_number(s.t),
                         format_number(s.df), format_number(s.p), s.significant ? 1 : 0);
    }
  }
  return out;
}

std::string kernels_to_csv(std::span<const ParticipantKernels> kernels, const Labels& labels) {
  std::string out = "participant_id,domain,option,segment,value\n";
  for (const auto& p : kernels) {
    for (const auto& k : p.kernels(labels)) {
      for (std::size_t i = 0; i < k.values.size(); ++i) {
        out += fmt::format("{},{},{},{},{}\n", detail::csv_escape(k.participant_id),
                           to_string(k.domain), detail::csv_escape(k.option), i,
                           format_number(k.values[i]));
      }
    }
  }
  return out;
}

std::string bias_to_csv(const AnalysisResult& result) {
  std::string out =
      "group,label_A,label_B,count_A,count_B,proportion_A,proportion_B,n_trials\n";
  auto row = [&](std::string_view group, const BiasReport& b) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", detail::csv_escape(group),
                       detail::csv_escape(b.labels[0]), detail::csv_escape(b.labels[1]),
                       b.counts[0], b.counts[1], format_number(b.proportions[0]),
                       format_number(b.proportions[1]), b.n_trials);
  };
  row("all", result.overall);
  for (const auto& [group, b] : result.per_group_bias) row(group, b);
  return out;
}

std::string render_kernel_svg(const GroupStats& pitch, const GroupStats& rate,
                              const Labels& labels) {
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\">\n",
      2 * kPanelWidth, kPanelHeight);
  svg += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", 2 * kPanelWidth,
                     kPanelHeight);
  panel(svg, pitch, labels, "pitch", 0.0);
  panel(svg, rate, labels, "speech rate", kPanelWidth);
  svg += "</svg>\n";
  return svg;
}

void export_results(const AnalysisResult& result, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw Error(Errc::io_error, "cannot create output directory " + out_dir.string());
  }
  detail::write_file_atomic(out_dir / "stats.csv", stats_to_csv(result.pitch, result.rate));
  detail::write_file_atomic(out_dir / "kernels.csv", kernels_to_csv(result.kernels, result.labels));
  detail::write_file_atomic(out_dir / "bias.csv", bias_to_csv(result));
  detail::write_file_atomic(out_dir / "kernels.svg",
                            render_kernel_svg(result.pitch, result.rate, result.labels));
}

}  // namespace revcor::analysis

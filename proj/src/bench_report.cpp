// Copyright 2026 The SCORE Authors
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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "score/bench.hpp"
#include "score/error.hpp"

namespace score::bench {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double to_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    // from_chars rejects "nan"/"inf" spellings produced by some writers.
    if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
    throw ConfigError("CSV line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

std::uint64_t to_uint(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("CSV line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return v;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_trace_csv(const std::vector<ConvergenceTrace>& traces) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& t : traces) {
    for (const auto& r : t.rows) {
      out += t.method + ',' + std::to_string(t.seed) + ',' + std::to_string(r.iteration) + ',' +
             std::to_string(r.evals) + ',' + fmt(r.best_value) + ',' + fmt(r.iter_time_ms) +
             ',' + fmt(r.cum_time_ms) + '\n';
    }
  }
  return out;
}

std::vector<ConvergenceTrace> parse_trace_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw ConfigError(std::string("CSV header must be '") + kCsvHeader + "'");
  }
  std::vector<ConvergenceTrace> traces;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 7) {
      throw ConfigError("CSV line " + std::to_string(lineno) + ": expected 7 fields");
    }
    const std::uint64_t seed = to_uint(f[1], lineno);
    if (traces.empty() || traces.back().method != f[0] || traces.back().seed != seed) {
      ConvergenceTrace t;
      t.method = f[0];
      t.seed = seed;
      traces.push_back(std::move(t));
    }
    TraceRow r;
    r.iteration = to_uint(f[2], lineno);
    r.evals = to_uint(f[3], lineno);
    r.best_value = to_double(f[4], lineno);
    r.iter_time_ms = to_double(f[5], lineno);
    r.cum_time_ms = to_double(f[6], lineno);
    traces.back().rows.push_back(r);
  }
  return traces;
}

void write_trace_csv(const std::string& path, const std::vector<ConvergenceTrace>& traces) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << format_trace_csv(traces);
  if (!out) throw IoError("error writing '" + path + "'");
}

std::vector<ConvergenceTrace> read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_trace_csv(ss.str());
}

std::string format_fit_csv(const std::vector<ConvergenceTrace>& traces) {
  std::string out = "method,seed,iteration,train_size,fit_time_ms,gp_fits\n";
  for (const auto& t : traces) {
    for (const auto& r : t.rows) {
      out += t.method + ',' + std::to_string(t.seed) + ',' + std::to_string(r.iteration) + ',' +
             std::to_string(r.train_size) + ',' + fmt(r.fit_time_ms) + ',' +
             std::to_string(r.gp_fits) + '\n';
    }
  }
  return out;
}

std::string render_svg(const std::vector<ConvergenceTrace>& traces, ReportKind kind) {
  constexpr double kW = 800, kH = 480, kLeft = 80, kRight = 190, kTop = 40, kBottom = 60;
  const bool timing = kind == ReportKind::kTiming;
  const std::string x_label = timing ? "iteration" : "evals";
  const std::string y_label = timing ? "cum_time_ms" : "best_value";

  auto xv = [&](const TraceRow& r) {
    return timing ? static_cast<double>(r.iteration) : static_cast<double>(r.evals);
  };
  auto yv = [&](const TraceRow& r) { return timing ? r.cum_time_ms : r.best_value; };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& t : traces) {
    for (const auto& r : t.rows) {
      if (!std::isfinite(yv(r))) continue;
      x0 = std::min(x0, xv(r));
      x1 = std::max(x1, xv(r));
      y0 = std::min(y0, yv(r));
      y1 = std::max(y1, yv(r));
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  if (y0 > 0 && y0 < 0.2 * y1) y0 = 0;

  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - y0) / (y1 - y0) * ph; };

  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  os << "<metadata id=\"plot-meta\">kind=" << (timing ? "timing" : "convergence")
     << ";x=" << x_label << ";y=" << y_label << "</metadata>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\">"
     << (timing ? "Cumulative time" : "Convergence") << "</text>\n";
  os << "<g stroke=\"black\" fill=\"none\">\n"
     << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
     << ph << "\"/>\n</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = x0 + (x1 - x0) * i / 5.0;
    const double fy = y0 + (y1 - y0) * i / 5.0;
    os << "<line x1=\"" << px(fx) << "\" y1=\"" << kTop + ph << "\" x2=\"" << px(fx)
       << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(fx) << "\" y=\"" << kTop + ph + 18
       << "\" text-anchor=\"middle\">" << fx << "</text>\n";
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << kLeft
       << "\" y2=\"" << py(fy) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\">"
       << fy << "</text>\n";
  }
  os << "<text id=\"x-label\" x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 15
     << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
  os << "<text id=\"y-label\" x=\"18\" y=\"" << kTop + ph / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
     << kTop + ph / 2 << ")\">" << y_label << "</text>\n</g>\n";

  for (std::size_t k = 0; k < traces.size(); ++k) {
    const auto& t = traces[k];
    const char* color = kColors[k % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& r : t.rows) {
      if (!std::isfinite(yv(r))) continue;
      os << (first ? "" : " ") << px(xv(r)) << ',' << py(yv(r));
      first = false;
    }
    os << "\"/>\n";
    const double ly = kTop + 12 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << kW - kRight + 15 << "\" y1=\"" << ly << "\" x2=\""
       << kW - kRight + 40 << "\" y2=\"" << ly << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text class=\"legend\" x=\"" << kW - kRight + 45 << "\" y=\"" << ly + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\">"
       << xml_escape(t.method + " seed " + std::to_string(t.seed)) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

ReportFiles emit_report(const std::vector<ConvergenceTrace>& traces, ReportKind kind,
                        const std::string& dir, const std::string& stem) {
  if (traces.empty()) throw ConfigError("report needs at least one trace");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir + "'");
  }
  ReportFiles files;
  files.csv = (std::filesystem::path(dir) / (stem + ".csv")).string();
  files.svg = (std::filesystem::path(dir) /
               (stem + (kind == ReportKind::kTiming ? "_timing.svg" : "_convergence.svg")))
                  .string();
  write_trace_csv(files.csv, traces);
  std::ofstream svg(files.svg, std::ios::binary);
  if (!svg) throw IoError("cannot write '" + files.svg + "'");
  svg << render_svg(traces, kind);
  if (!svg) throw IoError("error writing '" + files.svg + "'");
  return files;
}

}  // namespace score::bench

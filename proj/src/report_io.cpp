// Copyright 2026 The cutgraphon Authors.
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
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "cutgraphon/error.hpp"
#include "cutgraphon/experiments.hpp"
#include "cutgraphon/kernel_core.hpp"

namespace cutgraphon {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
  T v{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ValidationError("cannot parse " + what + " from '" + text + "'");
  }
  return v;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const bool first = seen.insert(key).second;
    auto items = split(value, ',');
    if (key == "n") {
      if (first) cfg.ns.clear();
      for (auto& s : items) cfg.ns.push_back(parse_number<int>(s, "n"));
    } else if (key == "k") {
      if (first) cfg.ks.clear();
      for (auto& s : items) cfg.ks.push_back(parse_number<int>(s, "k"));
    } else if (key == "rho") {
      if (first) cfg.rhos.clear();
      for (auto& s : items) cfg.rhos.push_back(parse_number<double>(s, "rho"));
    } else if (key == "estimator") {
      if (first) cfg.estimators.clear();
      for (auto& s : items) cfg.estimators.push_back(parse_estimator(s));
    } else if (key == "metric") {
      if (first) cfg.metrics.clear();
      for (auto& s : items) cfg.metrics.push_back(parse_risk_metric(s));
    } else if (!first) {
      throw ValidationError("config: key '" + key + "' given twice");
    } else if (key == "reps") {
      cfg.reps = parse_number<int>(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "restarts") {
      cfg.restarts = parse_number<int>(value, key);
    } else if (key == "distance_restarts") {
      cfg.distance_restarts = parse_number<int>(value, key);
    } else if (key == "cut_restarts") {
      cfg.cut_restarts = parse_number<int>(value, key);
    } else if (key == "blowup") {
      cfg.blowup = parse_number<int>(value, key);
    } else if (key == "svt_c") {
      cfg.svt_multiplier = parse_number<double>(value, key);
    } else if (key == "family") {
      cfg.family = value;
    } else if (key == "out") {
      cfg.out = value;
    } else {
      throw ValidationError("config: unknown key '" + key + "'");
    }
  }
  if (cfg.estimators.empty()) cfg.estimators.push_back(EstimatorKind::Adjacency);
  if (cfg.metrics.empty()) cfg.metrics.push_back(RiskMetric::Cut);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  return parse_config(in);
}

void write_csv(std::ostream& out, const RiskReport& report) {
  out << kCsvHeader << '\n';
  for (const RiskRow& r : report.rows) {
    out << r.n << ',' << r.k << ',' << format_double(r.rho) << ',' << r.estimator << ','
        << r.metric << ',' << format_double(r.mean_risk) << ',' << format_double(r.std_error)
        << ',' << r.reps << ',' << format_double(r.theory) << '\n';
  }
}

std::vector<RiskRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw ValidationError("csv: missing or wrong header");
  }
  std::vector<RiskRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 9) throw ValidationError("csv: expected 9 fields in '" + line + "'");
    auto real = [](const std::string& s) {
      if (s == "nan") return std::nan("");
      return parse_number<double>(s, "csv field");
    };
    RiskRow r;
    r.n = parse_number<int>(f[0], "n");
    r.k = parse_number<int>(f[1], "k");
    r.rho = real(f[2]);
    r.estimator = f[3];
    r.metric = f[4];
    r.mean_risk = real(f[5]);
    r.std_error = real(f[6]);
    r.reps = parse_number<int>(f[7], "reps");
    r.theory = real(f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_svg(std::ostream& out, const RiskReport& report) {
  constexpr double kWidth = 720.0;
  constexpr double kHeight = 480.0;
  constexpr double kLeft = 70.0;
  constexpr double kRight = 220.0;
  constexpr double kTop = 30.0;
  constexpr double kBottom = 50.0;
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

  std::set<int> distinct_n;
  for (const RiskRow& r : report.rows) distinct_n.insert(r.n);
  const bool along_n = distinct_n.size() >= 2;

  using Key = std::tuple<std::string, std::string, int, double>;
  std::map<Key, std::vector<const RiskRow*>> series;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const RiskRow& r : report.rows) {
    const double x = along_n ? r.n : r.k;
    Key key{r.estimator, r.metric, along_n ? r.k : r.n, r.rho};
    series[key].push_back(&r);
    for (double y : {r.mean_risk, r.theory}) {
      if (!(y > 0.0) || !(x > 0.0)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!(xmin <= xmax)) {
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\">no data</text>\n</svg>\n";
    return;
  }
  const double lx0 = std::log10(xmin);
  const double lx1 = xmax > xmin ? std::log10(xmax) : lx0 + 1.0;
  const double ly0 = std::log10(ymin);
  const double ly1 = ymax > ymin ? std::log10(ymax) : ly0 + 1.0;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
  auto py = [&](double y) { return kTop + ph - (std::log10(y) - ly0) / (ly1 - ly0) * ph; };

  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << (along_n ? "n" : "k") << " (log scale)</text>\n";
  out << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + ph / 2 << ")\">risk (log scale)</text>\n";
  out << "<text x=\"" << kLeft << "\" y=\"" << kTop + ph + 16 << "\">" << format_double(xmin)
      << "</text>\n";
  out << "<text x=\"" << kLeft + pw << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"end\">"
      << format_double(xmax) << "</text>\n";
  out << "<text x=\"" << kLeft - 4 << "\" y=\"" << kTop + ph << "\" text-anchor=\"end\">"
      << format_double(ymin) << "</text>\n";
  out << "<text x=\"" << kLeft - 4 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\">"
      << format_double(ymax) << "</text>\n";

  int index = 0;
  for (auto& [key, rows] : series) {
    std::sort(rows.begin(), rows.end(), [&](const RiskRow* a, const RiskRow* b) {
      return (along_n ? a->n : a->k) < (along_n ? b->n : b->k);
    });
    const char* color = kPalette[index % 8];
    std::ostringstream risk_pts, theory_pts;
    for (const RiskRow* r : rows) {
      const double x = along_n ? r->n : r->k;
      if (r->mean_risk > 0.0) {
        risk_pts << px(x) << ',' << py(r->mean_risk) << ' ';
        out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(r->mean_risk) << "\" r=\"3\" fill=\""
            << color << "\"/>\n";
      }
      if (r->theory > 0.0) theory_pts << px(x) << ',' << py(r->theory) << ' ';
    }
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
        << risk_pts.str() << "\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-dasharray=\"5,4\" points=\"" << theory_pts.str() << "\"/>\n";
    const double ly = kTop + 14.0 * index + 8.0;
    out << "<line x1=\"" << kWidth - kRight + 10 << "\" y1=\"" << ly << "\" x2=\""
        << kWidth - kRight + 30 << "\" y2=\"" << ly << "\" stroke=\"" << color << "\"/>\n";
    out << "<text x=\"" << kWidth - kRight + 34 << "\" y=\"" << ly + 4 << "\">"
        << std::get<0>(key) << ' ' << std::get<1>(key) << (along_n ? " k=" : " n=")
        << std::get<2>(key) << " rho=" << format_double(std::get<3>(key)) << "</text>\n";
    ++index;
  }
  out << "</g>\n</svg>\n";
}

void emit(const RiskReport& report, const std::string& format, const std::string& path) {
  if (format != "csv" && format != "svg") {
    throw ValidationError("unknown output format '" + format + "'");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  if (format == "csv") {
    write_csv(out, report);
  } else {
    write_svg(out, report);
  }
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace cutgraphon

// Copyright 2026 The airt-cpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "airt/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "airt/error.hpp"

namespace airt::report {
namespace {

using nlohmann::json;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double num_or_nan(const json& j) {
  return j.is_null() ? NAN : j.get<double>();
}

template <class Vec>
json array_of(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(v.size()); ++i)
    a.push_back(num(v[i]));
  return a;
}

Eigen::VectorXd vector_of(const json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (size_t i = 0; i < a.size(); ++i) v[i] = num_or_nan(a[i]);
  return v;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("report", "cannot write " + path.string());
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw LoadError("report", "write failed: " + path.string());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string join_warnings(const std::vector<std::string>& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "; " : "") + w[i];
  return s;
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

std::string safe_name(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
            c == '_' || c == '.')
               ? c
               : '_';
  return out.empty() ? "_" : out;
}

std::string indexed_name(int j, const std::string& name) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d_", j);
  return buf + safe_name(name);
}

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string svg_open(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(w) +
         "\" height=\"" + svg_num(h) + "\" viewBox=\"0 0 " + svg_num(w) + " " +
         svg_num(h) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[40];
  for (int p = 15; p <= 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string model_to_json(const crm::CrmModel& model) {
  json items = json::array();
  for (int j = 0; j < model.items(); ++j) {
    items.push_back({{"algorithm", model.algorithm_names[j]},
                     {"alpha", num(model.params.alpha[j])},
                     {"beta", num(model.params.beta[j])},
                     {"gamma", num(model.params.gamma[j])},
                     {"degenerate", static_cast<bool>(model.degenerate[j])}});
  }
  json warnings = json::array();
  for (const auto& w : model.warnings)
    warnings.push_back(
        {{"cycle", w.cycle}, {"item", w.item}, {"message", w.message}});
  json doc = {
      {"format", "airt-model"},
      {"version", 1},
      {"items", items},
      {"posterior",
       {{"mean", array_of(model.posterior.mean)},
        {"variance", num(model.posterior.variance)}}},
      {"theta", array_of(model.theta)},
      {"loglik_trace", array_of(model.loglik_trace)},
      {"converged", model.converged},
      {"cycles_used", model.cycles_used},
      {"warnings", warnings},
      {"prior", {{"mu", num(model.prior.mu)}, {"sigma", num(model.prior.sigma)}}},
      {"config",
       {{"max_cycles", model.config.max_cycles},
        {"loglik_tolerance", num(model.config.loglik_tolerance)},
        {"radicand_floor", num(model.config.radicand_floor)}}},
  };
  return doc.dump(2) + "\n";
}

crm::CrmModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("report", std::string("model JSON: ") + e.what(),
                     static_cast<long>(e.byte));
  }
  try {
    if (doc.value("format", "") != "airt-model")
      throw FormatError("report", "not an airt model document");
    crm::CrmModel m;
    const auto& items = doc.at("items");
    const int n = static_cast<int>(items.size());
    m.params = crm::ItemParameters(n);
    for (int j = 0; j < n; ++j) {
      const auto& it = items[j];
      m.algorithm_names.push_back(it.at("algorithm").get<std::string>());
      m.params.alpha[j] = num_or_nan(it.at("alpha"));
      m.params.beta[j] = num_or_nan(it.at("beta"));
      m.params.gamma[j] = num_or_nan(it.at("gamma"));
      m.degenerate.push_back(it.at("degenerate").get<bool>());
    }
    m.posterior.mean = vector_of(doc.at("posterior").at("mean"));
    m.posterior.variance = num_or_nan(doc.at("posterior").at("variance"));
    m.theta = vector_of(doc.at("theta"));
    for (const auto& v : doc.at("loglik_trace"))
      m.loglik_trace.push_back(num_or_nan(v));
    m.converged = doc.at("converged").get<bool>();
    m.cycles_used = doc.at("cycles_used").get<int>();
    for (const auto& w : doc.at("warnings"))
      m.warnings.push_back({w.at("cycle").get<int>(), w.at("item").get<int>(),
                            w.at("message").get<std::string>()});
    m.prior.mu = num_or_nan(doc.at("prior").at("mu"));
    m.prior.sigma = num_or_nan(doc.at("prior").at("sigma"));
    const auto& cfg = doc.at("config");
    m.config.max_cycles = cfg.at("max_cycles").get<int>();
    m.config.loglik_tolerance = num_or_nan(cfg.at("loglik_tolerance"));
    m.config.radicand_floor = num_or_nan(cfg.at("radicand_floor"));
    return m;
  } catch (const json::exception& e) {
    throw FormatError("report", std::string("model JSON: ") + e.what());
  }
}

void save_model(const crm::CrmModel& model, const fs::path& path) {
  write_text(path, model_to_json(model));
}

crm::CrmModel load_model(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("report", "cannot read " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return model_from_json(text);
}

std::string error_json(const std::exception& e) {
  json err = {{"message", e.what()}};
  if (const auto* ae = dynamic_cast<const Error*>(&e)) {
    err["module"] = ae->module();
    err["kind"] = ae->kind();
  } else {
    err["module"] = "runtime";
    err["kind"] = "internal";
  }
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err["line"] = pe->line();
    if (pe->column() >= 0) err["column"] = pe->column();
  }
  if (const auto* de = dynamic_cast<const DegenerateItemError*>(&e)) {
    err["algorithm"] = de->algorithm();
    err["index"] = de->index();
  }
  if (const auto* ne = dynamic_cast<const NumericalError*>(&e))
    err["cycle"] = ne->cycle();
  return json{{"error", err}}.dump() + "\n";
}

Written write_loglik_trace(const crm::CrmModel& model, const fs::path& path) {
  std::ostringstream s;
  s << "cycle,loglik\n";
  for (size_t k = 0; k < model.loglik_trace.size(); ++k)
    s << k << ',' << format_double(model.loglik_trace[k]) << '\n';
  write_text(path, s.str());
  return {path};
}

Written write_metrics(const std::vector<metrics::AlgorithmMetrics>& rows,
                      const fs::path& dir) {
  std::ostringstream csv;
  csv << "algorithm,consistency,anomalous,difficulty_limit,warnings\n";
  json doc = json::array();
  for (const auto& r : rows) {
    csv << csv_field(r.algorithm) << ',' << format_double(r.consistency) << ','
        << (r.anomalous ? "true" : "false") << ','
        << format_double(r.difficulty_limit) << ','
        << csv_field(join_warnings(r.warnings)) << '\n';
    doc.push_back({{"algorithm", r.algorithm},
                   {"consistency", num(r.consistency)},
                   {"anomalous", r.anomalous},
                   {"difficulty_limit", num(r.difficulty_limit)},
                   {"degenerate", r.degenerate},
                   {"warnings", r.warnings}});
  }
  const fs::path c = dir / "metrics.csv", j = dir / "metrics.json";
  write_text(c, csv.str());
  write_text(j, json{{"metrics", doc}}.dump(2) + "\n");
  return {c, j};
}

Written write_difficulty(const metrics::DatasetDifficulty& delta,
                         const std::vector<std::string>& instance_ids,
                         const fs::path& path) {
  std::ostringstream s;
  s << "instance,delta\n";
  for (Eigen::Index i = 0; i < delta.delta.size(); ++i) {
    const std::string id = i < static_cast<Eigen::Index>(instance_ids.size())
                               ? instance_ids[i]
                               : std::to_string(i);
    s << csv_field(id) << ',' << format_double(delta.delta[i]) << '\n';
  }
  write_text(path, s.str());
  return {path};
}

Written write_curves(const trait::TraitCurveSet& curves, const fs::path& dir) {
  const int n = curves.algorithms(), m = curves.points();
  std::ostringstream csv;
  csv << "delta";
  for (const auto& a : curves.algorithm_names) csv << ',' << csv_field(a);
  csv << '\n';
  for (int k = 0; k < m; ++k) {
    csv << format_double(curves.grid[k]);
    for (int j = 0; j < n; ++j) csv << ',' << format_double(curves.curves(j, k));
    csv << '\n';
  }

  const double W = 640, H = 400, L = 50, R = 180, T = 20, B = 40;
  const double x0 = curves.grid.front(), x1 = curves.grid.back();
  double y0 = std::min(0.0, curves.curves.minCoeff());
  double y1 = std::max(1.0, curves.curves.maxCoeff());
  auto px = [&](double x) {
    return L + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.5) * (W - L - R);
  };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  std::ostringstream svg;
  svg << svg_open(W, H);
  svg << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R
      << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  svg << "<text x=\"" << svg_num((L + W - R) / 2) << "\" y=\"" << H - 8
      << "\" text-anchor=\"middle\">dataset difficulty</text>\n";
  svg << "<text x=\"" << L << "\" y=\"" << H - B + 14
      << "\" text-anchor=\"middle\">" << svg_num(x0) << "</text>\n";
  svg << "<text x=\"" << W - R << "\" y=\"" << H - B + 14
      << "\" text-anchor=\"middle\">" << svg_num(x1) << "</text>\n";
  for (int j = 0; j < n; ++j) {
    const char* color = kPalette[j % kPalette.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (int k = 0; k < m; ++k)
      svg << (k ? " " : "") << svg_num(px(curves.grid[k])) << ','
          << svg_num(py(curves.curves(j, k)));
    svg << "\"/>\n";
    svg << "<text x=\"" << W - R + 8 << "\" y=\"" << T + 12 + 13 * j
        << "\" fill=\"" << color << "\">"
        << xml_escape(curves.algorithm_names[j]) << "</text>\n";
  }
  svg << "</svg>\n";

  const fs::path c = dir / "curves.csv", s = dir / "curves.svg";
  write_text(c, csv.str());
  write_text(s, svg.str());
  return {c, s};
}

Written write_strengths(const trait::StrengthReport& report,
                        const trait::TraitCurveSet& curves,
                        const std::string& tag, const fs::path& dir) {
  const int n = static_cast<int>(report.algorithm_names.size());
  const int m = curves.points();
  auto intervals = [](const std::vector<trait::Interval>& v) {
    json a = json::array();
    for (const auto& iv : v) a.push_back({{"lo", iv.lo}, {"hi", iv.hi}});
    return a;
  };
  json algs = json::array();
  for (int j = 0; j < n; ++j)
    algs.push_back({{"algorithm", report.algorithm_names[j]},
                    {"lto", report.lto[j]},
                    {"strengths", intervals(report.strengths[j])},
                    {"weaknesses", intervals(report.weaknesses[j])}});
  json doc = {{"epsilon", report.epsilon},
              {"grid",
               {{"lo", curves.grid.front()},
                {"hi", curves.grid.back()},
                {"points", m}}},
              {"algorithms", algs}};

  std::ostringstream mask;
  mask << "grid_index,delta,algorithm,strong,weak\n";
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < m; ++k)
      mask << k << ',' << format_double(curves.grid[k]) << ','
           << csv_field(report.algorithm_names[j]) << ','
           << (report.strong(j, k) ? 1 : 0) << ','
           << (report.weak(j, k) ? 1 : 0) << '\n';

  // Two horizontal bars per algorithm: strengths above, weaknesses below.
  const double L = 170, R = 20, T = 30, B = 40, row = 26, W = 720;
  const double H = T + B + row * n;
  const double x0 = curves.grid.front(), x1 = curves.grid.back();
  auto px = [&](double x) {
    return L + (x1 > x0 ? (x - x0) / (x1 - x0) : 0.0) * (W - L - R);
  };
  std::ostringstream svg;
  svg << svg_open(W, H);
  svg << "<text x=\"" << L << "\" y=\"18\">epsilon = "
      << xml_escape(format_double(report.epsilon))
      << " (green: strength, red: weakness)</text>\n";
  for (int j = 0; j < n; ++j) {
    const double y = T + row * j;
    svg << "<text x=\"" << L - 6 << "\" y=\"" << svg_num(y + 15)
        << "\" text-anchor=\"end\">" << xml_escape(report.algorithm_names[j])
        << "</text>\n";
    auto bars = [&](const std::vector<trait::Interval>& v, double dy,
                    const char* color) {
      for (const auto& iv : v)
        svg << "<rect x=\"" << svg_num(px(iv.lo)) << "\" y=\""
            << svg_num(y + dy) << "\" width=\""
            << svg_num(std::max(1.0, px(iv.hi) - px(iv.lo)))
            << "\" height=\"10\" fill=\"" << color << "\"/>\n";
    };
    bars(report.strengths[j], 2, "#2ca02c");
    bars(report.weaknesses[j], 12, "#d62728");
  }
  svg << "<line x1=\"" << L << "\" y1=\"" << H - B + 4 << "\" x2=\"" << W - R
      << "\" y2=\"" << H - B + 4 << "\" stroke=\"#444\"/>\n";
  svg << "<text x=\"" << L << "\" y=\"" << H - B + 18
      << "\" text-anchor=\"middle\">" << svg_num(x0) << "</text>\n";
  svg << "<text x=\"" << W - R << "\" y=\"" << H - B + 18
      << "\" text-anchor=\"middle\">" << svg_num(x1) << "</text>\n";
  svg << "<text x=\"" << svg_num((L + W - R) / 2) << "\" y=\"" << H - 6
      << "\" text-anchor=\"middle\">dataset difficulty</text>\n";
  svg << "</svg>\n";

  const fs::path j = dir / ("strengths_" + tag + ".json");
  const fs::path c = dir / ("strengths_mask_" + tag + ".csv");
  const fs::path s = dir / ("strengths_" + tag + ".svg");
  write_text(j, doc.dump(2) + "\n");
  write_text(c, mask.str());
  write_text(s, svg.str());
  return {j, c, s};
}

Written write_lto_table(const std::vector<trait::StrengthReport>& reports,
                        const fs::path& path) {
  std::ostringstream s;
  s << "algorithm";
  for (const auto& r : reports) s << ",lto_eps" << format_double(r.epsilon);
  s << '\n';
  if (!reports.empty()) {
    const auto& names = reports.front().algorithm_names;
    for (size_t j = 0; j < names.size(); ++j) {
      s << csv_field(names[j]);
      for (const auto& r : reports) s << ',' << format_double(r.lto[j]);
      s << '\n';
    }
  }
  write_text(path, s.str());
  return {path};
}

Written write_goodness(const goodness::GoodnessReport& report,
                       const fs::path& dir) {
  Written out;
  std::ostringstream csv, scatter;
  csv << "algorithm,mse,aucdf,auaec,aupec,abs_diff,warnings\n";
  scatter << "algorithm,auaec,aupec\n";
  json rows = json::array();
  for (size_t j = 0; j < report.rows.size(); ++j) {
    const auto& r = report.rows[j];
    csv << csv_field(r.algorithm) << ',' << format_double(r.mse) << ','
        << format_double(r.aucdf) << ',' << format_double(r.auaec) << ','
        << format_double(r.aupec) << ',' << format_double(r.abs_diff) << ','
        << csv_field(join_warnings(r.warnings)) << '\n';
    scatter << csv_field(r.algorithm) << ',' << format_double(r.auaec) << ','
            << format_double(r.aupec) << '\n';
    rows.push_back({{"algorithm", r.algorithm},
                    {"mse", num(r.mse)},
                    {"aucdf", num(r.aucdf)},
                    {"auaec", num(r.auaec)},
                    {"aupec", num(r.aupec)},
                    {"abs_diff", num(r.abs_diff)},
                    {"warnings", r.warnings}});
  }
  out.push_back(dir / "goodness.csv");
  write_text(out.back(), csv.str());
  out.push_back(dir / "goodness.json");
  write_text(out.back(), json{{"goodness", rows}}.dump(2) + "\n");
  out.push_back(dir / "goodness_scatter.csv");
  write_text(out.back(), scatter.str());

  for (size_t j = 0; j < report.rows.size(); ++j) {
    std::ostringstream c;
    c << "curve,level,fraction\n";
    for (const auto* curve : {&report.actual[j], &report.predicted[j]}) {
      const char* kind =
          curve->kind == goodness::CurveKind::kActual ? "actual" : "predicted";
      for (const auto& [l, f] : curve->points)
        c << kind << ',' << format_double(l) << ',' << format_double(f) << '\n';
    }
    // Empirical CDF of the scaled absolute residuals.
    const Eigen::VectorXd rho = report.residuals.rho.col(
        static_cast<Eigen::Index>(j));
    std::vector<double> sorted(rho.data(), rho.data() + rho.size());
    std::sort(sorted.begin(), sorted.end());
    c << "residual_cdf,0," << format_double(0.0) << '\n';
    for (size_t i = 0; i < sorted.size(); ++i)
      if (i + 1 == sorted.size() || sorted[i + 1] != sorted[i])
        c << "residual_cdf," << format_double(sorted[i]) << ','
          << format_double(static_cast<double>(i + 1) / sorted.size()) << '\n';
    out.push_back(dir / "goodness_curves" /
                  (indexed_name(static_cast<int>(j), report.rows[j].algorithm) +
                   ".csv"));
    write_text(out.back(), c.str());
  }
  return out;
}

Written write_heatmap(const std::string& algorithm,
                      const std::vector<double>& z_grid,
                      const std::vector<double>& theta_grid,
                      const Eigen::MatrixXd& density, const fs::path& dir) {
  std::ostringstream csv;
  csv << "z,theta,density\n";
  for (size_t a = 0; a < z_grid.size(); ++a)
    for (size_t b = 0; b < theta_grid.size(); ++b)
      csv << format_double(z_grid[a]) << ',' << format_double(theta_grid[b])
          << ',' << format_double(density(a, b)) << '\n';

  const double cell = 6, L = 50, T = 30, B = 40, R = 20;
  const double W = L + R + cell * theta_grid.size();
  const double H = T + B + cell * z_grid.size();
  const double peak = density.size() ? density.maxCoeff() : 0.0;
  std::ostringstream svg;
  svg << svg_open(W, H);
  svg << "<text x=\"" << L << "\" y=\"18\">" << xml_escape(algorithm)
      << "</text>\n";
  for (size_t a = 0; a < z_grid.size(); ++a) {
    for (size_t b = 0; b < theta_grid.size(); ++b) {
      const double t = peak > 0 ? density(a, b) / peak : 0.0;
      const int shade = static_cast<int>(std::lround(255 * (1.0 - t)));
      char color[8];
      std::snprintf(color, sizeof color, "#%02x%02xff", shade, shade);
      // Row 0 of the grid (smallest z) sits at the bottom.
      svg << "<rect x=\"" << svg_num(L + cell * b) << "\" y=\""
          << svg_num(T + cell * (z_grid.size() - 1 - a)) << "\" width=\""
          << cell << "\" height=\"" << cell << "\" fill=\"" << color
          << "\"/>\n";
    }
  }
  svg << "<text x=\"" << svg_num(L + cell * theta_grid.size() / 2) << "\" y=\""
      << H - 8 << "\" text-anchor=\"middle\">theta</text>\n";
  svg << "<text x=\"14\" y=\"" << svg_num(T + cell * z_grid.size() / 2)
      << "\">z</text>\n";
  svg << "</svg>\n";

  const std::string base = "heatmap_" + safe_name(algorithm);
  const fs::path c = dir / (base + ".csv"), s = dir / (base + ".svg");
  write_text(c, csv.str());
  write_text(s, svg.str());
  return {c, s};
}

Written write_comparison(const portfolio::PortfolioComparison& cmp,
                         const fs::path& dir) {
  std::ostringstream csv, plot;
  csv << "method,n,mean_gap,stderr,folds_realized\n";
  plot << "method,n,mean_gap,lower,upper\n";
  json entries = json::array();
  for (const auto& e : cmp.entries) {
    const char* method = portfolio::to_string(e.method);
    csv << method << ',' << e.n << ',' << format_double(e.mean_gap) << ','
        << format_double(e.stderr_gap) << ',' << e.folds_realized << '\n';
    const double se = std::isfinite(e.stderr_gap) ? e.stderr_gap : 0.0;
    plot << method << ',' << e.n << ',' << format_double(e.mean_gap) << ','
         << format_double(e.mean_gap - se) << ','
         << format_double(e.mean_gap + se) << '\n';
    entries.push_back({{"method", method},
                       {"n", e.n},
                       {"mean_gap", num(e.mean_gap)},
                       {"stderr", num(e.stderr_gap)},
                       {"folds_realized", e.folds_realized}});
  }
  auto names = [&](const std::vector<int>& idx) {
    json a = json::array();
    for (int j : idx) a.push_back(cmp.algorithm_names[j]);
    return a;
  };
  json folds = json::array();
  for (size_t f = 0; f < cmp.fold_results.size(); ++f) {
    const auto& r = cmp.fold_results[f];
    folds.push_back({{"fold", f},
                     {"test_instances", r.test_rows.size()},
                     {"limit", r.limit},
                     {"airt", names(r.airt)},
                     {"shapley", names(r.shapley)},
                     {"topset", names(r.topset)}});
  }
  json doc = {{"epsilon", cmp.epsilon},
              {"folds", cmp.folds},
              {"seed", cmp.seed},
              {"entries", entries},
              {"fold_details", folds}};
  const fs::path c = dir / "comparison.csv", j = dir / "comparison.json",
                 p = dir / "comparison_plot.csv";
  write_text(c, csv.str());
  write_text(j, doc.dump(2) + "\n");
  write_text(p, plot.str());
  return {c, j, p};
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("report", "cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw LoadError("report", "SHA-256 unavailable");
  }
  std::array<char, 1 << 15> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0)
      EVP_DigestUpdate(ctx, buf.data(), static_cast<size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char b[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(b, sizeof b, "%02x", md[i]);
    hex += b;
  }
  return hex;
}

fs::path write_manifest(const Written& files, const fs::path& dir) {
  std::vector<std::string> rel;
  for (const auto& f : files)
    rel.push_back(fs::relative(f, dir).generic_string());
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  json list = json::array();
  for (const auto& r : rel)
    list.push_back({{"path", r},
                    {"bytes", fs::file_size(dir / r)},
                    {"sha256", sha256_file(dir / r)}});
  const fs::path path = dir / "manifest.json";
  write_text(path, json{{"artifacts", list}}.dump(2) + "\n");
  return path;
}

}  // namespace airt::report

#include "stylekit/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "stylekit/common.hpp"

namespace stylekit {

double semantic_score(std::span<const double> generated, std::span<const double> neutral) {
  return cosine(generated, neutral);
}

double style_score(std::span<const double> generated, std::span<const double> centroid) {
  return cosine(generated, centroid);
}

double valid_style_score(const ScoredSample& sample, double tau) {
  return sample.semantic > tau ? sample.style_raw : 0.0;
}

double h_score(double semantic, double style_raw) {
  if (semantic < 0.0 || style_raw < 0.0) {
    throw validation_error("h_score: inputs must be non-negative");
  }
  const double sum = semantic + style_raw;
  if (sum == 0.0) return 0.0;
  return 2.0 * semantic * style_raw / sum;
}

std::vector<TauRow> tau_sensitivity(const std::vector<ScoredSample>& samples,
                                    const std::vector<double>& taus) {
  if (samples.empty()) throw validation_error("tau_sensitivity: no samples");
  if (taus.empty()) throw validation_error("tau_sensitivity: no thresholds");
  std::vector<TauRow> rows;
  rows.reserve(taus.size());
  for (double tau : taus) {
    double sum = 0.0;
    for (const auto& s : samples) sum += valid_style_score(s, tau);
    rows.push_back({tau, sum / static_cast<double>(samples.size())});
  }
  return rows;
}

namespace {

bool dominates(const ParetoPoint& q, const ParetoPoint& p) {
  return q.semantic >= p.semantic && q.style >= p.style &&
         (q.semantic > p.semantic || q.style > p.style);
}

}  // namespace

std::vector<ParetoPoint> pareto_frontier(const std::vector<ParetoPoint>& points) {
  std::vector<ParetoPoint> frontier;
  for (const auto& p : points) {
    bool dominated = false;
    for (const auto& q : points) {
      if (dominates(q, p)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) frontier.push_back(p);
  }
  std::sort(frontier.begin(), frontier.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    if (a.semantic != b.semantic) return a.semantic > b.semantic;
    if (a.style != b.style) return a.style > b.style;
    return a.label < b.label;
  });
  return frontier;
}

std::vector<ParetoPoint> high_fidelity_filter(const std::vector<ParetoPoint>& points, double floor) {
  std::vector<ParetoPoint> kept;
  for (const auto& p : points) {
    if (p.semantic >= floor) kept.push_back(p);
  }
  return kept;
}

MetricReport aggregate_report(const std::vector<ScoredSample>& samples, double tau) {
  if (samples.empty()) throw validation_error("aggregate_report: no samples");
  MetricReport report;
  report.tau = tau;
  report.samples = samples.size();
  for (const auto& s : samples) {
    report.mean_semantic += s.semantic;
    report.mean_style_raw += s.style_raw;
    report.mean_valid_style += valid_style_score(s, tau);
    double sem = s.semantic;
    double sty = s.style_raw;
    if (sem < 0.0 || sty < 0.0) {
      ++report.clamped_h_inputs;
      sem = std::max(sem, 0.0);
      sty = std::max(sty, 0.0);
    }
    report.mean_h_score += h_score(sem, sty);
  }
  const double n = static_cast<double>(samples.size());
  report.mean_semantic /= n;
  report.mean_style_raw /= n;
  report.mean_h_score /= n;
  report.mean_valid_style /= n;
  return report;
}

std::vector<ScoredSample> load_scored_samples(const std::string& path) {
  std::vector<ScoredSample> samples;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw validation_error(path + ":" + std::to_string(line_no) +
                             ": expected \"id,semantic,style_raw\"");
    }
    if (line_no == 1 && fields[0] == "id") continue;  // header
    ScoredSample s;
    s.id = fields[0];
    s.semantic = parse_double(fields[1], "semantic score");
    s.style_raw = parse_double(fields[2], "style score");
    if (!std::isfinite(s.semantic) || !std::isfinite(s.style_raw)) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": non-finite score");
    }
    samples.push_back(std::move(s));
  }
  if (samples.empty()) throw validation_error(path + ": no scored samples");
  return samples;
}

std::vector<ParetoPoint> load_points(const std::string& path) {
  std::vector<ParetoPoint> points;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw validation_error(path + ":" + std::to_string(line_no) +
                             ": expected \"label,semantic,style\"");
    }
    if (line_no == 1 && fields[0] == "label") continue;  // header
    ParetoPoint p;
    p.label = fields[0];
    p.semantic = parse_double(fields[1], "semantic");
    p.style = parse_double(fields[2], "style");
    points.push_back(std::move(p));
  }
  if (points.empty()) throw validation_error(path + ": no points");
  return points;
}

void write_report_csv(const MetricReport& report, const std::string& path) {
  // Column order mirrors the automatic-evaluation table layout. H-Score is a
  // harmonic mean of the per-sample scores; clamped_h_inputs > 0 marks
  // negative scores that were floored at zero for it.
  std::string out = "Semantic,Style(Raw),H-Score,Valid Style,tau,samples,clamped_h_inputs\n";
  out += format_fixed(report.mean_semantic, 4);
  out += ',';
  out += format_fixed(report.mean_style_raw, 4);
  out += ',';
  out += format_fixed(report.mean_h_score, 4);
  out += ',';
  out += format_fixed(report.mean_valid_style, 4);
  out += ',';
  out += format_fixed(report.tau, 2);
  out += ',';
  out += std::to_string(report.samples);
  out += ',';
  out += std::to_string(report.clamped_h_inputs);
  out += '\n';
  write_file(path, out);
}

void write_tau_csv(const std::vector<TauRow>& rows, const std::string& path) {
  std::string out = "tau,mean_valid_style\n";
  for (const auto& row : rows) {
    out += format_fixed(row.tau, 2);
    out += ',';
    out += format_fixed(row.mean_valid_style);
    out += '\n';
  }
  write_file(path, out);
}

void write_frontier_csv(const std::vector<ParetoPoint>& points,
                        const std::vector<ParetoPoint>& frontier, const std::string& path) {
  auto on_frontier = [&frontier](const ParetoPoint& p) {
    for (const auto& f : frontier) {
      if (f.label == p.label && f.semantic == p.semantic && f.style == p.style) return true;
    }
    return false;
  };
  std::string out = "label,semantic,style,on_frontier\n";
  for (const auto& p : points) {
    out += p.label;
    out += ',';
    out += format_fixed(p.semantic, 4);
    out += ',';
    out += format_fixed(p.style, 4);
    out += ',';
    out += on_frontier(p) ? "1" : "0";
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace stylekit

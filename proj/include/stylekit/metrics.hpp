#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace stylekit {

struct ScoredSample {
  std::string id;
  double semantic = 0.0;   // cosine vs the neutral input
  double style_raw = 0.0;  // style similarity vs the character centroid
};

double semantic_score(std::span<const double> generated, std::span<const double> neutral);
double style_score(std::span<const double> generated, std::span<const double> centroid);

// style_raw gated to zero unless semantic strictly exceeds tau.
double valid_style_score(const ScoredSample& sample, double tau = 0.75);

// Harmonic mean 2ab/(a+b); 0 when a+b = 0. Inputs must be non-negative.
double h_score(double semantic, double style_raw);

struct TauRow {
  double tau = 0.0;
  double mean_valid_style = 0.0;
};

std::vector<TauRow> tau_sensitivity(const std::vector<ScoredSample>& samples,
                                    const std::vector<double>& taus = {0.70, 0.75, 0.80});

struct ParetoPoint {
  double semantic = 0.0;
  double style = 0.0;
  std::string label;
};

// Non-dominated subset: p survives iff no q has q.semantic >= p.semantic and
// q.style >= p.style with at least one strict. Exact duplicates all survive.
// Result sorted by semantic descending.
std::vector<ParetoPoint> pareto_frontier(const std::vector<ParetoPoint>& points);

std::vector<ParetoPoint> high_fidelity_filter(const std::vector<ParetoPoint>& points,
                                              double floor = 0.75);

struct MetricReport {
  double mean_semantic = 0.0;
  double mean_style_raw = 0.0;
  double mean_h_score = 0.0;
  double mean_valid_style = 0.0;
  double tau = 0.75;
  std::size_t samples = 0;
  // Samples whose semantic or style was negative and got clamped to 0 for the
  // per-sample H computation; nonzero values flag that H is only a proxy.
  std::size_t clamped_h_inputs = 0;
};

MetricReport aggregate_report(const std::vector<ScoredSample>& samples, double tau = 0.75);

// CSV: id,semantic,style_raw with optional header.
std::vector<ScoredSample> load_scored_samples(const std::string& path);
// CSV: label,semantic,style with optional header.
std::vector<ParetoPoint> load_points(const std::string& path);

void write_report_csv(const MetricReport& report, const std::string& path);
void write_tau_csv(const std::vector<TauRow>& rows, const std::string& path);
// CSV: label,semantic,style,on_frontier over all input points.
void write_frontier_csv(const std::vector<ParetoPoint>& points,
                        const std::vector<ParetoPoint>& frontier, const std::string& path);

}  // namespace stylekit

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "va/cfcnn.hpp"
#include "va/stats.hpp"

namespace va {

struct ModelAnalysis {
  std::optional<EvalTable> eval;  // absent when no ground truth is available
  std::vector<RatioRow> ratios;   // predicted per-site wide:narrow counts
};

struct AnalysisInputs {
  // live predictions keyed by model name (e.g. "cfcnn", "hvs"); site ids filled in
  std::map<std::string, std::vector<PhotoLabel>> predictions;
  std::vector<PhotoLabel> truth;  // empty when ground truth is unknown
  std::vector<TouristSite> sites;
  std::vector<ViewLabel> random_labels;     // site-free random set, may be empty
  std::string primary_model = "cfcnn";      // model whose predictions drive the site stats
  std::optional<std::string> eval_counts_path;  // reference count fixture
  RatingGroupThresholds rating_thr;
  SizeGroupThresholds size_thr;
};

struct AnalysisResult {
  std::map<std::string, ModelAnalysis> models;  // live models plus "ref-<name>" fixture entries
  std::vector<RatioRow> gt_ratios;              // ground-truth ratios (live truth or fixture totals)
  std::vector<SiteStats> site_stats;
  std::optional<RegressionFit> fit;
  std::optional<ExperimentResult> exp1;
  std::optional<ExperimentResult> exp2;
  std::optional<Experiment3Summary> exp3;
  std::vector<std::string> notices;
};

AnalysisResult run_analysis(const AnalysisInputs& inputs);

// analysis.json plus one delimited table per result family.
void write_analysis(const std::string& dir, const AnalysisResult& result);
AnalysisResult load_analysis(const std::string& dir);

// Scatter/bar figures (raster + underlying data tables) and a plain-text
// report with the rendered tables.
void write_report(const std::string& analysis_dir, const std::string& report_dir);

}  // namespace va

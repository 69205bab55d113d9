#pragma once

#include <string>

#include "va/cfcnn.hpp"
#include "va/hvs.hpp"
#include "va/stats.hpp"

namespace va {

// One declarative config drives every subcommand; CLI flags override the
// file.  Unset keys fall back to the defaults below (full-size model,
// reference training recipe).
struct RunConfig {
  std::string run_id;  // empty = derived from the config content
  uint64_t seed = 1;
  std::string out_root = "out";

  struct SynthCfg {
    int n_per_class = 250;
    int image_side = 256;
    int n_sites = 12;
    double flagged_fraction = 0.04;
    bool emit_votes = true;
    int random_total = 200;  // site-free random set size
  } synth;

  struct Paths {
    std::string manifest;          // empty = synth output inside the run dir
    std::string site_registry;
    std::string votes;
    std::string random_manifest;
    std::string eval_counts;       // reference count fixture (optional)
    std::string conceptual_lookup; // category -> big/small table (optional)
  } paths;

  ModelConfig model = ModelConfig::full();
  TrainConfig train;
  bool hvs_enabled = true;
  HvsParams hvs;

  struct AnalysisCfg {
    double border_fraction = 0.15;
    RatingGroupThresholds rating;
    SizeGroupThresholds size;
    int min_agree = 4;
  } analysis;

  int visualize_max = 12;

  static RunConfig from_file(const std::string& path);
  static RunConfig from_json_text(const std::string& text, const std::string& origin);

  // Canonical serialization: drives the config echo and the derived run id.
  std::string canonical_json() const;
  std::string effective_run_id() const;
};

}  // namespace va

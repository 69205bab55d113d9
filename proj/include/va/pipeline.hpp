#pragma once

#include <string>

#include "va/config.hpp"

namespace va {

// Subcommand bodies shared by the CLI binary and the integration tests.
// Every command works inside <out_root>/<run_id>/, refuses to overwrite
// its primary artifact unless force is set, and raises an Error naming the
// prerequisite command when an upstream artifact is missing.
namespace pipeline {

std::string run_dir(const RunConfig& cfg);

void cmd_synth(const RunConfig& cfg, bool force);
void cmd_ingest(const RunConfig& cfg, bool force);
void cmd_annotate_stats(const RunConfig& cfg, bool force);
void cmd_train(const RunConfig& cfg, bool force);
void cmd_classify(const RunConfig& cfg, bool force);
void cmd_visualize(const RunConfig& cfg, bool force);
void cmd_analyze(const RunConfig& cfg, bool force);
void cmd_report(const RunConfig& cfg, bool force);

// synth -> ingest -> annotate-stats -> train -> classify -> visualize ->
// analyze -> report
void cmd_pipeline(const RunConfig& cfg, bool force);

}  // namespace pipeline

}  // namespace va

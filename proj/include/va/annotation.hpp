#pragma once

#include <string>
#include <vector>

#include "va/data.hpp"

namespace va {

struct VoteSheet {
  std::string photo_id;
  std::vector<ViewLabel> votes;
};

enum class VoteOutcome { Wide, Narrow, Ambiguous };

std::string to_string(VoteOutcome o);

struct AggregationResult {
  std::string photo_id;
  VoteOutcome outcome = VoteOutcome::Ambiguous;
  int agree_count = 0;  // size of the largest per-category block
};

// Majority label when its count reaches min_agree, otherwise Ambiguous.
// Binary ties (even rater count) are Ambiguous whenever min_agree > n/2.
AggregationResult aggregate_votes(const VoteSheet& sheet, int min_agree);

// Fleiss' kappa over a fixed-rater campaign.  Exactly 1.0 when every item
// is unanimous; throws ValidationError when the chance-agreement
// denominator degenerates (every vote in the whole set is one category).
double fleiss_kappa(const std::vector<VoteSheet>& sheets, int n_categories = 2);

struct VoteCampaignSummary {
  long n_items = 0;
  long n_wide = 0;
  long n_narrow = 0;
  long n_ambiguous = 0;
  double kappa_all = 0.0;       // kappa over every sheet
  double kappa_kept = 0.0;      // kappa over sheets that aggregated to a label
  bool kappa_kept_valid = false;
};

// Aggregates a whole campaign and reports the agreement statistic both ways
// (over all sheets, and over the sheets that survive ambiguity filtering).
VoteCampaignSummary summarize_campaign(const std::vector<VoteSheet>& sheets, int min_agree,
                                       std::vector<AggregationResult>* results = nullptr);

// Vote files: delimited rows  photo_id,vote_1,...,vote_n  with a fixed
// rater count across the file.
std::vector<VoteSheet> load_votes(const std::string& path);
void write_votes(const std::string& path, const std::vector<VoteSheet>& sheets);

}  // namespace va

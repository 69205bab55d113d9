#pragma once

#include <optional>
#include <string>
#include <vector>

#include "va/data.hpp"

namespace va {

struct SiteStats {
  std::string site_id;
  long n_wide = 0;
  long n_narrow = 0;
  double rating = 0.0;
  double size_m = 0.0;
  Region region = Region::Asia;

  bool has_w() const { return n_wide + n_narrow > 0; }
  double w() const { return static_cast<double>(n_wide) / static_cast<double>(n_wide + n_narrow); }
};

struct RegressionFit {
  double beta_r = 0.0;
  double beta_s = 0.0;
  double beta_0 = 0.0;
  std::optional<double> r_squared;  // absent when the response has zero variance
  long n = 0;

  double predict(double rating, double size_m) const { return beta_r * rating + beta_s * size_m + beta_0; }
};

struct CorrelationResult {
  std::string group_label;
  long n = 0;
  double r = 0.0;
  double p_value = 1.0;
};

// Proportion of Wide labels.  Empty input is undefined.
std::optional<double> wide_ratio(const std::vector<ViewLabel>& labels);

// Product-moment correlation; nullopt when either argument has zero
// variance.  Lengths must match and be >= 3.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

// Two-tailed p-value for a Pearson coefficient via the t-transform
// t = r*sqrt((n-2)/(1-r^2)) against Student's t with n-2 dof.
// |r| = 1 returns the exact limit 0.
double pearson_pvalue(double r, long n);

// Regularized incomplete beta I_x(a, b); exposed for the significance tests.
double incomplete_beta(double a, double b, double x);

// Two-tailed tail mass of Student's t at |t| with the given dof.
double student_t_two_tailed(double t, double dof);

// Ordinary least squares W ~ rating + size + 1 over sites with defined W,
// solved by column-pivoting QR.  Throws ValidationError on rank deficiency.
RegressionFit fit_regression(const std::vector<SiteStats>& stats);

struct ExperimentResult {
  std::vector<CorrelationResult> groups;
  std::vector<std::string> notices;  // groups omitted for n < 3, etc.
};

// Rating vs W for the whole set and per-region subgroups.
ExperimentResult experiment1(const std::vector<SiteStats>& stats);

struct SizeGroupThresholds {
  double small_max = 10.0;    // size <= small_max  -> Small
  double large_min = 100.0;   // size >  large_min  -> Large
};

// Size vs W overall and per size group (boundaries: =small_max is Small,
// =large_min is Medium).
ExperimentResult experiment2(const std::vector<SiteStats>& stats, SizeGroupThresholds thr = {});

struct RatingGroupThresholds {
  double high_min = 9.0;   // rating >  high_min -> high group
  double lower_max = 7.4;  // rating <  lower_max -> lower group
};

struct GroupBar {
  double mean = 0.0;
  double stddev = 0.0;  // population deviation over per-site W
  long n = 0;
};

struct Experiment3Summary {
  std::optional<GroupBar> lower;
  std::optional<GroupBar> high;
  std::optional<double> random_ratio;
  std::vector<std::string> notices;
};

// Per-site W means for the two rating tails plus the wide ratio of a
// site-free random set.  Ratings in [lower_max, high_min] are excluded.
Experiment3Summary experiment3(const std::vector<SiteStats>& stats, const std::vector<ViewLabel>& random_labels,
                               RatingGroupThresholds thr = {});

struct SitePrediction {
  std::string site_id;
  ViewLabel label;
};

// Joins per-photo predicted labels with the registry into per-site stats.
// Sites are emitted in registry order; predictions naming unknown sites
// throw ValidationError.
std::vector<SiteStats> build_site_stats(const std::vector<TouristSite>& sites,
                                        const std::vector<SitePrediction>& predictions);

}  // namespace va

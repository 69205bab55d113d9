#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "va/data.hpp"
#include "va/image.hpp"
#include "va/rng.hpp"
#include "va/synth.hpp"

namespace va {

// ---------------------------------------------------------------------------
// Focus cue: multi-scale band-pass energy descriptors on a dense grid,
// aggregated with a Fisher-vector encoding over a diagonal Gaussian mixture
// and classified by a linear max-margin model.  Narrow-angle evidence is the
// focus-lens pattern: sharp center, blurred fringe.
// ---------------------------------------------------------------------------

struct FocusFeatureConfig {
  int work_side = 128;   // analysis resolution
  int grid_step = 8;     // descriptor spacing
  int window = 4;        // half window for local energy
  int n_components = 5;  // mixture size
};

// Per-point descriptor: [radius, band energies (3), fine-band share,
// orientation histogram (4)].
constexpr int kFocusDescriptorDim = 9;

struct GaussianMixture {
  int dim = 0;
  std::vector<double> weights;             // K
  std::vector<std::vector<double>> means;  // K x D
  std::vector<std::vector<double>> vars;   // K x D, floored

  int components() const { return static_cast<int>(weights.size()); }
};

struct LinearClassifier {
  std::vector<double> w;  // includes trailing bias weight
  double decision(const std::vector<double>& x) const;
};

struct FocusPipeline {
  FocusFeatureConfig config;
  GaussianMixture gmm;
  LinearClassifier svm;
  bool trained = false;
};

std::vector<std::array<double, kFocusDescriptorDim>> focus_descriptors(const Image& image,
                                                                       const FocusFeatureConfig& cfg);

// Fisher-vector encoding (mean and variance gradients, power + L2
// normalized).  Dimension = 2 * K * D.
std::vector<double> fisher_vector(const GaussianMixture& gmm,
                                  const std::vector<std::array<double, kFocusDescriptorDim>>& descriptors);

GaussianMixture fit_gmm(const std::vector<std::array<double, kFocusDescriptorDim>>& descriptors,
                        int n_components, uint64_t seed);

LinearClassifier train_linear_svm(const std::vector<std::vector<double>>& features,
                                  const std::vector<int>& labels /* +1 / -1 */, double lambda,
                                  int iterations, uint64_t seed);

struct FocusVerdict {
  ViewLabel label = ViewLabel::Wide;
  double confidence = 0.0;  // |margin| mapped to [0, 1)
};

// Narrow when the focus-lens pattern is detected.  A structureless image
// (no band energy anywhere) is Wide with zero confidence.
FocusVerdict focus_cue_classify(const Image& image, const FocusPipeline& pipeline);

// ---------------------------------------------------------------------------
// Scale cue: object box proposals plus a conceptual-size lookup.
// ---------------------------------------------------------------------------

struct Box {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // half-open
  long area() const { return static_cast<long>(x1 - x0) * (y1 - y0); }
};

struct Proposal {
  Box box;
  double score = 0.0;
  std::vector<uint8_t> mask;  // salient pixels inside the working frame
  int mask_w = 0, mask_h = 0;
};

// Class-agnostic salient-object proposer: color distance to a corner-patch
// background model, threshold chosen by maximizing between-class variance,
// largest connected component wins.
struct ProposerConfig {
  int work_side = 128;
  double min_component_fraction = 0.002;
  double full_frame_fraction = 0.90;  // mask covering this much = full-frame object
};

std::vector<Proposal> propose_objects(const Image& image, const ProposerConfig& cfg = {});

enum class ConceptualSize { BigThing, SmallThing };

std::string to_string(ConceptualSize c);

struct CategoryClassifier {
  static constexpr int kFeatureDim = 12;
  std::vector<double> feat_mean, feat_std;         // standardization
  std::vector<std::vector<double>> weights;        // n_categories x (dim+1)
  bool trained = false;

  ObjectCategory classify(const std::vector<double>& features) const;
};

std::vector<double> crop_features(const Image& work_image, const Proposal& proposal);

using ConceptualLookup = std::map<ObjectCategory, ConceptualSize>;

ConceptualLookup load_conceptual_lookup(const std::string& path);
void write_conceptual_lookup(const std::string& path, const ConceptualLookup& table);
ConceptualLookup default_conceptual_lookup();

struct ScaleMeasurement {
  double spatial_size_ratio = 0.0;  // best box area / image area
  ConceptualSize conceptual = ConceptualSize::BigThing;
  bool has_object = false;          // false => ratio 0 by convention
  std::optional<ObjectCategory> category;
};

struct HvsParams {
  double spatial_threshold = 0.25;
  double focus_confidence_threshold = 0.5;
};

struct HvsPipeline {
  FocusPipeline focus;
  CategoryClassifier categories;
  ConceptualLookup lookup;
  HvsParams params;
  ProposerConfig proposer;
};

ScaleMeasurement measure_scale(const Image& image, const HvsPipeline& pipeline);

// Narrow iff a sufficiently large, conceptually small object dominates the
// frame; everything else reads as wide-angle.
ViewLabel scale_cue_classify(const ScaleMeasurement& m, double spatial_threshold);

// Focus cue first; when it does not fire with enough confidence the scale
// cue decides.
ViewLabel hvs_classify(const Image& image, const HvsPipeline& pipeline);

// Trains both cue models from labeled focus/wide images plus self-rendered
// object studies for the category model.  Deterministic for a fixed seed.
HvsPipeline train_hvs_pipeline(const DatasetManifest& labeled_manifest, uint64_t seed,
                               const HvsParams& params = {});

void save_hvs_pipeline(const std::string& path, const HvsPipeline& pipeline);
HvsPipeline load_hvs_pipeline(const std::string& path);

}  // namespace va

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "va/data.hpp"
#include "va/image.hpp"
#include "va/nn.hpp"

namespace va {

// Network geometry.  The default instance is the full-size model: a
// five-stage convolutional trunk with the classic 227-pixel input and
// 1024-wide per-stage projections summed ahead of the head.
struct ModelConfig {
  NetSpec net;
  int resize_target = 256;  // shorter-side resize before cropping

  // Full-size geometry: conv1 11x11/4 -> pool, conv2 5x5 pad2 -> pool,
  // conv3/conv4 3x3 pad1 (branch-side pools), conv5 3x3 pad1 -> pool.
  static ModelConfig full();
  // Tiny instantiation of the same topology for gradient checks:
  // 16x16 input, two stages, 8-wide projections.
  static ModelConfig miniature();
};

struct TrainConfig {
  int batch_size = 230;
  double weight_decay = 0.0005;
  double lr0 = 1e-5;
  // lr(e) = lr0 * 10^(-lr_decades * e / max_epochs): logarithmic decay,
  // one decade over the whole run by default.
  double lr_decades = 1.0;
  int max_epochs = 200;
  uint64_t seed = 1;
  double split_fraction = 0.75;  // fraction of each class used for training

  void check() const;
};

struct EpochStats {
  int epoch = 0;
  double lr = 0.0;
  double train_loss = 0.0;
  double train_err = 0.0;
  double val_loss = 0.0;
  double val_err = 0.0;
};

// Class score order everywhere: index 0 = wide, 1 = narrow.
constexpr int kClassWide = 0;
constexpr int kClassNarrow = 1;

struct ViewModel {
  ModelConfig config;
  CfNet<float> net;
  Image mean_image;  // crop-shaped training mean; empty until trained
  std::vector<EpochStats> history;
  std::map<std::string, Split> split_map;  // split used by the last training run
  uint64_t dataset_checksum = 0;
  uint64_t seed = 0;

  explicit ViewModel(const ModelConfig& cfg) : config(cfg), net(cfg.net) {}
};

// Builds and initializes a model.  When pretrained_trunk names a checkpoint,
// the trunk convolution parameters are copied from it (projections and head
// stay freshly initialized); shape mismatches raise an error naming the layer.
ViewModel build_model(const ModelConfig& config, uint64_t seed,
                      const std::optional<std::string>& pretrained_trunk = std::nullopt);

enum class PreprocessMode { Train, Eval };

// Shorter side to resize_target, crop input_side (random in train mode,
// centered in eval), train-mode horizontal flip, then mean subtraction.
// The mean image must match the crop shape (or be empty to skip).
Tensor3<float> preprocess(const Image& image, PreprocessMode mode, const Image& mean_image,
                          const ModelConfig& config, Rng& rng);

// Elementwise sum of the per-stage projection outputs; the head's input.
std::vector<float> cumulative_feature(ViewModel& model, const Tensor3<float>& preprocessed);

// Wide/narrow probabilities for a preprocessed input (eval path).
std::vector<float> forward_probs(ViewModel& model, const Tensor3<float>& preprocessed,
                                 ForwardTrace<float>* trace = nullptr);

// SGD training with weight decay and the logarithmic schedule; records
// per-epoch train/val loss and error in model.history.
void train(ViewModel& model, const DatasetManifest& manifest, const TrainConfig& tcfg);

struct Prediction {
  std::string photo_id;
  std::optional<ViewLabel> label;  // absent when the record failed
  double score = 0.0;              // winning-class probability
  std::string error;               // non-empty for failed records
};

std::vector<Prediction> classify(ViewModel& model, const DatasetManifest& manifest);

// Per-photo labels for evaluation and ratio derivation.
struct PhotoLabel {
  std::string photo_id;
  std::string site_id;  // may be empty when grouping is unused
  ViewLabel label;
};

struct ClassCounts {
  long correct = 0;
  long total = 0;
};

struct EvalGroup {
  std::string group;
  ClassCounts narrow;
  ClassCounts wide;

  long correct() const { return narrow.correct + wide.correct; }
  long total() const { return narrow.total + wide.total; }
  double accuracy() const { return total() ? static_cast<double>(correct()) / total() : 0.0; }
};

struct EvalTable {
  std::vector<EvalGroup> groups;  // per-site rows when grouping; else empty
  EvalGroup overall;
};

// Per-class correct/total, grouped by site when requested.  Prediction and
// truth id sets must match exactly.
EvalTable evaluate(const std::vector<PhotoLabel>& predictions, const std::vector<PhotoLabel>& truth,
                   bool group_by_site);

// Reads reference evaluation count tables:
//   site,model,narrow_correct,narrow_total,wide_correct,wide_total
// Returns one table per model name, rows in file order.
std::map<std::string, EvalTable> load_eval_counts(const std::string& path);

// Predicted class totals implied by a correct/total evaluation row:
// everything counted correct stays in its class, misses flip.
std::pair<long, long> predicted_counts(const EvalGroup& g);  // {wide, narrow}

struct RatioRow {
  std::string site_id;
  long wide = 0;
  long narrow = 0;
  bool defined() const { return wide + narrow > 0; }
  std::string ratio() const;  // "a:b" with a+b = 10, or "-" when undefined
};

// Renders wide/(wide+narrow) to the nearest tenth as "a:b" with a+b = 10.
// A class that has any photos is never rendered as 0.
std::string render_ratio(long wide, long narrow);

// Per-site wide:narrow ratios from predicted labels.  Empty site groups
// (sites named in `site_universe` with no predictions) are kept as
// undefined rows.
std::vector<RatioRow> ratio_table(const std::vector<PhotoLabel>& predictions,
                                  const std::vector<std::string>& site_universe = {});

// Checkpoint: parameter blob + JSON sidecar next to it (same stem).
void save_checkpoint(const std::string& bin_path, const std::string& json_path, ViewModel& model);
ViewModel load_checkpoint(const std::string& bin_path, const std::string& json_path);

}  // namespace va

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "va/common.hpp"
#include "va/rng.hpp"
#include "va/tensor.hpp"

namespace va {

// ---------------------------------------------------------------------------
// Topology description
// ---------------------------------------------------------------------------

struct ConvStageSpec {
  int out_channels = 0;
  int kernel = 3;
  int stride = 1;
  int pad = 0;
  // Whether the trunk pools after this stage.  Stages without a trunk pool
  // still get a branch-side pool so every projection sees a pooled map.
  bool trunk_pool = true;
};

struct NetSpec {
  int input_side = 227;
  int in_channels = 3;
  std::vector<ConvStageSpec> stages;
  int pool_window = 3;
  int pool_stride = 2;
  int proj_dim = 1024;     // width of each per-stage projection
  int head_hidden = 1024;  // hidden fully-connected width
  double dropout_p = 0.5;
  int n_classes = 2;
};

struct Shape3 {
  int c = 0, h = 0, w = 0;
  bool operator==(const Shape3&) const = default;
};

struct StageShapes {
  Shape3 conv_out;   // after conv + relu
  Shape3 trunk_out;  // after the trunk pool when present, else conv_out
  Shape3 branch_in;  // pooled map feeding the projection
};

template <class T>
struct Param {
  std::string name;
  AVec<T> w;
  AVec<T> g;
  bool is_bias = false;

  void zero_grad() { std::fill(g.begin(), g.end(), T(0)); }
  bool has_nonzero_grad() const {
    for (T x : g)
      if (x != T(0)) return true;
    return false;
  }
};

namespace detail {

inline int conv_out_extent(int in, int kernel, int stride, int pad) {
  return (in + 2 * pad - kernel) / stride + 1;
}

template <class T>
using EMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using EVec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

}  // namespace detail

// ---------------------------------------------------------------------------
// Layers.  Each layer caches what its backward pass needs from the most
// recent forward; the training loop runs forward/backward per sample and
// accumulates gradients across the batch.
// ---------------------------------------------------------------------------

template <class T>
class Conv2d {
public:
  Conv2d(std::string name, int in_c, int out_c, int kernel, int stride, int pad)
      : in_c_(in_c), out_c_(out_c), k_(kernel), stride_(stride), pad_(pad) {
    int kk = in_c * kernel * kernel;
    weight_.name = name + ".w";
    weight_.w.assign(static_cast<size_t>(kk) * out_c, T(0));
    weight_.g = weight_.w;
    bias_.name = name + ".b";
    bias_.is_bias = true;
    bias_.w.assign(out_c, T(0));
    bias_.g = bias_.w;
  }

  void init(Rng& rng) {
    double fan_in = static_cast<double>(in_c_) * k_ * k_;
    double std = std::sqrt(2.0 / fan_in);
    for (auto& x : weight_.w) x = static_cast<T>(rng.normal(0.0, std));
    std::fill(bias_.w.begin(), bias_.w.end(), T(0));
  }

  Shape3 out_shape(Shape3 in) const {
    return {out_c_, detail::conv_out_extent(in.h, k_, stride_, pad_),
            detail::conv_out_extent(in.w, k_, stride_, pad_)};
  }

  Tensor3<T> forward(const Tensor3<T>& x) {
    in_shape_ = {x.c, x.h, x.w};
    int oh = detail::conv_out_extent(x.h, k_, stride_, pad_);
    int ow = detail::conv_out_extent(x.w, k_, stride_, pad_);
    if (oh <= 0 || ow <= 0) throw ContractError("conv output collapsed to zero extent");
    const int kk = in_c_ * k_ * k_;
    const int n = oh * ow;
    cols_.assign(static_cast<size_t>(kk) * n, T(0));
    // column j = receptive field of output pixel j (col-major)
    size_t idx = 0;
    for (int oy = 0; oy < oh; ++oy) {
      for (int ox = 0; ox < ow; ++ox) {
        int iy0 = oy * stride_ - pad_;
        int ix0 = ox * stride_ - pad_;
        for (int ci = 0; ci < in_c_; ++ci) {
          for (int ky = 0; ky < k_; ++ky) {
            int iy = iy0 + ky;
            if (iy < 0 || iy >= x.h) {
              idx += k_;
              continue;
            }
            for (int kx = 0; kx < k_; ++kx) {
              int ix = ix0 + kx;
              if (ix >= 0 && ix < x.w) cols_[idx] = x.at(ci, iy, ix);
              ++idx;
            }
          }
        }
      }
    }
    Tensor3<T> out(out_c_, oh, ow);
    Eigen::Map<const detail::EMat<T>> cm(cols_.data(), kk, n);
    Eigen::Map<const detail::EMat<T>> wm(weight_.w.data(), kk, out_c_);
    Eigen::Map<detail::EMat<T>> om(out.v.data(), n, out_c_);
    om.noalias() = cm.transpose() * wm;
    Eigen::Map<const detail::EVec<T>> bv(bias_.w.data(), out_c_);
    om.rowwise() += bv.transpose();
    return out;
  }

  Tensor3<T> backward(const Tensor3<T>& dy) {
    const int oh = dy.h, ow = dy.w, n = oh * ow;
    const int kk = in_c_ * k_ * k_;
    Eigen::Map<const detail::EMat<T>> dom(dy.v.data(), n, out_c_);
    Eigen::Map<const detail::EMat<T>> cm(cols_.data(), kk, n);
    Eigen::Map<detail::EMat<T>> dwm(weight_.g.data(), kk, out_c_);
    dwm.noalias() += cm * dom;
    Eigen::Map<detail::EVec<T>> dbv(bias_.g.data(), out_c_);
    dbv.noalias() += dom.colwise().sum().transpose();

    dcols_.assign(cols_.size(), T(0));
    Eigen::Map<detail::EMat<T>> dcm(dcols_.data(), kk, n);
    Eigen::Map<const detail::EMat<T>> wm(weight_.w.data(), kk, out_c_);
    dcm.noalias() = wm * dom.transpose();

    Tensor3<T> dx(in_shape_.c, in_shape_.h, in_shape_.w);
    size_t idx = 0;
    for (int oy = 0; oy < oh; ++oy) {
      for (int ox = 0; ox < ow; ++ox) {
        int iy0 = oy * stride_ - pad_;
        int ix0 = ox * stride_ - pad_;
        for (int ci = 0; ci < in_c_; ++ci) {
          for (int ky = 0; ky < k_; ++ky) {
            int iy = iy0 + ky;
            if (iy < 0 || iy >= dx.h) {
              idx += k_;
              continue;
            }
            for (int kx = 0; kx < k_; ++kx) {
              int ix = ix0 + kx;
              if (ix >= 0 && ix < dx.w) dx.at(ci, iy, ix) += dcols_[idx];
              ++idx;
            }
          }
        }
      }
    }
    return dx;
  }

  Param<T>& weight() { return weight_; }
  Param<T>& bias() { return bias_; }

private:
  int in_c_, out_c_, k_, stride_, pad_;
  Param<T> weight_, bias_;
  Shape3 in_shape_;
  AVec<T> cols_, dcols_;
};

template <class T>
class Relu {
public:
  Tensor3<T> forward(const Tensor3<T>& x) {
    mask_.assign(x.size(), 0);
    Tensor3<T> out(x.c, x.h, x.w);
    for (size_t i = 0; i < x.size(); ++i) {
      if (x.v[i] > T(0)) {
        out.v[i] = x.v[i];
        mask_[i] = 1;
      }
    }
    return out;
  }

  Tensor3<T> backward(const Tensor3<T>& dy) {
    Tensor3<T> dx(dy.c, dy.h, dy.w);
    for (size_t i = 0; i < dy.size(); ++i) dx.v[i] = mask_[i] ? dy.v[i] : T(0);
    return dx;
  }

private:
  std::vector<uint8_t> mask_;
};

template <class T>
class MaxPool {
public:
  MaxPool(int window, int stride) : k_(window), stride_(stride) {}

  Shape3 out_shape(Shape3 in) const {
    return {in.c, detail::conv_out_extent(in.h, k_, stride_, 0), detail::conv_out_extent(in.w, k_, stride_, 0)};
  }

  Tensor3<T> forward(const Tensor3<T>& x) {
    in_shape_ = {x.c, x.h, x.w};
    int oh = detail::conv_out_extent(x.h, k_, stride_, 0);
    int ow = detail::conv_out_extent(x.w, k_, stride_, 0);
    if (oh <= 0 || ow <= 0) throw ContractError("pool output collapsed to zero extent");
    Tensor3<T> out(x.c, oh, ow);
    argmax_.assign(out.size(), 0);
    size_t oi = 0;
    for (int ci = 0; ci < x.c; ++ci) {
      for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox, ++oi) {
          int iy0 = oy * stride_, ix0 = ox * stride_;
          T best = x.at(ci, iy0, ix0);
          size_t best_idx = (static_cast<size_t>(ci) * x.h + iy0) * x.w + ix0;
          for (int ky = 0; ky < k_; ++ky) {
            int iy = iy0 + ky;
            if (iy >= x.h) break;
            for (int kx = 0; kx < k_; ++kx) {
              int ix = ix0 + kx;
              if (ix >= x.w) break;
              T val = x.at(ci, iy, ix);
              if (val > best) {
                best = val;
                best_idx = (static_cast<size_t>(ci) * x.h + iy) * x.w + ix;
              }
            }
          }
          out.v[oi] = best;
          argmax_[oi] = best_idx;
        }
      }
    }
    return out;
  }

  Tensor3<T> backward(const Tensor3<T>& dy) {
    Tensor3<T> dx(in_shape_.c, in_shape_.h, in_shape_.w);
    for (size_t i = 0; i < dy.size(); ++i) dx.v[argmax_[i]] += dy.v[i];
    return dx;
  }

private:
  int k_, stride_;
  Shape3 in_shape_;
  std::vector<size_t> argmax_;
};

// Fully-connected map from a flattened tensor.  The per-stage projections
// are instances whose input is the stage's full pooled map, i.e. a
// convolution whose kernel spans the entire feature map.
template <class T>
class Dense {
public:
  Dense(std::string name, int in_dim, int out_dim) : in_dim_(in_dim), out_dim_(out_dim) {
    weight_.name = name + ".w";
    weight_.w.assign(static_cast<size_t>(in_dim) * out_dim, T(0));
    weight_.g = weight_.w;
    bias_.name = name + ".b";
    bias_.is_bias = true;
    bias_.w.assign(out_dim, T(0));
    bias_.g = bias_.w;
  }

  void init(Rng& rng) {
    double std = std::sqrt(2.0 / static_cast<double>(in_dim_));
    for (auto& x : weight_.w) x = static_cast<T>(rng.normal(0.0, std));
    std::fill(bias_.w.begin(), bias_.w.end(), T(0));
  }

  AVec<T> forward(const AVec<T>& x) {
    if (static_cast<int>(x.size()) != in_dim_)
      throw ContractError("dense input size " + std::to_string(x.size()) + " != " + std::to_string(in_dim_));
    last_in_ = x;
    AVec<T> out(out_dim_);
    Eigen::Map<const detail::EMat<T>> wm(weight_.w.data(), in_dim_, out_dim_);
    Eigen::Map<const detail::EVec<T>> xv(x.data(), in_dim_);
    Eigen::Map<detail::EVec<T>> ov(out.data(), out_dim_);
    ov.noalias() = wm.transpose() * xv;
    Eigen::Map<const detail::EVec<T>> bv(bias_.w.data(), out_dim_);
    ov += bv;
    return out;
  }

  AVec<T> backward(const AVec<T>& dy) {
    Eigen::Map<const detail::EVec<T>> dyv(dy.data(), out_dim_);
    Eigen::Map<const detail::EVec<T>> xv(last_in_.data(), in_dim_);
    Eigen::Map<detail::EMat<T>> dwm(weight_.g.data(), in_dim_, out_dim_);
    dwm.noalias() += xv * dyv.transpose();
    Eigen::Map<detail::EVec<T>> dbv(bias_.g.data(), out_dim_);
    dbv += dyv;
    AVec<T> dx(in_dim_);
    Eigen::Map<detail::EVec<T>> dxv(dx.data(), in_dim_);
    Eigen::Map<const detail::EMat<T>> wm(weight_.w.data(), in_dim_, out_dim_);
    dxv.noalias() = wm * dyv;
    return dx;
  }

  Param<T>& weight() { return weight_; }
  Param<T>& bias() { return bias_; }
  int in_dim() const { return in_dim_; }

private:
  int in_dim_, out_dim_;
  Param<T> weight_, bias_;
  AVec<T> last_in_;
};

// Inverted dropout; identity in eval mode.
template <class T>
class Dropout {
public:
  explicit Dropout(double p) : p_(p) {}

  AVec<T> forward(const AVec<T>& x, bool train, Rng& rng) {
    if (!train || p_ <= 0.0) {
      mask_.assign(x.size(), T(1));
      return x;
    }
    T keep_scale = static_cast<T>(1.0 / (1.0 - p_));
    mask_.resize(x.size());
    AVec<T> out(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
      mask_[i] = rng.uniform() < p_ ? T(0) : keep_scale;
      out[i] = x[i] * mask_[i];
    }
    return out;
  }

  AVec<T> backward(const AVec<T>& dy) {
    AVec<T> dx(dy.size());
    for (size_t i = 0; i < dy.size(); ++i) dx[i] = dy[i] * mask_[i];
    return dx;
  }

private:
  double p_;
  AVec<T> mask_;
};

template <class VecT>
VecT softmax(const VecT& logits) {
  using T = typename VecT::value_type;
  T mx = logits[0];
  for (T v : logits) mx = std::max(mx, v);
  VecT out(logits.size());
  T sum = T(0);
  for (size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - mx);
    sum += out[i];
  }
  for (auto& v : out) v /= sum;
  return out;
}

// Cross-entropy on softmax probabilities; gradient wrt logits.
template <class T>
struct SoftmaxLoss {
  template <class VecT>
  static double loss(const VecT& probs, int target) {
    double p = std::max(static_cast<double>(probs[target]), 1e-12);
    return -std::log(p);
  }
  template <class VecT>
  static VecT dlogits(const VecT& probs, int target) {
    VecT d = probs;
    d[target] -= T(1);
    return d;
  }
};

// ---------------------------------------------------------------------------
// The cumulative-feature network: a convolutional trunk where every stage
// feeds a pooled map through a full-extent projection; the per-stage
// projections are summed into one feature vector for the classifier head.
// ---------------------------------------------------------------------------

template <class T>
struct ForwardTrace {
  std::vector<Tensor3<T>> branch_inputs;  // pooled map per stage
  std::vector<AVec<T>> path_features;     // projection output per stage
  AVec<T> cumulative;
  AVec<T> logits;
  AVec<T> probs;
};

template <class T>
class CfNet {
public:
  explicit CfNet(const NetSpec& spec) : spec_(spec), dropout_(spec.dropout_p) {
    if (spec.stages.empty()) throw ContractError("net needs at least one stage");
    Shape3 cur{spec.in_channels, spec.input_side, spec.input_side};
    for (size_t i = 0; i < spec.stages.size(); ++i) {
      const auto& st = spec.stages[i];
      std::string name = "stage" + std::to_string(i + 1);
      StageBlock blk{Conv2d<T>(name + ".conv", cur.c, st.out_channels, st.kernel, st.stride, st.pad),
                     MaxPool<T>(spec.pool_window, spec.pool_stride),
                     MaxPool<T>(spec.pool_window, spec.pool_stride),
                     nullptr,
                     st.trunk_pool};
      StageShapes shp;
      shp.conv_out = blk.conv.out_shape(cur);
      if (shp.conv_out.h <= 0 || shp.conv_out.w <= 0) throw ContractError("stage " + name + " collapses spatially");
      if (st.trunk_pool) {
        shp.trunk_out = blk.trunk_pool.out_shape(shp.conv_out);
        shp.branch_in = shp.trunk_out;
      } else {
        shp.trunk_out = shp.conv_out;
        shp.branch_in = blk.branch_pool.out_shape(shp.conv_out);
      }
      int branch_dim = shp.branch_in.c * shp.branch_in.h * shp.branch_in.w;
      blk.proj = std::make_unique<Dense<T>>(name + ".proj", branch_dim, spec.proj_dim);
      shapes_.push_back(shp);
      stages_.push_back(std::move(blk));
      cur = shp.trunk_out;
    }
    fc1_ = std::make_unique<Dense<T>>("head.fc1", spec.proj_dim, spec.head_hidden);
    fc2_ = std::make_unique<Dense<T>>("head.fc2", spec.head_hidden, spec.n_classes);
  }

  const NetSpec& spec() const { return spec_; }
  const std::vector<StageShapes>& stage_shapes() const { return shapes_; }

  // Restrict the cumulative sum to a single stage's path (ablation runs).
  void set_active_path(std::optional<int> stage_index) { active_path_ = stage_index; }
  std::optional<int> active_path() const { return active_path_; }

  void init(Rng& rng) {
    for (auto& s : stages_) {
      s.conv.init(rng);
      s.proj->init(rng);
    }
    fc1_->init(rng);
    fc2_->init(rng);
  }

  std::vector<Param<T>*> params() {
    std::vector<Param<T>*> out;
    for (auto& s : stages_) {
      out.push_back(&s.conv.weight());
      out.push_back(&s.conv.bias());
      out.push_back(&s.proj->weight());
      out.push_back(&s.proj->bias());
    }
    out.push_back(&fc1_->weight());
    out.push_back(&fc1_->bias());
    out.push_back(&fc2_->weight());
    out.push_back(&fc2_->bias());
    return out;
  }

  AVec<T> forward(const Tensor3<T>& x, bool train, Rng& rng, ForwardTrace<T>* trace = nullptr) {
    if (x.c != spec_.in_channels || x.h != spec_.input_side || x.w != spec_.input_side)
      throw ContractError("input tensor shape mismatch");
    Tensor3<T> cur = x;
    AVec<T> cumulative(spec_.proj_dim, T(0));
    if (trace) {
      trace->branch_inputs.clear();
      trace->path_features.clear();
    }
    for (size_t i = 0; i < stages_.size(); ++i) {
      auto& s = stages_[i];
      bool use_path = path_active(static_cast<int>(i)) || trace != nullptr;
      Tensor3<T> conv_out = s.conv.forward(cur);
      Tensor3<T> act = s.relu.forward(conv_out);
      Tensor3<T> branch_in;
      if (s.has_trunk_pool) {
        cur = s.trunk_pool.forward(act);
        branch_in = cur;
      } else {
        if (use_path) branch_in = s.branch_pool.forward(act);
        cur = std::move(act);
      }
      AVec<T> feat;
      if (use_path) feat = s.proj->forward(branch_in.v);
      if (path_active(static_cast<int>(i)))
        for (int j = 0; j < spec_.proj_dim; ++j) cumulative[j] += feat[j];
      if (trace) {
        trace->branch_inputs.push_back(std::move(branch_in));
        trace->path_features.push_back(std::move(feat));
      }
    }
    AVec<T> hidden_pre = fc1_->forward(cumulative);
    Tensor3<T> hv(1, 1, static_cast<int>(hidden_pre.size()));
    hv.v = std::move(hidden_pre);
    Tensor3<T> hr = head_relu_.forward(hv);
    AVec<T> hidden = dropout_.forward(hr.v, train, rng);
    AVec<T> logits = fc2_->forward(hidden);
    if (trace) {
      trace->cumulative = cumulative;
      trace->logits = logits;
      trace->probs = softmax(logits);
    }
    return logits;
  }

  // Gradient of the loss wrt logits in, accumulates parameter gradients.
  // Must follow a forward pass taken without a trace (caches line up with
  // the gating that the training path uses).
  void backward(const AVec<T>& dlogits) {
    AVec<T> dh = fc2_->backward(dlogits);
    dh = dropout_.backward(dh);
    Tensor3<T> dhv(1, 1, static_cast<int>(dh.size()));
    dhv.v = std::move(dh);
    Tensor3<T> dhr = head_relu_.backward(dhv);
    AVec<T> dcum = fc1_->backward(dhr.v);

    // Every active path receives the same cumulative gradient.
    Tensor3<T> dtrunk;  // gradient flowing down the trunk; empty above the last stage
    for (int i = static_cast<int>(stages_.size()) - 1; i >= 0; --i) {
      auto& s = stages_[i];
      const Shape3 branch_shape = shapes_[i].branch_in;
      Tensor3<T> dact;
      if (s.has_trunk_pool) {
        Tensor3<T> dpool(branch_shape.c, branch_shape.h, branch_shape.w);
        if (path_active(i)) {
          AVec<T> dbranch = s.proj->backward(dcum);
          std::copy(dbranch.begin(), dbranch.end(), dpool.v.begin());
        }
        if (dtrunk.same_shape(dpool) && dtrunk.size() > 0)
          for (size_t j = 0; j < dpool.size(); ++j) dpool.v[j] += dtrunk.v[j];
        dact = s.trunk_pool.backward(dpool);
      } else {
        if (path_active(i)) {
          AVec<T> dbranch = s.proj->backward(dcum);
          Tensor3<T> dbranch_map(branch_shape.c, branch_shape.h, branch_shape.w);
          std::copy(dbranch.begin(), dbranch.end(), dbranch_map.v.begin());
          dact = s.branch_pool.backward(dbranch_map);
          if (dtrunk.same_shape(dact) && dtrunk.size() > 0)
            for (size_t j = 0; j < dact.size(); ++j) dact.v[j] += dtrunk.v[j];
        } else {
          dact = std::move(dtrunk);
        }
      }
      Tensor3<T> dconv = s.relu.backward(dact);
      dtrunk = s.conv.backward(dconv);
    }
  }

  void zero_grads() {
    for (auto* p : params()) p->zero_grad();
  }

  void sgd_step(double lr, double weight_decay, int batch_size) {
    T scale = static_cast<T>(1.0 / batch_size);
    for (auto* p : params()) {
      T wd = p->is_bias ? T(0) : static_cast<T>(weight_decay);
      for (size_t i = 0; i < p->w.size(); ++i) p->w[i] -= static_cast<T>(lr) * (p->g[i] * scale + wd * p->w[i]);
    }
  }

  size_t param_count() {
    size_t n = 0;
    for (auto* p : params()) n += p->w.size();
    return n;
  }

  // FNV-1a over raw parameter bytes; used by determinism checks.
  uint64_t param_checksum() {
    uint64_t h = 1469598103934665603ull;
    for (auto* p : params()) {
      const auto* bytes = reinterpret_cast<const unsigned char*>(p->w.data());
      size_t nbytes = p->w.size() * sizeof(T);
      for (size_t i = 0; i < nbytes; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ull;
      }
    }
    return h;
  }

private:
  struct StageBlock {
    Conv2d<T> conv;
    MaxPool<T> trunk_pool;
    MaxPool<T> branch_pool;
    std::unique_ptr<Dense<T>> proj;
    bool has_trunk_pool;
    Relu<T> relu;
  };

  bool path_active(int i) const { return !active_path_ || *active_path_ == i; }

  NetSpec spec_;
  std::vector<StageBlock> stages_;
  std::vector<StageShapes> shapes_;
  std::unique_ptr<Dense<T>> fc1_, fc2_;
  Relu<T> head_relu_;
  Dropout<T> dropout_;
  std::optional<int> active_path_;
};

}  // namespace va

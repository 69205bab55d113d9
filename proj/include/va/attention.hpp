#pragma once

#include <optional>

#include "va/cfcnn.hpp"
#include "va/image.hpp"

namespace va {

struct ActivationMask {
  Plane raw_map;        // final pooled map reduced over channels (6x6 on the full model)
  Plane upsampled_map;  // image-sized, min-max normalized to [0, 1]
  Image masked_image;   // luminance multiplied by the map, chroma untouched
};

// Channel-max over the last pooling stage's activation map, upsampled to the
// input image size and applied to the luminance plane.  A constant raw map
// yields a uniform 0.5 mask (uniformly dimmed image).
ActivationMask activation_mask(ViewModel& model, const Image& image);

// Same reduction applied to an externally supplied pooled map; the model
// path above routes through this.
ActivationMask activation_mask_from_pooled(const Tensor3<float>& pooled, const Image& image);

// Fraction of upsampled-map mass inside the border band of width
// border_fraction * min(H, W).  Undefined (nullopt) for zero total mass.
std::optional<double> fringe_score(const ActivationMask& mask, double border_fraction);

}  // namespace va

#pragma once

#include "isokd/random.hpp"
#include "isokd/types.hpp"

namespace isokd {

/// Patch rectangle sampled by cutmix. Real center/extents as drawn, plus the
/// integer pixel bounds after rounding to nearest and clamping to the image.
/// The pixel box is [x0, x1) x [y0, y1) and may be empty.
struct PatchBox {
  double r_x = 0.0;
  double r_y = 0.0;
  double r_w = 0.0;
  double r_h = 0.0;
  Index x0 = 0;
  Index x1 = 0;
  Index y0 = 0;
  Index y1 = 0;

  Index pixel_area() const { return (x1 - x0) * (y1 - y0); }
  bool empty() const { return x1 <= x0 || y1 <= y0; }
};

struct CutMixResult {
  SampleTensor mixed;
  double effective_gamma;  // recomputed from the clipped pixel area
  PatchBox box;
};

/// Elementwise blend gamma * x_i + (1 - gamma) * x_j.
SampleTensor mixup(const SampleTensor& x_i, const SampleTensor& x_j, double gamma);

/// Pastes a random patch of x_j into x_i. The patch center is uniform over
/// the image, extents are W*sqrt(1-gamma) x H*sqrt(1-gamma), and the label
/// weight is recomputed from the clipped integer patch area. gamma = 0 is
/// rejected (the patch would cover the whole image).
CutMixResult cutmix(const SampleTensor& x_i, const SampleTensor& x_j,
                    double gamma, RandomSource& rng);

/// One mixing coefficient from Beta(a, a).
double sample_gamma(double a, RandomSource& rng);

}  // namespace isokd

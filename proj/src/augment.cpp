#include "isokd/augment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isokd {

namespace {

Index round_clamped(double t, Index hi) {
  const double r = std::round(t);
  if (r < 0.0) return 0;
  if (r > static_cast<double>(hi)) return hi;
  return static_cast<Index>(r);
}

}  // namespace

SampleTensor mixup(const SampleTensor& x_i, const SampleTensor& x_j, double gamma) {
  if (!x_i.same_shape(x_j)) {
    throw std::invalid_argument("mixup: shape mismatch");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("mixup: gamma must lie in [0, 1]");
  }
  return SampleTensor(x_i.width(), x_i.height(), x_i.channels(),
                      gamma * x_i.data() + (1.0 - gamma) * x_j.data());
}

CutMixResult cutmix(const SampleTensor& x_i, const SampleTensor& x_j,
                    double gamma, RandomSource& rng) {
  if (!x_i.same_shape(x_j)) {
    throw std::invalid_argument("cutmix: shape mismatch");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("cutmix: gamma must lie in (0, 1]");
  }
  const Index w = x_i.width();
  const Index h = x_i.height();

  PatchBox box;
  box.r_x = rng.uniform(0.0, static_cast<double>(w));
  box.r_y = rng.uniform(0.0, static_cast<double>(h));
  const double side = std::sqrt(1.0 - gamma);
  box.r_w = static_cast<double>(w) * side;
  box.r_h = static_cast<double>(h) * side;
  box.x0 = round_clamped(box.r_x - box.r_w / 2.0, w);
  box.x1 = round_clamped(box.r_x + box.r_w / 2.0, w);
  box.y0 = round_clamped(box.r_y - box.r_h / 2.0, h);
  box.y1 = round_clamped(box.r_y + box.r_h / 2.0, h);

  SampleTensor out = x_i;
  for (Index ch = 0; ch < x_i.channels(); ++ch) {
    for (Index y = box.y0; y < box.y1; ++y) {
      for (Index x = box.x0; x < box.x1; ++x) {
        out.at(x, y, ch) = x_j.at(x, y, ch);
      }
    }
  }

  const double area = static_cast<double>(box.pixel_area());
  const double effective =
      1.0 - area / static_cast<double>(w * h);
  return CutMixResult{std::move(out), effective, box};
}

double sample_gamma(double a, RandomSource& rng) {
  if (!(a > 0.0)) throw std::invalid_argument("sample_gamma: a must be positive");
  return rng.beta(a, a);
}

}  // namespace isokd

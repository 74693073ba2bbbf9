#include "qpipe/synth.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "qpipe/errors.hpp"

namespace qpipe::synth {

namespace {

void check_size(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw ArgumentError("image dimensions must be positive");
}

void check_range(double range) {
  if (!(range > 0.0) || !std::isfinite(range)) throw ArgumentError("intensity range must be positive");
}

double clip_below(double v, double range) {
  return std::clamp(v, 0.0, std::nextafter(range, 0.0));
}

struct Ellipse {
  double cx, cy, a, b, degrees, weight;
};

// Modified Shepp-Logan layout; weights are fractions of the intensity range and add up.
constexpr std::array<Ellipse, 6> kPhantom{{
    {0.0, 0.0, 0.69, 0.92, 0.0, 0.70},
    {0.0, -0.0184, 0.6624, 0.874, 0.0, -0.30},
    {0.22, 0.0, 0.11, 0.31, -18.0, 0.25},
    {-0.22, 0.0, 0.16, 0.41, 18.0, 0.20},
    {0.0, 0.35, 0.21, 0.25, 0.0, 0.15},
    {0.0, -0.605, 0.046, 0.023, 0.0, 0.25},
}};

}  // namespace

Image ramp(std::size_t width, std::size_t height, double range) {
  check_size(width, height);
  check_range(range);
  std::vector<double> px(width * height);
  const double denom = width > 1 ? static_cast<double>(width - 1) : 1.0;
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      px[r * width + c] = (range - 1.0) * static_cast<double>(c) / denom;
    }
  }
  return Image(width, height, std::move(px));
}

Image step(std::size_t width, std::size_t height, double high, double low) {
  check_size(width, height);
  std::vector<double> px(width * height, low);
  for (std::size_t r = height / 4; r < height - height / 4; ++r) {
    for (std::size_t c = width / 4; c < width - width / 4; ++c) px[r * width + c] = high;
  }
  return Image(width, height, std::move(px));
}

Image phantom_speckle(std::size_t width, std::size_t height, double range, double sigma,
                      std::uint64_t seed) {
  check_size(width, height);
  check_range(range);
  if (!(sigma >= 0.0)) throw ArgumentError("speckle sigma must be nonnegative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> px(width * height);
  for (std::size_t r = 0; r < height; ++r) {
    const double y = 1.0 - 2.0 * (static_cast<double>(r) + 0.5) / static_cast<double>(height);
    for (std::size_t c = 0; c < width; ++c) {
      const double x = 2.0 * (static_cast<double>(c) + 0.5) / static_cast<double>(width) - 1.0;
      double v = 0.0;
      for (const Ellipse& e : kPhantom) {
        const double t = e.degrees * std::numbers::pi / 180.0;
        const double dx = x - e.cx;
        const double dy = y - e.cy;
        const double u = (dx * std::cos(t) + dy * std::sin(t)) / e.a;
        const double w = (-dx * std::sin(t) + dy * std::cos(t)) / e.b;
        if (u * u + w * w <= 1.0) v += e.weight;
      }
      double value = v * range;
      if (sigma > 0.0) value *= 1.0 + sigma * gauss(rng);
      px[r * width + c] = clip_below(value, range);
    }
  }
  return Image(width, height, std::move(px));
}

Image uniform(std::size_t width, std::size_t height, double range, std::uint64_t seed) {
  check_size(width, height);
  check_range(range);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, range);
  std::vector<double> px(width * height);
  for (double& p : px) p = clip_below(dist(rng), range);
  return Image(width, height, std::move(px));
}

Image levels(std::size_t width, std::size_t height, int levels, std::uint64_t seed) {
  check_size(width, height);
  if (levels < 1) throw ArgumentError("level count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, levels - 1);
  std::vector<double> px(width * height);
  for (double& p : px) p = dist(rng);
  return Image(width, height, std::move(px));
}

Image quantize(const Image& image, double range) {
  check_range(range);
  Image out = image;
  for (double& p : out.pixels) p = std::floor(clip_below(p, range));
  const auto whole = static_cast<std::uint64_t>(range);
  if (static_cast<double>(whole) == range && std::has_single_bit(whole)) {
    out.bit_depth = std::countr_zero(whole);
  }
  return out;
}

}  // namespace qpipe::synth

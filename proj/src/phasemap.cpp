#include "qpipe/phasemap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "qpipe/errors.hpp"

namespace qpipe {

Image::Image(std::size_t w, std::size_t h, std::vector<double> px, std::optional<int> depth)
    : width(w), height(h), pixels(std::move(px)), bit_depth(depth) {
  validate();
}

void Image::validate() const {
  if (width * height != pixels.size()) {
    std::ostringstream os;
    os << "image is " << width << "x" << height << " but holds " << pixels.size() << " pixels";
    throw ArgumentError(os.str());
  }
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (!std::isfinite(pixels[i]) || pixels[i] < 0.0) {
      std::ostringstream os;
      os << "pixel " << i << " has invalid intensity " << pixels[i];
      throw DomainError(os.str());
    }
  }
}

std::size_t PhaseImage::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(theta.begin(), theta.end(),
                                                [](double t) { return t != 0.0; }));
}

int position_qubits_for(std::size_t pixel_count) {
  if (pixel_count == 0) throw ArgumentError("image has no pixels");
  const int n = static_cast<int>(std::bit_width(pixel_count - 1));
  return std::max(n, 1);
}

PaddedIntensities flatten_and_pad(const Image& image) {
  image.validate();
  PaddedIntensities out;
  out.n = position_qubits_for(image.pixel_count());
  const std::size_t slots = std::size_t{1} << out.n;
  out.values.assign(slots, 0.0);
  std::copy(image.pixels.begin(), image.pixels.end(), out.values.begin());
  out.pad_count = slots - image.pixel_count();
  return out;
}

double default_intensity_range(const Image& image) {
  if (image.bit_depth) return std::ldexp(1.0, *image.bit_depth);
  const double max = image.pixels.empty()
                         ? 0.0
                         : *std::max_element(image.pixels.begin(), image.pixels.end());
  return max + 1.0;
}

PhaseImage map_phases(const Image& image, const MappingMode& mode) {
  const double range = mode.intensity_range;
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw DomainError("intensity range must be a positive finite number");
  }
  PaddedIntensities padded = flatten_and_pad(image);

  PhaseImage out;
  out.n = padded.n;
  out.mode = mode;
  out.pad_count = padded.pad_count;
  out.theta.resize(padded.values.size());

  for (std::size_t i = 0; i < padded.values.size(); ++i) {
    const double intensity = padded.values[i];
    if (intensity >= range) {
      std::ostringstream os;
      os << "intensity " << intensity << " at index " << i << " is not below the range " << range
         << "; the phase would alias";
      throw DomainError(os.str());
    }
    const double turns = intensity / range;
    switch (mode.kind) {
      case MappingKind::FullTurn:
        out.theta[i] = turns;
        break;
      case MappingKind::HalfTurn:
        out.theta[i] = 0.5 * turns;
        break;
      case MappingKind::SignedCentered:
        out.theta[i] = turns >= 0.5 ? turns - 1.0 : turns;
        break;
    }
  }
  return out;
}

Image shift_image(const Image& image, ShiftAxis axis, ShiftFill fill) {
  image.validate();
  Image out = image;
  const std::size_t w = image.width;
  const std::size_t h = image.height;
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      double v = 0.0;
      if (axis == ShiftAxis::Horizontal) {
        if (c > 0) {
          v = image.at(r, c - 1);
        } else if (fill == ShiftFill::Wrap) {
          v = image.at(r, w - 1);
        }
      } else {
        if (r > 0) {
          v = image.at(r - 1, c);
        } else if (fill == ShiftFill::Wrap) {
          v = image.at(h - 1, c);
        }
      }
      out.at(r, c) = v;
    }
  }
  return out;
}

PhaseImage negate_phases(PhaseImage phases) {
  // 0.0 stays +0.0 so the exact-zero pixel test downstream is unaffected.
  for (double& t : phases.theta) t = t == 0.0 ? 0.0 : -t;
  return phases;
}

PhaseImage accumulate_phases(std::span<const PhaseImage> images) {
  if (images.empty()) throw ArgumentError("accumulate_phases needs at least one image");
  PhaseImage out = images.front();
  for (std::size_t i = 1; i < images.size(); ++i) {
    const PhaseImage& img = images[i];
    if (img.n != out.n || img.theta.size() != out.theta.size() || img.pad_count != out.pad_count) {
      throw ArgumentError("accumulate_phases: phase images differ in shape");
    }
    if (!(img.mode == out.mode)) {
      throw ArgumentError("accumulate_phases: phase images use different mapping modes");
    }
    for (std::size_t x = 0; x < out.theta.size(); ++x) out.theta[x] += img.theta[x];
  }
  return out;
}

}  // namespace qpipe

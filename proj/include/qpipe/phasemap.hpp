#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qpipe {

/// Grayscale image, row-major, nonnegative finite intensities.
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;
  std::optional<int> bit_depth;

  Image() = default;
  Image(std::size_t w, std::size_t h, std::vector<double> px, std::optional<int> depth = {});

  double at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
  double& at(std::size_t row, std::size_t col) { return pixels[row * width + col]; }
  std::size_t pixel_count() const noexcept { return pixels.size(); }

  /// Throws ArgumentError on a size mismatch, DomainError on negative or non-finite pixels.
  void validate() const;
};

enum class MappingKind {
  FullTurn,        // theta = I / R in [0, 1)
  HalfTurn,        // theta = I / (2R) in [0, 0.5); decoded values are doubled
  SignedCentered,  // theta = I / R wrapped into [-0.5, 0.5)
};

/// Intensity-to-phase mapping; `intensity_range` is the normaliser R.
struct MappingMode {
  MappingKind kind = MappingKind::FullTurn;
  double intensity_range = 256.0;

  /// Factor applied to decoded phases to undo the mapping's compression.
  double compensation() const noexcept { return kind == MappingKind::HalfTurn ? 2.0 : 1.0; }

  friend bool operator==(const MappingMode&, const MappingMode&) = default;
};

/// Per-position phase fractions in turns over the padded 2^n position space.
struct PhaseImage {
  int n = 1;
  std::vector<double> theta;
  MappingMode mode;
  std::size_t pad_count = 0;

  std::size_t positions() const noexcept { return theta.size(); }
  /// Count of positions that hold real pixels (the rest are padding).
  std::size_t pixel_count() const noexcept { return theta.size() - pad_count; }
  std::size_t nonzero_count() const;
};

struct PaddedIntensities {
  int n = 1;
  std::vector<double> values;
  std::size_t pad_count = 0;
};

/// Position qubits needed for `pixel_count` pixels: ceil(log2(count)), at least 1.
int position_qubits_for(std::size_t pixel_count);

/// Row-major flatten, zero-padded to 2^n slots.
PaddedIntensities flatten_and_pad(const Image& image);

/// 256 for an 8-bit hint, 2^b for any other hint, otherwise max intensity + 1.
double default_intensity_range(const Image& image);

/// Throws DomainError for negative intensities, intensities >= R, or R <= 0.
PhaseImage map_phases(const Image& image, const MappingMode& mode);

enum class ShiftAxis { Horizontal, Vertical };
enum class ShiftFill { Zero, Wrap };

/// out(r, c) = in(r, c-1) for Horizontal, in(r-1, c) for Vertical; the
/// entering column/row is zero or wraps around.
Image shift_image(const Image& image, ShiftAxis axis, ShiftFill fill = ShiftFill::Zero);

PhaseImage negate_phases(PhaseImage phases);

/// Entrywise sum with no modular reduction. All inputs must share n, padding and mode.
PhaseImage accumulate_phases(std::span<const PhaseImage> images);

}  // namespace qpipe

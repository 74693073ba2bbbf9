#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpipe/phasemap.hpp"
#include "qpipe/readout.hpp"
#include "qpipe/statevector.hpp"

namespace qpipe::qed {

enum class GradientDirection { Horizontal, Vertical, SobelMagnitude };

std::string_view direction_name(GradientDirection d);

struct GradientField {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;
  GradientDirection direction = GradientDirection::Horizontal;
  std::vector<bool> annihilated;  // empty for classical fields

  bool is_annihilated(std::size_t i) const { return !annihilated.empty() && annihilated[i]; }
};

struct QedConfig {
  int q = 8;
  ThresholdPolicy policy = ThresholdPolicy::dynamic();
  MappingKind mode = MappingKind::HalfTurn;
  std::optional<double> intensity_range;  // default_intensity_range(image) when unset
  ShiftFill fill = ShiftFill::Zero;
  bool include_annihilated_as_zero = false;
  int qubit_cap = default_qubit_cap();
};

/// I - shift(I) along the direction's axis; SobelMagnitude fuses both axes.
GradientField classical_gradient(const Image& image, GradientDirection direction,
                                 ShiftFill fill = ShiftFill::Zero);

/// Simulated joint distribution for one directional gradient, before readout.
struct GradientEncoding {
  std::size_t width = 0;
  std::size_t height = 0;
  GradientDirection direction = GradientDirection::Horizontal;
  MappingMode mode;
  JointDistribution joint;
};

/// Encodes phi1 = map(I) and phi2 = -map(shift(I)) in one fused Gray traversal
/// per estimation qubit, runs the inverse QFT, and returns P(k, x).
/// `direction` must be Horizontal or Vertical.
GradientEncoding encode_gradient(const Image& image, GradientDirection direction,
                                 const QedConfig& config);

/// Signed decode with mode compensation. Annihilated pixels read 0 and are flagged.
GradientField decode_gradient(const GradientEncoding& encoding, const ThresholdPolicy& policy);

/// encode + decode; SobelMagnitude runs both directions and fuses them.
GradientField quantum_gradient(const Image& image, GradientDirection direction,
                               const QedConfig& config);

/// sqrt(|gx|^2 + |gy|^2) entrywise; annihilation flags are OR-ed.
GradientField sobel_fuse(const GradientField& gx, const GradientField& gy);

/// Mean |classical - quantum| over the image's pixels. Annihilated quantum
/// pixels are skipped unless `include_annihilated_as_zero`, in which case
/// they count with a quantum value of 0.
double mae(const GradientField& classical, const GradientField& quantum,
           bool include_annihilated_as_zero = false);

struct DirectionResult {
  GradientDirection direction = GradientDirection::Horizontal;
  GradientField classical;
  GradientField quantum;
  double mae = 0.0;
  std::vector<double> per_pixel_abs_error;  // NaN where a pixel was excluded
  std::size_t annihilated_count = 0;
};

struct QedReport {
  QedConfig config;
  double intensity_range = 0.0;
  std::vector<DirectionResult> results;

  /// Sobel MAE when present, otherwise the first result's.
  double headline_mae() const;
  const DirectionResult* find(GradientDirection d) const;
};

/// Runs the requested directions. Asking for SobelMagnitude also reports
/// both directional results it is built from.
QedReport run_qed(const Image& image, const QedConfig& config,
                  std::span<const GradientDirection> directions);

/// JSON document: config snapshot, headline mae and per-direction mae / annihilated_count.
std::string report_json(const QedReport& report);

struct SweepRow {
  std::string label;
  double threshold = 0.0;
  double mae = 0.0;
  std::size_t annihilated_count = 0;
};

/// Simulates the gradient once per axis and decodes it under every policy.
/// MAE counts annihilated pixels as zero so the blow-up above the baseline
/// probability is visible.
std::vector<SweepRow> sweep_thresholds(const Image& image, GradientDirection direction,
                                       const QedConfig& config,
                                       std::span<const ThresholdPolicy> policies);

}  // namespace qpipe::qed

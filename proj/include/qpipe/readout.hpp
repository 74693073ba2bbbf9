#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpipe/phasemap.hpp"
#include "qpipe/statevector.hpp"

namespace qpipe {

/// Exact QPE outcome probability P(k | theta) for q estimation qubits.
///
/// P = sin^2(pi 2^q d) / (2^2q sin^2(pi d)) with d = theta - k/2^q reduced
/// into [-0.5, 0.5). Returns exactly 1 when d == 0 and exactly 0 when d is
/// any other multiple of 2^-q.
double dirichlet_kernel_prob(double theta, std::uint64_t k, int q);

/// Readout filter on joint probabilities P(k, x).
class ThresholdPolicy {
 public:
  enum class Kind { Fixed, Dynamic };

  static ThresholdPolicy fixed(double probability);
  /// P_th = eta / (2^n * width). Only the ratio eta/width matters; the
  /// defaults give the Dirichlet side-lobe constant 0.025.
  static ThresholdPolicy dynamic(double eta = 0.025, double width = 1.0);

  Kind kind() const noexcept { return kind_; }
  double fixed_value() const noexcept { return value_; }
  double eta() const noexcept { return eta_; }
  double width() const noexcept { return width_; }

  /// Threshold for an n-qubit position register.
  double resolve(int n) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::Dynamic;
  double value_ = 0.0;
  double eta_ = 0.025;
  double width_ = 1.0;
};

/// How a mean bin index becomes an output value.
struct DecodeSpec {
  bool signed_result = false;  // fold into [-2^(q-1), 2^(q-1)) instead of [0, 2^q)
  double compensation = 1.0;   // undoes a compressed mapping
  double scale = 1.0;          // output units per estimation bin
  double offset = 0.0;         // added after scaling

  /// Output in estimation-bin units, the convention used by the bare decoder.
  static DecodeSpec bins(bool signed_result, double compensation = 1.0);
};

/// What the encoded phases represent.
enum class ReadoutContent {
  Intensity,   // one image: decode unsigned (signed for SignedCentered)
  Difference,  // sum of a phase image and a negated one: always signed
};

/// Output spec for a mapping mode: intensity units, R / 2^q per bin, times compensation.
DecodeSpec decode_spec_for(const MappingMode& mode, ReadoutContent content, int q);

struct PixelEstimate {
  double value = 0.0;           // final output in DecodeSpec units
  double mean_bin = 0.0;        // folded weighted mean, before compensation/scale
  std::uint64_t peak_bin = 0;
  double retained_mass = 0.0;   // conditional probability kept after thresholding
};

/// Decodes one position from its joint probabilities P(k, x), k = 0..2^q-1.
///
/// Bins with joint probability below `threshold` are dropped; the rest are
/// unwrapped around the most probable bin, averaged with conditional weights
/// P(k|x) = 2^n P(k, x), folded back into range, then compensated and scaled.
/// Throws SignalAnnihilated (naming `pixel`) if no bin survives.
PixelEstimate decode_pixel(std::span<const double> joint, int q, int n, double threshold,
                           const DecodeSpec& spec, std::size_t pixel = 0);

struct ReadoutRow {
  double decoded = 0.0;
  double retained_mass = 0.0;
  std::uint64_t peak_bin = 0;
  bool annihilated = false;
};

/// Decoded positions of one simulation plus the distribution they came from.
struct ReadoutTable {
  RegisterLayout layout;
  std::vector<ReadoutRow> rows;  // one per position, padding included
  double threshold_used = 0.0;
  std::optional<JointDistribution> distribution;

  std::size_t annihilated_count(std::size_t first_positions) const;
};

/// decode_pixel over every position. Annihilated positions are flagged with
/// a decoded value of 0 rather than aborting the table.
ReadoutTable decode_table(const JointDistribution& joint, const ThresholdPolicy& policy,
                          const DecodeSpec& spec);

/// CSV with columns x,row,col,decoded,retained_mass,annihilated for the first
/// width*height positions.
void write_readout_csv(std::ostream& os, const ReadoutTable& table, std::size_t width,
                       std::size_t height);

}  // namespace qpipe

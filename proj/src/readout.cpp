#include "qpipe/readout.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qpipe/errors.hpp"

namespace qpipe {

double dirichlet_kernel_prob(double theta, std::uint64_t k, int q) {
  if (q < 1 || q > 52) throw ArgumentError("dirichlet_kernel_prob needs 1 <= q <= 52");
  const double bins = std::ldexp(1.0, q);
  double delta = theta - static_cast<double>(k) / bins;
  delta -= std::floor(delta + 0.5);
  const double scaled = delta * bins;
  if (scaled == std::nearbyint(scaled)) return scaled == 0.0 ? 1.0 : 0.0;
  const double num = std::sin(std::numbers::pi * scaled);
  const double den = std::sin(std::numbers::pi * delta);
  return (num * num) / (bins * bins * den * den);
}

ThresholdPolicy ThresholdPolicy::fixed(double probability) {
  if (!(probability > 0.0) || !std::isfinite(probability)) {
    throw ArgumentError("fixed threshold must be a positive probability");
  }
  ThresholdPolicy p;
  p.kind_ = Kind::Fixed;
  p.value_ = probability;
  return p;
}

ThresholdPolicy ThresholdPolicy::dynamic(double eta, double width) {
  if (!(eta > 0.0) || eta > 1.0) throw ArgumentError("dynamic threshold eta must lie in (0, 1]");
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw ArgumentError("dynamic threshold peak width must be positive");
  }
  ThresholdPolicy p;
  p.kind_ = Kind::Dynamic;
  p.eta_ = eta;
  p.width_ = width;
  return p;
}

double ThresholdPolicy::resolve(int n) const {
  if (n < 1) throw ArgumentError("threshold resolution needs n >= 1");
  if (kind_ == Kind::Fixed) return value_;
  return eta_ / (std::ldexp(1.0, n) * width_);
}

std::string ThresholdPolicy::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::Fixed) {
    os << "fixed:" << value_;
  } else {
    os << "dynamic:eta=" << eta_ << ",w=" << width_;
  }
  return os.str();
}

DecodeSpec DecodeSpec::bins(bool signed_result, double compensation) {
  return DecodeSpec{signed_result, compensation, 1.0, 0.0};
}

DecodeSpec decode_spec_for(const MappingMode& mode, ReadoutContent content, int q) {
  DecodeSpec spec;
  spec.compensation = mode.compensation();
  spec.scale = mode.intensity_range / std::ldexp(1.0, q);
  spec.signed_result =
      content == ReadoutContent::Difference || mode.kind == MappingKind::SignedCentered;
  return spec;
}

PixelEstimate decode_pixel(std::span<const double> joint, int q, int n, double threshold,
                           const DecodeSpec& spec, std::size_t pixel) {
  if (q < 1 || q > 30 || n < 1) throw ArgumentError("decode_pixel needs q in [1, 30] and n >= 1");
  const std::int64_t bins = std::int64_t{1} << q;
  if (joint.size() != static_cast<std::size_t>(bins)) {
    throw ArgumentError("decode_pixel expects one probability per estimation bin");
  }
  const double position_weight = std::ldexp(1.0, n);

  std::int64_t peak = -1;
  for (std::int64_t k = 0; k < bins; ++k) {
    if (joint[k] < threshold) continue;
    if (peak < 0 || joint[k] > joint[peak]) peak = k;
  }
  if (peak < 0) throw SignalAnnihilated(pixel, threshold);

  const std::int64_t half = bins / 2;
  double mass = 0.0;
  double moment = 0.0;
  for (std::int64_t k = 0; k < bins; ++k) {
    if (joint[k] < threshold) continue;
    const double p = joint[k] * position_weight;
    // Unwrap around the peak so a distribution straddling the 0 / 2^q seam stays contiguous.
    const std::int64_t offset = (((k - peak + half) % bins) + bins) % bins - half;
    mass += p;
    moment += p * static_cast<double>(peak + offset);
  }

  const double width = static_cast<double>(bins);
  double mean = moment / mass;
  if (spec.signed_result) {
    mean -= width * std::floor((mean + width / 2.0) / width);
  } else {
    mean -= width * std::floor(mean / width);
  }

  PixelEstimate est;
  est.mean_bin = mean;
  est.peak_bin = static_cast<std::uint64_t>(peak);
  est.retained_mass = mass;
  est.value = mean * spec.compensation * spec.scale + spec.offset;
  return est;
}

std::size_t ReadoutTable::annihilated_count(std::size_t first_positions) const {
  std::size_t count = 0;
  for (std::size_t x = 0; x < first_positions && x < rows.size(); ++x) count += rows[x].annihilated;
  return count;
}

ReadoutTable decode_table(const JointDistribution& joint, const ThresholdPolicy& policy,
                          const DecodeSpec& spec) {
  const RegisterLayout& layout = joint.layout();
  ReadoutTable table;
  table.layout = layout;
  table.threshold_used = policy.resolve(layout.n);
  table.rows.resize(layout.positions());
  for (std::uint64_t x = 0; x < layout.positions(); ++x) {
    const std::vector<double> column = joint.column(x);
    ReadoutRow& row = table.rows[x];
    try {
      const PixelEstimate est =
          decode_pixel(column, layout.q, layout.n, table.threshold_used, spec, x);
      row.decoded = est.value;
      row.retained_mass = est.retained_mass;
      row.peak_bin = est.peak_bin;
    } catch (const SignalAnnihilated&) {
      row.annihilated = true;
    }
  }
  table.distribution = joint;
  return table;
}

void write_readout_csv(std::ostream& os, const ReadoutTable& table, std::size_t width,
                       std::size_t height) {
  if (width * height > table.rows.size()) {
    throw ArgumentError("readout table holds fewer positions than the image");
  }
  os << "x,row,col,decoded,retained_mass,annihilated\n";
  char buf[128];
  for (std::size_t x = 0; x < width * height; ++x) {
    const ReadoutRow& r = table.rows[x];
    std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%.17g,%.17g,%d\n", x, x / width, x % width,
                  r.decoded, r.retained_mass, r.annihilated ? 1 : 0);
    os << buf;
  }
}

}  // namespace qpipe

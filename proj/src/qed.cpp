#include "qpipe/qed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qpipe/circuit.hpp"
#include "qpipe/errors.hpp"

namespace qpipe::qed {

namespace {

ShiftAxis axis_of(GradientDirection d) {
  switch (d) {
    case GradientDirection::Horizontal:
      return ShiftAxis::Horizontal;
    case GradientDirection::Vertical:
      return ShiftAxis::Vertical;
    case GradientDirection::SobelMagnitude:
      break;
  }
  throw ArgumentError("a single shift axis is only defined for horizontal or vertical gradients");
}

void check_same_shape(const GradientField& a, const GradientField& b) {
  if (a.width != b.width || a.height != b.height || a.values.size() != b.values.size()) {
    throw ArgumentError("gradient fields differ in shape");
  }
}

std::string_view mode_name(MappingKind k) {
  switch (k) {
    case MappingKind::FullTurn:
      return "full";
    case MappingKind::HalfTurn:
      return "half";
    case MappingKind::SignedCentered:
      return "signed";
  }
  return "?";
}

}  // namespace

std::string_view direction_name(GradientDirection d) {
  switch (d) {
    case GradientDirection::Horizontal:
      return "horizontal";
    case GradientDirection::Vertical:
      return "vertical";
    case GradientDirection::SobelMagnitude:
      return "sobel";
  }
  return "?";
}

GradientField classical_gradient(const Image& image, GradientDirection direction, ShiftFill fill) {
  if (direction == GradientDirection::SobelMagnitude) {
    return sobel_fuse(classical_gradient(image, GradientDirection::Horizontal, fill),
                      classical_gradient(image, GradientDirection::Vertical, fill));
  }
  const Image shifted = shift_image(image, axis_of(direction), fill);
  GradientField g;
  g.width = image.width;
  g.height = image.height;
  g.direction = direction;
  g.values.resize(image.pixel_count());
  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = image.pixels[i] - shifted.pixels[i];
  return g;
}

GradientEncoding encode_gradient(const Image& image, GradientDirection direction,
                                 const QedConfig& config) {
  const ShiftAxis axis = axis_of(direction);
  const MappingMode mode{config.mode, config.intensity_range.value_or(default_intensity_range(image))};

  const PhaseImage base = map_phases(image, mode);
  const PhaseImage shifted = negate_phases(map_phases(shift_image(image, axis, config.fill), mode));
  const RegisterLayout layout{config.q, base.n};
  layout.validate();
  if (layout.total_qubits() > config.qubit_cap) {
    throw ResourceLimitError(layout.total_qubits(), config.qubit_cap);
  }

  const PhaseImage images[] = {base, shifted};
  const Circuit circuit = build_qpipe(layout, images);
  const StateVector state = simulate(circuit, config.qubit_cap);
  return GradientEncoding{image.width, image.height, direction, mode,
                          marginal_distribution(state, layout)};
}

GradientField decode_gradient(const GradientEncoding& encoding, const ThresholdPolicy& policy) {
  const int q = encoding.joint.layout().q;
  const ReadoutTable table = decode_table(
      encoding.joint, policy, decode_spec_for(encoding.mode, ReadoutContent::Difference, q));
  GradientField g;
  g.width = encoding.width;
  g.height = encoding.height;
  g.direction = encoding.direction;
  const std::size_t count = encoding.width * encoding.height;
  g.values.resize(count);
  g.annihilated.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    g.values[i] = table.rows[i].annihilated ? 0.0 : table.rows[i].decoded;
    g.annihilated[i] = table.rows[i].annihilated;
  }
  return g;
}

GradientField quantum_gradient(const Image& image, GradientDirection direction,
                               const QedConfig& config) {
  if (direction == GradientDirection::SobelMagnitude) {
    return sobel_fuse(quantum_gradient(image, GradientDirection::Horizontal, config),
                      quantum_gradient(image, GradientDirection::Vertical, config));
  }
  return decode_gradient(encode_gradient(image, direction, config), config.policy);
}

GradientField sobel_fuse(const GradientField& gx, const GradientField& gy) {
  check_same_shape(gx, gy);
  GradientField m;
  m.width = gx.width;
  m.height = gx.height;
  m.direction = GradientDirection::SobelMagnitude;
  m.values.resize(gx.values.size());
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    m.values[i] = std::hypot(std::abs(gx.values[i]), std::abs(gy.values[i]));
  }
  if (!gx.annihilated.empty() || !gy.annihilated.empty()) {
    m.annihilated.resize(m.values.size());
    for (std::size_t i = 0; i < m.values.size(); ++i) {
      m.annihilated[i] = gx.is_annihilated(i) || gy.is_annihilated(i);
    }
  }
  return m;
}

namespace {

// Fills per-pixel errors (NaN where excluded) and returns the mean over included pixels.
double mae_with_errors(const GradientField& classical, const GradientField& quantum,
                       bool include_annihilated_as_zero, std::vector<double>* errors) {
  check_same_shape(classical, quantum);
  double sum = 0.0;
  std::size_t count = 0;
  if (errors) errors->assign(classical.values.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < classical.values.size(); ++i) {
    double q = quantum.values[i];
    if (quantum.is_annihilated(i)) {
      if (!include_annihilated_as_zero) continue;
      q = 0.0;
    }
    const double e = std::abs(classical.values[i] - q);
    if (errors) (*errors)[i] = e;
    sum += e;
    ++count;
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

std::size_t count_annihilated(const GradientField& g) {
  return static_cast<std::size_t>(std::count(g.annihilated.begin(), g.annihilated.end(), true));
}

}  // namespace

double mae(const GradientField& classical, const GradientField& quantum,
           bool include_annihilated_as_zero) {
  return mae_with_errors(classical, quantum, include_annihilated_as_zero, nullptr);
}

double QedReport::headline_mae() const {
  if (const DirectionResult* s = find(GradientDirection::SobelMagnitude)) return s->mae;
  return results.empty() ? 0.0 : results.front().mae;
}

const DirectionResult* QedReport::find(GradientDirection d) const {
  for (const DirectionResult& r : results) {
    if (r.direction == d) return &r;
  }
  return nullptr;
}

QedReport run_qed(const Image& image, const QedConfig& config,
                  std::span<const GradientDirection> directions) {
  image.validate();
  QedReport report;
  report.config = config;
  report.intensity_range = config.intensity_range.value_or(default_intensity_range(image));

  const auto wants = [&](GradientDirection d) {
    return std::find(directions.begin(), directions.end(), d) != directions.end();
  };
  const bool sobel = wants(GradientDirection::SobelMagnitude);
  const bool horizontal = sobel || wants(GradientDirection::Horizontal);
  const bool vertical = sobel || wants(GradientDirection::Vertical);
  if (!horizontal && !vertical) throw ArgumentError("run_qed needs at least one direction");

  QedConfig resolved = config;
  resolved.intensity_range = report.intensity_range;

  auto finish = [&](GradientDirection d, GradientField classical, GradientField quantum) {
    DirectionResult r;
    r.direction = d;
    r.mae = mae_with_errors(classical, quantum, config.include_annihilated_as_zero,
                            &r.per_pixel_abs_error);
    r.annihilated_count = count_annihilated(quantum);
    r.classical = std::move(classical);
    r.quantum = std::move(quantum);
    report.results.push_back(std::move(r));
  };

  if (horizontal) {
    finish(GradientDirection::Horizontal,
           classical_gradient(image, GradientDirection::Horizontal, config.fill),
           quantum_gradient(image, GradientDirection::Horizontal, resolved));
  }
  if (vertical) {
    finish(GradientDirection::Vertical,
           classical_gradient(image, GradientDirection::Vertical, config.fill),
           quantum_gradient(image, GradientDirection::Vertical, resolved));
  }
  if (sobel) {
    const DirectionResult* gx = report.find(GradientDirection::Horizontal);
    const DirectionResult* gy = report.find(GradientDirection::Vertical);
    GradientField classical = sobel_fuse(gx->classical, gy->classical);
    GradientField quantum = sobel_fuse(gx->quantum, gy->quantum);
    finish(GradientDirection::SobelMagnitude, std::move(classical), std::move(quantum));
  }
  return report;
}

std::string report_json(const QedReport& report) {
  using nlohmann::ordered_json;
  const QedConfig& c = report.config;
  ordered_json doc;
  doc["config"] = {
      {"q", c.q},
      {"threshold", c.policy.describe()},
      {"mode", mode_name(c.mode)},
      {"intensity_range", report.intensity_range},
      {"fill", c.fill == ShiftFill::Zero ? "zero" : "wrap"},
      {"mae_include_annihilated_as_zero", c.include_annihilated_as_zero},
  };
  doc["mae"] = report.headline_mae();
  std::size_t annihilated = 0;
  ordered_json per = ordered_json::object();
  for (const DirectionResult& r : report.results) {
    per[std::string(direction_name(r.direction))] = {
        {"mae", r.mae},
        {"annihilated_count", r.annihilated_count},
    };
    annihilated = std::max(annihilated, r.annihilated_count);
  }
  doc["annihilated_count"] = annihilated;
  doc["directions"] = per;
  return doc.dump(2) + "\n";
}

std::vector<SweepRow> sweep_thresholds(const Image& image, GradientDirection direction,
                                       const QedConfig& config,
                                       std::span<const ThresholdPolicy> policies) {
  QedConfig resolved = config;
  resolved.intensity_range = config.intensity_range.value_or(default_intensity_range(image));

  std::vector<GradientEncoding> encodings;
  if (direction == GradientDirection::SobelMagnitude) {
    encodings.push_back(encode_gradient(image, GradientDirection::Horizontal, resolved));
    encodings.push_back(encode_gradient(image, GradientDirection::Vertical, resolved));
  } else {
    encodings.push_back(encode_gradient(image, direction, resolved));
  }
  const GradientField classical = classical_gradient(image, direction, config.fill);
  const int n = encodings.front().joint.layout().n;

  std::vector<SweepRow> rows;
  for (const ThresholdPolicy& policy : policies) {
    GradientField quantum = decode_gradient(encodings.front(), policy);
    if (encodings.size() == 2) quantum = sobel_fuse(quantum, decode_gradient(encodings[1], policy));
    SweepRow row;
    row.label = policy.describe();
    row.threshold = policy.resolve(n);
    row.mae = mae(classical, quantum, true);
    row.annihilated_count = count_annihilated(quantum);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qpipe::qed

#include "qpipe/cli.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qpipe/circuit.hpp"
#include "qpipe/complexity.hpp"
#include "qpipe/errors.hpp"
#include "qpipe/image_io.hpp"
#include "qpipe/qed.hpp"
#include "qpipe/synth.hpp"

namespace qpipe::cli {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ArgumentError("bad " + std::string(what) + " '" + s + "'");
  }
  return v;
}

struct CommonOptions {
  int q = 8;
  std::string mode;
  std::string threshold = "dynamic";
  std::optional<double> intensity_range;
  std::optional<int> qubit_cap;

  int cap() const {
    const int c = qubit_cap.value_or(default_qubit_cap());
    if (c < 1) throw ArgumentError("--qubit-cap must be positive");
    return c;
  }
};

void add_common(CLI::App* cmd, CommonOptions& o, const std::string& default_mode) {
  o.mode = default_mode;
  cmd->add_option("-q,--qubits-estimation", o.q, "Estimation qubits q")
      ->check(CLI::Range(1, 30))
      ->capture_default_str();
  cmd->add_option("--mode", o.mode, "Intensity-to-phase mapping")
      ->check(CLI::IsMember({"full", "half", "signed"}))
      ->capture_default_str();
  cmd->add_option("--threshold", o.threshold,
                  "Readout filter: fixed:<p> | dynamic[:eta=<v>,w=<v>]")
      ->capture_default_str();
  cmd->add_option("--intensity-range", o.intensity_range,
                  "Normaliser R (default: 2^bit-depth for PGM input, else max+1)");
  cmd->add_option("--qubit-cap", o.qubit_cap,
                  "Largest simulated register (default: QPIPE_QUBIT_CAP or 24)");
}

ShiftFill parse_fill(const std::string& s) { return s == "wrap" ? ShiftFill::Wrap : ShiftFill::Zero; }

qed::GradientDirection parse_direction(const std::string& s) {
  if (s == "horizontal") return qed::GradientDirection::Horizontal;
  if (s == "vertical") return qed::GradientDirection::Vertical;
  return qed::GradientDirection::SobelMagnitude;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_file_atomic(path, text);
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- encode ---------------------------------------------------------------

struct EncodeOptions {
  CommonOptions common;
  std::string input;
  std::string output;
  std::string dump_circuit;
  std::string oracle = "gray";
};

void run_encode(const EncodeOptions& o, std::ostream& out) {
  const Image image = io::read_image(o.input);
  const ThresholdPolicy policy = parse_threshold(o.common.threshold);
  const MappingMode mode{parse_mode(o.common.mode),
                         o.common.intensity_range.value_or(default_intensity_range(image))};
  const PhaseImage phases = map_phases(image, mode);
  const RegisterLayout layout{o.common.q, phases.n};
  layout.validate();
  const int cap = o.common.cap();
  if (layout.total_qubits() > cap) throw ResourceLimitError(layout.total_qubits(), cap);

  QpipeOptions options;
  options.oracle = o.oracle == "naive" ? OracleKind::Naive : OracleKind::Gray;
  const Circuit circuit = build_qpipe(layout, std::span(&phases, 1), options);
  if (!o.dump_circuit.empty()) emit(o.dump_circuit, serialize(circuit), out);

  const StateVector state = simulate(circuit, cap);
  const ReadoutTable table = decode_table(marginal_distribution(state, layout), policy,
                                          decode_spec_for(mode, ReadoutContent::Intensity, layout.q));
  std::ostringstream csv;
  write_readout_csv(csv, table, image.width, image.height);
  emit(o.output, csv.str(), out);
}

// ---- qed ------------------------------------------------------------------

struct QedOptions {
  CommonOptions common;
  std::string input;
  std::string json;
  std::string gradients;
  std::string fill = "zero";
  std::string direction = "sobel";
  bool include_annihilated = false;
};

qed::QedConfig qed_config(const CommonOptions& c, const std::string& fill) {
  qed::QedConfig cfg;
  cfg.q = c.q;
  cfg.policy = parse_threshold(c.threshold);
  cfg.mode = parse_mode(c.mode);
  cfg.intensity_range = c.intensity_range;
  cfg.fill = parse_fill(fill);
  cfg.qubit_cap = c.cap();
  return cfg;
}

void run_qed(const QedOptions& o, std::ostream& out) {
  const Image image = io::read_image(o.input);
  qed::QedConfig cfg = qed_config(o.common, o.fill);
  cfg.include_annihilated_as_zero = o.include_annihilated;
  const qed::GradientDirection dirs[] = {parse_direction(o.direction)};
  const qed::QedReport report = qed::run_qed(image, cfg, dirs);

  if (!o.gradients.empty()) {
    for (const qed::DirectionResult& r : report.results) {
      std::ostringstream grid;
      io::write_csv_grid(grid, r.quantum.width, r.quantum.height, r.quantum.values);
      io::write_file_atomic(o.gradients + "_" + std::string(qed::direction_name(r.direction)) + ".csv",
                            grid.str());
    }
  }
  emit(o.json, qed::report_json(report), out);
}

// ---- complexity -----------------------------------------------------------

struct ComplexityOptions {
  int q = 8;
  int k_min = 2;
  int k_max = 256;
  std::string output;
};

void run_complexity(const ComplexityOptions& o, std::ostream& out) {
  std::ostringstream csv;
  complexity::write_scaling_csv(csv, complexity::emit_scaling_table(o.q, o.k_min, o.k_max));
  emit(o.output, csv.str(), out);
}

// ---- threshold-sweep ------------------------------------------------------

struct SweepOptions {
  CommonOptions common;
  std::string input;
  std::string output;
  std::string fill = "zero";
  std::string direction = "horizontal";
  std::vector<double> thresholds{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
};

void run_sweep(const SweepOptions& o, std::ostream& out) {
  const Image image = io::read_image(o.input);
  const qed::QedConfig cfg = qed_config(o.common, o.fill);
  std::vector<ThresholdPolicy> policies;
  for (double t : o.thresholds) policies.push_back(ThresholdPolicy::fixed(t));
  policies.push_back(cfg.policy.kind() == ThresholdPolicy::Kind::Dynamic ? cfg.policy
                                                                          : ThresholdPolicy::dynamic());
  const auto rows = qed::sweep_thresholds(image, parse_direction(o.direction), cfg, policies);

  std::ostringstream csv;
  csv << "threshold,label,mae,annihilated_count\n";
  for (const qed::SweepRow& r : rows) {
    csv << format_double(r.threshold) << ',' << r.label << ',' << format_double(r.mae) << ','
        << r.annihilated_count << '\n';
  }
  emit(o.output, csv.str(), out);
}

// ---- gen ------------------------------------------------------------------

struct GenOptions {
  std::string kind;
  std::string output;
  std::size_t width = 8;
  std::size_t height = 8;
  std::uint64_t seed = 0;
  double range = 256.0;
  double sigma = 0.1;
  int levels = 17;
  double high = 200.0;
  double low = 0.0;
};

void run_gen(const GenOptions& o) {
  Image image;
  if (o.kind == "ramp") {
    image = synth::ramp(o.width, o.height, o.range);
  } else if (o.kind == "step") {
    image = synth::step(o.width, o.height, o.high, o.low);
  } else if (o.kind == "phantom-speckle") {
    image = synth::phantom_speckle(o.width, o.height, o.range, o.sigma, o.seed);
  } else if (o.kind == "uniform") {
    image = synth::uniform(o.width, o.height, o.range, o.seed);
  } else {
    image = synth::levels(o.width, o.height, o.levels, o.seed);
  }
  const bool continuous = o.kind == "ramp" || o.kind == "phantom-speckle" || o.kind == "uniform";
  if (continuous && io::format_for_path(o.output) == io::ImageFormat::Pgm) {
    image = synth::quantize(image, o.range);
  }
  io::write_image(o.output, image);
}

}  // namespace

ThresholdPolicy parse_threshold(std::string_view text) {
  if (text.starts_with("fixed:")) {
    return ThresholdPolicy::fixed(parse_number(text.substr(6), "fixed threshold"));
  }
  if (text == "dynamic") return ThresholdPolicy::dynamic();
  if (!text.starts_with("dynamic:")) {
    throw ArgumentError("threshold must be fixed:<p> or dynamic[:eta=<v>,w=<v>], got '" +
                        std::string(text) + "'");
  }
  double eta = 0.025;
  double width = 1.0;
  std::string_view rest = text.substr(8);
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    if (item.starts_with("eta=")) {
      eta = parse_number(item.substr(4), "eta");
    } else if (item.starts_with("w=")) {
      width = parse_number(item.substr(2), "peak width");
    } else {
      throw ArgumentError("unknown dynamic threshold key '" + std::string(item) + "'");
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return ThresholdPolicy::dynamic(eta, width);
}

MappingKind parse_mode(std::string_view text) {
  if (text == "full") return MappingKind::FullTurn;
  if (text == "half") return MappingKind::HalfTurn;
  if (text == "signed") return MappingKind::SignedCentered;
  throw ArgumentError("mode must be full, half or signed, got '" + std::string(text) + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-encoded quantum image pipeline simulator", "qpipe"};
  app.require_subcommand(1);

  EncodeOptions enc;
  CLI::App* encode = app.add_subcommand("encode", "Encode one image, simulate, write the readout CSV");
  encode->add_option("input", enc.input, "Input image (.pgm or .csv)")->required();
  add_common(encode, enc.common, "full");
  encode->add_option("-o,--output", enc.output, "Readout CSV (default: stdout)");
  encode->add_option("--dump-circuit", enc.dump_circuit, "Write the gate list here");
  encode->add_option("--oracle", enc.oracle, "Oracle construction")
      ->check(CLI::IsMember({"gray", "naive"}))
      ->capture_default_str();

  QedOptions qo;
  CLI::App* qed_cmd = app.add_subcommand("qed", "Quantum edge detection against the classical gradient");
  qed_cmd->add_option("input", qo.input, "Input image (.pgm or .csv)")->required();
  add_common(qed_cmd, qo.common, "half");
  qed_cmd->add_option("--fill", qo.fill, "Value entering at the shifted border")
      ->check(CLI::IsMember({"zero", "wrap"}))
      ->capture_default_str();
  qed_cmd->add_option("--direction", qo.direction, "sobel also reports both directions")
      ->check(CLI::IsMember({"horizontal", "vertical", "sobel"}))
      ->capture_default_str();
  qed_cmd->add_option("--json", qo.json, "Report JSON (default: stdout)");
  qed_cmd->add_option("--gradients", qo.gradients,
                      "Write quantum gradient grids to <prefix>_<direction>.csv");
  qed_cmd->add_flag("--mae-include-annihilated-as-zero", qo.include_annihilated,
                    "Count annihilated pixels as 0 instead of skipping them");

  ComplexityOptions co;
  CLI::App* cx = app.add_subcommand("complexity", "Resource scaling table for k x k images");
  cx->add_option("-q,--qubits-estimation", co.q, "Estimation qubits q")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  cx->add_option("--k-min", co.k_min, "Smallest side length")->capture_default_str();
  cx->add_option("--k-max", co.k_max, "Largest side length")->capture_default_str();
  cx->add_option("-o,--output", co.output, "CSV (default: stdout)");

  SweepOptions so;
  CLI::App* sweep = app.add_subcommand("threshold-sweep", "Gradient MAE across readout thresholds");
  sweep->add_option("input", so.input, "Input image (.pgm or .csv)")->required();
  add_common(sweep, so.common, "half");
  sweep->add_option("--fill", so.fill, "Value entering at the shifted border")
      ->check(CLI::IsMember({"zero", "wrap"}))
      ->capture_default_str();
  sweep->add_option("--direction", so.direction, "Gradient to score")
      ->check(CLI::IsMember({"horizontal", "vertical", "sobel"}))
      ->capture_default_str();
  sweep->add_option("--thresholds", so.thresholds, "Fixed thresholds to try")
      ->capture_default_str();
  sweep->add_option("-o,--output", so.output, "CSV (default: stdout)");

  GenOptions go;
  CLI::App* gen = app.add_subcommand("gen", "Write a seeded synthetic image");
  gen->add_option("kind", go.kind, "Generator")
      ->required()
      ->check(CLI::IsMember({"ramp", "step", "phantom-speckle", "uniform", "levels"}));
  gen->add_option("-o,--output", go.output, "Output image (.pgm or .csv)")->required();
  gen->add_option("--width", go.width, "Columns")->capture_default_str();
  gen->add_option("--height", go.height, "Rows")->capture_default_str();
  gen->add_option("--seed", go.seed, "RNG seed")->capture_default_str();
  gen->add_option("--intensity-range", go.range, "Intensities lie in [0, R)")->capture_default_str();
  gen->add_option("--sigma", go.sigma, "Speckle strength")->capture_default_str();
  gen->add_option("--levels", go.levels, "Distinct levels for the levels generator")
      ->capture_default_str();
  gen->add_option("--high", go.high, "Block intensity for step")->capture_default_str();
  gen->add_option("--low", go.low, "Background intensity for step")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*encode) {
      run_encode(enc, out);
    } else if (*qed_cmd) {
      run_qed(qo, out);
    } else if (*cx) {
      run_complexity(co, out);
    } else if (*sweep) {
      run_sweep(so, out);
    } else if (*gen) {
      run_gen(go);
    }
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitQubitCap;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace qpipe::cli

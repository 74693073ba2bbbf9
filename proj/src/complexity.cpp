#include "qpipe/complexity.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "qpipe/errors.hpp"
#include "qpipe/phasemap.hpp"

namespace qpipe::complexity {

namespace {

void check_params(int q, int n, std::uint64_t pixels, std::uint64_t nonzero) {
  if (q < 1 || n < 1 || n > 40) {
    std::ostringstream os;
    os << "resource formulas need q >= 1 and 1 <= n <= 40 (got q=" << q << ", n=" << n << ")";
    throw ArgumentError(os.str());
  }
  if (pixels > (std::uint64_t{1} << n)) throw ArgumentError("pixel count exceeds 2^n");
  if (nonzero > pixels) throw ArgumentError("nonzero pixel count exceeds the pixel count");
}

ResourceEstimate qpipe_base(Method method, int q, int n, std::uint64_t pixels,
                            std::uint64_t nonzero) {
  check_params(q, n, pixels, nonzero);
  ResourceEstimate e;
  e.method = method;
  e.qubits = q + n;
  e.params = {q, n, pixels, nonzero};
  e.cp_count = static_cast<std::uint64_t>(q) * nonzero;
  e.hadamard_count = static_cast<std::uint64_t>(q + n);
  e.qft_count = qft_gate_count(q);
  e.is_upper_bound = pixels != (std::uint64_t{1} << n);
  e.depth_estimate = depth_estimate(method, q, n, pixels, nonzero);
  return e;
}

void finish_total(ResourceEstimate& e) {
  e.total_gates = e.hadamard_count + e.x_count + e.cp_count + e.qft_count;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::FRQI:
      return "FRQI";
    case Method::NEQR:
      return "NEQR";
    case Method::QPipeNaive:
      return "QPIPE-naive";
    case Method::QPipeGray:
      return "QPIPE-gray";
  }
  return "?";
}

std::uint64_t qft_gate_count(int q) {
  const auto uq = static_cast<std::uint64_t>(q);
  return uq + uq * (uq - 1) / 2 + uq / 2;
}

ResourceEstimate naive_counts(int q, int n, std::uint64_t pixels, std::uint64_t nonzero) {
  ResourceEstimate e = qpipe_base(Method::QPipeNaive, q, n, pixels, nonzero);
  e.x_count = static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(n) * (std::uint64_t{1} << n);
  finish_total(e);
  return e;
}

ResourceEstimate gray_counts(int q, int n, std::uint64_t pixels, std::uint64_t nonzero) {
  ResourceEstimate e = qpipe_base(Method::QPipeGray, q, n, pixels, nonzero);
  const std::uint64_t per_qubit = 2 * static_cast<std::uint64_t>(n) + (std::uint64_t{1} << n) - 2;
  e.x_count = static_cast<std::uint64_t>(q) * per_qubit;
  finish_total(e);
  return e;
}

std::uint64_t depth_estimate(Method method, int q, int n, std::uint64_t pixels,
                             std::uint64_t nonzero) {
  const auto uq = static_cast<std::uint64_t>(q);
  const auto un = static_cast<std::uint64_t>(n);
  switch (method) {
    case Method::FRQI:
      return pixels * pixels;
    case Method::NEQR:
      return uq * pixels * un;
    case Method::QPipeNaive:
      return uq * un * nonzero;
    case Method::QPipeGray:
      return uq * (un * nonzero + (std::uint64_t{1} << n));
  }
  return 0;
}

std::vector<ResourceEstimate> comparative_counts(int q, int n) {
  check_params(q, n, 0, 0);
  const std::uint64_t pixels = std::uint64_t{1} << n;

  ResourceEstimate frqi;
  frqi.method = Method::FRQI;
  frqi.qubits = n + 1;
  frqi.params = {q, n, pixels, pixels};
  frqi.total_gates = depth_estimate(Method::FRQI, q, n, pixels, pixels);
  frqi.depth_estimate = frqi.total_gates;
  frqi.is_leading_term_only = true;

  ResourceEstimate neqr;
  neqr.method = Method::NEQR;
  neqr.qubits = q + n;
  neqr.params = {q, n, pixels, pixels};
  neqr.total_gates = depth_estimate(Method::NEQR, q, n, pixels, pixels);
  neqr.depth_estimate = neqr.total_gates;
  neqr.is_leading_term_only = true;

  return {frqi, neqr, naive_counts(q, n, pixels, pixels), gray_counts(q, n, pixels, pixels)};
}

double reduction_ratio(int n) {
  const double N = std::ldexp(1.0, n);
  return n * N / (2.0 * n + N - 2.0);
}

ResourceEstimate tally_estimate(const Circuit& circuit, Method method) {
  const GateTally t = count_gates(circuit);
  const RegisterLayout& l = circuit.layout;
  ResourceEstimate e;
  e.method = method;
  e.qubits = l.total_qubits();
  e.x_count = t.x;
  e.cp_count = t.cp;
  e.hadamard_count = t.hadamard;
  e.qft_count = t.qft;
  e.total_gates = t.total;
  const std::uint64_t nonzero = t.cp / static_cast<std::uint64_t>(l.q);
  e.params = {l.q, l.n, l.positions(), nonzero};
  e.depth_estimate = depth_estimate(method, l.q, l.n, l.positions(), nonzero);
  return e;
}

std::vector<ScalingRow> emit_scaling_table(int q, int k_min, int k_max) {
  if (k_min < 2 || k_max < k_min) throw ArgumentError("scaling table needs 2 <= k_min <= k_max");
  std::vector<ScalingRow> rows;
  rows.reserve(static_cast<std::size_t>(k_max - k_min + 1) * 4);
  for (int k = k_min; k <= k_max; ++k) {
    const std::uint64_t pixels = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k);
    const int n = position_qubits_for(pixels);

    ResourceEstimate frqi;
    frqi.method = Method::FRQI;
    frqi.qubits = n + 1;
    frqi.params = {q, n, pixels, pixels};
    frqi.total_gates = frqi.depth_estimate = depth_estimate(Method::FRQI, q, n, pixels, pixels);
    frqi.is_leading_term_only = true;

    ResourceEstimate neqr = frqi;
    neqr.method = Method::NEQR;
    neqr.qubits = q + n;
    neqr.total_gates = neqr.depth_estimate = depth_estimate(Method::NEQR, q, n, pixels, pixels);

    rows.push_back({k, frqi});
    rows.push_back({k, neqr});
    rows.push_back({k, naive_counts(q, n, pixels, pixels)});
    rows.push_back({k, gray_counts(q, n, pixels, pixels)});
  }
  return rows;
}

void write_scaling_csv(std::ostream& os, const std::vector<ScalingRow>& rows) {
  os << "k,N,method,qubits,x_count,cp_count,total_gates,depth,is_estimate\n";
  for (const ScalingRow& r : rows) {
    const ResourceEstimate& e = r.estimate;
    os << r.k << ',' << e.params.pixels << ',' << method_name(e.method) << ',' << e.qubits << ',';
    if (e.is_leading_term_only) {
      os << ",,";
    } else {
      os << e.x_count << ',' << e.cp_count << ',';
    }
    os << e.total_gates << ',' << e.depth_estimate << ','
       << ((e.is_leading_term_only || e.is_upper_bound) ? 1 : 0) << '\n';
  }
}

}  // namespace qpipe::complexity

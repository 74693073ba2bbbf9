#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "qpipe/circuit.hpp"

namespace qpipe::complexity {

enum class Method { FRQI, NEQR, QPipeNaive, QPipeGray };

std::string_view method_name(Method m);

struct ResourceParams {
  int q = 0;
  int n = 0;
  std::uint64_t pixels = 0;   // N
  std::uint64_t nonzero = 0;  // N_{!=0}
};

/// Gate and depth resources for encoding one image.
///
/// For the Q-PIPE rows x/cp/hadamard/qft are exact formula values and
/// total_gates is their sum. FRQI and NEQR rows carry unit-constant leading
/// terms only (`is_leading_term_only`). depth_estimate is always a
/// leading-term estimate.
struct ResourceEstimate {
  Method method = Method::QPipeGray;
  int qubits = 0;
  std::uint64_t x_count = 0;
  std::uint64_t cp_count = 0;
  std::uint64_t hadamard_count = 0;
  std::uint64_t qft_count = 0;
  std::uint64_t total_gates = 0;
  std::uint64_t depth_estimate = 0;
  ResourceParams params;
  bool is_leading_term_only = false;
  bool is_upper_bound = false;  // N was not a power of two
};

/// Inverse QFT gates: q Hadamards + q(q-1)/2 controlled phases + floor(q/2) swaps.
std::uint64_t qft_gate_count(int q);

/// X = q n 2^n, CP = q N_{!=0}, H = q + n.
ResourceEstimate naive_counts(int q, int n, std::uint64_t pixels, std::uint64_t nonzero);

/// X = q (2n + 2^n - 2), CP = q N_{!=0}, H = q + n.
ResourceEstimate gray_counts(int q, int n, std::uint64_t pixels, std::uint64_t nonzero);

/// Oracle depth leading term with unit constants: naive q n N_{!=0}, Gray
/// q (n N_{!=0} + 2^n); FRQI N^2; NEQR q N n.
std::uint64_t depth_estimate(Method method, int q, int n, std::uint64_t pixels,
                             std::uint64_t nonzero);

/// The four comparison rows for an all-nonzero image of N = 2^n pixels.
std::vector<ResourceEstimate> comparative_counts(int q, int n);

/// Naive over Gray Pauli-X count for N = 2^n: n N / (2n + N - 2).
double reduction_ratio(int n);

/// Same fields as ResourceEstimate, filled from an IR tally of a built circuit.
ResourceEstimate tally_estimate(const Circuit& circuit, Method method);

struct ScalingRow {
  int k = 0;
  ResourceEstimate estimate;
};

/// All four methods for k x k all-nonzero images, k = k_min..k_max.
std::vector<ScalingRow> emit_scaling_table(int q, int k_min = 2, int k_max = 256);

/// CSV: k,N,method,qubits,x_count,cp_count,total_gates,depth,is_estimate.
/// x/cp are left empty for leading-term rows; is_estimate marks rows whose
/// gate counts are leading terms or upper bounds.
void write_scaling_csv(std::ostream& os, const std::vector<ScalingRow>& rows);

}  // namespace qpipe::complexity

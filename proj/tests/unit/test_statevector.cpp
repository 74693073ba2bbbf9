#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qpipe/errors.hpp"
#include "qpipe/statevector.hpp"

using qpipe::Complex;
using qpipe::RegisterLayout;
using qpipe::StateVector;

TEST_SUITE("statevector") {

TEST_CASE("zero state") {
  const StateVector s = StateVector::zero({1, 1});
  REQUIRE(s.size() == 4);
  CHECK(s[0] == Complex(1.0, 0.0));
  for (std::size_t i = 1; i < 4; ++i) CHECK(s[i] == Complex(0.0, 0.0));

  const StateVector big = StateVector::zero({3, 3});
  CHECK(big.size() == 64);
  CHECK(big[0] == Complex(1.0, 0.0));
}

TEST_CASE("q=8, n=10 register has 2^18 amplitudes") {
  const StateVector s = StateVector::zero({8, 10});
  CHECK(s.size() == (std::size_t{1} << 18));
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qubit cap") {
  CHECK_THROWS_AS(StateVector(6, 5), qpipe::ResourceLimitError);
  try {
    StateVector(30, 24);
  } catch (const qpipe::ResourceLimitError& e) {
    CHECK(e.requested() == 30);
    CHECK(e.cap() == 24);
    CHECK(std::string(e.what()).find("30") != std::string::npos);
  }
  CHECK_NOTHROW(StateVector(5, 5));
}

TEST_CASE("Hadamard") {
  StateVector s(1);
  s.apply_hadamard(0);
  CHECK(s[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(s[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));

  StateVector u = StateVector::zero({2, 2});
  for (int qb = 0; qb < 4; ++qb) u.apply_hadamard(qb);
  for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(u[i] - Complex(0.25, 0.0)) < 1e-15);

  CHECK_THROWS_AS(s.apply_hadamard(1), qpipe::ArgumentError);
  CHECK_THROWS_AS(s.apply_hadamard(-1), qpipe::ArgumentError);
}

TEST_CASE("Pauli-X") {
  StateVector s(1);
  s.apply_pauli_x(0);
  CHECK(s[0] == Complex(0.0, 0.0));
  CHECK(s[1] == Complex(1.0, 0.0));

  StateVector t = StateVector::zero({1, 2});
  t.apply_pauli_x(0);  // position qubit 0
  CHECK(t[0b001] == Complex(1.0, 0.0));
}

TEST_CASE("controlled phase") {
  SUBCASE("empty controls is a phase on |1>") {
    StateVector s(1);
    s.apply_hadamard(0);
    s.apply_controlled_phase({}, 0, std::numbers::pi);
    CHECK(std::abs(s[0] - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
    CHECK(std::abs(s[1] - Complex(-1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
  }
  SUBCASE("single control touches only |11>") {
    StateVector s(2);
    s.apply_hadamard(0);
    s.apply_hadamard(1);
    const int ctrl[] = {1};
    s.apply_controlled_phase(ctrl, 0, std::numbers::pi / 2);
    CHECK(std::abs(s[0] - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(s[1] - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(s[2] - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(s[3] - Complex(0.0, 0.5)) < 1e-15);
  }
  SUBCASE("zero angle is the identity") {
    std::mt19937_64 rng(3);
    const auto amps = oracle::random_state(8, rng);
    StateVector s = StateVector::from_amplitudes(amps);
    const int ctrl[] = {2};
    s.apply_controlled_phase(ctrl, 0, 0.0);
    CHECK(oracle::sup_diff(s.amplitudes(), amps) == 0.0);
  }
  SUBCASE("invalid qubit sets") {
    StateVector s(3);
    const int dup[] = {1, 1};
    const int overlap[] = {0};
    const int out_of_range[] = {5};
    CHECK_THROWS_AS(s.apply_controlled_phase(dup, 0, 1.0), qpipe::ArgumentError);
    CHECK_THROWS_AS(s.apply_controlled_phase(overlap, 0, 1.0), qpipe::ArgumentError);
    CHECK_THROWS_AS(s.apply_controlled_phase(out_of_range, 0, 1.0), qpipe::ArgumentError);
  }
}

TEST_CASE("involutions on random states") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto amps = oracle::random_state(16, rng);
    StateVector s = StateVector::from_amplitudes(amps);
    const int target = trial % 4;
    s.apply_hadamard(target);
    s.apply_hadamard(target);
    CHECK(oracle::sup_diff(s.amplitudes(), amps) < 1e-12);
    s.apply_pauli_x(target);
    s.apply_pauli_x(target);
    CHECK(oracle::sup_diff(s.amplitudes(), amps) < 1e-12);
    const int ctrl[] = {(target + 1) % 4, (target + 2) % 4};
    s.apply_controlled_phase(ctrl, target, 0.3 * trial + 0.1);
    s.apply_controlled_phase(ctrl, target, -(0.3 * trial + 0.1));
    CHECK(oracle::sup_diff(s.amplitudes(), amps) < 1e-12);
    s.apply_swap(target, (target + 3) % 4);
    s.apply_swap(target, (target + 3) % 4);
    CHECK(oracle::sup_diff(s.amplitudes(), amps) < 1e-12);
  }
}

TEST_CASE("norm is preserved over random gate sequences") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> qubit(0, 6);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int trial = 0; trial < 10; ++trial) {
    StateVector s(7);
    for (int g = 0; g < 100; ++g) {
      const int t = qubit(rng);
      switch (kind(rng)) {
        case 0:
          s.apply_hadamard(t);
          break;
        case 1:
          s.apply_pauli_x(t);
          break;
        default: {
          std::vector<int> ctrls;
          for (int c = 0; c < 7; ++c) {
            if (c != t && (rng() & 1U)) ctrls.push_back(c);
          }
          s.apply_controlled_phase(ctrls, t, angle(rng));
        }
      }
    }
    CHECK(std::abs(s.norm() - 1.0) <= qpipe::kNormTolerance);
  }
}

TEST_CASE("inverse QFT equals the dense conjugate DFT") {
  std::mt19937_64 rng(99);
  for (int q = 1; q <= 5; ++q) {
    for (int n = 1; n <= 2; ++n) {
      CAPTURE(q);
      CAPTURE(n);
      const auto amps = oracle::random_state(std::size_t{1} << (q + n), rng);
      StateVector s = StateVector::from_amplitudes(amps);
      qpipe::apply_inverse_qft(s, {q, n});
      CHECK(oracle::sup_diff(s.amplitudes(), oracle::apply_dense_inverse_qft(amps, q, n)) <= 1e-9);
    }
  }
}

TEST_CASE("inverse QFT examples") {
  SUBCASE("uniform superposition goes to |0>") {
    StateVector s = StateVector::zero({3, 1});
    for (int j = 0; j < 3; ++j) s.apply_hadamard(1 + j);
    qpipe::apply_inverse_qft(s, {3, 1});
    CHECK(std::abs(s[0] - Complex(1.0, 0.0)) < 1e-12);
  }
  SUBCASE("Fourier state of 5 decodes to 5") {
    std::vector<Complex> amps(16);
    for (std::size_t k = 0; k < 8; ++k) amps[k * 2] = oracle::turn(k * 5.0 / 8.0) / std::sqrt(8.0);
    StateVector s = StateVector::from_amplitudes(amps);
    qpipe::apply_inverse_qft(s, {3, 1});
    CHECK(std::norm(s[5 * 2]) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("inverse after forward is the identity") {
    std::mt19937_64 rng(5);
    const auto amps = oracle::random_state(8, rng);
    // Forward QFT as the dense adjoint of the inverse DFT matrix.
    const auto m = oracle::inverse_dft_matrix(3);
    std::vector<Complex> fwd(8);
    for (std::size_t j = 0; j < 8; ++j) {
      for (std::size_t k = 0; k < 8; ++k) fwd[j] += std::conj(m[k * 8 + j]) * amps[k];
    }
    // Embed as q=3 over a one-qubit position register fixed at x=0.
    std::vector<Complex> embedded(16);
    for (std::size_t k = 0; k < 8; ++k) embedded[k * 2] = fwd[k];
    StateVector s = StateVector::from_amplitudes(embedded);
    qpipe::apply_inverse_qft(s, {3, 1});
    for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(s[k * 2] - amps[k]) <= 1e-10);
  }
}

TEST_CASE("marginal distribution") {
  const auto zero = qpipe::marginal_distribution(StateVector::zero({2, 2}), {2, 2});
  CHECK(zero(0, 0) == 1.0);
  CHECK(zero.total() == doctest::Approx(1.0));

  StateVector u = StateVector::zero({2, 2});
  for (int qb = 0; qb < 4; ++qb) u.apply_hadamard(qb);
  const auto uni = qpipe::marginal_distribution(u, {2, 2});
  for (std::uint64_t k = 0; k < 4; ++k) {
    for (std::uint64_t x = 0; x < 4; ++x) CHECK(uni(k, x) == doctest::Approx(1.0 / 16));
  }
  CHECK(std::abs(uni.total() - 1.0) <= 1e-10);
  CHECK(uni.column(2).size() == 4);

  CHECK_THROWS_AS(qpipe::marginal_distribution(u, {3, 2}), qpipe::ArgumentError);
}

TEST_CASE("qubit cap from the environment") {
  // default_qubit_cap() re-reads the variable on every call.
  ::setenv("QPIPE_QUBIT_CAP", "7", 1);
  CHECK(qpipe::default_qubit_cap() == 7);
  CHECK_THROWS_AS(StateVector(8), qpipe::ResourceLimitError);
  ::setenv("QPIPE_QUBIT_CAP", "garbage", 1);
  CHECK(qpipe::default_qubit_cap() == qpipe::kDefaultQubitCap);
  ::unsetenv("QPIPE_QUBIT_CAP");
  CHECK(qpipe::default_qubit_cap() == qpipe::kDefaultQubitCap);
}

}

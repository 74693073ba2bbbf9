#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qpipe/circuit.hpp"
#include "qpipe/errors.hpp"

using namespace qpipe;

namespace {

PhaseImage phases_of(int n, std::vector<double> theta) {
  PhaseImage p;
  p.n = n;
  p.theta = std::move(theta);
  return p;
}

std::uint64_t count_kind(const Circuit& c, GateKind kind) {
  return static_cast<std::uint64_t>(
      std::count_if(c.ops.begin(), c.ops.end(), [&](const GateOp& op) { return op.kind == kind; }));
}

}  // namespace

TEST_SUITE("circuit") {

TEST_CASE("Gray sequence") {
  SUBCASE("n=2 code words") {
    std::vector<std::uint64_t> codes;
    for (const GrayStep& s : gray_sequence(2)) codes.push_back(s.code);
    CHECK(codes == std::vector<std::uint64_t>{0, 1, 3, 2});
  }
  SUBCASE("n=1") {
    const auto seq = gray_sequence(1);
    REQUIRE(seq.size() == 2);
    CHECK(seq[0].transition_bit == 0);
    CHECK_FALSE(seq[1].transition_bit.has_value());
  }
  SUBCASE("n=3 ends at 100b") { CHECK(gray_sequence(3).back().code == 4); }
  SUBCASE("every word once, single-bit transitions") {
    for (int n = 1; n <= 10; ++n) {
      const auto seq = gray_sequence(n);
      REQUIRE(seq.size() == (std::size_t{1} << n));
      std::set<std::uint64_t> seen;
      for (std::size_t s = 0; s < seq.size(); ++s) {
        CHECK(seq[s].code == (s ^ (s >> 1)));
        seen.insert(seq[s].code);
        if (s + 1 < seq.size()) {
          REQUIRE(seq[s].transition_bit.has_value());
          CHECK((seq[s].code ^ seq[s + 1].code) == (std::uint64_t{1} << *seq[s].transition_bit));
        }
      }
      CHECK(seen.size() == seq.size());
      CHECK(seq.back().code == (std::uint64_t{1} << (n - 1)));
    }
  }
  CHECK_THROWS_AS(gray_sequence(0), ArgumentError);
}

TEST_CASE("naive oracle structure") {
  const RegisterLayout l{1, 1};
  SUBCASE("two-pixel hand expansion") {
    const Circuit c = build_naive_oracle(l, phases_of(1, {0.0, 0.25}), 0);
    REQUIRE(c.ops.size() == 1);
    const GateOp& cp = c.ops[0];
    CHECK(cp.kind == GateKind::ControlledPhase);
    CHECK(cp.controls == std::vector<int>{l.estimation_qubit(0)});
    CHECK(cp.target == l.position_qubit(0));
    CHECK(cp.angle == doctest::Approx(std::numbers::pi / 2));
  }
  SUBCASE("zero image is empty") {
    CHECK(build_naive_oracle({2, 2}, phases_of(2, {0, 0, 0, 0}), 1).ops.empty());
  }
  SUBCASE("n=2 all nonzero") {
    const Circuit c = build_naive_oracle({1, 2}, phases_of(2, {0.1, 0.2, 0.3, 0.4}), 0);
    CHECK(count_kind(c, GateKind::PauliX) == 8);
    CHECK(count_kind(c, GateKind::ControlledPhase) == 4);
    for (const GateOp& op : c.ops) {
      if (op.kind != GateKind::ControlledPhase) continue;
      CHECK(op.target == 0);
      CHECK(op.controls == std::vector<int>{2, 1});
    }
  }
}

TEST_CASE("Gray oracle structure") {
  SUBCASE("4-pixel layout: 2 initial, 3 transition, 1 final X") {
    const Circuit c = build_gray_oracle({1, 2}, phases_of(2, {0.1, 0.2, 0.3, 0.4}), 0);
    CHECK(count_kind(c, GateKind::PauliX) == 6);
    CHECK(count_kind(c, GateKind::ControlledPhase) == 4);
    std::vector<GateKind> kinds;
    for (const GateOp& op : c.ops) kinds.push_back(op.kind);
    using K = GateKind;
    CHECK(kinds == std::vector<K>{K::PauliX, K::PauliX, K::ControlledPhase, K::PauliX,
                                  K::ControlledPhase, K::PauliX, K::ControlledPhase, K::PauliX,
                                  K::ControlledPhase, K::PauliX});
  }
  SUBCASE("zero image keeps the traversal skeleton and acts as identity") {
    for (int n = 1; n <= 4; ++n) {
      const RegisterLayout l{2, n};
      const Circuit c = build_gray_oracle(l, phases_of(n, std::vector<double>(std::size_t{1} << n)), 1);
      CHECK(count_kind(c, GateKind::PauliX) == 2 * n + (1u << n) - 2);
      CHECK(count_kind(c, GateKind::ControlledPhase) == 0);
      const auto u = oracle::circuit_unitary(c);
      const std::size_t dim = std::size_t{1} << l.total_qubits();
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          CHECK(std::abs(u[j * dim + i] - (i == j ? 1.0 : 0.0)) < 1e-14);
        }
      }
    }
  }
  SUBCASE("X count per estimation qubit is 2n + N - 2 for any image") {
    std::mt19937_64 rng(1);
    for (int n = 1; n <= 6; ++n) {
      const PhaseImage p = oracle::random_phases(n, rng);
      CHECK(count_kind(build_gray_oracle({3, n}, p, 2), GateKind::PauliX) == 2 * n + (1u << n) - 2);
    }
  }
}

TEST_CASE("oracle fragments realise the controlled diagonal") {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 4; ++n) {
    for (int q = 1; q <= 3; ++q) {
      const RegisterLayout l{q, n};
      for (int trial = 0; trial < 5; ++trial) {
        const PhaseImage p = oracle::random_phases(n, rng);
        const auto start = oracle::random_state(std::size_t{1} << l.total_qubits(), rng);
        for (int k = 0; k < q; ++k) {
          const auto expect = oracle::apply_diagonal_oracle(start, p.theta, n, k);
          for (const Circuit& c : {build_gray_oracle(l, p, k), build_naive_oracle(l, p, k)}) {
            auto s = StateVector::from_amplitudes(start);
            execute(c, s);
            CHECK(oracle::sup_diff(s.amplitudes(), expect) <= 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("Gray and naive oracles give the same unitary") {
  std::mt19937_64 rng(77);
  for (int n = 1; n <= 4; ++n) {
    for (int q = 1; q <= 3; ++q) {
      const RegisterLayout l{q, n};
      for (int trial = 0; trial < 10; ++trial) {
        const PhaseImage p = oracle::random_phases(n, rng);
        const PhaseImage imgs[] = {p};
        const Circuit gray = build_qpipe(l, imgs, {OracleKind::Gray, FusionPolicy::Fused});
        const Circuit naive = build_qpipe(l, imgs, {OracleKind::Naive, FusionPolicy::Fused});
        CHECK(oracle::sup_diff(oracle::circuit_unitary(gray), oracle::circuit_unitary(naive)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("full pipeline matches the closed-form QPE state") {
  std::mt19937_64 rng(5);
  for (int q = 1; q <= 4; ++q) {
    for (int n = 1; n <= 3; ++n) {
      const PhaseImage p = oracle::random_phases(n, rng);
      const PhaseImage imgs[] = {p};
      const StateVector s = simulate(build_qpipe({q, n}, imgs));
      CHECK(oracle::sup_diff(s.amplitudes(), oracle::qpe_state(p.theta, q)) <= 1e-10);
    }
  }
}

TEST_CASE("exact phases decode deterministically") {
  SUBCASE("grid phases put 1/2^n on the right bin") {
    const int q = 4, n = 3;
    std::vector<double> theta(8);
    for (std::size_t x = 0; x < 8; ++x) theta[x] = double((5 * x + 3) % 16) / 16.0;
    const PhaseImage imgs[] = {phases_of(n, theta)};
    const auto joint = marginal_distribution(simulate(build_qpipe({q, n}, imgs)), {q, n});
    for (std::uint64_t x = 0; x < 8; ++x) {
      const auto k = static_cast<std::uint64_t>(theta[x] * 16);
      CHECK(joint(k, x) == doctest::Approx(1.0 / 8).epsilon(1e-12));
    }
  }
  SUBCASE("constant 5/8 measures 5") {
    const PhaseImage imgs[] = {phases_of(3, std::vector<double>(8, 5.0 / 8.0))};
    const auto joint = marginal_distribution(simulate(build_qpipe({3, 3}, imgs)), {3, 3});
    double p5 = 0.0;
    for (std::uint64_t x = 0; x < 8; ++x) p5 += joint(5, x);
    CHECK(p5 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("multi-image fusion") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const PhaseImage a = oracle::random_phases(3, rng);
    const PhaseImage b = oracle::random_phases(3, rng);
    const PhaseImage ab[] = {a, b};
    const PhaseImage sum[] = {accumulate_phases(ab)};
    const RegisterLayout l{3, 3};
    const StateVector fused = simulate(build_qpipe(l, ab));
    const StateVector seq = simulate(build_qpipe(l, ab, {OracleKind::Gray, FusionPolicy::Sequential}));
    const StateVector single = simulate(build_qpipe(l, sum));
    CHECK(oracle::sup_diff(fused.amplitudes(), single.amplitudes()) <= 1e-10);
    CHECK(oracle::sup_diff(seq.amplitudes(), single.amplitudes()) <= 1e-10);
  }
  SUBCASE("cancelling phases suppress the CP") {
    const PhaseImage a = phases_of(1, {0.0, 0.3});
    const PhaseImage imgs[] = {a, negate_phases(a)};
    CHECK(count_gates(build_qpipe({2, 1}, imgs)).cp == 0);
  }
  SUBCASE("shape mismatch") {
    const PhaseImage imgs[] = {phases_of(1, {0, 0.1}), phases_of(2, {0, 0, 0, 0.1})};
    CHECK_THROWS_AS(build_qpipe({2, 1}, imgs), ArgumentError);
  }
}

TEST_CASE("gate tally") {
  CHECK(count_gates(Circuit{{1, 1}, {}}) == GateTally{});

  const int q = 8, n = 6;
  std::vector<double> theta(64);
  for (std::size_t x = 0; x < 64; ++x) theta[x] = double(x + 1) / 256.0;
  const PhaseImage imgs[] = {phases_of(n, theta)};
  const GateTally t = count_gates(build_qpipe({q, n}, imgs));
  CHECK(t.x == 592);
  CHECK(t.cp == 512);
  CHECK(t.hadamard == 14);
  CHECK(t.qft == 8 * 10 / 2);
  CHECK(t.total == t.hadamard + t.x + t.cp + t.qft);
  CHECK(t.cp_control_arity.at(n) == 512);

  for (int qq = 1; qq <= 7; ++qq) {
    const PhaseImage blank[] = {phases_of(1, {0.0, 0.0})};
    const auto qft = count_gates(build_qpipe({qq, 1}, blank)).qft;
    CHECK(qft == static_cast<std::uint64_t>(qq * (qq + 2) / 2));
  }
}

TEST_CASE("serialization") {
  std::mt19937_64 rng(9);
  const RegisterLayout l{3, 3};
  const PhaseImage imgs[] = {oracle::random_phases(3, rng)};
  const Circuit c = build_qpipe(l, imgs);
  const std::string text = serialize(c);
  CHECK(text.rfind("H 0\n", 0) == 0);
  CHECK(text.find("SWAP ") != std::string::npos);

  const Circuit back = parse_circuit(text, l);
  REQUIRE(back.ops.size() == c.ops.size());
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    CHECK(back.ops[i].kind == c.ops[i].kind);
    CHECK(back.ops[i].target == c.ops[i].target);
    CHECK(back.ops[i].controls == c.ops[i].controls);
    CHECK(back.ops[i].angle == c.ops[i].angle);
  }
  CHECK(serialize(back) == text);

  SUBCASE("deterministic") { CHECK(serialize(build_qpipe(l, imgs)) == text); }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(parse_circuit("H\n", l), ParseError);
    CHECK_THROWS_AS(parse_circuit("Y 0\n", l), ParseError);
    CHECK_THROWS_AS(parse_circuit("X 9\n", l), ParseError);
    CHECK_THROWS_AS(parse_circuit("CP abc 0 1\n", l), ParseError);
  }
}

}

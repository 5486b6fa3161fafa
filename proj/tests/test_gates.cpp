#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "msn/errors.hpp"
#include "msn/gates.hpp"
#include "msn/sim.hpp"
#include "oracle.hpp"

using namespace msn;

namespace {

// Random circuit over every gate kind with parameters bound to slot names.
Circuit random_circuit(std::mt19937& rng, int n, int count) {
  Circuit c(n);
  const std::string letters = "XYZ";
  std::uniform_real_distribution<double> ang(-3, 3);
  for (int k = 0; k < count; ++k) {
    const int a = rng() % n;
    int b = rng() % n;
    if (b == a) b = (a + 1) % n;
    switch (rng() % 9) {
      case 0: c.add(make_cx(a, b)); break;
      case 1: c.add(make_rzz(a, b, ang(rng))); break;
      case 2: c.add(make_1q(GateKind::h, a)); break;
      case 3: c.add(make_1q(GateKind::s, a)); break;
      case 4: c.add(make_u3(a, ang(rng), ang(rng), ang(rng))); break;
      case 5: {
        Gate g = make_1q(rng() % 2 ? GateKind::rx : GateKind::ry, a);
        g.param = c.param("t" + std::to_string(rng() % 3));
        g.scale = ang(rng);
        g.offset = ang(rng);
        c.add(g);
        break;
      }
      case 6: c.add(make_clifford2(a, b, std::string{letters[rng() % 3], letters[rng() % 3]}, rng() % 2 ? 1 : -1)); break;
      case 7: {
        std::vector<int> qs;
        for (int q = 0; q < n; ++q)
          if (rng() % 2) qs.push_back(q);
        if (qs.empty()) qs.push_back(a);
        std::string w;
        for (std::size_t i = 0; i < qs.size(); ++i) w += letters[rng() % 3];
        Gate g = make_pauli_rot(qs, w, 0.0);
        g.param = c.param("t" + std::to_string(rng() % 3));
        g.scale = ang(rng);
        c.add(g);
        break;
      }
      default: c.add(make_1q(GateKind::rz, a, ang(rng))); break;
    }
  }
  return c;
}

// As-soon-as-possible and as-late-as-possible layerings; both give the depth.
std::pair<int, int> layer_depths(const Circuit& c) {
  const auto& gs = c.gates();
  std::vector<int> front(c.n_qubits(), 0);
  int asap = 0;
  for (const auto& g : gs) {
    if (g.kind == GateKind::barrier && g.qubits.empty()) continue;
    int t = 0;
    for (int q : g.qubits) t = std::max(t, front[q]);
    const int end = t + (g.kind == GateKind::barrier ? 0 : 1);
    for (int q : g.qubits) front[q] = end;
    asap = std::max(asap, end);
  }
  std::vector<int> back(c.n_qubits(), 0);
  int alap = 0;
  for (auto it = gs.rbegin(); it != gs.rend(); ++it) {
    int t = 0;
    for (int q : it->qubits) t = std::max(t, back[q]);
    const int end = t + (it->kind == GateKind::barrier ? 0 : 1);
    for (int q : it->qubits) back[q] = end;
    alap = std::max(alap, end);
  }
  return {asap, alap};
}

}  // namespace

TEST(Gates, DepthBasics) {
  EXPECT_EQ(depth(Circuit(3)), 0);
  Circuit c(4);
  c.add(make_cx(0, 1));
  c.add(make_cx(2, 3));
  EXPECT_EQ(depth(c), 1);
  c.add(make_1q(GateKind::h, 1));
  c.add(make_cx(1, 2));
  EXPECT_EQ(depth(c), 3);
  EXPECT_EQ(depth(c, true), 2);
  EXPECT_EQ(two_qubit_count(c), 3);
}

TEST(Gates, DepthAgreesWithLayeringOracles) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Circuit c = random_circuit(rng, 2 + trial % 4, 30);
    if (trial % 3 == 0) c.add(make_barrier({0, 1}));
    const auto [asap, alap] = layer_depths(c);
    EXPECT_EQ(asap, alap);
    EXPECT_EQ(depth(c), asap);
  }
}

TEST(Gates, BarrierSynchronizes) {
  Circuit c(2);
  c.add(make_1q(GateKind::h, 0));
  c.add(make_1q(GateKind::h, 0));
  c.add(make_barrier({0, 1}));
  c.add(make_1q(GateKind::h, 1));
  EXPECT_EQ(depth(c), 3);
  EXPECT_EQ(two_qubit_count(c), 0);
}

TEST(Gates, Connectivity) {
  Circuit c(4);
  c.add(make_cx(0, 3));
  EXPECT_EQ(check_connectivity(c, Connectivity::linear(4)).size(), 1u);
  EXPECT_TRUE(check_connectivity(c, Connectivity::all_to_all(4)).empty());
  // 2x3: rows 0-1-2 and 5-4-3, rungs (0,5) (1,4) (2,3)
  const auto g = Connectivity::grid_2xN(3);
  const std::set<std::pair<int, int>> want = {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 5}, {1, 4}, {2, 3}};
  EXPECT_EQ(g.edges, want);
  std::mt19937 rng(12);
  EXPECT_TRUE(check_connectivity(random_circuit(rng, 5, 40), Connectivity::all_to_all(5)).empty());
}

TEST(Gates, LoweringPreservesUnitary) {
  std::mt19937 rng(13);
  for (NativeBasis basis : {NativeBasis::cx_u3, NativeBasis::rzz_rx_rz, NativeBasis::rzz_rxyz}) {
    for (int trial = 0; trial < 15; ++trial) {
      const int n = 2 + trial % 3;
      const Circuit c = random_circuit(rng, n, 25);
      const Circuit low = lower_to_native(c, basis);
      const auto theta = oracle::random_angles(c.n_params(), 100 + trial);
      EXPECT_LT(oracle::phase_distance(circuit_unitary(low, theta), circuit_unitary(c, theta)), 1e-10);
      std::set<GateKind> allowed;
      switch (basis) {
        case NativeBasis::cx_u3: allowed = {GateKind::cx, GateKind::u3, GateKind::rx, GateKind::ry, GateKind::rz}; break;
        case NativeBasis::rzz_rx_rz: allowed = {GateKind::rzz, GateKind::rx, GateKind::rz}; break;
        case NativeBasis::rzz_rxyz: allowed = {GateKind::rzz, GateKind::rx, GateKind::ry, GateKind::rz}; break;
      }
      for (const auto& g : low.gates())
        if (g.kind != GateKind::barrier) EXPECT_TRUE(allowed.count(g.kind)) << kind_name(g.kind);
    }
  }
}

TEST(Gates, LoweringExamples) {
  Circuit cx(2);
  cx.add(make_cx(0, 1));
  const Circuit low = lower_to_native(cx, NativeBasis::rzz_rx_rz);
  int rzz = 0;
  for (const auto& g : low.gates()) rzz += g.kind == GateKind::rzz;
  EXPECT_EQ(rzz, 1);
  EXPECT_LT(oracle::phase_distance(circuit_unitary(low, {}), circuit_unitary(cx, {})), 1e-12);

  Circuit rot(2);
  rot.add(make_pauli_rot({0, 1}, "XY", 0.7));
  const Circuit lr = lower_to_native(rot, NativeBasis::cx_u3);
  EXPECT_EQ(two_qubit_count(lr), 2);
  const oracle::Mat expect = (oracle::cplx(0, -0.35) * oracle::pauli("XY")).exp();
  EXPECT_LT(oracle::phase_distance(circuit_unitary(lr, {}), expect), 1e-12);

  EXPECT_EQ(lower_to_native(Circuit(3), NativeBasis::cx_u3).gates().size(), 0u);
  EXPECT_THROW(basis_from_name("toffoli"), Error);
}

TEST(Gates, JsonRoundTrip) {
  std::mt19937 rng(14);
  const Circuit c = random_circuit(rng, 4, 40);
  const Circuit back = circuit_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  const auto theta = oracle::random_angles(c.n_params(), 7);
  EXPECT_LT((circuit_unitary(back, theta) - circuit_unitary(c, theta)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(circuit_from_json("{\"n_qubits\":2,\"gates\":[{\"kind\":\"cx\",\"qubits\":[0,5]}]}"), Error);
}

TEST(Gates, InverseUndoes) {
  std::mt19937 rng(15);
  Circuit c = random_circuit(rng, 3, 30);
  const Circuit inv = c.inverse();
  c.append(inv);
  const auto theta = oracle::random_angles(c.n_params(), 8);
  EXPECT_LT(oracle::phase_distance(circuit_unitary(c, theta), oracle::Mat::Identity(8, 8)), 1e-10);
}

TEST(Gates, QasmExport) {
  Circuit c(2);
  c.add(make_cx(0, 1));
  c.add(make_1q(GateKind::rz, 1, 0.5));
  const std::string q = to_qasm(c, {});
  EXPECT_NE(q.find("OPENQASM 2.0"), std::string::npos);
  EXPECT_NE(q.find("cx q[0],q[1]"), std::string::npos);
}

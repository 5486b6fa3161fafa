#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "msn/compiler.hpp"
#include "msn/errors.hpp"
#include "msn/sim.hpp"
#include "oracle.hpp"

using namespace msn;
using oracle::cplx;
using oracle::Mat;

namespace {

Mat random_density(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  const int dim = 1 << n;
  Mat a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(d(rng), d(rng));
  Mat rho = a * a.adjoint();
  return rho / rho.trace().real();
}

// Tr_A(rho) x I/d on the support, written as the uniform Pauli twirl over the support.
Mat twirl(const Mat& rho, int n, const std::vector<int>& support) {
  const int k = static_cast<int>(support.size());
  const char letters[] = "IXYZ";
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  int count = 0;
  for (int code = 0; code < (1 << (2 * k)); ++code, ++count) {
    std::string w(n, 'I');
    for (int i = 0; i < k; ++i) w[support[i]] = letters[(code >> (2 * i)) & 3];
    const Mat p = oracle::pauli(w);
    out += p * rho * p;
  }
  return out / count;
}

// Entanglement fidelity from Kraus operators: sum |Tr K|^2 / d^2.
double entanglement_fidelity(const KrausChannel& ch) {
  const double d = static_cast<double>(ch.ops.front().rows());
  double f = 0;
  for (const auto& k : ch.ops) f += std::norm(k.trace());
  return f / (d * d);
}

PauliSum random_sum(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  PauliSum h(n);
  const char letters[] = "IXYZ";
  for (int t = 0; t < 20; ++t) {
    std::string w(n, 'I');
    for (auto& c : w) c = letters[rng() % 4];
    h.add(w, d(rng));
  }
  return h;
}

}  // namespace

TEST(Sim, TextbookGateMatrices) {
  const double r = 1 / std::sqrt(2.0);
  Mat h(2, 2);
  h << r, r, r, -r;
  EXPECT_LT((gate_matrix(make_1q(GateKind::h, 0), {}) - h).cwiseAbs().maxCoeff(), 1e-15);
  // control is local bit 0: |b1 b0⟩ = |01⟩ (index 1) goes to |11⟩ (index 3)
  Mat cx = Mat::Zero(4, 4);
  cx(0, 0) = cx(2, 2) = cx(3, 1) = cx(1, 3) = 1;
  EXPECT_LT((gate_matrix(make_cx(0, 1), {}) - cx).cwiseAbs().maxCoeff(), 1e-15);
  for (double a : {0.3, -1.7}) {
    EXPECT_LT((gate_matrix(make_1q(GateKind::rx, 0, a), {}) - (cplx(0, -a / 2) * oracle::pauli("X")).exp()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((gate_matrix(make_1q(GateKind::ry, 0, a), {}) - (cplx(0, -a / 2) * oracle::pauli("Y")).exp()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((gate_matrix(make_1q(GateKind::rz, 0, a), {}) - (cplx(0, -a / 2) * oracle::pauli("Z")).exp()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((gate_matrix(make_rzz(0, 1, a), {}) - (cplx(0, -a / 2) * oracle::pauli("ZZ")).exp()).cwiseAbs().maxCoeff(), 1e-14);
  }
  // u3(θ, φ, λ) = Rz(φ) Ry(θ) Rz(λ) up to phase
  const double t = 0.4, p = 1.1, l = -0.6;
  const Mat zyz = (cplx(0, -p / 2) * oracle::pauli("Z")).exp() * (cplx(0, -t / 2) * oracle::pauli("Y")).exp() *
                  (cplx(0, -l / 2) * oracle::pauli("Z")).exp();
  EXPECT_LT(oracle::phase_distance(gate_matrix(make_u3(0, t, p, l), {}), zyz), 1e-14);
}

TEST(Sim, ParametricAngleIsOffsetPlusScaledTheta) {
  Circuit c(1);
  Gate g = make_1q(GateKind::rz, 0);
  g.param = c.param("t");
  g.scale = -2.0;
  g.offset = 0.25;
  c.add(g);
  const double th = 0.8;
  EXPECT_LT((gate_matrix(c.gates()[0], {th}) - (cplx(0, -(0.25 - 2 * th) / 2) * oracle::pauli("Z")).exp()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Sim, ApplyLocalMatchesKron) {
  std::mt19937 rng(3);
  std::normal_distribution<double> d;
  Mat m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = cplx(d(rng), d(rng));
  Eigen::VectorXcd v(8);
  for (int i = 0; i < 8; ++i) v[i] = cplx(d(rng), d(rng));
  // acting on qubits {2, 0}: local bit 0 is qubit 2, local bit 1 is qubit 0
  Mat full = Mat::Zero(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (((i >> 1) & 1) != ((j >> 1) & 1)) continue;
      const int li = ((i >> 2) & 1) | ((i & 1) << 1), lj = ((j >> 2) & 1) | ((j & 1) << 1);
      full(i, j) = m(li, lj);
    }
  Eigen::VectorXcd w = v;
  apply_local(w.data(), 3, m, {2, 0});
  EXPECT_LT((w - full * v).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Sim, PureAndMixedAgree) {
  const CompiledAnsatz ca = compile(
      [] {
        AnsatzSpec s;
        s.n_spatial = 2;
        s.reference_occupations = {1, 1, 0, 0};
        return s;
      }(),
      Strategy::msn, Topology::grid_2xN);
  const auto theta = oracle::random_angles(ca.circuit.n_params(), 4);
  const State pure = run(ca.circuit, theta, State::basis(4));
  const State mixed = run(ca.circuit, theta, State::basis(4).to_mixed());
  EXPECT_LT((mixed.rho - pure.psi * pure.psi.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
  const PauliSum h = random_sum(4, 5);
  EXPECT_NEAR(expectation(h, pure), expectation(h, mixed), 1e-12);
  EXPECT_NEAR(expectation(h, pure), (pure.psi.adjoint() * pauli_sum_matrix(h) * pure.psi)(0, 0).real(), 1e-12);
}

TEST(Sim, KrausCompleteness) {
  const std::vector<KrausChannel> chans = {
      depolarizing_channel(0.3, 2, {1}),       depolarizing_channel(0.1, 4, {0, 2}),
      correlated_pauli_channel(0.2, 'Y', {0, 1}), amplitude_damping_channel(0.4, 0),
      phase_damping_channel(0.7, 0),             thermal_relaxation_channel(100e-6, 80e-6, 1e-6, 0),
      identity_channel({0, 1})};
  for (const auto& ch : chans) {
    EXPECT_TRUE(ch.is_complete());
    Mat sum = Mat::Zero(ch.ops[0].rows(), ch.ops[0].cols());
    for (const auto& k : ch.ops) sum += k.adjoint() * k;
    EXPECT_LT((sum - Mat::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(depolarizing_channel(1.5, 2, {0}), RangeError);
  EXPECT_THROW(thermal_relaxation_channel(1e-6, 3e-6, 1e-7, 0), RangeError);
}

TEST(Sim, DepolarizingMatchesPauliTwirl) {
  for (auto [p, support] : std::vector<std::pair<double, std::vector<int>>>{{0.3, {1}}, {0.2, {0, 2}}, {1.0, {2, 1}}}) {
    const Mat rho = random_density(3, 6);
    State s = State::density(rho);
    apply_channel(s, depolarizing_channel(p, 1 << support.size(), support));
    const Mat want = (1 - p) * rho + p * twirl(rho, 3, support);
    EXPECT_LT((s.rho - want).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_NEAR(s.trace(), 1.0, 1e-13);
  }
}

TEST(Sim, CorrelatedPauliChannel) {
  // on |++⟩ a ZZ flip with probability p leaves ⟨XI⟩ = 1 - 2p; ZZ commutes with XX
  Circuit c(2);
  c.add(make_1q(GateKind::h, 0));
  c.add(make_1q(GateKind::h, 1));
  State s = run(c, {}, State::basis(2).to_mixed());
  apply_channel(s, correlated_pauli_channel(0.15, 'Z', {0, 1}));
  EXPECT_NEAR(expectation(PauliString::from_word("XI"), s), 0.7, 1e-13);
  EXPECT_NEAR(expectation(PauliString::from_word("XX"), s), 1.0, 1e-13);
  EXPECT_NEAR(expectation(PauliString::from_word("ZZ"), State::basis(2).to_mixed()), 1.0, 1e-13);
}

TEST(Sim, ThermalRelaxationBlochAction) {
  const double T1 = 100e-6, T2 = 70e-6, tau = 30e-6;
  // excited population decays by exp(-τ/T1)
  State one = State::basis(1, 1).to_mixed();
  apply_channel(one, thermal_relaxation_channel(T1, T2, tau, 0));
  EXPECT_NEAR(one.rho(1, 1).real(), std::exp(-tau / T1), 1e-13);
  // transverse Bloch component decays by exp(-τ/T2)
  Circuit h(1);
  h.add(make_1q(GateKind::h, 0));
  State plus = run(h, {}, State::basis(1).to_mixed());
  apply_channel(plus, thermal_relaxation_channel(T1, T2, tau, 0));
  EXPECT_NEAR(expectation(PauliString::from_word("X"), plus), std::exp(-tau / T2), 1e-13);
  // ground state is a fixed point
  State zero = State::basis(1).to_mixed();
  apply_channel(zero, thermal_relaxation_channel(T1, T2, tau, 0));
  EXPECT_NEAR(zero.rho(0, 0).real(), 1.0, 1e-14);
}

TEST(Sim, InfidelityConversion) {
  EXPECT_DOUBLE_EQ(infidelity_to_depolarizing(1e-3, 2), 2e-3);
  EXPECT_NEAR(infidelity_to_depolarizing(3e-3, 4), 4e-3, 1e-18);
  for (int d : {2, 4}) {
    const double eps = 0.01;
    const std::vector<int> support = d == 2 ? std::vector<int>{0} : std::vector<int>{0, 1};
    const double fe = entanglement_fidelity(depolarizing_channel(infidelity_to_depolarizing(eps, d), d, support));
    // average gate fidelity (d Fe + 1)/(d + 1) equals 1 - ε
    EXPECT_NEAR((d * fe + 1) / (d + 1), 1 - eps, 1e-14);
  }
  EXPECT_THROW(infidelity_to_depolarizing(0.9, 2), RangeError);
}

TEST(Sim, ZeroNoiseEqualsIdeal) {
  AnsatzSpec spec;
  spec.n_spatial = 2;
  spec.reference_occupations = {1, 1, 0, 0};
  const CompiledAnsatz ca = compile(spec, Strategy::fsn, Topology::linear);
  const auto theta = oracle::random_angles(ca.circuit.n_params(), 8);
  const State ideal = run(ca.circuit, theta, State::basis(4));
  const Mat want = ideal.psi * ideal.psi.adjoint();
  for (NoiseModel nm : {NoiseModel::superconducting_default(), NoiseModel::ion_default()}) {
    const State s = evolve_noisy(ca.circuit, nm.scaled(0.0), theta, State::basis(4));
    EXPECT_LT((s.rho - want).cwiseAbs().maxCoeff(), 1e-12) << noise_family_name(nm.family);
  }
  NoiseModel dep;
  dep.family = NoiseFamily::depolarizing;
  dep.p1 = 0.01;
  dep.p2 = 0.02;
  EXPECT_LT((evolve_noisy(ca.circuit, dep.scaled(0.0), theta, State::basis(4)).rho - want).cwiseAbs().maxCoeff(), 1e-12);
  const State noisy = evolve_noisy(ca.circuit, dep, theta, State::basis(4));
  EXPECT_NEAR(noisy.trace(), 1.0, 1e-12);
  EXPECT_LT((noisy.rho * noisy.rho).trace().real(), 1.0 - 1e-3);
}

TEST(Sim, GlobalDepolarizingIsAffine) {
  Circuit c(3);
  c.add(make_1q(GateKind::h, 0));
  c.add(make_cx(0, 1));
  c.add(make_1q(GateKind::ry, 2, 0.7));
  NoiseModel nm;
  nm.family = NoiseFamily::depolarizing;
  nm.global_depolarizing = true;
  const PauliSum h = random_sum(3, 9);
  const double e0 = expectation(h, run(c, {}, State::basis(3)));
  const double tr = pauli_sum_matrix(h).trace().real() / 8;
  for (double lam : {0.0, 0.1, 0.5}) EXPECT_NEAR(expectation(h, evolve_noisy(c, nm.scaled(lam), {}, State::basis(3))), (1 - lam) * e0 + lam * tr, 1e-12);
}

TEST(Sim, GroundEnergyMatchesEigen) {
  const PauliSum h = random_sum(4, 10);
  Eigen::SelfAdjointEigenSolver<Mat> es(pauli_sum_matrix(h));
  EXPECT_NEAR(ground_energy(h), es.eigenvalues().minCoeff(), 1e-10);
}

TEST(Sim, NoiseModelJson) {
  const NoiseModel sc = NoiseModel::superconducting_default();
  const NoiseModel back = NoiseModel::from_json(sc.to_json());
  EXPECT_EQ(back.family, NoiseFamily::superconducting);
  EXPECT_DOUBLE_EQ(back.eps2, sc.eps2);
  EXPECT_DOUBLE_EQ(back.T2, sc.T2);
  EXPECT_EQ(NoiseModel::from_json("{\"family\":\"depolarizing\",\"params\":{\"p2\":0.01}}").p2, 0.01);
  EXPECT_THROW(NoiseModel::from_json("{\"family\":\"laser\"}"), SchemaError);
  EXPECT_THROW(NoiseModel::from_json("{\"family\":\"depolarizing\",\"lambda\":-1}"), SchemaError);
  EXPECT_EQ(sc.native_basis(), NativeBasis::rzz_rx_rz);
  EXPECT_EQ(NoiseModel::ion_default().native_basis(), NativeBasis::rzz_rxyz);
}

TEST(Sim, ResourceLimits) {
  EXPECT_THROW(evolve_noisy(Circuit(11), NoiseModel::superconducting_default(), {}, State::basis(11)), ResourceError);
  EXPECT_THROW(ground_energy(PauliSum(13)), ResourceError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "msn/errors.hpp"
#include "msn/hamiltonian.hpp"
#include "msn/vqe.hpp"
#include "oracle.hpp"

using namespace msn;

namespace {

HamiltonianFile fixture(const std::string& name) { return HamiltonianFile::load(std::string(MSN_FIXTURE_DIR) + "/" + name + ".json"); }

AnsatzSpec spec_for(const HamiltonianFile& f, int k = 1) {
  AnsatzSpec s;
  s.family = AnsatzFamily::kupccgsd;
  s.n_spatial = f.n_spatial;
  s.k = k;
  s.reference_occupations = f.reference_occupations;
  return s;
}

VqeProblem problem(const HamiltonianFile& f, Strategy s, Topology t) { return VqeProblem(f.hamiltonian, compile(spec_for(f), s, t)); }

// ⟨ref|H|ref⟩ from the diagonal terms: Z_q contributes (-1)^{n_q}.
double reference_energy(const HamiltonianFile& f) {
  double e = 0;
  for (const auto& [w, c] : f.hamiltonian.terms()) {
    const std::string& word = w;
    if (word.find_first_of("XY") != std::string::npos) continue;
    double v = c.real();
    for (std::size_t q = 0; q < word.size(); ++q)
      if (word[q] == 'Z' && f.reference_occupations[q]) v = -v;
    e += v;
  }
  return e;
}

NoiseModel two_qubit_depolarizing(double p) {
  NoiseModel nm;
  nm.family = NoiseFamily::depolarizing;
  nm.p2 = p;
  return nm;
}

}  // namespace

TEST(Vqe, ZeroParametersGiveReferenceEnergy) {
  const HamiltonianFile f = fixture("h2_4q");
  const double want = reference_energy(f);
  for (auto [s, t] : std::vector<std::pair<Strategy, Topology>>{{Strategy::ladder_jw, Topology::all_to_all},
                                                               {Strategy::fsn, Topology::linear},
                                                               {Strategy::msn, Topology::grid_2xN}}) {
    const VqeProblem p = problem(f, s, t);
    EXPECT_NEAR(energy(p, std::vector<double>(p.n_params(), 0.0)), want, 1e-12) << strategy_name(s);
  }
}

TEST(Vqe, ParameterShiftMatchesFiniteDifference) {
  const HamiltonianFile f = fixture("h2_4q");
  for (Strategy s : {Strategy::msn, Strategy::fsn}) {
    const VqeProblem p = problem(f, s, s == Strategy::msn ? Topology::grid_2xN : Topology::linear);
    for (unsigned seed = 0; seed < 3; ++seed) {
      const auto x = oracle::random_angles(p.n_params(), 20 + seed);
      const auto ps = parameter_shift_gradient(p, x);
      const auto fd = finite_difference_gradient(p, x);
      ASSERT_EQ(ps.size(), fd.size());
      for (std::size_t i = 0; i < ps.size(); ++i) EXPECT_NEAR(ps[i], fd[i], 1e-6);
    }
  }
  // also under noise, where the shift rule stays exact for the gate angles
  const VqeProblem noisy = problem(f, Strategy::msn, Topology::grid_2xN).with_noise(two_qubit_depolarizing(0.02));
  const auto x = oracle::random_angles(noisy.n_params(), 30);
  const auto ps = parameter_shift_gradient(noisy, x);
  const auto fd = finite_difference_gradient(noisy, x);
  for (std::size_t i = 0; i < ps.size(); ++i) EXPECT_NEAR(ps[i], fd[i], 1e-6);
}

TEST(Vqe, OptimizeReachesGroundState) {
  const HamiltonianFile f = fixture("h2_4q");
  const double exact = ground_energy(f.hamiltonian);
  const VqeProblem p = problem(f, Strategy::msn, Topology::grid_2xN);
  OptimizeOptions o;
  const OptimizeResult a = optimize(p, o);
  EXPECT_TRUE(a.converged);
  EXPECT_LT(std::abs(a.energy - exact), 1.6e-3);
  EXPECT_NEAR(energy(p, a.params), a.energy, 1e-12);
  o.seed = 7;
  const OptimizeResult b = optimize(p, o);
  EXPECT_NEAR(a.energy, b.energy, 1e-6);
  EXPECT_GE(a.energy, exact - 1e-9);  // variational bound
}

TEST(Vqe, ZeroHamiltonian) {
  const HamiltonianFile f = fixture("h2_4q");
  const VqeProblem p(PauliSum(4), compile(spec_for(f), Strategy::msn, Topology::grid_2xN), two_qubit_depolarizing(0.01));
  const auto x = oracle::random_angles(p.n_params(), 1);
  EXPECT_EQ(energy(p, x), 0.0);
  EXPECT_NEAR(susceptibility(p, x, {0.1, 0.2, 0.4}).chi, 0.0, 1e-15);
}

TEST(Vqe, GlobalDepolarizingChiIsAnalytic) {
  const HamiltonianFile f = fixture("h2_4q");
  NoiseModel nm;
  nm.family = NoiseFamily::depolarizing;
  nm.global_depolarizing = true;
  const VqeProblem p = problem(f, Strategy::msn, Topology::grid_2xN).with_noise(nm);
  const auto x = oracle::random_angles(p.n_params(), 2);
  const double e0 = noiseless_energy(p, x);
  const double tr = pauli_sum_matrix(f.hamiltonian).trace().real() / 16;
  const ChiEstimate c = susceptibility(p, x, {0.05, 0.1, 0.2});
  EXPECT_NEAR(c.chi, tr - e0, 1e-8);
  EXPECT_NEAR(c.intercept, e0, 1e-8);
  EXPECT_TRUE(c.intercept_ok);
  EXPECT_LT(c.fit_residual, 1e-10);

  // an identity-only Hamiltonian does not see the noise
  PauliSum id(4);
  id.add("IIII", 0.75);
  const VqeProblem q(id, p.compiled, nm);
  EXPECT_NEAR(susceptibility(q, x, {0.05, 0.1, 0.2}).chi, 0.0, 1e-12);
}

TEST(Vqe, ChiPositiveAndScalesWithHamiltonian) {
  const HamiltonianFile f = fixture("h2_4q");
  const VqeProblem p = problem(f, Strategy::msn, Topology::grid_2xN);
  const OptimizeResult r = optimize(p);
  const VqeProblem noisy = p.with_noise(two_qubit_depolarizing(0.01));
  // small levels keep the response in its linear regime
  const std::vector<double> levels = {0.005, 0.01, 0.02};
  const ChiEstimate c = susceptibility(noisy, r.params, levels);
  EXPECT_GT(c.chi, 0.0);
  EXPECT_NEAR(c.intercept, r.energy, 1e-5);
  const double h = 1e-4;
  const double slope = (energy(noisy.with_noise(noisy.noise->scaled(h)), r.params) - r.energy) / h;
  EXPECT_NEAR(c.chi, slope, 5e-3 * slope);

  PauliSum h2 = f.hamiltonian;
  h2 *= 3.0;
  const VqeProblem scaled(h2, p.compiled, noisy.noise);
  EXPECT_NEAR(susceptibility(scaled, r.params, levels).chi, 3.0 * c.chi, 1e-9 * std::abs(c.chi) + 1e-12);
  EXPECT_THROW(susceptibility(noisy, r.params, {0.1, 0.2}), Error);
}

TEST(Vqe, PartitionsAreOrdered) {
  const HamiltonianFile f = fixture("h2_4q");
  const VqeProblem p = problem(f, Strategy::msn, Topology::grid_2xN);
  const OptimizeResult r = optimize(p);
  const VqeProblem noisy = p.with_noise(NoiseModel::superconducting_default());
  const auto levels = default_levels(noisy, r.params);
  ASSERT_EQ(levels.size(), 3u);
  const auto rows = noise_partition_sweep(noisy, r.params, levels);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].partition, "Full");
  EXPECT_EQ(rows[1].partition, "1q&2q");
  EXPECT_EQ(rows[2].partition, "2q");
  EXPECT_GE(rows[0].estimate.chi, rows[1].estimate.chi);
  EXPECT_GE(rows[1].estimate.chi, rows[2].estimate.chi);
  EXPECT_GT(rows[2].estimate.chi, 0.0);
  for (const auto& row : rows) EXPECT_TRUE(row.estimate.intercept_ok) << row.partition;
}

TEST(Vqe, ParallelForKeepsOrder) {
  std::vector<int> out(100, -1);
  parallel_for(100, [&](int i) { out[i] = i * i; });
  for (int i = 0; i < 100; ++i) EXPECT_EQ(out[i], i * i);
  EXPECT_GE(worker_count(), 1);
}

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msn/compiler.hpp"
#include "msn/pauli.hpp"
#include "msn/sim.hpp"

namespace msn {

struct VqeProblem {
  PauliSum hamiltonian;  // over the Jordan–Wigner encoding of the logical modes
  CompiledAnsatz compiled;
  std::optional<NoiseModel> noise;
  std::vector<double> initial_parameters;  // empty = all zeros

  VqeProblem() = default;
  VqeProblem(PauliSum h, CompiledAnsatz ca, std::optional<NoiseModel> nm = std::nullopt);

  int n_params() const { return compiled.circuit.n_params(); }
  // Hamiltonian acting on the circuit output wires.
  const PauliSum& observable() const { return observable_; }
  VqeProblem with_noise(std::optional<NoiseModel> nm) const;

 private:
  PauliSum observable_;
};

double energy(const VqeProblem& prob, const std::vector<double>& params);
double noiseless_energy(const VqeProblem& prob, const std::vector<double>& params);

// Shift rule per gate occurrence: scale * (E(phi + pi/2) - E(phi - pi/2)) / 2.
std::vector<double> parameter_shift_gradient(const VqeProblem& prob, const std::vector<double>& params);
std::vector<double> finite_difference_gradient(const VqeProblem& prob, const std::vector<double>& params,
                                               double step = 1e-5);

struct OptimizeOptions {
  std::uint64_t seed = 0;
  double perturbation = 0.05;  // normal spread around the initial point; 0 disables
  double gradient_tol = 1e-6;
  int max_iterations = 500;
};

struct OptimizeResult {
  std::vector<double> params;
  double energy = 0;
  double gradient_norm = 0;
  int iterations = 0;
  bool converged = false;
};

// BFGS with backtracking line search on the ideal simulator.
OptimizeResult optimize(const VqeProblem& prob, const OptimizeOptions& opts = {});

struct ChiEstimate {
  double chi = 0;
  double intercept = 0;
  std::vector<std::pair<double, double>> fit_points;  // (level, energy)
  double fit_residual = 0;  // root-mean-square deviation from the line
  double noiseless_energy = 0;
  bool intercept_ok = false;  // |intercept - noiseless| < 1e-6
};

// Least-squares line E(level) = E0 + chi * level, level being the model multiplier lambda.
ChiEstimate susceptibility(const VqeProblem& prob, const std::vector<double>& params,
                           const std::vector<double>& levels);

// {0.1, 0.2, 0.4} x unit, the unit shrunk by decades until the shift at the top level is < 1 mHa.
std::vector<double> default_levels(const VqeProblem& prob, const std::vector<double>& params);

struct PartitionRow {
  std::string partition;  // "Full", "1q&2q", "2q"
  ChiEstimate estimate;
};

std::vector<PartitionRow> noise_partition_sweep(const VqeProblem& prob, const std::vector<double>& params,
                                                const std::vector<double>& levels);

// Worker count from MSN_THREADS (default: hardware concurrency).
int worker_count();
// Runs fn(0..n-1) across workers; results keep input order.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace msn

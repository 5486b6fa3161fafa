#include "msn/vqe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Dense>
#include <spdlog/spdlog.h>

#include "msn/errors.hpp"

namespace msn {

namespace {

thread_local bool in_worker = false;

State initial_state(const VqeProblem& prob) { return State::basis(prob.compiled.circuit.n_qubits()); }

void check_params(const VqeProblem& prob, const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != prob.n_params())
    throw DimensionError("expected " + std::to_string(prob.n_params()) + " parameters, got " +
                         std::to_string(params.size()));
}

double circuit_energy(const VqeProblem& prob, const Circuit& c, const std::vector<double>& params) {
  if (prob.noise && prob.noise->family != NoiseFamily::none)
    return expectation(prob.observable(), evolve_noisy(c, *prob.noise, params, initial_state(prob)));
  return expectation(prob.observable(), run(c, params, initial_state(prob)));
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("MSN_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = in_worker ? 1 : std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      in_worker = true;
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

VqeProblem::VqeProblem(PauliSum h, CompiledAnsatz ca, std::optional<NoiseModel> nm)
    : hamiltonian(std::move(h)), compiled(std::move(ca)), noise(std::move(nm)) {
  observable_ = hamiltonian.empty() ? PauliSum(compiled.circuit.n_qubits()) : remap_observable(hamiltonian, compiled);
  if (observable_.n_qubits() != compiled.circuit.n_qubits())
    throw DimensionError("remapped Hamiltonian width differs from the circuit width");
}

VqeProblem VqeProblem::with_noise(std::optional<NoiseModel> nm) const {
  VqeProblem p = *this;
  p.noise = std::move(nm);
  return p;
}

double energy(const VqeProblem& prob, const std::vector<double>& params) {
  check_params(prob, params);
  return circuit_energy(prob, prob.compiled.circuit, params);
}

double noiseless_energy(const VqeProblem& prob, const std::vector<double>& params) {
  check_params(prob, params);
  return expectation(prob.observable(), run(prob.compiled.circuit, params, initial_state(prob)));
}

std::vector<double> parameter_shift_gradient(const VqeProblem& prob, const std::vector<double>& params) {
  check_params(prob, params);
  const Circuit& c = prob.compiled.circuit;
  std::vector<int> occurrences;
  for (std::size_t i = 0; i < c.gates().size(); ++i)
    if (c.gates()[i].parametric()) occurrences.push_back(static_cast<int>(i));
  std::vector<double> partial(occurrences.size());
  parallel_for(static_cast<int>(occurrences.size()), [&](int k) {
    Circuit shifted = c;
    Gate& g = shifted.gate(occurrences[k]);
    const double base = g.offset;
    g.offset = base + std::numbers::pi / 2;
    const double plus = circuit_energy(prob, shifted, params);
    g.offset = base - std::numbers::pi / 2;
    const double minus = circuit_energy(prob, shifted, params);
    partial[k] = g.scale * (plus - minus) / 2;
  });
  std::vector<double> grad(params.size(), 0.0);
  for (std::size_t k = 0; k < occurrences.size(); ++k) grad[c.gates()[occurrences[k]].param] += partial[k];
  return grad;
}

std::vector<double> finite_difference_gradient(const VqeProblem& prob, const std::vector<double>& params,
                                               double step) {
  check_params(prob, params);
  std::vector<double> grad(params.size());
  parallel_for(static_cast<int>(params.size()), [&](int j) {
    auto xp = params, xm = params;
    xp[j] += step;
    xm[j] -= step;
    grad[j] = (energy(prob, xp) - energy(prob, xm)) / (2 * step);
  });
  return grad;
}

OptimizeResult optimize(const VqeProblem& prob_in, const OptimizeOptions& opts) {
  const VqeProblem prob = prob_in.with_noise(std::nullopt);
  const int n = prob.n_params();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (!prob.initial_parameters.empty()) {
    check_params(prob, prob.initial_parameters);
    for (int i = 0; i < n; ++i) x[i] = prob.initial_parameters[i];
  }
  if (opts.perturbation > 0) {
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> dist(0.0, opts.perturbation);
    for (int i = 0; i < n; ++i) x[i] += dist(rng);
  }
  auto as_vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  auto grad_at = [&](const Eigen::VectorXd& v) {
    const auto g = parameter_shift_gradient(prob, as_vec(v));
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(g.data(), n));
  };

  OptimizeResult r;
  double f = energy(prob, as_vec(x));
  Eigen::VectorXd g = grad_at(x);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  int it = 0;
  for (; it < opts.max_iterations && g.norm() >= opts.gradient_tol; ++it) {
    Eigen::VectorXd p = -H * g;
    if (g.dot(p) >= 0) {
      H.setIdentity();
      p = -g;
    }
    double alpha = 1.0;
    Eigen::VectorXd x_new;
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      x_new = x + alpha * p;
      f_new = energy(prob, as_vec(x_new));
      if (f_new <= f + 1e-4 * alpha * g.dot(p)) {
        accepted = true;
        break;
      }
      alpha /= 2;
    }
    if (!accepted) {
      if (H.isIdentity()) break;  // no descent left at working precision
      H.setIdentity();
      continue;
    }
    const Eigen::VectorXd g_new = grad_at(x_new);
    const Eigen::VectorXd s = x_new - x, y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    x = x_new;
    f = f_new;
    g = g_new;
  }
  r.params = as_vec(x);
  r.energy = f;
  r.gradient_norm = g.norm();
  r.iterations = it;
  r.converged = r.gradient_norm < opts.gradient_tol;
  if (!r.converged) spdlog::warn("optimizer stopped with gradient norm {:.3g} after {} iterations", r.gradient_norm, it);
  return r;
}

ChiEstimate susceptibility(const VqeProblem& prob, const std::vector<double>& params,
                           const std::vector<double>& levels) {
  if (!prob.noise) throw InvariantError("susceptibility needs a noise model");
  if (levels.size() < 3) throw InvariantError("susceptibility fit needs at least three noise levels");
  for (double l : levels)
    if (!(l > 0)) throw InvariantError("noise levels must be positive");
  check_params(prob, params);

  ChiEstimate est;
  est.noiseless_energy = noiseless_energy(prob, params);
  std::vector<double> e(levels.size());
  parallel_for(static_cast<int>(levels.size()), [&](int i) {
    const VqeProblem p = prob.with_noise(prob.noise->scaled(levels[i]));
    e[i] = energy(p, params);
  });

  const int m = static_cast<int>(levels.size());
  double mean_x = 0, mean_y = 0;
  for (int i = 0; i < m; ++i) {
    mean_x += levels[i] / m;
    mean_y += e[i] / m;
  }
  double sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    sxx += (levels[i] - mean_x) * (levels[i] - mean_x);
    sxy += (levels[i] - mean_x) * (e[i] - mean_y);
  }
  if (sxx < 1e-14 * mean_x * mean_x + 1e-300) throw InvariantError("noise levels are degenerate; fit is ill-conditioned");
  est.chi = sxy / sxx;
  est.intercept = mean_y - est.chi * mean_x;
  double ss = 0;
  for (int i = 0; i < m; ++i) {
    est.fit_points.emplace_back(levels[i], e[i]);
    const double d = e[i] - (est.intercept + est.chi * levels[i]);
    ss += d * d;
  }
  est.fit_residual = std::sqrt(ss / m);
  est.intercept_ok = std::abs(est.intercept - est.noiseless_energy) < 1e-6;
  return est;
}

std::vector<double> default_levels(const VqeProblem& prob, const std::vector<double>& params) {
  if (!prob.noise) throw InvariantError("default_levels needs a noise model");
  const double e0 = noiseless_energy(prob, params);
  double unit = 1.0;
  for (int k = 0; k < 12; ++k, unit /= 10) {
    const double shift = std::abs(energy(prob.with_noise(prob.noise->scaled(0.4 * unit)), params) - e0);
    if (shift < 1e-3) break;
  }
  return {0.1 * unit, 0.2 * unit, 0.4 * unit};
}

std::vector<PartitionRow> noise_partition_sweep(const VqeProblem& prob, const std::vector<double>& params,
                                                const std::vector<double>& levels) {
  if (!prob.noise) throw InvariantError("partition sweep needs a noise model");
  NoiseModel full = *prob.noise;
  NoiseModel gates = full;
  gates.thermal = false;
  gates.idle = false;
  NoiseModel two = gates;
  two.one_qubit = false;
  std::vector<PartitionRow> rows;
  rows.push_back({"Full", susceptibility(prob.with_noise(full), params, levels)});
  rows.push_back({"1q&2q", susceptibility(prob.with_noise(gates), params, levels)});
  rows.push_back({"2q", susceptibility(prob.with_noise(two), params, levels)});
  return rows;
}

}  // namespace msn

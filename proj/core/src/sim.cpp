#include "msn/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include <json.hpp>

#include "msn/errors.hpp"

namespace msn {

namespace {

const cplx kI{0, 1};

std::uint64_t mask_of(const PauliString& p, bool x_part) {
  if (p.n_qubits() > 64) throw ResourceError("dense simulation limited to 64 qubits");
  const auto& w = x_part ? p.x_words() : p.z_words();
  return w.empty() ? 0 : w[0];
}

// P|j> = phase(j) |j ^ xmask>
struct PauliAction {
  std::uint64_t xm, zm;
  cplx base;
  explicit PauliAction(const PauliString& p) : xm(mask_of(p, true)), zm(mask_of(p, false)) {
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    base = ipow[(p.phase() + std::popcount(xm & zm)) % 4];
  }
  cplx phase(std::uint64_t j) const { return std::popcount(j & zm) & 1 ? -base : base; }
};

Matrix mat2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

int check_width(int n) {
  if (n > 14) throw ResourceError("dense simulation limited to 14 qubits, got " + std::to_string(n));
  return n;
}

}  // namespace

Matrix pauli_matrix(const PauliString& p) {
  const std::size_t dim = std::size_t{1} << check_width(p.n_qubits());
  const PauliAction a(p);
  Matrix m = Matrix::Zero(dim, dim);
  for (std::uint64_t j = 0; j < dim; ++j) m(j ^ a.xm, j) = a.phase(j);
  return m;
}

Matrix pauli_sum_matrix(const PauliSum& h) {
  const std::size_t dim = std::size_t{1} << check_width(h.n_qubits());
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& [w, c] : h.terms()) {
    const PauliAction a(PauliString::from_word(w));
    for (std::uint64_t j = 0; j < dim; ++j) m(j ^ a.xm, j) += c * a.phase(j);
  }
  return m;
}

Matrix gate_matrix(const Gate& g, const std::vector<double>& theta) {
  const double a = g.angle(theta);
  const double c = std::cos(a / 2), s = std::sin(a / 2);
  switch (g.kind) {
    case GateKind::cx: {
      Matrix m = Matrix::Identity(4, 4);
      m(1, 1) = m(3, 3) = 0;
      m(1, 3) = m(3, 1) = 1;
      return m;
    }
    case GateKind::rzz: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(3, 3) = std::exp(-kI * a / 2.0);
      m(1, 1) = m(2, 2) = std::exp(kI * a / 2.0);
      return m;
    }
    case GateKind::rx: return mat2(c, -kI * s, -kI * s, c);
    case GateKind::ry: return mat2(c, -s, s, c);
    case GateKind::rz: return mat2(std::exp(-kI * a / 2.0), 0, 0, std::exp(kI * a / 2.0));
    case GateKind::h: return mat2(1, 1, 1, -1) / std::sqrt(2.0);
    case GateKind::s: return mat2(1, 0, 0, kI);
    case GateKind::sdg: return mat2(1, 0, 0, -kI);
    case GateKind::x: return mat2(0, 1, 1, 0);
    case GateKind::u3: {
      const double t = g.u3_angles[0], p = g.u3_angles[1], l = g.u3_angles[2];
      return mat2(std::cos(t / 2), -std::exp(kI * l) * std::sin(t / 2), std::exp(kI * p) * std::sin(t / 2),
                  std::exp(kI * (p + l)) * std::cos(t / 2));
    }
    case GateKind::pauli_rot: case GateKind::clifford2: {
      const Matrix w = pauli_matrix(g.word);
      return c * Matrix::Identity(w.rows(), w.cols()) - kI * s * w;
    }
    case GateKind::barrier: return Matrix::Identity(1, 1);
  }
  throw InvariantError("unknown gate kind");
}

void apply_local(cplx* data, int n_qubits, const Matrix& m, const std::vector<int>& qubits) {
  const int k = static_cast<int>(qubits.size());
  const std::size_t loc = std::size_t{1} << k;
  if (static_cast<std::size_t>(m.rows()) != loc) throw DimensionError("local matrix size does not match qubit list");
  std::uint64_t mask = 0;
  std::vector<std::uint64_t> offs(loc, 0);
  for (int i = 0; i < k; ++i) mask |= std::uint64_t{1} << qubits[i];
  for (std::size_t l = 0; l < loc; ++l)
    for (int i = 0; i < k; ++i)
      if (l >> i & 1) offs[l] |= std::uint64_t{1} << qubits[i];
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  std::vector<cplx> in(loc);
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (std::size_t l = 0; l < loc; ++l) in[l] = data[base | offs[l]];
    for (std::size_t r = 0; r < loc; ++r) {
      cplx acc = 0;
      for (std::size_t l = 0; l < loc; ++l) acc += m(r, l) * in[l];
      data[base | offs[r]] = acc;
    }
  }
}

State State::basis(int n_qubits, std::uint64_t index) {
  State s;
  s.n_qubits = check_width(n_qubits);
  s.psi = Vector::Zero(std::size_t{1} << n_qubits);
  s.psi(index) = 1;
  return s;
}

State State::density(const Matrix& rho) {
  State s;
  s.mixed = true;
  s.n_qubits = std::countr_zero(static_cast<std::uint64_t>(rho.rows()));
  s.rho = rho;
  return s;
}

State State::pure(const Vector& psi) {
  State s;
  s.n_qubits = std::countr_zero(static_cast<std::uint64_t>(psi.size()));
  s.psi = psi;
  return s;
}

State State::to_mixed() const {
  if (mixed) return *this;
  return density(psi * psi.adjoint());
}

double State::trace() const { return mixed ? rho.trace().real() : psi.squaredNorm(); }

void apply_gate(State& s, const Gate& g, const std::vector<double>& theta) {
  if (g.kind == GateKind::barrier) return;
  const Matrix u = gate_matrix(g, theta);
  if (!s.mixed) {
    apply_local(s.psi.data(), s.n_qubits, u, g.qubits);
    return;
  }
  std::vector<int> bra;
  for (int q : g.qubits) bra.push_back(q + s.n_qubits);
  apply_local(s.rho.data(), 2 * s.n_qubits, u, g.qubits);
  apply_local(s.rho.data(), 2 * s.n_qubits, u.conjugate(), bra);
}

Matrix circuit_unitary(const Circuit& c, const std::vector<double>& theta) {
  const std::size_t dim = std::size_t{1} << check_width(c.n_qubits());
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::barrier) continue;
    const Matrix m = gate_matrix(g, theta);
    for (std::size_t col = 0; col < dim; ++col) apply_local(u.col(col).data(), c.n_qubits(), m, g.qubits);
  }
  return u;
}

State run(const Circuit& c, const std::vector<double>& theta, State s) {
  if (s.n_qubits != c.n_qubits()) throw DimensionError("state and circuit width differ");
  for (const auto& g : c.gates()) apply_gate(s, g, theta);
  return s;
}

// ---------------------------------------------------------------- channels

bool KrausChannel::is_complete(double tol) const {
  if (ops.empty()) return false;
  Matrix acc = Matrix::Zero(ops[0].rows(), ops[0].cols());
  for (const auto& e : ops) acc += e.adjoint() * e;
  return (acc - Matrix::Identity(acc.rows(), acc.cols())).cwiseAbs().maxCoeff() < tol;
}

Matrix KrausChannel::superoperator() const {
  const Eigen::Index d = ops.at(0).rows();
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const auto& e : ops) s += kron(e.conjugate(), e);
  return s;
}

KrausChannel identity_channel(std::vector<int> support) {
  const Eigen::Index d = Eigen::Index{1} << support.size();
  return {{Matrix::Identity(d, d)}, std::move(support)};
}

KrausChannel depolarizing_channel(double p, int d, std::vector<int> support) {
  if (p < 0 || p > 1) throw RangeError("depolarizing probability outside [0,1]");
  if (d != (1 << support.size())) throw DimensionError("depolarizing dimension does not match support");
  const int k = static_cast<int>(support.size());
  KrausChannel ch;
  ch.support = std::move(support);
  const double d2 = static_cast<double>(d) * d;
  // (1-p) rho + p I/d = (1 - p + p/d^2) rho + (p/d^2) sum over non-identity Paulis
  for (int idx = 0; idx < d * d; ++idx) {
    std::string w(k, 'I');
    int v = idx;
    for (int q = 0; q < k; ++q, v /= 4) w[q] = "IXYZ"[v % 4];
    const double weight = idx == 0 ? 1 - p + p / d2 : p / d2;
    if (weight <= 0 && idx != 0) continue;
    ch.ops.push_back(std::sqrt(std::max(weight, 0.0)) * pauli_matrix(PauliString::from_word(w)));
  }
  return ch;
}

KrausChannel correlated_pauli_channel(double p, char axis, std::vector<int> support) {
  if (p < 0 || p > 1) throw RangeError("pauli channel probability outside [0,1]");
  if (support.size() != 2) throw DimensionError("correlated pauli channel acts on two qubits");
  if (axis != 'X' && axis != 'Y' && axis != 'Z') throw SchemaError("pauli channel axis must be X, Y or Z");
  const std::string w(2, axis);
  return {{std::sqrt(1 - p) * Matrix::Identity(4, 4), std::sqrt(p) * pauli_matrix(PauliString::from_word(w))},
          std::move(support)};
}

KrausChannel amplitude_damping_channel(double gamma, int qubit) {
  if (gamma < 0 || gamma > 1) throw RangeError("damping parameter outside [0,1]");
  return {{mat2(1, 0, 0, std::sqrt(1 - gamma)), mat2(0, std::sqrt(gamma), 0, 0)}, {qubit}};
}

KrausChannel phase_damping_channel(double eta, int qubit) {
  if (eta < 0 || eta > 1) throw RangeError("dephasing factor outside [0,1]");
  return {{std::sqrt((1 + eta) / 2) * mat2(1, 0, 0, 1), std::sqrt((1 - eta) / 2) * mat2(1, 0, 0, -1)}, {qubit}};
}

KrausChannel thermal_relaxation_channel(double T1, double T2, double tau, int qubit) {
  if (!(T1 > 0)) throw RangeError("T1 must be positive");
  if (!(T2 > 0) || T2 > 2 * T1 * (1 + 1e-12)) throw RangeError("need 0 < T2 <= 2 T1");
  if (tau < 0) throw RangeError("duration must be non-negative");
  const double gamma = 1 - std::exp(-tau / T1);
  const double inv_tphi = std::max(0.0, 1 / T2 - 1 / (2 * T1));
  const double eta = std::exp(-tau * inv_tphi);
  return compose(amplitude_damping_channel(gamma, qubit), phase_damping_channel(eta, qubit));
}

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (first.support != second.support) throw DimensionError("composed channels need equal supports");
  KrausChannel r;
  r.support = first.support;
  for (const auto& b : second.ops)
    for (const auto& a : first.ops) r.ops.push_back(b * a);
  return r;
}

void apply_channel(State& s, const KrausChannel& ch) {
  if (!s.mixed) s = s.to_mixed();
  std::vector<int> qs = ch.support;
  for (int q : ch.support) qs.push_back(q + s.n_qubits);
  apply_local(s.rho.data(), 2 * s.n_qubits, ch.superoperator(), qs);
}

double infidelity_to_depolarizing(double epsilon, int d) {
  if (d < 2) throw RangeError("dimension must be at least 2");
  const double max_eps = static_cast<double>(d - 1) / d;
  if (epsilon < 0 || epsilon > max_eps) throw RangeError("infidelity outside [0, (d-1)/d]");
  return epsilon * d / (d - 1);
}

// ---------------------------------------------------------------- noise model

const char* noise_family_name(NoiseFamily f) {
  switch (f) {
    case NoiseFamily::none: return "none";
    case NoiseFamily::depolarizing: return "depolarizing";
    case NoiseFamily::pauli: return "pauli";
    case NoiseFamily::superconducting: return "superconducting";
    case NoiseFamily::ion: return "ion";
  }
  return "?";
}

NoiseModel NoiseModel::superconducting_default() {
  NoiseModel m;
  m.family = NoiseFamily::superconducting;
  m.T1 = 264e-6;
  m.T2 = 162e-6;
  m.t1 = 0.0;  // single-qubit duration is not given for this device
  m.t2 = 68e-9;
  m.eps1 = 4.4e-4;
  m.eps2 = 5.5e-3;
  return m;
}

NoiseModel NoiseModel::ion_default() {
  NoiseModel m;
  m.family = NoiseFamily::ion;
  m.T1 = 188.0;
  m.T2 = 0.95;
  m.t1 = 63e-6;
  m.t2 = 650e-6;
  m.eps1 = 2.0e-4;
  m.eps2 = 6.2e-3;
  return m;
}

NoiseModel NoiseModel::scaled(double lam) const {
  NoiseModel m = *this;
  m.lambda = lam;
  return m;
}

NativeBasis NoiseModel::native_basis() const {
  return family == NoiseFamily::ion ? NativeBasis::rzz_rxyz : NativeBasis::rzz_rx_rz;
}

void NoiseModel::validate() const {
  if (lambda < 0) throw SchemaError("noise multiplier must be non-negative");
  if (family == NoiseFamily::superconducting || family == NoiseFamily::ion) {
    if (!(T1 > 0) || !(T2 > 0) || T2 > 2 * T1) throw SchemaError("noise model needs 0 < T2 <= 2 T1");
    if (t1 < 0 || t2 < 0) throw SchemaError("gate durations must be non-negative");
    if (eps1 < 0 || eps1 > 0.5 || eps2 < 0 || eps2 > 0.75) throw SchemaError("infidelity out of range");
  }
  if (p1 < 0 || p1 > 1 || p2 < 0 || p2 > 1) throw SchemaError("probabilities must lie in [0,1]");
}

NoiseModel NoiseModel::from_json(const std::string& text) {
  using nlohmann::json;
  NoiseModel m;
  try {
    const json doc = json::parse(text);
    const std::string fam = doc.at("family").get<std::string>();
    const json params = doc.value("params", json::object());
    if (fam == "superconducting") m = superconducting_default();
    else if (fam == "ion") m = ion_default();
    else if (fam == "depolarizing") m.family = NoiseFamily::depolarizing;
    else if (fam == "pauli") m.family = NoiseFamily::pauli;
    else if (fam == "none") m.family = NoiseFamily::none;
    else throw SchemaError("unknown noise family '" + fam + "'");
    m.p1 = params.value("p1", m.p1);
    m.p2 = params.value("p2", m.p2);
    m.eps1 = params.value("eps1", m.eps1);
    m.eps2 = params.value("eps2", m.eps2);
    m.T1 = params.value("T1", m.T1);
    m.T2 = params.value("T2", m.T2);
    m.t1 = params.value("t1", m.t1);
    m.t2 = params.value("t2", m.t2);
    m.pauli_axis = params.value("axis", std::string(1, m.pauli_axis)).at(0);
    m.one_qubit = params.value("one_qubit", m.one_qubit);
    m.two_qubit = params.value("two_qubit", m.two_qubit);
    m.thermal = params.value("thermal", m.thermal);
    m.idle = params.value("idle", m.idle);
    m.global_depolarizing = params.value("global", m.global_depolarizing);
    m.lambda = doc.value("lambda", 1.0);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("noise model json: ") + e.what());
  }
  m.validate();
  return m;
}

std::string NoiseModel::to_json() const {
  nlohmann::json params{{"p1", p1}, {"p2", p2}, {"eps1", eps1}, {"eps2", eps2}, {"T1", T1},
                        {"T2", T2}, {"t1", t1}, {"t2", t2}, {"axis", std::string(1, pauli_axis)},
                        {"one_qubit", one_qubit}, {"two_qubit", two_qubit}, {"thermal", thermal},
                        {"idle", idle}, {"global", global_depolarizing}};
  return nlohmann::json{{"family", noise_family_name(family)}, {"params", params}, {"lambda", lambda}}.dump(1);
}

namespace {

struct NoiseApplier {
  const NoiseModel& nm;
  bool phenomenological;
  double p1, p2;

  explicit NoiseApplier(const NoiseModel& m)
      : nm(m), phenomenological(m.family == NoiseFamily::superconducting || m.family == NoiseFamily::ion) {
    if (phenomenological) {
      p1 = std::min(1.0, m.lambda * infidelity_to_depolarizing(m.eps1, 2));
      p2 = std::min(1.0, m.lambda * infidelity_to_depolarizing(m.eps2, 4));
    } else {
      p1 = std::min(1.0, m.lambda * m.p1);
      p2 = std::min(1.0, m.lambda * m.p2);
    }
  }

  double duration(const Gate& g) const {
    if (!phenomenological) return 0;
    return g.arity() >= 2 ? nm.t2 : nm.t1;
  }

  void relax(State& s, int q, double tau) const {
    if (!phenomenological || !nm.thermal || tau <= 0) return;
    apply_channel(s, thermal_relaxation_channel(nm.T1 / nm.lambda, nm.T2 / nm.lambda, tau, q));
  }

  void after_gate(State& s, const Gate& g) const {
    if (g.arity() == 1) {
      if (nm.one_qubit && p1 > 0) apply_channel(s, depolarizing_channel(p1, 2, g.qubits));
    } else if (g.arity() == 2) {
      if (nm.two_qubit && p2 > 0) {
        if (nm.family == NoiseFamily::pauli) apply_channel(s, correlated_pauli_channel(p2, nm.pauli_axis, g.qubits));
        else apply_channel(s, depolarizing_channel(p2, 4, g.qubits));
      }
    } else {
      throw UnsupportedError("noisy evolution expects gates on at most two qubits");
    }
    for (int q : g.qubits) relax(s, q, duration(g));
  }
};

}  // namespace

State evolve_noisy(const Circuit& c, const NoiseModel& nm, const std::vector<double>& theta, State s0) {
  nm.validate();
  if (c.n_qubits() > 10) throw ResourceError("density-matrix evolution limited to 10 qubits");
  State s = s0.to_mixed();
  if (nm.family == NoiseFamily::none || nm.lambda == 0.0) return run(c, theta, s);

  const NoiseApplier noise(nm);
  const Circuit circ = noise.phenomenological ? lower_to_native(c, nm.native_basis()) : c;

  // ASAP layering; a barrier closes the layer of every qubit it touches.
  std::vector<int> level(circ.n_qubits(), 0);
  std::map<int, std::vector<const Gate*>> layers;
  for (const auto& g : circ.gates()) {
    if (g.kind == GateKind::barrier) {
      int l = 0;
      for (int q = 0; q < circ.n_qubits(); ++q)
        if (g.qubits.empty() || std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end()) l = std::max(l, level[q]);
      for (int q = 0; q < circ.n_qubits(); ++q)
        if (g.qubits.empty() || std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end()) level[q] = l;
      continue;
    }
    int l = 0;
    for (int q : g.qubits) l = std::max(l, level[q]);
    for (int q : g.qubits) level[q] = l + 1;
    layers[l].push_back(&g);
  }

  for (const auto& [l, gates] : layers) {
    double layer_time = 0;
    std::vector<bool> busy(circ.n_qubits(), false);
    for (const Gate* g : gates) {
      apply_gate(s, *g, theta);
      noise.after_gate(s, *g);
      layer_time = std::max(layer_time, noise.duration(*g));
      for (int q : g->qubits) busy[q] = true;
    }
    if (nm.idle)
      for (int q = 0; q < circ.n_qubits(); ++q)
        if (!busy[q]) noise.relax(s, q, layer_time);
  }

  if (nm.global_depolarizing) {
    const double p = std::min(1.0, nm.lambda);
    const auto dim = s.rho.rows();
    s.rho = (1 - p) * s.rho + p * s.rho.trace() / static_cast<double>(dim) * Matrix::Identity(dim, dim);
  }
  return s;
}

double expectation(const PauliString& p, const State& s) {
  if (p.n_qubits() != s.n_qubits) throw DimensionError("observable and state width differ");
  const PauliAction a(p);
  const std::uint64_t dim = std::uint64_t{1} << s.n_qubits;
  cplx acc = 0;
  if (s.mixed) {
    for (std::uint64_t m = 0; m < dim; ++m) acc += a.phase(m) * s.rho(m, m ^ a.xm);
  } else {
    for (std::uint64_t j = 0; j < dim; ++j) acc += std::conj(s.psi(j ^ a.xm)) * a.phase(j) * s.psi(j);
  }
  return acc.real();
}

double expectation(const PauliSum& h, const State& s) {
  if (h.n_qubits() != s.n_qubits && !h.empty()) throw DimensionError("observable and state width differ");
  cplx acc = 0;
  const std::uint64_t dim = std::uint64_t{1} << s.n_qubits;
  for (const auto& [w, c] : h.terms()) {
    const PauliAction a(PauliString::from_word(w));
    cplx e = 0;
    if (s.mixed) {
      for (std::uint64_t m = 0; m < dim; ++m) e += a.phase(m) * s.rho(m, m ^ a.xm);
    } else {
      for (std::uint64_t j = 0; j < dim; ++j) e += std::conj(s.psi(j ^ a.xm)) * a.phase(j) * s.psi(j);
    }
    acc += c * e;
  }
  if (std::abs(acc.imag()) > 1e-9) throw InvariantError("expectation of a non-Hermitian observable");
  return acc.real();
}

double ground_energy(const PauliSum& h) {
  if (h.n_qubits() > 12) throw ResourceError("dense diagonalization limited to 12 qubits");
  Eigen::SelfAdjointEigenSolver<Matrix> es(pauli_sum_matrix(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace msn

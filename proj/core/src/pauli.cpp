#include "msn/pauli.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "msn/errors.hpp"

namespace msn {

namespace {

int n_words(int n) { return (n + 63) / 64; }

void check_size(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits())
    throw DimensionError("pauli size mismatch: " + std::to_string(a.n_qubits()) + " vs " +
                         std::to_string(b.n_qubits()));
}

const cplx kIpow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliString::PauliString(int n_qubits) : n_(n_qubits), x_(n_words(n_qubits)), z_(n_words(n_qubits)) {
  if (n_qubits < 0) throw RangeError("negative qubit count");
}

PauliString PauliString::from_word(std::string_view word, int phase) {
  PauliString p(static_cast<int>(word.size()));
  for (int q = 0; q < p.n_; ++q) p.set_letter(q, word[q]);
  p.k_ = ((phase % 4) + 4) % 4;
  return p;
}

PauliString PauliString::single(int n_qubits, int qubit, char letter) {
  if (qubit < 0 || qubit >= n_qubits) throw RangeError("qubit out of range");
  PauliString p(n_qubits);
  p.set_letter(qubit, letter);
  return p;
}

cplx PauliString::phase_factor() const { return kIpow[k_]; }

char PauliString::letter(int q) const {
  bool xb = x(q), zb = z(q);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

std::string PauliString::word() const {
  std::string s(n_, 'I');
  for (int q = 0; q < n_; ++q) s[q] = letter(q);
  return s;
}

void PauliString::set_letter(int q, char c) {
  if (q < 0 || q >= n_) throw RangeError("qubit out of range");
  bool xb, zb;
  switch (c) {
    case 'I': xb = false; zb = false; break;
    case 'X': xb = true; zb = false; break;
    case 'Y': xb = true; zb = true; break;
    case 'Z': xb = false; zb = true; break;
    default: throw SchemaError(std::string("bad Pauli letter '") + c + "'");
  }
  const std::uint64_t bit = std::uint64_t{1} << (q & 63);
  if (xb) x_[q >> 6] |= bit; else x_[q >> 6] &= ~bit;
  if (zb) z_[q >> 6] |= bit; else z_[q >> 6] &= ~bit;
}

int PauliString::weight() const {
  int w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
  return w;
}

bool PauliString::is_identity() const { return weight() == 0; }

PauliString PauliString::with_phase(int k) const {
  PauliString p = *this;
  p.k_ = ((k % 4) + 4) % 4;
  return p;
}

std::string PauliString::to_string() const {
  static const char* prefix[4] = {"+", "+i", "-", "-i"};
  return prefix[k_] + word();
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  check_size(a, b);
  PauliString r(a.n_);
  int k = a.k_ + b.k_;
  for (std::size_t i = 0; i < a.x_.size(); ++i) {
    const std::uint64_t ax = a.x_[i], az = a.z_[i], bx = b.x_[i], bz = b.z_[i];
    const std::uint64_t aX = ax & ~az, aY = ax & az, aZ = ~ax & az;
    const std::uint64_t bX = bx & ~bz, bY = bx & bz, bZ = ~bx & bz;
    // XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i
    const std::uint64_t plus = (aX & bY) | (aY & bZ) | (aZ & bX);
    const std::uint64_t minus = (aY & bX) | (aZ & bY) | (aX & bZ);
    k += std::popcount(plus) - std::popcount(minus);
    r.x_[i] = ax ^ bx;
    r.z_[i] = az ^ bz;
  }
  r.k_ = ((k % 4) + 4) % 4;
  return r;
}

bool commutes(const PauliString& a, const PauliString& b) {
  check_size(a, b);
  int parity = 0;
  const auto& ax = a.x_words();
  const auto& az = a.z_words();
  const auto& bx = b.x_words();
  const auto& bz = b.z_words();
  for (std::size_t i = 0; i < ax.size(); ++i) parity += std::popcount((ax[i] & bz[i]) ^ (az[i] & bx[i]));
  return (parity & 1) == 0;
}

PauliString conjugate_by_rotation(const PauliString& target, const PauliString& generator) {
  check_size(target, generator);
  if (commutes(target, generator)) return target;
  return multiply(generator, target);
}

// ---------------------------------------------------------------- PauliSum

void PauliSum::add(const PauliString& p, cplx coeff) {
  if (n_ == 0 && terms_.empty()) n_ = p.n_qubits();
  if (p.n_qubits() != n_) throw DimensionError("pauli sum size mismatch");
  add(p.word(), coeff * p.phase_factor());
}

void PauliSum::add(const std::string& word, cplx coeff) {
  if (n_ == 0 && terms_.empty()) n_ = static_cast<int>(word.size());
  if (static_cast<int>(word.size()) != n_) throw DimensionError("pauli sum size mismatch");
  auto it = terms_.find(word);
  if (it == terms_.end()) {
    if (std::abs(coeff) >= kPrune) terms_.emplace(word, coeff);
    return;
  }
  it->second += coeff;
  if (std::abs(it->second) < kPrune) terms_.erase(it);
}

cplx PauliSum::coeff(const std::string& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? cplx{} : it->second;
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx s) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) < kPrune) it = terms_.erase(it);
    else ++it;
  }
  return *this;
}

PauliSum PauliSum::adjoint() const {
  PauliSum r(n_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, std::conj(c));
  return r;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [w, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

bool PauliSum::is_anti_hermitian(double tol) const {
  for (const auto& [w, c] : terms_)
    if (std::abs(c.real()) > tol) return false;
  return true;
}

double PauliSum::max_abs_coeff() const {
  double m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

cplx PauliSum::identity_coeff() const { return coeff(std::string(n_, 'I')); }

std::string PauliSum::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto& [w, c] : terms_) os << c.real() << ' ' << c.imag() << ' ' << w << '\n';
  return os.str();
}

PauliSum PauliSum::from_text(const std::string& text) {
  PauliSum s;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream ls(line);
    double re, im;
    std::string w;
    if (!(ls >> re >> im >> w)) throw SchemaError("line " + std::to_string(lineno) + ": expected '<re> <im> <WORD>'");
    for (char c : w)
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
        throw SchemaError("line " + std::to_string(lineno) + ": bad Pauli word '" + w + "'");
    s.add(w, {re, im});
  }
  return s;
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("pauli sum size mismatch");
  PauliSum r(a.n_qubits());
  for (const auto& [wa, ca] : a.terms()) {
    const PauliString pa = PauliString::from_word(wa);
    for (const auto& [wb, cb] : b.terms()) {
      const PauliString p = multiply(pa, PauliString::from_word(wb));
      r.add(p, ca * cb);
    }
  }
  return r;
}

}  // namespace msn

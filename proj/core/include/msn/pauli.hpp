#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace msn {

using cplx = std::complex<double>;

// Pauli string i^k * P_1 ⊗ ... ⊗ P_n stored as x/z bit words.
// Y is the proper Pauli Y, so a letter with x=z=1 carries no hidden phase.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits);

  // word over {I,X,Y,Z}, qubit 0 first
  static PauliString from_word(std::string_view word, int phase = 0);
  static PauliString single(int n_qubits, int qubit, char letter);

  int n_qubits() const { return n_; }
  int phase() const { return k_; }
  cplx phase_factor() const;
  char letter(int q) const;
  std::string word() const;
  void set_letter(int q, char letter);

  bool x(int q) const { return (x_[q >> 6] >> (q & 63)) & 1u; }
  bool z(int q) const { return (z_[q >> 6] >> (q & 63)) & 1u; }
  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

  int weight() const;
  bool is_identity() const;  // letters only
  bool is_hermitian() const { return (k_ & 1) == 0; }

  PauliString with_phase(int k) const;
  PauliString operator-() const { return with_phase(k_ + 2); }

  // "+XYZ", "-iZZ", ...
  std::string to_string() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.x_ == b.x_ && a.z_ == b.z_;
  }
  bool same_letters(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }

 private:
  friend PauliString multiply(const PauliString&, const PauliString&);
  int n_ = 0;
  int k_ = 0;
  std::vector<std::uint64_t> x_, z_;
};

PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }
bool commutes(const PauliString& a, const PauliString& b);
inline int weight(const PauliString& a) { return a.weight(); }

// exp(pi/4 G) P exp(-pi/4 G) for anti-Hermitian Pauli G (G^2 = -I).
PauliString conjugate_by_rotation(const PauliString& target, const PauliString& generator);

// Weighted sum of Pauli words; phases are folded into coefficients.
class PauliSum {
 public:
  static constexpr double kPrune = 1e-14;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}

  int n_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::map<std::string, cplx>& terms() const { return terms_; }

  void add(const PauliString& p, cplx coeff = 1.0);
  void add(const std::string& word, cplx coeff);
  cplx coeff(const std::string& word) const;

  PauliSum& operator+=(const PauliSum& o);
  PauliSum& operator*=(cplx s);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) {
    PauliSum nb = b;
    nb *= -1.0;
    return a += nb;
  }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }

  PauliSum adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_anti_hermitian(double tol = 1e-12) const;
  double max_abs_coeff() const;
  cplx identity_coeff() const;

  // one term per line: "<re> <im> <WORD>"
  std::string to_text() const;
  static PauliSum from_text(const std::string& text);

 private:
  int n_ = 0;
  std::map<std::string, cplx> terms_;
};

PauliSum multiply(const PauliSum& a, const PauliSum& b);
inline PauliSum operator*(const PauliSum& a, const PauliSum& b) { return multiply(a, b); }

}  // namespace msn

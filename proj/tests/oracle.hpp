#pragma once

// Independent dense references for the tests: Kronecker-built Paulis, matrix
// exponentials and Majorana operators straight from their defining formulas.

#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli2(char l) {
  Mat m(2, 2);
  const cplx i(0, 1);
  switch (l) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

// word[q] acts on qubit q, and qubit q is bit q of the basis index.
inline Mat pauli(const std::string& word) {
  Mat m = Mat::Identity(1, 1);
  for (char l : word) m = Eigen::kroneckerProduct(pauli2(l), m).eval();
  return m;
}

inline Mat sum(int n, const std::vector<std::pair<std::string, cplx>>& terms) {
  Mat m = Mat::Zero(1 << n, 1 << n);
  for (const auto& [w, c] : terms) m += c * pauli(w);
  return m;
}

inline Mat expm(const Mat& a) { return a.exp(); }

// Jordan–Wigner Majoranas written out: γ_{2q+1} = Z..Z X_q, γ_{2q+2} = Z..Z Y_q.
inline Mat jw_gamma(int n, int j) {
  const int q = (j - 1) / 2;
  std::string w(n, 'I');
  for (int k = 0; k < q; ++k) w[k] = 'Z';
  w[q] = (j % 2) ? 'X' : 'Y';
  return pauli(w);
}

// a_p = (γ_{2p+1} + iγ_{2p+2})/2 for 0-based mode p under JW.
inline Mat jw_annihilation(int n, int p) { return (jw_gamma(n, 2 * p + 1) + cplx(0, 1) * jw_gamma(n, 2 * p + 2)) / 2.0; }

inline Mat single_generator(int n, int p, int q) {
  const Mat t = jw_annihilation(n, p).adjoint() * jw_annihilation(n, q);
  return t - t.adjoint();
}

inline Mat double_generator(int n, int p, int q, int r, int s) {
  const Mat t = jw_annihilation(n, p).adjoint() * jw_annihilation(n, q).adjoint() * jw_annihilation(n, r) *
                jw_annihilation(n, s);
  return t - t.adjoint();
}

// max |U - e^{iφ} V| over the best global phase φ.
inline double phase_distance(const Mat& u, const Mat& v) {
  const cplx overlap = (v.adjoint() * u).trace();
  const cplx phase = std::abs(overlap) > 1e-300 ? overlap / std::abs(overlap) : cplx(1);
  return (u - phase * v).cwiseAbs().maxCoeff();
}

inline std::vector<double> random_angles(int count, unsigned seed, double spread = 3.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-spread, spread);
  std::vector<double> v(count);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace oracle

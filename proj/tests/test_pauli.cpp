#include <gtest/gtest.h>

#include <random>

#include "msn/errors.hpp"
#include "msn/pauli.hpp"
#include "oracle.hpp"

using namespace msn;

namespace {

PauliString random_pauli(std::mt19937& rng, int n) {
  const char letters[] = "IXYZ";
  std::string w(n, 'I');
  for (auto& c : w) c = letters[rng() % 4];
  return PauliString::from_word(w, static_cast<int>(rng() % 4));
}

oracle::Mat dense(const PauliString& p) { return p.phase_factor() * oracle::pauli(p.word()); }

}  // namespace

TEST(Pauli, SingleQubitProducts) {
  const auto x = PauliString::from_word("X"), y = PauliString::from_word("Y");
  EXPECT_EQ(x * y, PauliString::from_word("Z", 1));
  const auto g5 = PauliString::from_word("ZZX");
  EXPECT_EQ(g5 * g5, PauliString::from_word("III"));
  // Y Z = i X on qubit 0 (checked against 2x2 matrices in MultiplyMatchesDenseProduct)
  EXPECT_EQ(PauliString::from_word("YI") * PauliString::from_word("ZY"), PauliString::from_word("XY", 1));
}

TEST(Pauli, MultiplyMatchesDenseProduct) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 4;
    const auto a = random_pauli(rng, n), b = random_pauli(rng, n);
    EXPECT_LT((dense(a * b) - dense(a) * dense(b)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Pauli, Associativity) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const auto a = random_pauli(rng, n), b = random_pauli(rng, n), c = random_pauli(rng, n);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Pauli, CommutesAgreesWithMatrices) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 4;
    const auto a = random_pauli(rng, n), b = random_pauli(rng, n);
    const auto da = dense(a), db = dense(b);
    const bool dense_commute = (da * db - db * da).cwiseAbs().maxCoeff() < 1e-12;
    EXPECT_EQ(commutes(a, b), dense_commute);
  }
  EXPECT_TRUE(commutes(PauliString::from_word("XI"), PauliString::from_word("IX")));
  EXPECT_FALSE(commutes(PauliString::from_word("X"), PauliString::from_word("Y")));
  EXPECT_FALSE(commutes(PauliString::from_word("XII"), PauliString::from_word("ZZX")));
}

TEST(Pauli, Weight) {
  EXPECT_EQ(weight(PauliString::from_word("III")), 0);
  EXPECT_EQ(weight(PauliString::from_word("ZZX")), 3);
  // γ5 γ6 under JW on three modes is i Z on the third qubit
  const auto p = PauliString::from_word("ZZX") * PauliString::from_word("ZZY");
  EXPECT_EQ(p, PauliString::from_word("IIZ", 1));
  EXPECT_EQ(weight(p), 1);
}

TEST(Pauli, SizeMismatchThrows) {
  EXPECT_THROW(PauliString::from_word("X") * PauliString::from_word("XX"), DimensionError);
  EXPECT_THROW((void)commutes(PauliString::from_word("X"), PauliString::from_word("XX")), DimensionError);
}

TEST(Pauli, ConjugationMatchesDense) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 4;
    auto g = random_pauli(rng, n);
    if (g.is_identity()) continue;
    g = g.with_phase(1 + 2 * static_cast<int>(rng() % 2));  // ±i W, anti-Hermitian
    const auto t = random_pauli(rng, n);
    const oracle::Mat u = (M_PI / 4 * dense(g)).exp();
    const oracle::Mat expect = u * dense(t) * u.adjoint();
    EXPECT_LT((dense(conjugate_by_rotation(t, g)) - expect).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Pauli, MajoranaSwapSigns) {
  // γ_i = X I, γ_j = Z X under JW; exp(π/4 γ_i γ_j) sends γ_i to −γ_j and γ_j to γ_i
  const auto gi = PauliString::from_word("XI"), gj = PauliString::from_word("ZX");
  const auto g = gi * gj;
  EXPECT_EQ(conjugate_by_rotation(gi, g), -gj);
  EXPECT_EQ(conjugate_by_rotation(gj, g), gi);
  // γ5 of three modes anticommutes with both, so it commutes with their product
  const auto g3 = PauliString::from_word("XII") * PauliString::from_word("ZXI");
  const auto g5 = PauliString::from_word("ZZX");
  EXPECT_EQ(conjugate_by_rotation(g5, g3), g5);
}

TEST(PauliSum, HermiticityAndArithmetic) {
  PauliSum h(2);
  h.add("XX", 0.5);
  h.add("ZI", -1.0);
  EXPECT_TRUE(h.is_hermitian());
  PauliSum a(2);
  a.add("XY", cplx(0, 1));
  EXPECT_TRUE(a.is_anti_hermitian());
  EXPECT_FALSE(a.is_hermitian());
  const PauliSum sq = h * h;
  const oracle::Mat dh = oracle::sum(2, {{"XX", 0.5}, {"ZI", -1.0}});
  oracle::Mat dsq = oracle::Mat::Zero(4, 4);
  for (const auto& [w, c] : sq.terms()) dsq += c * oracle::pauli(w);
  EXPECT_LT((dsq - dh * dh).cwiseAbs().maxCoeff(), 1e-14);
}

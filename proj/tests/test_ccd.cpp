#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccdlab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace ccdlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Random element of the symplectic unitary group {v : v^T J v = J}: exponential
// of i*H with H Hermitian satisfying conj(H) = J H J.
Mat random_symplectic_unitary(Eigen::Index ell, std::uint64_t seed) {
  const Mat g = random_special_unitary(int(2 * ell), seed);
  Mat h = (g + g.adjoint()) / 2.0;
  const Mat j = j_matrix(int(2 * ell));
  h = (h + j * h.conjugate() * j) / 2.0;
  return exp_i_hermitian(h, 0.7);
}

// Random element of the concurrence-symmetry group K.
Mat random_k_element(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const Eigen::Index dim = Eigen::Index(1) << n;
  Mat x = Mat::Zero(dim, dim);
  for (const auto& s : all_pauli_strings(n))
    if (pauli_weight(s) % 2 == 1) x += gauss(rng) * pauli_string(s);
  return exp_i_hermitian(x, 0.25);
}

Mat cphase(double t) {
  Mat v = Mat::Zero(4, 4);
  v(0, 0) = v(3, 3) = std::polar(1.0, t);
  v(1, 1) = v(2, 2) = std::polar(1.0, -t);
  return v;
}

// Greedy multiset distance between two equally sized complex point sets.
double multiset_distance(const Vec& a, const Vec& b) {
  REQUIRE(a.size() == b.size());
  std::vector<bool> used(std::size_t(b.size()), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index arg = -1;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (used[std::size_t(j)]) continue;
      const double d = std::abs(a[i] - b[j]);
      if (d < best) { best = d; arg = j; }
    }
    used[std::size_t(arg)] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("inner KAK: symplectic input needs no diagonal part") {
  for (Eigen::Index ell : {2, 4}) {
    const Mat v = random_symplectic_unitary(ell, 31 + ell);
    const KakAiiFactors f = kak_aii(v);
    CHECK(f.angles.cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((f.omega1 * f.d.asDiagonal() * f.omega2 - v).norm() <= 1e-9);
  }
}

TEST_CASE("inner KAK: generic input reconstructs with symplectic factors") {
  for (Eigen::Index ell : {2, 4, 8}) {
    const Mat v = random_special_unitary(int(2 * ell), 41 + ell);
    const KakAiiFactors f = kak_aii(v);
    CHECK(f.residual <= 1e-10 * std::sqrt(double(2 * ell)));
    const Mat j = j_matrix(int(2 * ell));
    CHECK((f.omega1.transpose() * j * f.omega1 - j).norm() <= 1e-9);
    CHECK((f.omega2.transpose() * j * f.omega2 - j).norm() <= 1e-9);
    for (Eigen::Index k = 0; k < ell; ++k)
      CHECK(std::abs(f.d[k] - f.d[ell + k]) <= 1e-12);  // repeat-diagonal
  }
}

TEST_CASE("inner KAK: diagonal input recovers its phases") {
  const double t = 0.37;
  Mat v = Mat::Zero(4, 4);
  v(0, 0) = v(2, 2) = std::polar(1.0, t);
  v(1, 1) = v(3, 3) = std::polar(1.0, -t);
  const KakAiiFactors f = kak_aii(v);
  Vec expect(4), got(4);
  expect << std::polar(1.0, 2 * t), std::polar(1.0, -2 * t), std::polar(1.0, 2 * t),
      std::polar(1.0, -2 * t);
  for (Eigen::Index k = 0; k < 4; ++k) got[k] = f.d[k] * f.d[k];
  CHECK(multiset_distance(expect, got) <= 1e-12);
  CHECK(f.residual <= 1e-12);
}

TEST_CASE("CCD of the controlled-phase family") {
  const double t = kPi / 4;
  const CcdFactors f = ccd(cphase(t), 2);
  CHECK(f.residual <= 1e-10);
  Vec expect(4);
  expect << cplx(0, -1), cplx(0, -1), cplx(0, 1), cplx(0, 1);
  CHECK(multiset_distance(expect, f.a_squared_spectrum) <= 1e-10);
}

TEST_CASE("CCD of local unitaries has a trivial diagonal part") {
  for (int n : {2, 3}) {
    Mat local = Mat::Identity(1, 1);
    for (int q = 0; q < n; ++q) local = kron(local, random_special_unitary(2, 50 + 10 * n + q));
    const CcdFactors f = ccd(local, n);
    CHECK(f.residual <= 1e-9);
    for (Eigen::Index j = 0; j < f.a_squared_spectrum.size(); ++j)
      CHECK(std::abs(f.a_squared_spectrum[j] - cplx(1.0)) <= 1e-9);
  }
}

TEST_CASE("CCD invariants on random unitaries") {
  for (int n = 2; n <= 5; ++n) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    for (int rep = 0; rep < 3; ++rep) {
      const Mat v = random_special_unitary(int(dim), 60 + 10 * n + rep);
      const CcdFactors f = ccd(v, n);
      CHECK(f.residual <= 1e-9 * std::pow(2.0, n / 2.0));
      CHECK(is_concurrence_symmetry(f.k1, 1e-9));
      CHECK(is_concurrence_symmetry(f.k2, 1e-9));
      CHECK((f.phase * f.k1 * f.a * f.k2 - v).norm() <= 1e-9 * std::pow(2.0, n / 2.0));
      // a is diagonal in the structured basis
      const BasisMatrix basis =
          build_basis(n % 2 == 0 ? BasisKind::magic_e0 : BasisKind::ghz_f0, n);
      Mat inner = basis.matrix.adjoint() * f.a * basis.matrix;
      inner.diagonal().setZero();
      CHECK(inner.norm() <= 1e-9 * std::sqrt(double(dim)));
      // odd parity: the squared spectrum comes in pairs
      if (n % 2 == 1) {
        Vec sorted = f.a_squared_spectrum;
        CHECK_NOTHROW(pair_down_duplicates(sorted, 1e-7));
      }
    }
  }
}

TEST_CASE("squared spectrum is invariant under symmetry-group conjugation") {
  for (int n : {2, 3}) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    const Mat v = random_special_unitary(int(dim), 80 + n);
    const Mat w = random_k_element(n, 81 + n) * v * random_k_element(n, 82 + n);
    const CcdFactors fv = ccd(v, n);
    const CcdFactors fw = ccd(w, n);
    CHECK(multiset_distance(fv.a_squared_spectrum, fw.a_squared_spectrum) <= 1e-8);
    // determinism: identical inputs give identical outputs
    const CcdFactors fv2 = ccd(v, n);
    CHECK((fv.a_squared_spectrum - fv2.a_squared_spectrum).norm() == 0.0);
    CHECK((fv.k1 - fv2.k1).norm() == 0.0);
  }
}

TEST_CASE("CCD input validation") {
  const Mat g = random_special_unitary(4, 90);
  CHECK_THROWS_AS(ccd(g + g.adjoint(), 2), std::invalid_argument);
  CHECK_THROWS_AS(ccd(g, 3), std::invalid_argument);
}

TEST_CASE("time-reversal polar decomposition") {
  SUBCASE("generic invariants") {
    for (int n = 2; n <= 4; ++n) {
      const Eigen::Index dim = Eigen::Index(1) << n;
      const Mat v = random_special_unitary(int(dim), 100 + n);
      const PolarFactors p = polar_time_reversal(v);
      CHECK(p.residual <= 1e-9 * std::sqrt(double(dim)));
      CHECK((exp_i_hermitian(p.Hp) * exp_i_hermitian(p.Hk) - v).norm() <=
            1e-9 * std::sqrt(double(dim)));
      const Mat& s = spin_flip_matrix(n);
      // i*Hp flips sign under the involution, i*Hk is fixed
      CHECK((s.adjoint() * p.Hp.conjugate() * s - p.Hp).norm() <= 1e-9 * std::max(1.0, p.Hp.norm()));
      CHECK((s.adjoint() * p.Hk.conjugate() * s + p.Hk).norm() <= 1e-9 * std::max(1.0, p.Hk.norm()));
    }
  }
  SUBCASE("symmetry-group elements have no time-symmetric part") {
    for (int n : {2, 3}) {
      const PolarFactors p = polar_time_reversal(random_k_element(n, 110 + n));
      CHECK(p.Hp.norm() <= 1e-8);
    }
  }
  SUBCASE("an Ising pulse has no symmetry-group part") {
    const PolarFactors p = polar_time_reversal(exp_i_hermitian(pauli_string("zz"), 0.4));
    CHECK(p.Hk.norm() <= 1e-8);
    CHECK((exp_i_hermitian(p.Hp) - exp_i_hermitian(pauli_string("zz"), 0.4)).norm() <= 1e-9);
  }
}

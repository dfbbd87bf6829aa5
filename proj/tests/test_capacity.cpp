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

Mat cphase(double t) {
  Mat v = Mat::Zero(4, 4);
  v(0, 0) = v(3, 3) = std::polar(1.0, t);
  v(1, 1) = v(2, 2) = std::polar(1.0, -t);
  return v;
}

Mat random_k_element(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const Eigen::Index dim = Eigen::Index(1) << n;
  Mat x = Mat::Zero(dim, dim);
  for (const auto& s : all_pauli_strings(n))
    if (pauli_weight(s) % 2 == 1) x += gauss(rng) * pauli_string(s);
  return exp_i_hermitian(x, 0.25);
}

// Independent Chebyshev-radius oracle: brute-force min over candidate centers
// of the max distance to any point, on a successively refined grid.
double chebyshev_radius_oracle(const std::vector<cplx>& pts) {
  auto max_dist = [&](cplx c) {
    double m = 0.0;
    for (const cplx& p : pts) m = std::max(m, std::abs(p - c));
    return m;
  };
  cplx best_c(0.0, 0.0);
  double best = max_dist(best_c);
  double window = 2.0;
  for (int level = 0; level < 10; ++level) {
    const cplx origin = best_c;
    const int grid = 40;
    for (int ix = -grid; ix <= grid; ++ix)
      for (int iy = -grid; iy <= grid; ++iy) {
        const cplx c = origin + cplx(window * ix / grid, window * iy / grid);
        const double m = max_dist(c);
        if (m < best) {
          best = m;
          best_c = c;
        }
      }
    window /= 10.0;
  }
  return best;
}

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

TEST_CASE("concurrence spectrum basics") {
  // identity: all points at one
  const ConcurrenceSpectrum id = concurrence_spectrum(Mat::Identity(4, 4), 2);
  for (Eigen::Index j = 0; j < 4; ++j) CHECK(std::abs(id.points[j] - cplx(1.0)) <= 1e-12);

  // controlled-phase family: e^{+-2it}, each doubled
  const double t = 0.3;
  Vec expect(4);
  expect << std::polar(1.0, 2 * t), std::polar(1.0, 2 * t), std::polar(1.0, -2 * t),
      std::polar(1.0, -2 * t);
  CHECK(multiset_distance(expect, concurrence_spectrum(cphase(t), 2).points) <= 1e-12);

  // symmetry-group elements: all points at one
  const ConcurrenceSpectrum ks = concurrence_spectrum(random_k_element(3, 5), 3);
  for (Eigen::Index j = 0; j < 8; ++j) CHECK(std::abs(ks.points[j] - cplx(1.0)) <= 1e-9);
  CHECK(ks.reduced_points.size() == 4);
}

TEST_CASE("spectrum is a symmetry-group invariant and matches the CCD diagonal") {
  for (int n : {2, 3}) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    const Mat v = random_special_unitary(int(dim), 200 + n);
    const ConcurrenceSpectrum sp = concurrence_spectrum(v, n);
    const ConcurrenceSpectrum sp2 =
        concurrence_spectrum(random_k_element(n, 201 + n) * v * random_k_element(n, 202 + n), n);
    CHECK(multiset_distance(sp.points, sp2.points) <= 1e-8);
    CHECK(multiset_distance(sp.points, ccd(v, n).a_squared_spectrum) <= 1e-8);
  }
}

TEST_CASE("pair_down_duplicates") {
  Vec doubled(4);
  doubled << cplx(1, 0), cplx(0, 1), cplx(1, 1e-12), cplx(1e-12, 1);
  const Vec half = pair_down_duplicates(doubled, 1e-8);
  CHECK(half.size() == 2);
  Vec bad(2);
  bad << cplx(1, 0), cplx(0, 1);
  CHECK_THROWS_AS(pair_down_duplicates(bad, 1e-8), NumericalError);
}

TEST_CASE("hull membership of the origin") {
  CHECK(hull_contains_zero({cplx(1, 0), cplx(-1, 0)}));                       // diameter
  CHECK_FALSE(hull_contains_zero({std::polar(1.0, 0.1), std::polar(1.0, 0.2),
                                  std::polar(1.0, 0.3)}));                    // short arc
  CHECK(hull_contains_zero({cplx(1, 0), std::polar(1.0, 2 * kPi / 3),
                            std::polar(1.0, -2 * kPi / 3)}));                 // triangle
  CHECK_FALSE(hull_contains_zero({cplx(1, 0)}));
  CHECK(hull_contains_zero({cplx(0, 0)}));
  // boundary within tolerance: origin on an edge
  CHECK(hull_contains_zero({cplx(1, 1), cplx(-1, -1), cplx(1, 2)}));
}

TEST_CASE("smallest enclosing disk") {
  SUBCASE("degenerate sets") {
    const Disk one = smallest_enclosing_disk({cplx(2, 3)});
    CHECK(one.radius == 0.0);
    CHECK(std::abs(one.center - cplx(2, 3)) == 0.0);
    const Disk two = smallest_enclosing_disk({cplx(-1, 0), cplx(3, 0)});
    CHECK(two.radius == doctest::Approx(2.0));
    CHECK(std::abs(two.center - cplx(1, 0)) <= 1e-12);
  }
  SUBCASE("equilateral triangle on the unit circle") {
    const Disk d = smallest_enclosing_disk(
        {cplx(1, 0), std::polar(1.0, 2 * kPi / 3), std::polar(1.0, -2 * kPi / 3)});
    CHECK(d.radius == doctest::Approx(1.0));
    CHECK(std::abs(d.center) <= 1e-12);
    CHECK(d.support.size() == 3);
  }
  SUBCASE("random sets: covering and agreement with the grid oracle") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<cplx> pts(12);
      for (cplx& p : pts) p = cplx(gauss(rng), gauss(rng));
      const Disk d = smallest_enclosing_disk(pts);
      for (const cplx& p : pts) CHECK(std::abs(p - d.center) <= d.radius + 1e-9);
      CHECK(d.radius == doctest::Approx(chebyshev_radius_oracle(pts)).epsilon(1e-6));
      for (int idx : d.support)
        CHECK(std::abs(pts[std::size_t(idx)] - d.center) == doctest::Approx(d.radius));
    }
  }
}

TEST_CASE("capacity of the controlled-phase family") {
  for (double t : {0.1, 0.3, kPi / 8, kPi / 4, 1.2}) {
    const CapacityResult r = capacity(cphase(t), 2);
    CHECK(r.value == doctest::Approx(std::abs(std::sin(2 * t))).epsilon(1e-9));
    CHECK(r.maximal == (std::abs(std::abs(std::sin(2 * t)) - 1.0) <= 1e-9));
  }
  CHECK(capacity(Mat::Identity(4, 4), 2).value <= 1e-9);
  CHECK(capacity_is_maximal(cphase(kPi / 4), 2));
  CHECK_FALSE(capacity_is_maximal(cphase(kPi / 8), 2));
}

TEST_CASE("capacity agrees with the independent radius oracle") {
  for (int n : {2, 3, 4}) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    for (int rep = 0; rep < 3; ++rep) {
      const Mat v = random_special_unitary(int(dim), 300 + 10 * n + rep);
      const CapacityResult r = capacity(v, n);
      const Vec& pts = r.spectrum.odd() ? r.spectrum.reduced_points : r.spectrum.points;
      std::vector<cplx> stl(pts.data(), pts.data() + pts.size());
      const double oracle = std::min(chebyshev_radius_oracle(stl), 1.0);
      CHECK(std::abs(r.value - oracle) <= 1e-6);
    }
  }
}

TEST_CASE("capacity witness achieves the reported value") {
  for (int n : {2, 3}) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    for (int rep = 0; rep < 3; ++rep) {
      const Mat v = random_special_unitary(int(dim), 400 + 10 * n + rep);
      const CapacityResult r = capacity(v, n);
      CHECK(r.witness.phi1.norm() == doctest::Approx(1.0));
      CHECK(r.witness.phi2.norm() == doctest::Approx(1.0));
      CHECK(std::abs(concurrence_form(r.witness.phi1, r.witness.phi2)) <= 1e-9);
      CHECK(std::abs(std::abs(concurrence_form(Vec(v * r.witness.phi1), Vec(v * r.witness.phi2))) -
                     r.value) <= 1e-8);
    }
  }
  // maximal case: witness produces a pair mapped to concurrence one
  const CapacityResult m = capacity(cphase(kPi / 4), 2);
  CHECK(std::abs(concurrence_form(Vec(cphase(kPi / 4) * m.witness.phi1),
                                  Vec(cphase(kPi / 4) * m.witness.phi2))) ==
        doctest::Approx(1.0));
}

TEST_CASE("capacity monotonicity under an idle qubit") {
  CHECK(capacity_monotonicity_check(Mat::Identity(4, 4), 2).ok);
  const MonotonicityReport max = capacity_monotonicity_check(cphase(kPi / 4), 2);
  CHECK(max.ok);
  CHECK(max.kappa_n_plus_1 == doctest::Approx(1.0).epsilon(1e-8));
  for (int rep = 0; rep < 4; ++rep)
    CHECK(capacity_monotonicity_check(random_special_unitary(4, 500 + rep), 2).ok);
}

TEST_CASE("Monte Carlo maximal-capacity fraction") {
  // two phases on the circle almost never bracket the origin
  const McFractionResult n3 = maximal_capacity_fraction(3, 2000, 11);
  CHECK(n3.points_per_sample == 2);
  CHECK(n3.fraction <= 1e-12);

  // closed form 1 - m 2^{1-m} at m = 8 points: 0.9375
  const McFractionResult n5 = maximal_capacity_fraction(5, 10000, 11);
  CHECK(n5.points_per_sample == 8);
  const double sigma = std::sqrt(0.9375 * 0.0625 / 10000.0);
  CHECK(std::abs(n5.fraction - 0.9375) <= 3 * sigma);

  // parallel kernel is bit-identical to the serial reference
  const McFractionResult ser = maximal_capacity_fraction_serial(5, 10000, 11);
  CHECK(n5.hits == ser.hits);
  CHECK(n5.fraction == ser.fraction);

  // determinism in the seed
  CHECK(maximal_capacity_fraction(5, 3000, 4).hits == maximal_capacity_fraction(5, 3000, 4).hits);
}

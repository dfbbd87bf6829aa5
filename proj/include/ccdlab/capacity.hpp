#pragma once

#include "ccdlab/ccd.hpp"

namespace ccdlab {

struct ConcurrenceSpectrum {
  int n = 0;
  Vec points;          // 2^n unit-modulus values, phase-sorted
  Vec reduced_points;  // odd n only: the paired-down half multiset
  bool odd() const { return n % 2 == 1; }
};

/// spec(S^dagger v S v^T) with S the spin-flip matrix part; v is
/// SU-normalized first.  For odd n duplicates are paired into reduced_points;
/// a pairing failure beyond tol_cluster throws.
ConcurrenceSpectrum concurrence_spectrum(const Mat& v, int n, const Tolerances& tol = {});

/// Greedy nearest-neighbor pairing of a doubled multiset; returns one point
/// per pair.  Throws if any nearest match is farther than pair_tol.
Vec pair_down_duplicates(const Vec& points, double pair_tol);

/// Convex-hull membership of the origin with a tolerance band around the
/// boundary (degenerate point/segment hulls included).
bool hull_contains_zero(const std::vector<cplx>& points, double tol_hull = 1e-9);

struct Disk {
  cplx center{0.0, 0.0};
  double radius = 0.0;
  std::vector<int> support;  // indices of the 1-3 defining points
};

/// Smallest enclosing disk, randomized incremental (expected linear time).
Disk smallest_enclosing_disk(const std::vector<cplx>& points, std::uint64_t seed = 0x5eed);

struct CapacityWitness {
  Vec beta;        // achiever coefficients over the spectrum points used
  Vec phi1, phi2;  // unit-norm, form-orthogonal input states achieving value
  double value = 0.0;
};

struct CapacityResult {
  double value = 0.0;  // in [0, 1]
  bool maximal = false;
  ConcurrenceSpectrum spectrum;
  CapacityWitness witness;
};

/// Pairwise concurrence capacity: the maximum of |sum_j beta_j lambda_j| over
/// {sum beta = 0, sum |beta| <= 1}, which equals the Chebyshev radius
/// (smallest-enclosing-disk radius) of the spectrum points — full multiset for
/// even n, reduced multiset for odd n.  The witness realizes the value.
CapacityResult capacity(const Mat& v, int n, const Tolerances& tol = {});

/// Hull test on the (reduced) concurrence spectrum; equivalent to value = 1.
bool capacity_is_maximal(const Mat& v, int n, const Tolerances& tol = {});

struct MonotonicityReport {
  double kappa_n = 0.0;
  double kappa_n_plus_1 = 0.0;  // capacity of v tensor I_2
  bool ok = false;
};

/// Checks kappa_{n+1}(v tensor I_2) >= kappa_n(v) - tol_mono.
MonotonicityReport capacity_monotonicity_check(const Mat& v, int n, double tol_mono = 1e-8,
                                               const Tolerances& tol = {});

struct McFractionResult {
  double fraction = 0.0;
  double std_error = 0.0;  // binomial
  long long hits = 0;
  long long samples = 0;
  int points_per_sample = 0;
};

/// Fraction of random diagonal factors (i.i.d. uniform torus phases, mean
/// phase removed) whose squared-phase point set passes the hull test.
/// OpenMP-parallel with per-sample RNG substreams; results are identical to
/// the serial reference for any thread count.
McFractionResult maximal_capacity_fraction(int n, long long samples, std::uint64_t seed);
McFractionResult maximal_capacity_fraction_serial(int n, long long samples, std::uint64_t seed);

}  // namespace ccdlab

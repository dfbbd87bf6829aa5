#pragma once

#include "ccdlab/capacity.hpp"

namespace ccdlab {

enum class ChainFamily { xyz, ising, xy_field };
enum class Boundary { periodic, open };

/// xyz:      sum_bonds Jx XX + Jy YY + Jz ZZ           (couplings as written)
/// ising:    sum_bonds Jz ZZ
/// xy_field: sum_bonds J(1+g)/4 XX + J(1-g)/4 YY + sum_j h_z/2 Z_j, J = Jx
/// (the two normalization conventions are deliberately kept side by side).
/// Periodic chains include the wrap-around bond; for n = 2 this doubles the
/// single bond.
struct SpinChainSpec {
  int n = 2;
  ChainFamily family = ChainFamily::xyz;
  double Jx = 0.0, Jy = 0.0, Jz = 0.0;
  double g = 0.0;    // xy_field anisotropy
  double h_z = 0.0;  // xy_field transverse field
  Boundary boundary = Boundary::periodic;
};

Mat build_hamiltonian(const SpinChainSpec& spec);

/// Periodic Ising closed form: { Jz * (n - 2 * sum_k j_k xor j_{k+1}) } over
/// all n-bit strings j, with cyclic k+1.
std::vector<double> ising_spectrum_analytic(int n, double Jz);

/// {e^{-2 i lambda_j t}} from the eigenvalues of a real, time-symmetric H —
/// no unitary is formed.  verify = true additionally forms exp(-iHt) and
/// checks the shortcut against the direct definition.
ConcurrenceSpectrum evolution_concurrence_spectrum(const Mat& h, int n, double t,
                                                   bool verify = false,
                                                   const Tolerances& tol = {});

/// pi / (4 n |Jz|): the first time the periodic Ising evolution becomes
/// maximally entangling.  n must be even, Jz nonzero.
double min_maximal_capacity_time(int n, double Jz);

struct TminSweep {
  double t_min = 0.0;          // analytic value
  double first_maximal_t = 0;  // first grid point passing the hull test
  double grid_step = 0.0;
  bool flip_within_one_step = false;
};

/// Grid sweep of capacity maximality for exp(-i H_ising t) on [0, 2 t_min].
TminSweep tmin_sweep(int n, double Jz, int grid_points = 400, const Tolerances& tol = {});

struct KramersCluster {
  double value = 0.0;
  int multiplicity = 0;
  bool ambiguous = false;   // gap to a neighbor too close to the threshold
  double concurrence = -1;  // eigenstate concurrence, nondegenerate clusters only
};

struct KramersReport {
  int n = 0;
  std::vector<KramersCluster> clusters;
  double max_flip_residual = 0.0;  // worst ||H (flip psi) - lambda (flip psi)||
  bool verdict_ok = false;  // odd n: all even multiplicity; even n: every
                            // nondegenerate eigenstate has concurrence ~ 1
};

/// Degeneracy dichotomy for a time-symmetric Hamiltonian.  Non-time-symmetric
/// input is an error, not a failed verdict.
KramersReport kramers_report(const Mat& h, int n, const Tolerances& tol = {});

struct SweepRow {
  double h = 0.0;
  double ground_energy = 0.0;
  int ground_multiplicity = 1;
  double sz = 0.0;  // ground-state <sum_j sigma^z_j>
  double concurrence = 0.0;
};

std::vector<SweepRow> ground_state_concurrence_sweep(int n, double g,
                                                     const std::vector<double>& h_values,
                                                     double J = 1.0,
                                                     const Tolerances& tol = {});

/// Field where the ground-state concurrence collapses, located by bisection.
double find_crossing_field(int n, double g, double J = 1.0, double h_lo = 0.0,
                           double h_hi = 10.0, double tol_h = 1e-6);

}  // namespace ccdlab

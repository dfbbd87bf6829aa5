#pragma once

#include "ccdlab/spinflip.hpp"
#include "ccdlab/symplectic_eig.hpp"

namespace ccdlab {

/// Inner KAK factors of v in the standard symplectic frame:
/// v = omega1 * diag(d) * omega2 with omega^T J omega = J and
/// d = (e^{i angle_0..ell-1}, e^{i angle_0..ell-1}) repeat-diagonal.
struct KakAiiFactors {
  Mat omega1;
  Mat omega2;
  Vec d;                    // length 2*ell, slots (j, ell+j) carry the same entry
  Eigen::VectorXd angles;   // length ell
  double residual = 0.0;    // ||omega1 diag(d) omega2 - v||_F
};

/// Symplectic KAK of v in SU(2l): (1) p^2 = -v J v^T J, (2) branch-stable
/// log placed in the largest spectral gap, projected onto the J-skew class,
/// (3) structured eigensolver gives omega1, (4) d = exp(i diag(angles,angles)),
/// (5) omega2 = omega1^dagger p^dagger v.
KakAiiFactors kak_aii(const Mat& v, const Tolerances& tol = {});

enum class Parity { even, odd };

struct CcdFactors {
  int n = 0;
  Parity parity = Parity::even;
  cplx phase{1.0, 0.0};  // phase * k1 * a * k2 reconstructs the original input
  Mat k1, a, k2;         // outer factors; k1, k2 preserve the concurrence form
  Mat omega1, omega2;    // inner factors in the E0/F0 frame
  Vec d;                 // diagonal of the inner a factor (length 2^n)
  Vec a_squared_spectrum;  // spec(a^2) read off the diagonal, phase-sorted
  double residual = 0.0;   // ||phase * k1 * a * k2 - v||_F
};

/// Concurrence canonical decomposition v = k1 a k2 for either parity.
/// Odd n: conjugate the symplectic KAK through the GHZ-like basis F0.
/// Even n: in the magic basis m = E0^dagger v E0, diagonalize the symmetric
/// unitary s = m m^T by a real orthogonal o1, take d = sqrt of the diagonal,
/// o2 = d^dagger o1^T m, and map back through E0.
CcdFactors ccd(const Mat& v, int n, const Tolerances& tol = {});

struct PolarFactors {
  Mat Hp, Hk;  // Hermitian; exp(i Hp) exp(i Hk) = v, i Hp in p, i Hk in k
  double residual = 0.0;
};

/// Time-reversal polar decomposition: Hp = k1 (log a)/i k1^dagger,
/// Hk = log(k1 k2)/i from the CCD of the SU-normalized input.
PolarFactors polar_time_reversal(const Mat& v, const Tolerances& tol = {});

}  // namespace ccdlab

#pragma once

#include "ccdlab/linalg.hpp"

namespace ccdlab {

/// (-i sigma^y)^{tensor n}.  The full spin-flip is this matrix composed with
/// entrywise complex conjugation; we keep the matrix part and apply the
/// conjugation explicitly, so everything stays in complex arithmetic.
const Mat& spin_flip_matrix(int n);

/// J_N = (-i sigma^y) tensor I_{N/2} for even dimension dim.
Mat j_matrix(int dim);

/// The spin-flip applied to a state: (-i sigma^y)^{tensor n} conj(psi).
Vec spin_flip(const Vec& psi);

/// |<psi| flip |psi>| / <psi|psi>.  Vanishes identically for odd n.
double concurrence(const Vec& psi);

/// Concurrence bilinear form conj(<phi| flip |psi>) = phi^T S psi.
/// Symmetric for n even, antisymmetric for n odd.
cplx concurrence_form(const Vec& phi, const Vec& psi);

enum class BasisKind { magic_e0, ghz_f0 };

struct BasisMatrix {
  BasisKind kind;
  int n;
  Mat matrix;
  std::vector<int> iota;  // +-1 signs read off the spin-flip anti-diagonal
};

/// magic_e0 (n even): unitary E with E E^T = (-i sigma^y)^{tensor n} whose
/// columns are GHZ-like; reproduces the two-qubit magic basis.
/// ghz_f0 (n odd): real orthogonal F with F J_N F^T = (-i sigma^y)^{tensor n}.
BasisMatrix build_basis(BasisKind kind, int n);

/// theta(X) = S^dagger conj(X) S with S the spin-flip matrix part.
Mat cartan_involution(const Mat& x, double tol = 1e-8);

/// X = Xp + Xk with theta(Xp) = -Xp and theta(Xk) = Xk.
std::pair<Mat, Mat> pk_split(const Mat& x, double tol = 1e-8);

enum class PauliClass { p_symmetric, k_antisymmetric };

/// Even weight -> p (time-symmetric generators), odd weight -> k.
PauliClass pauli_class(const std::string& letters);

/// H = flip H flip^{-1}, i.e. iH in the -1 eigenspace of theta.
/// The zero Hamiltonian reports true for both predicates.
bool is_time_symmetric(const Mat& h, double tol = 1e-8);
bool is_time_antisymmetric(const Mat& h, double tol = 1e-8);

/// k^T S k = S, the matrix form of concurrence-form invariance.
bool is_concurrence_symmetry(const Mat& k, double tol = 1e-9);

/// Random real combination of even-weight Pauli strings; always
/// time-symmetric and traceless.  Deterministic per seed.
Mat random_time_symmetric_hamiltonian(int n, std::uint64_t seed);

}  // namespace ccdlab

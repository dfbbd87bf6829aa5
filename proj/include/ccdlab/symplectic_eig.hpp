#pragma once

#include "ccdlab/linalg.hpp"

namespace ccdlab {

/// Hermitian H with H J - J H^T = 0, stored by its defining blocks:
/// H = [[A, B], [-conj(B), conj(A)]] with A Hermitian and B antisymmetric.
struct SkewSymmetricHamiltonian {
  Eigen::Index ell = 0;
  Mat A;
  Mat B;

  Mat full() const;
  static SkewSymmetricHamiltonian from_full(const Mat& h, double tol = 1e-10);
};

bool is_j_skew_symmetric(const Mat& h, double tol = 1e-10);

/// Gaussian random instance with the exact block structure; deterministic per
/// seed.
SkewSymmetricHamiltonian random_skew_symmetric_hamiltonian(Eigen::Index ell, std::uint64_t seed);

struct TridiagonalReduction {
  Mat Q;                    // unitary, same block structure as H
  Eigen::VectorXd diag;     // T diagonal, length ell
  Eigen::VectorXd offdiag;  // T subdiagonal, length ell-1
};

/// Q H Q^dagger = diag(T, T) with T real symmetric tridiagonal.
/// ell-1 sweeps: 2x2 rotations on row pairs (j, ell+j) clear the B column,
/// then a real Householder reflection applied as diag(S, S) clears the
/// remaining A column below the subdiagonal.
TridiagonalReduction reduce_to_tridiagonal(const SkewSymmetricHamiltonian& h);

/// Implicit-shift QR with Wilkinson shift and deflation.  diag/offdiag are
/// consumed; returns eigenvalues ascending and the accumulated real
/// orthogonal eigenvector matrix.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> tridiagonal_qr(Eigen::VectorXd diag,
                                                           Eigen::VectorXd offdiag,
                                                           int max_iter_per_eigenvalue = 30);

struct SymplecticEigResult {
  Mat W;                        // 2l x 2l, block form [[U, V], [-conj(V), conj(U)]]
  Eigen::VectorXd eigenvalues;  // l values ascending; each has multiplicity 2
  double residual = 0.0;        // ||H W - W diag(lambda, lambda)|| / max(1, ||H||)
};

/// Columns k and ell+k of W are eigenvectors for eigenvalues[k].
SymplecticEigResult symplectic_eig(const SkewSymmetricHamiltonian& h);

}  // namespace ccdlab

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccdlab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Dense storage only; 2^12 x 2^12 is the largest matrix we ever build.
inline constexpr int kMaxQubits = 12;

struct Tolerances {
  double herm = 1e-10;
  double unitary = 1e-10;
  double cluster = 1e-8;  // eigenvalue degeneracy grouping
  double hull = 1e-9;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_unitary(const Mat& u, double tol = 1e-10);
bool is_hermitian(const Mat& h, double tol = 1e-10);

/// Kronecker product, OpenMP-threaded over rows of the result.
Mat kron(const Mat& a, const Mat& b);

/// Single-threaded reference used by the tests and the benchmark.
Mat kron_serial(const Mat& a, const Mat& b);

/// One of '0', 'x', 'y', 'z'.
Mat pauli(char letter);

/// Tensor product over a letter string, e.g. "zz0" -> sigma_z x sigma_z x I.
Mat pauli_string(const std::string& letters);

/// Number of non-'0' letters.
int pauli_weight(const std::string& letters);

/// All nonzero Pauli strings of length n (4^n - 1 of them).
std::vector<std::string> all_pauli_strings(int n);

/// Eigenvalues ascending, V unitary with H V = V diag(lambda).
std::pair<Eigen::VectorXd, Mat> eig_hermitian(const Mat& h, double tol = 1e-10);

/// Eigendecomposition of a unitary (normal) matrix via complex Schur:
/// U = Z diag(lambda) Z^dagger with Z unitary.
std::pair<Vec, Mat> eig_unitary(const Mat& u, double tol = 1e-10);

/// Principal-branch skew-Hermitian logarithm: exp(result) = U.
/// Eigenphases lie in (-pi, pi]; phases within tol_cluster of +-pi map to +pi.
Mat log_unitary(const Mat& u, double tol = 1e-10, double tol_cluster = 1e-8);

/// Skew-Hermitian log with the branch cut placed at angle `cut`:
/// eigenphases in (cut - 2*pi, cut].
Mat log_unitary_cut(const Mat& u, double cut, double tol = 1e-10);

/// exp(i * scale * h) for Hermitian h, via the spectral decomposition.
Mat exp_i_hermitian(const Mat& h, double scale = 1.0, double tol = 1e-10);

/// Haar sample from U(N) (QR of a complex Ginibre matrix with the R diagonal
/// phased away), then global-phase normalized to determinant one.
/// Deterministic per seed.
Mat random_special_unitary(int dim, std::uint64_t seed);

/// Divide by the N-th root of det(u) whose argument lies in (-pi/N, pi/N].
/// Returns the SU(N) representative and the removed scalar phase, so that
/// u = phase * normalized.
std::pair<Mat, cplx> su_normalize(const Mat& u);

/// Stateless per-task stream: hash of (seed, index).  Used so that parallel
/// batches are reproducible independent of thread count.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace ccdlab

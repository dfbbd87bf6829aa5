#include "ccdlab/spinflip.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>

namespace ccdlab {

namespace {

int qubits_of_dim(Eigen::Index dim, const char* who) {
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) ++n;
  if ((Eigen::Index(1) << n) != dim || n < 1 || n > kMaxQubits)
    throw std::invalid_argument(std::string(who) + ": dimension is not 2^n within the cap");
  return n;
}

void require_su_element(const Mat& x, double tol, const char* who) {
  const double scale = std::max(1.0, x.norm());
  if ((x + x.adjoint()).norm() > tol * scale)
    throw std::invalid_argument(std::string(who) + ": input is not skew-Hermitian");
  if (std::abs(x.trace()) > tol * scale * std::sqrt(double(x.rows())))
    throw std::invalid_argument(std::string(who) + ": input is not traceless");
}

}  // namespace

const Mat& spin_flip_matrix(int n) {
  static std::map<int, Mat> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("spin_flip_matrix: bad qubit count");
  Mat miy(2, 2);
  miy << 0, -1, 1, 0;  // -i sigma^y
  Mat s = miy;
  for (int k = 1; k < n; ++k) s = kron_serial(s, miy);
  return cache.emplace(n, std::move(s)).first->second;
}

Mat j_matrix(int dim) {
  if (dim < 2 || dim % 2 != 0) throw std::invalid_argument("j_matrix: dimension must be even");
  const int ell = dim / 2;
  Mat j = Mat::Zero(dim, dim);
  j.topRightCorner(ell, ell) = -Mat::Identity(ell, ell);
  j.bottomLeftCorner(ell, ell) = Mat::Identity(ell, ell);
  return j;
}

Vec spin_flip(const Vec& psi) {
  const int n = qubits_of_dim(psi.size(), "spin_flip");
  return spin_flip_matrix(n) * psi.conjugate();
}

double concurrence(const Vec& psi) {
  const double nrm2 = psi.squaredNorm();
  if (nrm2 == 0.0) throw std::invalid_argument("concurrence: zero vector");
  return std::abs(psi.dot(spin_flip(psi))) / nrm2;
}

cplx concurrence_form(const Vec& phi, const Vec& psi) {
  if (phi.size() != psi.size()) throw std::invalid_argument("concurrence_form: dimension mismatch");
  const int n = qubits_of_dim(psi.size(), "concurrence_form");
  return phi.transpose() * spin_flip_matrix(n) * psi;
}

BasisMatrix build_basis(BasisKind kind, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  const Eigen::Index half = dim / 2;
  const Mat& s = spin_flip_matrix(n);
  std::vector<int> iota(half);
  for (Eigen::Index j = 0; j < half; ++j) {
    const double v = s(j, dim - 1 - j).real();
    iota[j] = v >= 0 ? 1 : -1;
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Mat m = Mat::Zero(dim, dim);
  if (kind == BasisKind::magic_e0) {
    if (n % 2 != 0) throw std::invalid_argument("build_basis: magic_e0 requires n even");
    // Columns (|j> + iota_j |N-1-j>)/sqrt(2) and i(|j> - iota_j |N-1-j>)/sqrt(2);
    // satisfies E E^T = spin-flip matrix and reduces to the magic basis at n=2.
    for (Eigen::Index j = 0; j < half; ++j) {
      m(j, j) = inv_sqrt2;
      m(dim - 1 - j, j) = iota[j] * inv_sqrt2;
      m(j, half + j) = cplx(0, inv_sqrt2);
      m(dim - 1 - j, half + j) = cplx(0, -iota[j] * inv_sqrt2);
    }
  } else {
    if (n % 2 != 1) throw std::invalid_argument("build_basis: ghz_f0 requires n odd");
    for (Eigen::Index j = 0; j < half; ++j) {
      m(j, j) = inv_sqrt2;
      m(dim - 1 - j, j) = inv_sqrt2;
      m(j, half + j) = iota[j] * inv_sqrt2;
      m(dim - 1 - j, half + j) = -iota[j] * inv_sqrt2;
    }
  }
  return {kind, n, std::move(m), std::move(iota)};
}

Mat cartan_involution(const Mat& x, double tol) {
  require_su_element(x, tol, "cartan_involution");
  const int n = qubits_of_dim(x.rows(), "cartan_involution");
  const Mat& s = spin_flip_matrix(n);
  return s.adjoint() * x.conjugate() * s;
}

std::pair<Mat, Mat> pk_split(const Mat& x, double tol) {
  const Mat tx = cartan_involution(x, tol);
  return {(x - tx) / 2.0, (x + tx) / 2.0};
}

PauliClass pauli_class(const std::string& letters) {
  const int w = pauli_weight(letters);
  if (w == 0) throw std::invalid_argument("pauli_class: zero Pauli string");
  return (w % 2 == 0) ? PauliClass::p_symmetric : PauliClass::k_antisymmetric;
}

bool is_time_symmetric(const Mat& h, double tol) {
  if (!is_hermitian(h, tol)) throw std::invalid_argument("is_time_symmetric: input is not Hermitian");
  const Mat x = cplx(0, 1) * h;
  const int n = qubits_of_dim(h.rows(), "is_time_symmetric");
  const Mat& s = spin_flip_matrix(n);
  const Mat tx = s.adjoint() * x.conjugate() * s;
  return (tx + x).norm() <= tol * std::max(1.0, h.norm());
}

bool is_time_antisymmetric(const Mat& h, double tol) {
  if (!is_hermitian(h, tol)) throw std::invalid_argument("is_time_antisymmetric: input is not Hermitian");
  const Mat x = cplx(0, 1) * h;
  const int n = qubits_of_dim(h.rows(), "is_time_antisymmetric");
  const Mat& s = spin_flip_matrix(n);
  const Mat tx = s.adjoint() * x.conjugate() * s;
  return (tx - x).norm() <= tol * std::max(1.0, h.norm());
}

bool is_concurrence_symmetry(const Mat& k, double tol) {
  if (!is_unitary(k, std::max(tol, 1e-10))) throw std::invalid_argument("is_concurrence_symmetry: input is not unitary");
  const int n = qubits_of_dim(k.rows(), "is_concurrence_symmetry");
  const Mat& s = spin_flip_matrix(n);
  return (k.transpose() * s * k - s).norm() <= tol * std::sqrt(double(k.rows()));
}

Mat random_time_symmetric_hamiltonian(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::Index dim = Eigen::Index(1) << n;
  Mat h = Mat::Zero(dim, dim);
  for (const auto& letters : all_pauli_strings(n)) {
    if (pauli_weight(letters) % 2 != 0) continue;
    h += gauss(rng) * pauli_string(letters);
  }
  return h;
}

}  // namespace ccdlab

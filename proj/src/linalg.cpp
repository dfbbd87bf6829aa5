#include "ccdlab/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>

namespace ccdlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

bool is_unitary(const Mat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm() <= tol * std::sqrt(double(u.rows()));
}

bool is_hermitian(const Mat& h, double tol) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).norm() <= tol * std::max(1.0, h.norm());
}

Mat kron(const Mat& a, const Mat& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  if (ar * br > (Eigen::Index(1) << kMaxQubits) || ac * bc > (Eigen::Index(1) << kMaxQubits))
    throw std::invalid_argument("kron: result exceeds the configured dimension cap");
  Mat out(ar * br, ac * bc);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

Mat kron_serial(const Mat& a, const Mat& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  Mat out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

Mat pauli(char letter) {
  Mat m(2, 2);
  switch (letter) {
    case '0': m << 1, 0, 0, 1; break;
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument(std::string("pauli: bad letter '") + letter + "'");
  }
  return m;
}

Mat pauli_string(const std::string& letters) {
  if (letters.empty()) throw std::invalid_argument("pauli_string: empty string");
  Mat m = pauli(letters[0]);
  for (std::size_t k = 1; k < letters.size(); ++k) m = kron_serial(m, pauli(letters[k]));
  return m;
}

int pauli_weight(const std::string& letters) {
  int w = 0;
  for (char c : letters)
    if (c != '0') ++w;
  return w;
}

std::vector<std::string> all_pauli_strings(int n) {
  static const char kLetters[4] = {'0', 'x', 'y', 'z'};
  std::vector<std::string> out;
  std::string cur(n, '0');
  const std::size_t total = std::size_t(1) << (2 * n);
  out.reserve(total - 1);
  for (std::size_t code = 1; code < total; ++code) {
    std::size_t c = code;
    for (int k = 0; k < n; ++k) {
      cur[k] = kLetters[c & 3];
      c >>= 2;
    }
    out.push_back(cur);
  }
  return out;
}

std::pair<Eigen::VectorXd, Mat> eig_hermitian(const Mat& h, double tol) {
  if (!is_hermitian(h, tol)) throw std::invalid_argument("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("eig_hermitian: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

std::pair<Vec, Mat> eig_unitary(const Mat& u, double tol) {
  if (!is_unitary(u, tol)) throw std::invalid_argument("eig_unitary: input is not unitary");
  Eigen::ComplexSchur<Mat> schur(u, /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw NumericalError("eig_unitary: Schur failed");
  // U is normal, so T is diagonal up to roundoff.
  Vec vals = schur.matrixT().diagonal();
  for (Eigen::Index j = 0; j < vals.size(); ++j) vals[j] /= std::abs(vals[j]);
  return {vals, schur.matrixU()};
}

Mat log_unitary(const Mat& u, double tol, double tol_cluster) {
  auto [vals, z] = eig_unitary(u, tol);
  Vec phases(vals.size());
  for (Eigen::Index j = 0; j < vals.size(); ++j) {
    double phi = std::arg(vals[j]);  // (-pi, pi]
    if (phi <= -kPi + tol_cluster || phi >= kPi - tol_cluster) phi = kPi;
    phases[j] = cplx(0, phi);
  }
  return z * phases.asDiagonal() * z.adjoint();
}

Mat log_unitary_cut(const Mat& u, double cut, double tol) {
  auto [vals, z] = eig_unitary(u, tol);
  Vec phases(vals.size());
  for (Eigen::Index j = 0; j < vals.size(); ++j) {
    double phi = std::arg(vals[j]);
    // shift into (cut - 2*pi, cut]
    while (phi > cut) phi -= 2 * kPi;
    while (phi <= cut - 2 * kPi) phi += 2 * kPi;
    phases[j] = cplx(0, phi);
  }
  return z * phases.asDiagonal() * z.adjoint();
}

Mat exp_i_hermitian(const Mat& h, double scale, double tol) {
  auto [vals, z] = eig_hermitian(h, tol);
  Vec phases(vals.size());
  for (Eigen::Index j = 0; j < vals.size(); ++j) phases[j] = std::polar(1.0, scale * vals[j]);
  return z * phases.asDiagonal() * z.adjoint();
}

Mat random_special_unitary(int dim, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("random_special_unitary: dim must be >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase the R diagonal away; this makes the distribution Haar.
  for (int j = 0; j < dim; ++j) {
    cplx d = r(j, j);
    q.col(j) *= (d == 0.0) ? 1.0 : d / std::abs(d);
  }
  return su_normalize(q).first;
}

std::pair<Mat, cplx> su_normalize(const Mat& u) {
  const int dim = int(u.rows());
  const cplx det = u.determinant();
  const double arg = std::arg(det);
  // N-th root with argument in (-pi/N, pi/N].
  double phi = arg / dim;
  if (phi <= -kPi / dim) phi += 2 * kPi / dim;
  const cplx root = std::polar(std::pow(std::abs(det), 1.0 / dim), phi);
  return {u / root, root};
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined word
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace ccdlab

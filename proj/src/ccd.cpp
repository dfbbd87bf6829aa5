#include "ccdlab/ccd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ccdlab {

namespace {

constexpr double kPi = std::numbers::pi;

int qubits_of_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) ++n;
  if ((Eigen::Index(1) << n) != dim || n < 1 || n > kMaxQubits)
    throw std::invalid_argument("ccd: dimension is not 2^n within the cap");
  return n;
}

/// Branch cut in the middle of the largest angular gap of spec(u), so every
/// eigenphase sits well away from the cut and conjugation commutes with log.
double largest_gap_cut(const Vec& vals) {
  std::vector<double> phases(vals.size());
  for (Eigen::Index j = 0; j < vals.size(); ++j) phases[j] = std::arg(vals[j]);
  std::sort(phases.begin(), phases.end());
  double best_gap = phases.front() + 2 * kPi - phases.back();
  double cut = phases.back() + best_gap / 2;
  for (std::size_t i = 0; i + 1 < phases.size(); ++i) {
    const double gap = phases[i + 1] - phases[i];
    if (gap > best_gap) {
      best_gap = gap;
      cut = phases[i] + gap / 2;
    }
  }
  return cut;
}

Vec sorted_by_phase(Vec v) {
  std::sort(v.data(), v.data() + v.size(),
            [](const cplx& a, const cplx& b) { return std::arg(a) < std::arg(b); });
  return v;
}

}  // namespace

KakAiiFactors kak_aii(const Mat& v, const Tolerances& tol) {
  const Eigen::Index dim = v.rows();
  if (dim % 2 != 0 || v.cols() != dim) throw std::invalid_argument("kak_aii: dimension must be even");
  if (!is_unitary(v, tol.unitary)) throw std::invalid_argument("kak_aii: input is not unitary");
  const Eigen::Index ell = dim / 2;
  const Mat j = j_matrix(int(dim));

  const Mat p2 = -v * j * v.transpose() * j;
  auto [p2_vals, p2_vecs] = eig_unitary(p2, 1e-8);
  const double cut = largest_gap_cut(p2_vals);
  const Mat x_raw = log_unitary_cut(p2, cut, 1e-8);
  // Generic logs of p^2 are J-skew only up to branch coincidences; project and
  // refuse if the correction is larger than roundoff can explain.
  const Mat theta_x = j * x_raw.conjugate() * j.transpose();
  const Mat x = (x_raw - theta_x) / 2.0;
  if ((x_raw - x).norm() > 1e-6 * std::max(1.0, x_raw.norm()))
    throw NumericalError("kak_aii: logarithm branch is not J-skew symmetric");

  const Mat h = x / cplx(0, 2);
  const auto sym = symplectic_eig(SkewSymmetricHamiltonian::from_full(h, 1e-7));
  if (sym.residual > 1e-9) throw NumericalError("kak_aii: symplectic eigensolver residual too large");

  KakAiiFactors out;
  out.omega1 = sym.W;
  out.angles = sym.eigenvalues;
  out.d.resize(dim);
  for (Eigen::Index k = 0; k < ell; ++k) {
    out.d[k] = std::polar(1.0, sym.eigenvalues[k]);
    out.d[ell + k] = out.d[k];
  }
  const Mat p = out.omega1 * out.d.asDiagonal() * out.omega1.adjoint();
  out.omega2 = out.omega1.adjoint() * (p.adjoint() * v);
  if ((out.omega2.transpose() * j * out.omega2 - j).norm() > 1e-6 * std::sqrt(double(dim)))
    throw NumericalError("kak_aii: residual factor is not symplectic");
  out.residual = (out.omega1 * out.d.asDiagonal() * out.omega2 - v).norm();
  return out;
}

namespace {

/// Type-AI core in the magic basis: m = o1 diag(d) o2 with o1, o2 real
/// orthogonal and d unit-modulus.  Diagonalizes the symmetric unitary
/// s = m m^T through a real rotation of (Re s, Im s), which commute.
void kak_ai_magic(const Mat& m, const Tolerances& tol, Eigen::MatrixXd& o1, Vec& d,
                  Eigen::MatrixXd& o2) {
  const Eigen::Index dim = m.rows();
  const Mat s = m * m.transpose();
  const Eigen::MatrixXd re = s.real();
  const Eigen::MatrixXd im = s.imag();
  const double scale = std::max(1.0, s.norm());

  // A single rotation angle gamma mixing Re(s) and Im(s) generically splits
  // all coincident eigenvalues of cos(g)Re + sin(g)Im; retry on residual.
  static const double gammas[] = {0.0,      0.785398163397448, 0.318309886183791,
                                  1.234567, 2.345678,          0.111111,
                                  2.718281, 1.618033};
  double best_res = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best_o;
  for (double g : gammas) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(std::cos(g) * re + std::sin(g) * im);
    if (es.info() != Eigen::Success) continue;
    const Eigen::MatrixXd o = es.eigenvectors();
    const Eigen::MatrixXd rr = o.transpose() * re * o;
    const Eigen::MatrixXd mm = o.transpose() * im * o;
    const double res = (rr - Eigen::MatrixXd(rr.diagonal().asDiagonal())).norm() +
                       (mm - Eigen::MatrixXd(mm.diagonal().asDiagonal())).norm();
    if (res < best_res) {
      best_res = res;
      best_o = o;
    }
    if (res <= 1e-9 * scale) break;
  }
  if (best_res > 1e-7 * scale)
    throw NumericalError("ccd: simultaneous diagonalization of the symmetric unitary failed");
  o1 = best_o;
  if (o1.determinant() < 0) o1.col(0) *= -1.0;

  d.resize(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const cplx lambda(o1.col(k).dot(re * o1.col(k)), o1.col(k).dot(im * o1.col(k)));
    d[k] = std::polar(1.0, std::arg(lambda) / 2.0);  // principal square root
  }
  Mat o2c = d.conjugate().asDiagonal() * o1.transpose().cast<cplx>() * m;
  if (o2c.imag().norm() > 1e-7 * std::sqrt(double(dim)))
    throw NumericalError("ccd: second orthogonal factor is not real");
  o2 = o2c.real();
  if (o2.determinant() < 0) {
    // Flip one sign pair; keeps m = o1 diag(d) o2 and spec(d^2) unchanged.
    d[0] = -d[0];
    o2.row(0) *= -1.0;
  }
}

}  // namespace

CcdFactors ccd(const Mat& v, int n, const Tolerances& tol) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (v.rows() != dim || v.cols() != dim)
    throw std::invalid_argument("ccd: matrix dimension does not match the qubit count");
  qubits_of_dim(dim);
  if (!is_unitary(v, tol.unitary)) throw std::invalid_argument("ccd: input is not unitary");
  auto [v0, phase] = su_normalize(v);

  CcdFactors out;
  out.n = n;
  out.phase = phase;
  if (n % 2 == 0) {
    out.parity = Parity::even;
    const Mat& e0 = build_basis(BasisKind::magic_e0, n).matrix;
    const Mat m = e0.adjoint() * v0 * e0;
    Eigen::MatrixXd o1, o2;
    kak_ai_magic(m, tol, o1, out.d, o2);
    out.omega1 = o1.cast<cplx>();
    out.omega2 = o2.cast<cplx>();
    out.k1 = e0 * out.omega1 * e0.adjoint();
    out.a = e0 * out.d.asDiagonal() * e0.adjoint();
    out.k2 = e0 * out.omega2 * e0.adjoint();
  } else {
    out.parity = Parity::odd;
    const Mat& f0 = build_basis(BasisKind::ghz_f0, n).matrix;
    const Mat w = f0.transpose() * v0 * f0;
    KakAiiFactors inner = kak_aii(w, tol);
    out.omega1 = std::move(inner.omega1);
    out.omega2 = std::move(inner.omega2);
    out.d = std::move(inner.d);
    out.k1 = f0 * out.omega1 * f0.transpose();
    out.a = f0 * out.d.asDiagonal() * f0.transpose();
    out.k2 = f0 * out.omega2 * f0.transpose();
  }
  out.a_squared_spectrum = sorted_by_phase(out.d.array().square().matrix());
  out.residual = (phase * out.k1 * out.a * out.k2 - v).norm();
  if (out.residual > 1e-6 * std::sqrt(double(dim)))
    throw NumericalError("ccd: reconstruction residual too large");
  return out;
}

PolarFactors polar_time_reversal(const Mat& v, const Tolerances& tol) {
  const int n = qubits_of_dim(v.rows());
  if (!is_unitary(v, tol.unitary)) throw std::invalid_argument("polar_time_reversal: input is not unitary");
  auto [v0, phase] = su_normalize(v);
  if (std::abs(phase - 1.0) > 1e-6)
    throw std::invalid_argument("polar_time_reversal: input must be special unitary");
  CcdFactors f = ccd(v0, n, tol);

  const Mat basis = (f.parity == Parity::even) ? build_basis(BasisKind::magic_e0, n).matrix
                                               : build_basis(BasisKind::ghz_f0, n).matrix;
  Eigen::VectorXd angles(f.d.size());
  for (Eigen::Index k = 0; k < f.d.size(); ++k) angles[k] = std::arg(f.d[k]);
  const Mat log_a_over_i = basis * angles.cast<cplx>().asDiagonal() * basis.adjoint();

  PolarFactors out;
  out.Hp = f.k1 * log_a_over_i * f.k1.adjoint();
  out.Hk = log_unitary(f.k1 * f.k2, tol.unitary, tol.cluster) / cplx(0, 1);
  out.residual = (exp_i_hermitian(out.Hp) * exp_i_hermitian(out.Hk) - v0).norm();
  if (out.residual > 1e-6 * std::sqrt(double(v.rows())))
    throw NumericalError("polar_time_reversal: reconstruction residual too large");
  return out;
}

}  // namespace ccdlab

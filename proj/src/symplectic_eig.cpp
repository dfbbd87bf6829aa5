#include "ccdlab/symplectic_eig.hpp"

#include "ccdlab/spinflip.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace ccdlab {

Mat SkewSymmetricHamiltonian::full() const {
  Mat h(2 * ell, 2 * ell);
  h.topLeftCorner(ell, ell) = A;
  h.topRightCorner(ell, ell) = B;
  h.bottomLeftCorner(ell, ell) = -B.conjugate();
  h.bottomRightCorner(ell, ell) = A.conjugate();
  return h;
}

SkewSymmetricHamiltonian SkewSymmetricHamiltonian::from_full(const Mat& h, double tol) {
  if (h.rows() != h.cols() || h.rows() % 2 != 0)
    throw std::invalid_argument("SkewSymmetricHamiltonian: dimension must be even");
  const Eigen::Index ell = h.rows() / 2;
  SkewSymmetricHamiltonian out;
  out.ell = ell;
  out.A = h.topLeftCorner(ell, ell);
  out.B = h.topRightCorner(ell, ell);
  const double scale = std::max(1.0, h.norm());
  if ((out.A - out.A.adjoint()).norm() > tol * scale ||
      (out.B + out.B.transpose()).norm() > tol * scale ||
      (h.bottomLeftCorner(ell, ell) + out.B.conjugate()).norm() > tol * scale ||
      (h.bottomRightCorner(ell, ell) - out.A.conjugate()).norm() > tol * scale)
    throw std::invalid_argument("SkewSymmetricHamiltonian: input lacks the required block structure");
  return out;
}

bool is_j_skew_symmetric(const Mat& h, double tol) {
  if (h.rows() != h.cols() || h.rows() % 2 != 0)
    throw std::invalid_argument("is_j_skew_symmetric: dimension must be even");
  if (!is_hermitian(h, tol)) throw std::invalid_argument("is_j_skew_symmetric: input is not Hermitian");
  const Mat j = j_matrix(int(h.rows()));
  return (h * j - j * h.transpose()).norm() <= tol * std::max(1.0, h.norm());
}

SkewSymmetricHamiltonian random_skew_symmetric_hamiltonian(Eigen::Index ell, std::uint64_t seed) {
  if (ell < 1) throw std::invalid_argument("random_skew_symmetric_hamiltonian: ell must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat ga(ell, ell), gb(ell, ell);
  for (Eigen::Index i = 0; i < ell; ++i)
    for (Eigen::Index j = 0; j < ell; ++j) {
      ga(i, j) = cplx(gauss(rng), gauss(rng));
      gb(i, j) = cplx(gauss(rng), gauss(rng));
    }
  SkewSymmetricHamiltonian h;
  h.ell = ell;
  h.A = (ga + ga.adjoint()) / 2.0;
  h.B = (gb - gb.transpose()) / 2.0;
  return h;
}

TridiagonalReduction reduce_to_tridiagonal(const SkewSymmetricHamiltonian& hin) {
  const Eigen::Index ell = hin.ell;
  Mat m = hin.full();
  Mat q = Mat::Identity(2 * ell, 2 * ell);
  const double scale = std::max(1.0, m.norm());
  const double tiny = 1e-14 * scale;

  for (Eigen::Index k = 0; k + 1 < ell; ++k) {
    // 2x2 rotations on row pairs (j, ell+j): clear B(j,k) and phase A(j,k) real.
    for (Eigen::Index j = k + 1; j < ell; ++j) {
      const cplx a = m(j, k);
      const cplx b = m(j, ell + k);
      const double r = std::sqrt(std::norm(a) + std::norm(b));
      if (r <= tiny) continue;                                   // already zero
      if (std::abs(b) <= tiny && std::abs(a.imag()) <= tiny && a.real() > 0.0) continue;
      const cplx ca = std::conj(a) / r, cb = std::conj(b) / r;
      const Eigen::Index lj = ell + j;
      // rows
      const Eigen::RowVectorXcd rj = m.row(j), rlj = m.row(lj);
      m.row(j) = ca * rj - (b / r) * rlj;
      m.row(lj) = cb * rj + (a / r) * rlj;
      const Eigen::RowVectorXcd qj = q.row(j), qlj = q.row(lj);
      q.row(j) = ca * qj - (b / r) * qlj;
      q.row(lj) = cb * qj + (a / r) * qlj;
      // columns (similarity by R^dagger)
      const Vec cj = m.col(j), clj = m.col(lj);
      m.col(j) = (a / r) * cj - cb * clj;
      m.col(lj) = (b / r) * cj + ca * clj;
    }
    // Real Householder reflection zeroing A(k+2..ell-1, k); applied as diag(S, S).
    const Eigen::Index len = ell - (k + 1);
    if (len < 2) continue;
    Eigen::VectorXd x = m.block(k + 1, k, len, 1).real();
    if (x.tail(len - 1).norm() <= tiny) continue;
    Eigen::VectorXd s = x;
    s(0) += (x(0) >= 0 ? 1.0 : -1.0) * x.norm();
    s.normalize();
    const Vec sc = s.cast<cplx>();
    for (Eigen::Index base : {k + 1, ell + k + 1}) {
      m.middleRows(base, len) -= 2.0 * sc * (sc.transpose() * m.middleRows(base, len));
      q.middleRows(base, len) -= 2.0 * sc * (sc.transpose() * q.middleRows(base, len));
    }
    for (Eigen::Index base : {k + 1, ell + k + 1})
      m.middleCols(base, len) -= 2.0 * (m.middleCols(base, len) * sc) * sc.transpose();
  }

  TridiagonalReduction out;
  out.Q = std::move(q);
  out.diag = m.topLeftCorner(ell, ell).diagonal().real();
  out.offdiag.resize(ell - 1 > 0 ? ell - 1 : 0);
  for (Eigen::Index i = 0; i + 1 < ell; ++i) out.offdiag(i) = m(i + 1, i).real();

  // Anything outside the doubled tridiagonal pattern signals corrupted input.
  Mat t = Mat::Zero(ell, ell);
  t.diagonal() = out.diag.cast<cplx>();
  for (Eigen::Index i = 0; i + 1 < ell; ++i) t(i + 1, i) = t(i, i + 1) = out.offdiag(i);
  Mat pattern = Mat::Zero(2 * ell, 2 * ell);
  pattern.topLeftCorner(ell, ell) = t;
  pattern.bottomRightCorner(ell, ell) = t;
  if ((m - pattern).norm() > 1e-8 * scale)
    throw NumericalError("reduce_to_tridiagonal: structure violated beyond tolerance");
  return out;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> tridiagonal_qr(Eigen::VectorXd d, Eigen::VectorXd e_in,
                                                           int max_iter_per_eigenvalue) {
  const Eigen::Index n = d.size();
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);
  if (n == 0) return {d, z};
  Eigen::VectorXd e(n);
  e.head(n - 1) = e_in;
  e(n - 1) = 0.0;

  for (Eigen::Index l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      Eigen::Index mdx = l;
      for (; mdx + 1 < n; ++mdx) {
        const double dd = std::abs(d(mdx)) + std::abs(d(mdx + 1));
        if (std::abs(e(mdx)) <= 1e-16 * dd) break;
      }
      if (mdx == l) break;
      if (++iter > max_iter_per_eigenvalue)
        throw NumericalError("tridiagonal_qr: no convergence");
      // Wilkinson shift
      double g = (d(l + 1) - d(l)) / (2.0 * e(l));
      double r = std::hypot(g, 1.0);
      g = d(mdx) - d(l) + e(l) / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (Eigen::Index i = mdx - 1; i >= l; --i) {
        double f = s * e(i);
        const double b = c * e(i);
        r = std::hypot(f, g);
        e(i + 1) = r;
        if (r == 0.0) {
          d(i + 1) -= p;
          e(mdx) = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d(i + 1) - p;
        r = (d(i) - g) * s + 2.0 * c * b;
        p = s * r;
        d(i + 1) = g + p;
        g = c * r - b;
        for (Eigen::Index k = 0; k < n; ++k) {
          f = z(k, i + 1);
          z(k, i + 1) = s * z(k, i) + c * f;
          z(k, i) = c * z(k, i) - s * f;
        }
      }
      if (underflow) continue;
      d(l) -= p;
      e(l) = g;
      e(mdx) = 0.0;
    }
  }

  // ascending sort, ties broken by original column index
  std::vector<Eigen::Index> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) { return d(a) < d(b); });
  Eigen::VectorXd ds(n);
  Eigen::MatrixXd zs(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    ds(j) = d(idx[j]);
    zs.col(j) = z.col(idx[j]);
  }
  return {ds, zs};
}

SymplecticEigResult symplectic_eig(const SkewSymmetricHamiltonian& h) {
  const Eigen::Index ell = h.ell;
  TridiagonalReduction red = reduce_to_tridiagonal(h);
  auto [vals, x] = tridiagonal_qr(red.diag, red.offdiag);
  const Mat xc = x.cast<cplx>();
  const Mat q1 = red.Q.topLeftCorner(ell, ell);
  const Mat q2 = red.Q.topRightCorner(ell, ell);
  // W = Q^dagger diag(X, X); written out per block so the symplectic
  // structure [[U, V], [-conj(V), conj(U)]] is exact by construction.
  const Mat u = q1.adjoint() * xc;
  const Mat v = -(q2.transpose() * xc);
  SymplecticEigResult out;
  out.W.resize(2 * ell, 2 * ell);
  out.W.topLeftCorner(ell, ell) = u;
  out.W.topRightCorner(ell, ell) = v;
  out.W.bottomLeftCorner(ell, ell) = -v.conjugate();
  out.W.bottomRightCorner(ell, ell) = u.conjugate();
  out.eigenvalues = vals;
  const Mat hf = h.full();
  Vec lam(2 * ell);
  lam.head(ell) = vals.cast<cplx>();
  lam.tail(ell) = vals.cast<cplx>();
  out.residual = (hf * out.W - out.W * lam.asDiagonal()).norm() / std::max(1.0, hf.norm());
  return out;
}

}  // namespace ccdlab

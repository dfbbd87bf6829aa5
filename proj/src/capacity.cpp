#include "ccdlab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace ccdlab {

namespace {

constexpr double kPi = std::numbers::pi;

Vec sorted_by_phase(Vec v) {
  std::sort(v.data(), v.data() + v.size(),
            [](const cplx& a, const cplx& b) { return std::arg(a) < std::arg(b); });
  return v;
}

double cross(const cplx& o, const cplx& a, const cplx& b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

double point_segment_distance(const cplx& p, const cplx& a, const cplx& b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace

ConcurrenceSpectrum concurrence_spectrum(const Mat& v, int n, const Tolerances& tol) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (v.rows() != dim || v.cols() != dim)
    throw std::invalid_argument("concurrence_spectrum: dimension mismatch");
  if (!is_unitary(v, tol.unitary))
    throw std::invalid_argument("concurrence_spectrum: input is not unitary");
  const Mat v0 = su_normalize(v).first;
  const Mat& s = spin_flip_matrix(n);
  Eigen::ComplexEigenSolver<Mat> es(s.adjoint() * v0 * s * v0.transpose(), /*vectors=*/false);
  if (es.info() != Eigen::Success) throw NumericalError("concurrence_spectrum: solver failed");
  Vec pts = es.eigenvalues();
  for (Eigen::Index j = 0; j < pts.size(); ++j) pts[j] /= std::abs(pts[j]);

  ConcurrenceSpectrum out;
  out.n = n;
  out.points = sorted_by_phase(pts);
  if (n % 2 == 1)
    out.reduced_points = pair_down_duplicates(out.points, std::max(tol.cluster, 1e-10 * double(dim)));
  return out;
}

Vec pair_down_duplicates(const Vec& points, double pair_tol) {
  const Eigen::Index dim = points.size();
  if (dim % 2 != 0) throw std::invalid_argument("pair_down_duplicates: odd-sized multiset");
  std::vector<bool> used(dim, false);
  std::vector<cplx> reduced;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (used[i]) continue;
    used[i] = true;
    Eigen::Index mate = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      if (used[j]) continue;
      const double d = std::abs(points[i] - points[j]);
      if (d < best) {
        best = d;
        mate = j;
      }
    }
    if (mate < 0 || best > pair_tol)
      throw NumericalError("pair_down_duplicates: multiset does not pair up");
    used[mate] = true;
    reduced.push_back(points[i]);
  }
  return Eigen::Map<Vec>(reduced.data(), Eigen::Index(reduced.size()));
}

bool hull_contains_zero(const std::vector<cplx>& points, double tol_hull) {
  if (points.empty()) throw std::invalid_argument("hull_contains_zero: empty point set");
  std::vector<cplx> pts = points;
  std::sort(pts.begin(), pts.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Andrew monotone chain, counterclockwise.
  std::vector<cplx> hull;
  if (pts.size() >= 3) {
    std::vector<cplx> lower, upper;
    for (const cplx& p : pts) {
      while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), p) <= 0)
        lower.pop_back();
      lower.push_back(p);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), *it) <= 0)
        upper.pop_back();
      upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    hull = std::move(lower);
    hull.insert(hull.end(), upper.begin(), upper.end());
  } else {
    hull = pts;
  }

  if (hull.size() == 1) return std::abs(hull[0]) <= tol_hull;
  if (hull.size() == 2) return point_segment_distance(0.0, hull[0], hull[1]) <= tol_hull;
  bool inside = true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const cplx& a = hull[i];
    const cplx& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, 0.0) / std::abs(b - a) < -tol_hull) {
      inside = false;
      break;
    }
  }
  if (inside) return true;
  // Collinear hulls can slip through the area-based chain; fall back to edges.
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (point_segment_distance(0.0, hull[i], hull[(i + 1) % hull.size()]) <= tol_hull) return true;
  return false;
}

namespace {

bool disk_contains(const Disk& d, const cplx& p, double eps) {
  return std::abs(p - d.center) <= d.radius + eps;
}

Disk disk_two(const cplx& a, const cplx& b) {
  Disk d;
  d.center = (a + b) / 2.0;
  d.radius = std::abs(a - b) / 2.0;
  return d;
}

Disk disk_three(const cplx& a, const cplx& b, const cplx& c) {
  const double d2 = 2.0 * cross(a, b, c);
  if (std::abs(d2) < 1e-14 * (std::norm(b - a) + std::norm(c - a))) {
    // Collinear: the widest pair's diameter disk covers all three.
    Disk best = disk_two(a, b);
    for (const Disk& cand : {disk_two(a, c), disk_two(b, c)})
      if (cand.radius > best.radius) best = cand;
    return best;
  }
  const double an = std::norm(a), bn = std::norm(b), cn = std::norm(c);
  const double ux = (an * (b.imag() - c.imag()) + bn * (c.imag() - a.imag()) +
                     cn * (a.imag() - b.imag())) / d2;
  const double uy = (an * (c.real() - b.real()) + bn * (a.real() - c.real()) +
                     cn * (b.real() - a.real())) / d2;
  Disk d;
  d.center = cplx(ux, uy);
  d.radius = std::max({std::abs(a - d.center), std::abs(b - d.center), std::abs(c - d.center)});
  return d;
}

}  // namespace

Disk smallest_enclosing_disk(const std::vector<cplx>& points, std::uint64_t seed) {
  if (points.empty()) throw std::invalid_argument("smallest_enclosing_disk: empty point set");
  const std::size_t m = points.size();
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);

  const double eps = 1e-12;
  Disk d;
  d.center = points[idx[0]];
  d.radius = 0.0;
  d.support = {idx[0]};
  for (std::size_t i = 1; i < m; ++i) {
    const cplx& pi = points[idx[i]];
    if (disk_contains(d, pi, eps)) continue;
    d = Disk{pi, 0.0, {idx[i]}};
    for (std::size_t j = 0; j < i; ++j) {
      const cplx& pj = points[idx[j]];
      if (disk_contains(d, pj, eps)) continue;
      d = disk_two(pi, pj);
      d.support = {idx[i], idx[j]};
      for (std::size_t k = 0; k < j; ++k) {
        const cplx& pk = points[idx[k]];
        if (disk_contains(d, pk, eps)) continue;
        d = disk_three(pi, pj, pk);
        d.support = {idx[i], idx[j], idx[k]};
      }
    }
  }
  return d;
}

namespace {

/// Convex weights t over the support points expressing the disk center,
/// so that sum t_j (p_j - c) = 0.
std::vector<double> center_weights(const Disk& d, const std::vector<cplx>& pts) {
  const std::size_t s = d.support.size();
  if (s == 1) return {1.0};
  if (s == 2) return {0.5, 0.5};
  const cplx a = pts[d.support[0]] - d.center;
  const cplx b = pts[d.support[1]] - d.center;
  const cplx c = pts[d.support[2]] - d.center;
  // Solve t0*a + t1*b + t2*c = 0, t0+t1+t2 = 1.
  Eigen::Matrix3d mtx;
  mtx << a.real(), b.real(), c.real(), a.imag(), b.imag(), c.imag(), 1, 1, 1;
  Eigen::Vector3d rhs(0, 0, 1);
  Eigen::Vector3d t = mtx.fullPivLu().solve(rhs);
  double sum = 0;
  for (int k = 0; k < 3; ++k) {
    t[k] = std::max(t[k], 0.0);  // clamp roundoff; the center lies in the triangle
    sum += t[k];
  }
  return {t[0] / sum, t[1] / sum, t[2] / sum};
}

}  // namespace

CapacityResult capacity(const Mat& v, int n, const Tolerances& tol) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  const Eigen::Index ell = dim / 2;
  CcdFactors f = ccd(v, n, tol);

  const bool odd = (n % 2 == 1);
  const Eigen::Index m = odd ? ell : dim;  // reduced multiset for odd parity
  std::vector<cplx> pts(m);
  for (Eigen::Index jx = 0; jx < m; ++jx) pts[jx] = f.d[jx] * f.d[jx];

  CapacityResult out;
  out.spectrum.n = n;
  out.spectrum.points = sorted_by_phase(f.a_squared_spectrum);
  if (odd) {
    Vec red(m);
    for (Eigen::Index jx = 0; jx < m; ++jx) red[jx] = pts[jx];
    out.spectrum.reduced_points = sorted_by_phase(red);
  }

  const Disk disk = smallest_enclosing_disk(pts);
  out.value = std::min(disk.radius, 1.0);
  out.maximal = hull_contains_zero(pts, tol.hull);

  Vec beta = Vec::Zero(m);
  if (disk.radius > 1e-13) {
    const auto t = center_weights(disk, pts);
    for (std::size_t k = 0; k < disk.support.size(); ++k) {
      const int jx = disk.support[k];
      beta[jx] += t[k] * std::conj(pts[jx] - disk.center) / disk.radius;
    }
  }
  out.witness.beta = beta;
  out.witness.value = out.value;

  // Achieving states: coefficients in the E0/F0 frame, pulled back through k2.
  Vec z1 = Vec::Zero(dim), z2 = Vec::Zero(dim);
  if (disk.radius > 1e-13) {
    for (Eigen::Index jx = 0; jx < m; ++jx) {
      if (std::abs(beta[jx]) == 0.0) continue;
      const double r = std::sqrt(std::abs(beta[jx]));
      z1[jx] = r;
      if (odd)
        z2[ell + jx] = -std::polar(r, std::arg(beta[jx]));
      else
        z2[jx] = beta[jx] / r;
    }
  } else {
    z1[0] = 1.0;
    z2[odd ? ell + 1 : 1] = 1.0;
  }
  const Mat basis = odd ? build_basis(BasisKind::ghz_f0, n).matrix
                        : build_basis(BasisKind::magic_e0, n).matrix;
  out.witness.phi1 = f.k2.adjoint() * (basis * z1);
  out.witness.phi2 = f.k2.adjoint() * (basis * z2);
  return out;
}

bool capacity_is_maximal(const Mat& v, int n, const Tolerances& tol) {
  const ConcurrenceSpectrum sp = concurrence_spectrum(v, n, tol);
  const Vec& use = sp.odd() ? sp.reduced_points : sp.points;
  return hull_contains_zero(std::vector<cplx>(use.data(), use.data() + use.size()), tol.hull);
}

MonotonicityReport capacity_monotonicity_check(const Mat& v, int n, double tol_mono,
                                               const Tolerances& tol) {
  MonotonicityReport rep;
  rep.kappa_n = capacity(v, n, tol).value;
  rep.kappa_n_plus_1 = capacity(kron(v, Mat::Identity(2, 2)), n + 1, tol).value;
  rep.ok = rep.kappa_n_plus_1 >= rep.kappa_n - tol_mono;
  return rep;
}

namespace {

bool torus_sample_is_maximal(int m, std::uint64_t sample_seed, double tol_hull) {
  std::mt19937_64 rng(sample_seed);
  std::uniform_real_distribution<double> uniform(0.0, 2 * kPi);
  std::vector<double> phi(m);
  double mean = 0.0;
  for (int j = 0; j < m; ++j) {
    phi[j] = uniform(rng);
    mean += phi[j];
  }
  mean /= m;  // determinant correction; a common rotation, hull-invariant
  std::vector<cplx> pts(m);
  for (int j = 0; j < m; ++j) pts[j] = std::polar(1.0, 2.0 * (phi[j] - mean));
  return hull_contains_zero(pts, tol_hull);
}

McFractionResult assemble(long long hits, long long samples, int m) {
  McFractionResult r;
  r.hits = hits;
  r.samples = samples;
  r.points_per_sample = m;
  r.fraction = double(hits) / double(samples);
  r.std_error = std::sqrt(std::max(r.fraction * (1.0 - r.fraction), 0.0) / double(samples));
  return r;
}

}  // namespace

McFractionResult maximal_capacity_fraction(int n, long long samples, std::uint64_t seed) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("maximal_capacity_fraction: n must be odd >= 3");
  if (samples < 1) throw std::invalid_argument("maximal_capacity_fraction: samples must be >= 1");
  const int m = 1 << (n - 2);
  long long hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits)
  for (long long i = 0; i < samples; ++i)
    if (torus_sample_is_maximal(m, substream_seed(seed, std::uint64_t(i)), 1e-9)) ++hits;
  return assemble(hits, samples, m);
}

McFractionResult maximal_capacity_fraction_serial(int n, long long samples, std::uint64_t seed) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("maximal_capacity_fraction: n must be odd >= 3");
  if (samples < 1) throw std::invalid_argument("maximal_capacity_fraction: samples must be >= 1");
  const int m = 1 << (n - 2);
  long long hits = 0;
  for (long long i = 0; i < samples; ++i)
    if (torus_sample_is_maximal(m, substream_seed(seed, std::uint64_t(i)), 1e-9)) ++hits;
  return assemble(hits, samples, m);
}

}  // namespace ccdlab

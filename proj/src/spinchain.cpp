#include "ccdlab/spinchain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ccdlab {

namespace {

constexpr double kPi = std::numbers::pi;

Mat two_site_term(int n, int site, char letter) {
  std::string s(std::size_t(n), '0');
  s[std::size_t(site)] = letter;
  s[std::size_t((site + 1) % n)] = letter;
  return pauli_string(s);
}

Mat one_site_term(int n, int site, char letter) {
  std::string s(std::size_t(n), '0');
  s[std::size_t(site)] = letter;
  return pauli_string(s);
}

}  // namespace

Mat build_hamiltonian(const SpinChainSpec& spec) {
  if (spec.n < 2 || spec.n > kMaxQubits)
    throw std::invalid_argument("build_hamiltonian: site count out of range");
  const Eigen::Index dim = Eigen::Index(1) << spec.n;
  const int bonds = (spec.boundary == Boundary::periodic) ? spec.n : spec.n - 1;
  Mat h = Mat::Zero(dim, dim);
  double jx = spec.Jx, jy = spec.Jy, jz = spec.Jz;
  if (spec.family == ChainFamily::ising) {
    jx = jy = 0.0;
  } else if (spec.family == ChainFamily::xy_field) {
    const double j = spec.Jx;
    jx = j * (1.0 + spec.g) / 4.0;
    jy = j * (1.0 - spec.g) / 4.0;
    jz = 0.0;
  }
  for (int b = 0; b < bonds; ++b) {
    if (jx != 0.0) h += jx * two_site_term(spec.n, b, 'x');
    if (jy != 0.0) h += jy * two_site_term(spec.n, b, 'y');
    if (jz != 0.0) h += jz * two_site_term(spec.n, b, 'z');
  }
  if (spec.family == ChainFamily::xy_field && spec.h_z != 0.0)
    for (int s = 0; s < spec.n; ++s) h += (spec.h_z / 2.0) * one_site_term(spec.n, s, 'z');
  return h;
}

std::vector<double> ising_spectrum_analytic(int n, double Jz) {
  if (n < 2 || n > kMaxQubits) throw std::invalid_argument("ising_spectrum_analytic: bad n");
  const std::size_t dim = std::size_t(1) << n;
  std::vector<double> out(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    int flips = 0;
    for (int k = 0; k < n; ++k)
      flips += int(((j >> k) ^ (j >> ((k + 1) % n))) & 1u);
    out[j] = Jz * double(n - 2 * flips);
  }
  return out;
}

ConcurrenceSpectrum evolution_concurrence_spectrum(const Mat& h, int n, double t, bool verify,
                                                   const Tolerances& tol) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (h.rows() != dim || h.cols() != dim)
    throw std::invalid_argument("evolution_concurrence_spectrum: dimension mismatch");
  if (h.imag().norm() > 1e-9 * std::max(1.0, h.norm()))
    throw std::invalid_argument("evolution_concurrence_spectrum: H must be real");
  if (!is_time_symmetric(h, 1e-9))
    throw std::invalid_argument("evolution_concurrence_spectrum: H must be time symmetric");
  auto [vals, vecs] = eig_hermitian(h, tol.herm);

  ConcurrenceSpectrum out;
  out.n = n;
  out.points.resize(dim);
  for (Eigen::Index j = 0; j < dim; ++j) out.points[j] = std::polar(1.0, -2.0 * vals[j] * t);
  std::sort(out.points.data(), out.points.data() + dim,
            [](const cplx& a, const cplx& b) { return std::arg(a) < std::arg(b); });
  if (n % 2 == 1)
    out.reduced_points = pair_down_duplicates(out.points, std::max(tol.cluster, 1e-10 * double(dim)));

  if (verify) {
    const ConcurrenceSpectrum direct = concurrence_spectrum(exp_i_hermitian(h, -t), n, tol);
    // Multiset comparison via greedy matching (phase sorting alone is
    // unstable at the -pi/+pi seam).
    std::vector<bool> used(dim, false);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      double best = std::numeric_limits<double>::infinity();
      Eigen::Index arg = -1;
      for (Eigen::Index j = 0; j < dim; ++j) {
        if (used[j]) continue;
        const double dist = std::abs(out.points[i] - direct.points[j]);
        if (dist < best) {
          best = dist;
          arg = j;
        }
      }
      used[arg] = true;
      worst = std::max(worst, best);
    }
    if (worst > 1e-8)
      throw NumericalError("evolution_concurrence_spectrum: shortcut disagrees with the direct spectrum");
  }
  return out;
}

double min_maximal_capacity_time(int n, double Jz) {
  if (n % 2 != 0 || n < 2) throw std::invalid_argument("min_maximal_capacity_time: n must be even");
  if (Jz == 0.0) throw std::invalid_argument("min_maximal_capacity_time: Jz must be nonzero");
  return kPi / (4.0 * n * std::abs(Jz));
}

TminSweep tmin_sweep(int n, double Jz, int grid_points, const Tolerances& tol) {
  TminSweep out;
  out.t_min = min_maximal_capacity_time(n, Jz);
  if (grid_points < 2) throw std::invalid_argument("tmin_sweep: need at least two grid points");
  // Even interval count over [0, 2 t_min] puts t_min itself on the grid; for
  // n = 2 the maximal set is the single point t_min, so this matters.
  out.grid_step = 2.0 * out.t_min / grid_points;
  const std::vector<double> lambdas = ising_spectrum_analytic(n, Jz);
  out.first_maximal_t = -1.0;
  for (int gidx = 0; gidx <= grid_points; ++gidx) {
    const double t = gidx * out.grid_step;
    std::vector<cplx> pts(lambdas.size());
    for (std::size_t j = 0; j < lambdas.size(); ++j) pts[j] = std::polar(1.0, -2.0 * lambdas[j] * t);
    if (hull_contains_zero(pts, tol.hull)) {
      out.first_maximal_t = t;
      break;
    }
  }
  out.flip_within_one_step =
      out.first_maximal_t >= 0 && std::abs(out.first_maximal_t - out.t_min) <= out.grid_step + 1e-12;
  return out;
}

KramersReport kramers_report(const Mat& h, int n, const Tolerances& tol) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (h.rows() != dim || h.cols() != dim)
    throw std::invalid_argument("kramers_report: dimension mismatch");
  if (!is_hermitian(h, tol.herm)) throw std::invalid_argument("kramers_report: H is not Hermitian");
  if (!is_time_symmetric(h, 1e-8))
    throw std::invalid_argument("kramers_report: H is not time symmetric");
  auto [vals, vecs] = eig_hermitian(h, tol.herm);

  const double spread = vals[dim - 1] - vals[0];
  const double threshold = tol.cluster * std::max(1.0, spread);

  KramersReport rep;
  rep.n = n;
  const Mat& s = spin_flip_matrix(n);
  const double hnorm = std::max(1.0, h.norm());
  std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges;  // [begin, end)
  for (Eigen::Index begin = 0; begin < dim;) {
    Eigen::Index end = begin + 1;
    while (end < dim && vals[end] - vals[end - 1] <= threshold) ++end;
    ranges.emplace_back(begin, end);
    begin = end;
  }
  for (std::size_t c = 0; c < ranges.size(); ++c) {
    auto [begin, end] = ranges[c];
    KramersCluster cl;
    cl.multiplicity = int(end - begin);
    cl.value = vals.segment(begin, end - begin).mean();
    const double gap_prev = c == 0 ? std::numeric_limits<double>::infinity()
                                   : vals[begin] - vals[begin - 1];
    const double gap_next = c + 1 == ranges.size() ? std::numeric_limits<double>::infinity()
                                                   : vals[end] - vals[end - 1];
    cl.ambiguous = std::min(gap_prev, gap_next) < 10.0 * threshold ||
                   (cl.multiplicity > 1 &&
                    vals[end - 1] - vals[begin] > 0.1 * threshold);
    if (cl.multiplicity == 1) cl.concurrence = concurrence(vecs.col(begin));
    for (Eigen::Index k = begin; k < end; ++k) {
      const Vec flipped = s * vecs.col(k).conjugate();
      rep.max_flip_residual =
          std::max(rep.max_flip_residual, (h * flipped - vals[k] * flipped).norm() / hnorm);
    }
    rep.clusters.push_back(cl);
  }

  rep.verdict_ok = true;
  for (const KramersCluster& cl : rep.clusters) {
    if (cl.ambiguous) continue;
    if (n % 2 == 1) {
      if (cl.multiplicity % 2 != 0) rep.verdict_ok = false;
    } else if (cl.multiplicity == 1 && cl.concurrence < 1.0 - 1e-8) {
      rep.verdict_ok = false;
    }
  }
  return rep;
}

std::vector<SweepRow> ground_state_concurrence_sweep(int n, double g,
                                                     const std::vector<double>& h_values,
                                                     double J, const Tolerances& tol) {
  if (n % 2 != 0) throw std::invalid_argument("ground_state_concurrence_sweep: n must be even");
  Mat sz_total = Mat::Zero(Eigen::Index(1) << n, Eigen::Index(1) << n);
  for (int s = 0; s < n; ++s) {
    std::string letters(std::size_t(n), '0');
    letters[std::size_t(s)] = 'z';
    sz_total += pauli_string(letters);
  }
  std::vector<SweepRow> rows;
  rows.reserve(h_values.size());
  for (double h : h_values) {
    SpinChainSpec spec;
    spec.n = n;
    spec.family = ChainFamily::xy_field;
    spec.Jx = J;
    spec.g = g;
    spec.h_z = h;
    auto [vals, vecs] = eig_hermitian(build_hamiltonian(spec), tol.herm);
    SweepRow row;
    row.h = h;
    row.ground_energy = vals[0];
    const double threshold = tol.cluster * std::max(1.0, vals[vals.size() - 1] - vals[0]);
    row.ground_multiplicity = 1;
    while (row.ground_multiplicity < vals.size() &&
           vals[row.ground_multiplicity] - vals[0] <= threshold)
      ++row.ground_multiplicity;
    const Vec ground = vecs.col(0);
    row.sz = (ground.adjoint() * sz_total * ground).value().real();
    row.concurrence = concurrence(ground);
    rows.push_back(row);
  }
  return rows;
}

double find_crossing_field(int n, double g, double J, double h_lo, double h_hi, double tol_h) {
  auto collapsed = [&](double h) {
    return ground_state_concurrence_sweep(n, g, {h}, J).front().concurrence < 0.5;
  };
  if (collapsed(h_lo) || !collapsed(h_hi))
    throw std::invalid_argument("find_crossing_field: bracket does not straddle the collapse");
  while (h_hi - h_lo > tol_h) {
    const double mid = (h_lo + h_hi) / 2.0;
    (collapsed(mid) ? h_hi : h_lo) = mid;
  }
  return (h_lo + h_hi) / 2.0;
}

}  // namespace ccdlab

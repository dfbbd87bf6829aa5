#include <CLI11.hpp>

#include "ccdlab/capacity.hpp"
#include "ccdlab/matrix_io.hpp"
#include "ccdlab/registry.hpp"
#include "ccdlab/spinchain.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ccdlab;

// Exit codes: 0 success, 1 input error, 2 numerical-tolerance failure,
// 3 theorem-violation flag (indicates a bug, not bad input).
constexpr int kOk = 0, kInputError = 1, kToleranceFailure = 2, kTheoremViolation = 3;

struct CommonOpts {
  int n = 2;
  bool n_given = false;
  std::string input;
  bool random = false;
  std::uint64_t seed = 0;
  std::string example;
  double t = 0.0;
  double tol_unitary = 1e-10;
  double tol_cluster = 1e-8;
  double tol_hull = 1e-9;
  std::string format = "json";
  std::string output;
  bool verify = false;
  int threads = 0;

  Tolerances tol() const {
    Tolerances tl;
    tl.unitary = tol_unitary;
    tl.cluster = tol_cluster;
    tl.hull = tol_hull;
    return tl;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_source) {
  cmd->add_option("--n", o.n, "qubit count");
  if (with_source) {
    cmd->add_option("--input", o.input, "matrix JSON file");
    cmd->add_flag("--random", o.random, "seeded Haar-random special unitary");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--example", o.example, "named example (cphase, cnot, identity)");
    cmd->add_option("--t", o.t, "parameter for parametrized examples");
  }
  cmd->add_option("--tol-unitary", o.tol_unitary, "unitarity tolerance");
  cmd->add_option("--tol-cluster", o.tol_cluster, "degeneracy clustering tolerance");
  cmd->add_option("--tol-hull", o.tol_hull, "hull boundary tolerance");
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", o.output, "output path (default stdout)");
  cmd->add_flag("--verify", o.verify, "run cross-oracle checks");
  cmd->add_option("--threads", o.threads, "OpenMP thread count (or CCD_LAB_THREADS)");
}

void apply_threads(const CommonOpts& o) {
  int threads = o.threads;
  if (threads <= 0)
    if (const char* env = std::getenv("CCD_LAB_THREADS")) threads = std::atoi(env);
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

Mat resolve_unitary(CommonOpts& o) {
  const int sources = int(!o.input.empty()) + int(o.random) + int(!o.example.empty());
  if (sources != 1)
    throw std::invalid_argument("exactly one of --input, --random, --example is required");
  Mat v;
  if (!o.input.empty()) {
    v = read_matrix_json(o.input);
  } else if (o.random) {
    v = random_special_unitary(1 << o.n, o.seed);
  } else {
    v = example_unitary(o.example, o.n, o.t);
  }
  int n = 0;
  while ((Eigen::Index(1) << n) < v.rows()) ++n;
  if ((Eigen::Index(1) << n) != v.rows())
    throw std::invalid_argument("matrix dimension is not a power of two");
  if (o.n_given && o.n != n)
    throw std::invalid_argument("--n does not match the matrix dimension");
  o.n = n;
  if (!is_unitary(v, o.tol_unitary)) throw std::invalid_argument("input matrix is not unitary");
  return v;
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file " + o.output);
  out << text;
}

std::string cvec_json(const Vec& v) {
  std::ostringstream s;
  s << '[';
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (j) s << ", ";
    s << '[' << format_double(v[j].real()) << ", " << format_double(v[j].imag()) << ']';
  }
  s << ']';
  return s.str();
}

std::string rvec_json(const Eigen::VectorXd& v) {
  std::ostringstream s;
  s << '[';
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (j) s << ", ";
    s << format_double(v[j]);
  }
  s << ']';
  return s.str();
}

double multiset_mismatch(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(std::size_t(b.size()), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index arg = -1;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (used[std::size_t(j)]) continue;
      const double d = std::abs(a[i] - b[j]);
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    used[std::size_t(arg)] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

int cmd_ccd(CommonOpts& o) {
  apply_threads(o);
  const Mat v = resolve_unitary(o);
  const CcdFactors f = ccd(v, o.n, o.tol());
  const Mat& s = spin_flip_matrix(o.n);
  const double k1_mem = (f.k1.transpose() * s * f.k1 - s).norm();
  const double k2_mem = (f.k2.transpose() * s * f.k2 - s).norm();
  const Mat basis = (f.parity == Parity::even) ? build_basis(BasisKind::magic_e0, o.n).matrix
                                               : build_basis(BasisKind::ghz_f0, o.n).matrix;
  const double a_diag = (f.a - basis * f.d.asDiagonal() * basis.adjoint()).norm();

  std::ostringstream out;
  out << "{\"n\": " << o.n << ", \"parity\": \""
      << (f.parity == Parity::even ? "even" : "odd") << '"'
      << ", \"residual\": " << format_double(f.residual)
      << ", \"phase\": [" << format_double(f.phase.real()) << ", " << format_double(f.phase.imag())
      << "], \"k1_membership\": " << format_double(k1_mem)
      << ", \"k2_membership\": " << format_double(k2_mem)
      << ", \"a_diagonality\": " << format_double(a_diag)
      << ", \"spec_a2\": " << cvec_json(f.a_squared_spectrum) << "}\n";
  emit(o, out.str());

  const double thresh = 1e-9 * std::pow(2.0, o.n / 2.0);
  if (f.residual > thresh || k1_mem > 1e-9 * std::sqrt(double(v.rows())) ||
      k2_mem > 1e-9 * std::sqrt(double(v.rows())))
    return kToleranceFailure;
  if (o.verify) {
    const ConcurrenceSpectrum sp = concurrence_spectrum(v, o.n, o.tol());
    if (multiset_mismatch(f.a_squared_spectrum, sp.points) > 1e-8) return kToleranceFailure;
  }
  return kOk;
}

int cmd_spectrum(CommonOpts& o) {
  apply_threads(o);
  const Mat v = resolve_unitary(o);
  const ConcurrenceSpectrum sp = concurrence_spectrum(v, o.n, o.tol());
  std::ostringstream out;
  out << "{\"n\": " << o.n << ", \"points\": " << cvec_json(sp.points)
      << ", \"reduced\": " << cvec_json(sp.reduced_points) << "}\n";
  emit(o, out.str());
  if (o.verify) {
    const CcdFactors f = ccd(v, o.n, o.tol());
    if (multiset_mismatch(f.a_squared_spectrum, sp.points) > 1e-8) return kToleranceFailure;
  }
  return kOk;
}

int cmd_capacity(CommonOpts& o) {
  apply_threads(o);
  const Mat v = resolve_unitary(o);
  const CapacityResult cap = capacity(v, o.n, o.tol());
  std::ostringstream out;
  out << "{\"n\": " << o.n << ", \"capacity\": " << format_double(cap.value)
      << ", \"maximal\": " << (cap.maximal ? "true" : "false")
      << ", \"points\": " << cvec_json(cap.spectrum.points)
      << ", \"reduced\": " << cvec_json(cap.spectrum.reduced_points)
      << ", \"witness\": {\"beta\": " << cvec_json(cap.witness.beta)
      << ", \"value\": " << format_double(cap.witness.value) << "}}\n";
  emit(o, out.str());
  if (o.verify) {
    const Vec w1 = v * cap.witness.phi1;
    const Vec w2 = v * cap.witness.phi2;
    const double achieved = std::abs(concurrence_form(w1, w2));
    const double ortho = std::abs(concurrence_form(cap.witness.phi1, cap.witness.phi2));
    if (std::abs(achieved - cap.value) > 1e-6 || ortho > 1e-9) return kToleranceFailure;
  }
  return kOk;
}

int cmd_polar(CommonOpts& o) {
  apply_threads(o);
  const Mat v = resolve_unitary(o);
  const Mat v0 = su_normalize(v).first;
  const PolarFactors pf = polar_time_reversal(v0, o.tol());
  const Mat& s = spin_flip_matrix(o.n);
  const Mat ihp = cplx(0, 1) * pf.Hp;
  const Mat ihk = cplx(0, 1) * pf.Hk;
  const double p_mem = (s.adjoint() * ihp.conjugate() * s + ihp).norm();
  const double k_mem = (s.adjoint() * ihk.conjugate() * s - ihk).norm();
  std::ostringstream out;
  out << "{\"n\": " << o.n << ", \"residual\": " << format_double(pf.residual)
      << ", \"p_membership\": " << format_double(p_mem)
      << ", \"k_membership\": " << format_double(k_mem) << "}\n";
  emit(o, out.str());
  const double thresh = 1e-9 * std::pow(2.0, o.n / 2.0);
  return (pf.residual > thresh || p_mem > 1e-9 || k_mem > 1e-9) ? kToleranceFailure : kOk;
}

int cmd_symeig(CommonOpts& o, Eigen::Index ell) {
  apply_threads(o);
  SkewSymmetricHamiltonian h;
  if (!o.input.empty()) {
    const Mat full = read_matrix_json(o.input);
    if (!is_hermitian(full, 1e-8)) throw std::invalid_argument("symeig: input is not Hermitian");
    h = SkewSymmetricHamiltonian::from_full(full, 1e-8);
  } else if (o.random) {
    h = random_skew_symmetric_hamiltonian(ell, o.seed);
  } else {
    throw std::invalid_argument("symeig: need --input or --random");
  }
  const SymplecticEigResult r = symplectic_eig(h);
  std::ostringstream out;
  out << "{\"ell\": " << h.ell << ", \"eigenvalues\": " << rvec_json(r.eigenvalues)
      << ", \"residual\": " << format_double(r.residual) << "}\n";
  emit(o, out.str());
  return r.residual > 1e-10 ? kToleranceFailure : kOk;
}

struct ChainOpts {
  std::string family = "xxx";
  double jx = 1.0, jy = 1.0, jz = 1.0;
  double g = 0.0;
  std::string boundary = "periodic";
};

SpinChainSpec chain_spec(const CommonOpts& o, const ChainOpts& c, CLI::App* cmd) {
  SpinChainSpec spec = example_chain(c.family, o.n);
  if (cmd->count("--jx")) spec.Jx = c.jx;
  if (cmd->count("--jy")) spec.Jy = c.jy;
  if (cmd->count("--jz")) spec.Jz = c.jz;
  spec.g = c.g;
  spec.boundary = (c.boundary == "open") ? Boundary::open : Boundary::periodic;
  return spec;
}

int cmd_kramers(CommonOpts& o, const ChainOpts& c, CLI::App* cmd) {
  apply_threads(o);
  SpinChainSpec spec = chain_spec(o, c, cmd);
  const Mat h = build_hamiltonian(spec);
  const KramersReport rep = kramers_report(h, o.n, o.tol());
  std::ostringstream out;
  out << "{\"n\": " << o.n << ", \"clusters\": [";
  for (std::size_t i = 0; i < rep.clusters.size(); ++i) {
    const KramersCluster& cl = rep.clusters[i];
    if (i) out << ", ";
    out << "{\"value\": " << format_double(cl.value) << ", \"multiplicity\": " << cl.multiplicity
        << ", \"ambiguous\": " << (cl.ambiguous ? "true" : "false")
        << ", \"concurrence\": " << format_double(cl.concurrence) << '}';
  }
  out << "], \"max_flip_residual\": " << format_double(rep.max_flip_residual)
      << ", \"verdict_ok\": " << (rep.verdict_ok ? "true" : "false") << "}\n";
  emit(o, out.str());
  return rep.verdict_ok ? kOk : kTheoremViolation;
}

int cmd_tmin(CommonOpts& o, double jz, int grid) {
  apply_threads(o);
  const TminSweep sw = tmin_sweep(o.n, jz, grid, o.tol());
  std::ostringstream out;
  out << "{\"n\": " << o.n << ", \"t_min\": " << format_double(sw.t_min)
      << ", \"first_maximal_t\": " << format_double(sw.first_maximal_t)
      << ", \"grid_step\": " << format_double(sw.grid_step)
      << ", \"flip_within_one_step\": " << (sw.flip_within_one_step ? "true" : "false") << "}\n";
  emit(o, out.str());
  return sw.flip_within_one_step ? kOk : kToleranceFailure;
}

std::vector<double> parse_range(const std::string& text) {
  double start = 0, step = 0, stop = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if ((in >> start >> c1 >> step >> c2 >> stop) && c1 == ':' && c2 == ':' && step > 0) {
    std::vector<double> values;
    for (double x = start; x <= stop + 1e-12; x += step) values.push_back(x);
    return values;
  }
  std::istringstream single(text);
  if (single >> start && single.eof()) return {start};
  throw std::invalid_argument("bad range '" + text + "', expected start:step:stop");
}

int cmd_sweep(CommonOpts& o, double g, double j, const std::string& h_range) {
  apply_threads(o);
  const std::vector<double> h_values = parse_range(h_range);
  const auto rows = ground_state_concurrence_sweep(o.n, g, h_values, j, o.tol());
  std::ostringstream out;
  if (o.format == "csv") {
    out << "h,ground_energy,degeneracy,sz_sector,concurrence\n";
    for (const SweepRow& r : rows)
      out << format_double(r.h) << ',' << format_double(r.ground_energy) << ','
          << r.ground_multiplicity << ',' << format_double(r.sz) << ','
          << format_double(r.concurrence) << '\n';
  } else {
    out << "{\"n\": " << o.n << ", \"rows\": [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const SweepRow& r = rows[i];
      if (i) out << ", ";
      out << "{\"h\": " << format_double(r.h) << ", \"ground_energy\": "
          << format_double(r.ground_energy) << ", \"degeneracy\": " << r.ground_multiplicity
          << ", \"sz_sector\": " << format_double(r.sz)
          << ", \"concurrence\": " << format_double(r.concurrence) << '}';
    }
    out << "]}\n";
  }
  emit(o, out.str());
  return kOk;
}

int cmd_mc(CommonOpts& o, long long samples) {
  apply_threads(o);
  const McFractionResult r = maximal_capacity_fraction(o.n, samples, o.seed);
  std::ostringstream out;
  if (o.format == "csv") {
    out << "n,samples,points_per_sample,hits,fraction,std_error\n"
        << o.n << ',' << r.samples << ',' << r.points_per_sample << ',' << r.hits << ','
        << format_double(r.fraction) << ',' << format_double(r.std_error) << '\n';
  } else {
    out << "{\"n\": " << o.n << ", \"samples\": " << r.samples
        << ", \"points_per_sample\": " << r.points_per_sample << ", \"hits\": " << r.hits
        << ", \"fraction\": " << format_double(r.fraction)
        << ", \"std_error\": " << format_double(r.std_error) << "}\n";
  }
  emit(o, out.str());
  if (o.verify) {
    const McFractionResult serial = maximal_capacity_fraction_serial(o.n, samples, o.seed);
    if (serial.hits != r.hits) return kToleranceFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"concurrence canonical decomposition toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  Eigen::Index ell = 4;
  ChainOpts chain;
  double jz = 1.0, g = 0.0, j_coupling = 1.0;
  int grid = 400;
  long long samples = 10000;
  std::string h_range = "0:0.1:3";

  CLI::App* c_ccd = app.add_subcommand("ccd", "concurrence canonical decomposition v = k1 a k2");
  add_common(c_ccd, o, true);
  CLI::App* c_cap = app.add_subcommand("capacity", "concurrence capacity and hull test");
  add_common(c_cap, o, true);
  CLI::App* c_spec = app.add_subcommand("spectrum", "concurrence spectrum");
  add_common(c_spec, o, true);
  CLI::App* c_pol = app.add_subcommand("polar", "time-reversal polar decomposition");
  add_common(c_pol, o, true);
  CLI::App* c_sym = app.add_subcommand("symeig", "structured symplectic eigensolver");
  add_common(c_sym, o, true);
  c_sym->add_option("--ell", ell, "half-dimension for --random");

  CLI::App* c_chain = app.add_subcommand("spinchain", "spin-chain analyses");
  c_chain->require_subcommand(1);
  CLI::App* c_kram = c_chain->add_subcommand("kramers", "degeneracy dichotomy report");
  add_common(c_kram, o, false);
  c_kram->add_option("--family", chain.family, "xxx, xyz, ising, or xy");
  c_kram->add_option("--jx", chain.jx, "x coupling");
  c_kram->add_option("--jy", chain.jy, "y coupling");
  c_kram->add_option("--jz", chain.jz, "z coupling");
  c_kram->add_option("--g", chain.g, "xy anisotropy");
  c_kram->add_option("--boundary", chain.boundary, "periodic or open")
      ->check(CLI::IsMember({"periodic", "open"}));
  CLI::App* c_tmin = c_chain->add_subcommand("tmin", "minimal maximal-capacity time");
  add_common(c_tmin, o, false);
  c_tmin->add_option("--jz", jz, "Ising coupling");
  c_tmin->add_option("--grid", grid, "sweep grid intervals");
  CLI::App* c_swp = c_chain->add_subcommand("sweep", "XY ground-state concurrence vs field");
  c_swp->set_help_flag("--help", "print help");  // frees --h for the field range
  add_common(c_swp, o, false);
  c_swp->add_option("--g", g, "anisotropy");
  c_swp->add_option("--j", j_coupling, "coupling J");
  c_swp->add_option("--h", h_range, "field range start:step:stop");

  CLI::App* c_mc = app.add_subcommand("mc-capacity", "Monte Carlo maximal-capacity fraction");
  add_common(c_mc, o, false);
  c_mc->add_option("--seed", o.seed, "RNG seed");
  c_mc->add_option("--samples", samples, "sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  for (CLI::App* cmd : {c_ccd, c_cap, c_spec, c_pol, c_sym, c_kram, c_tmin, c_swp, c_mc})
    if (cmd->parsed() && cmd->count("--n")) o.n_given = true;

  try {
    if (c_ccd->parsed()) return cmd_ccd(o);
    if (c_cap->parsed()) return cmd_capacity(o);
    if (c_spec->parsed()) return cmd_spectrum(o);
    if (c_pol->parsed()) return cmd_polar(o);
    if (c_sym->parsed()) return cmd_symeig(o, ell);
    if (c_kram->parsed()) return cmd_kramers(o, chain, c_kram);
    if (c_tmin->parsed()) return cmd_tmin(o, jz, grid);
    if (c_swp->parsed()) return cmd_sweep(o, g, j_coupling, h_range);
    if (c_mc->parsed()) return cmd_mc(o, samples);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

#include "ccdlab/registry.hpp"

#include <cmath>

namespace ccdlab {

Mat example_unitary(const std::string& name, int n, double t) {
  if (name == "cphase") {
    Mat v = Mat::Zero(4, 4);
    v(0, 0) = v(3, 3) = std::polar(1.0, t);
    v(1, 1) = v(2, 2) = std::polar(1.0, -t);
    return v;
  }
  if (name == "cnot") {
    Mat v = Mat::Zero(4, 4);
    v(0, 0) = v(1, 1) = v(2, 3) = v(3, 2) = 1.0;
    return v;
  }
  if (name == "identity") {
    if (n < 1 || n > kMaxQubits) throw std::invalid_argument("example_unitary: n out of range");
    const Eigen::Index dim = Eigen::Index(1) << n;
    return Mat::Identity(dim, dim);
  }
  throw std::invalid_argument("example_unitary: unknown name '" + name + "'");
}

Vec example_state(const std::string& name, int n) {
  if (name == "ghz") {
    if (n < 2 || n > kMaxQubits) throw std::invalid_argument("example_state: n out of range");
    const Eigen::Index dim = Eigen::Index(1) << n;
    Vec psi = Vec::Zero(dim);
    psi[0] = psi[dim - 1] = 1.0 / std::sqrt(2.0);
    return psi;
  }
  if (name == "w" || name == "w4") {
    const int sites = (name == "w4") ? 4 : 3;
    const Eigen::Index dim = Eigen::Index(1) << sites;
    Vec psi = Vec::Zero(dim);
    for (int k = 0; k < sites; ++k) psi[Eigen::Index(1) << k] = 1.0 / std::sqrt(double(sites));
    return psi;
  }
  throw std::invalid_argument("example_state: unknown name '" + name + "'");
}

SpinChainSpec example_chain(const std::string& name, int n) {
  SpinChainSpec spec;
  spec.n = n;
  if (name == "xxx") {
    spec.family = ChainFamily::xyz;
    spec.Jx = spec.Jy = spec.Jz = 1.0;
  } else if (name == "xyz") {
    spec.family = ChainFamily::xyz;
    spec.Jx = 1.0;
    spec.Jy = 0.7;
    spec.Jz = 0.3;
  } else if (name == "ising") {
    spec.family = ChainFamily::ising;
    spec.Jz = 1.0;
  } else if (name == "xy") {
    spec.family = ChainFamily::xy_field;
    spec.Jx = 1.0;
  } else {
    throw std::invalid_argument("example_chain: unknown name '" + name + "'");
  }
  return spec;
}

std::vector<std::string> example_names() {
  return {"cphase", "cnot", "identity", "ghz", "w", "w4", "xxx", "xyz", "ising", "xy"};
}

}  // namespace ccdlab

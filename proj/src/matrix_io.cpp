#include "ccdlab/matrix_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ccdlab {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Mat read_matrix_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_matrix_json: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("read_matrix_json: parse error in " + path + ": " + e.what());
  }
  if (!j.contains("n") || !j["n"].is_number_integer() || !j.contains("entries") ||
      !j["entries"].is_array())
    throw std::invalid_argument("read_matrix_json: expected {\"n\": int, \"entries\": [[re,im],...]}");
  const int n = j["n"].get<int>();
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("read_matrix_json: n out of range");
  const Eigen::Index dim = Eigen::Index(1) << n;
  const auto& entries = j["entries"];
  if (Eigen::Index(entries.size()) != dim * dim)
    throw std::invalid_argument("read_matrix_json: entry count does not match 2^n x 2^n");
  Mat m(dim, dim);
  Eigen::Index k = 0;
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw std::invalid_argument("read_matrix_json: each entry must be [re, im]");
    m(k / dim, k % dim) = cplx(e[0].get<double>(), e[1].get<double>());
    ++k;
  }
  return m;
}

std::string matrix_to_json(const Mat& m, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("matrix_to_json: dimension does not match the qubit count");
  std::ostringstream out;
  out << "{\"n\": " << n << ", \"entries\": [";
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (i != 0 || j != 0) out << ", ";
      out << '[' << format_double(m(i, j).real()) << ", " << format_double(m(i, j).imag()) << ']';
    }
  out << "]}";
  return out.str();
}

void write_matrix_json(const std::string& path, const Mat& m, int n) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_matrix_json: cannot open " + path);
  out << matrix_to_json(m, n) << '\n';
}

}  // namespace ccdlab

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccdlab/matrix_io.hpp"
#include "ccdlab/registry.hpp"
#include "ccdlab/spinflip.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

using namespace ccdlab;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("ccdlab_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("matrix JSON round trip") {
  const Mat v = random_special_unitary(8, 99);
  TempFile f("roundtrip.json");
  write_matrix_json(f.path, v, 3);
  const Mat back = read_matrix_json(f.path);
  CHECK((v - back).norm() == 0.0);  // 17 digits reproduce doubles exactly

  // serialization is byte-stable
  CHECK(matrix_to_json(v, 3) == matrix_to_json(v, 3));
}

TEST_CASE("matrix JSON validation") {
  TempFile f("bad.json");
  {
    std::ofstream out(f.path);
    out << "{\"n\": 2, \"entries\": [[1, 0]]}";  // wrong entry count
  }
  CHECK_THROWS(read_matrix_json(f.path));
  {
    std::ofstream out(f.path);
    out << "not json";
  }
  CHECK_THROWS(read_matrix_json(f.path));
  CHECK_THROWS(read_matrix_json("ccdlab_test_no_such_file.json"));
}

TEST_CASE("format_double") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  // round-trips the nearest double
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("registry unitaries") {
  const double t = 0.7;
  const Mat cp = example_unitary("cphase", 2, t);
  CHECK((cp - exp_i_hermitian(pauli_string("zz"), t)).norm() <= 1e-14);
  CHECK(is_unitary(cp));

  const Mat cnot = example_unitary("cnot");
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = expect(1, 1) = expect(2, 3) = expect(3, 2) = 1.0;
  CHECK((cnot - expect).norm() == 0.0);

  CHECK((example_unitary("identity", 3) - Mat::Identity(8, 8)).norm() == 0.0);
  CHECK_THROWS_AS(example_unitary("nope"), std::invalid_argument);
}

TEST_CASE("registry states") {
  const Vec ghz = example_state("ghz", 4);
  CHECK(ghz.norm() == doctest::Approx(1.0));
  CHECK(concurrence(ghz) == doctest::Approx(1.0));

  const Vec w3 = example_state("w", 3);
  CHECK(w3.norm() == doctest::Approx(1.0));

  const Vec w4 = example_state("w4", 4);
  CHECK(w4.norm() == doctest::Approx(1.0));
  CHECK(concurrence(w4) <= 1e-14);  // entangled but flip-orthogonal

  CHECK_THROWS_AS(example_state("nope", 3), std::invalid_argument);
}

TEST_CASE("registry chains") {
  const SpinChainSpec xxx = example_chain("xxx", 4);
  CHECK(xxx.Jx == 1.0);
  CHECK(xxx.Jy == 1.0);
  CHECK(xxx.Jz == 1.0);
  const SpinChainSpec xyz = example_chain("xyz", 3);
  CHECK(xyz.Jy == 0.7);
  CHECK(xyz.Jz == 0.3);
  const SpinChainSpec ising = example_chain("ising", 4);
  CHECK(ising.family == ChainFamily::ising);
  CHECK(ising.Jz == 1.0);
  const SpinChainSpec xy = example_chain("xy", 4);
  CHECK(xy.family == ChainFamily::xy_field);
  CHECK_THROWS_AS(example_chain("nope", 4), std::invalid_argument);

  CHECK(!example_names().empty());
}

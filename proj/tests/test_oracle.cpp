#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liesim/dense_oracle.hpp"

using namespace liesim;
using Complex = std::complex<double>;

TEST_CASE("materialize single-qubit strings") {
  auto x = oracle::materialize(BasisElement{PauliString::parse("X")}, 2);
  CHECK(x.hermitian);
  CHECK(x.mat(0, 1) == Complex(1, 0));
  CHECK(x.mat(1, 0) == Complex(1, 0));
  CHECK(x.mat(0, 0) == Complex(0, 0));

  auto y = oracle::materialize(BasisElement{PauliString::parse("Y")}, 2);
  CHECK(y.mat(1, 0) == Complex(0, 1));
  CHECK(y.mat(0, 1) == Complex(0, -1));

  auto z = oracle::materialize(BasisElement{PauliString::parse("Z")}, 2);
  CHECK(z.mat(0, 0) == Complex(1, 0));
  CHECK(z.mat(1, 1) == Complex(-1, 0));
}

TEST_CASE("materialize respects hermiticity and skewness flags") {
  std::vector<BasisElement> elems = {
      BasisElement{PauliString::parse("XZY")},
      BasisElement{cycle_canonicalize(PauliString::parse("XZI"))},
      BasisElement{OrbitLabel{3, 1, 1, 0}},
  };
  for (const auto& e : elems) {
    auto op = oracle::materialize(e, 8);
    if (op.hermitian) CHECK((op.mat - op.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    if (op.skew) CHECK((op.mat + op.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  }
  auto proj = oracle::materialize(BasisElement{mggm_p(1)}, 2);
  CHECK(proj.skew);
  CHECK(proj.mat(0, 0) == Complex(0, 1));  // i |1><1|
  CHECK(proj.mat(1, 1) == Complex(0, 0));
}

TEST_CASE("orbit element matches the symmetrized sum") {
  // B_{1,0,0} at n=2: native element (i/2)(XI + IX)
  auto b = oracle::materialize(BasisElement{OrbitLabel{2, 1, 0, 0}}, 4);
  Eigen::MatrixXcd xi = oracle::materialize(BasisElement{PauliString::parse("XI")}, 4).mat;
  Eigen::MatrixXcd ix = oracle::materialize(BasisElement{PauliString::parse("IX")}, 4).mat;
  CHECK((b.mat - Complex(0, 0.5) * (xi + ix)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("dense expectation basics") {
  // identity circuit on |0>, observable Z
  CircuitSpec empty;
  Eigen::VectorXcd psi = oracle::dense_state(StateSpec::basis_string("0"), 2);
  CoeffMap obs = {{BasisElement{PauliString::parse("Z")}, 1.0}};
  CHECK(oracle::dense_expectation(empty, Eigen::VectorXd(), psi, obs, 2) ==
        doctest::Approx(1.0));

  // e^{-i (pi/2) X} |0>: <Z> = cos(pi) = -1
  CircuitSpec rabi;
  rabi.generators.emplace_back("x", CoeffMap{{BasisElement{PauliString::parse("X")}, 1.0}});
  rabi.layers.emplace_back("x", 0);
  Eigen::VectorXd theta(1);
  theta[0] = 1.5707963267948966;
  CHECK(oracle::dense_expectation(rabi, theta, psi, obs, 2) == doctest::Approx(-1.0));
}

TEST_CASE("pfaffian sign") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 1) = 3.0;
  a(1, 0) = -3.0;
  CHECK(oracle::pfaffian_sign(a) == 1);
  a(0, 1) = -3.0;
  a(1, 0) = 3.0;
  CHECK(oracle::pfaffian_sign(a) == -1);

  // Pf of a direct sum multiplies: [[0,1],[-1,0]] ⊕ [[0,-2],[2,0]] -> -2
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 4);
  b(0, 1) = 1;
  b(1, 0) = -1;
  b(2, 3) = -2;
  b(3, 2) = 2;
  CHECK(oracle::pfaffian_sign(b) == -1);
}

TEST_CASE("TFIM free-fermion energy: closed-form corners") {
  CHECK(oracle::tfim_exact_energy(4, 1.0, 0.0, false) == doctest::Approx(-3.0));
  CHECK(oracle::tfim_exact_energy(7, 2.5, 0.0, false) == doctest::Approx(-2.5 * 6));
  CHECK(oracle::tfim_exact_energy(5, 0.0, 1.25, false) == doctest::Approx(-1.25 * 5));
  CHECK(oracle::tfim_exact_energy(6, 0.0, 0.5, true) == doctest::Approx(-0.5 * 6));
}

TEST_CASE("TFIM free-fermion energy matches dense diagonalization") {
  std::vector<std::pair<double, double>> grid = {
      {1.0, 1.0}, {1.0, 0.5}, {0.7, 1.3}, {-1.0, 0.9}, {1.0, 2.0}};
  for (int n = 2; n <= 10; ++n) {
    for (auto [J, g] : grid) {
      for (bool periodic : {false, true}) {
        double bdg = oracle::tfim_exact_energy(n, J, g, periodic);
        double dense = oracle::tfim_dense_energy(n, J, g, periodic);
        CAPTURE(n);
        CAPTURE(J);
        CAPTURE(g);
        CAPTURE(periodic);
        CHECK(bdg == doctest::Approx(dense).epsilon(1e-10));
      }
    }
  }
  // spot check at n = 12
  CHECK(oracle::tfim_exact_energy(12, 1.0, 1.0, false) ==
        doctest::Approx(oracle::tfim_dense_energy(12, 1.0, 1.0, false)).epsilon(1e-10));
}

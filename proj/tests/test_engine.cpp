#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <unsupported/Eigen/MatrixFunctions>

#include "liesim/dense_oracle.hpp"
#include "liesim/engine.hpp"
#include "liesim/experiments.hpp"
#include "liesim/rng.hpp"

using namespace liesim;
using Complex = std::complex<double>;

namespace {

CoeffMap single(const std::string& text) {
  return {{BasisElement{PauliString::parse(text)}, 1.0}};
}

LieBasis su2_basis() {
  return lie_closure({single("X"), single("Y"), single("Z")}, pauli_representation(1),
                     8);
}

// Dense cross-check of e_out coordinates: tr[U^dag B_alpha U rho].
Eigen::VectorXd dense_eout(const LieBasis& basis, const CircuitSpec& circ,
                           const Eigen::VectorXd& params, const Eigen::VectorXcd& psi,
                           int space_dim) {
  // Schroedinger picture: evolve psi, then take tr[B_alpha rho_out].
  Eigen::VectorXcd state = psi;
  for (const auto& [id, pidx] : circ.layers) {
    Eigen::MatrixXcd h = oracle::materialize_hermitian(circ.generator(id), space_dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd c = es.eigenvectors().adjoint() * state;
    for (int i = 0; i < c.size(); ++i)
      c[i] *= std::exp(Complex(0, -params[pidx] * es.eigenvalues()[i]));
    state = es.eigenvectors() * c;
  }
  Eigen::VectorXd out(basis.dim());
  for (int a = 0; a < basis.dim(); ++a) {
    Eigen::MatrixXcd b = oracle::materialize_basis_vector(basis, a, space_dim);
    out[a] = (state.adjoint() * b * state)(0, 0).real();
  }
  return out;
}

}  // namespace

TEST_CASE("su(2) closure and structure constants") {
  LieBasis basis = su2_basis();
  CHECK(basis.dim() == 3);
  CHECK(basis.is_label_basis());
  CHECK_FALSE(basis.truncated());

  StructureTensor f = structure_constants(basis, pauli_representation(1));
  // i[X,Y] = -2Z and cyclic: 2x Levi-Civita pattern with the engine sign.
  int ix = basis.label_index(BasisElement{PauliString::parse("X")});
  int iy = basis.label_index(BasisElement{PauliString::parse("Y")});
  int iz = basis.label_index(BasisElement{PauliString::parse("Z")});
  auto entry = [&](int a, int b) {
    const auto* row = f.row(a, b);
    REQUIRE(row != nullptr);
    REQUIRE(row->size() == 1);
    return (*row)[0];
  };
  CHECK(entry(ix, iy).first == iz);
  CHECK(entry(ix, iy).second == doctest::Approx(-2.0));
  CHECK(entry(iy, ix).second == doctest::Approx(2.0));
  CHECK(entry(iy, iz).first == ix);
  CHECK(entry(iy, iz).second == doctest::Approx(-2.0));
  CHECK(entry(iz, ix).first == iy);
  CHECK(entry(iz, ix).second == doctest::Approx(-2.0));

  double resid = jacobi_residual(f, {{ix, iy, iz}, {iz, iy, ix}});
  CHECK(resid < 1e-12);
}

TEST_CASE("abelian generators give an empty tensor") {
  LieBasis basis =
      lie_closure({single("ZI"), single("IZ")}, pauli_representation(2), 8);
  CHECK(basis.dim() == 2);
  StructureTensor f = structure_constants(basis, pauli_representation(2));
  CHECK(f.nonzeros() == 0);
}

TEST_CASE("closure truncation is flagged, never silent") {
  LieBasis basis = lie_closure(experiments::tfim_free_generators(4, false),
                               pauli_representation(4), 5);
  CHECK(basis.truncated());
  CHECK(basis.dim() == 5);
}

TEST_CASE("closure dimensions reproduce the known formulas") {
  for (int n = 3; n <= 6; ++n) {
    CAPTURE(n);
    // free path: n(2n-1)
    LieBasis path = lie_closure(experiments::tfim_free_generators(n, false),
                                pauli_representation(n), 4 * n * n);
    CHECK(path.dim() == n * (2 * n - 1));
    CHECK(path.is_label_basis());

    // free cycle graph: 2n(2n-1)
    LieBasis ring = lie_closure(experiments::tfim_free_generators(n, true),
                                pauli_representation(n), 8 * n * n);
    CHECK(ring.dim() == 2 * n * (2 * n - 1));

    // summed, open: n^2
    LieBasis sums = lie_closure(experiments::tfim_sum_generators(n, false),
                                pauli_representation(n), 4 * n * n);
    CHECK(sums.dim() == n * n);

    // summed, periodic, in the cycle representation: 3n - 1
    LieBasis cycles = lie_closure(experiments::tfim_sum_generators_cycles(n),
                                  cycle_representation(n), 8 * n);
    CHECK(cycles.dim() == 3 * n - 1);
  }
}

TEST_CASE("peQNN orbit closure dimension") {
  // Strict span: the commutant's per-sector identities are unreachable
  // except for the one trace pattern carried by B_{0,0,2}, giving
  // C(n+3,3) - floor(n/2) rather than the full su-restricted C(n+3,3) - 1.
  for (int n = 3; n <= 6; ++n) {
    auto f = std::make_shared<FactorialTable>(n);
    LieBasis basis = lie_closure(experiments::peqnn_generators(n),
                                 orbit_representation(n, f), 4096);
    CHECK(basis.dim() == pi_algebra_dim(n).dim - n / 2);
  }
}

TEST_CASE("peQNN closure dimension matches a dense operator-space closure") {
  // Independent oracle: Gram-Schmidt closure over explicit matrices.
  for (int n = 3; n <= 4; ++n) {
    int dim = 1 << n;
    std::vector<Eigen::MatrixXcd> gens;
    for (const auto& g : experiments::peqnn_generators(n))
      gens.push_back(Complex(0, 1) * oracle::materialize_hermitian(g, dim));
    std::vector<Eigen::VectorXcd> basis;
    auto add = [&](const Eigen::MatrixXcd& m) {
      Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
      double orig = v.norm();
      for (const auto& b : basis) v -= b.dot(v) * b;
      if (v.norm() <= 1e-9 * orig) return false;
      basis.push_back(v / v.norm());
      return true;
    };
    std::vector<Eigen::MatrixXcd> mats;
    for (const auto& g : gens)
      if (add(g)) mats.push_back(g / g.norm());
    for (size_t i = 1; i < mats.size(); ++i) {
      for (size_t j = 0; j < i; ++j) {
        Eigen::MatrixXcd c = mats[i] * mats[j] - mats[j] * mats[i];
        if (c.norm() > 1e-12 && add(c)) mats.push_back(c / c.norm());
      }
    }
    auto f = std::make_shared<FactorialTable>(n);
    LieBasis orbit_basis = lie_closure(experiments::peqnn_generators(n),
                                       orbit_representation(n, f), 4096);
    CHECK(static_cast<int>(basis.size()) == orbit_basis.dim());
  }
}

TEST_CASE("HW universal generators close to su(d) on sectors") {
  for (int n = 3; n <= 5; ++n) {
    SectorIndexer idx(n, 1);
    LieBasis basis = lie_closure(experiments::hw_universal_generators(idx),
                                 mggm_representation(n, 1), 4 * n * n);
    CHECK(basis.dim() == n * n - 1);
  }
  // k = 2 interacting sector: su(C(n,2))
  SectorIndexer idx(4, 2);
  LieBasis basis = lie_closure(experiments::hw_universal_generators(idx),
                               mggm_representation(4, 2), 64);
  CHECK(basis.dim() == 6 * 6 - 1);
}

TEST_CASE("MGGM structure constants match the engine tensor") {
  const int d = 3;
  Representation rep = mggm_representation(3, 1);
  std::vector<BasisElement> labels;
  for (const auto& e : mggm_basis_elements(d)) labels.push_back(BasisElement{e});
  LieBasis basis = LieBasis::from_labels(labels, rep);
  StructureTensor tensor = structure_constants(basis, rep);

  auto flat = mggm_structure_constants(d);
  size_t checked = 0;
  for (const auto& e : flat) {
    const auto* row = tensor.row(e.alpha, e.beta);
    REQUIRE(row != nullptr);
    double got = 0.0;
    for (const auto& [g, v] : *row)
      if (g == e.gamma) got = v;
    CHECK(got == doctest::Approx(e.f));
    ++checked;
  }
  CHECK(checked == tensor.nonzeros());
}

TEST_CASE("adjoint generator of Z on the su(2) basis") {
  LieBasis basis = su2_basis();
  Representation rep = pauli_representation(1);
  AdjointGenerator gen = adjoint_of(single("Z"), basis, rep);
  CHECK(gen.spectral());
  Eigen::MatrixXd m(gen.matrix());
  int ix = basis.label_index(BasisElement{PauliString::parse("X")});
  int iy = basis.label_index(BasisElement{PauliString::parse("Y")});
  int iz = basis.label_index(BasisElement{PauliString::parse("Z")});
  // single antisymmetric block coupling X and Y
  CHECK(m(ix, iy) == doctest::Approx(-m(iy, ix)));
  CHECK(std::abs(m(ix, iy)) == doctest::Approx(2.0));
  for (int c = 0; c < 3; ++c) {
    CHECK(m(iz, c) == doctest::Approx(0.0));
    CHECK(m(c, iz) == doctest::Approx(0.0));
  }
}

TEST_CASE("zero Hamiltonian gives the zero adjoint") {
  LieBasis basis = su2_basis();
  AdjointGenerator gen = adjoint_of({}, basis, pauli_representation(1));
  Eigen::VectorXd v(3);
  v << 1, 2, 3;
  CHECK((gen.exp_action(0.7, v) - v).norm() == 0.0);
}

TEST_CASE("exp_action identity, rotation, and dense-exponential agreement") {
  LieBasis basis = su2_basis();
  Representation rep = pauli_representation(1);
  AdjointGenerator gen = adjoint_of(single("Z"), basis, rep);

  Eigen::VectorXd v(3);
  v << 0.3, -1.2, 0.8;
  CHECK((gen.exp_action(0.0, v) - v).norm() == 0.0);

  // dense exponential reference, both paths
  Eigen::MatrixXd m(gen.matrix());
  for (double theta : {0.1, -0.7, 2.9}) {
    Eigen::MatrixXd expm = (theta * m).exp();
    CHECK((gen.exp_action(theta, v) - expm * v).norm() < 1e-12);
    AdjointGenerator sparse_only =
        adjoint_of(single("Z"), basis, rep, /*spectral_max_dim=*/0);
    CHECK_FALSE(sparse_only.spectral());
    CHECK((sparse_only.exp_action(theta, v) - expm * v).norm() < 1e-12);
    // transpose action
    CHECK((gen.exp_action(theta, v, true) - expm.transpose() * v).norm() < 1e-12);
    CHECK((sparse_only.exp_action(theta, v, true) - expm.transpose() * v).norm() <
          1e-12);
  }

  CHECK_THROWS(gen.exp_action(std::nan(""), v));
}

TEST_CASE("random adjoint exponentials match the dense matrix exponential") {
  Rng rng(53);
  int n = 3;
  Representation rep = pauli_representation(n);
  LieBasis basis = lie_closure(experiments::tfim_free_generators(n, false), rep, 64);
  CoeffMap h = experiments::tfim_hamiltonian(n, 0.8, 1.1, false);
  AdjointGenerator gen = adjoint_of(h, basis, rep);
  Eigen::MatrixXd m(gen.matrix());
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd v(basis.dim());
    for (int i = 0; i < v.size(); ++i) v[i] = rng.uniform(-1, 1);
    double theta = rng.uniform(-2, 2);
    Eigen::MatrixXd expm = (theta * m).exp();
    CHECK((gen.exp_action(theta, v) - expm * v).norm() < 1e-10);
  }
}

TEST_CASE("state coordinates") {
  // |+>^2 on a string basis
  Representation rep2 = pauli_representation(2);
  LieBasis basis = LieBasis::from_labels(
      {BasisElement{PauliString::parse("XI")}, BasisElement{PauliString::parse("IX")},
       BasisElement{PauliString::parse("XX")}, BasisElement{PauliString::parse("ZZ")},
       BasisElement{PauliString::parse("YI")}},
      rep2);
  Eigen::VectorXd e = state_coordinates(StateSpec::plus_product(), basis);
  CHECK(e[0] == 1.0);
  CHECK(e[1] == 1.0);
  CHECK(e[2] == 1.0);
  CHECK(e[3] == 0.0);
  CHECK(e[4] == 0.0);

  // computational strings on Z-type labels
  Eigen::VectorXd e01 = state_coordinates(StateSpec::basis_string("01"), basis);
  CHECK(e01[3] == -1.0);  // <01|ZZ|01> = -1
  CHECK(e01[0] == 0.0);

  // sector state in an MGGM basis
  Representation repm = mggm_representation(4, 2);
  LieBasis mbasis = LieBasis::from_labels(
      {BasisElement{mggm_p(1)}, BasisElement{mggm_p(2)}, BasisElement{mggm_a(1, 2)},
       BasisElement{mggm_s(1, 2)}},
      repm);
  Eigen::VectorXd es = state_coordinates(StateSpec::sector(2), mbasis);
  CHECK(es[0] == 0.0);
  CHECK(es[1] == 1.0);
  CHECK(es[2] == 0.0);
  CHECK(es[3] == 0.0);
  CHECK_THROWS(state_coordinates(StateSpec::plus_product(), mbasis));

  // |0...0> on the orbit basis: every B_{0,0,r} reads 1
  int n = 4;
  auto f = std::make_shared<FactorialTable>(n);
  Representation repo = orbit_representation(n, f);
  std::vector<BasisElement> olabels;
  for (int r = 1; r <= n; ++r) olabels.push_back(BasisElement{OrbitLabel{n, 0, 0, r}});
  olabels.push_back(BasisElement{OrbitLabel{n, 1, 0, 0}});
  LieBasis obasis = LieBasis::from_labels(olabels, repo);
  Eigen::VectorXd eo = state_coordinates(StateSpec::basis_string("0000"), obasis);
  for (int r = 0; r < n; ++r) CHECK(eo[r] == doctest::Approx(1.0));
  CHECK(eo[n] == 0.0);

  // dense cross-check on a mixed bit pattern
  Eigen::VectorXd em = state_coordinates(StateSpec::basis_string("0110"), obasis);
  Eigen::VectorXcd psi = oracle::dense_state(StateSpec::basis_string("0110"), 16);
  for (int a = 0; a < obasis.dim(); ++a) {
    Eigen::MatrixXcd b = oracle::materialize_basis_vector(obasis, a, 16);
    CHECK(em[a] == doctest::Approx((psi.adjoint() * b * psi)(0, 0).real()));
  }
}

TEST_CASE("propagation matches dense simulation across representations") {
  Rng rng(59);

  SUBCASE("pauli strings, TFIM circuit") {
    int n = 4;
    Representation rep = pauli_representation(n);
    LieBasis basis = lie_closure(experiments::tfim_free_generators(n, false), rep, 256);
    CircuitSpec circ;
    auto gens = experiments::tfim_free_generators(n, false);
    for (size_t i = 0; i < gens.size(); ++i)
      circ.generators.emplace_back("g" + std::to_string(i), gens[i]);
    int params_per_layer = static_cast<int>(gens.size());
    for (int l = 0; l < 2; ++l)
      for (int k = 0; k < params_per_layer; ++k)
        circ.layers.emplace_back("g" + std::to_string(k), l * params_per_layer + k);

    Simulator sim(basis, rep, circ);
    Eigen::VectorXd params(sim.num_params());
    for (int i = 0; i < params.size(); ++i) params[i] = rng.uniform(0, 6.28);
    Eigen::VectorXd e_in = state_coordinates(StateSpec::plus_product(), sim.basis());
    CoeffMap hmap = experiments::tfim_hamiltonian(n, 1.0, 1.0, false);
    Eigen::VectorXd w = sim.observable_coords(hmap);

    double got = sim.loss(params, e_in, w);
    Eigen::VectorXcd psi = oracle::dense_state(StateSpec::plus_product(), 1 << n);
    double expect = oracle::dense_expectation(circ, params, psi, hmap, 1 << n);
    CHECK(got == doctest::Approx(expect).epsilon(1e-10));

    // norm preservation in the normalized frame: here all norms equal 2^n,
    // so the raw coordinate norm is preserved as well.
    Eigen::VectorXd e_out = sim.propagate(params, e_in);
    CHECK(e_out.norm() == doctest::Approx(e_in.norm()).epsilon(1e-9));

    // empty circuit and zero parameters act as the identity
    CircuitSpec empty;
    Simulator sim0(basis, rep, empty);
    CHECK((sim0.propagate(Eigen::VectorXd(), e_in) - e_in).norm() == 0.0);
    Eigen::VectorXd zeros = Eigen::VectorXd::Zero(sim.num_params());
    CHECK((sim.propagate(zeros, e_in) - e_in).norm() == 0.0);
  }

  SUBCASE("cycle representation, periodic TFIM sums") {
    int n = 5;
    Representation rep = cycle_representation(n);
    LieBasis basis = lie_closure(experiments::tfim_sum_generators_cycles(n), rep, 64);
    CHECK_FALSE(basis.is_label_basis());

    CircuitSpec circ;
    auto gens = experiments::tfim_sum_generators_cycles(n);
    circ.generators.emplace_back("x", gens[0]);
    circ.generators.emplace_back("zz", gens[1]);
    for (int l = 0; l < 3; ++l) {
      circ.layers.emplace_back("x", 2 * l);
      circ.layers.emplace_back("zz", 2 * l + 1);
    }
    Simulator sim(basis, rep, circ);
    Eigen::VectorXd params(sim.num_params());
    for (int i = 0; i < params.size(); ++i) params[i] = rng.uniform(0, 6.28);
    Eigen::VectorXd e_in = state_coordinates(StateSpec::plus_product(), sim.basis());
    // observable: the periodic TFIM Hamiltonian expressed over cycle labels
    CoeffMap hmap;
    {
      PauliString x(n);
      x.set_letter(0, Letter::X);
      PauliString zz(n);
      zz.set_letter(0, Letter::Z);
      zz.set_letter(1, Letter::Z);
      hmap[BasisElement{cycle_canonicalize(zz)}] = double(n) * 1.0;
      hmap[BasisElement{cycle_canonicalize(x)}] = double(n) * -1.0;
    }
    Eigen::VectorXd w = sim.observable_coords(hmap);
    double got = sim.loss(params, e_in, w);

    CircuitSpec dense_circ;
    dense_circ.generators.emplace_back("x", gens[0]);
    dense_circ.generators.emplace_back("zz", gens[1]);
    dense_circ.layers = circ.layers;
    Eigen::VectorXcd psi = oracle::dense_state(StateSpec::plus_product(), 1 << n);
    double expect = oracle::dense_expectation(dense_circ, params, psi, hmap, 1 << n);
    CHECK(got == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("gradients match central finite differences") {
  Rng rng(61);
  int n = 4;
  Representation rep = pauli_representation(n);
  LieBasis basis = lie_closure(experiments::tfim_free_generators(n, false), rep, 256);
  CircuitSpec circ;
  auto gens = experiments::tfim_free_generators(n, false);
  for (size_t i = 0; i < gens.size(); ++i)
    circ.generators.emplace_back("g" + std::to_string(i), gens[i]);
  int k = static_cast<int>(gens.size());
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < k; ++i) circ.layers.emplace_back("g" + std::to_string(i), l * k + i);

  Simulator sim(basis, rep, circ);
  Eigen::VectorXd e_in = state_coordinates(StateSpec::plus_product(), sim.basis());
  Eigen::VectorXd w = sim.observable_coords(experiments::tfim_hamiltonian(n, 1, 1, false));

  for (int trial = 0; trial < 3; ++trial) {
    Eigen::VectorXd params(sim.num_params());
    for (int i = 0; i < params.size(); ++i) params[i] = rng.uniform(0, 6.28);
    auto [value, grad] = sim.loss_and_gradient(params, e_in, w);
    CHECK(value == doctest::Approx(sim.loss(params, e_in, w)));
    const double h = 1e-5;
    for (int i = 0; i < params.size(); ++i) {
      Eigen::VectorXd up = params, dn = params;
      up[i] += h;
      dn[i] -= h;
      double fd = (sim.loss(up, e_in, w) - sim.loss(dn, e_in, w)) / (2 * h);
      CHECK(std::abs(grad[i] - fd) < 1e-6);
    }
  }
}

TEST_CASE("gradient with shared parameters and constant losses") {
  // two gates sharing one parameter: gradient accumulates
  Representation rep = pauli_representation(1);
  LieBasis basis = su2_basis();
  CircuitSpec circ;
  circ.generators.emplace_back("z", single("Z"));
  circ.layers.emplace_back("z", 0);
  circ.layers.emplace_back("z", 0);
  Simulator sim(basis, rep, circ);
  Eigen::VectorXd e_in(3);
  e_in << 1.0, 0.0, 0.0;  // coordinates of X direction
  Eigen::VectorXd w(3);
  w << 1.0, 0.0, 0.0;
  // <X(theta)> under two Z rotations: cos(2 * 2 theta) pattern; analytic
  // derivative of a planar rotation
  Eigen::VectorXd p(1);
  p[0] = 0.3;
  auto [value, grad] = sim.loss_and_gradient(p, e_in, w);
  CHECK(value == doctest::Approx(std::cos(4 * 0.3)));
  CHECK(grad[0] == doctest::Approx(-4.0 * std::sin(4 * 0.3)));

  // w orthogonal to the reachable subspace: zero gradient
  Eigen::VectorXd wz(3);
  wz << 0.0, 0.0, 1.0;
  auto [v2, g2] = sim.loss_and_gradient(p, e_in, wz);
  CHECK(v2 == doctest::Approx(0.0));
  CHECK(g2.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("g-purity") {
  LieBasis basis = su2_basis();
  // H = 0.6 X - 0.8 Z: inside the span, orthonormal coords give sum c^2
  CoeffMap h = {{BasisElement{PauliString::parse("X")}, 0.6},
                {BasisElement{PauliString::parse("Z")}, -0.8}};
  // each Pauli has norm^2 = 2 at n=1
  CHECK(g_purity(h, basis) == doctest::Approx(0.6 * 0.6 * 2 + 0.8 * 0.8 * 2));

  // orthogonal to the span: 0
  LieBasis zbasis = LieBasis::from_labels({BasisElement{PauliString::parse("Z")}},
                                          pauli_representation(1));
  CoeffMap hx = {{BasisElement{PauliString::parse("X")}, 1.0}};
  CHECK(g_purity(hx, zbasis) == 0.0);

  // TFIM Hamiltonian inside its own DLA at n=3: purity equals tr(H^2)
  int n = 3;
  Representation rep = pauli_representation(n);
  LieBasis tf = lie_closure(experiments::tfim_free_generators(n, false), rep, 64);
  CoeffMap hm = experiments::tfim_hamiltonian(n, 0.9, 1.2, false);
  Eigen::MatrixXcd dense = oracle::materialize_hermitian(hm, 1 << n);
  CHECK(g_purity(hm, tf) == doctest::Approx((dense * dense).trace().real()));
}

TEST_CASE("predict_variance") {
  CHECK(predict_variance(1.0, 1.0, 10) == doctest::Approx(0.1));
  CHECK(predict_variance(0.0, 123.0, 7) == 0.0);
  CHECK_THROWS(predict_variance(1.0, 1.0, 0));
}

TEST_CASE("structure tensor export is parseable and round-trips values") {
  LieBasis basis = su2_basis();
  StructureTensor f = structure_constants(basis, pauli_representation(1));
  std::string text = f.export_text(basis, "pauli");
  // first line is a JSON manifest, then "alpha beta gamma f" rows
  auto newline = text.find('\n');
  REQUIRE(newline != std::string::npos);
  CHECK(text.substr(0, 1) == "{");
  int rows = 0;
  size_t pos = newline + 1;
  while (pos < text.size()) {
    int a, b, g;
    double v;
    REQUIRE(sscanf(text.c_str() + pos, "%d %d %d %lf", &a, &b, &g, &v) == 4);
    const auto* row = f.row(a, b);
    REQUIRE(row != nullptr);
    bool found = false;
    for (const auto& [gamma, val] : *row)
      if (gamma == g && val == v) found = true;
    CHECK(found);  // shortest round-trip decimal reproduces the value exactly
    ++rows;
    pos = text.find('\n', pos) + 1;
  }
  CHECK(rows == static_cast<int>(f.nonzeros()));
}

TEST_CASE("jacobi residual on a larger tensor") {
  int n = 4;
  Representation rep = pauli_representation(n);
  LieBasis basis = lie_closure(experiments::tfim_free_generators(n, false), rep, 256);
  StructureTensor f = structure_constants(basis, rep, 2);
  Rng rng(67);
  std::vector<std::array<int, 3>> triples;
  for (int t = 0; t < 60; ++t)
    triples.push_back({rng.uniform_int(0, basis.dim() - 1),
                       rng.uniform_int(0, basis.dim() - 1),
                       rng.uniform_int(0, basis.dim() - 1)});
  CHECK(jacobi_residual(f, triples) < 1e-9);
}

TEST_CASE("closure violation errors name the offending pair") {
  // A basis that is deliberately not closed: {X, Y} without Z.
  LieBasis basis = LieBasis::from_labels(
      {BasisElement{PauliString::parse("X")}, BasisElement{PauliString::parse("Y")}},
      pauli_representation(1));
  CHECK_THROWS_AS(structure_constants(basis, pauli_representation(1)),
                  std::runtime_error);
}

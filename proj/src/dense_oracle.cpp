#include "liesim/dense_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace liesim {
namespace oracle {

namespace {

using Complex = std::complex<double>;

void check_cap(int space_dim) {
  if (space_dim < 1 || space_dim > kDenseCap)
    throw std::invalid_argument("dense oracle capped at dim " + std::to_string(kDenseCap));
}

Eigen::MatrixXcd string_matrix(const PauliString& p, int space_dim) {
  int n = p.num_qubits();
  if (space_dim != (1 << n)) throw std::invalid_argument("space dim must be 2^n");
  uint64_t flip = 0;
  for (int i = 0; i < n; ++i) {
    Letter l = p.letter(i);
    if (l == Letter::X || l == Letter::Y) flip |= uint64_t{1} << (n - 1 - i);
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space_dim, space_dim);
  for (int col = 0; col < space_dim; ++col) {
    Complex amp = 1.0;
    for (int i = 0; i < n; ++i) {
      int bit = (col >> (n - 1 - i)) & 1;
      switch (p.letter(i)) {
        case Letter::I: break;
        case Letter::X: break;
        case Letter::Y: amp *= bit ? Complex(0, -1) : Complex(0, 1); break;
        case Letter::Z: amp *= bit ? -1.0 : 1.0; break;
      }
    }
    m(static_cast<int>(col ^ flip), col) = amp;
  }
  return m;
}

}  // namespace

DenseOperator materialize(const BasisElement& e, int space_dim) {
  check_cap(space_dim);
  DenseOperator out;
  if (const auto* p = std::get_if<PauliString>(&e)) {
    out.mat = string_matrix(*p, space_dim);
    out.hermitian = true;
    return out;
  }
  if (const auto* c = std::get_if<PauliCycle>(&e)) {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(space_dim, space_dim);
    for (int k = 0; k < c->n; ++k) t += string_matrix(c->rep.shifted(k), space_dim);
    out.mat = Complex(0, 1) * t / static_cast<double>(c->n);
    out.skew = true;
    return out;
  }
  if (const auto* l = std::get_if<OrbitLabel>(&e)) {
    PauliSum sum = orbit_expand(*l);
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(space_dim, space_dim);
    for (const auto& [p, coeff] : sum.terms()) s += coeff * string_matrix(p, space_dim);
    out.mat = Complex(0, 1) * s;
    out.skew = true;
    return out;
  }
  const auto& m = std::get<MggmElement>(e);
  int hi = std::max(m.a, m.b);
  if (hi > space_dim) throw std::invalid_argument("MGGM index exceeds sector dim");
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(space_dim, space_dim);
  switch (m.kind) {
    case MggmElement::A:
      mat(m.a - 1, m.b - 1) = 1.0;
      mat(m.b - 1, m.a - 1) = -1.0;
      break;
    case MggmElement::S:
      mat(m.a - 1, m.b - 1) = Complex(0, 1);
      mat(m.b - 1, m.a - 1) = Complex(0, 1);
      break;
    case MggmElement::P:
      mat(m.a - 1, m.a - 1) = Complex(0, 1);
      break;
  }
  out.mat = mat;
  out.skew = true;
  return out;
}

Eigen::MatrixXcd materialize_hermitian(const BasisElement& e, int space_dim) {
  DenseOperator native = materialize(e, space_dim);
  if (native.hermitian) return native.mat;
  return Complex(0, -1) * native.mat;
}

Eigen::MatrixXcd materialize_hermitian(const CoeffMap& op, int space_dim) {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(space_dim, space_dim);
  for (const auto& [e, c] : op) acc += c * materialize_hermitian(e, space_dim);
  return acc;
}

Eigen::MatrixXcd materialize_basis_vector(const LieBasis& basis, int alpha,
                                          int space_dim) {
  if (basis.is_label_basis())
    return materialize_hermitian(basis.labels()[alpha], space_dim);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(space_dim, space_dim);
  for (const auto& [li, c] : basis.vectors()[alpha])
    acc += c * materialize_hermitian(basis.labels()[li], space_dim);
  return acc;
}

Eigen::VectorXcd dense_state(const StateSpec& state, int space_dim) {
  check_cap(space_dim);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space_dim);
  switch (state.kind) {
    case StateSpec::BasisString: {
      int n = static_cast<int>(state.bits.size());
      if (space_dim != (1 << n)) throw std::invalid_argument("space dim must be 2^n");
      int idx = 0;
      for (int i = 0; i < n; ++i) {
        idx <<= 1;
        if (state.bits[i] == '1')
          idx |= 1;
        else if (state.bits[i] != '0')
          throw std::invalid_argument("invalid bitstring");
      }
      psi[idx] = 1.0;
      return psi;
    }
    case StateSpec::PlusProduct:
      psi.setConstant(1.0 / std::sqrt(static_cast<double>(space_dim)));
      return psi;
    case StateSpec::SectorIndex:
      if (state.sector_index < 1 || state.sector_index > space_dim)
        throw std::invalid_argument("sector index out of range");
      psi[state.sector_index - 1] = 1.0;
      return psi;
    case StateSpec::Explicit:
      throw std::invalid_argument("explicit coordinates have no dense state");
  }
  throw std::logic_error("unreachable");
}

Eigen::VectorXcd dense_graph_state(int n, const std::vector<std::pair<int, int>>& edges) {
  int dim = 1 << n;
  check_cap(dim);
  Eigen::VectorXcd psi =
      Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  for (const auto& [u, v] : edges) {
    if (u < 1 || v < 1 || u > n || v > n || u == v)
      throw std::invalid_argument("invalid edge");
    for (int idx = 0; idx < dim; ++idx) {
      bool bu = (idx >> (n - u)) & 1;
      bool bv = (idx >> (n - v)) & 1;
      if (bu && bv) psi[idx] = -psi[idx];
    }
  }
  return psi;
}

double dense_expectation(const CircuitSpec& circ, const Eigen::VectorXd& params,
                         const Eigen::VectorXcd& psi_in, const CoeffMap& observable,
                         int space_dim) {
  if (psi_in.size() != space_dim) throw std::invalid_argument("state dim mismatch");
  int m = circ.num_params();
  if (params.size() != m) throw std::invalid_argument("parameter count mismatch");

  struct GateData {
    Eigen::MatrixXcd vecs;
    Eigen::VectorXd vals;
  };
  std::vector<std::string> ids;
  std::vector<GateData> cache;
  auto gate_index = [&](const std::string& id) {
    for (size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == id) return static_cast<int>(i);
    Eigen::MatrixXcd h = materialize_hermitian(circ.generator(id), space_dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    ids.push_back(id);
    cache.push_back({es.eigenvectors(), es.eigenvalues()});
    return static_cast<int>(ids.size()) - 1;
  };

  Eigen::VectorXcd psi = psi_in;
  for (const auto& [id, pidx] : circ.layers) {
    const GateData& g = cache[gate_index(id)];
    Eigen::VectorXcd coeffs = g.vecs.adjoint() * psi;
    for (int i = 0; i < coeffs.size(); ++i)
      coeffs[i] *= std::exp(Complex(0, -params[pidx] * g.vals[i]));
    psi = g.vecs * coeffs;
  }
  Eigen::MatrixXcd obs = materialize_hermitian(observable, space_dim);
  return (psi.adjoint() * obs * psi)(0, 0).real();
}

int pfaffian_sign(Eigen::MatrixXd a) {
  int n = static_cast<int>(a.rows());
  if (n % 2 != 0) return 0;
  double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0;
  int sign = 1;
  for (int k = 0; k + 1 < n; k += 2) {
    int kp = k + 1;
    for (int i = k + 2; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(kp, k))) kp = i;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      sign = -sign;
    }
    double pivot = a(k, k + 1);
    if (std::abs(pivot) < 1e-12 * scale) return 0;
    if (pivot < 0) sign = -sign;
    if (k + 2 < n) {
      Eigen::VectorXd tau = a.row(k).segment(k + 2, n - k - 2) / pivot;
      Eigen::VectorXd col = a.col(k + 1).segment(k + 2, n - k - 2);
      a.block(k + 2, k + 2, n - k - 2, n - k - 2) +=
          tau * col.transpose() - col * tau.transpose();
    }
  }
  return sign;
}

namespace {

// Quadratic form H = (i/4) sum alpha_{mu nu} gamma_mu gamma_nu for
// H' = J sum X X - g sum Z (the Hadamard rotation of the Ising chain),
// wrap_sign scales the boundary coupling for the two fermionic sectors.
Eigen::MatrixXd majorana_form(int n, double J, double g, bool periodic, double wrap) {
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  auto set = [&](int a, int b, double v) {
    alpha(a, b) += v;
    alpha(b, a) -= v;
  };
  for (int j = 0; j < n; ++j) set(2 * j, 2 * j + 1, 2.0 * g);
  for (int j = 0; j + 1 < n; ++j) set(2 * j + 1, 2 * j + 2, -2.0 * J);
  if (periodic) set(2 * n - 1, 0, 2.0 * J * wrap);
  return alpha;
}

double vacuum_energy(const Eigen::MatrixXd& alpha, double* eps_min) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(alpha);
  const auto& sv = svd.singularValues();
  double sum = sv.sum();
  if (eps_min) *eps_min = sv[sv.size() - 1];
  return -0.25 * sum;
}

}  // namespace

double tfim_exact_energy(int n, double J, double g, bool periodic) {
  if (n < 2) throw std::invalid_argument("chain needs n >= 2");
  if (!periodic) {
    Eigen::MatrixXd alpha = majorana_form(n, J, g, false, 0.0);
    return vacuum_energy(alpha, nullptr);
  }
  // Sector p = +1 (even magnetization parity) uses one wrap sign, p = -1 the
  // other; the Bogoliubov vacuum is admissible when its fermion parity,
  // read off the Pfaffian sign, matches p, otherwise the cheapest mode is
  // excited.
  double best = 0.0;
  bool first = true;
  for (int p : {+1, -1}) {
    Eigen::MatrixXd alpha = majorana_form(n, J, g, true, static_cast<double>(p));
    double eps_min = 0.0;
    double evac = vacuum_energy(alpha, &eps_min);
    int parity = pfaffian_sign(alpha);
    double e = (parity == 0 || parity == p) ? evac : evac + eps_min;
    if (first || e < best) best = e;
    first = false;
  }
  return best;
}

double tfim_dense_energy(int n, double J, double g, bool periodic) {
  int dim = 1 << n;
  check_cap(dim);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  auto zz = [&](int i, int j) {  // 1-based sites
    for (int idx = 0; idx < dim; ++idx) {
      int bi = (idx >> (n - i)) & 1, bj = (idx >> (n - j)) & 1;
      h(idx, idx) += J * ((bi == bj) ? 1.0 : -1.0);
    }
  };
  for (int i = 1; i < n; ++i) zz(i, i + 1);
  if (periodic) zz(n, 1);
  for (int i = 1; i <= n; ++i)
    for (int idx = 0; idx < dim; ++idx) h(idx ^ (1 << (n - i)), idx) -= g;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  return es.eigenvalues()[0];
}

}  // namespace oracle
}  // namespace liesim

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <string>
#include <vector>

#include "liesim/basis.hpp"

namespace liesim {

// Sparse structure constants f_{alpha beta}^gamma of a frozen basis under the
// engine bracket i[H_alpha, H_beta] = sum_gamma f H_gamma. Entries are stored
// for both orders with the sign flip mirrored.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  void add(int alpha, int beta, int gamma, double f);
  const std::vector<std::pair<int, double>>* row(int alpha, int beta) const;
  size_t nonzeros() const;

  // First line: JSON manifest with the basis; then one "alpha beta gamma f"
  // line per entry (0-based, shortest round-trip decimals).
  std::string export_text(const LieBasis& basis, const std::string& rep_name) const;

 private:
  int dim_ = 0;
  std::unordered_map<uint64_t, std::vector<std::pair<int, double>>> entries_;
};

// For all alpha < beta expands the bracket over the basis and stores the
// nonzero projections; throws when an output leaves the span, naming the
// offending pair.
StructureTensor structure_constants(const LieBasis& basis, const Representation& rep,
                                    int threads = 1);

// Adjoint generator of a Hamiltonian on the basis, stored in the normalized
// frame where compact-algebra generators are antisymmetric. Dense real-Schur
// data (orthogonal transform + 2x2 rotation blocks) backs an O(d^2)
// exponential action; large or irregular generators fall back to sparse
// scaling-and-squaring.
class AdjointGenerator {
 public:
  int dim() const { return static_cast<int>(mat_.rows()); }
  bool spectral() const { return spectral_; }
  const Eigen::SparseMatrix<double>& matrix() const { return mat_; }

  // y = exp(theta * Phi) x, or exp(theta * Phi)^T x when transpose is set.
  Eigen::VectorXd exp_action(double theta, const Eigen::VectorXd& x,
                             bool transpose = false) const;

  static AdjointGenerator from_matrix(Eigen::SparseMatrix<double> mat,
                                      int spectral_max_dim);

 private:
  void finalize(int spectral_max_dim);

  Eigen::SparseMatrix<double> mat_, mat_t_;
  bool spectral_ = false;
  Eigen::MatrixXd schur_u_;
  std::vector<std::pair<int, double>> rotations_;  // (block start row, omega)
};

// Builds Phi^ad(H) by direct bracket evaluation against every basis element.
// H is a coefficient map over labels; unknown labels raise a decomposition
// error. spectral_max_dim <= 0 forces the sparse path.
AdjointGenerator adjoint_of(const CoeffMap& h, const LieBasis& basis,
                            const Representation& rep, int spectral_max_dim = 512);

// Same from precomputed structure constants, h given in basis coordinates.
AdjointGenerator adjoint_from_tensor(const std::vector<double>& h_coeffs,
                                     const StructureTensor& tensor, const LieBasis& basis,
                                     int spectral_max_dim = 512);

// Layered gate program. Generators are coefficient maps over basis labels;
// layers list (generator id, parameter index) pairs in application order
// (first entry acts on the state first). Parameter indices must cover
// 0..M-1 densely; an id may appear many times and parameters may be shared.
struct CircuitSpec {
  std::vector<std::pair<std::string, CoeffMap>> generators;
  std::vector<std::pair<std::string, int>> layers;

  int num_params() const;                 // validates density
  const CoeffMap& generator(const std::string& id) const;

  std::string to_json() const;
  static CircuitSpec from_json(const std::string& text, const Representation& rep);
};

// Initial-state descriptor for coordinate extraction.
struct StateSpec {
  enum Kind { BasisString, PlusProduct, SectorIndex, Explicit };
  Kind kind = PlusProduct;
  std::string bits;             // BasisString: text over {0,1}, qubit 1 leftmost
  int sector_index = 1;         // SectorIndex: 1-based
  std::vector<double> coords;   // Explicit: basis coordinates

  static StateSpec basis_string(std::string b) { return {BasisString, std::move(b), 1, {}}; }
  static StateSpec plus_product() { return {PlusProduct, "", 1, {}}; }
  static StateSpec sector(int a) { return {SectorIndex, "", a, {}}; }
  static StateSpec explicit_coords(std::vector<double> c) {
    return {Explicit, "", 1, std::move(c)};
  }
};

// e_alpha = tr[H_alpha rho] for the supported analytic states; throws when a
// state kind is not expressible in the representation at hand.
Eigen::VectorXd state_coordinates(const StateSpec& state, const LieBasis& basis);

// Precompiled circuit over a frozen basis: caches one adjoint generator per
// distinct gate generator and propagates coordinate vectors through the gate
// exponentials in layer order.
class Simulator {
 public:
  Simulator(LieBasis basis, const Representation& rep, CircuitSpec circ,
            int spectral_max_dim = 512);

  int dim() const { return basis_.dim(); }
  int num_params() const { return num_params_; }
  const LieBasis& basis() const { return basis_; }
  bool all_spectral() const;

  Eigen::VectorXd propagate(const Eigen::VectorXd& params,
                            const Eigen::VectorXd& e_in) const;
  double expectation(const Eigen::VectorXd& w, const Eigen::VectorXd& e_out) const;
  double loss(const Eigen::VectorXd& params, const Eigen::VectorXd& e_in,
              const Eigen::VectorXd& w) const;
  // Exact gradient via one forward pass storing intermediates and one
  // reverse sweep; shared parameter indices accumulate.
  std::pair<double, Eigen::VectorXd> loss_and_gradient(const Eigen::VectorXd& params,
                                                       const Eigen::VectorXd& e_in,
                                                       const Eigen::VectorXd& w) const;

  // Expansion coefficients of an observable over the basis.
  Eigen::VectorXd observable_coords(const CoeffMap& op) const;

 private:
  LieBasis basis_;
  int num_params_ = 0;
  Eigen::VectorXd norm_;  // sqrt(norm_sq) per coordinate
  std::vector<AdjointGenerator> gens_;
  std::vector<std::pair<int, int>> gates_;  // (generator idx, param idx)
};

// Squared Hilbert-Schmidt mass of an operator inside the span of an
// orthonormalized basis: sum over |tr(B_gamma^dag H)|^2. Label components
// outside the basis contribute nothing.
double g_purity(const CoeffMap& h, const LieBasis& basis);

// Var = P_g(rho) * P_g(O) / dim(g).
double predict_variance(double rho_purity, double obs_purity, long long dim);

// Max |f_{ab}^e f_{ec}^d + f_{bc}^e f_{ea}^d + f_{ca}^e f_{eb}^d| over the
// given index triples (Jacobi identity residual).
double jacobi_residual(const StructureTensor& tensor,
                       const std::vector<std::array<int, 3>>& triples);

}  // namespace liesim

#pragma once

#include <Eigen/Dense>

#include "liesim/engine.hpp"

namespace liesim {
namespace oracle {

// Brute-force reference for small systems: explicit matrices for basis
// elements, generators, states and circuits. Qubit 1 maps to the most
// significant bit of the computational index.
inline constexpr int kDenseCap = 1 << 12;

struct DenseOperator {
  Eigen::MatrixXcd mat;
  bool hermitian = false;
  bool skew = false;
  int dim() const { return static_cast<int>(mat.rows()); }
};

// Native element per its defining formula: strings are Hermitian Paulis,
// cycles i*T(P), orbits i*S(P_pqr), MGGM elements the skew matrix units.
// space_dim is 2^n for the qubit representations and the sector dimension
// for MGGM labels.
DenseOperator materialize(const BasisElement& e, int space_dim);

// Hermitian operator attached to the element in the engine convention
// (-i times the native element when that one is skew).
Eigen::MatrixXcd materialize_hermitian(const BasisElement& e, int space_dim);
Eigen::MatrixXcd materialize_hermitian(const CoeffMap& op, int space_dim);

// Basis vector alpha of a frozen LieBasis as a dense Hermitian matrix.
Eigen::MatrixXcd materialize_basis_vector(const LieBasis& basis, int alpha,
                                          int space_dim);

Eigen::VectorXcd dense_state(const StateSpec& state, int space_dim);

// Graph state on n qubits from an edge list (1-based vertices).
Eigen::VectorXcd dense_graph_state(int n, const std::vector<std::pair<int, int>>& edges);

// tr[O U(params) rho U(params)^dag] by Schroedinger-picture evolution with
// exact gate exponentials (eigendecomposition of each Hermitian generator).
double dense_expectation(const CircuitSpec& circ, const Eigen::VectorXd& params,
                         const Eigen::VectorXcd& psi_in, const CoeffMap& observable,
                         int space_dim);

// Ground energy of H = J sum Z_i Z_{i+1} - g sum X_i on n sites via the
// 2n x 2n free-fermion (BdG) problem; periodic boundaries handled by the
// two fermionic sectors with the parity constraint. Conventions are pinned
// by the dense cross-check tests.
double tfim_exact_energy(int n, double J, double g, bool periodic);

// Dense reference for the same Hamiltonian (n small).
double tfim_dense_energy(int n, double J, double g, bool periodic);

// Sign of the Pfaffian of an even-dimensional real antisymmetric matrix
// (0 for numerically singular input).
int pfaffian_sign(Eigen::MatrixXd a);

}  // namespace oracle
}  // namespace liesim

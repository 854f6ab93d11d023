#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "liesim/basis.hpp"
#include "liesim/engine.hpp"

namespace liesim {
namespace experiments {

struct OptimizerSettings {
  int max_iterations = 2000;
  double grad_tol = 1e-9;
};

// ---------------------------------------------------------------------------
// Generator-set builders shared by experiments, CLI and tests.
// ---------------------------------------------------------------------------

// Edge-local set {X_i} + {Z_i Z_{i+1}} on the path or cycle graph.
std::vector<CoeffMap> tfim_free_generators(int n, bool periodic);
// Summed set {sum X_i, sum Z_i Z_{i+1}} over Pauli-string labels.
std::vector<CoeffMap> tfim_sum_generators(int n, bool periodic);
// Same two translation-invariant sums over cycle labels (periodic chain).
std::vector<CoeffMap> tfim_sum_generators_cycles(int n);
// Collective {B_{1,0,0}, B_{0,1,0}, B_{0,0,2}} orbit set.
std::vector<CoeffMap> peqnn_generators(int n);
// Universal two-qubit HW-preserving set over all qubit pairs. With
// sector_traceless the diagonal part is projected off the sector identity so
// the closure stays inside su(d).
std::vector<CoeffMap> hw_universal_generators(const SectorIndexer& idx,
                                              bool sector_traceless = true);

CoeffMap tfim_hamiltonian(int n, double J, double g, bool periodic);

// ---------------------------------------------------------------------------
// TFIM HVA optimization (free generator set, open chain) and its noise study.
// ---------------------------------------------------------------------------

struct TfimConfig {
  std::vector<int> sizes;
  int layers = -1;  // -1: L = n
  int runs = 10;
  uint64_t seed = 1;
  double J = 1.0, g = 1.0;
  std::vector<double> noise_sigmas;  // empty: noiseless
  OptimizerSettings opt;
  int threads = 0;  // 0: hardware concurrency
};

struct TfimRunRecord {
  int n = 0;
  double sigma = 0.0;
  int run = 0;
  double final_energy = 0.0;
  double exact_energy = 0.0;
  double rel_error = 0.0;
  bool converged = false;
  int iterations = 0;
  double wall_seconds = 0.0;
};

std::vector<TfimRunRecord> run_tfim(const TfimConfig& config);

// ---------------------------------------------------------------------------
// Permutation-equivariant QNN loss variance.
// ---------------------------------------------------------------------------

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // 1-based vertices
};

// Disconnected instances with component sizes <= max_component.
std::vector<Graph> random_disconnected_graphs(int n, int count, int max_component,
                                              uint64_t seed);

// Exact orbit coordinates of |G><G| by component-wise stabilizer enumeration
// combined across components.
Eigen::VectorXd graph_state_orbit_coords(const Graph& graph, const LieBasis& basis,
                                         int max_component = 10);

struct PeqnnConfig {
  std::vector<int> sizes;
  int samples = 2000;
  uint64_t seed = 1;
  bool deep_mode = false;
  double deep_factor = 10.0;  // deep: 3L ≈ deep_factor * dim
  int num_graphs = 10;
  int max_component = 10;
  int threads = 0;
};

struct PeqnnRecord {
  int n = 0;
  long long dim = 0;
  int layers = 0;
  int samples = 0;
  double empirical_variance = 0.0;
  double variance_se = 0.0;
  // Deep-limit prediction with the variance law applied per simple ideal of
  // the DLA (blocks from the adjoint Casimir); the single-quotient form is
  // kept alongside for reference.
  double predicted_variance = 0.0;
  double predicted_variance_naive = 0.0;
  double rho_purity = 0.0;
  double obs_purity = 0.0;
  double wall_seconds = 0.0;
};

std::vector<PeqnnRecord> run_peqnn_variance(const PeqnnConfig& config);

// ---------------------------------------------------------------------------
// Fixed-Hamming-weight q-Gaussian amplitude encoder.
// ---------------------------------------------------------------------------

struct HwEncoderConfig {
  int n = 20;
  int k = 2;
  double x_min = -2.0, x_max = 2.0;
};

struct HwEncoderRecord {
  int n = 0, k = 0, d = 0;
  double prob_sum = 0.0;
  double max_rel_error = 0.0;
  double wall_seconds = 0.0;
  std::vector<double> xs, probs, targets;
};

HwEncoderRecord run_hw_encoder(const HwEncoderConfig& config);

// ---------------------------------------------------------------------------
// Preprocessing benchmarks (timings reported, never asserted).
// ---------------------------------------------------------------------------

struct BenchConfig {
  std::string task;  // tfim-free | tfim-sums | tfim-cycles | orbit-full |
                     // orbit-targeted | mggm
  std::vector<int> sizes;
  bool periodic = false;  // tfim tasks
  int k = 1;              // mggm task
  int repeats = 3;
  int threads = 0;
};

struct BenchRecord {
  std::string task;
  int n = 0;
  long long dim = 0;
  size_t nonzeros = 0;
  double seconds = 0.0;        // mean over repeats
  uint64_t op_counter = 0;     // targeted candidate tables, when applicable
};

std::vector<BenchRecord> run_bench(const BenchConfig& config);

// Least-squares fit of t = a * n^b on the records; returns (b, stderr_b).
std::pair<double, double> fit_power_law(const std::vector<BenchRecord>& records);

}  // namespace experiments
}  // namespace liesim

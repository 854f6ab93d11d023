#include "liesim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "liesim/dense_oracle.hpp"
#include "liesim/optim.hpp"
#include "liesim/rng.hpp"

namespace liesim {
namespace experiments {

namespace {

uint64_t mix_seed(uint64_t a, uint64_t b, uint64_t c = 0, uint64_t d = 0) {
  Rng r(a);
  r.next_u64();
  uint64_t h = r.next_u64() ^ (b * 0x9e3779b97f4a7c15ull);
  h ^= (c + 0xbf58476d1ce4e5b9ull) * 0x94d049bb133111ebull;
  h ^= (d + 0x2545f4914f6cdd1dull) * 0xff51afd7ed558ccdull;
  return h;
}

void parallel_runs(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

PauliString single_site(int n, int site, Letter l) {
  PauliString p(n);
  p.set_letter(site, l);
  return p;
}

PauliString two_site(int n, int i, int j, Letter li, Letter lj) {
  PauliString p(n);
  p.set_letter(i, li);
  p.set_letter(j, lj);
  return p;
}

}  // namespace

std::vector<CoeffMap> tfim_free_generators(int n, bool periodic) {
  std::vector<CoeffMap> gens;
  for (int i = 0; i < n; ++i)
    gens.push_back({{BasisElement{single_site(n, i, Letter::X)}, 1.0}});
  int edges = periodic ? n : n - 1;
  for (int i = 0; i < edges; ++i)
    gens.push_back(
        {{BasisElement{two_site(n, i, (i + 1) % n, Letter::Z, Letter::Z)}, 1.0}});
  return gens;
}

std::vector<CoeffMap> tfim_sum_generators(int n, bool periodic) {
  CoeffMap xs, zzs;
  for (int i = 0; i < n; ++i) xs[BasisElement{single_site(n, i, Letter::X)}] = 1.0;
  int edges = periodic ? n : n - 1;
  for (int i = 0; i < edges; ++i)
    zzs[BasisElement{two_site(n, i, (i + 1) % n, Letter::Z, Letter::Z)}] = 1.0;
  return {xs, zzs};
}

std::vector<CoeffMap> tfim_sum_generators_cycles(int n) {
  // sum_i X_i = n * T(X I...I), sum_i Z_i Z_{i+1} = n * T(Z Z I...I).
  CoeffMap xs = {
      {BasisElement{cycle_canonicalize(single_site(n, 0, Letter::X))}, double(n)}};
  CoeffMap zzs = {
      {BasisElement{cycle_canonicalize(two_site(n, 0, 1, Letter::Z, Letter::Z))},
       double(n)}};
  return {xs, zzs};
}

std::vector<CoeffMap> peqnn_generators(int n) {
  return {{{BasisElement{OrbitLabel{n, 1, 0, 0}}, 1.0}},
          {{BasisElement{OrbitLabel{n, 0, 1, 0}}, 1.0}},
          {{BasisElement{OrbitLabel{n, 0, 0, 2}}, 1.0}}};
}

std::vector<CoeffMap> hw_universal_generators(const SectorIndexer& idx,
                                              bool sector_traceless) {
  std::vector<CoeffMap> gens;
  int n = idx.num_qubits(), d = idx.dim();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      HWGeneratorSpec spec{i, j, 0.37, 0.21, 0.53, 0.71};
      MggmSum sum = restrict_generator(spec, idx);
      CoeffMap map;
      double trace = 0.0;
      for (const auto& [e, c] : sum.terms()) {
        map[BasisElement{e}] = c;
        if (e.kind == MggmElement::P) trace += c;
      }
      if (sector_traceless && std::abs(trace) > kCoeffTol) {
        double shift = trace / d;
        for (int a = 1; a <= d; ++a) {
          auto& slot = map[BasisElement{mggm_p(a)}];
          slot -= shift;
          if (std::abs(slot) <= kCoeffTol) map.erase(BasisElement{mggm_p(a)});
        }
      }
      if (!map.empty()) gens.push_back(std::move(map));
    }
  }
  return gens;
}

CoeffMap tfim_hamiltonian(int n, double J, double g, bool periodic) {
  CoeffMap h;
  int edges = periodic ? n : n - 1;
  for (int i = 0; i < edges; ++i)
    h[BasisElement{two_site(n, i, (i + 1) % n, Letter::Z, Letter::Z)}] = J;
  for (int i = 0; i < n; ++i) h[BasisElement{single_site(n, i, Letter::X)}] = -g;
  return h;
}

std::vector<TfimRunRecord> run_tfim(const TfimConfig& config) {
  std::vector<TfimRunRecord> records;
  if (config.runs <= 0) return records;

  for (int n : config.sizes) {
    if (n < 2) throw std::invalid_argument("TFIM needs n >= 2");
    int expected_dim = n * (2 * n - 1);
    Representation rep = pauli_representation(n);
    LieBasis basis = lie_closure(tfim_free_generators(n, false), rep, expected_dim + 16);

    int num_gens = 2 * n - 1;
    int layers = config.layers > 0 ? config.layers : n;
    CircuitSpec circ;
    auto free_gens = tfim_free_generators(n, false);
    for (int k = 0; k < num_gens; ++k)
      circ.generators.emplace_back("g" + std::to_string(k), free_gens[k]);
    for (int l = 0; l < layers; ++l)
      for (int k = 0; k < num_gens; ++k)
        circ.layers.emplace_back("g" + std::to_string(k), l * num_gens + k);

    Simulator sim(basis, rep, circ);
    Eigen::VectorXd e_in = state_coordinates(StateSpec::plus_product(), sim.basis());
    Eigen::VectorXd w =
        sim.observable_coords(tfim_hamiltonian(n, config.J, config.g, false));
    double exact = oracle::tfim_exact_energy(n, config.J, config.g, false);

    std::vector<double> sigmas =
        config.noise_sigmas.empty() ? std::vector<double>{0.0} : config.noise_sigmas;
    for (size_t si = 0; si < sigmas.size(); ++si) {
      double sigma = sigmas[si];
      std::vector<TfimRunRecord> batch(config.runs);
      parallel_runs(config.runs, config.threads, [&](int run) {
        double start = now_seconds();
        Rng init_rng(mix_seed(config.seed, n, si, run));
        Rng noise_rng(mix_seed(config.seed, n, si, run) ^ 0x6a09e667f3bcc908ull);
        int m = sim.num_params();
        Eigen::VectorXd x0(m);
        for (int i = 0; i < m; ++i)
          x0[i] = init_rng.uniform(0.0, 6.283185307179586476925286766559);

        ObjectiveFn objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
          double value;
          if (grad) {
            auto [v, gvec] = sim.loss_and_gradient(x, e_in, w);
            value = v;
            *grad = gvec;
            if (sigma > 0)
              for (int i = 0; i < grad->size(); ++i)
                (*grad)[i] += sigma * noise_rng.gaussian();
          } else {
            value = sim.loss(x, e_in, w);
          }
          if (sigma > 0) value += sigma * noise_rng.gaussian();
          return value;
        };
        OptimResult res = minimize_bfgs(objective, x0, config.opt.max_iterations,
                                        config.opt.grad_tol);
        TfimRunRecord rec;
        rec.n = n;
        rec.sigma = sigma;
        rec.run = run;
        rec.final_energy = sim.loss(res.x, e_in, w);  // noise-free readout
        rec.exact_energy = exact;
        rec.rel_error = std::abs(rec.final_energy - exact) / std::abs(exact);
        rec.converged = res.converged;
        rec.iterations = res.iterations;
        rec.wall_seconds = now_seconds() - start;
        batch[run] = rec;
      });
      records.insert(records.end(), batch.begin(), batch.end());
    }
  }
  return records;
}

namespace {

std::vector<std::vector<int>> connected_components(const Graph& graph) {
  std::vector<std::vector<int>> adj(graph.n + 1);
  for (const auto& [u, v] : graph.edges) {
    if (u < 1 || v < 1 || u > graph.n || v > graph.n || u == v)
      throw std::invalid_argument("invalid edge");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> comp(graph.n + 1, -1);
  std::vector<std::vector<int>> comps;
  for (int v = 1; v <= graph.n; ++v) {
    if (comp[v] >= 0) continue;
    int id = static_cast<int>(comps.size());
    comps.emplace_back();
    std::vector<int> stack = {v};
    comp[v] = id;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comps[id].push_back(u);
      for (int w : adj[u]) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(comps[id].begin(), comps[id].end());
  }
  return comps;
}

// Letter codes 0=I,1=X,2=Y,3=Z; product sigma_a sigma_b = i^phi sigma_{a^b}.
int letter_phase(int a, int b) {
  if (a == 0 || b == 0 || a == b) return 0;
  return b == (a % 3) + 1 ? 1 : 3;
}

struct OrbitKey {
  int p, q, r;
  bool operator<(const OrbitKey& o) const {
    if (p != o.p) return p < o.p;
    if (q != o.q) return q < o.q;
    return r < o.r;
  }
};

// Signed letter-count histogram of a component's stabilizer group.
std::map<OrbitKey, double> component_histogram(const std::vector<int>& vertices,
                                               const Graph& graph) {
  int nc = static_cast<int>(vertices.size());
  std::vector<int> local(graph.n + 1, -1);
  for (int i = 0; i < nc; ++i) local[vertices[i]] = i;

  // Stabilizer generators: X on v, Z on its neighbours.
  std::vector<std::vector<int>> gen_letters(nc, std::vector<int>(nc, 0));
  for (int i = 0; i < nc; ++i) gen_letters[i][i] = 1;
  for (const auto& [u, v] : graph.edges) {
    if (local[u] < 0 || local[v] < 0) continue;
    auto bump = [&](int g, int site) { gen_letters[g][site] ^= 3; };
    bump(local[u], local[v]);
    bump(local[v], local[u]);
  }

  std::map<OrbitKey, double> hist;
  std::vector<int> cur(nc);
  for (uint32_t mask = 0; mask < (uint32_t{1} << nc); ++mask) {
    std::fill(cur.begin(), cur.end(), 0);
    int phase = 0;
    for (int g = 0; g < nc; ++g) {
      if (!((mask >> g) & 1)) continue;
      for (int s = 0; s < nc; ++s) {
        phase = (phase + letter_phase(cur[s], gen_letters[g][s])) % 4;
        cur[s] ^= gen_letters[g][s];
      }
    }
    if (phase % 2 != 0) throw std::logic_error("non-real stabilizer phase");
    OrbitKey key{0, 0, 0};
    for (int s = 0; s < nc; ++s) {
      if (cur[s] == 1) ++key.p;
      if (cur[s] == 2) ++key.q;
      if (cur[s] == 3) ++key.r;
    }
    hist[key] += (phase == 0) ? 1.0 : -1.0;
  }
  return hist;
}

}  // namespace

std::vector<Graph> random_disconnected_graphs(int n, int count, int max_component,
                                              uint64_t seed) {
  if (n < 2) throw std::invalid_argument("graphs need n >= 2");
  std::vector<Graph> graphs;
  for (int gi = 0; gi < count; ++gi) {
    Rng rng(mix_seed(seed, 0x97, n, gi));
    Graph g;
    g.n = n;
    // Partition vertices into >= 2 blocks no larger than max_component, then
    // sprinkle edges inside blocks.
    std::vector<std::vector<int>> blocks;
    std::vector<int> verts(n);
    std::iota(verts.begin(), verts.end(), 1);
    for (int i = n - 1; i > 0; --i) std::swap(verts[i], verts[rng.uniform_int(0, i)]);
    size_t pos = 0;
    while (pos < verts.size()) {
      int remaining = static_cast<int>(verts.size() - pos);
      int cap = std::min(max_component, remaining);
      int size = (blocks.empty() && remaining > 1)
                     ? rng.uniform_int(1, std::min(cap, remaining - 1))
                     : rng.uniform_int(1, cap);
      blocks.emplace_back(verts.begin() + pos, verts.begin() + pos + size);
      pos += size;
    }
    for (const auto& block : blocks) {
      for (size_t i = 0; i < block.size(); ++i)
        for (size_t j = i + 1; j < block.size(); ++j)
          if (rng.uniform() < 0.5) g.edges.emplace_back(block[i], block[j]);
    }
    graphs.push_back(std::move(g));
  }
  return graphs;
}

Eigen::VectorXd graph_state_orbit_coords(const Graph& graph, const LieBasis& basis,
                                         int max_component) {
  auto comps = connected_components(graph);
  for (const auto& c : comps)
    if (static_cast<int>(c.size()) > max_component)
      throw std::invalid_argument("graph component exceeds " +
                                  std::to_string(max_component) + " vertices");

  std::map<OrbitKey, double> acc = {{OrbitKey{0, 0, 0}, 1.0}};
  for (const auto& c : comps) {
    auto hist = component_histogram(c, graph);
    std::map<OrbitKey, double> next;
    for (const auto& [k1, v1] : acc)
      for (const auto& [k2, v2] : hist)
        next[OrbitKey{k1.p + k2.p, k1.q + k2.q, k1.r + k2.r}] += v1 * v2;
    acc = std::move(next);
  }

  std::vector<double> label_values(basis.labels().size(), 0.0);
  for (size_t i = 0; i < basis.labels().size(); ++i) {
    const auto* l = std::get_if<OrbitLabel>(&basis.labels()[i]);
    if (!l) throw std::invalid_argument("graph-state coordinates need an orbit basis");
    auto it = acc.find(OrbitKey{l->p, l->q, l->r});
    if (it != acc.end())
      label_values[i] = it->second / orbit_term_count_big(*l).get_d();
  }
  auto coords = basis.coords_from_label_values(label_values);
  return Eigen::Map<const Eigen::VectorXd>(coords.data(), coords.size());
}

namespace {

std::vector<BasisElement> all_orbit_labels(int n) {
  std::vector<BasisElement> labels;
  for (int w = 1; w <= n; ++w)
    for (int p = 0; p <= w; ++p)
      for (int q = 0; q + p <= w; ++q)
        labels.push_back(OrbitLabel{n, p, q, w - p - q});
  return labels;
}

}  // namespace

namespace {

// Var = sum over simple ideals of P_ideal(rho) P_ideal(O) / dim(ideal). The
// ideal blocks are the nonzero eigenspaces of the adjoint Casimir
// sum_alpha ad(B_alpha)^2 over an orthonormalized basis; the kernel is the
// center and contributes nothing.
double ideal_resolved_variance(const LieBasis& basis, const Representation& rep,
                               const Eigen::VectorXd& e_hat,
                               const Eigen::VectorXd& w_hat) {
  int d = basis.dim();
  Eigen::MatrixXd casimir = Eigen::MatrixXd::Zero(d, d);
  for (int alpha = 0; alpha < d; ++alpha) {
    CoeffMap h;
    if (basis.is_label_basis())
      h[basis.labels()[alpha]] = 1.0 / std::sqrt(basis.norm_sq(alpha));
    else
      for (const auto& [li, c] : basis.vectors()[alpha]) h[basis.labels()[li]] = c;
    AdjointGenerator gen = adjoint_of(h, basis, rep, /*spectral_max_dim=*/0);
    Eigen::MatrixXd m(gen.matrix());
    casimir += m * m;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(casimir);
  const auto& vals = es.eigenvalues();
  double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());

  double prediction = 0.0;
  int i = 0;
  while (i < d) {
    int j = i;
    while (j < d && std::abs(vals[j] - vals[i]) <= 1e-6 * scale) ++j;
    if (std::abs(vals[i]) > 1e-6 * scale) {
      Eigen::MatrixXd block = es.eigenvectors().middleCols(i, j - i);
      double p_rho = (block.transpose() * e_hat).squaredNorm();
      double p_obs = (block.transpose() * w_hat).squaredNorm();
      prediction += p_rho * p_obs / static_cast<double>(j - i);
    }
    i = j;
  }
  return prediction;
}

}  // namespace

std::vector<PeqnnRecord> run_peqnn_variance(const PeqnnConfig& config) {
  std::vector<PeqnnRecord> records;
  for (int n : config.sizes) {
    double start = now_seconds();
    auto f = std::make_shared<FactorialTable>(n);
    Representation rep = orbit_representation(n, f);
    LieBasis basis = LieBasis::from_labels(all_orbit_labels(n), rep);
    long long dim = basis.dim();

    int layers = config.deep_mode
                     ? static_cast<int>(
                           std::ceil(config.deep_factor * double(dim) / 3.0))
                     : static_cast<int>(std::ceil(double(dim) / 3.0));
    CircuitSpec circ;
    auto gens = peqnn_generators(n);
    circ.generators.emplace_back("X", gens[0]);
    circ.generators.emplace_back("Y", gens[1]);
    circ.generators.emplace_back("ZZ", gens[2]);
    const char* ids[3] = {"X", "Y", "ZZ"};
    for (int l = 0; l < layers; ++l)
      for (int k = 0; k < 3; ++k) circ.layers.emplace_back(ids[k], 3 * l + k);

    Simulator sim(basis, rep, circ);

    auto graphs = random_disconnected_graphs(n, config.num_graphs,
                                             config.max_component, config.seed);
    Eigen::VectorXd e_eff = Eigen::VectorXd::Zero(basis.dim());
    for (const auto& g : graphs)
      e_eff -= graph_state_orbit_coords(g, basis, config.max_component);
    e_eff /= static_cast<double>(graphs.size());

    CoeffMap obs = {{BasisElement{OrbitLabel{n, 2, 0, 0}}, 1.0}};
    Eigen::VectorXd w = sim.observable_coords(obs);

    Eigen::VectorXd norms(basis.dim());
    for (int i = 0; i < basis.dim(); ++i) norms[i] = std::sqrt(basis.norm_sq(i));
    Eigen::VectorXd e_hat = e_eff.cwiseQuotient(norms);
    Eigen::VectorXd w_hat = w.cwiseProduct(norms);
    double rho_purity = e_hat.squaredNorm();
    double obs_purity = w_hat.squaredNorm();
    double pred_blocks = ideal_resolved_variance(basis, rep, e_hat, w_hat);

    std::vector<double> losses(config.samples);
    parallel_runs(config.samples, config.threads, [&](int s) {
      Rng rng(mix_seed(config.seed, n, 0x5e, s));
      Eigen::VectorXd theta(sim.num_params());
      for (int i = 0; i < theta.size(); ++i)
        theta[i] = rng.uniform(0.0, 6.283185307179586476925286766559);
      losses[s] = sim.loss(theta, e_eff, w);
    });

    double mean = std::accumulate(losses.begin(), losses.end(), 0.0) / losses.size();
    double m2 = 0.0, m4 = 0.0;
    for (double v : losses) {
      double dlt = v - mean;
      m2 += dlt * dlt;
      m4 += dlt * dlt * dlt * dlt;
    }
    size_t s_count = losses.size();
    double var = m2 / (s_count - 1);
    m2 /= s_count;
    m4 /= s_count;
    double se = std::sqrt(std::max(
        0.0, (m4 - (double(s_count) - 3.0) / (double(s_count) - 1.0) * m2 * m2) /
                 s_count));

    PeqnnRecord rec;
    rec.n = n;
    rec.dim = dim;
    rec.layers = layers;
    rec.samples = config.samples;
    rec.empirical_variance = var;
    rec.variance_se = se;
    rec.rho_purity = rho_purity;
    rec.obs_purity = obs_purity;
    rec.predicted_variance = pred_blocks;
    rec.predicted_variance_naive = predict_variance(rho_purity, obs_purity, dim);
    rec.wall_seconds = now_seconds() - start;
    records.push_back(rec);
  }
  return records;
}

HwEncoderRecord run_hw_encoder(const HwEncoderConfig& config) {
  double start = now_seconds();
  if (config.k < 1 || config.n < config.k)
    throw std::invalid_argument("encoder needs 1 <= k <= n");
  SectorIndexer idx(config.n, config.k, SectorOrder::RevolvingDoor);
  int d = idx.dim();
  if (d < 2) throw std::invalid_argument("encoder needs a sector of dimension >= 2");

  HwEncoderRecord rec;
  rec.n = config.n;
  rec.k = config.k;
  rec.d = d;
  rec.xs.resize(d);
  rec.targets.resize(d);
  double total = 0.0;
  for (int j = 0; j < d; ++j) {
    double x = config.x_min + (config.x_max - config.x_min) * j / (d - 1);
    rec.xs[j] = x;
    rec.targets[j] = std::pow(1.0 + x * x, -2.0);
    total += rec.targets[j];
  }
  if (total <= 0.0) throw std::invalid_argument("zero-norm amplitude vector");
  std::vector<double> amps(d);
  for (int j = 0; j < d; ++j) {
    rec.targets[j] /= total;
    amps[j] = std::sqrt(rec.targets[j]);
  }

  // Hyperspherical angles along the revolving-door sequence.
  std::vector<double> tail_sq(d + 1, 0.0);
  for (int j = d - 1; j >= 0; --j) tail_sq[j] = tail_sq[j + 1] + amps[j] * amps[j];
  std::vector<double> angles(d - 1);
  for (int j = 0; j + 2 < d; ++j) angles[j] = std::atan2(std::sqrt(tail_sq[j + 1]), amps[j]);
  angles[d - 2] = std::atan2(amps[d - 1], amps[d - 2]);

  std::vector<BasisElement> labels;
  labels.reserve(d + d * (d - 1) / 2);
  for (int a = 1; a <= d; ++a) labels.push_back(mggm_p(a));
  for (int a = 1; a <= d; ++a)
    for (int b = a + 1; b <= d; ++b) labels.push_back(mggm_s(a, b));
  Representation rep = mggm_representation(config.n, config.k);
  LieBasis basis = LieBasis::from_labels(labels, rep);

  CircuitSpec circ;
  for (int m = 1; m < d; ++m) {
    circ.generators.emplace_back("rbs" + std::to_string(m),
                                 CoeffMap{{BasisElement{mggm_a(m, m + 1)}, 1.0}});
    circ.layers.emplace_back("rbs" + std::to_string(m), m - 1);
  }
  // The sparse exponential path handles the large S+P space; dense Schur data
  // is only worthwhile for tiny sectors.
  Simulator sim(basis, rep, circ, /*spectral_max_dim=*/64);

  Eigen::VectorXd e_in = state_coordinates(StateSpec::sector(1), basis);
  Eigen::VectorXd params =
      Eigen::Map<const Eigen::VectorXd>(angles.data(), static_cast<int>(angles.size()));
  Eigen::VectorXd e_out = sim.propagate(params, e_in);

  rec.probs.resize(d);
  rec.prob_sum = 0.0;
  rec.max_rel_error = 0.0;
  for (int a = 1; a <= d; ++a) {
    double p = e_out[basis.label_index(BasisElement{mggm_p(a)})];
    rec.probs[a - 1] = p;
    rec.prob_sum += p;
    rec.max_rel_error =
        std::max(rec.max_rel_error, std::abs(p - rec.targets[a - 1]) / rec.targets[a - 1]);
  }
  rec.wall_seconds = now_seconds() - start;
  return rec;
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  std::vector<BenchRecord> records;
  for (int n : config.sizes) {
    BenchRecord rec;
    rec.task = config.task;
    rec.n = n;
    double total = 0.0;
    for (int repeat = 0; repeat < std::max(1, config.repeats); ++repeat) {
      double t0 = now_seconds();
      if (config.task == "tfim-free" || config.task == "tfim-sums") {
        Representation rep = pauli_representation(n);
        auto gens = config.task == "tfim-free"
                        ? tfim_free_generators(n, config.periodic)
                        : tfim_sum_generators(n, config.periodic);
        LieBasis basis = lie_closure(gens, rep, 4 * n * n + 16);
        StructureTensor tensor = structure_constants(basis, rep, config.threads);
        rec.dim = basis.dim();
        rec.nonzeros = tensor.nonzeros();
      } else if (config.task == "tfim-cycles") {
        Representation rep = cycle_representation(n);
        LieBasis basis = lie_closure(tfim_sum_generators_cycles(n), rep, 4 * n + 16);
        StructureTensor tensor = structure_constants(basis, rep, config.threads);
        rec.dim = basis.dim();
        rec.nonzeros = tensor.nonzeros();
      } else if (config.task == "orbit-full") {
        auto f = std::make_shared<FactorialTable>(n);
        Representation rep = orbit_representation(n, f);
        LieBasis basis = LieBasis::from_labels(all_orbit_labels(n), rep);
        StructureTensor tensor = structure_constants(basis, rep, config.threads);
        rec.dim = basis.dim();
        rec.nonzeros = tensor.nonzeros();
      } else if (config.task == "orbit-targeted") {
        // Adjoint rows of the collective generators over the full orbit
        // basis; outputs of a bounded-weight bracket live in the weight
        // window of the partner label.
        FactorialTable f(n);
        auto labels = all_orbit_labels(n);
        uint64_t counter = 0;
        size_t nnz = 0;
        auto gens = peqnn_generators(n);
        for (const auto& gen : gens) {
          const auto& mu = std::get<OrbitLabel>(gen.begin()->first);
          for (const auto& le : labels) {
            const auto& alpha = std::get<OrbitLabel>(le);
            int wmax = mu.weight();
            std::vector<OrbitLabel> targets;
            for (int dp = -wmax; dp <= wmax; ++dp)
              for (int dq = -wmax; dq <= wmax; ++dq)
                for (int dr = -wmax; dr <= wmax; ++dr) {
                  OrbitLabel t{n, alpha.p + dp, alpha.q + dq, alpha.r + dr};
                  if (t.valid() && !t.is_identity()) targets.push_back(t);
                }
            nnz += orbit_bracket_targeted(mu, alpha, targets, f, &counter).size();
          }
        }
        rec.dim = static_cast<long long>(labels.size());
        rec.nonzeros = nnz;
        rec.op_counter = counter;
      } else if (config.task == "mggm") {
        SectorIndexer idx(n, config.k);
        auto entries = mggm_structure_constants(idx.dim());
        rec.dim = static_cast<long long>(idx.dim()) * idx.dim();
        rec.nonzeros = entries.size();
      } else {
        throw std::invalid_argument("unknown bench task: " + config.task);
      }
      total += now_seconds() - t0;
    }
    rec.seconds = total / std::max(1, config.repeats);
    records.push_back(rec);
  }
  return records;
}

std::pair<double, double> fit_power_law(const std::vector<BenchRecord>& records) {
  size_t m = records.size();
  if (m < 2) return {0.0, 0.0};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : records) {
    double x = std::log(double(r.n)), y = std::log(std::max(r.seconds, 1e-12));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = m * sxx - sx * sx;
  double b = (m * sxy - sx * sy) / denom;
  double a = (sy - b * sx) / m;
  double ss = 0, sxm = 0;
  for (const auto& r : records) {
    double x = std::log(double(r.n)), y = std::log(std::max(r.seconds, 1e-12));
    double resid = y - (a + b * x);
    ss += resid * resid;
    sxm += (x - sx / m) * (x - sx / m);
  }
  double se = m > 2 ? std::sqrt(ss / (m - 2) / sxm) : 0.0;
  return {b, se};
}

}  // namespace experiments
}  // namespace liesim

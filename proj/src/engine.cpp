#include "liesim/engine.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace liesim {

namespace {

std::string shortest_double(double v) {
  std::array<char, 64> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

void StructureTensor::add(int alpha, int beta, int gamma, double f) {
  uint64_t key = static_cast<uint64_t>(alpha) * static_cast<uint64_t>(dim_) +
                 static_cast<uint64_t>(beta);
  entries_[key].emplace_back(gamma, f);
}

const std::vector<std::pair<int, double>>* StructureTensor::row(int alpha,
                                                                int beta) const {
  uint64_t key = static_cast<uint64_t>(alpha) * static_cast<uint64_t>(dim_) +
                 static_cast<uint64_t>(beta);
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

size_t StructureTensor::nonzeros() const {
  size_t count = 0;
  for (const auto& [k, v] : entries_) count += v.size();
  return count;
}

std::string StructureTensor::export_text(const LieBasis& basis,
                                         const std::string& rep_name) const {
  nlohmann::json manifest;
  manifest["dim"] = dim_;
  manifest["representation"] = rep_name;
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& e : basis.labels()) labels.push_back(element_str(e));
  manifest["labels"] = labels;
  if (!basis.is_label_basis()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : basis.vectors()) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& [li, c] : row) r.push_back({li, c});
      rows.push_back(r);
    }
    manifest["vectors"] = rows;
  }

  std::string out = manifest.dump();
  out.push_back('\n');
  std::vector<uint64_t> keys;
  keys.reserve(entries_.size());
  for (const auto& [k, v] : entries_) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (uint64_t k : keys) {
    int alpha = static_cast<int>(k / dim_);
    int beta = static_cast<int>(k % dim_);
    for (const auto& [gamma, f] : entries_.at(k)) {
      out += std::to_string(alpha) + " " + std::to_string(beta) + " " +
             std::to_string(gamma) + " " + shortest_double(f) + "\n";
    }
  }
  return out;
}

namespace {

// Expansion of i[B_alpha, B_beta] in label coordinates for one basis pair.
std::map<int, double> pair_bracket_labels(const LieBasis& basis, const Representation& rep,
                                          int alpha, int beta) {
  std::map<int, double> acc;
  auto add_terms = [&](double scale, const BasisElement& a, const BasisElement& b) {
    for (const auto& [e, c] : rep.bracket(a, b)) {
      int li = basis.label_index(e);
      if (li < 0)
        throw std::runtime_error("closure violation: bracket of basis pair (" +
                                 std::to_string(alpha) + "," + std::to_string(beta) +
                                 ") leaves the span at " + element_str(e));
      acc[li] += scale * c;
    }
  };
  if (basis.is_label_basis()) {
    add_terms(1.0, basis.labels()[alpha], basis.labels()[beta]);
  } else {
    const auto& u = basis.vectors()[alpha];
    const auto& v = basis.vectors()[beta];
    for (const auto& [li, cu] : u)
      for (const auto& [lj, cv] : v)
        add_terms(cu * cv, basis.labels()[li], basis.labels()[lj]);
  }
  return acc;
}

std::vector<std::pair<int, double>> project_on_basis(const LieBasis& basis,
                                                     const std::map<int, double>& labels,
                                                     int alpha, int beta) {
  std::vector<std::pair<int, double>> out;
  if (basis.is_label_basis()) {
    out.reserve(labels.size());
    for (const auto& [li, c] : labels)
      if (std::abs(c) > kCoeffTol) out.emplace_back(li, c);
    return out;
  }
  double total_sq = 0.0;
  for (const auto& [li, c] : labels) total_sq += c * c * basis.label_norm_sq(li);
  double captured = 0.0;
  for (size_t g = 0; g < basis.vectors().size(); ++g) {
    double f = 0.0;
    for (const auto& [li, c] : basis.vectors()[g]) {
      auto it = labels.find(li);
      if (it != labels.end()) f += c * it->second * basis.label_norm_sq(li);
    }
    if (std::abs(f) > kCoeffTol) {
      out.emplace_back(static_cast<int>(g), f);
      captured += f * f;
    }
  }
  if (total_sq - captured > 1e-16 + 1e-9 * total_sq)
    throw std::runtime_error("closure violation: bracket of basis pair (" +
                             std::to_string(alpha) + "," + std::to_string(beta) +
                             ") leaves the span");
  return out;
}

}  // namespace

StructureTensor structure_constants(const LieBasis& basis, const Representation& rep,
                                    int threads) {
  int d = basis.dim();
  StructureTensor tensor(d);
  std::vector<std::vector<std::tuple<int, int, int, double>>> shards;

  auto work = [&](int a_begin, int a_end,
                  std::vector<std::tuple<int, int, int, double>>& out) {
    for (int alpha = a_begin; alpha < a_end; ++alpha) {
      for (int beta = alpha + 1; beta < d; ++beta) {
        auto labels = pair_bracket_labels(basis, rep, alpha, beta);
        for (const auto& [gamma, f] : project_on_basis(basis, labels, alpha, beta))
          out.emplace_back(alpha, beta, gamma, f);
      }
    }
  };

  threads = std::max(1, threads);
  if (threads == 1 || d < 16) {
    shards.resize(1);
    work(0, d, shards[0]);
  } else {
    shards.resize(threads);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    // Interleaved row blocks balance the triangular workload well enough.
    int chunk = (d + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(t * chunk, std::min(d, (t + 1) * chunk), shards[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  for (const auto& shard : shards) {
    for (const auto& [alpha, beta, gamma, f] : shard) {
      tensor.add(alpha, beta, gamma, f);
      tensor.add(beta, alpha, gamma, -f);
    }
  }
  return tensor;
}

AdjointGenerator AdjointGenerator::from_matrix(Eigen::SparseMatrix<double> mat,
                                               int spectral_max_dim) {
  AdjointGenerator gen;
  gen.mat_ = std::move(mat);
  gen.finalize(spectral_max_dim);
  return gen;
}

void AdjointGenerator::finalize(int spectral_max_dim) {
  mat_.makeCompressed();
  mat_t_ = mat_.transpose();
  mat_t_.makeCompressed();
  int d = dim();
  if (d < 1 || d > spectral_max_dim) return;

  Eigen::MatrixXd dense = Eigen::MatrixXd(mat_);
  double scale = dense.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    spectral_ = true;
    schur_u_ = Eigen::MatrixXd::Identity(d, d);
    return;
  }
  if ((dense + dense.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + scale)) return;

  Eigen::RealSchur<Eigen::MatrixXd> schur(dense);
  if (schur.info() != Eigen::Success) return;
  Eigen::MatrixXd t = schur.matrixT();
  Eigen::MatrixXd u = schur.matrixU();

  // Antisymmetric input makes T block diagonal with 2x2 rotation generators;
  // bail out to the sparse path when that structure is not met cleanly.
  std::vector<std::pair<int, double>> rots;
  int i = 0;
  while (i < d) {
    if (i + 1 < d && std::abs(t(i + 1, i)) > 1e-12 * scale) {
      double omega = t(i, i + 1);
      if (std::abs(t(i + 1, i) + omega) > 1e-8 * scale) return;
      if (std::abs(t(i, i)) > 1e-8 * scale || std::abs(t(i + 1, i + 1)) > 1e-8 * scale)
        return;
      rots.emplace_back(i, omega);
      i += 2;
    } else {
      if (std::abs(t(i, i)) > 1e-8 * scale) return;
      ++i;
    }
  }
  for (int r = 0; r < d; ++r) {
    for (int c = r + 1; c < d; ++c) {
      bool same_block = false;
      for (const auto& [start, w] : rots)
        if (r == start && c == start + 1) same_block = true;
      if (!same_block && std::abs(t(r, c)) > 1e-8 * scale) return;
    }
  }
  spectral_ = true;
  schur_u_ = std::move(u);
  rotations_ = std::move(rots);
}

Eigen::VectorXd AdjointGenerator::exp_action(double theta, const Eigen::VectorXd& x,
                                             bool transpose) const {
  if (!std::isfinite(theta)) throw std::invalid_argument("non-finite gate angle");
  if (x.size() != dim()) throw std::invalid_argument("coordinate length mismatch");
  if (theta == 0.0) return x;

  if (spectral_) {
    Eigen::VectorXd w = schur_u_.transpose() * x;
    double sign = transpose ? -1.0 : 1.0;
    for (const auto& [i, omega] : rotations_) {
      double c = std::cos(theta * omega), s = sign * std::sin(theta * omega);
      double wi = w[i], wj = w[i + 1];
      w[i] = c * wi + s * wj;
      w[i + 1] = -s * wi + c * wj;
    }
    return schur_u_ * w;
  }

  // Scaling and squaring on the action: split theta so each Taylor stage has
  // small norm, then iterate the stages.
  const Eigen::SparseMatrix<double>& m = transpose ? mat_t_ : mat_;
  double norm1 = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    double col = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
      col += std::abs(it.value());
    norm1 = std::max(norm1, col);
  }
  int stages = std::max(1, static_cast<int>(std::ceil(std::abs(theta) * norm1 / 0.5)));
  double h = theta / stages;
  Eigen::VectorXd y = x;
  for (int s = 0; s < stages; ++s) {
    Eigen::VectorXd term = y;
    Eigen::VectorXd acc = y;
    for (int k = 1; k <= 64; ++k) {
      term = (m * term) * (h / k);
      acc += term;
      if (term.cwiseAbs().maxCoeff() <= 1e-17 * (1.0 + acc.cwiseAbs().maxCoeff())) break;
    }
    y = acc;
  }
  return y;
}

namespace {

AdjointGenerator build_adjoint(const LieBasis& basis,
                               const std::function<std::map<int, double>(int)>& row_of,
                               int spectral_max_dim) {
  int d = basis.dim();
  std::vector<Eigen::Triplet<double>> trips;
  for (int alpha = 0; alpha < d; ++alpha) {
    double inv_na = 1.0 / std::sqrt(basis.norm_sq(alpha));
    for (const auto& [beta, f] : row_of(alpha)) {
      double val = f * std::sqrt(basis.norm_sq(beta)) * inv_na;
      if (std::abs(val) > kCoeffTol) trips.emplace_back(alpha, beta, val);
    }
  }
  Eigen::SparseMatrix<double> mat(d, d);
  mat.setFromTriplets(trips.begin(), trips.end());
  return AdjointGenerator::from_matrix(std::move(mat), spectral_max_dim);
}

}  // namespace

AdjointGenerator adjoint_of(const CoeffMap& h, const LieBasis& basis,
                            const Representation& rep, int spectral_max_dim) {
  // The generator itself may live outside the span (the span only has to be
  // invariant under its adjoint action); outputs leaving the span throw.
  auto row_of = [&](int alpha) {
    std::map<int, double> labels;
    if (basis.is_label_basis()) {
      for (const auto& [e, hc] : h) {
        for (const auto& [out, c] : rep.bracket(e, basis.labels()[alpha])) {
          int li = basis.label_index(out);
          if (li < 0)
            throw std::runtime_error("adjoint action leaves the span at " +
                                     element_str(out));
          labels[li] += hc * c;
        }
      }
      return labels;
    }
    for (const auto& [e, hc] : h) {
      for (const auto& [li, cv] : basis.vectors()[alpha]) {
        for (const auto& [out, c] : rep.bracket(e, basis.labels()[li])) {
          int lo = basis.label_index(out);
          if (lo < 0)
            throw std::runtime_error("adjoint action leaves the span at " +
                                     element_str(out));
          labels[lo] += hc * cv * c;
        }
      }
    }
    auto proj = project_on_basis(basis, labels, -1, alpha);
    std::map<int, double> row;
    for (const auto& [g, f] : proj) row[g] = f;
    return row;
  };
  return build_adjoint(basis, row_of, spectral_max_dim);
}

AdjointGenerator adjoint_from_tensor(const std::vector<double>& h_coeffs,
                                     const StructureTensor& tensor, const LieBasis& basis,
                                     int spectral_max_dim) {
  int d = basis.dim();
  if (static_cast<int>(h_coeffs.size()) != d || tensor.dim() != d)
    throw std::invalid_argument("dimension mismatch");
  auto row_of = [&](int alpha) {
    std::map<int, double> row;
    for (int mu = 0; mu < d; ++mu) {
      if (h_coeffs[mu] == 0.0 || mu == alpha) continue;
      const auto* entries = tensor.row(mu, alpha);
      if (!entries) continue;
      for (const auto& [gamma, f] : *entries) row[gamma] += h_coeffs[mu] * f;
    }
    return row;
  };
  return build_adjoint(basis, row_of, spectral_max_dim);
}

int CircuitSpec::num_params() const {
  int max_idx = -1;
  for (const auto& [id, pidx] : layers) {
    generator(id);  // existence check
    if (pidx < 0) throw std::invalid_argument("negative parameter index");
    max_idx = std::max(max_idx, pidx);
  }
  std::vector<bool> seen(max_idx + 1, false);
  for (const auto& [id, pidx] : layers) seen[pidx] = true;
  for (int i = 0; i <= max_idx; ++i)
    if (!seen[i])
      throw std::invalid_argument("parameter indices not dense: missing " +
                                  std::to_string(i));
  return max_idx + 1;
}

const CoeffMap& CircuitSpec::generator(const std::string& id) const {
  for (const auto& [gid, map] : generators)
    if (gid == id) return map;
  throw std::invalid_argument("unknown generator id: " + id);
}

std::string CircuitSpec::to_json() const {
  nlohmann::json j;
  j["generators"] = nlohmann::json::object();
  for (const auto& [id, map] : generators) {
    nlohmann::json g = nlohmann::json::object();
    for (const auto& [e, c] : map) g[element_str(e)] = c;
    j["generators"][id] = g;
  }
  j["layers"] = nlohmann::json::array();
  for (const auto& [id, pidx] : layers) j["layers"].push_back({id, pidx});
  return j.dump();
}

CircuitSpec CircuitSpec::from_json(const std::string& text, const Representation& rep) {
  nlohmann::json j = nlohmann::json::parse(text);
  CircuitSpec circ;
  for (auto it = j.at("generators").begin(); it != j.at("generators").end(); ++it) {
    CoeffMap map;
    for (auto e = it.value().begin(); e != it.value().end(); ++e)
      map[rep.parse(e.key())] = e.value().get<double>();
    circ.generators.emplace_back(it.key(), std::move(map));
  }
  for (const auto& entry : j.at("layers"))
    circ.layers.emplace_back(entry.at(0).get<std::string>(), entry.at(1).get<int>());
  return circ;
}

namespace {

double binom_d(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

// tr[P |b><b|] for a computational basis state: zero unless P is over {I,Z},
// else parity of Z letters on set bits.
double string_on_bits(const PauliString& p, const std::vector<bool>& bits) {
  double val = 1.0;
  for (int i = 0; i < p.num_qubits(); ++i) {
    switch (p.letter(i)) {
      case Letter::I: break;
      case Letter::Z:
        if (bits[i]) val = -val;
        break;
      default: return 0.0;
    }
  }
  return val;
}

double string_on_plus(const PauliString& p) {
  for (int i = 0; i < p.num_qubits(); ++i) {
    Letter l = p.letter(i);
    if (l == Letter::Y || l == Letter::Z) return 0.0;
  }
  return 1.0;
}

struct LabelValue {
  const StateSpec& state;

  double operator()(const PauliString& p) const {
    switch (state.kind) {
      case StateSpec::BasisString: return string_on_bits(p, parse_bits(p.num_qubits()));
      case StateSpec::PlusProduct: return string_on_plus(p);
      default: throw std::invalid_argument("state unsupported for Pauli strings");
    }
  }
  double operator()(const PauliCycle& c) const {
    switch (state.kind) {
      case StateSpec::BasisString: {
        auto bits = parse_bits(c.n);
        double acc = 0.0;
        for (int k = 0; k < c.n; ++k) acc += string_on_bits(c.rep.shifted(k), bits);
        return acc / static_cast<double>(c.n);
      }
      case StateSpec::PlusProduct: return string_on_plus(c.rep);
      default: throw std::invalid_argument("state unsupported for Pauli cycles");
    }
  }
  double operator()(const OrbitLabel& l) const {
    switch (state.kind) {
      case StateSpec::BasisString: {
        if (l.p != 0 || l.q != 0) return 0.0;
        auto bits = parse_bits(l.n);
        int ones = 0;
        for (bool b : bits) ones += b ? 1 : 0;
        double acc = 0.0;  // average of (-1)^{|Z placement ∩ ones|}
        for (int j = 0; j <= l.r; ++j) {
          double ways = binom_d(ones, j) * binom_d(l.n - ones, l.r - j);
          acc += (j % 2 == 0 ? ways : -ways);
        }
        return acc / binom_d(l.n, l.r);
      }
      case StateSpec::PlusProduct: return (l.q == 0 && l.r == 0) ? 1.0 : 0.0;
      default: throw std::invalid_argument("state unsupported for Pauli orbits");
    }
  }
  double operator()(const MggmElement& e) const {
    if (state.kind != StateSpec::SectorIndex)
      throw std::invalid_argument("MGGM coordinates need a sector basis state");
    return (e.kind == MggmElement::P && e.a == state.sector_index) ? 1.0 : 0.0;
  }

  std::vector<bool> parse_bits(int n) const {
    if (static_cast<int>(state.bits.size()) != n)
      throw std::invalid_argument("bitstring length mismatch");
    std::vector<bool> bits(n);
    for (int i = 0; i < n; ++i) {
      if (state.bits[i] != '0' && state.bits[i] != '1')
        throw std::invalid_argument("invalid bitstring character");
      bits[i] = state.bits[i] == '1';
    }
    return bits;
  }
};

}  // namespace

Eigen::VectorXd state_coordinates(const StateSpec& state, const LieBasis& basis) {
  if (state.kind == StateSpec::Explicit) {
    if (static_cast<int>(state.coords.size()) != basis.dim())
      throw std::invalid_argument("explicit coordinate length mismatch");
    return Eigen::Map<const Eigen::VectorXd>(state.coords.data(), state.coords.size());
  }
  LabelValue visitor{state};
  std::vector<double> label_values(basis.labels().size());
  for (size_t i = 0; i < basis.labels().size(); ++i)
    label_values[i] = std::visit(visitor, basis.labels()[i]);
  auto coords = basis.coords_from_label_values(label_values);
  return Eigen::Map<const Eigen::VectorXd>(coords.data(), coords.size());
}

Simulator::Simulator(LieBasis basis, const Representation& rep, CircuitSpec circ,
                     int spectral_max_dim)
    : basis_(std::move(basis)) {
  num_params_ = circ.num_params();
  norm_ = Eigen::VectorXd(basis_.dim());
  for (int i = 0; i < basis_.dim(); ++i) norm_[i] = std::sqrt(basis_.norm_sq(i));

  std::vector<std::string> ids;
  for (const auto& [id, pidx] : circ.layers) {
    int gi = -1;
    for (size_t g = 0; g < ids.size(); ++g)
      if (ids[g] == id) gi = static_cast<int>(g);
    if (gi < 0) {
      gi = static_cast<int>(ids.size());
      ids.push_back(id);
      gens_.push_back(adjoint_of(circ.generator(id), basis_, rep, spectral_max_dim));
    }
    gates_.emplace_back(gi, pidx);
  }
}

bool Simulator::all_spectral() const {
  for (const auto& g : gens_)
    if (!g.spectral()) return false;
  return true;
}

Eigen::VectorXd Simulator::propagate(const Eigen::VectorXd& params,
                                     const Eigen::VectorXd& e_in) const {
  if (params.size() != num_params_) throw std::invalid_argument("parameter count mismatch");
  if (e_in.size() != basis_.dim()) throw std::invalid_argument("coordinate length mismatch");
  Eigen::VectorXd x = e_in.cwiseQuotient(norm_);
  for (const auto& [gi, pidx] : gates_) x = gens_[gi].exp_action(params[pidx], x);
  return x.cwiseProduct(norm_);
}

double Simulator::expectation(const Eigen::VectorXd& w,
                              const Eigen::VectorXd& e_out) const {
  if (w.size() != e_out.size()) throw std::invalid_argument("length mismatch");
  return w.dot(e_out);
}

double Simulator::loss(const Eigen::VectorXd& params, const Eigen::VectorXd& e_in,
                       const Eigen::VectorXd& w) const {
  return expectation(w, propagate(params, e_in));
}

std::pair<double, Eigen::VectorXd> Simulator::loss_and_gradient(
    const Eigen::VectorXd& params, const Eigen::VectorXd& e_in,
    const Eigen::VectorXd& w) const {
  if (params.size() != num_params_) throw std::invalid_argument("parameter count mismatch");
  if (e_in.size() != basis_.dim() || w.size() != basis_.dim())
    throw std::invalid_argument("coordinate length mismatch");

  size_t m = gates_.size();
  std::vector<Eigen::VectorXd> xs(m + 1);
  xs[0] = e_in.cwiseQuotient(norm_);
  for (size_t g = 0; g < m; ++g)
    xs[g + 1] = gens_[gates_[g].first].exp_action(params[gates_[g].second], xs[g]);

  Eigen::VectorXd w_hat = w.cwiseProduct(norm_);
  double value = w_hat.dot(xs[m]);

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(num_params_);
  Eigen::VectorXd lambda = w_hat;
  for (size_t g = m; g-- > 0;) {
    const auto& [gi, pidx] = gates_[g];
    grad[pidx] += lambda.dot(gens_[gi].matrix() * xs[g + 1]);
    lambda = gens_[gi].exp_action(params[pidx], lambda, /*transpose=*/true);
  }
  return {value, grad};
}

Eigen::VectorXd Simulator::observable_coords(const CoeffMap& op) const {
  auto coeffs = basis_.coeffs_from_label_map(op);
  return Eigen::Map<const Eigen::VectorXd>(coeffs.data(), coeffs.size());
}

double g_purity(const CoeffMap& h, const LieBasis& basis) {
  if (basis.is_label_basis()) {
    double acc = 0.0;
    for (const auto& [e, c] : h) {
      int li = basis.label_index(e);
      if (li >= 0) acc += c * c * basis.label_norm_sq(li);
    }
    return acc;
  }
  std::unordered_map<int, double> dense;
  for (const auto& [e, c] : h) {
    int li = basis.label_index(e);
    if (li >= 0) dense[li] = c;
  }
  double acc = 0.0;
  for (const auto& row : basis.vectors()) {
    double proj = 0.0;
    for (const auto& [li, c] : row) {
      auto it = dense.find(li);
      if (it != dense.end()) proj += c * it->second * basis.label_norm_sq(li);
    }
    acc += proj * proj;
  }
  return acc;
}

double predict_variance(double rho_purity, double obs_purity, long long dim) {
  if (dim < 1) throw std::invalid_argument("dim must be positive");
  if (rho_purity < 0 || obs_purity < 0)
    throw std::invalid_argument("purities must be non-negative");
  return rho_purity * obs_purity / static_cast<double>(dim);
}

double jacobi_residual(const StructureTensor& tensor,
                       const std::vector<std::array<int, 3>>& triples) {
  int d = tensor.dim();
  double worst = 0.0;
  std::vector<double> acc(d);
  auto accumulate = [&](int a, int b, int c, double sign) {
    const auto* ab = tensor.row(a, b);
    if (!ab) return;
    for (const auto& [e, f] : *ab) {
      const auto* ec = tensor.row(e, c);
      if (!ec) continue;
      for (const auto& [g, f2] : *ec) acc[g] += sign * f * f2;
    }
  };
  for (const auto& [a, b, c] : triples) {
    std::fill(acc.begin(), acc.end(), 0.0);
    accumulate(a, b, c, 1.0);
    accumulate(b, c, a, 1.0);
    accumulate(c, a, b, 1.0);
    for (double v : acc) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace liesim

#include "liesim/basis.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace liesim {

size_t BasisElementHash::operator()(const BasisElement& e) const {
  size_t h = std::visit([](const auto& v) { return v.hash(); }, e);
  return h ^ (e.index() * 0x9e3779b97f4a7c15ull);
}

std::string element_str(const BasisElement& e) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PauliString>)
          return v.str();
        else if constexpr (std::is_same_v<T, PauliCycle>)
          return v.rep.str();
        else
          return v.str();
      },
      e);
}

Representation pauli_representation(int n) {
  Representation rep;
  rep.name = "pauli";
  rep.bracket = [](const BasisElement& a, const BasisElement& b) -> BracketTerms {
    auto br = PauliString::bracket(std::get<PauliString>(a), std::get<PauliString>(b));
    if (br.coeff == 0.0) return {};
    return {{BasisElement{br.op}, br.coeff}};
  };
  rep.norm_sq = [](const BasisElement& e) {
    return std::ldexp(1.0, std::get<PauliString>(e).num_qubits());
  };
  rep.parse = [n](const std::string& text) {
    PauliString p = PauliString::parse(text);
    if (p.num_qubits() != n) throw std::invalid_argument("wrong qubit count: " + text);
    return BasisElement{p};
  };
  return rep;
}

Representation cycle_representation(int n) {
  Representation rep;
  rep.name = "cycle";
  rep.bracket = [](const BasisElement& a, const BasisElement& b) -> BracketTerms {
    const auto& ca = std::get<PauliCycle>(a);
    const auto& cb = std::get<PauliCycle>(b);
    CycleSum out = (static_cast<long long>(ca.rep.weight()) * cb.rep.weight() < ca.n)
                       ? cycle_bracket_bounded(ca, cb)
                       : cycle_bracket(ca, cb);
    BracketTerms terms;
    terms.reserve(out.size());
    for (const auto& [c, v] : out.terms()) terms.emplace_back(BasisElement{c}, v);
    return terms;
  };
  rep.norm_sq = [](const BasisElement& e) {
    return cycle_norm_sq(std::get<PauliCycle>(e));
  };
  rep.parse = [n](const std::string& text) {
    PauliString p = PauliString::parse(text);
    if (p.num_qubits() != n) throw std::invalid_argument("wrong qubit count: " + text);
    return BasisElement{cycle_canonicalize(p)};
  };
  return rep;
}

Representation orbit_representation(int n, std::shared_ptr<const FactorialTable> f) {
  if (!f || f->max_n() < n) throw std::invalid_argument("factorial table too small");
  Representation rep;
  rep.name = "orbit";
  rep.bracket = [f](const BasisElement& a, const BasisElement& b) -> BracketTerms {
    OrbitSum out =
        orbit_bracket_full(std::get<OrbitLabel>(a), std::get<OrbitLabel>(b), *f);
    BracketTerms terms;
    terms.reserve(out.size());
    for (const auto& [l, v] : out.terms()) terms.emplace_back(BasisElement{l}, v);
    return terms;
  };
  rep.norm_sq = [](const BasisElement& e) {
    return orbit_norm_sq(std::get<OrbitLabel>(e));
  };
  rep.parse = [n](const std::string& text) {
    return BasisElement{OrbitLabel::parse(n, text)};
  };
  return rep;
}

Representation mggm_representation(int n, int k) {
  (void)n;
  (void)k;
  Representation rep;
  rep.name = "mggm";
  rep.bracket = [](const BasisElement& a, const BasisElement& b) -> BracketTerms {
    auto out = mggm_bracket(std::get<MggmElement>(a), std::get<MggmElement>(b));
    BracketTerms terms;
    terms.reserve(out.size());
    for (const auto& [e, v] : out) terms.emplace_back(BasisElement{e}, v);
    return terms;
  };
  rep.norm_sq = [](const BasisElement& e) {
    return mggm_norm_sq(std::get<MggmElement>(e));
  };
  rep.parse = [](const std::string& text) {
    return BasisElement{MggmElement::parse(text)};
  };
  return rep;
}

LieBasis LieBasis::from_labels(std::vector<BasisElement> labels, const Representation& rep) {
  LieBasis basis;
  basis.labels_ = std::move(labels);
  basis.label_norm_sq_.reserve(basis.labels_.size());
  for (size_t i = 0; i < basis.labels_.size(); ++i) {
    if (!basis.label_idx_.emplace(basis.labels_[i], static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate basis element: " +
                                  element_str(basis.labels_[i]));
    basis.label_norm_sq_.push_back(rep.norm_sq(basis.labels_[i]));
  }
  return basis;
}

int LieBasis::dim() const {
  return vectors_.empty() ? static_cast<int>(labels_.size())
                          : static_cast<int>(vectors_.size());
}

int LieBasis::label_index(const BasisElement& e) const {
  auto it = label_idx_.find(e);
  return it == label_idx_.end() ? -1 : it->second;
}

double LieBasis::norm_sq(int alpha) const {
  return vectors_.empty() ? label_norm_sq_[alpha] : 1.0;
}

std::vector<double> LieBasis::coords_from_label_values(
    const std::vector<double>& label_values) const {
  if (label_values.size() != labels_.size())
    throw std::invalid_argument("label value count mismatch");
  if (vectors_.empty()) return label_values;
  std::vector<double> out(vectors_.size(), 0.0);
  for (size_t a = 0; a < vectors_.size(); ++a)
    for (const auto& [li, c] : vectors_[a]) out[a] += c * label_values[li];
  return out;
}

std::vector<double> LieBasis::coeffs_from_label_map(const CoeffMap& op) const {
  std::vector<double> out(dim(), 0.0);
  if (vectors_.empty()) {
    for (const auto& [e, c] : op) {
      int li = label_index(e);
      if (li < 0)
        throw std::invalid_argument("operator leaves the basis span at " +
                                    element_str(e));
      out[li] = c;
    }
    return out;
  }
  // Project onto the orthonormal span vectors and verify the residual.
  std::vector<double> dense(labels_.size(), 0.0);
  double op_norm_sq = 0.0;
  for (const auto& [e, c] : op) {
    int li = label_index(e);
    if (li < 0)
      throw std::invalid_argument("operator leaves the basis span at " + element_str(e));
    dense[li] = c;
    op_norm_sq += c * c * label_norm_sq_[li];
  }
  for (size_t a = 0; a < vectors_.size(); ++a) {
    double proj = 0.0;
    for (const auto& [li, c] : vectors_[a]) proj += c * dense[li] * label_norm_sq_[li];
    out[a] = proj;
  }
  double res_sq = op_norm_sq;
  for (double v : out) res_sq -= v * v;
  if (res_sq > 1e-18 + 1e-9 * op_norm_sq)
    throw std::invalid_argument("operator leaves the basis span (residual " +
                                std::to_string(std::sqrt(std::max(0.0, res_sq))) + ")");
  return out;
}

namespace {

struct ClosureState {
  const Representation& rep;
  std::vector<BasisElement> labels;
  std::unordered_map<BasisElement, int, BasisElementHash> label_idx;
  std::vector<double> norm_sq;
  std::vector<LieBasis::SparseVec> rows;  // orthonormal

  int ensure_label(const BasisElement& e) {
    auto it = label_idx.find(e);
    if (it != label_idx.end()) return it->second;
    int id = static_cast<int>(labels.size());
    labels.push_back(e);
    label_idx.emplace(e, id);
    norm_sq.push_back(rep.norm_sq(e));
    return id;
  }

  double inner(const LieBasis::SparseVec& u, const LieBasis::SparseVec& v) const {
    double acc = 0.0;
    size_t i = 0, j = 0;
    while (i < u.size() && j < v.size()) {
      if (u[i].first < v[j].first)
        ++i;
      else if (u[i].first > v[j].first)
        ++j;
      else {
        acc += u[i].second * v[j].second * norm_sq[u[i].first];
        ++i;
        ++j;
      }
    }
    return acc;
  }

  static void axpy(double c, const LieBasis::SparseVec& x, std::map<int, double>& y) {
    for (const auto& [li, v] : x) y[li] += c * v;
  }

  // Returns true when the candidate added a new direction.
  bool accept(const std::map<int, double>& cand) {
    LieBasis::SparseVec v;
    v.reserve(cand.size());
    for (const auto& [li, c] : cand)
      if (std::abs(c) > kCoeffTol) v.emplace_back(li, c);
    if (v.empty()) return false;
    double orig_norm = std::sqrt(inner(v, v));
    if (orig_norm <= 0.0) return false;

    for (int pass = 0; pass < 2; ++pass) {
      std::map<int, double> work(v.begin(), v.end());
      for (const auto& row : rows) {
        double c = inner(row, v);
        if (c != 0.0) axpy(-c, row, work);
      }
      v.clear();
      for (const auto& [li, c] : work)
        if (std::abs(c) > kCoeffTol * orig_norm) v.emplace_back(li, c);
      if (v.empty()) return false;
    }
    double res_norm = std::sqrt(inner(v, v));
    if (res_norm <= 1e-10 * orig_norm) return false;
    for (auto& [li, c] : v) c /= res_norm;
    rows.push_back(std::move(v));
    return true;
  }

  std::map<int, double> bracket_rows(const LieBasis::SparseVec& u,
                                     const LieBasis::SparseVec& v) {
    std::map<int, double> acc;
    for (const auto& [li, cu] : u) {
      for (const auto& [lj, cv] : v) {
        for (const auto& [e, c] : rep.bracket(labels[li], labels[lj])) {
          double val = cu * cv * c;
          if (std::abs(val) > kCoeffTol) acc[ensure_label(e)] += val;
        }
      }
    }
    return acc;
  }
};

}  // namespace

LieBasis lie_closure(const std::vector<CoeffMap>& generators, const Representation& rep,
                     int max_dim) {
  if (max_dim < 1) throw std::invalid_argument("max_dim must be positive");
  ClosureState st{rep, {}, {}, {}, {}};

  bool truncated = false;
  auto at_cap = [&] { return static_cast<int>(st.rows.size()) >= max_dim; };
  for (const auto& g : generators) {
    std::map<int, double> cand;
    for (const auto& [e, c] : g) cand[st.ensure_label(e)] += c;
    st.accept(cand);
    if (at_cap()) {
      truncated = true;
      break;
    }
  }

  // Pairs (i, j < i) in append order; the loop keeps running while accepts
  // grow rows and ends when no pair yields a new direction.
  for (size_t i = 1; i < st.rows.size() && !truncated; ++i) {
    for (size_t j = 0; j < i && !truncated; ++j) {
      auto cand = st.bracket_rows(st.rows[i], st.rows[j]);
      st.accept(cand);
      if (at_cap()) truncated = true;
    }
  }

  LieBasis basis;
  basis.truncated_ = truncated;
  basis.labels_ = std::move(st.labels);
  basis.label_idx_ = std::move(st.label_idx);
  basis.label_norm_sq_ = std::move(st.norm_sq);
  if (st.rows.size() != basis.labels_.size()) {
    basis.vectors_ = std::move(st.rows);
  }
  return basis;
}

}  // namespace liesim

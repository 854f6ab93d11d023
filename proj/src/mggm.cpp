#include "liesim/mggm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace liesim {

namespace {

uint64_t positions_hash(const std::vector<int>& pos) {
  uint64_t h = 0x243f6a8885a308d3ull;
  for (int p : pos) {
    h ^= static_cast<uint64_t>(p) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0x100000001b3ull;
  }
  return h;
}

void lex_combinations(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

// Revolving-door Gray code: G(n,k) = G(n-1,k), then reverse(G(n-1,k-1)) with
// n appended. Consecutive combinations differ by a single element exchange.
std::vector<std::vector<int>> revolving_door(int n, int k) {
  if (k == 0) return {{}};
  if (k == n) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    return {all};
  }
  auto head = revolving_door(n - 1, k);
  auto tail = revolving_door(n - 1, k - 1);
  std::reverse(tail.begin(), tail.end());
  for (auto& s : tail) {
    s.push_back(n);
    head.push_back(std::move(s));
  }
  return head;
}

}  // namespace

SectorIndexer::SectorIndexer(int n, int k, SectorOrder order)
    : n_(n), k_(k), order_(order) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("invalid sector (n, k)");
  if (order == SectorOrder::Lexicographic) {
    if (k == 0)
      states_.push_back({});
    else
      lex_combinations(n, k, states_);
  } else {
    states_ = revolving_door(n, k);
  }
  rank_.reserve(states_.size());
  for (size_t i = 0; i < states_.size(); ++i)
    rank_.emplace(positions_hash(states_[i]), static_cast<int>(i) + 1);
}

const std::vector<int>& SectorIndexer::state(int a) const {
  if (a < 1 || a > dim()) throw std::out_of_range("sector index out of range");
  return states_[a - 1];
}

std::string SectorIndexer::state_bits(int a) const {
  std::string bits(n_, '0');
  for (int p : state(a)) bits[p - 1] = '1';
  return bits;
}

int SectorIndexer::index_of(const std::vector<int>& positions) const {
  std::vector<int> sorted = positions;
  std::sort(sorted.begin(), sorted.end());
  auto it = rank_.find(positions_hash(sorted));
  if (it == rank_.end()) throw std::invalid_argument("bitstring not in sector");
  return it->second;
}

bool MggmElement::operator<(const MggmElement& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (a != o.a) return a < o.a;
  return b < o.b;
}

size_t MggmElement::hash() const {
  uint64_t h = static_cast<uint64_t>(kind) * 0x9e3779b97f4a7c15ull;
  h ^= static_cast<uint64_t>(a) * 0x100000001b3ull;
  h ^= static_cast<uint64_t>(b) * 0xc2b2ae3d27d4eb4full;
  h *= 0xff51afd7ed558ccdull;
  return static_cast<size_t>(h ^ (h >> 31));
}

std::string MggmElement::str() const {
  switch (kind) {
    case A: return "A:" + std::to_string(a) + "," + std::to_string(b);
    case S: return "S:" + std::to_string(a) + "," + std::to_string(b);
    case P: return "P:" + std::to_string(a);
  }
  throw std::logic_error("invalid MGGM kind");
}

MggmElement MggmElement::parse(const std::string& text) {
  if (text.size() < 3 || text[1] != ':')
    throw std::invalid_argument("invalid MGGM label '" + text + "'");
  MggmElement e;
  std::string rest = text.substr(2);
  switch (text[0]) {
    case 'A': e.kind = A; break;
    case 'S': e.kind = S; break;
    case 'P': e.kind = P; break;
    default: throw std::invalid_argument("invalid MGGM kind in '" + text + "'");
  }
  size_t comma = rest.find(',');
  if (e.kind == P) {
    if (comma != std::string::npos)
      throw std::invalid_argument("projector label takes one index: " + text);
    e.a = std::stoi(rest);
    e.b = 0;
  } else {
    if (comma == std::string::npos)
      throw std::invalid_argument("pair label needs two indices: " + text);
    e.a = std::stoi(rest.substr(0, comma));
    e.b = std::stoi(rest.substr(comma + 1));
    if (e.a >= e.b) throw std::invalid_argument("pair label requires a < b: " + text);
  }
  if (e.a < 1) throw std::invalid_argument("MGGM indices are 1-based: " + text);
  return e;
}

double mggm_norm_sq(const MggmElement& e) {
  return e.kind == MggmElement::P ? 1.0 : 2.0;
}

void MggmSum::add(const MggmElement& e, double coeff) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (std::abs(coeff) > kCoeffTol) terms_.emplace(e, coeff);
    return;
  }
  it->second += coeff;
  if (std::abs(it->second) <= kCoeffTol) terms_.erase(it);
}

double MggmSum::coeff(const MggmElement& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

std::string MggmSum::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["k"] = k_;
  j["terms"] = nlohmann::json::object();
  for (const auto& [e, v] : terms_) j["terms"][e.str()] = v;
  return j.dump();
}

MggmSum MggmSum::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  MggmSum out(j.at("n").get<int>(), j.at("k").get<int>());
  for (auto it = j.at("terms").begin(); it != j.at("terms").end(); ++it)
    out.add(MggmElement::parse(it.key()), it.value().get<double>());
  return out;
}

namespace {

using Terms = std::vector<std::pair<MggmElement, double>>;

void add_a(Terms& out, int x, int y, double c) {
  if (x == y) return;  // |x><x| - |x><x|
  if (x < y)
    out.emplace_back(mggm_a(x, y), c);
  else
    out.emplace_back(mggm_a(y, x), -c);
}

void add_s(Terms& out, int x, int y, double c) {
  if (x == y) {
    out.emplace_back(mggm_p(x), 2.0 * c);  // S^{aa} = 2 P^a
    return;
  }
  out.emplace_back(mggm_s(std::min(x, y), std::max(x, y)), c);
}

void collect(Terms& out) {
  // Merge duplicates produced by index coincidences.
  Terms merged;
  for (const auto& [e, c] : out) {
    bool found = false;
    for (auto& [me, mc] : merged) {
      if (me == e) {
        mc += c;
        found = true;
        break;
      }
    }
    if (!found) merged.emplace_back(e, c);
  }
  out.clear();
  for (auto& [e, c] : merged)
    if (std::abs(c) > kCoeffTol) out.emplace_back(e, c);
}

}  // namespace

std::vector<std::pair<MggmElement, double>> mggm_bracket(const MggmElement& x,
                                                         const MggmElement& y) {
  using K = MggmElement;
  Terms out;
  if (x.kind == K::P && y.kind == K::P) return out;
  if (y.kind == K::P) {
    int a = x.a, b = x.b, c = y.a;
    if (x.kind == K::A) {
      if (b == c) add_s(out, a, c, 1.0);
      if (a == c) add_s(out, b, c, -1.0);
    } else {
      if (b == c) add_a(out, a, c, -1.0);
      if (a == c) add_a(out, b, c, -1.0);
    }
    collect(out);
    return out;
  }
  if (x.kind == K::P) {
    auto sw = mggm_bracket(y, x);
    for (auto& [e, c] : sw) c = -c;
    return sw;
  }

  int a = x.a, b = x.b, c = y.a, d = y.b;
  if (x.kind == K::A && y.kind == K::A) {
    if (b == c) add_a(out, a, d, 1.0);
    if (b == d) add_a(out, a, c, -1.0);
    if (a == c) add_a(out, b, d, -1.0);
    if (a == d) add_a(out, b, c, 1.0);
  } else if (x.kind == K::S && y.kind == K::S) {
    if (b == c) add_a(out, a, d, -1.0);
    if (b == d) add_a(out, a, c, -1.0);
    if (a == c) add_a(out, b, d, -1.0);
    if (a == d) add_a(out, b, c, -1.0);
  } else if (x.kind == K::A && y.kind == K::S) {
    if (b == c) add_s(out, a, d, 1.0);
    if (b == d) add_s(out, a, c, 1.0);
    if (a == c) add_s(out, b, d, -1.0);
    if (a == d) add_s(out, b, c, -1.0);
  } else {  // S, A: antisymmetry
    auto sw = mggm_bracket(y, x);
    for (auto& [e, cc] : sw) cc = -cc;
    return sw;
  }
  collect(out);
  return out;
}

std::vector<std::pair<int, int>> active_pairs(const SectorIndexer& idx, int i, int j) {
  if (i == j || i < 1 || j < 1 || i > idx.num_qubits() || j > idx.num_qubits())
    throw std::invalid_argument("invalid qubit pair");
  std::vector<std::pair<int, int>> out;
  for (int a = 1; a <= idx.dim(); ++a) {
    const auto& pos = idx.state(a);
    bool has_i = std::binary_search(pos.begin(), pos.end(), i);
    bool has_j = std::binary_search(pos.begin(), pos.end(), j);
    if (has_i == has_j) continue;
    if (!has_i) continue;  // visit each pair once, from the side occupying i
    std::vector<int> partner;
    partner.reserve(pos.size());
    for (int p : pos)
      if (p != i) partner.push_back(p);
    partner.push_back(j);
    int b = idx.index_of(partner);
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MggmSum restrict_generator(const HWGeneratorSpec& g, const SectorIndexer& idx) {
  if (g.i == g.j) throw std::invalid_argument("generator needs distinct qubits");
  if (!std::isfinite(g.e) || !std::isfinite(g.s) || !std::isfinite(g.r) ||
      !std::isfinite(g.j_coef))
    throw std::invalid_argument("generator parameters must be finite");
  MggmSum out(idx.num_qubits(), idx.hamming_weight());
  for (int a = 1; a <= idx.dim(); ++a) {
    const auto& pos = idx.state(a);
    bool has_i = std::binary_search(pos.begin(), pos.end(), g.i);
    bool has_j = std::binary_search(pos.begin(), pos.end(), g.j);
    if (has_i == has_j || has_i) continue;  // keep the 01-pattern side as |a>
    std::vector<int> partner;
    partner.reserve(pos.size());
    for (int p : pos)
      if (p != g.j) partner.push_back(p);
    partner.push_back(g.i);
    int b = idx.index_of(partner);  // 10-pattern state

    // i*J restricts to -Lambda_A^{ab} for this orientation (pinned by the
    // dense-oracle calibration; the closed-form restriction is stated only up
    // to the basis-state ordering).
    if (a < b) {
      out.add(mggm_a(a, b), -g.j_coef);
      out.add(mggm_s(a, b), g.r);
    } else {
      out.add(mggm_a(b, a), g.j_coef);
      out.add(mggm_s(b, a), g.r);
    }
    out.add(mggm_p(a), g.s + g.e);
    out.add(mggm_p(b), g.e - g.s);
  }
  return out;
}

std::vector<MggmElement> mggm_basis_elements(int d) {
  std::vector<MggmElement> out;
  out.reserve(static_cast<size_t>(d) * d);
  for (int a = 1; a <= d; ++a)
    for (int b = a + 1; b <= d; ++b) out.push_back(mggm_a(a, b));
  for (int a = 1; a <= d; ++a)
    for (int b = a + 1; b <= d; ++b) out.push_back(mggm_s(a, b));
  for (int a = 1; a <= d; ++a) out.push_back(mggm_p(a));
  return out;
}

namespace {

int mggm_index(int d, const MggmElement& e) {
  int n_pairs = d * (d - 1) / 2;
  auto pair_rank = [d](int a, int b) {
    return (a - 1) * (2 * d - a) / 2 + (b - a) - 1;
  };
  switch (e.kind) {
    case MggmElement::A: return pair_rank(e.a, e.b);
    case MggmElement::S: return n_pairs + pair_rank(e.a, e.b);
    case MggmElement::P: return 2 * n_pairs + (e.a - 1);
  }
  throw std::logic_error("invalid MGGM kind");
}

}  // namespace

std::vector<MggmStructureEntry> mggm_structure_constants(int d, size_t max_entries) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  size_t dd = static_cast<size_t>(d);
  size_t pair_patterns = dd * (dd - 1) / 2;
  size_t triple_patterns = dd * (dd - 1) * (dd - 2) / 6;
  size_t bound = 2 * (5 * pair_patterns * 2 + 12 * triple_patterns * 2);
  if (bound > max_entries)
    throw std::runtime_error("structure tensor budget exceeded; expected up to " +
                             std::to_string(bound) + " nonzero entries");

  std::vector<MggmStructureEntry> out;
  auto emit = [&](const MggmElement& x, const MggmElement& y) {
    for (const auto& [z, f] : mggm_bracket(x, y)) {
      int alpha = mggm_index(d, x), beta = mggm_index(d, y), gamma = mggm_index(d, z);
      out.push_back({alpha, beta, gamma, f});
      out.push_back({beta, alpha, gamma, -f});
    }
  };

  for (int a = 1; a <= d; ++a) {
    for (int b = a + 1; b <= d; ++b) {
      emit(mggm_a(a, b), mggm_p(a));
      emit(mggm_a(a, b), mggm_p(b));
      emit(mggm_s(a, b), mggm_p(a));
      emit(mggm_s(a, b), mggm_p(b));
      emit(mggm_a(a, b), mggm_s(a, b));
    }
  }
  for (int a = 1; a <= d; ++a) {
    for (int b = a + 1; b <= d; ++b) {
      for (int c = b + 1; c <= d; ++c) {
        const std::pair<int, int> pos[3] = {{a, b}, {a, c}, {b, c}};
        for (int first = 0; first < 3; ++first) {
          for (int second = first + 1; second < 3; ++second) {
            for (int kx = 0; kx < 2; ++kx) {
              for (int ky = 0; ky < 2; ++ky) {
                MggmElement x = kx == 0 ? mggm_a(pos[first].first, pos[first].second)
                                        : mggm_s(pos[first].first, pos[first].second);
                MggmElement y = ky == 0 ? mggm_a(pos[second].first, pos[second].second)
                                        : mggm_s(pos[second].first, pos[second].second);
                emit(x, y);
              }
            }
          }
        }
      }
    }
  }
  return out;
}

long long hw_algebra_dim(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n > 33) throw std::overflow_error("hw_algebra_dim overflows past n = 33");
  // C(n, k) via Pascal in 128-bit, then the Vandermonde cross-check.
  std::vector<unsigned __int128> row(n + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  unsigned __int128 sum = 0;
  for (int k = 0; k <= n; ++k) sum += row[k] * row[k];

  std::vector<unsigned __int128> row2(2 * n + 1, 0);
  row2[0] = 1;
  for (int i = 1; i <= 2 * n; ++i)
    for (int j = std::min(i, n); j >= 1; --j) row2[j] += row2[j - 1];
  if (sum != row2[n]) throw std::logic_error("Vandermonde identity violated");
  return static_cast<long long>(sum);
}

}  // namespace liesim

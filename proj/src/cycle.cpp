#include "liesim/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace liesim {

PauliCycle cycle_canonicalize(const PauliString& p) {
  int n = p.num_qubits();
  if (n < 1) throw std::invalid_argument("empty string");
  PauliCycle c;
  c.n = n;
  c.rep = p;
  int stabilizer = 0;
  for (int k = 0; k < n; ++k) {
    PauliString s = p.shifted(k);
    if (s == p) ++stabilizer;
    if (s < c.rep) c.rep = s;
  }
  c.period = n / stabilizer;
  return c;
}

double cycle_norm_sq(const PauliCycle& c) {
  return std::ldexp(1.0, c.n) / static_cast<double>(c.period);
}

PauliSum cycle_expand(const PauliCycle& c, double scale) {
  PauliSum out(c.n);
  double w = scale / static_cast<double>(c.period);
  for (int k = 0; k < c.period; ++k) out.add(c.rep.shifted(k), w);
  return out;
}

void CycleSum::add(const PauliCycle& c, double coeff) {
  if (c.n != n_) throw std::invalid_argument("qubit count mismatch");
  auto it = terms_.find(c);
  if (it == terms_.end()) {
    if (std::abs(coeff) > kCoeffTol) terms_.emplace(c, coeff);
    return;
  }
  it->second += coeff;
  if (std::abs(it->second) <= kCoeffTol) terms_.erase(it);
}

double CycleSum::coeff(const PauliCycle& c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? 0.0 : it->second;
}

CycleSum& CycleSum::operator+=(const CycleSum& other) {
  if (other.n_ != n_) throw std::invalid_argument("qubit count mismatch");
  for (const auto& [c, v] : other.terms_) add(c, v);
  return *this;
}

PauliSum CycleSum::expand() const {
  PauliSum out(n_);
  for (const auto& [c, v] : terms_) out += cycle_expand(c, v);
  return out;
}

std::string CycleSum::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["terms"] = nlohmann::json::object();
  for (const auto& [c, v] : terms_) j["terms"][c.rep.str()] = v;
  return j.dump();
}

CycleSum CycleSum::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CycleSum out(j.at("n").get<int>());
  for (auto it = j.at("terms").begin(); it != j.at("terms").end(); ++it)
    out.add(cycle_canonicalize(PauliString::parse(it.key())), it.value().get<double>());
  return out;
}

namespace {

void accumulate_shift_terms(const PauliCycle& a, const PauliCycle& b,
                            const std::vector<int>& shifts, CycleSum& out) {
  double inv_n = 1.0 / static_cast<double>(a.n);
  for (int k : shifts) {
    auto br = PauliString::bracket(a.rep, b.rep.shifted(k));
    if (br.coeff != 0.0) out.add(cycle_canonicalize(br.op), br.coeff * inv_n);
  }
}

std::vector<int> overlapping_shifts(const PauliString& a, const PauliString& b) {
  int n = a.num_qubits();
  std::set<int> ks;
  for (int x : a.support())
    for (int y : b.support()) ks.insert(((x - y) % n + n) % n);
  return {ks.begin(), ks.end()};
}

// True when the support cannot be covered by a window that avoids the cut
// between site n-1 and site 0.
bool wraps_boundary(const PauliString& p) {
  auto supp = p.support();
  if (supp.size() <= 1) return false;
  int n = p.num_qubits();
  int tight = supp.back() - supp.front() + 1;
  int max_gap = n - 1 - supp.back() + supp.front();  // gap across the cut
  for (size_t i = 1; i < supp.size(); ++i)
    max_gap = std::max(max_gap, supp[i] - supp[i - 1] - 1);
  int cyclic_extent = n - max_gap;
  return tight > cyclic_extent;
}

}  // namespace

CycleSum cycle_bracket(const PauliCycle& a, const PauliCycle& b) {
  if (a.n != b.n) throw std::invalid_argument("qubit count mismatch");
  CycleSum out(a.n);
  std::vector<int> all(a.n);
  for (int k = 0; k < a.n; ++k) all[k] = k;
  accumulate_shift_terms(a, b, all, out);
  return out;
}

CycleSum cycle_bracket_bounded(const PauliCycle& a, const PauliCycle& b) {
  if (a.n != b.n) throw std::invalid_argument("qubit count mismatch");
  CycleSum out(a.n);
  accumulate_shift_terms(a, b, overlapping_shifts(a.rep, b.rep), out);
  return out;
}

PauliSum OpenChainOp::expand() const {
  PauliSum out = bulk.expand();
  out += left;
  out += right;
  return out;
}

OpenChainOp open_chain_sum(const PauliSum& generator) {
  OpenChainOp out;
  out.n = generator.num_qubits();
  out.bulk = CycleSum(out.n);
  out.left = PauliSum(out.n);
  out.right = PauliSum(out.n);
  if (generator.empty()) return out;

  const auto& terms = generator.terms();
  PauliCycle cls = cycle_canonicalize(terms.begin()->first);
  double c0 = terms.begin()->second;
  for (const auto& [p, c] : terms) {
    if (!(cycle_canonicalize(p) == cls))
      throw RepresentationError("terms are not cyclic shifts of one template");
    if (std::abs(c - c0) > 1e-9 * std::max(1.0, std::abs(c0)))
      throw RepresentationError("shifted terms carry unequal coefficients");
  }

  out.bulk.add(cls, c0 * static_cast<double>(cls.period));
  PauliSum defect = out.bulk.expand();
  defect *= -1.0;
  defect += generator;
  defect *= -1.0;  // defect = expand(bulk) - generator, i.e. the missing shifts
  for (const auto& [p, c] : defect.terms()) {
    if (!wraps_boundary(p))
      throw RepresentationError("missing shifts are not boundary-localized");
    out.right.add(p, -c);
  }
  return out;
}

namespace {

// i[scale*T(rep_c), D] expanded over strings, touching only the shifts of the
// template that overlap each defect term.
PauliSum cycle_defect_bracket(const PauliCycle& c, double scale, const PauliSum& d,
                              bool cycle_first) {
  PauliSum out(c.n);
  double inv_n = scale / static_cast<double>(c.n);
  for (const auto& [q, cq] : d.terms()) {
    for (int k : overlapping_shifts(q, c.rep)) {
      PauliString s = c.rep.shifted(k);
      auto br = cycle_first ? PauliString::bracket(s, q) : PauliString::bracket(q, s);
      if (br.coeff != 0.0) out.add(br.op, br.coeff * cq * inv_n);
    }
  }
  return out;
}

void split_defect(const PauliSum& d, OpenChainOp& out) {
  for (const auto& [p, c] : d.terms()) {
    auto supp = p.support();
    if (wraps_boundary(p) || supp.empty() || supp.front() > out.n / 2)
      out.right.add(p, c);
    else
      out.left.add(p, c);
  }
}

}  // namespace

OpenChainOp open_chain_bracket(const OpenChainOp& a, const OpenChainOp& b) {
  if (a.n != b.n) throw std::invalid_argument("qubit count mismatch");
  OpenChainOp out;
  out.n = a.n;
  out.bulk = CycleSum(a.n);
  out.left = PauliSum(a.n);
  out.right = PauliSum(a.n);

  for (const auto& [ca, va] : a.bulk.terms()) {
    for (const auto& [cb, vb] : b.bulk.terms()) {
      CycleSum bb = cycle_bracket_bounded(ca, cb);
      for (const auto& [c, v] : bb.terms()) out.bulk.add(c, v * va * vb);
    }
  }

  PauliSum defects(a.n);
  PauliSum a_def = a.left;
  a_def += a.right;
  PauliSum b_def = b.left;
  b_def += b.right;
  for (const auto& [ca, va] : a.bulk.terms())
    defects += cycle_defect_bracket(ca, va, b_def, /*cycle_first=*/true);
  for (const auto& [cb, vb] : b.bulk.terms())
    defects += cycle_defect_bracket(cb, vb, a_def, /*cycle_first=*/false);
  defects += PauliSum::bracket(a_def, b_def);
  split_defect(defects, out);
  return out;
}

}  // namespace liesim

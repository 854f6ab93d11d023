#pragma once

#include <stdexcept>
#include <unordered_map>

#include "liesim/pauli.hpp"

namespace liesim {

// Equivalence class of a Pauli string under cyclic shifts. The attached
// Hermitian operator is the shift average T(P) = (1/n) sum_k shift^k(P);
// expanding it gives each of the `period` distinct strings with coefficient
// 1/period. rep is the minimal string among all shifts (letterwise I<X<Y<Z,
// qubit 1 first) and period = orbit size, a divisor of n.
struct PauliCycle {
  int n = 0;
  PauliString rep;
  int period = 0;

  bool operator==(const PauliCycle& other) const {
    return n == other.n && rep == other.rep;
  }
  bool operator<(const PauliCycle& other) const { return rep < other.rep; }
  size_t hash() const { return rep.hash() ^ 0xc6a4a7935bd1e995ull; }
};

struct PauliCycleHash {
  size_t operator()(const PauliCycle& c) const { return c.hash(); }
};

PauliCycle cycle_canonicalize(const PauliString& p);

double cycle_norm_sq(const PauliCycle& c);  // 2^n / period

// Shift average expanded back to strings (coefficient scale/period each).
PauliSum cycle_expand(const PauliCycle& c, double scale = 1.0);

class CycleSum {
 public:
  CycleSum() = default;
  explicit CycleSum(int n) : n_(n) {}

  int num_qubits() const { return n_; }
  void add(const PauliCycle& c, double coeff);
  double coeff(const PauliCycle& c) const;
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::unordered_map<PauliCycle, double, PauliCycleHash>& terms() const {
    return terms_;
  }
  CycleSum& operator+=(const CycleSum& other);
  PauliSum expand() const;

  // {"n": n, "terms": {"<rep-text>": coeff}}; periods recomputed on load.
  std::string to_json() const;
  static CycleSum from_json(const std::string& text);

 private:
  int n_ = 0;
  std::unordered_map<PauliCycle, double, PauliCycleHash> terms_;
};

// Expansion of i[T(a), T(b)] over cycle averages: (1/n) sum_k over the shift
// sum, each term canonicalized. Evaluates all n relative shifts.
CycleSum cycle_bracket(const PauliCycle& a, const PauliCycle& b);

// Same output, enumerating only the <= w_a*w_b shifts with overlapping
// support. Intended for w_a*w_b << n.
CycleSum cycle_bracket_bounded(const PauliCycle& a, const PauliCycle& b);

// Bulk + boundary-defect form of a translation-structured open-chain sum:
// input = expand(bulk) + left + right with strictly localized defects.
struct OpenChainOp {
  int n = 0;
  CycleSum bulk;
  PauliSum left;
  PauliSum right;

  PauliSum expand() const;
};

// Decomposes a sum whose terms are equal-coefficient cyclic shifts of one
// template, truncated at the chain boundary. Throws RepresentationError
// otherwise (callers fall back to plain PauliSum arithmetic).
struct RepresentationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

OpenChainOp open_chain_sum(const PauliSum& generator);

// i[a,b] for bulk+defect operators: bulk-bulk through cycle_bracket_bounded,
// every defect pairing through sum_bracket.
OpenChainOp open_chain_bracket(const OpenChainOp& a, const OpenChainOp& b);

}  // namespace liesim

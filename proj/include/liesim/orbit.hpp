#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "liesim/pauli.hpp"

namespace liesim {

// Permutation orbit of Pauli strings with exactly p X, q Y and r Z letters on
// n qubits. The attached Hermitian operator is the uniform average over all
// n!/(p!q!r!s!) distinct strings in the orbit.
struct OrbitLabel {
  int n = 0;
  int p = 0, q = 0, r = 0;

  int s() const { return n - p - q - r; }
  int weight() const { return p + q + r; }
  bool valid() const { return n >= 1 && p >= 0 && q >= 0 && r >= 0 && s() >= 0; }
  bool is_identity() const { return weight() == 0; }

  bool operator==(const OrbitLabel& o) const {
    return n == o.n && p == o.p && q == o.q && r == o.r;
  }
  bool operator<(const OrbitLabel& o) const;
  size_t hash() const;
  std::string str() const;  // "p,q,r"
  static OrbitLabel parse(int n, const std::string& text);
};

struct OrbitLabelHash {
  size_t operator()(const OrbitLabel& l) const { return l.hash(); }
};

class OrbitSum {
 public:
  OrbitSum() = default;
  explicit OrbitSum(int n) : n_(n) {}

  int num_qubits() const { return n_; }
  void add(const OrbitLabel& l, double coeff);
  double coeff(const OrbitLabel& l) const;
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::unordered_map<OrbitLabel, double, OrbitLabelHash>& terms() const {
    return terms_;
  }

  // {"n": n, "terms": {"p,q,r": coeff}}
  std::string to_json() const;
  static OrbitSum from_json(const std::string& text);

 private:
  int n_ = 0;
  std::unordered_map<OrbitLabel, double, OrbitLabelHash> terms_;
};

// Exact factorials 0!..n!. Multinomial weights use a 128-bit binomial table
// for n <= 31 and arbitrary precision beyond.
class FactorialTable {
 public:
  explicit FactorialTable(int n);

  int max_n() const { return n_; }
  bool uses_int128() const { return small_; }
  const mpz_class& factorial(int k) const;
  unsigned __int128 binomial_i128(int n, int k) const;  // small path only

 private:
  int n_ = 0;
  bool small_ = false;
  std::vector<mpz_class> fact_;
  std::vector<std::vector<unsigned __int128>> binom_;
};

// Number of distinct Pauli strings in the orbit, n!/(p!q!r!s!). The narrow
// version throws when the count exceeds uint64 and points at the big-integer
// path.
mpz_class orbit_term_count_big(const OrbitLabel& l);
uint64_t orbit_term_count(const OrbitLabel& l);

// ||B||^2 = 2^n / N_terms for the uniform orbit average.
double orbit_norm_sq(const OrbitLabel& l);

// 1 if labels equal else 0 (normalized Hilbert-Schmidt projection).
double orbit_inner_normalized(const OrbitLabel& a, const OrbitLabel& b);

// Expansion of i[H_a, H_b] over orbit labels via pruned contingency-table
// enumeration. Exact integer accumulation per output label; floating point
// only in the final 2/(N N') scale.
OrbitSum orbit_bracket_full(const OrbitLabel& a, const OrbitLabel& b,
                            const FactorialTable& f);

// Same coefficients, restricted to the given targets, via output
// partitioning. Invalid targets (weight > n) are skipped. When `candidates`
// is given it receives the number of enumerated candidate tables, which is
// independent of n for bounded-weight inputs and targets.
std::unordered_map<OrbitLabel, double, OrbitLabelHash> orbit_bracket_targeted(
    const OrbitLabel& a, const OrbitLabel& b, const std::vector<OrbitLabel>& targets,
    const FactorialTable& f, uint64_t* candidates = nullptr);

// Uniform average expanded to strings; throws above the cap since the
// expansion is exponential.
PauliSum orbit_expand(const OrbitLabel& l, int cap = 12);

struct PiAlgebraDim {
  long long dim = 0;                    // binomial(n+3, 3)
  std::vector<long long> sector_dims;   // (n-2k+1)^2, k = 0..floor(n/2)
};
PiAlgebraDim pi_algebra_dim(int n);

}  // namespace liesim

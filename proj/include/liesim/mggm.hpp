#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "liesim/pauli.hpp"

namespace liesim {

enum class SectorOrder { Lexicographic, RevolvingDoor };

// Bijection between weight-k n-bit strings and sector indices 1..d, d =
// C(n,k). Bit 1 is the leftmost position, matching the Pauli text convention.
// Lexicographic mode ranks by ascending position lists; revolving-door mode
// is a combination Gray code whose consecutive strings differ by Hamming
// distance exactly 2.
class SectorIndexer {
 public:
  SectorIndexer(int n, int k, SectorOrder order = SectorOrder::Lexicographic);

  int num_qubits() const { return n_; }
  int hamming_weight() const { return k_; }
  SectorOrder order() const { return order_; }
  int dim() const { return static_cast<int>(states_.size()); }

  // Occupied positions (1-based, ascending) of sector state a in 1..d.
  const std::vector<int>& state(int a) const;
  std::string state_bits(int a) const;  // e.g. "0110"
  int index_of(const std::vector<int>& positions) const;  // 1-based positions

 private:
  int n_ = 0, k_ = 0;
  SectorOrder order_;
  std::vector<std::vector<int>> states_;
  std::unordered_map<uint64_t, int> rank_;  // position-set hash -> index
};

// Basis element of u(d): A = |a><b| - |b><a|, S = i(|a><b| + |b><a|),
// P = i|a><a|. The attached Hermitian operator is -i times the element.
struct MggmElement {
  enum Kind : uint8_t { A = 0, S = 1, P = 2 };
  Kind kind = P;
  int a = 1, b = 0;  // 1-based sector indices, a < b for A/S, b unused for P

  bool operator==(const MggmElement& o) const {
    return kind == o.kind && a == o.a && b == o.b;
  }
  bool operator<(const MggmElement& o) const;
  size_t hash() const;
  std::string str() const;  // "A:1,2" / "S:3,5" / "P:4"
  static MggmElement parse(const std::string& text);
};

struct MggmElementHash {
  size_t operator()(const MggmElement& e) const { return e.hash(); }
};

inline MggmElement mggm_a(int a, int b) { return {MggmElement::A, a, b}; }
inline MggmElement mggm_s(int a, int b) { return {MggmElement::S, a, b}; }
inline MggmElement mggm_p(int a) { return {MggmElement::P, a, 0}; }

double mggm_norm_sq(const MggmElement& e);  // A,S -> 2; P -> 1

class MggmSum {
 public:
  MggmSum() = default;
  MggmSum(int n, int k) : n_(n), k_(k) {}

  int num_qubits() const { return n_; }
  int hamming_weight() const { return k_; }
  void add(const MggmElement& e, double coeff);
  double coeff(const MggmElement& e) const;
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::unordered_map<MggmElement, double, MggmElementHash>& terms() const {
    return terms_;
  }

  // {"n":..., "k":..., "terms": {"A:1,2": coeff, ...}}
  std::string to_json() const;
  static MggmSum from_json(const std::string& text);

 private:
  int n_ = 0, k_ = 0;
  std::unordered_map<MggmElement, double, MggmElementHash> terms_;
};

// Closed-form commutator i[H_x, H_y] over MGGM labels (at most four terms;
// reversed or coincident indices resolved through A^{ba} = -A^{ab},
// S^{ba} = S^{ab}, S^{aa} = 2 P^a, A^{aa} = 0).
std::vector<std::pair<MggmElement, double>> mggm_bracket(const MggmElement& x,
                                                         const MggmElement& y);

// Two-qubit Hamming-weight-preserving Hermitian generator on qubits (i, j),
// parameterized by the symmetric/antisymmetric split e = (a+c)/2, s = (a-c)/2,
// r = Re b, j_coef = Im b of the middle 2x2 block.
struct HWGeneratorSpec {
  int i = 1, j = 2;  // 1-based qubits
  double e = 0.0, s = 0.0, r = 0.0, j_coef = 0.0;
};

// Ordered index pairs (a, b), a < b, of sector states identical outside
// {i, j} with local patterns 01/10. Count = C(n-2, k-1).
std::vector<std::pair<int, int>> active_pairs(const SectorIndexer& idx, int i, int j);

// Restriction of i*H to the sector: j*A + r*S + (s+e)*P^a + (e-s)*P^b summed
// over active pairs, with state a holding the 01 pattern at (i, j).
MggmSum restrict_generator(const HWGeneratorSpec& g, const SectorIndexer& idx);

// Full set of nonzero structure constants of u(d) in the MGGM basis as flat
// (alpha, beta, gamma, f) records over the canonical element ordering
// returned by mggm_basis_elements. Enumerates only index patterns that can
// produce nonzero brackets; never materializes matrices.
struct MggmStructureEntry {
  int alpha, beta, gamma;
  double f;
};

std::vector<MggmElement> mggm_basis_elements(int d);

std::vector<MggmStructureEntry> mggm_structure_constants(
    int d, size_t max_entries = size_t{1} << 28);

// Sum over k of C(n,k)^2; asserts equality with C(2n,n).
long long hw_algebra_dim(int n);

}  // namespace liesim

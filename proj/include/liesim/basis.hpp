#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "liesim/cycle.hpp"
#include "liesim/mggm.hpp"
#include "liesim/orbit.hpp"
#include "liesim/pauli.hpp"

namespace liesim {

// One label of an operator basis. Equality is representation equality; the
// attached Hermitian operator depends on the alternative (string P, shift
// average T(P), orbit average S(P_pqr), or -i times an MGGM element).
using BasisElement = std::variant<PauliString, PauliCycle, OrbitLabel, MggmElement>;

struct BasisElementHash {
  size_t operator()(const BasisElement& e) const;
};

std::string element_str(const BasisElement& e);

// Sparse real vector over basis labels.
using CoeffMap = std::unordered_map<BasisElement, double, BasisElementHash>;

using BracketTerms = std::vector<std::pair<BasisElement, double>>;

// A basis representation bundles the primitives the engine needs: the
// expansion of i[H_a, H_b] over labels, the squared Hilbert-Schmidt norm of a
// label, and label parsing for the text interfaces.
struct Representation {
  std::string name;
  std::function<BracketTerms(const BasisElement&, const BasisElement&)> bracket;
  std::function<double(const BasisElement&)> norm_sq;
  std::function<BasisElement(const std::string&)> parse;
};

Representation pauli_representation(int n);
Representation cycle_representation(int n);
Representation orbit_representation(int n, std::shared_ptr<const FactorialTable> f);
Representation mggm_representation(int n, int k);

// Ordered basis of a DLA or invariant subspace. Labels are registered in
// discovery order; when the closed span equals the full label span the basis
// is the labels themselves, otherwise it keeps explicit orthonormalized span
// vectors over the labels (unit Hilbert-Schmidt norm rows).
class LieBasis {
 public:
  LieBasis() = default;

  static LieBasis from_labels(std::vector<BasisElement> labels, const Representation& rep);

  int dim() const;
  bool is_label_basis() const { return vectors_.empty(); }
  bool truncated() const { return truncated_; }

  // Label universe (== basis elements when is_label_basis()).
  const std::vector<BasisElement>& labels() const { return labels_; }
  int label_index(const BasisElement& e) const;  // -1 when absent
  double label_norm_sq(int li) const { return label_norm_sq_[li]; }

  // Squared norm of basis element alpha (1 for orthonormalized vectors).
  double norm_sq(int alpha) const;

  using SparseVec = std::vector<std::pair<int, double>>;  // (label id, coeff)
  const std::vector<SparseVec>& vectors() const { return vectors_; }

  // Contract per-label values e_l = tr[H_l rho] into basis coordinates.
  std::vector<double> coords_from_label_values(const std::vector<double>& label_values) const;

  // Expansion coefficients of an operator given as a label map; throws when
  // the operator leaves the span (tolerance relative to its norm).
  std::vector<double> coeffs_from_label_map(const CoeffMap& op) const;

  friend LieBasis lie_closure(const std::vector<CoeffMap>& generators,
                              const Representation& rep, int max_dim);

 private:
  std::vector<BasisElement> labels_;
  std::unordered_map<BasisElement, int, BasisElementHash> label_idx_;
  std::vector<double> label_norm_sq_;
  std::vector<SparseVec> vectors_;  // empty => identity (label basis)
  bool truncated_ = false;
};

// Breadth-first nested-commutator closure. A candidate is appended iff its
// residual after projecting out the current span exceeds 1e-10 relative to
// its own norm. Stops with the truncated flag set when max_dim is reached.
LieBasis lie_closure(const std::vector<CoeffMap>& generators, const Representation& rep,
                     int max_dim);

}  // namespace liesim

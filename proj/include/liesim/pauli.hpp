#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace liesim {

// Coefficients with absolute value below this are dropped from all operator
// sums (PauliSum, CycleSum, OrbitSum, MggmSum).
inline constexpr double kCoeffTol = 1e-12;

enum class Letter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(Letter l);

struct PauliBracket;

// An n-qubit Pauli word in binary-symplectic form: per site, x = 1 for X or Z
// and y = 1 for Y or Z, so I=(0,0), X=(1,0), Y=(0,1), Z=(1,1). Qubit 1 is the
// leftmost letter in text form and bit 0 of the packed words. Strings carry no
// phase; brackets return real coefficients separately.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n);

  static PauliString parse(const std::string& text);
  std::string str() const;

  int num_qubits() const { return n_; }
  Letter letter(int site) const;
  void set_letter(int site, Letter l);
  bool is_identity() const;
  int weight() const;

  bool commutes_with(const PauliString& other) const;

  // Expansion of i[a,b] = coeff * op with op phase-free and coeff in {+2,-2};
  // coeff == 0 signals a vanishing commutator.
  static PauliBracket bracket(const PauliString& a, const PauliString& b);

  // Hilbert-Schmidt inner product divided by 2^n: 1 if equal, else 0.
  static double inner_normalized(const PauliString& a, const PauliString& b);

  // Cyclic shift moving site i to site (i + k) mod n.
  PauliString shifted(int k) const;

  // Letterwise order I < X < Y < Z, qubit 1 most significant.
  int compare(const PauliString& other) const;
  bool operator==(const PauliString& other) const;
  bool operator!=(const PauliString& other) const { return !(*this == other); }
  bool operator<(const PauliString& other) const { return compare(other) < 0; }

  size_t hash() const;

  std::span<const uint64_t> x_words() const { return x_; }
  std::span<const uint64_t> y_words() const { return y_; }

  // Sites carrying a non-identity letter, ascending.
  std::vector<int> support() const;

 private:
  int n_ = 0;
  std::vector<uint64_t> x_, y_;
};

struct PauliBracket {
  double coeff = 0.0;
  PauliString op;
};

struct PauliStringHash {
  size_t operator()(const PauliString& p) const { return p.hash(); }
};

// Real-weighted sum of Pauli strings over a fixed qubit count. Coefficients
// below kCoeffTol are pruned on insertion.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n) : n_(n) {}

  int num_qubits() const { return n_; }
  void add(const PauliString& p, double coeff);
  double coeff(const PauliString& p) const;
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  const std::unordered_map<PauliString, double, PauliStringHash>& terms() const {
    return terms_;
  }

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(double s);

  // Bilinear expansion of i[A,B], collected and pruned.
  static PauliSum bracket(const PauliSum& a, const PauliSum& b);

  // Flat JSON object {"n": n, "XIZ": 1.0, ...}.
  std::string to_json() const;
  static PauliSum from_json(const std::string& text);

 private:
  int n_ = 0;
  std::unordered_map<PauliString, double, PauliStringHash> terms_;
};

}  // namespace liesim

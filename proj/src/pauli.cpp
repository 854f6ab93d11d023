#include "liesim/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace liesim {

namespace {

int word_count(int n) { return (n + 63) / 64; }

uint64_t tail_mask(int n) {
  int rem = n % 64;
  return rem == 0 ? ~uint64_t{0} : ((uint64_t{1} << rem) - 1);
}

}  // namespace

char letter_char(Letter l) {
  switch (l) {
    case Letter::I: return 'I';
    case Letter::X: return 'X';
    case Letter::Y: return 'Y';
    case Letter::Z: return 'Z';
  }
  throw std::logic_error("invalid letter");
}

PauliString::PauliString(int n) : n_(n), x_(word_count(n), 0), y_(word_count(n), 0) {
  if (n < 0) throw std::invalid_argument("negative qubit count");
}

PauliString PauliString::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty Pauli string");
  PauliString p(static_cast<int>(text.size()));
  for (size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I': break;
      case 'X': p.set_letter(static_cast<int>(i), Letter::X); break;
      case 'Y': p.set_letter(static_cast<int>(i), Letter::Y); break;
      case 'Z': p.set_letter(static_cast<int>(i), Letter::Z); break;
      default:
        throw std::invalid_argument("invalid Pauli character '" +
                                    std::string(1, text[i]) + "' at position " +
                                    std::to_string(i + 1));
    }
  }
  return p;
}

std::string PauliString::str() const {
  std::string s(n_, 'I');
  for (int i = 0; i < n_; ++i) s[i] = letter_char(letter(i));
  return s;
}

Letter PauliString::letter(int site) const {
  uint64_t xb = (x_[site / 64] >> (site % 64)) & 1;
  uint64_t yb = (y_[site / 64] >> (site % 64)) & 1;
  return static_cast<Letter>((yb << 1) | xb);
}

void PauliString::set_letter(int site, Letter l) {
  uint64_t mask = uint64_t{1} << (site % 64);
  uint64_t code = static_cast<uint64_t>(l);
  if (code & 1)
    x_[site / 64] |= mask;
  else
    x_[site / 64] &= ~mask;
  if (code & 2)
    y_[site / 64] |= mask;
  else
    y_[site / 64] &= ~mask;
}

bool PauliString::is_identity() const {
  for (size_t w = 0; w < x_.size(); ++w)
    if (x_[w] | y_[w]) return false;
  return true;
}

int PauliString::weight() const {
  int w = 0;
  for (size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | y_[i]);
  return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (n_ != other.n_) throw std::invalid_argument("qubit count mismatch");
  int anti = 0;
  for (size_t w = 0; w < x_.size(); ++w) {
    uint64_t a_occ = x_[w] | y_[w];
    uint64_t b_occ = other.x_[w] | other.y_[w];
    uint64_t differ = (x_[w] ^ other.x_[w]) | (y_[w] ^ other.y_[w]);
    anti += std::popcount(a_occ & b_occ & differ);
  }
  return (anti % 2) == 0;
}

PauliBracket PauliString::bracket(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("qubit count mismatch");
  // Sitewise products: the cyclic triples (X,Y), (Y,Z), (Z,X) pick up a +i
  // phase, the reversed ones -i. i[a,b] = 2 i^(phi+1) r with phi the total
  // phase exponent; the commutator vanishes when phi is even.
  int fwd = 0, bwd = 0;
  for (size_t w = 0; w < a.x_.size(); ++w) {
    uint64_t ax = a.x_[w], ay = a.y_[w], bx = b.x_[w], by = b.y_[w];
    uint64_t a_isx = ax & ~ay, a_isy = ~ax & ay, a_isz = ax & ay;
    uint64_t b_isx = bx & ~by, b_isy = ~bx & by, b_isz = bx & by;
    fwd += std::popcount((a_isx & b_isy) | (a_isy & b_isz) | (a_isz & b_isx));
    bwd += std::popcount((a_isy & b_isx) | (a_isz & b_isy) | (a_isx & b_isz));
  }
  int phi = (fwd + 3 * bwd) % 4;
  if (phi % 2 == 0) return {};
  PauliBracket out;
  out.coeff = (phi == 3) ? 2.0 : -2.0;
  out.op = PauliString(a.n_);
  for (size_t w = 0; w < a.x_.size(); ++w) {
    out.op.x_[w] = a.x_[w] ^ b.x_[w];
    out.op.y_[w] = a.y_[w] ^ b.y_[w];
  }
  return out;
}

double PauliString::inner_normalized(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("qubit count mismatch");
  return a == b ? 1.0 : 0.0;
}

PauliString PauliString::shifted(int k) const {
  k = ((k % n_) + n_) % n_;
  if (k == 0) return *this;
  PauliString out(n_);
  for (int i = 0; i < n_; ++i) {
    Letter l = letter(i);
    if (l != Letter::I) out.set_letter((i + k) % n_, l);
  }
  return out;
}

int PauliString::compare(const PauliString& other) const {
  if (n_ != other.n_) return n_ < other.n_ ? -1 : 1;
  for (int i = 0; i < n_; ++i) {
    auto a = static_cast<uint8_t>(letter(i));
    auto b = static_cast<uint8_t>(other.letter(i));
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

bool PauliString::operator==(const PauliString& other) const {
  return n_ == other.n_ && x_ == other.x_ && y_ == other.y_;
}

size_t PauliString::hash() const {
  uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(n_);
  auto mix = [&h](uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
  };
  for (uint64_t w : x_) mix(w);
  for (uint64_t w : y_) mix(w);
  return static_cast<size_t>(h);
}

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (size_t w = 0; w < x_.size(); ++w) {
    uint64_t occ = x_[w] | y_[w];
    while (occ) {
      int bit = std::countr_zero(occ);
      out.push_back(static_cast<int>(w) * 64 + bit);
      occ &= occ - 1;
    }
  }
  return out;
}

void PauliSum::add(const PauliString& p, double coeff) {
  if (p.num_qubits() != n_) throw std::invalid_argument("qubit count mismatch");
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    if (std::abs(coeff) > kCoeffTol) terms_.emplace(p, coeff);
    return;
  }
  it->second += coeff;
  if (std::abs(it->second) <= kCoeffTol) terms_.erase(it);
}

double PauliSum::coeff(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0.0 : it->second;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_ != n_) throw std::invalid_argument("qubit count mismatch");
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PauliSum& PauliSum::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  std::unordered_map<PauliString, double, PauliStringHash> scaled;
  for (const auto& [p, c] : terms_)
    if (std::abs(c * s) > kCoeffTol) scaled.emplace(p, c * s);
  terms_ = std::move(scaled);
  return *this;
}

PauliSum PauliSum::bracket(const PauliSum& a, const PauliSum& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("qubit count mismatch");
  PauliSum out(a.n_);
  for (const auto& [p, cp] : a.terms_) {
    for (const auto& [q, cq] : b.terms_) {
      auto br = PauliString::bracket(p, q);
      if (br.coeff != 0.0) out.add(br.op, cp * cq * br.coeff);
    }
  }
  return out;
}

std::string PauliSum::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  for (const auto& [p, c] : terms_) j[p.str()] = c;
  return j.dump();
}

PauliSum PauliSum::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("n")) throw std::invalid_argument("PauliSum JSON missing \"n\"");
  PauliSum out(j["n"].get<int>());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "n") continue;
    out.add(PauliString::parse(it.key()), it.value().get<double>());
  }
  return out;
}

}  // namespace liesim

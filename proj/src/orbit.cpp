#include "liesim/orbit.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace liesim {

namespace {

// Global bracket sign relative to the printed contingency-table sign rule,
// fixed once by the dense-oracle calibration test at n = 3.
constexpr double kOrbitBracketSign = -1.0;

enum Cell : int { cX = 0, cY = 1, cZ = 2, cI = 3 };

struct Table {
  std::array<std::array<int, 4>, 4> e{};  // e[row][col], row = first operand

  int parity_sum() const {
    return e[cX][cY] + e[cX][cZ] + e[cY][cX] + e[cY][cZ] + e[cZ][cX] + e[cZ][cY];
  }
  OrbitLabel output(int n) const {
    OrbitLabel out;
    out.n = n;
    out.p = e[cX][cI] + e[cI][cX] + e[cY][cZ] + e[cZ][cY];
    out.q = e[cY][cI] + e[cI][cY] + e[cZ][cX] + e[cX][cZ];
    out.r = e[cZ][cI] + e[cI][cZ] + e[cX][cY] + e[cY][cX];
    return out;
  }
  // (-1)^(E + (D-1)/2) with E = eta_YX + eta_ZY + eta_XZ.
  int sign() const {
    int d = parity_sum();
    int ex = e[cY][cX] + e[cZ][cY] + e[cX][cZ] + (d - 1) / 2;
    return (ex % 2 == 0) ? 1 : -1;
  }
};

struct I128Policy {
  using Acc = __int128;
  const FactorialTable& f;
  int n;
  Acc weight(const Table& t) const {
    int rem = n;
    unsigned __int128 w = 1;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        w *= f.binomial_i128(rem, t.e[a][b]);
        rem -= t.e[a][b];
      }
    }
    return static_cast<Acc>(w);
  }
  static double to_double(const Acc& v) { return static_cast<double>(v); }
};

struct BigPolicy {
  using Acc = mpz_class;
  const FactorialTable& f;
  int n;
  Acc weight(const Table& t) const {
    mpz_class w = f.factorial(n);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) w /= f.factorial(t.e[a][b]);
    return w;
  }
  static double to_double(const Acc& v) { return v.get_d(); }
};

// Row-by-row enumeration of the 3x3 free block with capacity pruning; the
// I-row is forced by the remaining column capacities.
template <typename Policy, typename Sink>
void enumerate_tables(const OrbitLabel& a, const OrbitLabel& b, Policy pol, Sink&& sink) {
  const int n = a.n;
  const std::array<int, 4> row = {a.p, a.q, a.r, a.s()};
  const std::array<int, 4> col0 = {b.p, b.q, b.r, b.s()};
  Table t;
  std::array<int, 4> c1{}, c2{}, c3{};

  for (int xx = 0; xx <= std::min(row[cX], col0[cX]); ++xx)
    for (int xy = 0; xy <= std::min(row[cX] - xx, col0[cY]); ++xy)
      for (int xz = 0; xz <= std::min(row[cX] - xx - xy, col0[cZ]); ++xz) {
        int xi = row[cX] - xx - xy - xz;
        if (xi > col0[cI]) continue;
        t.e[cX] = {xx, xy, xz, xi};
        c1 = {col0[cX] - xx, col0[cY] - xy, col0[cZ] - xz, col0[cI] - xi};

        for (int yx = 0; yx <= std::min(row[cY], c1[cX]); ++yx)
          for (int yy = 0; yy <= std::min(row[cY] - yx, c1[cY]); ++yy)
            for (int yz = 0; yz <= std::min(row[cY] - yx - yy, c1[cZ]); ++yz) {
              int yi = row[cY] - yx - yy - yz;
              if (yi > c1[cI]) continue;
              t.e[cY] = {yx, yy, yz, yi};
              c2 = {c1[cX] - yx, c1[cY] - yy, c1[cZ] - yz, c1[cI] - yi};

              for (int zx = 0; zx <= std::min(row[cZ], c2[cX]); ++zx)
                for (int zy = 0; zy <= std::min(row[cZ] - zx, c2[cY]); ++zy)
                  for (int zz = 0; zz <= std::min(row[cZ] - zx - zy, c2[cZ]); ++zz) {
                    int zi = row[cZ] - zx - zy - zz;
                    if (zi > c2[cI]) continue;
                    t.e[cZ] = {zx, zy, zz, zi};
                    c3 = {c2[cX] - zx, c2[cY] - zy, c2[cZ] - zz, c2[cI] - zi};

                    if (c3[cX] + c3[cY] + c3[cZ] + c3[cI] != row[cI]) continue;
                    t.e[cI] = c3;
                    if (t.parity_sum() % 2 == 0) continue;
                    sink(t, pol.weight(t));
                  }
            }
      }
  (void)n;
}

template <typename Policy>
OrbitSum bracket_full_impl(const OrbitLabel& a, const OrbitLabel& b, Policy pol) {
  using Acc = typename Policy::Acc;
  std::unordered_map<OrbitLabel, Acc, OrbitLabelHash> acc;
  enumerate_tables(a, b, pol, [&](const Table& t, Acc w) {
    Acc& slot = acc[t.output(a.n)];
    if (t.sign() > 0)
      slot += w;
    else
      slot -= w;
  });
  double scale = kOrbitBracketSign * 2.0 /
                 (orbit_term_count_big(a).get_d() * orbit_term_count_big(b).get_d());
  OrbitSum out(a.n);
  for (const auto& [label, s] : acc) out.add(label, Policy::to_double(s) * scale);
  return out;
}

struct CellRef {
  int row, col;
};

// The twelve free entries grouped by the output count they feed.
constexpr std::array<CellRef, 4> kPGroup = {{{cX, cI}, {cI, cX}, {cY, cZ}, {cZ, cY}}};
constexpr std::array<CellRef, 4> kQGroup = {{{cY, cI}, {cI, cY}, {cZ, cX}, {cX, cZ}}};
constexpr std::array<CellRef, 4> kRGroup = {{{cZ, cI}, {cI, cZ}, {cX, cY}, {cY, cX}}};

template <typename Policy>
double targeted_single(const OrbitLabel& a, const OrbitLabel& b, const OrbitLabel& tgt,
                       Policy pol, uint64_t* candidates) {
  using Acc = typename Policy::Acc;
  const std::array<int, 4> row = {a.p, a.q, a.r, a.s()};
  const std::array<int, 4> col = {b.p, b.q, b.r, b.s()};

  auto cap = [&](CellRef c) { return std::min(row[c.row], col[c.col]); };

  Acc sum = 0;
  Table t;
  std::array<int, 4> part{};
  auto fill_group = [&](const std::array<CellRef, 4>& grp, int total, auto&& next) {
    for (part[0] = 0; part[0] <= std::min(total, cap(grp[0])); ++part[0])
      for (part[1] = 0; part[1] <= std::min(total - part[0], cap(grp[1])); ++part[1])
        for (part[2] = 0; part[2] <= std::min(total - part[0] - part[1], cap(grp[2]));
             ++part[2]) {
          int last = total - part[0] - part[1] - part[2];
          if (last > cap(grp[3])) continue;
          part[3] = last;
          for (int j = 0; j < 4; ++j) t.e[grp[j].row][grp[j].col] = part[j];
          next();
        }
  };

  fill_group(kPGroup, tgt.p, [&] {
    std::array<int, 4> p_saved = part;
    fill_group(kQGroup, tgt.q, [&] {
      std::array<int, 4> q_saved = part;
      fill_group(kRGroup, tgt.r, [&] {
        if (candidates) ++*candidates;
        // Diagonals forced by row marginals.
        t.e[cX][cX] = row[cX] - t.e[cX][cI] - t.e[cX][cY] - t.e[cX][cZ];
        t.e[cY][cY] = row[cY] - t.e[cY][cI] - t.e[cY][cX] - t.e[cY][cZ];
        t.e[cZ][cZ] = row[cZ] - t.e[cZ][cI] - t.e[cZ][cX] - t.e[cZ][cY];
        t.e[cI][cI] = row[cI] - t.e[cI][cX] - t.e[cI][cY] - t.e[cI][cZ];
        if (t.e[cX][cX] < 0 || t.e[cY][cY] < 0 || t.e[cZ][cZ] < 0 || t.e[cI][cI] < 0)
          return;
        if (t.e[cX][cX] + t.e[cY][cX] + t.e[cZ][cX] + t.e[cI][cX] != col[cX]) return;
        if (t.e[cX][cY] + t.e[cY][cY] + t.e[cZ][cY] + t.e[cI][cY] != col[cY]) return;
        if (t.e[cX][cZ] + t.e[cY][cZ] + t.e[cZ][cZ] + t.e[cI][cZ] != col[cZ]) return;
        if (t.parity_sum() % 2 == 0) return;
        Acc w = pol.weight(t);
        if (t.sign() > 0)
          sum += w;
        else
          sum -= w;
      });
      part = q_saved;
    });
    part = p_saved;
  });

  double scale = kOrbitBracketSign * 2.0 /
                 (orbit_term_count_big(a).get_d() * orbit_term_count_big(b).get_d());
  return Policy::to_double(sum) * scale;
}

}  // namespace

bool OrbitLabel::operator<(const OrbitLabel& o) const {
  if (n != o.n) return n < o.n;
  if (p != o.p) return p < o.p;
  if (q != o.q) return q < o.q;
  return r < o.r;
}

size_t OrbitLabel::hash() const {
  uint64_t h = static_cast<uint64_t>(n);
  h = h * 0x100000001b3ull ^ static_cast<uint64_t>(p);
  h = h * 0x100000001b3ull ^ static_cast<uint64_t>(q);
  h = h * 0x100000001b3ull ^ static_cast<uint64_t>(r);
  return static_cast<size_t>(h * 0xff51afd7ed558ccdull);
}

std::string OrbitLabel::str() const {
  return std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r);
}

OrbitLabel OrbitLabel::parse(int n, const std::string& text) {
  OrbitLabel l;
  l.n = n;
  char comma1 = 0, comma2 = 0;
  std::istringstream in(text);
  if (!(in >> l.p >> comma1 >> l.q >> comma2 >> l.r) || comma1 != ',' || comma2 != ',')
    throw std::invalid_argument("invalid orbit label '" + text + "'");
  if (!l.valid()) throw std::invalid_argument("orbit label out of range: " + text);
  return l;
}

void OrbitSum::add(const OrbitLabel& l, double coeff) {
  if (l.n != n_) throw std::invalid_argument("qubit count mismatch");
  auto it = terms_.find(l);
  if (it == terms_.end()) {
    if (std::abs(coeff) > kCoeffTol) terms_.emplace(l, coeff);
    return;
  }
  it->second += coeff;
  if (std::abs(it->second) <= kCoeffTol) terms_.erase(it);
}

double OrbitSum::coeff(const OrbitLabel& l) const {
  auto it = terms_.find(l);
  return it == terms_.end() ? 0.0 : it->second;
}

std::string OrbitSum::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["terms"] = nlohmann::json::object();
  for (const auto& [l, v] : terms_) j["terms"][l.str()] = v;
  return j.dump();
}

OrbitSum OrbitSum::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int n = j.at("n").get<int>();
  OrbitSum out(n);
  for (auto it = j.at("terms").begin(); it != j.at("terms").end(); ++it)
    out.add(OrbitLabel::parse(n, it.key()), it.value().get<double>());
  return out;
}

FactorialTable::FactorialTable(int n) : n_(n), small_(n <= 31) {
  if (n < 0) throw std::invalid_argument("negative table size");
  fact_.resize(n + 1);
  fact_[0] = 1;
  for (int k = 1; k <= n; ++k) fact_[k] = fact_[k - 1] * k;
  if (small_) {
    binom_.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
      binom_[i].assign(i + 1, 1);
      for (int j = 1; j < i; ++j) binom_[i][j] = binom_[i - 1][j - 1] + binom_[i - 1][j];
    }
  }
}

const mpz_class& FactorialTable::factorial(int k) const {
  if (k < 0 || k > n_)
    throw std::out_of_range("factorial table covers 0.." + std::to_string(n_));
  return fact_[k];
}

unsigned __int128 FactorialTable::binomial_i128(int n, int k) const {
  return binom_[n][k];
}

mpz_class orbit_term_count_big(const OrbitLabel& l) {
  if (!l.valid()) throw std::invalid_argument("invalid orbit label");
  mpz_class num = 1;
  for (int k = 2; k <= l.n; ++k) num *= k;
  auto div_fact = [&num](int k) {
    for (int i = 2; i <= k; ++i) num /= i;
  };
  div_fact(l.p);
  div_fact(l.q);
  div_fact(l.r);
  div_fact(l.s());
  return num;
}

uint64_t orbit_term_count(const OrbitLabel& l) {
  mpz_class big = orbit_term_count_big(l);
  if (!big.fits_ulong_p())
    throw std::overflow_error(
        "orbit term count exceeds 64-bit range; use orbit_term_count_big");
  return static_cast<uint64_t>(big.get_ui());
}

double orbit_norm_sq(const OrbitLabel& l) {
  return std::ldexp(1.0, l.n) / orbit_term_count_big(l).get_d();
}

double orbit_inner_normalized(const OrbitLabel& a, const OrbitLabel& b) {
  if (a.n != b.n) throw std::invalid_argument("qubit count mismatch");
  return a == b ? 1.0 : 0.0;
}

OrbitSum orbit_bracket_full(const OrbitLabel& a, const OrbitLabel& b,
                            const FactorialTable& f) {
  if (a.n != b.n) throw std::invalid_argument("qubit count mismatch");
  if (f.max_n() < a.n) throw std::invalid_argument("factorial table too small");
  if (f.uses_int128()) return bracket_full_impl(a, b, I128Policy{f, a.n});
  return bracket_full_impl(a, b, BigPolicy{f, a.n});
}

std::unordered_map<OrbitLabel, double, OrbitLabelHash> orbit_bracket_targeted(
    const OrbitLabel& a, const OrbitLabel& b, const std::vector<OrbitLabel>& targets,
    const FactorialTable& f, uint64_t* candidates) {
  if (a.n != b.n) throw std::invalid_argument("qubit count mismatch");
  if (f.max_n() < a.n) throw std::invalid_argument("factorial table too small");
  std::unordered_map<OrbitLabel, double, OrbitLabelHash> out;
  for (const auto& tgt : targets) {
    if (tgt.weight() > a.n || tgt.p < 0 || tgt.q < 0 || tgt.r < 0) continue;
    double c = f.uses_int128()
                   ? targeted_single(a, b, tgt, I128Policy{f, a.n}, candidates)
                   : targeted_single(a, b, tgt, BigPolicy{f, a.n}, candidates);
    if (std::abs(c) > kCoeffTol) out[tgt] = c;
  }
  return out;
}

namespace {

void expand_rec(const OrbitLabel& l, int site, int px, int qy, int rz, PauliString& cur,
                double w, PauliSum& out) {
  int left = l.n - site;
  if (px + qy + rz > left) return;
  if (site == l.n) {
    out.add(cur, w);
    return;
  }
  expand_rec(l, site + 1, px, qy, rz, cur, w, out);  // I
  if (px > 0) {
    cur.set_letter(site, Letter::X);
    expand_rec(l, site + 1, px - 1, qy, rz, cur, w, out);
    cur.set_letter(site, Letter::I);
  }
  if (qy > 0) {
    cur.set_letter(site, Letter::Y);
    expand_rec(l, site + 1, px, qy - 1, rz, cur, w, out);
    cur.set_letter(site, Letter::I);
  }
  if (rz > 0) {
    cur.set_letter(site, Letter::Z);
    expand_rec(l, site + 1, px, qy, rz - 1, cur, w, out);
    cur.set_letter(site, Letter::I);
  }
}

}  // namespace

PauliSum orbit_expand(const OrbitLabel& l, int cap) {
  if (!l.valid()) throw std::invalid_argument("invalid orbit label");
  if (l.n > cap)
    throw std::invalid_argument("orbit expansion capped at n = " + std::to_string(cap));
  PauliSum out(l.n);
  PauliString cur(l.n);
  expand_rec(l, 0, l.p, l.q, l.r, cur, 1.0 / orbit_term_count_big(l).get_d(), out);
  return out;
}

PiAlgebraDim pi_algebra_dim(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  PiAlgebraDim out;
  long long nn = n;
  out.dim = (nn + 3) * (nn + 2) * (nn + 1) / 6;
  long long check = 0;
  for (int k = 0; 2 * k <= n; ++k) {
    long long d = nn - 2 * k + 1;
    out.sector_dims.push_back(d * d);
    check += d * d;
  }
  if (check != out.dim) throw std::logic_error("sector dimension sum mismatch");
  return out;
}

}  // namespace liesim

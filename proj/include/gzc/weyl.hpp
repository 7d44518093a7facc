#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "gzc/errors.hpp"

namespace gzc {

enum class Family { A, B, C, D };

inline char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

using IntVec = std::vector<int>;

// roots live in Z^dim; dim = rank + 1 for A, rank otherwise (D_1 has dim 1, rank 0)
struct RootSystem {
  Family family = Family::A;
  int rank = 0;
  int dim = 1;
  std::vector<IntVec> roots, positive_roots, simple_roots;
};

inline bool is_positive(const IntVec& v) {
  for (int x : v)
    if (x != 0) return x > 0;
  return false;
}

inline RootSystem make_root_system(Family f, int m) {
  RootSystem R;
  R.family = f;
  int dim = (f == Family::A) ? m + 1 : m;
  if (f == Family::D && m == 1) dim = 1;
  R.dim = dim;
  auto unit = [&](int i, int a, int j = -1, int b = 0) {
    IntVec v(dim, 0);
    v[i] += a;
    if (j >= 0) v[j] += b;
    return v;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      R.positive_roots.push_back(unit(i, 1, j, -1));
      if (f != Family::A) R.positive_roots.push_back(unit(i, 1, j, 1));
    }
  if (f == Family::B)
    for (int i = 0; i < dim; ++i) R.positive_roots.push_back(unit(i, 1));
  if (f == Family::C)
    for (int i = 0; i < dim; ++i) R.positive_roots.push_back(unit(i, 2));

  if (f == Family::D) {
    for (int i = 0; i + 1 < dim; ++i) R.simple_roots.push_back(unit(i, 1, i + 1, -1));
    if (dim >= 2) R.simple_roots.push_back(unit(dim - 2, 1, dim - 1, 1));
  } else {
    for (int i = 0; i + 1 < dim; ++i) R.simple_roots.push_back(unit(i, 1, i + 1, -1));
    if (f == Family::B && dim >= 1) R.simple_roots.push_back(unit(dim - 1, 1));
    if (f == Family::C && dim >= 1) R.simple_roots.push_back(unit(dim - 1, 2));
  }
  R.rank = int(R.simple_roots.size());
  for (auto& a : R.positive_roots) {
    R.roots.push_back(a);
    IntVec b(a);
    for (int& x : b) x = -x;
    R.roots.push_back(b);
  }
  return R;
}

// signed permutation of {1..dim}; im[i-1] = w(i)
struct WeylElement {
  IntVec im;

  static WeylElement identity(int dim) {
    WeylElement e;
    e.im.resize(dim);
    std::iota(e.im.begin(), e.im.end(), 1);
    return e;
  }
  int dim() const { return int(im.size()); }
  int operator()(int i) const { return i > 0 ? im[i - 1] : -im[-i - 1]; }
  bool is_identity() const {
    for (int i = 0; i < dim(); ++i)
      if (im[i] != i + 1) return false;
    return true;
  }
  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.im == b.im; }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return a.im != b.im; }
  friend bool operator<(const WeylElement& a, const WeylElement& b) { return a.im < b.im; }
};

inline WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  WeylElement c;
  c.im.resize(b.im.size());
  for (std::size_t i = 0; i < b.im.size(); ++i) c.im[i] = a(b.im[i]);
  return c;
}

inline WeylElement inverse(const WeylElement& w) {
  WeylElement v;
  v.im.resize(w.im.size());
  for (int i = 0; i < w.dim(); ++i) {
    int t = w.im[i];
    v.im[std::abs(t) - 1] = t > 0 ? i + 1 : -(i + 1);
  }
  return v;
}

inline IntVec act(const WeylElement& w, const IntVec& v) {
  IntVec r(v.size(), 0);
  for (int i = 0; i < w.dim(); ++i) {
    int t = w.im[i];
    r[std::abs(t) - 1] = t > 0 ? v[i] : -v[i];
  }
  return r;
}

inline int negative_count(const WeylElement& w) {
  int c = 0;
  for (int t : w.im) c += t < 0;
  return c;
}

// fixed-width subset of S, bit i = simple reflection s_{i+1}
struct SimpleSubset {
  std::uint32_t bits = 0;

  static SimpleSubset all(int r) { return {r >= 32 ? ~0u : ((1u << r) - 1u)}; }
  static SimpleSubset of(std::initializer_list<int> idx) {
    SimpleSubset s;
    for (int i : idx) s.bits |= 1u << i;
    return s;
  }
  bool has(int i) const { return (bits >> i) & 1u; }
  void insert(int i) { bits |= 1u << i; }
  void erase(int i) { bits &= ~(1u << i); }
  int size() const { return __builtin_popcount(bits); }
  bool empty() const { return bits == 0; }
  std::vector<int> members() const {
    std::vector<int> r;
    for (int i = 0; i < 32; ++i)
      if (has(i)) r.push_back(i);
    return r;
  }
  friend bool operator==(SimpleSubset a, SimpleSubset b) { return a.bits == b.bits; }
  friend bool operator!=(SimpleSubset a, SimpleSubset b) { return a.bits != b.bits; }
};

// component group; element 0 is the identity, omega acts on W by conjugation with conj[omega]
struct OmegaGroup {
  int order = 1;
  std::vector<std::vector<int>> mul{{0}};
  std::vector<int> inv{0};
  std::vector<WeylElement> conj;
  std::vector<bool> trivial{true};
  std::vector<std::string> names{"1"};
};

// phibar(w) = conj * w * conj^-1 on W, omega_map on Omega
struct Frobenius {
  WeylElement conj;
  std::vector<int> omega_map{0};
};

struct WeylSystem {
  RootSystem roots;
  std::vector<WeylElement> simples;
  OmegaGroup omega;
  Frobenius frob;

  int rank() const { return roots.rank; }
  int dim() const { return roots.dim; }
  WeylElement identity() const { return WeylElement::identity(dim()); }
  WeylElement phibar(const WeylElement& w) const { return frob.conj * w * inverse(frob.conj); }
  WeylElement phibar_inv(const WeylElement& w) const { return inverse(frob.conj) * w * frob.conj; }
  WeylElement omega_act(int om, const WeylElement& w) const {
    if (omega.trivial[om]) return w;
    return omega.conj[om] * w * inverse(omega.conj[om]);
  }
  std::uint64_t order() const;
};

inline WeylElement simple_reflection(const RootSystem& R, int i) {
  WeylElement s = WeylElement::identity(R.dim);
  int n = R.dim;
  bool last = (i == R.rank - 1);
  if (R.family == Family::A || !last) {
    std::swap(s.im[i], s.im[i + 1]);
  } else if (R.family == Family::D) {
    s.im[n - 2] = -n;
    s.im[n - 1] = -(n - 1);
  } else {
    s.im[n - 1] = -n;
  }
  return s;
}

inline WeylSystem make_weyl_system(Family f, int rank) {
  WeylSystem W;
  W.roots = make_root_system(f, rank);
  for (int i = 0; i < W.roots.rank; ++i) W.simples.push_back(simple_reflection(W.roots, i));
  W.omega.conj = {W.identity()};
  W.frob.conj = W.identity();
  return W;
}

inline int length(const WeylSystem& W, const WeylElement& w) {
  int c = 0;
  for (const auto& a : W.roots.positive_roots) c += !is_positive(act(w, a));
  return c;
}

// l(s_i w) < l(w)
inline bool is_left_descent(const WeylSystem& W, const WeylElement& w, int i) {
  return !is_positive(act(inverse(w), W.roots.simple_roots[i]));
}

// l(w s_i) < l(w)
inline bool is_right_descent(const WeylSystem& W, const WeylElement& w, int i) {
  return !is_positive(act(w, W.roots.simple_roots[i]));
}

inline WeylElement from_word(const WeylSystem& W, const std::vector<int>& word) {
  WeylElement w = W.identity();
  for (int i : word) w = w * W.simples.at(i);
  return w;
}

// lexicographically smallest reduced word (0-based letters)
inline std::vector<int> reduced_word(const WeylSystem& W, WeylElement w) {
  std::vector<int> word;
  while (!w.is_identity()) {
    int s = 0;
    while (!is_left_descent(W, w, s)) ++s;
    word.push_back(s);
    w = W.simples[s] * w;
  }
  return word;
}

inline std::string word_string(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string r;
  for (int i : word) r += "s" + std::to_string(i + 1);
  return r;
}

inline bool bruhat_leq(const WeylSystem& W, WeylElement u, WeylElement w) {
  int lu = length(W, u), lw = length(W, w);
  for (;;) {
    if (lu > lw) return false;
    if (lu == lw) return u == w;
    if (lu == 0) return true;
    int s = 0;
    while (!is_left_descent(W, w, s)) ++s;
    if (is_left_descent(W, u, s)) {
      u = W.simples[s] * u;
      --lu;
    }
    w = W.simples[s] * w;
    --lw;
  }
}

inline int coxeter_m(const WeylSystem& W, int i, int j) {
  if (i == j) return 1;
  WeylElement st = W.simples[i] * W.simples[j], p = st;
  int m = 1;
  while (!p.is_identity()) {
    p = p * st;
    ++m;
  }
  return m;
}

// |W_K| from the Coxeter graph; classical components only
inline std::uint64_t parabolic_order(const WeylSystem& W, SimpleSubset K) {
  auto mem = K.members();
  std::vector<int> seen(W.rank(), 0);
  std::uint64_t total = 1;
  for (int start : mem) {
    if (seen[start]) continue;
    std::vector<int> comp{start};
    seen[start] = 1;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (int t : mem)
        if (!seen[t] && coxeter_m(W, comp[h], t) > 2) {
          seen[t] = 1;
          comp.push_back(t);
        }
    int k = int(comp.size());
    bool four = false, branch = false;
    for (int a : comp) {
      int deg = 0;
      for (int b : comp) {
        int m = a == b ? 1 : coxeter_m(W, a, b);
        if (m > 2) ++deg;
        if (m == 4) four = true;
      }
      if (deg >= 3) branch = true;
    }
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= std::uint64_t(i);
    if (four)
      total *= f << k;
    else if (branch)
      total *= f << (k - 1);
    else
      total *= f * std::uint64_t(k + 1);
  }
  return total;
}

inline std::uint64_t WeylSystem::order() const { return parabolic_order(*this, SimpleSubset::all(rank())); }

inline WeylElement longest_element(const WeylSystem& W, SimpleSubset K) {
  guard(parabolic_order(W, K), "parabolic subgroup order");
  WeylElement w = W.identity();
  for (bool grew = true; grew;) {
    grew = false;
    for (int s : K.members())
      if (!is_right_descent(W, w, s)) {
        w = w * W.simples[s];
        grew = true;
      }
  }
  return w;
}

inline WeylElement longest_element(const WeylSystem& W) {
  return longest_element(W, SimpleSubset::all(W.rank()));
}

// all of W_K, breadth first (so by nondecreasing length)
inline std::vector<WeylElement> enumerate_parabolic(const WeylSystem& W, SimpleSubset K) {
  guard(parabolic_order(W, K), "parabolic subgroup order");
  std::vector<WeylElement> out{W.identity()};
  std::unordered_map<std::string, int> seen;
  auto key = [](const WeylElement& w) { return std::string(w.im.begin(), w.im.end()); };
  seen[key(out[0])] = 0;
  for (std::size_t h = 0; h < out.size(); ++h)
    for (int s : K.members()) {
      WeylElement v = out[h] * W.simples[s];
      if (seen.emplace(key(v), int(out.size())).second) out.push_back(v);
    }
  return out;
}

enum class Side { left, right };

// left: minimal in W_K w, i.e. l(sw) > l(w) for s in K; right: minimal in w W_K
inline std::vector<WeylElement> min_coset_reps(const WeylSystem& W, SimpleSubset K, Side side) {
  guard(W.order() / parabolic_order(W, K), "coset count");
  std::vector<WeylElement> out{W.identity()};
  std::unordered_map<std::string, int> seen;
  auto key = [](const WeylElement& w) { return std::string(w.im.begin(), w.im.end()); };
  seen[key(out[0])] = 0;
  auto ok = [&](const WeylElement& w) {
    for (int s : K.members())
      if (is_left_descent(W, w, s)) return false;
    return true;
  };
  for (std::size_t h = 0; h < out.size(); ++h)
    for (int s = 0; s < W.rank(); ++s) {
      if (is_right_descent(W, out[h], s)) continue;
      WeylElement v = out[h] * W.simples[s];
      if (!ok(v)) continue;
      if (seen.emplace(key(v), int(out.size())).second) out.push_back(v);
    }
  if (side == Side::right)
    for (auto& w : out) w = inverse(w);
  return out;
}

inline WeylElement min_double_coset_rep(const WeylSystem& W, SimpleSubset K, SimpleSubset Kp,
                                        WeylElement w) {
  for (bool moved = true; moved;) {
    moved = false;
    for (int s : K.members())
      if (is_left_descent(W, w, s)) {
        w = W.simples[s] * w;
        moved = true;
      }
    for (int s : Kp.members())
      if (is_right_descent(W, w, s)) {
        w = w * W.simples[s];
        moved = true;
      }
  }
  return w;
}

// index of w * s_i * w^-1 if it is a simple reflection, else -1
inline int as_simple(const WeylSystem& W, const WeylElement& w) {
  for (int i = 0; i < W.rank(); ++i)
    if (W.simples[i] == w) return i;
  return -1;
}

inline SimpleSubset conjugate_subset(const WeylSystem& W, const WeylElement& c, SimpleSubset K) {
  SimpleSubset r;
  for (int s : K.members()) {
    int t = as_simple(W, c * W.simples[s] * inverse(c));
    if (t < 0) throw ConsistencyError("conjugate of a simple reflection is not simple");
    r.insert(t);
  }
  return r;
}

inline std::string subset_string(SimpleSubset K) {
  std::string r = "{";
  bool first = true;
  for (int s : K.members()) {
    if (!first) r += ",";
    r += "s" + std::to_string(s + 1);
    first = false;
  }
  return r + "}";
}

// Indexed copy of W for repeated queries; elements are stored by nondecreasing length.
class WeylTable {
 public:
  explicit WeylTable(const WeylSystem& W, std::size_t bitset_limit = 6000) : W_(&W) {
    guard(W.order(), "Weyl group order");
    if (W.dim() > 12) throw ResourceError("Weyl table supports at most 12 coordinates");
    elems_ = enumerate_parabolic(W, SimpleSubset::all(W.rank()));
    std::size_t n = elems_.size();
    idx_.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) idx_[key(elems_[i])] = int(i);
    len_.resize(n);
    for (std::size_t i = 0; i < n; ++i) len_[i] = gzc::length(W, elems_[i]);
    int r = W.rank();
    lmul_.assign(std::size_t(r) * n, 0);
    rmul_.assign(std::size_t(r) * n, 0);
    for (int s = 0; s < r; ++s)
      for (std::size_t i = 0; i < n; ++i) {
        lmul_[s * n + i] = index(W.simples[s] * elems_[i]);
        rmul_[s * n + i] = index(elems_[i] * W.simples[s]);
      }
    if (n <= bitset_limit) build_lower_sets();
  }

  const WeylSystem& system() const { return *W_; }
  std::size_t size() const { return elems_.size(); }
  const WeylElement& element(int i) const { return elems_[i]; }
  int index(const WeylElement& w) const {
    auto it = idx_.find(key(w));
    if (it == idx_.end()) throw ConsistencyError("element not in W");
    return it->second;
  }
  int length(int i) const { return len_[i]; }
  int lmul(int s, int i) const { return lmul_[std::size_t(s) * size() + i]; }
  int rmul(int i, int s) const { return rmul_[std::size_t(s) * size() + i]; }
  bool left_descent(int i, int s) const { return len_[lmul(s, i)] < len_[i]; }

  bool leq(int u, int w) const {
    if (!lower_.empty()) return (lower_[std::size_t(w) * words_ + (u >> 6)] >> (u & 63)) & 1ULL;
    int lu = len_[u], lw = len_[w];
    for (;;) {
      if (lu > lw) return false;
      if (lu == lw) return u == w;
      if (lu == 0) return true;
      int s = 0;
      while (!left_descent(w, s)) ++s;
      if (left_descent(u, s)) {
        u = lmul(s, u);
        --lu;
      }
      w = lmul(s, w);
      --lw;
    }
  }

  // bitset of {u : u <= w}, empty when not materialized
  const std::uint64_t* lower_set(int w) const {
    return lower_.empty() ? nullptr : &lower_[std::size_t(w) * words_];
  }
  std::size_t words() const { return words_; }

 private:
  static std::uint64_t key(const WeylElement& w) {
    std::uint64_t k = 0;
    for (int t : w.im) k = (k << 5) | std::uint64_t(t + 16);
    return k;
  }

  void build_lower_sets() {
    std::size_t n = size();
    words_ = (n + 63) / 64;
    lower_.assign(n * words_, 0);
    for (std::size_t w = 0; w < n; ++w) {
      std::uint64_t* row = &lower_[w * words_];
      if (len_[w] == 0) {
        row[w >> 6] |= 1ULL << (w & 63);
        continue;
      }
      int s = 0;
      while (!left_descent(int(w), s)) ++s;
      int v = lmul(s, int(w));
      const std::uint64_t* prev = &lower_[std::size_t(v) * words_];
      for (std::size_t k = 0; k < words_; ++k) {
        row[k] |= prev[k];
        for (std::uint64_t b = prev[k]; b; b &= b - 1) {
          int u = int(k * 64 + std::size_t(__builtin_ctzll(b)));
          int su = lmul(s, u);
          row[su >> 6] |= 1ULL << (su & 63);
        }
      }
    }
  }

  const WeylSystem* W_;
  std::vector<WeylElement> elems_;
  std::unordered_map<std::uint64_t, int> idx_;
  std::vector<int> len_, lmul_, rmul_;
  std::vector<std::uint64_t> lower_;
  std::size_t words_ = 0;
};

}  // namespace gzc

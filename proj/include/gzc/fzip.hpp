#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gzc/field.hpp"
#include "gzc/strata.hpp"

namespace gzc {

inline constexpr std::uint64_t kHomExhaustive = 1ULL << 20;
inline constexpr int kHomSamples = 20000;

// F-zip over F with Frobenius x -> x^q, stored through a C-adapted basis:
//   C^i = span{B_j : w_j >= i},  D_i = span{Phi_j : w_j <= i},  phi(B_j^(q)) = Phi_j
struct FZip {
  FieldPtr F;
  int q = 2;
  int n = 0;
  Mat B;
  std::vector<int> w;
  Mat Phi;
};

struct Flag {
  int n = 0;
  bool descending = true;
  std::vector<std::pair<int, Mat>> steps;  // (index, echelon basis) at each jump
};

using ZipType = std::map<int, int>;

inline ZipType type_of(const FZip& M) {
  ZipType t;
  for (int x : M.w) ++t[x];
  return t;
}

inline std::string type_string(const ZipType& t) {
  std::string s;
  for (auto& [i, m] : t) s += (s.empty() ? "" : ",") + std::to_string(i) + ":" + std::to_string(m);
  return s.empty() ? "-" : s;
}

inline void validate_fzip(const FZip& M) {
  if (!M.F) throw ValidationError("F-zip without a field");
  auto [p, f] = prime_power(M.q);
  if (p != M.F->p() || M.F->degree() % f) throw ValidationError("F_q is not a subfield of " + M.F->name());
  if (M.B.r != M.n || M.B.c != M.n || M.Phi.r != M.n || M.Phi.c != M.n || int(M.w.size()) != M.n)
    throw ValidationError("F-zip data has wrong dimensions");
  if (M.B.F.get() != M.F.get() || M.Phi.F.get() != M.F.get()) throw ValidationError("F-zip data over the wrong field");
  if (!is_invertible(M.B)) throw ValidationError("C-adapted basis is singular");
  if (!is_invertible(M.Phi)) throw ValidationError("phi is not an isomorphism");
}

inline Mat cols_where(const Mat& X, const std::vector<int>& w, auto pred) {
  std::vector<int> idx;
  for (std::size_t j = 0; j < w.size(); ++j)
    if (pred(w[j])) idx.push_back(int(j));
  return columns(X, idx);
}

inline Mat C(const FZip& M, int i) {
  return cols_where(M.B, M.w, [i](int x) { return x >= i; });
}
inline Mat D(const FZip& M, int i) {
  return cols_where(M.Phi, M.w, [i](int x) { return x <= i; });
}

inline Flag c_flag(const FZip& M) {
  Flag f{M.n, true, {}};
  auto t = type_of(M);
  for (auto& [i, m] : t) f.steps.push_back({i, column_echelon(C(M, i))});
  f.steps.push_back({t.empty() ? 0 : t.rbegin()->first + 1, Mat(M.F, M.n, 0)});
  return f;
}

inline Flag d_flag(const FZip& M) {
  Flag f{M.n, false, {}};
  auto t = type_of(M);
  f.steps.push_back({t.empty() ? 0 : t.begin()->first - 1, Mat(M.F, M.n, 0)});
  for (auto& [i, m] : t) f.steps.push_back({i, column_echelon(D(M, i))});
  return f;
}

inline FZip make_tate(const FieldPtr& F, int q, int d) {
  FZip M{F, q, 1, identity(F, 1), {d}, identity(F, 1)};
  validate_fzip(M);
  return M;
}

inline void check_compatible(const FZip& M, const FZip& N) {
  if (M.F.get() != N.F.get() || M.q != N.q) throw ValidationError("F-zips over different fields");
}

inline FZip tensor(const FZip& M, const FZip& N) {
  check_compatible(M, N);
  FZip T{M.F, M.q, M.n * N.n, kron(M.B, N.B), {}, kron(M.Phi, N.Phi)};
  for (int a : M.w)
    for (int b : N.w) T.w.push_back(a + b);
  return T;
}

inline FZip dual(const FZip& M) {
  FZip T{M.F, M.q, M.n, transpose(inverse(M.B)), {}, transpose(inverse(M.Phi))};
  for (int a : M.w) T.w.push_back(-a);
  return T;
}

inline FZip shift(const FZip& M, int d) { return tensor(M, make_tate(M.F, M.q, d)); }

enum class PowerKind { alternating, symmetric };

namespace detail {

inline void subsets(int n, int m, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (int(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, m, i + 1, cur, out);
    cur.pop_back();
  }
}

inline void multisets(int n, int m, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (int(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    multisets(n, m, i, cur, out);
    cur.pop_back();
  }
}

inline Mat exterior_power(const Mat& X, const std::vector<std::vector<int>>& S) {
  int k = int(S.size());
  Mat R(X.F, k, k);
  for (int b = 0; b < k; ++b)
    for (int a = 0; a < k; ++a) {
      Mat sub(X.F, int(S[a].size()), int(S[b].size()));
      for (std::size_t i = 0; i < S[a].size(); ++i)
        for (std::size_t j = 0; j < S[b].size(); ++j) sub(int(i), int(j)) = X(S[a][i], S[b][j]);
      R(a, b) = S[a].empty() ? 1 : det(sub);
    }
  return R;
}

// column b = product of the columns listed in S[b], expanded on monomials S[a]
inline Mat symmetric_power(const Mat& X, const std::vector<std::vector<int>>& S) {
  const Field& F = *X.F;
  std::map<std::vector<int>, int> pos;
  for (std::size_t a = 0; a < S.size(); ++a) pos[S[a]] = int(a);
  int k = int(S.size());
  Mat R(X.F, k, k);
  for (int b = 0; b < k; ++b) {
    std::map<std::vector<int>, int> poly{{{}, 1}};
    for (int col : S[b]) {
      std::map<std::vector<int>, int> next;
      for (auto& [mono, c] : poly)
        for (int i = 0; i < X.r; ++i) {
          if (!X(i, col)) continue;
          auto m2 = mono;
          m2.insert(std::upper_bound(m2.begin(), m2.end(), i), i);
          int& slot = next[m2];
          slot = F.add(slot, F.mul(c, X(i, col)));
        }
      poly = std::move(next);
    }
    for (auto& [mono, c] : poly) R(pos.at(mono), b) = c;
  }
  return R;
}

}  // namespace detail

inline FZip power(const FZip& M, int m, PowerKind kind) {
  if (m < 0) throw ValidationError("power degree must be non-negative");
  std::vector<std::vector<int>> S;
  std::vector<int> cur;
  if (kind == PowerKind::alternating)
    detail::subsets(M.n, m, 0, cur, S);
  else
    detail::multisets(M.n, m, 0, cur, S);
  guard(S.size(), "power rank", 4096);
  FZip T{M.F, M.q, int(S.size()), {}, {}, {}};
  if (kind == PowerKind::alternating) {
    T.B = detail::exterior_power(M.B, S);
    T.Phi = detail::exterior_power(M.Phi, S);
  } else {
    T.B = detail::symmetric_power(M.B, S);
    T.Phi = detail::symmetric_power(M.Phi, S);
  }
  for (auto& s : S) {
    int x = 0;
    for (int j : s) x += M.w[j];
    T.w.push_back(x);
  }
  return T;
}

// direct check of the homomorphism conditions for f : M -> N in standard coordinates
inline bool is_morphism(const Mat& f, const FZip& M, const FZip& N) {
  check_compatible(M, N);
  if (f.r != N.n || f.c != M.n) throw ValidationError("morphism has wrong dimensions");
  for (int x : M.w)
    if (!contained_in(f * C(M, x), C(N, x))) return false;
  for (int x : M.w)
    if (!contained_in(f * D(M, x), D(N, x))) return false;
  Mat a = inverse(N.B) * f * M.B;
  for (int j = 0; j < M.n; ++j) {
    int i = M.w[j];
    Mat v = f * columns(M.Phi, {j});
    for (int k = 0; k < N.n; ++k)
      if (N.w[k] == i) v = v - scale(M.F->pow(a(k, j), std::uint64_t(M.q)), columns(N.Phi, {k}));
    if (!contained_in(v, D(N, i - 1))) return false;
  }
  return true;
}

inline bool is_admissible_morphism(const Mat& f, const FZip& M, const FZip& N) {
  if (!is_morphism(f, M, N)) return false;
  std::vector<int> idx = M.w;
  idx.insert(idx.end(), N.w.begin(), N.w.end());
  for (int x : idx) {
    if (rank(f * C(M, x)) != intersection_dim(f, C(N, x))) return false;
    if (rank(f * D(M, x)) != intersection_dim(f, D(N, x))) return false;
  }
  return true;
}

// F_p-basis of Hom(M, N), each element in standard coordinates
inline std::vector<Mat> hom_space(const FZip& M, const FZip& N) {
  check_compatible(M, N);
  const Field& F = *M.F;
  FieldPtr Fp = make_field(F.p(), 1);
  int e = F.degree(), rows = N.n, cols = M.n;
  Mat X = inverse(N.Phi) * N.B, Y = inverse(M.B) * M.Phi;
  int unknowns = rows * cols * e;
  Mat L(Fp, rows * cols * e, unknowns);
  std::vector<Mat> basis_a;
  int u = 0;
  for (int k = 0; k < rows; ++k)
    for (int j = 0; j < cols; ++j)
      for (int t = 0, beta = 1; t < e; ++t, beta *= F.p()) {
        Mat a(M.F, rows, cols);
        a(k, j) = beta;
        Mat c = X * a * Y;
        int r = 0;
        for (int kk = 0; kk < rows; ++kk)
          for (int jj = 0; jj < cols; ++jj) {
            int val;
            if (N.w[kk] < M.w[jj])
              val = a(kk, jj);
            else if (N.w[kk] > M.w[jj])
              val = c(kk, jj);
            else
              val = F.sub(c(kk, jj), F.pow(a(kk, jj), std::uint64_t(M.q)));
            auto dg = F.digits(val);
            for (int s = 0; s < e; ++s) L(r * e + s, u) = dg[s];
            ++r;
          }
        basis_a.push_back(a);
        ++u;
      }
  Mat K = kernel(L);
  std::vector<Mat> out;
  Mat Binv = inverse(M.B);
  for (int b = 0; b < K.c; ++b) {
    Mat a(M.F, rows, cols);
    for (int v = 0; v < unknowns; ++v)
      if (K(v, b))
        for (std::size_t i = 0; i < a.a.size(); ++i)
          a.a[i] = F.add(a.a[i], F.mul(K(v, b), basis_a[v].a[i]));
    out.push_back(N.B * a * Binv);
  }
  return out;
}

inline FZip base_change(const FZip& M, int m) {
  if (m < 1) throw ValidationError("extension degree must be positive");
  if (m == 1) return M;
  FieldPtr big = make_field(M.F->p(), M.F->degree() * m);
  auto emb = embedding(M.F, big);
  return {big, M.q, M.n, change_field(M.B, big, emb), M.w, change_field(M.Phi, big, emb)};
}

// relative position of the two flags; preserved by isomorphisms at every degree
inline std::vector<int> flag_position(const FZip& M) {
  std::vector<int> r;
  auto t = type_of(M);
  for (auto& [i, a] : t)
    for (auto& [j, b] : t) r.push_back(intersection_dim(C(M, i), D(M, j)));
  return r;
}

struct SearchStats {
  std::uint64_t candidates = 0;
  bool exhaustive = true;
};

// enumerate F_p-combinations of a basis; visit returns true to stop
inline bool for_each_combination(const std::vector<Mat>& basis, const Mat& zero, auto visit) {
  int p = zero.F->p();
  std::size_t k = basis.size();
  std::vector<int> coef(k, 0);
  Mat cur = zero;
  while (true) {
    if (visit(cur)) return true;
    std::size_t i = 0;
    while (i < k) {
      cur = cur + basis[i];
      if (++coef[i] < p) break;
      coef[i] = 0;  // wrapped: p additions returned the summand to zero
      ++i;
    }
    if (i == k) return false;
  }
}

inline std::optional<Mat> find_isomorphism(const FZip& M, const FZip& N, SearchStats* stats = nullptr) {
  check_compatible(M, N);
  if (M.n != N.n || type_of(M) != type_of(N) || flag_position(M) != flag_position(N)) return std::nullopt;
  auto H = hom_space(M, N);
  if (H.size() != hom_space(M, M).size() || H.size() != hom_space(N, N).size()) return std::nullopt;
  if (M.n == 0) return Mat(M.F, 0, 0);
  std::uint64_t total = 1;
  bool small = true;
  for (std::size_t i = 0; i < H.size() && small; ++i) {
    total *= std::uint64_t(M.F->p());
    if (total > kHomExhaustive) small = false;
  }
  std::optional<Mat> hit;
  if (small) {
    for_each_combination(H, Mat(M.F, N.n, M.n), [&](const Mat& f) {
      if (stats) ++stats->candidates;
      if (is_invertible(f)) {
        hit = f;
        return true;
      }
      return false;
    });
    return hit;
  }
  if (stats) stats->exhaustive = false;
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> coin(0, M.F->p() - 1);
  for (int s = 0; s < kHomSamples; ++s) {
    Mat f(M.F, N.n, M.n);
    for (auto& h : H) {
      int c = coin(rng);
      if (c) f = f + scale(c, h);
    }
    if (stats) ++stats->candidates;
    if (is_invertible(f)) return f;
  }
  throw ResourceError("isomorphism search: Hom space of F_p-dimension " + std::to_string(H.size()) +
                      " too large and sampling found no invertible element");
}

struct IsoWitness {
  int degree = 1;
  Mat f;
};

inline std::optional<IsoWitness> isomorphic_over(const FZip& M, const FZip& N, int ext_degree) {
  check_compatible(M, N);
  for (int m = 1; m <= ext_degree; ++m) {
    auto f = find_isomorphism(base_change(M, m), base_change(N, m));
    if (f) return IsoWitness{m, *f};
  }
  return std::nullopt;
}

inline bool isomorphic(const FZip& M, const FZip& N) { return isomorphic_over(M, N, 1).has_value(); }

// the GL_n case: weights weakly decreasing, P_+ block upper triangular

inline std::vector<int> gl_weights(const CocharacterType& t) { return t.weights(); }

inline FZip standard_zip_gl(const CocharacterType& t, const Mat& g, int q) {
  auto w = gl_weights(t);
  int n = int(w.size());
  if (g.r != n || g.c != n) throw ValidationError("g has the wrong size for this type");
  if (!is_invertible(g)) throw ValidationError("g is singular");
  FZip M{g.F, q, n, identity(g.F, n), w, g};
  validate_fzip(M);
  return M;
}

struct ZipGroupElement {
  Mat p_plus, p_minus;
};

inline bool in_p_plus(const std::vector<int>& w, const Mat& a) {
  for (int k = 0; k < a.r; ++k)
    for (int j = 0; j < a.c; ++j)
      if (w[k] < w[j] && a(k, j)) return false;
  return is_invertible(a);
}

inline bool in_zip_group(const std::vector<int>& w, int q, const ZipGroupElement& e) {
  if (!in_p_plus(w, e.p_plus) || !is_invertible(e.p_minus)) return false;
  for (int k = 0; k < e.p_minus.r; ++k)
    for (int j = 0; j < e.p_minus.c; ++j) {
      if (w[k] > w[j] && e.p_minus(k, j)) return false;
      if (w[k] == w[j] && e.p_minus(k, j) != e.p_plus.F->pow(e.p_plus(k, j), std::uint64_t(q))) return false;
    }
  return true;
}

inline Mat zip_act(const ZipGroupElement& e, const Mat& g) { return e.p_plus * g * inverse(e.p_minus); }

// transporter: an isomorphism f : I_g -> I_g' gives (f, g'^-1 f g)
inline ZipGroupElement transporter_element(const Mat& f, const Mat& g, const Mat& gp) {
  return {f, inverse(gp) * f * g};
}

// full enumeration of E(F); test oracle sized
inline std::vector<ZipGroupElement> enumerate_zip_group(const std::vector<int>& w, const FieldPtr& F, int q) {
  int n = int(w.size());
  std::vector<std::pair<int, int>> lev, up, lo;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      if (w[k] == w[j]) lev.push_back({k, j});
      else if (w[k] > w[j]) up.push_back({k, j});
      else lo.push_back({k, j});
    }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < lev.size() + up.size() + lo.size(); ++i) {
    total *= std::uint64_t(F->size());
    guard(total, "zip group enumeration", kEnumGuard * 10);
  }
  std::vector<ZipGroupElement> out;
  auto fill = [&](const std::vector<std::pair<int, int>>& pos, std::uint64_t code, Mat& m) {
    for (auto& [k, j] : pos) {
      m(k, j) = int(code % std::uint64_t(F->size()));
      code /= std::uint64_t(F->size());
    }
  };
  std::uint64_t nl = 1, nu = 1, nd = 1;
  for (std::size_t i = 0; i < lev.size(); ++i) nl *= std::uint64_t(F->size());
  for (std::size_t i = 0; i < up.size(); ++i) nu *= std::uint64_t(F->size());
  for (std::size_t i = 0; i < lo.size(); ++i) nd *= std::uint64_t(F->size());
  for (std::uint64_t cl = 0; cl < nl; ++cl) {
    Mat L(F, n, n);
    fill(lev, cl, L);
    if (!is_invertible(L)) continue;
    Mat Lq = twist(L, q);
    for (std::uint64_t cu = 0; cu < nu; ++cu) {
      Mat U = identity(F, n);
      fill(up, cu, U);
      for (std::uint64_t cd = 0; cd < nd; ++cd) {
        Mat V = identity(F, n);
        fill(lo, cd, V);
        out.push_back({L * U, Lq * V});
      }
    }
  }
  return out;
}

// Lie algebra of Stab_E(g): kernel of (X, Y) -> Xg - gY on Lie P_+ (+) Lie U_-
inline int stabilizer_lie_dim(const CocharacterType& t, const Mat& g) {
  auto w = gl_weights(t);
  int n = int(w.size());
  if (g.r != n || g.c != n) throw ValidationError("g has the wrong size for this type");
  const Field& F = *g.F;
  std::vector<Mat> cols;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      Mat E(g.F, n, n);
      E(k, j) = 1;
      if (w[k] >= w[j]) cols.push_back(E * g);
      if (w[k] < w[j]) cols.push_back(scale(F.neg(1), g * E));
    }
  Mat A(g.F, n * n, int(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (int i = 0; i < n * n; ++i) A(i, int(c)) = cols[c].a[i];
  return int(cols.size()) - rank(A);
}

// |Stab_{E(F_{q^m})}(g)|, counted as the invertible endomorphisms of I_g over the extension
inline std::uint64_t stabilizer_points(const CocharacterType& t, const Mat& g, int q, int ext_degree) {
  FZip M = base_change(standard_zip_gl(t, g, q), ext_degree);
  auto H = hom_space(M, M);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < H.size(); ++i) {
    total *= std::uint64_t(M.F->p());
    guard(total, "stabilizer enumeration");
  }
  std::uint64_t count = 0;
  for_each_combination(H, Mat(M.F, M.n, M.n), [&](const Mat& f) {
    count += is_invertible(f);
    return false;
  });
  return count;
}

// permutation representative of the stratum w. Our Borel is upper triangular, inside P_+, so the
// Coxeter data are conjugated by w0 first.
inline Mat stratum_representative(const ZipDatum& Z, const WeylElement& w, const FieldPtr& F) {
  WeylElement yw = Z.w0 * Z.y * w * Z.w0;
  std::vector<int> perm(yw.dim());
  for (int j = 0; j < yw.dim(); ++j) perm[j] = yw.im[j] - 1;
  return permutation_matrix(F, perm);
}

struct ClassificationRow {
  Mat g;
  int stratum = -1;  // index into Classification::strata
  int degree = 0;    // extension degree at which the orbit representative matched
  int orbit = -1;    // E(F_q)-orbit id
};

struct Classification {
  std::vector<WeylElement> strata;  // IW in enumeration order
  std::vector<Mat> representatives;
  std::vector<ClassificationRow> rows;
  std::vector<int> orbit_reps;  // row index of each orbit's representative
  std::vector<int> class_sizes;
  int nonempty() const {
    return int(std::count_if(class_sizes.begin(), class_sizes.end(), [](int c) { return c > 0; }));
  }
};

namespace detail {

inline std::uint64_t mat_code(const Mat& m) {
  std::uint64_t c = 0;
  for (int v : m.a) c = c * std::uint64_t(m.F->size()) + std::uint64_t(v);
  return c;
}

inline int uf_find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// generators of E(F_q) as pairs (p_+, p_-); over F_q the Levi twist is trivial
inline std::vector<ZipGroupElement> zip_group_generators(const std::vector<int>& w, const FieldPtr& F) {
  int n = int(w.size());
  std::vector<ZipGroupElement> gens;
  std::vector<int> basis;
  for (int t = 0, b = 1; t < F->degree(); ++t, b *= F->p()) basis.push_back(b);
  int xi = F->size() > 2 ? F->generator() : 1;
  for (int k = 0; k < n; ++k) {
    bool first = k == 0 || w[k - 1] != w[k];
    if (first && xi != 1) {
      Mat d = identity(F, n);
      d(k, k) = xi;
      gens.push_back({d, d});
    }
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      for (int b : basis) {
        Mat E = identity(F, n);
        E(k, j) = b;
        if (w[k] == w[j]) gens.push_back({E, E});
        else if (w[k] > w[j]) gens.push_back({E, identity(F, n)});
        else gens.push_back({identity(F, n), E});
      }
    }
  }
  return gens;
}

}  // namespace detail

inline Classification classify_bruteforce(const CocharacterType& t, int q, int ext_bound) {
  int n = t.total();
  if (n > 3) throw ResourceError("classify_bruteforce: n = " + std::to_string(n) + " exceeds guard 3");
  if (q > 4) throw ResourceError("classify_bruteforce: q = " + std::to_string(q) + " exceeds guard 4");
  if (ext_bound < 1) throw ValidationError("ext_bound must be positive");
  FieldPtr F = field_of_order(q);
  ZipDatum Z = build_zip_datum({GroupKind::GL, n, F->p() != 2}, t);
  auto w = gl_weights(t);

  Classification out;
  for (auto& e : enumerate_extended(Z)) {
    out.strata.push_back(e.w);
    out.representatives.push_back(stratum_representative(Z, e.w, F));
  }
  out.class_sizes.assign(out.strata.size(), 0);

  std::uint64_t total = 1;
  for (int i = 0; i < n * n; ++i) total *= std::uint64_t(q);
  std::vector<int> index(total, -1);
  for (std::uint64_t code = 0; code < total; ++code) {
    Mat g(F, n, n);
    std::uint64_t c = code;
    for (int i = n * n - 1; i >= 0; --i, c /= std::uint64_t(q)) g.a[i] = int(c % std::uint64_t(q));
    if (!is_invertible(g)) continue;
    index[code] = int(out.rows.size());
    out.rows.push_back({g, -1, 0, -1});
  }
  std::vector<int> parent(out.rows.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto gens = detail::zip_group_generators(w, F);
  for (std::size_t r = 0; r < out.rows.size(); ++r)
    for (auto& e : gens) {
      int s = index[detail::mat_code(zip_act(e, out.rows[r].g))];
      int a = detail::uf_find(parent, int(r)), b = detail::uf_find(parent, s);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, int> orbit_id;
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    int root = detail::uf_find(parent, int(r));
    auto [it, fresh] = orbit_id.insert({root, int(out.orbit_reps.size())});
    if (fresh) out.orbit_reps.push_back(root);
    out.rows[r].orbit = it->second;
  }

  std::vector<FZip> std_zips;
  for (auto& g : out.representatives) std_zips.push_back(standard_zip_gl(t, g, q));
  std::vector<int> orbit_class(out.orbit_reps.size(), -1), orbit_deg(out.orbit_reps.size(), 0);
  for (std::size_t o = 0; o < out.orbit_reps.size(); ++o) {
    FZip M = standard_zip_gl(t, out.rows[out.orbit_reps[o]].g, q);
    std::vector<int> hits;
    int deg = 0;
    for (std::size_t c = 0; c < std_zips.size(); ++c) {
      auto wit = isomorphic_over(M, std_zips[c], ext_bound);
      if (wit) {
        hits.push_back(int(c));
        deg = wit->degree;
      }
    }
    const Mat& g = out.rows[out.orbit_reps[o]].g;
    if (hits.empty())
      throw ResourceError("g = " + to_string(g) + " matches no stratum within degree " + std::to_string(ext_bound));
    if (hits.size() > 1)
      throw ConsistencyError("g = " + to_string(g) + " matches " + std::to_string(hits.size()) + " strata");
    orbit_class[o] = hits[0];
    orbit_deg[o] = deg;
  }
  for (auto& row : out.rows) {
    row.stratum = orbit_class[row.orbit];
    row.degree = orbit_deg[row.orbit];
    ++out.class_sizes[row.stratum];
  }
  return out;
}

}  // namespace gzc

#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gzc/fzip.hpp"
#include "gzc/strata.hpp"

namespace gzc {

inline constexpr int kBT1HeightGuard = 12;

struct BT1Class {
  int n = 0;
  int d = 0;
  std::vector<int> w;  // one-line, w[i-1] = w(i)
  int length = 0;
  int aut_dim = 0;
};

inline int inversions(const std::vector<int>& w) {
  int c = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) c += w[i] > w[j];
  return c;
}

// w^-1 increasing on {1..d} and on {d+1..n}: choose the positions w^-1({1..d})
inline std::vector<BT1Class> classify_bt1(int n, int d) {
  if (n < 0 || d < 0 || d > n) throw ValidationError("0 ≤ d ≤ n required");
  if (n > kBT1HeightGuard) throw ResourceError("height " + std::to_string(n) + " exceeds guard 12");
  std::vector<BT1Class> out;
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + d, 1);
  do {
    BT1Class c{n, d, std::vector<int>(n), 0, 0};
    int lo = 1, hi = d + 1;
    for (int i = 0; i < n; ++i) c.w[i] = pick[i] ? lo++ : hi++;
    c.length = inversions(c.w);
    c.aut_dim = d * (n - d) - c.length;
    out.push_back(std::move(c));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::sort(out.begin(), out.end(), [](const BT1Class& a, const BT1Class& b) {
    return std::tie(a.length, a.w) < std::tie(b.length, b.w);
  });
  return out;
}

inline std::string one_line(const std::vector<int>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s;
}

// GL(n) datum of type {0: d, 1: n-d}; its minimal coset reps are w0 w w0 for the classes above
inline ZipDatum bt1_datum(int n, int d) {
  return build_zip_datum({GroupKind::GL, n, true}, make_type({{0, d}, {1, n - d}}));
}

inline WeylElement bt1_to_weyl(const BT1Class& c) {
  WeylElement w;
  w.im = c.w;
  WeylElement w0;
  for (int i = c.n; i >= 1; --i) w0.im.push_back(i);
  return w0 * w * w0;
}

// Normal form P = T + L with T = first d coordinates (Coker iota), L the rest (Q = L + I(x)T).
// Phi is the structural matrix: column j is F(e_j) for j in T and F_1(e_j) for j in L.
struct Display1 {
  FieldPtr F;
  int q = 2;
  int n = 0;
  int d = 0;
  Mat Phi;
};

struct DisplayRealization {
  Mat iota;  // Q -> P
  Mat eps;   // I (x) P -> Q
  Mat Fr;    // P -> P, sigma-linear
  Mat F1;    // Q -> P, sigma-linear
};

// the tuple (P, Q, iota, eps, F, F_1) in normal-form coordinates; Q = L + I(x)T, in that order
inline DisplayRealization realize(const Display1& D) {
  const FieldPtr& F = D.F;
  int n = D.n, d = D.d, l = n - d;
  DisplayRealization R{Mat(F, n, n), Mat(F, n, n), Mat(F, n, n), Mat(F, n, n)};
  for (int k = 0; k < l; ++k) R.iota(d + k, k) = 1;
  for (int k = 0; k < d; ++k) R.eps(l + k, k) = 1;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (j < d) R.Fr(i, j) = D.Phi(i, j);
      R.F1(i, j) = j < l ? D.Phi(i, d + j) : D.Phi(i, j - l);
    }
  return R;
}

// exactness of 0 -> I(x)Coker -> Q -> P -> Coker -> 0, F_1 o eps = sigma_1 (x) F, F_1(Q) generating P
inline bool display_axioms_hold(const Display1& D) {
  if (!D.F || D.Phi.r != D.n || D.Phi.c != D.n || D.d < 0 || D.d > D.n) return false;
  auto R = realize(D);
  int l = D.n - D.d;
  if (rank(R.iota) != l) return false;
  if (rank(R.eps) != D.d || rank(R.iota * R.eps) != 0) return false;
  if (rank(hcat(kernel(R.iota), R.eps)) != D.d) return false;
  return R.F1 * R.eps == R.Fr && rank(R.F1) == D.n;
}

inline void validate_display(const Display1& D) {
  if (!D.F) throw ValidationError("display without a field");
  if (D.d < 0 || D.d > D.n || D.Phi.r != D.n || D.Phi.c != D.n) throw ValidationError("display data has wrong dimensions");
  if (!is_invertible(D.Phi)) throw ValidationError("degenerate Phi");
  if (!display_axioms_hold(D)) throw ConsistencyError("display axioms fail in normal form");
}

// M = P, C^1 = L = im(iota), D_0 = F(T) = im(F^sharp)
inline FZip fzip_of_display(const Display1& D) {
  validate_display(D);
  FZip M{D.F, D.q, D.n, identity(D.F, D.n), {}, D.Phi};
  for (int j = 0; j < D.n; ++j) M.w.push_back(j < D.d ? 0 : 1);
  validate_fzip(M);
  return M;
}

inline Display1 display_of_fzip(const FZip& M) {
  validate_fzip(M);
  for (int x : M.w)
    if (x != 0 && x != 1) throw ValidationError("type not supported on {0,1}");
  std::vector<int> order;
  for (int pass : {0, 1})
    for (int j = 0; j < M.n; ++j)
      if (M.w[j] == pass) order.push_back(j);
  Mat B = columns(M.B, order), P = columns(M.Phi, order);
  Display1 D{M.F, M.q, M.n, 0, inverse(B) * P};
  for (int x : M.w) D.d += x == 0;
  validate_display(D);
  return D;
}

inline FZip dual_bt1(const FZip& M) {
  for (int x : M.w)
    if (x != 0 && x != 1) throw ValidationError("type not supported on {0,1}");
  return tensor(dual(M), make_tate(M.F, M.q, 1));
}

inline std::string emit_bt1(int n, int d, Format f) {
  auto rows = classify_bt1(n, d);
  std::ostringstream os;
  switch (f) {
    case Format::tsv:
      os << "# w\tlength\taut_dim\tcodim\n";
      for (auto& c : rows) os << one_line(c.w) << "\t" << c.length << "\t" << c.aut_dim << "\t" << c.aut_dim << "\n";
      break;
    case Format::json: {
      nlohmann::ordered_json j;
      j["height"] = n;
      j["dimension"] = d;
      j["classes"] = nlohmann::ordered_json::array();
      for (auto& c : rows) {
        nlohmann::ordered_json r;
        r["w"] = c.w;
        r["length"] = c.length;
        r["aut_dim"] = c.aut_dim;
        r["codim"] = c.aut_dim;
        j["classes"].push_back(r);
      }
      os << j.dump(2) << "\n";
      break;
    }
    case Format::dot: {
      // specialization order taken from the GL strata poset
      auto P = build_poset(bt1_datum(n, d));
      std::vector<int> node(P.strata.size(), -1);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t s = 0; s < P.strata.size(); ++s)
          if (P.strata[s].rep.w == bt1_to_weyl(rows[i])) node[s] = int(i);
      for (int v : node)
        if (v < 0) throw ConsistencyError("BT1 classes and strata do not match");
      os << "digraph bt1 {\n";
      for (std::size_t i = 0; i < rows.size(); ++i)
        os << "  n" << i << " [label=\"" << one_line(rows[i].w) << " | " << rows[i].length << " | "
           << rows[i].aut_dim << "\"];\n";
      std::vector<std::pair<int, int>> edges;
      for (auto& [a, b] : P.hasse) edges.push_back({node[a], node[b]});
      std::sort(edges.begin(), edges.end());
      for (auto& [a, b] : edges) os << "  n" << a << " -> n" << b << ";\n";
      os << "}\n";
      break;
    }
  }
  return os.str();
}

}  // namespace gzc

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gzc/fzip.hpp"
#include "gzc/zipdatum.hpp"

namespace gzc {

enum class FormKind { none, determinant, alternating, symmetric, hermitian };

inline FormKind form_kind(GroupKind k) {
  switch (k) {
    case GroupKind::GL: return FormKind::none;
    case GroupKind::SL: return FormKind::determinant;
    case GroupKind::Sp:
    case GroupKind::CSp: return FormKind::alternating;
    case GroupKind::O:
    case GroupKind::CO: return FormKind::symmetric;
    case GroupKind::U:
    case GroupKind::CU: return FormKind::hermitian;
  }
  return FormKind::none;
}

// One record for every family. For the hermitian families M = N + N' has rank 2n over a field
// containing F_{q^2}, rho is the matrix of rho(zeta), and `pairing` is the 2 x (2n)^2 matrix of
// H : M (x) M -> F_{q^2} (x) L, the target written in its two eigencoordinates.
struct ClassicalObject {
  GroupFamily family;
  CocharacterType type;
  FZip M;
  FormKind kind = FormKind::none;
  Mat pairing;  // Gram matrix (alternating, symmetric) or H (hermitian)
  FZip target;  // rank 1, or rank 2 for hermitian
  Mat delta;    // SL: Lambda^n M -> 1(0)
  Mat rho;
  int zeta = 0;
};

using PairedFZip = ClassicalObject;
using DetTrivializedFZip = ClassicalObject;

namespace detail {

inline Mat antidiagonal(const FieldPtr& F, int n, bool alternating) {
  Mat G(F, n, n);
  for (int j = 0; j < n; ++j) G(j, n - 1 - j) = alternating && j >= n / 2 ? F->neg(1) : 1;
  return G;
}

inline Mat swap2(const FieldPtr& F, int mu) {
  Mat S(F, 2, 2);
  S(0, 1) = S(1, 0) = mu;
  return S;
}

inline bool in_prime_power_subfield(const Field& F, int x, int q) { return F.pow(x, std::uint64_t(q)) == x; }

// E on Lambda^2 or S^2 in the coordinates of fzip power()
inline Mat form_on_power(const Mat& G, PowerKind kind) {
  int n = G.r;
  std::vector<std::vector<int>> S;
  std::vector<int> cur;
  if (kind == PowerKind::alternating)
    subsets(n, 2, 0, cur, S);
  else
    multisets(n, 2, 0, cur, S);
  Mat E(G.F, 1, int(S.size()));
  for (std::size_t k = 0; k < S.size(); ++k) E(0, int(k)) = G(S[k][0], S[k][1]);
  return E;
}

inline int twisted_d(const CocharacterType& t, const TypeInfo& info) { return t.d ? *t.d : info.d; }

inline int zeta_in(const FieldPtr& F, int q) {
  auto [p, f] = prime_power(q);
  if (F->p() != p || F->degree() % (2 * f))
    throw ValidationError("needs F_{q^2}: " + F->name() + " does not contain F_" + std::to_string(q * q));
  FieldPtr K = make_field(p, 2 * f);
  return embedding(K, F)[K->generator()];
}

inline Mat tensor_swap(const FieldPtr& F, int n) {
  Mat P(F, n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) P(b * n + a, a * n + b) = 1;
  return P;
}

inline Mat diag2(const FieldPtr& F, int a, int b) {
  Mat m(F, 2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline Mat rho_matrix(const FieldPtr& F, int n, int zeta, int q) {
  Mat r(F, 2 * n, 2 * n);
  int zq = F->pow(zeta, std::uint64_t(q));
  for (int i = 0; i < n; ++i) {
    r(i, i) = zeta;
    r(n + i, n + i) = zq;
  }
  return r;
}

// H with H1 : N' x N and H2 = H1^T : N x N', given H1 = G1 (n x n)
inline Mat hermitian_pairing(const Mat& G1) {
  int n = G1.r, m = 2 * n;
  Mat H(G1.F, 2, m * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      H(0, (n + i) * m + j) = G1(i, j);
      H(1, j * m + (n + i)) = G1(i, j);
    }
  return H;
}

inline Mat component(const Mat& H, int row, int m) {
  Mat G(H.F, m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) G(a, b) = H(row, a * m + b);
  return G;
}

inline Mat intersection_basis(const Mat& x, const Mat& y) {
  Mat K = kernel(hcat(x, scale(x.F->neg(1), y)));
  Mat top = block(K, 0, 0, x.c, K.c);
  return column_echelon(x * top);
}

}  // namespace detail

// the Gram matrix whose invertibility is nondegeneracy; for H the sum of both components
inline Mat gram_matrix(const ClassicalObject& obj) {
  if (obj.kind != FormKind::hermitian) return obj.pairing;
  int m = obj.M.n;
  return detail::component(obj.pairing, 0, m) + detail::component(obj.pairing, 1, m);
}

// F-zip map of the pairing into the target
inline Mat pairing_map(const ClassicalObject& obj) {
  switch (obj.kind) {
    case FormKind::alternating: return detail::form_on_power(obj.pairing, PowerKind::alternating);
    case FormKind::symmetric: return detail::form_on_power(obj.pairing, PowerKind::symmetric);
    case FormKind::hermitian: return obj.pairing;
    default: throw ValidationError("object carries no pairing");
  }
}

inline FZip pairing_source(const ClassicalObject& obj) {
  switch (obj.kind) {
    case FormKind::alternating: return power(obj.M, 2, PowerKind::alternating);
    case FormKind::symmetric: return power(obj.M, 2, PowerKind::symmetric);
    case FormKind::hermitian: return tensor(obj.M, obj.M);
    default: throw ValidationError("object carries no pairing");
  }
}

// type of the rho(zeta)-eigenspace N, read off from C on M
inline ZipType unitary_type(const ClassicalObject& obj) {
  const FieldPtr& F = obj.M.F;
  Mat N = kernel(obj.rho - scale(obj.zeta, identity(F, obj.M.n)));
  ZipType t;
  auto all = type_of(obj.M);
  for (auto& [i, m] : all) {
    int here = intersection_dim(C(obj.M, i), N);
    int above = intersection_dim(C(obj.M, i + 1), N);
    if (here > above) t[i] = here - above;
  }
  return t;
}

// every failed condition, named, in checking order
inline std::vector<std::string> classical_errors(const ClassicalObject& obj) {
  std::vector<std::string> err;
  GroupFamily G = obj.family;
  if (obj.M.F) G.odd_char = obj.M.F->p() != 2;
  TypeInfo info;
  try {
    info = validate_type(G, obj.type);
  } catch (const ValidationError& e) {
    err.push_back(e.what());
    return err;
  }
  try {
    validate_fzip(obj.M);
  } catch (const ValidationError& e) {
    err.push_back(e.what());
    return err;
  }
  const FieldPtr& F = obj.M.F;
  int q = obj.M.q;
  int d = detail::twisted_d(obj.type, info);
  FormKind want = form_kind(G.kind);
  if (obj.kind != want) {
    err.push_back("wrong structure for " + G.name());
    return err;
  }
  if (want == FormKind::none || want == FormKind::determinant) {
    if (obj.M.n != G.n || type_of(obj.M) != obj.type.nbar) err.push_back("type mismatch");
    if (want == FormKind::determinant) {
      FZip top = power(obj.M, obj.M.n, PowerKind::alternating);
      FZip one = make_tate(F, q, 0);
      if (obj.delta.r != 1 || obj.delta.c != 1 || obj.delta.F.get() != F.get() || !obj.delta(0, 0) ||
          !is_admissible_morphism(obj.delta, top, one))
        err.push_back("delta not an isomorphism");
    }
    return err;
  }

  bool herm = want == FormKind::hermitian;
  int rankM = herm ? 2 * G.n : G.n;
  if (obj.M.n != rankM) {
    err.push_back("type mismatch");
    return err;
  }
  if (herm) {
    bool ok = obj.rho.r == rankM && obj.rho.c == rankM && obj.rho.F.get() == F.get();
    int zq = 0;
    if (ok) {
      try {
        detail::zeta_in(F, q);
      } catch (const ValidationError& e) {
        err.push_back(e.what());
        return err;
      }
      zq = F->pow(obj.zeta, std::uint64_t(q));
      ok = zq != obj.zeta && F->pow(zq, std::uint64_t(q)) == obj.zeta;
    }
    if (ok) {
      Mat I = identity(F, rankM);
      Mat a = obj.rho - scale(obj.zeta, I), b = obj.rho - scale(zq, I);
      ok = a * b == Mat(F, rankM, rankM) && rank(a) == G.n && rank(b) == G.n &&
           is_morphism(obj.rho, obj.M, obj.M);
    }
    if (!ok) {
      err.push_back("rho malformed");
      return err;
    }
    if (unitary_type(obj) != obj.type.nbar) err.push_back("type mismatch");
  } else if (type_of(obj.M) != obj.type.nbar) {
    err.push_back("type mismatch");
  }

  int trank = herm ? 2 : 1;
  bool target_ok = obj.target.F.get() == F.get() && obj.target.q == q && obj.target.n == trank;
  if (target_ok) {
    try {
      validate_fzip(obj.target);
    } catch (const ValidationError&) {
      target_ok = false;
    }
  }
  if (target_ok)
    for (int x : obj.target.w) target_ok = target_ok && x == d;
  if (target_ok && herm) {
    int zq = F->pow(obj.zeta, std::uint64_t(q));
    target_ok = is_morphism(detail::diag2(F, obj.zeta, zq), obj.target, obj.target);
  }
  if (!target_ok) err.push_back("target type ≠ d");

  if (herm) {
    if (obj.pairing.r != 2 || obj.pairing.c != rankM * rankM) {
      err.push_back("pairing has wrong dimensions");
      return err;
    }
  } else if (obj.pairing.r != rankM || obj.pairing.c != rankM) {
    err.push_back("pairing has wrong dimensions");
    return err;
  }
  if (!is_invertible(gram_matrix(obj))) err.push_back("degenerate");

  const Mat& P = obj.pairing;
  if (want == FormKind::alternating) {
    bool alt = transpose(P) == scale(F->neg(1), P);
    for (int i = 0; i < rankM; ++i) alt = alt && P(i, i) == 0;
    if (!alt) err.push_back("not alternating");
  } else if (want == FormKind::symmetric) {
    if (transpose(P) != P) err.push_back("not symmetric");
  } else {
    int z = obj.zeta, zq = F->pow(z, std::uint64_t(q));
    Mat I = identity(F, rankM);
    // (a) on generators, (b) via the factor swap
    bool ok = P * kron(obj.rho, I) == detail::diag2(F, zq, z) * P &&
              P * kron(I, obj.rho) == detail::diag2(F, z, zq) * P &&
              P * detail::tensor_swap(F, rankM) == detail::swap2(F, 1) * P;
    if (!ok) err.push_back("not hermitian");
  }

  if (target_ok) {
    Mat E = pairing_map(obj);
    if (rank(E) != trank || !is_admissible_morphism(E, pairing_source(obj), obj.target))
      err.push_back("pairing not admissible");
  }
  return err;
}

inline void validate_classical(const ClassicalObject& obj) {
  auto err = classical_errors(obj);
  if (!err.empty()) throw ValidationError(err.front());
}

// multiplier mu with g^T G g = mu G, if any
inline std::optional<int> similitude_factor(const Mat& g, const Mat& G) {
  Mat h = transpose(g) * G * g;
  int i = 0;
  while (i < G.c && !G(0, i)) ++i;
  if (i == G.c) return std::nullopt;
  int mu = G.F->div(h(0, i), G(0, i));
  if (h != scale(mu, G) || !mu) return std::nullopt;
  return mu;
}

inline ClassicalObject standard_classical(GroupKind kind, const CocharacterType& t, const Mat& g, int q) {
  if (!g.F) throw ValidationError("g has no field");
  const FieldPtr& F = g.F;
  GroupFamily G{kind, int(t.total()), F->p() != 2};
  TypeInfo info = validate_type(G, t);
  int n = G.n, d = detail::twisted_d(t, info);
  if (g.r != n || g.c != n) throw ValidationError("g has the wrong size for this type");
  if (!is_invertible(g)) throw ValidationError("g is singular");
  ClassicalObject obj;
  obj.family = G;
  obj.type = t;
  obj.kind = form_kind(kind);
  bool twisted = kind == GroupKind::CSp || kind == GroupKind::CO || kind == GroupKind::CU;
  auto check_mu = [&](std::optional<int> mu) {
    if (!mu || !detail::in_prime_power_subfield(*F, *mu, q) || (!twisted && *mu != 1))
      throw ValidationError("g not in " + G.name());
    return *mu;
  };

  switch (obj.kind) {
    case FormKind::none:
      obj.M = standard_zip_gl(t, g, q);
      break;
    case FormKind::determinant:
      if (det(g) != 1) throw ValidationError("g not in " + G.name());
      obj.M = standard_zip_gl(t, g, q);
      obj.delta = identity(F, 1);
      break;
    case FormKind::alternating:
    case FormKind::symmetric: {
      obj.pairing = detail::antidiagonal(F, n, obj.kind == FormKind::alternating);
      int mu = check_mu(similitude_factor(g, obj.pairing));
      obj.M = standard_zip_gl(t, g, q);
      obj.target = {F, q, 1, identity(F, 1), {d}, Mat(F, 1, 1)};
      obj.target.Phi(0, 0) = mu;
      break;
    }
    case FormKind::hermitian: {
      obj.zeta = detail::zeta_in(F, q);
      Mat J = detail::antidiagonal(F, n, false);
      Mat gs = twist(g, q);
      // g^{sigma T} J g = mu J
      Mat h = transpose(gs) * J * g;
      std::optional<int> mu;
      int m0 = h(0, n - 1);
      if (h == scale(m0, J) && m0) mu = m0;
      int m = check_mu(mu);
      auto w = t.weights();
      FZip M{F, q, 2 * n, identity(F, 2 * n), w, Mat(F, 2 * n, 2 * n)};
      for (int i = 0; i < n; ++i) M.w.push_back(d - w[n - 1 - i]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          M.Phi(i, n + j) = g(i, j);
          M.Phi(n + i, j) = gs(i, j);
        }
      validate_fzip(M);
      obj.M = M;
      obj.rho = detail::rho_matrix(F, n, obj.zeta, q);
      obj.pairing = detail::hermitian_pairing(J);
      obj.target = {F, q, 2, identity(F, 2), {d, d}, detail::swap2(F, m)};
      break;
    }
  }
  validate_classical(obj);
  return obj;
}

inline ClassicalObject standard_classical(GroupKind kind, const CocharacterType& t, const FieldPtr& F, int q) {
  return standard_classical(kind, t, identity(F, t.total()), q);
}

// the rule for Theta read off the centralizer of the cocharacter
inline bool theta_rule_nontrivial(const GroupFamily& G, const CocharacterType& t) {
  if (G.kind == GroupKind::O) return t.at(0) > 0;
  if (G.kind == GroupKind::CO) {
    int d = t.d ? *t.d : find_center(t).value_or(0);
    return d % 2 == 0 && t.at(d / 2) > 0 && t.at(d / 2) % 2 == 0;
  }
  return false;
}

// (N~, C, D, psi): N~ carries the C-adapted basis u_j of weight w_j, and psi(u_j) is the linear
// form H_1(phi(u_j), -) on N~, stored as column j of Psi in the basis u
struct UnitaryQuadruple {
  FieldPtr F;
  int q = 2;
  int n = 0;
  std::vector<int> w;
  Mat Psi;
  int d = 0;
  int mu = 1;
  int zeta = 0;
  CocharacterType type;
  GroupKind kind = GroupKind::U;
};

// D_i on N~, spanned by phi of the N'-basis vectors of weight <= i
inline Mat quadruple_D(const UnitaryQuadruple& Q, int i) {
  Mat X = scale(Q.mu, transpose(inverse(Q.Psi)));
  std::vector<int> idx;
  for (int k = 0; k < Q.n; ++k)
    if (Q.d - Q.w[k] <= i) idx.push_back(k);
  return columns(X, idx);
}

inline UnitaryQuadruple unitary_decompose(const ClassicalObject& obj) {
  if (obj.kind != FormKind::hermitian) throw ValidationError("not a unitary object");
  const FieldPtr& F = obj.M.F;
  int q = obj.M.q, m = obj.M.n, n = m / 2;
  detail::zeta_in(F, q);
  int zq = F->pow(obj.zeta, std::uint64_t(q));
  Mat I = identity(F, m);
  Mat N = kernel(obj.rho - scale(obj.zeta, I));
  Mat Np = kernel(obj.rho - scale(zq, I));
  if (N.c != n || Np.c != n || rank(hcat(N, Np)) != m) throw ValidationError("rho malformed");

  // C-adapted basis of N
  auto t = type_of(obj.M);
  Mat U(F, m, 0);
  std::vector<int> w;
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    Mat S = detail::intersection_basis(C(obj.M, it->first), N);
    for (int c = 0; c < S.c; ++c) {
      Mat v = columns(S, {c});
      if (rank(hcat(U, v)) > U.c) {
        U = hcat(U, v);
        w.push_back(it->first);
      }
    }
  }
  if (U.c != n) throw ConsistencyError("C does not split along rho");

  Mat Binv = inverse(obj.M.B);
  Mat H1 = detail::component(obj.pairing, 0, m);
  UnitaryQuadruple Q;
  Q.F = F;
  Q.q = q;
  Q.n = n;
  Q.w = w;
  Q.zeta = obj.zeta;
  Q.kind = obj.family.kind;
  Q.d = obj.target.w.empty() ? 0 : obj.target.w[0];
  Q.mu = obj.target.Phi(0, 1);
  Q.Psi = Mat(F, n, n);
  for (int j = 0; j < n; ++j) {
    Mat a = Binv * columns(U, {j});
    Mat phi(F, m, 1);
    for (int k = 0; k < m; ++k)
      if (obj.M.w[k] == w[j] && a(k, 0))
        phi = phi + scale(F->pow(a(k, 0), std::uint64_t(q)), columns(obj.M.Phi, {k}));
    Mat row = transpose(phi) * H1 * U;
    for (int k = 0; k < n; ++k) Q.Psi(k, j) = row(0, k);
  }
  if (!is_invertible(Q.Psi)) throw ConsistencyError("psi is not an isomorphism");
  for (int x : w) ++Q.type.nbar[x];
  if (Q.kind == GroupKind::CU) Q.type.d = Q.d;
  return Q;
}

// M = N~ + N~^dual with H_1 the evaluation pairing
inline ClassicalObject unitary_recompose(const UnitaryQuadruple& Q) {
  const FieldPtr& F = Q.F;
  int n = Q.n, m = 2 * n;
  ClassicalObject obj;
  obj.family = {Q.kind, n, F->p() != 2};
  obj.type = Q.type;
  obj.kind = FormKind::hermitian;
  FZip M{F, Q.q, m, identity(F, m), Q.w, Mat(F, m, m)};
  for (int k = 0; k < n; ++k) M.w.push_back(Q.d - Q.w[k]);
  Mat X = scale(Q.mu, transpose(inverse(Q.Psi)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      M.Phi(n + i, j) = Q.Psi(i, j);
      M.Phi(i, n + j) = X(i, j);
    }
  validate_fzip(M);
  obj.M = M;
  obj.zeta = Q.zeta;
  obj.rho = detail::rho_matrix(F, n, Q.zeta, Q.q);
  obj.pairing = detail::hermitian_pairing(identity(F, n));
  obj.target = {F, Q.q, 2, identity(F, 2), {Q.d, Q.d}, detail::swap2(F, Q.mu)};
  return obj;
}

// explicit isomorphism recompose(decompose(obj)) -> obj compatible with rho and H, if one is found
inline std::optional<Mat> unitary_round_trip_map(const ClassicalObject& obj, const ClassicalObject& back) {
  const FieldPtr& F = obj.M.F;
  int m = obj.M.n;
  int zq = F->pow(obj.zeta, std::uint64_t(obj.M.q));
  Mat I = identity(F, m);
  Mat N = kernel(obj.rho - scale(obj.zeta, I));
  Mat Np = kernel(obj.rho - scale(zq, I));
  // recover u_j as decompose did
  auto t = type_of(obj.M);
  Mat U(F, m, 0);
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    Mat S = detail::intersection_basis(C(obj.M, it->first), N);
    for (int c = 0; c < S.c; ++c) {
      Mat v = columns(S, {c});
      if (rank(hcat(U, v)) > U.c) U = hcat(U, v);
    }
  }
  // dual basis of N' against U under H_1
  Mat H1 = detail::component(obj.pairing, 0, m);
  Mat A = transpose(Np) * H1 * U;  // A(k, l) = H_1(Np_k, u_l)
  if (!is_invertible(A)) return std::nullopt;
  Mat V = Np * transpose(inverse(A));
  Mat f = hcat(U, V);
  if (!is_invertible(f) || !is_morphism(f, back.M, obj.M)) return std::nullopt;
  if (obj.rho * f != f * back.rho) return std::nullopt;
  if (obj.pairing * kron(f, f) != back.pairing) return std::nullopt;
  return f;
}

}  // namespace gzc

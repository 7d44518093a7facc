#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gzc/weyl.hpp"

namespace gzc {

enum class GroupKind { GL, SL, Sp, CSp, O, CO, U, CU };

inline const char* kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::GL: return "GL";
    case GroupKind::SL: return "SL";
    case GroupKind::Sp: return "Sp";
    case GroupKind::CSp: return "CSp";
    case GroupKind::O: return "O";
    case GroupKind::CO: return "CO";
    case GroupKind::U: return "U";
    case GroupKind::CU: return "CU";
  }
  return "?";
}

inline GroupKind parse_kind(const std::string& s) {
  for (GroupKind k : {GroupKind::GL, GroupKind::SL, GroupKind::Sp, GroupKind::CSp, GroupKind::O,
                      GroupKind::CO, GroupKind::U, GroupKind::CU})
    if (s == kind_name(k)) return k;
  throw ValidationError("unknown family '" + s + "'");
}

struct GroupFamily {
  GroupKind kind = GroupKind::GL;
  int n = 1;
  bool odd_char = true;  // residue characteristic odd; required for O and CO

  std::string name() const { return std::string(kind_name(kind)) + "(" + std::to_string(n) + ")"; }
};

struct CocharacterType {
  std::map<int, int> nbar;   // i -> n_i, zero entries omitted
  std::optional<int> d;      // multiplier weight for CSp, CO, CU

  int total() const {
    int s = 0;
    for (auto& [i, m] : nbar) s += m;
    return s;
  }
  int at(int i) const {
    auto it = nbar.find(i);
    return it == nbar.end() ? 0 : it->second;
  }
  // weights listed with multiplicity, weakly decreasing
  std::vector<int> weights() const {
    std::vector<int> w;
    for (auto it = nbar.rbegin(); it != nbar.rend(); ++it)
      for (int k = 0; k < it->second; ++k) w.push_back(it->first);
    return w;
  }
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [i, m] : nbar) {
      if (!first) os << ",";
      os << i << ":" << m;
      first = false;
    }
    return os.str();
  }
};

inline CocharacterType make_type(std::initializer_list<std::pair<const int, int>> l,
                                 std::optional<int> d = std::nullopt) {
  CocharacterType t;
  for (auto& [i, m] : l)
    if (m != 0) t.nbar[i] = m;
  t.d = d;
  return t;
}

// "i:n_i,..." with negative i allowed, or positional "n_0,n_1,..."
inline CocharacterType parse_type(const std::string& s) {
  CocharacterType t;
  std::stringstream ss(s);
  std::string item;
  if (!s.empty() && s.find(':') == std::string::npos) {
    int i = 0;
    while (std::getline(ss, item, ',')) {
      int m = 0;
      try {
        std::size_t p = 0;
        m = std::stoi(item, &p);
        if (p != item.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ValidationError("type entry '" + item + "' is not a multiplicity");
      }
      if (m < 0) throw ValidationError("n_i must be non-negative");
      if (m > 0) t.nbar[i] = m;
      ++i;
    }
    return t;
  }
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto c = item.find(':');
    if (c == std::string::npos) throw ValidationError("type entry '" + item + "' is not i:n_i");
    int i = 0, m = 0;
    try {
      std::size_t p1 = 0, p2 = 0;
      i = std::stoi(item.substr(0, c), &p1);
      m = std::stoi(item.substr(c + 1), &p2);
      if (p1 != c || p2 != item.size() - c - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ValidationError("type entry '" + item + "' is not i:n_i");
    }
    if (m < 0) throw ValidationError("n_i must be non-negative");
    if (t.nbar.count(i)) throw ValidationError("index " + std::to_string(i) + " repeated");
    if (m > 0) t.nbar[i] = m;
  }
  return t;
}

struct TypeInfo {
  int degree = 1;  // base field F_q (1) or F_{q^2} (2)
  int d = 0;       // resolved multiplier weight (0 where unused)
};

inline bool symmetric_about(const CocharacterType& t, int d) {
  for (auto& [i, m] : t.nbar)
    if (t.at(d - i) != m) return false;
  return true;
}

inline std::optional<int> find_center(const CocharacterType& t) {
  if (t.nbar.empty()) return 0;
  int d = t.nbar.begin()->first + t.nbar.rbegin()->first;
  if (symmetric_about(t, d)) return d;
  return std::nullopt;
}

inline TypeInfo validate_type(const GroupFamily& G, const CocharacterType& t) {
  TypeInfo info;
  if (G.n < 1) throw ValidationError("n ≥ 1 required");
  for (auto& [i, m] : t.nbar)
    if (m < 0) throw ValidationError("n_i must be non-negative");
  if (t.total() != G.n) throw ValidationError("Σ n_i ≠ n");
  auto need_center = [&]() {
    if (t.d) {
      if (!symmetric_about(t, *t.d)) throw ValidationError("n_i ≠ n_{d−i}");
      return *t.d;
    }
    auto d = find_center(t);
    if (!d) throw ValidationError("no d with n_i = n_{d−i}");
    return *d;
  };
  switch (G.kind) {
    case GroupKind::GL:
      break;
    case GroupKind::SL: {
      long s = 0;
      for (auto& [i, m] : t.nbar) s += long(i) * m;
      if (s != 0) throw ValidationError("Σ i·n_i ≠ 0");
      break;
    }
    case GroupKind::Sp:
      if (G.n % 2) throw ValidationError("n odd");
      if (!symmetric_about(t, 0)) throw ValidationError("n_i ≠ n_{−i}");
      break;
    case GroupKind::CSp:
      if (G.n % 2) throw ValidationError("n odd");
      info.d = need_center();
      break;
    case GroupKind::O:
      if (!G.odd_char) throw ValidationError("q even");
      if (!symmetric_about(t, 0)) throw ValidationError("n_i ≠ n_{−i}");
      break;
    case GroupKind::CO:
      if (!G.odd_char) throw ValidationError("q even");
      info.d = need_center();
      break;
    case GroupKind::U:
      info.degree = symmetric_about(t, 0) ? 1 : 2;
      break;
    case GroupKind::CU:
      if (!t.d) throw ValidationError("multiplier weight d required");
      info.d = *t.d;
      info.degree = symmetric_about(t, *t.d) ? 1 : 2;
      break;
  }
  return info;
}

struct ZipDatum {
  GroupFamily family;
  CocharacterType type;
  TypeInfo info;
  WeylSystem weyl;
  SimpleSubset I, J;
  WeylElement w0, x, y;
  std::vector<int> theta;  // subgroup of Omega, element indices
  int dim_G_mod_P = 0;
  IntVec chi_weights;

  bool connected() const { return weyl.omega.order == 1; }
  // psi = int(x) o phibar on W
  WeylElement psi(const WeylElement& w) const { return x * weyl.phibar(w) * inverse(x); }
  WeylElement psi_inv(const WeylElement& w) const { return weyl.phibar_inv(inverse(x) * w * x); }
};

inline int dim_flag_variety(const ZipDatum& d) { return d.dim_G_mod_P; }

namespace detail {

// half of a symmetric weight multiset, doubled and recentred so that the pairing sign survives
inline IntVec half_weights(const CocharacterType& t, int d, int half) {
  IntVec a;
  for (auto it = t.nbar.rbegin(); it != t.nbar.rend(); ++it) {
    int v = 2 * it->first - d;
    if (v > 0)
      for (int k = 0; k < it->second; ++k) a.push_back(v);
  }
  while (int(a.size()) < half) a.push_back(0);
  if (int(a.size()) != half) throw ConsistencyError("weight half has wrong size");
  return a;
}

inline void set_sign_omega(WeylSystem& W, bool acts) {
  W.omega.order = 2;
  W.omega.mul = {{0, 1}, {1, 0}};
  W.omega.inv = {0, 1};
  WeylElement eps = W.identity();
  if (W.dim() > 0 && acts) eps.im.back() = -W.dim();
  W.omega.conj = {W.identity(), eps};
  W.omega.trivial = {true, !acts || W.dim() == 0};
  W.omega.names = {"1", acts ? "eps" : "-1"};
  W.frob.omega_map = {0, 1};
}

}  // namespace detail

inline ZipDatum build_zip_datum(const GroupFamily& G, const CocharacterType& t) {
  ZipDatum Z;
  Z.family = G;
  Z.type = t;
  Z.info = validate_type(G, t);
  int n = G.n;
  bool theta_full = false;
  switch (G.kind) {
    case GroupKind::GL:
    case GroupKind::SL:
    case GroupKind::U:
    case GroupKind::CU:
      Z.weyl = make_weyl_system(Family::A, n - 1);
      Z.chi_weights = t.weights();
      break;
    case GroupKind::Sp:
    case GroupKind::CSp:
      Z.weyl = make_weyl_system(Family::C, n / 2);
      Z.chi_weights = detail::half_weights(t, Z.info.d, n / 2);
      break;
    case GroupKind::O:
    case GroupKind::CO: {
      int m = n / 2;
      int mid = Z.info.d;  // center of the weights is d/2; doubled coordinates put it at 0
      bool central = mid % 2 == 0 && t.at(mid / 2) > 0 && t.at(mid / 2) % 2 == 0;
      if (n % 2) {
        Z.weyl = make_weyl_system(Family::B, m);
        // O(2m+1) = SO x {+-1}; CO(2m+1) is connected
        if (G.kind == GroupKind::O) {
          detail::set_sign_omega(Z.weyl, false);
          theta_full = true;
        }
      } else {
        Z.weyl = make_weyl_system(Family::D, m);
        detail::set_sign_omega(Z.weyl, true);
        theta_full = G.kind == GroupKind::O ? t.at(0) > 0 : central;
      }
      Z.chi_weights = detail::half_weights(t, Z.info.d, m);
      break;
    }
  }
  const WeylSystem& W = Z.weyl;
  int r = W.rank();
  Z.w0 = longest_element(W);
  if (G.kind == GroupKind::U || G.kind == GroupKind::CU) Z.weyl.frob.conj = Z.w0;

  for (int s = 0; s < r; ++s)
    if (act(W.simples[s], Z.chi_weights) == Z.chi_weights) Z.I.insert(s);

  Z.theta = {0};
  if (theta_full) {
    for (int om = 1; om < W.omega.order; ++om) {
      if (act(W.omega.conj[om], Z.chi_weights) != Z.chi_weights)
        throw ConsistencyError("Theta does not fix the cocharacter");
      if (conjugate_subset(W, W.omega.conj[om], Z.I) != Z.I)
        throw ConsistencyError("Theta does not normalize W_I");
      Z.theta.push_back(om);
    }
  }

  Z.J = conjugate_subset(W, W.frob.conj, conjugate_subset(W, Z.w0, Z.I));
  Z.y = Z.w0 * longest_element(W, Z.I);
  SimpleSubset phiI = conjugate_subset(W, W.frob.conj, Z.I);
  SimpleSubset phiinvJ = conjugate_subset(W, inverse(W.frob.conj), Z.J);
  if (Z.y != longest_element(W, phiinvJ) * Z.w0)
    throw ConsistencyError("w0 w0_I differs from w0_{phibar^-1 J} w0");
  Z.x = min_double_coset_rep(W, Z.J, phiI, Z.w0);
  if (Z.x != W.phibar(Z.y)) throw ConsistencyError("x differs from phibar(y)");
  if (conjugate_subset(W, Z.x, phiI) != Z.J) throw ConsistencyError("psi(I) differs from J");

  for (const auto& a : W.roots.positive_roots) {
    long p = 0;
    for (int i = 0; i < W.dim(); ++i) p += long(a[i]) * Z.chi_weights[i];
    Z.dim_G_mod_P += p > 0;
  }
  return Z;
}

inline bool w0_central(const ZipDatum& Z) {
  for (const auto& s : Z.weyl.simples)
    if (Z.w0 * s != s * Z.w0) return false;
  return true;
}

}  // namespace gzc

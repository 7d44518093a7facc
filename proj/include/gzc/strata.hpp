#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "gzc/zipdatum.hpp"

namespace gzc {

inline constexpr std::uint64_t kParabolicGuard = 100'000ULL;

struct ExtendedElement {
  WeylElement w;
  int omega = 0;

  friend bool operator==(const ExtendedElement& a, const ExtendedElement& b) {
    return a.omega == b.omega && a.w == b.w;
  }
  friend bool operator<(const ExtendedElement& a, const ExtendedElement& b) {
    return std::tie(a.omega, a.w) < std::tie(b.omega, b.w);
  }
};

// arithmetic in W x| Omega for a fixed datum
struct ExtOps {
  const ZipDatum* Z;

  const WeylSystem& W() const { return Z->weyl; }
  ExtendedElement mul(const ExtendedElement& a, const ExtendedElement& b) const {
    return {a.w * W().omega_act(a.omega, b.w), W().omega.mul[a.omega][b.omega]};
  }
  ExtendedElement inv(const ExtendedElement& a) const {
    int oi = W().omega.inv[a.omega];
    return {W().omega_act(oi, inverse(a.w)), oi};
  }
  ExtendedElement psi(const ExtendedElement& a) const {
    ExtendedElement f{W().phibar(a.w), W().frob.omega_map[a.omega]};
    ExtendedElement x{Z->x, 0}, xi{inverse(Z->x), 0};
    return mul(mul(x, f), xi);
  }
  // v a psi(v)^-1
  ExtendedElement twist(const ExtendedElement& v, const ExtendedElement& a) const {
    return mul(mul(v, a), inv(psi(v)));
  }
};

inline std::string ext_word(const ZipDatum& Z, const ExtendedElement& a) {
  std::string s = word_string(reduced_word(Z.weyl, a.w));
  if (Z.weyl.omega.order > 1) s += "*" + Z.weyl.omega.names[a.omega];
  return s;
}

inline std::vector<ExtendedElement> enumerate_extended(const ZipDatum& Z) {
  std::vector<ExtendedElement> out;
  auto reps = min_coset_reps(Z.weyl, Z.I, Side::left);
  guard(std::uint64_t(reps.size()) * std::uint64_t(Z.weyl.omega.order), "extended index set");
  for (int om = 0; om < Z.weyl.omega.order; ++om)
    for (auto& w : reps) out.push_back({w, om});
  return out;
}

inline std::vector<std::vector<ExtendedElement>> theta_orbits(const ZipDatum& Z,
                                                              const std::vector<ExtendedElement>& elems) {
  ExtOps X{&Z};
  std::map<ExtendedElement, int> where;
  for (std::size_t i = 0; i < elems.size(); ++i) where[elems[i]] = -1;
  std::vector<std::vector<ExtendedElement>> orbits;
  for (auto& e : elems) {
    if (where[e] >= 0) continue;
    int id = int(orbits.size());
    orbits.emplace_back();
    for (int th : Z.theta) {
      ExtendedElement t = X.twist({Z.weyl.identity(), th}, e);
      auto it = where.find(t);
      if (it == where.end()) throw ConsistencyError("Theta action leaves the index set");
      if (it->second < 0) {
        it->second = id;
        orbits.back().push_back(t);
      }
    }
  }
  return orbits;
}

inline std::vector<ExtendedElement> wi_theta(const ZipDatum& Z) {
  guard(parabolic_order(Z.weyl, Z.I), "W_I order", kParabolicGuard);
  std::vector<ExtendedElement> out;
  for (auto& v : enumerate_parabolic(Z.weyl, Z.I))
    for (int th : Z.theta) out.push_back({v, th});
  return out;
}

// b' precedes b: some v in W_I Theta has v b' psi(v)^-1 <= b in the extended Bruhat order
inline bool precedes(const ZipDatum& Z, const ExtendedElement& a, const ExtendedElement& b) {
  ExtOps X{&Z};
  for (auto& v : wi_theta(Z)) {
    ExtendedElement c = X.twist(v, a);
    if (c.omega == b.omega && bruhat_leq(Z.weyl, c.w, b.w)) return true;
  }
  return false;
}

// connected data with central w0 only
inline bool precedes_split(const ZipDatum& Z, const WeylElement& a, const WeylElement& b) {
  if (!Z.connected() || !w0_central(Z)) throw ValidationError("split shortcut needs connected data with central w0");
  WeylElement w0I = longest_element(Z.weyl, Z.I);
  for (auto& v : enumerate_parabolic(Z.weyl, Z.I))
    if (bruhat_leq(Z.weyl, v * a * w0I * inverse(v) * w0I, b)) return true;
  return false;
}

// relation matrix over elems, rel[i][j] = elems[i] precedes elems[j]
inline std::vector<std::vector<char>> precedes_matrix(const ZipDatum& Z, const std::vector<ExtendedElement>& elems,
                                                       const WeylTable& T) {
  ExtOps X{&Z};
  auto V = wi_theta(Z);
  std::size_t n = elems.size();
  int nom = Z.weyl.omega.order;
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  std::vector<int> bw(n);
  for (std::size_t j = 0; j < n; ++j) bw[j] = T.index(elems[j].w);
  std::size_t words = T.words();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<int>> reach(nom);
    for (auto& v : V) {
      ExtendedElement c = X.twist(v, elems[i]);
      reach[c.omega].push_back(T.index(c.w));
    }
    if (words) {
      std::vector<std::vector<std::uint64_t>> bits(nom, std::vector<std::uint64_t>(words, 0));
      for (int om = 0; om < nom; ++om)
        for (int u : reach[om]) bits[om][u >> 6] |= 1ULL << (u & 63);
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t* low = T.lower_set(bw[j]);
        const auto& b = bits[elems[j].omega];
        for (std::size_t k = 0; k < words && !rel[i][j]; ++k) rel[i][j] = (low[k] & b[k]) != 0;
      }
    } else {
      for (int om = 0; om < nom; ++om) {
        auto& r = reach[om];
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
      }
      for (std::size_t j = 0; j < n; ++j)
        for (int u : reach[elems[j].omega])
          if (T.leq(u, bw[j])) {
            rel[i][j] = 1;
            break;
          }
    }
  }
  return rel;
}

struct PartialOrderReport {
  std::size_t reflexive = 0, antisymmetric = 0, transitive = 0;
  std::size_t total() const { return reflexive + antisymmetric + transitive; }
};

inline PartialOrderReport check_partial_order(const std::vector<std::vector<char>>& rel) {
  PartialOrderReport r;
  std::size_t n = rel.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!rel[i][i]) ++r.reflexive;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && rel[i][j] && rel[j][i]) ++r.antisymmetric;
      if (!rel[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (rel[j][k] && !rel[i][k]) ++r.transitive;
    }
  }
  return r;
}

inline std::size_t symmetric_pairs_outside_orbits(const std::vector<std::vector<char>>& rel,
                                                  const std::vector<int>& orbit_of) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::size_t j = 0; j < rel.size(); ++j)
      if (i != j && rel[i][j] && rel[j][i] && orbit_of[i] != orbit_of[j]) ++bad;
  return bad;
}

struct AutInvariants {
  bool supported = false;
  int aut_dim = 0, aut_lie_dim = 0;
  bool aut_smooth = false;
  WeylElement v_min;
  SimpleSubset K_w;
};

inline SimpleSubset compute_K_w(const ZipDatum& Z, const WeylElement& w) {
  const WeylSystem& W = Z.weyl;
  WeylElement wi = inverse(w);
  SimpleSubset K;
  for (int s : Z.J.members()) {
    int t = as_simple(W, w * W.simples[s] * wi);
    if (t >= 0 && Z.I.has(t)) K.insert(s);
  }
  auto tau = [&](int s) { return as_simple(W, Z.psi(w * W.simples[s] * wi)); };
  auto tau_inv = [&](int s) { return as_simple(W, wi * Z.psi_inv(W.simples[s]) * w); };
  for (bool changed = true; changed;) {
    changed = false;
    for (int s : K.members()) {
      int a = tau(s), b = tau_inv(s);
      if (a < 0 || b < 0 || !K.has(a) || !K.has(b)) {
        K.erase(s);
        changed = true;
      }
    }
  }
  return K;
}

inline AutInvariants aut_invariants(const ZipDatum& Z, const ExtendedElement& a) {
  AutInvariants r;
  r.K_w = compute_K_w(Z, a.w);
  r.v_min = min_double_coset_rep(Z.weyl, Z.I, Z.J, a.w);
  if (!Z.connected()) return r;
  r.supported = true;
  r.aut_dim = Z.dim_G_mod_P - length(Z.weyl, a.w);
  r.aut_lie_dim = Z.dim_G_mod_P - length(Z.weyl, r.v_min);
  r.aut_smooth = a.w == r.v_min;
  return r;
}

struct Stratum {
  ExtendedElement rep;
  std::vector<ExtendedElement> orbit;
  std::string word;
  std::vector<int> rword;
  int length = 0;
  int codim = 0;
  AutInvariants aut;
};

struct StratumPoset {
  ZipDatum datum;
  std::vector<Stratum> strata;
  std::vector<std::vector<char>> leq;
  std::vector<std::pair<int, int>> hasse;
};

inline std::vector<std::pair<int, int>> transitive_reduction(const std::vector<std::vector<char>>& rel) {
  std::vector<std::pair<int, int>> e;
  int n = int(rel.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !rel[i][j]) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (k != i && k != j && rel[i][k] && rel[k][j]) cover = false;
      if (cover) e.push_back({i, j});
    }
  return e;
}

inline StratumPoset build_poset(const ZipDatum& Z) {
  StratumPoset P;
  P.datum = Z;
  const ZipDatum& D = P.datum;
  WeylTable T(D.weyl);
  auto elems = enumerate_extended(D);
  auto orbits = theta_orbits(D, elems);
  auto rel = precedes_matrix(D, elems, T);
  std::map<ExtendedElement, int> pos;
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = int(i);
  std::vector<int> orbit_of(elems.size());
  for (std::size_t k = 0; k < orbits.size(); ++k)
    for (auto& e : orbits[k]) orbit_of[pos[e]] = int(k);
  // on elements: a preorder whose symmetric pairs stay inside one Theta-orbit
  auto rep = check_partial_order(rel);
  if (rep.reflexive || rep.transitive || symmetric_pairs_outside_orbits(rel, orbit_of))
    throw ConsistencyError("precedes relation is not a partial order on Theta-orbits");
  for (auto& orb : orbits) {
    Stratum s;
    s.orbit = orb;
    bool first = true;
    for (auto& e : orb) {
      auto w = reduced_word(D.weyl, e.w);
      auto key = std::make_tuple(int(w.size()), w, e.omega);
      if (first || key < std::make_tuple(int(s.rword.size()), s.rword, s.rep.omega)) {
        s.rep = e;
        s.rword = w;
        first = false;
      }
    }
    std::sort(s.orbit.begin(), s.orbit.end());
    s.word = ext_word(D, s.rep);
    s.length = int(s.rword.size());
    s.codim = D.dim_G_mod_P - s.length;
    s.aut = aut_invariants(D, s.rep);
    P.strata.push_back(std::move(s));
  }
  std::sort(P.strata.begin(), P.strata.end(), [](const Stratum& a, const Stratum& b) {
    return std::make_tuple(a.length, a.rword, a.rep.omega) < std::make_tuple(b.length, b.rword, b.rep.omega);
  });
  std::size_t m = P.strata.size();
  P.leq.assign(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      int a = pos[P.strata[i].rep];
      for (auto& b : P.strata[j].orbit)
        if (rel[a][pos[b]]) {
          P.leq[i][j] = 1;
          break;
        }
    }
  if (check_partial_order(P.leq).total())
    throw ConsistencyError("induced order on orbits is not a partial order");
  P.hasse = transitive_reduction(P.leq);
  return P;
}

enum class Format { dot, json, tsv };

inline Format parse_format(const std::string& s) {
  if (s == "dot") return Format::dot;
  if (s == "json") return Format::json;
  if (s == "tsv") return Format::tsv;
  throw ValidationError("unknown format '" + s + "'");
}

inline nlohmann::ordered_json datum_json(const ZipDatum& Z) {
  nlohmann::ordered_json d;
  d["family"] = Z.family.name();
  nlohmann::ordered_json nb = nlohmann::ordered_json::object();
  for (auto& [i, m] : Z.type.nbar) nb[std::to_string(i)] = m;
  d["nbar"] = nb;
  if (Z.type.d) d["d"] = *Z.type.d;
  d["weyl"] = std::string(1, family_letter(Z.weyl.roots.family)) + std::to_string(Z.weyl.rank());
  auto idx = [](SimpleSubset K) {
    std::vector<int> v;
    for (int s : K.members()) v.push_back(s + 1);
    return v;
  };
  d["I"] = idx(Z.I);
  d["J"] = idx(Z.J);
  d["x"] = word_string(reduced_word(Z.weyl, Z.x));
  d["y"] = word_string(reduced_word(Z.weyl, Z.y));
  d["theta_order"] = Z.theta.size();
  d["dim"] = Z.dim_G_mod_P;
  return d;
}

inline std::string emit(const StratumPoset& P, Format f) {
  std::ostringstream os;
  const ZipDatum& Z = P.datum;
  switch (f) {
    case Format::dot: {
      os << "digraph strata {\n";
      for (std::size_t i = 0; i < P.strata.size(); ++i) {
        auto& s = P.strata[i];
        os << "  n" << i << " [label=\"" << s.word << " | " << s.length << " | " << s.codim << "\"];\n";
      }
      for (auto& [a, b] : P.hasse) os << "  n" << a << " -> n" << b << ";\n";
      os << "}\n";
      break;
    }
    case Format::json: {
      nlohmann::ordered_json j;
      j["datum"] = datum_json(Z);
      j["strata"] = nlohmann::ordered_json::array();
      for (auto& s : P.strata) {
        nlohmann::ordered_json r;
        r["word"] = word_string(s.rword);
        r["omega"] = Z.weyl.omega.names[s.rep.omega];
        r["length"] = s.length;
        r["codim"] = s.codim;
        if (s.aut.supported) {
          r["aut_dim"] = s.aut.aut_dim;
          r["aut_lie_dim"] = s.aut.aut_lie_dim;
          r["aut_smooth"] = s.aut.aut_smooth;
        } else {
          r["aut_dim"] = nullptr;
          r["aut_lie_dim"] = nullptr;
          r["aut_smooth"] = nullptr;
        }
        r["orbit_size"] = s.orbit.size();
        j["strata"].push_back(r);
      }
      j["hasse"] = nlohmann::ordered_json::array();
      for (auto& [a, b] : P.hasse) j["hasse"].push_back({a, b});
      os << j.dump(2) << "\n";
      break;
    }
    case Format::tsv: {
      os << "# word\tomega\tlength\tcodim\taut_dim\taut_lie_dim\taut_smooth\torbit_size\tK_w\n";
      for (auto& s : P.strata) {
        os << word_string(s.rword) << "\t" << Z.weyl.omega.names[s.rep.omega] << "\t" << s.length << "\t"
           << s.codim << "\t";
        if (s.aut.supported)
          os << s.aut.aut_dim << "\t" << s.aut.aut_lie_dim << "\t" << (s.aut.aut_smooth ? "yes" : "no");
        else
          os << "NA\tNA\tNA";
        os << "\t" << s.orbit.size() << "\t" << subset_string(s.aut.K_w) << "\n";
      }
      break;
    }
  }
  return os.str();
}

}  // namespace gzc

#pragma once

// Standard objects for the eight families and one named mutation per condition.

#include <functional>
#include <string>
#include <vector>

#include "gzc/gzc.hpp"

namespace cases {

using namespace gzc;

struct Standard {
  std::string name;
  ClassicalObject obj;
};

inline std::vector<Standard> standard_objects() {
  auto F2 = make_field(2), F3 = make_field(3), F4 = make_field(2, 2), F9 = make_field(3, 2);
  using K = GroupKind;
  return {
      {"GL(3)", standard_classical(K::GL, make_type({{0, 2}, {1, 1}}), F2, 2)},
      {"SL(2)", standard_classical(K::SL, make_type({{-1, 1}, {1, 1}}), F3, 3)},
      {"Sp(2)", standard_classical(K::Sp, make_type({{-1, 1}, {1, 1}}), from_rows(F3, {{1, 1}, {0, 1}}), 3)},
      {"Sp(4)", standard_classical(K::Sp, make_type({{-1, 1}, {0, 2}, {1, 1}}), F2, 2)},
      {"CSp(4)", standard_classical(K::CSp, make_type({{0, 2}, {1, 2}}, 1), F3, 3)},
      {"CSp(2) g", standard_classical(K::CSp, make_type({{0, 1}, {1, 1}}, 1), from_rows(F3, {{1, 1}, {0, 2}}), 3)},
      {"O(3)", standard_classical(K::O, make_type({{-1, 1}, {0, 1}, {1, 1}}), F3, 3)},
      {"O(4)", standard_classical(K::O, make_type({{-1, 1}, {0, 2}, {1, 1}}), F3, 3)},
      {"CO(4)", standard_classical(K::CO, make_type({{0, 2}, {1, 2}}, 1), F3, 3)},
      {"U(2)", standard_classical(K::U, make_type({{0, 1}, {1, 1}}), F4, 2)},
      {"U(2) g", standard_classical(K::U, make_type({{0, 1}, {1, 1}}), from_rows(F4, {{1, 1}, {0, 1}}), 2)},
      {"U(3)", standard_classical(K::U, make_type({{-1, 1}, {0, 1}, {1, 1}}), F9, 3)},
      {"CU(3)", standard_classical(K::CU, make_type({{0, 1}, {1, 2}}, 1), F4, 2)},
  };
}

struct Mutation {
  std::string expected;
  std::function<ClassicalObject()> make;
};

inline std::string first_error(const ClassicalObject& obj) {
  auto e = classical_errors(obj);
  return e.empty() ? "ok" : e.front();
}

inline std::vector<Mutation> mutations() {
  using K = GroupKind;
  auto F3 = make_field(3), F4 = make_field(2, 2);
  auto sp = [=] { return standard_classical(K::Sp, make_type({{-1, 1}, {1, 1}}), F3, 3); };
  auto o = [=] { return standard_classical(K::O, make_type({{-1, 1}, {1, 1}}), F3, 3); };
  auto u = [=] { return standard_classical(K::U, make_type({{0, 1}, {1, 1}}), F4, 2); };
  auto csp = [=] { return standard_classical(K::CSp, make_type({{0, 2}, {1, 2}}, 1), F3, 3); };
  auto sl = [=] { return standard_classical(K::SL, make_type({{-1, 1}, {1, 1}}), F3, 3); };
  return {
      {"degenerate", [=] { auto m = sp(); m.pairing(0, 1) = 0; return m; }},
      {"not alternating", [=] { auto m = sp(); m.pairing(1, 0) = 1; return m; }},
      {"pairing not admissible", [=] { auto m = sp(); m.M.Phi = from_rows(F3, {{1, 0}, {0, 2}}); return m; }},
      {"n_i ≠ n_{−i}", [=] { auto m = sp(); m.type = make_type({{0, 1}, {1, 1}}); return m; }},
      {"not symmetric", [=] { auto m = o(); m.pairing = sp().pairing; return m; }},
      {"not hermitian",
       [=] {
         auto m = u();
         for (int c = 0; c < m.pairing.c; ++c) m.pairing(1, c) = F4->mul(m.pairing(1, c), 2);
         return m;
       }},
      {"rho malformed", [=] { auto m = u(); m.rho = identity(F4, 4); return m; }},
      {"target type ≠ d", [=] { auto m = csp(); m.target.w = {2}; return m; }},
      {"delta not an isomorphism", [=] { auto m = sl(); m.delta(0, 0) = 0; return m; }},
      {"Σ i·n_i ≠ 0", [=] { auto m = sl(); m.type = make_type({{0, 1}, {1, 1}}); return m; }},
      {"n odd",
       [=] {
         auto m = sp();
         m.family.n = 3;
         m.type = make_type({{-1, 1}, {0, 1}, {1, 1}});
         return m;
       }},
      {"wrong structure for Sp(2)", [=] { auto m = sp(); m.kind = FormKind::symmetric; return m; }},
      {"type mismatch", [=] { auto m = sp(); m.M.w = {0, 0}; return m; }},
  };
}

}  // namespace cases

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "gzc/gzc.hpp"

using namespace gzc;
using ojson = nlohmann::ordered_json;

namespace {

struct Options {
  std::string family = "GL";
  std::string type;
  std::string type_pos;
  std::optional<int> d;
  std::optional<int> q;
  int ext_bound = 4;
  std::string format = "tsv";
  std::string output;
  int height = -1;
  int dim = -1;
};

CocharacterType read_type(const Options& o) {
  if (!o.type.empty() && !o.type_pos.empty()) throw ValidationError("type given twice");
  std::string s = o.type.empty() ? o.type_pos : o.type;
  if (s.empty()) throw ValidationError("a type vector is required");
  CocharacterType t = parse_type(s);
  if (o.d) t.d = *o.d;
  return t;
}

GroupFamily read_family(const Options& o, const CocharacterType& t) {
  GroupFamily G{parse_kind(o.family), t.total(), true};
  if (o.q) {
    prime_power(*o.q);
    G.odd_char = *o.q % 2 == 1;
  }
  return G;
}

std::string run_strata(const Options& o) {
  Format f = parse_format(o.format);
  auto t = read_type(o);
  auto Z = build_zip_datum(read_family(o, t), t);
  return emit(build_poset(Z), f);
}

std::string run_bt1(const Options& o) {
  Format f = parse_format(o.format);
  if (o.height < 0 || o.dim < 0) throw ValidationError("--height and --dim are required");
  return emit_bt1(o.height, o.dim, f);
}

std::string run_classify(const Options& o) {
  Format f = parse_format(o.format);
  auto t = read_type(o);
  if (parse_kind(o.family) != GroupKind::GL) throw ValidationError("classify supports the GL family only");
  int q = o.q.value_or(2);
  prime_power(q);
  auto Z = build_zip_datum({GroupKind::GL, t.total(), q % 2 == 1}, t);
  auto C = classify_bruteforce(t, q, o.ext_bound);
  std::vector<int> orbits(C.strata.size(), 0), degree(C.strata.size(), 0);
  for (int r : C.orbit_reps) ++orbits[C.rows[r].stratum];
  for (auto& row : C.rows) degree[row.stratum] = std::max(degree[row.stratum], row.degree);
  std::vector<std::string> words;
  for (auto& w : C.strata) words.push_back(word_string(reduced_word(Z.weyl, w)));

  std::ostringstream os;
  switch (f) {
    case Format::tsv:
      os << "# word\tlength\telements\torbits\tdegree\n";
      for (std::size_t s = 0; s < C.strata.size(); ++s)
        os << words[s] << "\t" << length(Z.weyl, C.strata[s]) << "\t" << C.class_sizes[s] << "\t" << orbits[s]
           << "\t" << degree[s] << "\n";
      break;
    case Format::json: {
      ojson j;
      j["datum"] = datum_json(Z);
      j["q"] = q;
      j["ext_bound"] = o.ext_bound;
      j["elements"] = C.rows.size();
      j["orbits"] = C.orbit_reps.size();
      j["nonempty"] = C.nonempty();
      j["strata"] = ojson::array();
      for (std::size_t s = 0; s < C.strata.size(); ++s) {
        ojson r;
        r["word"] = words[s];
        r["length"] = length(Z.weyl, C.strata[s]);
        r["representative"] = to_string(C.representatives[s]);
        r["elements"] = C.class_sizes[s];
        r["orbits"] = orbits[s];
        r["degree"] = degree[s];
        j["strata"].push_back(r);
      }
      os << j.dump(2) << "\n";
      break;
    }
    case Format::dot: {
      auto P = build_poset(Z);
      os << "digraph classify {\n";
      for (std::size_t i = 0; i < P.strata.size(); ++i) {
        int count = 0;
        for (std::size_t s = 0; s < C.strata.size(); ++s)
          if (C.strata[s] == P.strata[i].rep.w) count = C.class_sizes[s];
        os << "  n" << i << " [label=\"" << P.strata[i].word << " | " << count << "\"];\n";
      }
      for (auto& [a, b] : P.hasse) os << "  n" << a << " -> n" << b << ";\n";
      os << "}\n";
      break;
    }
  }
  return os.str();
}

std::string run_aut(const Options& o) {
  Format f = parse_format(o.format);
  if (f == Format::dot) throw ValidationError("aut supports tsv and json");
  auto t = read_type(o);
  auto Z = build_zip_datum(read_family(o, t), t);
  auto P = build_poset(Z);
  bool gl = Z.family.kind == GroupKind::GL;
  FieldPtr F = field_of_order(o.q.value_or(2));
  std::ostringstream os;
  ojson j;
  if (f == Format::tsv)
    os << "# word\tomega\taut_dim\taut_lie_dim\taut_smooth\tv_min\tK_w" << (gl ? "\tlie_dim_measured" : "") << "\n";
  else {
    j["datum"] = datum_json(Z);
    j["strata"] = ojson::array();
  }
  for (auto& s : P.strata) {
    std::optional<int> measured;
    if (gl) measured = stabilizer_lie_dim(t, stratum_representative(Z, s.rep.w, F));
    std::string vmin = word_string(reduced_word(Z.weyl, s.aut.v_min));
    if (f == Format::tsv) {
      os << word_string(s.rword) << "\t" << Z.weyl.omega.names[s.rep.omega] << "\t";
      if (s.aut.supported)
        os << s.aut.aut_dim << "\t" << s.aut.aut_lie_dim << "\t" << (s.aut.aut_smooth ? "yes" : "no");
      else
        os << "NA\tNA\tNA";
      os << "\t" << vmin << "\t" << subset_string(s.aut.K_w);
      if (measured) os << "\t" << *measured;
      os << "\n";
    } else {
      ojson r;
      r["word"] = word_string(s.rword);
      r["omega"] = Z.weyl.omega.names[s.rep.omega];
      if (s.aut.supported) {
        r["aut_dim"] = s.aut.aut_dim;
        r["aut_lie_dim"] = s.aut.aut_lie_dim;
        r["aut_smooth"] = s.aut.aut_smooth;
      } else {
        r["aut_dim"] = r["aut_lie_dim"] = r["aut_smooth"] = nullptr;
      }
      r["v_min"] = vmin;
      r["K_w"] = subset_string(s.aut.K_w);
      if (measured) r["lie_dim_measured"] = *measured;
      j["strata"].push_back(r);
    }
  }
  if (f == Format::json) os << j.dump(2) << "\n";
  return os.str();
}

// small-rank invariant suite; one line per check
int run_selftest(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      out << "FAIL " << name << ": " << e.what() << "\n";
      ++failures;
      return;
    }
    out << (ok ? "ok   " : "FAIL ") << name << "\n";
    failures += !ok;
  };
  check("GL strata counts n <= 5", [] {
    for (int n = 1; n <= 5; ++n)
      for (int d = 0; d <= n; ++d) {
        auto Z = build_zip_datum({GroupKind::GL, n, true}, make_type({{0, d}, {1, n - d}}));
        if (build_poset(Z).strata.size() != binomial(n, d)) return false;
      }
    return true;
  });
  check("CSp Siegel strata 2^g, g <= 3", [] {
    for (int g = 1; g <= 3; ++g) {
      auto Z = build_zip_datum({GroupKind::CSp, 2 * g, true}, make_type({{0, g}, {1, g}}, 1));
      if (build_poset(Z).strata.size() != (1u << g)) return false;
    }
    return true;
  });
  check("order on Theta-orbits, O(4)", [] {
    auto Z = build_zip_datum({GroupKind::O, 4, true}, make_type({{-1, 1}, {0, 2}, {1, 1}}));
    auto P = build_poset(Z);
    return check_partial_order(P.leq).total() == 0 && P.strata.size() == 6;
  });
  check("Lie algebra dimension on GL(3) representatives", [] {
    auto t = make_type({{0, 1}, {1, 2}});
    auto Z = build_zip_datum({GroupKind::GL, 3, true}, t);
    for (auto& s : build_poset(Z).strata)
      if (stabilizer_lie_dim(t, stratum_representative(Z, s.rep.w, make_field(2))) != s.aut.aut_lie_dim)
        return false;
    return true;
  });
  check("brute-force classification GL(2), q = 2", [] {
    auto C = classify_bruteforce(make_type({{0, 1}, {1, 1}}), 2, 4);
    return C.nonempty() == 2 && C.rows.size() == 6;
  });
  check("BT1 counts n <= 8", [] {
    for (int n = 0; n <= 8; ++n)
      for (int d = 0; d <= n; ++d)
        if (classify_bt1(n, d).size() != binomial(n, d)) return false;
    return true;
  });
  check("standard classical objects", [] {
    auto F3 = make_field(3), F4 = make_field(2, 2);
    for (auto k : {GroupKind::GL, GroupKind::SL, GroupKind::Sp, GroupKind::O})
      validate_classical(standard_classical(k, make_type({{-1, 1}, {1, 1}}), F3, 3));
    validate_classical(standard_classical(GroupKind::CSp, make_type({{0, 1}, {1, 1}}, 1), F3, 3));
    validate_classical(standard_classical(GroupKind::CO, make_type({{0, 1}, {1, 1}}, 1), F3, 3));
    validate_classical(standard_classical(GroupKind::U, make_type({{0, 1}, {1, 1}}), F4, 2));
    validate_classical(standard_classical(GroupKind::CU, make_type({{0, 1}, {1, 1}}, 1), F4, 2));
    return true;
  });
  check("Tate zip laws", [] {
    auto F = make_field(2);
    return isomorphic(tensor(make_tate(F, 2, 1), make_tate(F, 2, 2)), make_tate(F, 2, 3)) &&
           isomorphic(dual(make_tate(F, 2, 2)), make_tate(F, 2, -2));
  });
  out << (failures ? "selftest failed: " + std::to_string(failures) + "\n" : std::string("selftest passed\n"));
  return failures ? 1 : 0;
}

void add_common(CLI::App* sub, Options& o, bool with_type) {
  sub->add_option("--format", o.format, "dot | json | tsv")->check(CLI::IsMember({"dot", "json", "tsv"}));
  sub->add_option("-o,--output", o.output, "write to this file instead of standard output");
  if (!with_type) return;
  sub->add_option("--family", o.family, "GL SL Sp CSp O CO U CU");
  sub->add_option("--type", o.type, "i:n_i,... or n_0,n_1,...");
  sub->add_option("vector", o.type_pos, "type vector, as for --type");
  sub->add_option("--d", o.d, "multiplier weight for CSp, CO, CU");
  sub->add_option("--q", o.q, "size of the base field");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strata, automorphisms and brute-force classification of G-zips"};
  app.require_subcommand(1);
  Options o;
  auto* strata = app.add_subcommand("strata", "strata poset of a zip datum");
  add_common(strata, o, true);
  auto* bt1 = app.add_subcommand("bt1", "BT1 classification table");
  add_common(bt1, o, false);
  bt1->add_option("--height", o.height, "height n")->required();
  bt1->add_option("--dim", o.dim, "dimension d")->required();
  auto* classify = app.add_subcommand("classify", "brute-force classification of GL zips over F_q");
  add_common(classify, o, true);
  classify->add_option("--ext-bound", o.ext_bound, "largest extension degree tried");
  auto* aut = app.add_subcommand("aut", "automorphism invariants per stratum");
  add_common(aut, o, true);
  auto* selftest = app.add_subcommand("selftest", "small-rank invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (selftest->parsed()) return run_selftest(std::cout);
    std::string text;
    if (strata->parsed()) text = run_strata(o);
    if (bt1->parsed()) text = run_bt1(o);
    if (classify->parsed()) text = run_classify(o);
    if (aut->parsed()) text = run_aut(o);
    if (o.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) throw ValidationError("cannot write " + o.output);
      f << text;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

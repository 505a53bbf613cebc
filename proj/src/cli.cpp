#include "arrcoh/cli.hpp"

#include "arrcoh/engine.hpp"
#include "arrcoh/salvetti.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace arrcoh {

using nlohmann::json;

namespace {

Rational rational_field(const json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw DocumentError(path + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw DocumentError(path + ": expected a rational string such as \"3/4\"");
}

// Line and column of a byte offset, both 1-based.
std::pair<std::size_t, std::size_t> locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

ArrangementDocument parse_document(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte points one past the offending character.
    const auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw DocumentError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                        ": malformed JSON");
  }
  auto fail = [&](const std::string& path, const std::string& msg) -> DocumentError {
    return DocumentError(source + ": " + path + ": " + msg);
  };

  if (!doc.is_object()) throw fail("$", "top level must be an object");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_unsigned()) {
    throw fail("dimension", "required non-negative integer");
  }
  const auto n = doc["dimension"].get<std::size_t>();
  if (!doc.contains("hyperplanes") || !doc["hyperplanes"].is_array()) {
    throw fail("hyperplanes", "required array");
  }
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < doc["hyperplanes"].size(); ++i) {
    const json& h = doc["hyperplanes"][i];
    const std::string at = "hyperplanes[" + std::to_string(i) + "]";
    if (!h.is_object() || !h.contains("normal") || !h["normal"].is_array()) {
      throw fail(at, "expected {\"normal\": [...], \"offset\": ...}");
    }
    if (h["normal"].size() != n) {
      throw fail(at + ".normal", "length " + std::to_string(h["normal"].size()) +
                                     " does not match dimension " + std::to_string(n));
    }
    Hyperplane hp;
    for (std::size_t c = 0; c < n; ++c) {
      hp.normal.push_back(rational_field(h["normal"][c], source + ": " + at + ".normal[" +
                                                             std::to_string(c) + "]"));
    }
    hp.offset = h.contains("offset") ? rational_field(h["offset"], source + ": " + at + ".offset")
                                     : Rational(0);
    hs.push_back(std::move(hp));
  }

  std::optional<std::vector<int>> signs;
  if (doc.contains("local_system") && !doc["local_system"].is_null()) {
    const json& ls = doc["local_system"];
    if (!ls.is_array()) throw fail("local_system", "expected an array of +1/-1");
    if (ls.size() != hs.size()) {
      throw fail("local_system", "has " + std::to_string(ls.size()) + " entries for " +
                                     std::to_string(hs.size()) + " hyperplanes");
    }
    signs.emplace();
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (!ls[i].is_number_integer() || (ls[i] != 1 && ls[i] != -1)) {
        throw fail("local_system[" + std::to_string(i) + "]", "must be 1 or -1");
      }
      signs->push_back(ls[i].get<int>());
    }
  }

  try {
    return ArrangementDocument{Arrangement(n, std::move(hs)), std::move(signs)};
  } catch (const ArrangementError& e) {
    throw fail("hyperplanes", e.what());
  }
}

ArrangementDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path);
}

namespace {

long long to_ll(const Integer& z) { return z.convert_to<long long>(); }

json group_json(const AbelianGroup& g) {
  json t = json::array();
  for (const auto& d : g.torsion) t.push_back(to_ll(d));
  return json{{"rank", g.rank}, {"torsion", t}};
}

json integers_json(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(to_ll(z));
  return a;
}

json vector_json(const RationalVector& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

std::string index_set(const std::vector<std::size_t>& s, std::size_t shift) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(s[k] + shift);
  }
  return out + "}";
}

json edge_json(const DenseEdgeReport& r, bool with_t) {
  json e{{"hyperplanes", r.edge.hyperplanes},
         {"projective_dimension", r.edge.subspace.dimension() - 1},
         {"at_infinity", r.at_infinity}};
  if (with_t) e["t"] = r.t_value;
  return e;
}

std::string edge_text(const DenseEdgeReport& r) {
  return index_set(r.edge.hyperplanes, 0) +
         "  projective dim " + std::to_string(r.edge.subspace.dimension() - 1);
}

std::string groups_text(const std::vector<AbelianGroup>& groups) {
  std::string out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i > 0) out += ", ";
    out += "H^" + std::to_string(i) + " = " + to_string(groups[i]);
  }
  return out;
}

json profile_json(const CohomologyProfile& p, bool asserted) {
  json g = json::array();
  for (const auto& grp : p.groups) g.push_back(group_json(grp));
  return json{{"method", std::string(to_string(p.method))},
              {"cdo", p.cdo_verdict},
              {"asserted", asserted},
              {"groups", g}};
}

struct Common {
  std::string input;
  std::string format = "text";
  std::string signs;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("input", c.input, "arrangement document (JSON)")->required();
  sub->add_option("--format", c.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
}

void add_signs(CLI::App* sub, Common& c) {
  sub->add_option("--signs", c.signs,
                  "comma separated +1/-1 per hyperplane, overriding local_system "
                  "(write --signs=-1,1 when the list starts with a minus)");
}

SignLocalSystem pick_signs(const ArrangementDocument& doc, const Common& c) {
  std::vector<int> s;
  if (!c.signs.empty()) {
    std::stringstream ss(c.signs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "1" || item == "+1") {
        s.push_back(1);
      } else if (item == "-1") {
        s.push_back(-1);
      } else {
        throw DocumentError("--signs: entry '" + item + "' is not +1 or -1");
      }
    }
  } else if (doc.local_system) {
    s = *doc.local_system;
  } else {
    throw DocumentError(c.input + ": no local_system in the document and no --signs given");
  }
  if (s.size() != doc.arrangement.size()) {
    throw DocumentError("local system has " + std::to_string(s.size()) + " signs for " +
                        std::to_string(doc.arrangement.size()) + " hyperplanes");
  }
  return SignLocalSystem(std::move(s));
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int cmd_poset(const Common& c, std::ostream& out) {
  const auto doc = load_document(c.input);
  const IntersectionPoset poset(doc.arrangement);
  if (c.format == "json") {
    json flats = json::array();
    for (std::size_t k = 0; k < poset.flats().size(); ++k) {
      const auto& f = poset.flats()[k];
      std::vector<std::size_t> one_based;
      for (auto i : f.hyperplanes) one_based.push_back(i + 1);
      json dirs = json::array();
      for (const auto& v : f.subspace.directions) dirs.push_back(vector_json(v));
      flats.push_back({{"hyperplanes", one_based},
                       {"codim", f.codim},
                       {"mobius", to_ll(poset.mobius()[k])},
                       {"point", vector_json(f.subspace.base)},
                       {"directions", dirs}});
    }
    emit(out, {{"command", "poset"}, {"dimension", doc.arrangement.dimension()}, {"flats", flats}});
    return exit_code::ok;
  }
  out << "flats: " << poset.flats().size() << "\n";
  out << std::left << std::setw(7) << "codim" << std::setw(8) << "mobius" << "hyperplanes\n";
  for (std::size_t k = 0; k < poset.flats().size(); ++k) {
    const auto& f = poset.flats()[k];
    out << std::left << std::setw(7) << f.codim << std::setw(8) << poset.mobius()[k].str()
        << index_set(f.hyperplanes, 1) << "\n";
  }
  return exit_code::ok;
}

int cmd_betti(const Common& c, std::ostream& out) {
  const auto doc = load_document(c.input);
  const auto b = betti_numbers(IntersectionPoset(doc.arrangement));
  const auto beta = beta_sequence(b);
  if (c.format == "json") {
    emit(out, {{"command", "betti"}, {"betti", integers_json(b)}, {"beta", integers_json(beta)}});
    return exit_code::ok;
  }
  auto list = [](const std::vector<Integer>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
    return s + "]";
  };
  out << "b    = " << list(b) << "\n";
  out << "beta = " << list(beta) << "\n";
  return exit_code::ok;
}

int cmd_dense_edges(const Common& c, bool all, std::ostream& out) {
  const auto doc = load_document(c.input);
  std::optional<SignLocalSystem> ls;
  if (!c.signs.empty() || doc.local_system) ls = pick_signs(doc, c);
  const auto edges = dense_edges(doc.arrangement, !all, ls ? &*ls : nullptr);
  if (c.format == "json") {
    json list = json::array();
    for (const auto& e : edges) list.push_back(edge_json(e, ls.has_value()));
    emit(out, {{"command", "dense-edges"}, {"all", all}, {"edges", list}});
    return exit_code::ok;
  }
  out << "dense edges (cone indices, 0 = hyperplane at infinity): " << edges.size() << "\n";
  for (const auto& e : edges) {
    out << "  " << edge_text(e) << (e.at_infinity ? "  at infinity" : "");
    if (ls) out << "  t = " << e.t_value;
    out << "\n";
  }
  return exit_code::ok;
}

int cmd_cdo_check(const Common& c, std::ostream& out) {
  const auto doc = load_document(c.input);
  const auto ls = pick_signs(doc, c);
  const auto v = cdo_check(doc.arrangement, ls);
  if (c.format == "json") {
    json edges = json::array(), bad = json::array();
    for (const auto& e : v.edges) edges.push_back(edge_json(e, true));
    for (const auto& e : v.violations) bad.push_back(edge_json(e, true));
    emit(out, {{"command", "cdo-check"},
               {"satisfied", v.satisfied},
               {"t0", ls.t0()},
               {"dense_edges", edges},
               {"violations", bad}});
  } else {
    out << "CDO condition: " << (v.satisfied ? "satisfied" : "violated") << "\n";
    out << "t0 = " << ls.t0() << "\n";
    for (const auto& e : v.violations) out << "  violation: " << edge_text(e) << "  t = 1\n";
  }
  return v.satisfied ? exit_code::ok : exit_code::cdo_failure;
}

void print_violations(std::ostream& out, const std::string& format,
                      const std::vector<DenseEdgeReport>& violations) {
  if (format == "json") {
    json bad = json::array();
    for (const auto& e : violations) bad.push_back(edge_json(e, true));
    emit(out, {{"command", "cohomology"}, {"error", "cdo-violation"}, {"violations", bad}});
    return;
  }
  out << "CDO condition violated; the formula is not asserted (use --force to print it)\n";
  for (const auto& e : violations) out << "  violation: " << edge_text(e) << "  t = 1\n";
}

int cmd_cohomology(const Common& c, const std::string& method, bool force,
                   std::size_t max_cells, std::ostream& out) {
  const auto doc = load_document(c.input);
  const auto ls = pick_signs(doc, c);
  const auto& arr = doc.arrangement;

  std::vector<std::pair<CohomologyProfile, bool>> profiles;  // (profile, asserted)
  if (method == "theorem" || method == "both") {
    try {
      profiles.emplace_back(theorem_cohomology(arr, ls, force), true);
      profiles.back().second = profiles.back().first.cdo_verdict;
    } catch (const CdoViolation& e) {
      print_violations(out, c.format, e.violations());
      return exit_code::cdo_failure;
    }
  }
  if (method == "lemma") profiles.emplace_back(lemma_central_cohomology(arr, ls), true);
  if (method == "oracle" || method == "both") {
    profiles.emplace_back(oracle_cohomology(arr, ls, OracleOptions{max_cells}), true);
  }

  int code = exit_code::ok;
  std::optional<bool> agree;
  if (method == "both") {
    agree = profiles[0].first.groups == profiles[1].first.groups;
    if (!*agree && profiles[0].second) code = exit_code::mismatch;
  }

  if (c.format == "json") {
    json list = json::array();
    for (const auto& [p, asserted] : profiles) list.push_back(profile_json(p, asserted));
    json j{{"command", "cohomology"}, {"method", method}, {"profiles", list}};
    if (agree) j["agree"] = *agree;
    emit(out, j);
    return code;
  }
  for (const auto& [p, asserted] : profiles) {
    out << to_string(p.method) << ": " << groups_text(p.groups);
    if (!asserted) out << "  [NOT ASSERTED BY THEOREM]";
    out << "\n";
  }
  if (agree) out << "agreement: " << (*agree ? "yes" : "NO") << "\n";
  return code;
}

int cmd_fuzz(const Common& c, std::size_t count, std::uint64_t seed, std::size_t max_cells,
             std::ostream& out) {
  const auto doc = load_document(c.input);
  const auto& arr = doc.arrangement;
  if (arr.size() > 64) throw DocumentError("fuzz supports at most 64 hyperplanes");
  const auto betti = betti_numbers(IntersectionPoset(arr));
  long long chi = 0;
  for (std::size_t i = 0; i < betti.size(); ++i) chi += (i % 2 ? -1 : 1) * to_ll(betti[i]);

  auto faces = enumerate_faces(arr);
  std::size_t cells = 0;
  for (const auto& f : faces)
    if (f.is_chamber())
      for (const auto& g : faces) cells += face_le(g, f) ? 1 : 0;
  if (cells > max_cells) {
    throw OracleUnsupported("Salvetti complex would have " + std::to_string(cells) +
                            " cells, above the limit of " + std::to_string(max_cells));
  }
  const auto complex = build_salvetti(arr, std::move(faces));

  std::mt19937_64 rng(seed);
  std::size_t cdo_pass = 0, agreements = 0, mismatches = 0, invariant_failures = 0;
  json samples = json::array();
  std::ostringstream lines;
  for (std::size_t s = 0; s < count; ++s) {
    const std::uint64_t bits = rng();
    const auto ls = SignLocalSystem::from_mask(arr.size(), bits);
    const auto tc = twisted_coboundaries(complex, ls);
    const auto oracle = cochain_cohomology(tc, arr.dimension());
    const auto verdict = cdo_check(arr, ls);
    std::string status;
    if (verdict.satisfied) {
      ++cdo_pass;
      const auto theorem = formula_groups(betti);
      if (theorem == oracle) {
        ++agreements;
        status = "agree";
      } else {
        ++mismatches;
        status = "mismatch";
      }
    } else {
      bool ok = rational_euler_characteristic(tc) == chi;
      const auto dims = mod2_cohomology_dims(tc, arr.dimension());
      for (std::size_t i = 0; i < dims.size(); ++i) ok = ok && to_ll(betti[i]) == static_cast<long long>(dims[i]);
      if (ok) {
        status = "invariants-ok";
      } else {
        ++invariant_failures;
        status = "invariant-failure";
      }
    }
    json groups = json::array();
    for (const auto& g : oracle) groups.push_back(group_json(g));
    samples.push_back({{"signs", ls.signs()}, {"cdo", verdict.satisfied},
                       {"status", status}, {"oracle", groups}});
    lines << "  ";
    for (std::size_t i = 0; i < ls.size(); ++i) lines << (ls.signs()[i] > 0 ? '+' : '-');
    lines << "  " << std::left << std::setw(18) << status << groups_text(oracle) << "\n";
  }

  if (c.format == "json") {
    emit(out, {{"command", "fuzz"},
               {"count", count},
               {"seed", seed},
               {"cdo_pass", cdo_pass},
               {"agreements", agreements},
               {"mismatches", mismatches},
               {"invariant_failures", invariant_failures},
               {"samples", samples}});
  } else {
    out << "samples: " << count << "  seed: " << seed << "\n";
    out << "cdo pass: " << cdo_pass << "  agree: " << agreements << "  mismatch: " << mismatches
        << "  invariant failures: " << invariant_failures << "\n";
    out << lines.str();
  }
  return (mismatches > 0 || invariant_failures > 0) ? exit_code::mismatch : exit_code::ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral cohomology of rank-one sign local systems on hyperplane arrangement "
               "complements"};
  app.require_subcommand(1);

  Common common;
  bool all = false;
  bool force = false;
  std::string method = "theorem";
  std::size_t count = 100;
  std::uint64_t seed = 1;
  std::size_t max_cells = OracleOptions{}.max_cells;

  auto* poset = app.add_subcommand("poset", "intersection poset with Mobius values");
  add_common(poset, common);
  auto* betti = app.add_subcommand("betti", "Betti numbers b_i and partial sums beta_i");
  add_common(betti, common);
  auto* dense = app.add_subcommand("dense-edges", "dense edges of the projective closure");
  add_common(dense, common);
  add_signs(dense, common);
  dense->add_flag("--all", all, "include dense edges not contained in the hyperplane at infinity");
  auto* cdo = app.add_subcommand("cdo-check", "check the CDO condition (exit 2 on failure)");
  add_common(cdo, common);
  add_signs(cdo, common);
  auto* coh = app.add_subcommand("cohomology", "H^i(M, L) by formula, central lemma or oracle");
  add_common(coh, common);
  add_signs(coh, common);
  coh->add_option("--method", method, "theorem, lemma, oracle or both")
      ->check(CLI::IsMember({"theorem", "lemma", "oracle", "both"}));
  coh->add_flag("--force", force, "evaluate the formula even when the CDO condition fails");
  coh->add_option("--max-cells", max_cells, "oracle size limit");
  auto* fuzz = app.add_subcommand("fuzz", "random sign systems, formula vs oracle");
  add_common(fuzz, common);
  fuzz->add_option("--count", count, "number of sign systems");
  fuzz->add_option("--seed", seed, "random seed");
  fuzz->add_option("--max-cells", max_cells, "oracle size limit");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::invalid_input;
  }

  try {
    if (poset->parsed()) return cmd_poset(common, out);
    if (betti->parsed()) return cmd_betti(common, out);
    if (dense->parsed()) return cmd_dense_edges(common, all, out);
    if (cdo->parsed()) return cmd_cdo_check(common, out);
    if (coh->parsed()) return cmd_cohomology(common, method, force, max_cells, out);
    if (fuzz->parsed()) return cmd_fuzz(common, count, seed, max_cells, out);
  } catch (const DocumentError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::invalid_input;
  } catch (const ArrangementError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::invalid_input;
  } catch (const OracleUnsupported& e) {
    err << "oracle unavailable: " << e.what() << "\n";
    return exit_code::oracle_unsupported;
  }
  return exit_code::invalid_input;
}

}  // namespace arrcoh

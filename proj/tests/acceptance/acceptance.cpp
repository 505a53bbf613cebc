// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include "arrcoh/cli.hpp"
#include "arrcoh/engine.hpp"
#include "arrcoh/salvetti.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace arrcoh;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct CorpusEntry {
  std::string name;
  std::string path;
  Arrangement arrangement;
};

std::vector<CorpusEntry> load_corpus() {
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::directory_iterator(ARRCOH_CORPUS_DIR)) {
    if (e.path().extension() == ".json") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<CorpusEntry> out;
  for (const auto& p : paths) {
    out.push_back({p.stem().string(), p.string(), load_document(p.string()).arrangement});
  }
  return out;
}

std::string signs_text(const SignLocalSystem& ls) {
  std::string s;
  for (int t : ls.signs()) s += t > 0 ? '+' : '-';
  return s;
}

std::string signs_flag(const SignLocalSystem& ls) {
  std::string s = "--signs=";
  for (std::size_t i = 0; i < ls.size(); ++i) s += (i ? "," : "") + std::to_string(ls.signs()[i]);
  return s;
}

std::vector<long long> betti_ll(const Arrangement& arr) {
  std::vector<long long> b;
  for (const auto& z : betti_numbers(IntersectionPoset(arr))) b.push_back(z.convert_to<long long>());
  return b;
}

long long alternating(const std::vector<long long>& b) {
  long long chi = 0;
  for (std::size_t i = 0; i < b.size(); ++i) chi += (i % 2 ? -1 : 1) * b[i];
  return chi;
}

json run_json(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return json::parse(out.str());
}

// 1. Central pencils of d = 2..6 lines, every sign system with product -1:
//    both pipelines give 0, Z/2, (Z/2)^{d-1}. Exact; under 5 s per case.
Outcome pencil_reproduction(const std::vector<CorpusEntry>&) {
  Outcome o;
  std::size_t cases = 0;
  for (std::size_t d = 2; d <= 6; ++d) {
    const std::string path = std::string(ARRCOH_CORPUS_DIR) + "/concurrent_" + std::to_string(d) + ".json";
    for (unsigned mask = 0; mask < (1U << d); ++mask) {
      const auto ls = SignLocalSystem::from_mask(d, mask);
      if (ls.t0() != -1) continue;
      const auto start = Clock::now();
      int code = 0;
      const auto j = run_json({"cohomology", "--method", "both", "--format", "json", signs_flag(ls), path}, code);
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      ++cases;
      const std::string tag = "d=" + std::to_string(d) + " " + signs_text(ls);
      if (code != exit_code::ok) o.fail(tag + ": exit " + std::to_string(code));
      if (secs >= 5.0) o.fail(tag + ": took " + std::to_string(secs) + " s");
      const json expected = json::array({json{{"rank", 0}, {"torsion", json::array()}},
                                         json{{"rank", 0}, {"torsion", {2}}},
                                         json{{"rank", 0}, {"torsion", std::vector<int>(d - 1, 2)}}});
      if (j.value("agree", false) != true) o.fail(tag + ": pipelines disagree");
      for (const auto& p : j["profiles"]) {
        if (p["groups"] != expected) o.fail(tag + ": " + p["method"].get<std::string>() + " wrong groups");
      }
    }
  }
  if (o.pass) o.detail = std::to_string(cases) + " cases";
  return o;
}

// 2. Corpus (>= 10 arrangements, n <= 3, d <= 7), every CDO sign system:
//    formula and oracle agree exactly. Under 120 s total.
Outcome oracle_equivalence(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  const auto start = Clock::now();
  if (corpus.size() < 10) o.fail("corpus has only " + std::to_string(corpus.size()) + " members");
  std::size_t checked = 0;
  for (const auto& e : corpus) {
    const auto& arr = e.arrangement;
    if (arr.dimension() > 3 || arr.size() > 7) o.fail(e.name + ": outside n <= 3, d <= 7");
    const auto complex = build_salvetti(arr);
    for (unsigned mask = 0; mask < (1U << arr.size()); ++mask) {
      const auto ls = SignLocalSystem::from_mask(arr.size(), mask);
      if (!cdo_check(arr, ls).satisfied) continue;
      ++checked;
      const auto theorem = theorem_cohomology(arr, ls);
      const auto oracle = oracle_cohomology(complex, arr, ls);
      if (theorem.groups != oracle.groups) o.fail(e.name + " " + signs_text(ls) + ": mismatch");
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= 120.0) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) {
    std::ostringstream s;
    s << checked << " CDO sign systems over " << corpus.size() << " arrangements in " << secs << " s";
    o.detail = s.str();
  }
  return o;
}

// 3. All-(+1) oracle: free groups of rank b_i.
Outcome untwisted_sanity(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  for (const auto& e : corpus) {
    const auto b = betti_ll(e.arrangement);
    const auto p = oracle_cohomology(e.arrangement, SignLocalSystem::trivial(e.arrangement.size()));
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!p.groups[i].torsion.empty()) o.fail(e.name + ": torsion in H^" + std::to_string(i));
      if (static_cast<long long>(p.groups[i].rank) != b[i]) o.fail(e.name + ": rank H^" + std::to_string(i));
    }
  }
  if (o.pass) o.detail = std::to_string(corpus.size()) + " arrangements";
  return o;
}

// 4. delta^{k+1} delta^k = 0 for every sign system, corpus members with d <= 6.
Outcome complex_validity(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  std::size_t complexes = 0;
  for (const auto& e : corpus) {
    if (e.arrangement.size() > 6) continue;
    const auto sc = build_salvetti(e.arrangement);
    for (unsigned mask = 0; mask < (1U << e.arrangement.size()); ++mask) {
      const auto ls = SignLocalSystem::from_mask(e.arrangement.size(), mask);
      ++complexes;
      if (!is_cochain_complex(twisted_coboundaries(sc, ls))) o.fail(e.name + " " + signs_text(ls));
    }
  }
  if (o.pass) o.detail = std::to_string(complexes) + " twisted complexes";
  return o;
}

// 5. Every sign system: mod-2 cohomology dimensions equal b_i and the
//    rational Euler characteristic equals sum (-1)^i b_i.
Outcome universal_coefficients(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  std::size_t complexes = 0;
  for (const auto& e : corpus) {
    const auto& arr = e.arrangement;
    const auto b = betti_ll(arr);
    const long long chi = alternating(b);
    const auto sc = build_salvetti(arr);
    for (unsigned mask = 0; mask < (1U << arr.size()); ++mask) {
      const auto ls = SignLocalSystem::from_mask(arr.size(), mask);
      const auto tc = twisted_coboundaries(sc, ls);
      ++complexes;
      const auto dims = mod2_cohomology_dims(tc, arr.dimension());
      for (std::size_t i = 0; i < dims.size(); ++i) {
        if (static_cast<long long>(dims[i]) != b[i]) {
          o.fail(e.name + " " + signs_text(ls) + ": mod-2 H^" + std::to_string(i));
        }
      }
      if (rational_euler_characteristic(tc) != chi) o.fail(e.name + " " + signs_text(ls) + ": Euler");
    }
  }
  if (o.pass) o.detail = std::to_string(complexes) + " twisted complexes";
  return o;
}

// 6. `cohomology --method theorem` exits 2 with violations on the trivial
//    system and on the parallel pair for any signs; the latter names the
//    pencil point at infinity.
Outcome gating(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& e : corpus) {
    int code = 0;
    const auto j = run_json({"cohomology", "--method", "theorem", "--format", "json",
                             signs_flag(SignLocalSystem::trivial(e.arrangement.size())), e.path},
                            code);
    ++runs;
    if (code != exit_code::cdo_failure) o.fail(e.name + " trivial: exit " + std::to_string(code));
    if (!j.contains("violations") || j["violations"].empty()) o.fail(e.name + " trivial: no violations");
  }
  const std::string pair = std::string(ARRCOH_CORPUS_DIR) + "/parallel_pair.json";
  for (unsigned mask = 0; mask < 4; ++mask) {
    int code = 0;
    const auto ls = SignLocalSystem::from_mask(2, mask);
    const auto j = run_json({"cohomology", "--method", "theorem", "--format", "json", signs_flag(ls), pair}, code);
    ++runs;
    if (code != exit_code::cdo_failure) o.fail("parallel pair " + signs_text(ls) + ": exit " + std::to_string(code));
    bool pencil = false;
    for (const auto& v : j.value("violations", json::array())) {
      pencil = pencil || v["hyperplanes"] == json::array({0, 1, 2});
    }
    if (!pencil) o.fail("parallel pair " + signs_text(ls) + ": pencil point not reported");
  }
  if (o.pass) o.detail = std::to_string(runs) + " gated runs";
  return o;
}

// 7. Central arrangements, product -1 and CDO: lemma and formula agree.
Outcome lemma_consistency(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& e : corpus) {
    const auto& arr = e.arrangement;
    if (!arr.is_central() || arr.size() == 0) continue;
    for (unsigned mask = 0; mask < (1U << arr.size()); ++mask) {
      const auto ls = SignLocalSystem::from_mask(arr.size(), mask);
      if (ls.t0() != -1 || !cdo_check(arr, ls).satisfied) continue;
      ++checked;
      if (lemma_central_cohomology(arr, ls).groups != theorem_cohomology(arr, ls).groups) {
        o.fail(e.name + " " + signs_text(ls));
      }
    }
  }
  if (checked == 0) o.fail("no central CDO cases in the corpus");
  if (o.pass) o.detail = std::to_string(checked) + " central sign systems";
  return o;
}

}  // namespace

int main() {
  const auto corpus = load_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome(const std::vector<CorpusEntry>&)>>> criteria = {
      {"1 concurrent pencil reproduction", pencil_reproduction},
      {"2 oracle equivalence", oracle_equivalence},
      {"3 untwisted sanity", untwisted_sanity},
      {"4 complex validity", complex_validity},
      {"5 universal coefficients", universal_coefficients},
      {"6 gating behavior", gating},
      {"7 lemma consistency", lemma_consistency},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check(corpus);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " - " << o.detail << std::endl;
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

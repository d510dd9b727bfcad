// Acceptance run: one PASS/FAIL line per criterion, each with its time
// budget. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "mindex/catalog.hpp"
#include "mindex/kappa.hpp"
#include "mindex/maximal.hpp"
#include "mindex/oracle.hpp"
#include "mindex/tree.hpp"
#include "tree_oracle.hpp"

using namespace mindex;
using nlohmann::json;

namespace {

  std::string const data     = MINDEX_TEST_DATA;
  std::string const fixtures = MINDEX_FIXTURES;

  // What a criterion found: pass flag plus a short account.
  struct Finding {
    bool        ok = true;
    std::string detail;

    void fail(std::string const& why) {
      if (ok) {
        detail = why;
      }
      ok = false;
    }
  };

  int failures = 0;

  void criterion(int number, std::string const& title, double budget_s,
                 std::function<Finding()> const& body) {
    auto const t0 = std::chrono::steady_clock::now();
    Finding    f;
    try {
      f = body();
    } catch (std::exception const& e) {
      f.ok     = false;
      f.detail = std::string("exception: ") + e.what();
    }
    double const secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
      f.fail("over budget");
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, budget_s);
    std::cout << (f.ok ? "PASS" : "FAIL") << "  " << number << ". " << title << "  ["
              << timing << "]  " << f.detail << std::endl;
    failures += f.ok ? 0 : 1;
  }

  struct Entry {
    std::string name;
    CatalogEntry e;
  };

  std::vector<Entry> corpus() {
    std::vector<Entry> out;
    for (auto const& n : standard_corpus()) {
      out.push_back({n, make_catalog(n)});
    }
    return out;
  }

  SubgroupSet from_elements(std::size_t m, std::vector<Element> const& v) {
    Bitset b(m);
    for (auto x : v) {
      b.set(x);
    }
    return SubgroupSet(std::move(b));
  }

  // Greedy: keep adding the element of h that enlarges the closure most.
  // Succeeds iff it reaches h within `limit` generators.
  bool generated_within(CayleyGroup const& g, SubgroupSet const& h, std::size_t limit) {
    std::vector<Element> gens;
    SubgroupSet          cur = SubgroupSet::trivial(g.size());
    while (cur.size() < h.size()) {
      if (gens.size() == limit) {
        return false;
      }
      Element     best      = 0;
      std::size_t best_size = 0;
      for (Element x : h.elements()) {
        if (cur.contains(x)) {
          continue;
        }
        auto trial = gens;
        trial.push_back(x);
        auto s = generated_subgroup(g, trial).size();
        if (s > best_size) {
          best_size = s;
          best      = x;
        }
      }
      gens.push_back(best);
      cur = generated_subgroup(g, gens);
    }
    return true;
  }

  struct Run {
    int         code;
    std::string out;
  };

  Run shell(std::string const& args) {
    std::string const cmd = std::string(MINDEX_CLI) + " " + args + " 2>&1";
    FILE*             p   = popen(cmd.c_str(), "r");
    if (!p) {
      return {-1, ""};
    }
    Run  r{0, ""};
    char buf[1 << 14];
    while (auto n = std::fread(buf, 1, sizeof buf, p)) {
      r.out.append(buf, n);
    }
    int status = pclose(p);
    r.code     = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

}  // namespace

int main() {
  auto const groups = corpus();

  criterion(1, "simple iff brute kappa = brute mu, corpus of order <= 400", 60, [&] {
    Finding f;
    int     simple = 0;
    for (auto const& [name, e] : groups) {
      auto const& g   = *e.cayley;
      auto        lat = oracle::subgroup_lattice(g);
      bool        eq  = oracle::brute_kappa(lat) == oracle::brute_mu(g, lat);
      bool        s   = is_simple_cayley(g);
      simple += s;
      if (eq != s || s != oracle::brute_is_simple(g, lat)) {
        f.fail(name + " breaks the equivalence");
      }
    }
    if (f.ok) {
      f.detail = std::to_string(groups.size()) + " groups, " + std::to_string(simple)
                 + " simple";
    }
    return f;
  });

  criterion(2, "kappa_perm and kappa_cayley equal brute kappa; pinned values", 30, [&] {
    Finding f;
    for (auto const& [name, e] : groups) {
      auto const brute = oracle::brute_kappa(*e.cayley);
      auto const kp    = kappa_perm(e.perm);
      auto const kc    = kappa_cayley(*e.cayley);
      if (kp.kappa != brute || kc.kappa != brute || !kp.complete || !kc.complete) {
        f.fail(name + ": kappa disagrees with the lattice");
      }
    }
    std::ifstream fx(fixtures + "/catalog_facts.json");
    auto const    facts = json::parse(fx)["facts"];
    std::map<std::string, unsigned long> const pinned{
        {"symmetric:4", 2}, {"alternating:5", 5}, {"sl2_5", 5}, {"quaternion8", 2},
        {"cyclic:15", 3}};
    for (auto const& [name, k] : pinned) {
      auto e = make_catalog(name);
      if (facts.at(name).at("kappa") != k || kappa_perm(e.perm).kappa != k) {
        f.fail(name + ": pinned value " + std::to_string(k) + " not reproduced");
      }
    }
    if (f.ok) {
      f.detail = std::to_string(groups.size()) + " groups, 5 pinned values";
    }
    return f;
  });

  criterion(3, "minimal-index subgroups equal the lattice slice, order <= 200", 120, [&] {
    Finding f;
    int     n = 0;
    for (auto const& [name, e] : groups) {
      auto const& g = *e.cayley;
      if (g.size() > 200) {
        continue;
      }
      ++n;
      auto const k   = kappa_cayley(g).kappa;
      auto       lat = oracle::subgroup_lattice(g);
      std::vector<std::vector<Element>> got;
      for (auto const& h : minimal_index_subgroups(g)) {
        got.push_back(h.elements());
      }
      auto want = oracle::index_slice(lat, k);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      if (got != want) {
        f.fail(name + ": slice mismatch");
      }
    }
    std::map<std::string, std::size_t> const pinned{
        {"symmetric:4", 1}, {"klein4", 3}, {"alternating:5", 5}};
    for (auto const& [name, c] : pinned) {
      if (minimal_index_subgroups(*make_catalog(name).cayley).size() != c) {
        f.fail(name + ": expected " + std::to_string(c) + " subgroups");
      }
    }
    if (f.ok) {
      f.detail = std::to_string(n) + " groups; S_4 1, C_2xC_2 3, A_5 5";
    }
    return f;
  });

  criterion(4, "maximal subgroups of simple groups, all 4-generated", 300, [&] {
    Finding     f;
    std::string counts;
    for (char const* name : {"alternating:5", "psl2:7", "psl2_9", "psl2:11"}) {
      auto const  e   = make_catalog(name);
      auto const& g   = *e.cayley;
      auto const  got = all_maximal_subgroups_simple(g);
      auto        lat = oracle::subgroup_lattice(g, 700);
      std::vector<std::vector<Element>> a, b;
      for (auto const& m : got) {
        a.push_back(m.elements());
      }
      b = oracle::maximal_subgroups(lat);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) {
        f.fail(std::string(name) + ": differs from the lattice");
      }
      for (auto const& m : got) {
        if (!generated_within(g, m, 4)) {
          f.fail(std::string(name) + ": a maximal subgroup needs more than 4 generators");
        }
      }
      counts += std::string(counts.empty() ? "" : ", ") + name + " "
                + std::to_string(got.size());
    }
    if (f.ok && counts.rfind("alternating:5 21", 0) != 0) {
      f.fail("A_5 should have 21 maximal subgroups: " + counts);
    }
    if (f.ok) {
      f.detail = counts;
    }
    return f;
  });

  criterion(5, "Isaacs identity and inequality, 1000 random triples", 120, [&] {
    Finding         f;
    std::mt19937_64 rng(2024);
    std::vector<std::pair<CayleyGroup const*, oracle::Lattice>> pool;
    for (auto const& [name, e] : groups) {
      if (e.cayley->size() <= 200) {
        pool.emplace_back(&*e.cayley, oracle::subgroup_lattice(*e.cayley));
      }
    }
    int checked = 0;
    for (; checked < 1000; ++checked) {
      auto const& [gp, lat] = pool[rng() % pool.size()];
      auto const& g         = *gp;
      std::vector<oracle::Subgroup const*> normals;
      for (auto const& s : lat.subgroups) {
        if (oracle::is_normal_by_conjugates(g, s.members)) {
          normals.push_back(&s);
        }
      }
      auto const& n = *normals[rng() % normals.size()];
      auto const& u = lat.subgroups[rng() % lat.subgroups.size()];
      std::vector<oracle::Subgroup const*> below;
      for (auto const& s : lat.subgroups) {
        if (std::includes(u.elements.begin(), u.elements.end(), s.elements.begin(),
                          s.elements.end())) {
          below.push_back(&s);
        }
      }
      auto const& v = *below[rng() % below.size()];
      auto const  m = g.size();
      auto r = isaacs_index_inequality(g, from_elements(m, n.elements),
                                       from_elements(m, u.elements),
                                       from_elements(m, v.elements));
      if (!r.identity_holds || !r.inequality_holds) {
        f.fail("violated on a group of order " + std::to_string(m));
      }
    }
    if (f.ok) {
      f.detail = std::to_string(checked) + " triples over " + std::to_string(pool.size())
                 + " groups";
    }
    return f;
  });

  criterion(6, "tree criterion equals brute-force hom search, trees <= 8, |G| <= 24", 120,
            [&] {
              Finding                    f;
              std::vector<CayleyGroup const*> gs;
              std::vector<unsigned long> ks;
              for (auto const& [name, e] : groups) {
                if (e.cayley->size() <= 24) {
                  gs.push_back(&*e.cayley);
                  ks.push_back(oracle::brute_kappa(*e.cayley));
                }
              }
              std::size_t trees = 0, pairs = 0;
              for (std::size_t n = 1; n <= 8; ++n) {
                for (auto const& t : unlabeled_trees(n)) {
                  ++trees;
                  auto const aut = tree_oracle::automorphisms(t);
                  for (std::size_t i = 0; i < gs.size(); ++i, ++pairs) {
                    if (representable_on_tree(ks[i], t)
                        != tree_oracle::nontrivial_hom(*gs[i], aut)) {
                      f.fail("mismatch on tree " + ahu_canonize(t).root_code());
                    }
                  }
                }
              }
              if (trees != 48) {
                f.fail("expected 48 unlabeled trees on <= 8 vertices, got "
                       + std::to_string(trees));
              }
              if (f.ok) {
                f.detail = std::to_string(trees) + " trees x " + std::to_string(gs.size())
                           + " groups = " + std::to_string(pairs) + " pairs";
              }
              return f;
            });

  criterion(7, "kappa = mu(witness); G/core(H) simple for minimal-index H", 120, [&] {
    Finding f;
    int     results = 0;
    for (auto const& [name, e] : groups) {
      for (auto const& r : {kappa_perm(e.perm), kappa_cayley(*e.cayley)}) {
        ++results;
        if (r.kappa != mu_of(r.witness.type)) {
          f.fail(name + ": kappa differs from mu of the witness");
        }
      }
      auto const& g = *e.cayley;
      for (auto const& h : minimal_index_subgroups(g)) {
        if (!is_simple_cayley(quotient(g, core(g, h)).group)) {
          f.fail(name + ": G/core(H) not simple");
        }
      }
    }
    for (char const* big : {"symmetric:10", "alternating:12", "psl2:11",
                            "direct_product:alternating:7,psl2:7"}) {
      ++results;
      auto r = kappa_perm(make_catalog(big, 0).perm);
      if (r.kappa != mu_of(r.witness.type)) {
        f.fail(std::string(big) + ": kappa differs from mu of the witness");
      }
    }
    if (f.ok) {
      f.detail = std::to_string(results) + " kappa results";
    }
    return f;
  });

  criterion(8, "identical JSON across repeated runs and --threads values", 300, [&] {
    Finding                        f;
    std::vector<std::string> const matrix{
        "kappa --catalog sl2_5",
        "kappa --catalog symmetric:12",
        "kappa --gens " + data + "/a5_wr_a6.gens",
        "kappa --cayley " + data + "/c3_identity_last.tbl",
        "min-subgroups --catalog alternating:6",
        "min-subgroups --catalog direct_product:alternating:4,cyclic:3",
        "maximal-subgroups --catalog psl2:11",
        "factors --catalog direct_product:psl2:7,alternating:5",
        "mu --type M11",
        "mu --catalog psl2_9",
        "tree-rep --catalog symmetric:3 --tree " + data + "/star3.tree",
        "mu-table --max-order 100000",
        "catalog",
        "catalog --name psl2_9 --format cayley",
        "oracle --catalog alternating:5",
        "--cayley-bound 100 kappa --gens " + data + "/a5xa5_diagonal.gens",
    };
    int runs = 0;
    for (auto const& cmd : matrix) {
      for (char const* seed : {"0", "11"}) {
        std::string const base = "--json --seed " + std::string(seed) + " ";
        Run const         ref  = shell(base + "--threads 1 " + cmd);
        ++runs;
        if (ref.out.empty()) {
          f.fail("no output from: " + cmd);
        }
        for (char const* t : {"1", "2", "4", "8"}) {
          Run r = shell(base + "--threads " + t + " " + cmd);
          ++runs;
          if (r.code != ref.code || r.out != ref.out) {
            f.fail("output differs with --threads " + std::string(t) + ": " + cmd);
          }
        }
      }
    }
    if (f.ok) {
      f.detail = std::to_string(matrix.size()) + " commands, " + std::to_string(runs)
                 + " runs";
    }
    return f;
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " failed")
            << std::endl;
  return failures;
}

#include <catch_amalgamated.hpp>

#include <fstream>

#include "mindex/catalog.hpp"
#include "mindex/io.hpp"
#include "mindex/kappa.hpp"
#include "mindex/oracle.hpp"
#include "support.hpp"

using namespace mindex;

namespace {

  PermGroup load(std::string const& file) {
    std::ifstream f(std::string(MINDEX_TEST_DATA) + "/" + file);
    REQUIRE(f);
    return io::read_generators(f);
  }

  std::vector<std::string> names(std::vector<SimpleType> const& v) {
    std::vector<std::string> out;
    for (auto const& t : v) {
      out.push_back(t.to_string());
    }
    return out;
  }

  std::vector<std::string> names(TopQuotients const& tq) {
    std::vector<std::string> out;
    for (auto const& w : tq.quotients) {
      out.push_back(w.type.to_string());
    }
    return out;
  }

  BigInt product(std::vector<SimpleType> const& v) {
    BigInt p = 1;
    for (auto const& t : v) {
      p *= t.order;
    }
    return p;
  }

  KappaOptions no_table() {
    KappaOptions o;
    o.cayley_bound = 0;
    return o;
  }

}  // namespace

TEST_CASE("composition_factors") {
  CHECK(names(composition_factors(make_catalog("symmetric:4", 0).perm).factors)
        == std::vector<std::string>{"C_2", "C_2", "C_2", "C_3"});
  CHECK(names(composition_factors(make_catalog("alternating:5", 0).perm).factors)
        == std::vector<std::string>{"A_5"});
  auto a5c2 = make_catalog("direct_product:alternating:5,cyclic:2", 0).perm;
  REQUIRE(a5c2.degree() == 7);
  CHECK(names(composition_factors(a5c2).factors) == std::vector<std::string>{"C_2", "A_5"});
  CHECK_THROWS_AS(composition_factors(PermGroup::trivial(2)), TrivialGroupError);
}

TEST_CASE("property: composition factors multiply to |G| and match the table route") {
  auto corpus = standard_corpus();
  for (char const* extra : {"symmetric:7", "psl2:11", "direct_product:sl2_5,cyclic:5",
                            "dihedral:30", "direct_product:psl2:7,alternating:5"}) {
    corpus.emplace_back(extra);
  }
  for (auto const& name : corpus) {
    INFO(name);
    auto e  = make_catalog(name);
    auto cf = composition_factors(e.perm, no_table());
    CHECK(product(cf.factors) == e.order());
    if (e.cayley) {
      // Jordan-Hoelder: both decompositions give the same multiset
      CHECK(names(composition_factors(*e.cayley).factors) == names(cf.factors));
    }
  }
}

TEST_CASE("composition factors beyond the table bound") {
  auto wr = load("a5_wr_a6.gens");
  CHECK(names(composition_factors(wr, no_table()).factors)
        == std::vector<std::string>{"A_5", "A_5", "A_5", "A_5", "A_5", "A_5", "A_6"});
  // perfect, primitive, not simple: needs the table route
  auto diag = load("a5xa5_diagonal.gens");
  REQUIRE(diag.order() == 3600);
  CHECK_THROWS_AS(composition_factors(diag, no_table()), DecompositionIncomplete);
  CHECK(names(composition_factors(diag).factors) == std::vector<std::string>{"A_5", "A_5"});
}

TEST_CASE("top_simple_quotients") {
  CHECK(names(top_simple_quotients(make_catalog("symmetric:4", 0).perm))
        == std::vector<std::string>{"C_2"});
  CHECK(names(top_simple_quotients(make_catalog("sl2_5", 0).perm))
        == std::vector<std::string>{"A_5"});
  CHECK(names(top_simple_quotients(make_catalog("cyclic:6", 0).perm))
        == std::vector<std::string>{"C_2", "C_3"});
  auto tq = top_simple_quotients(make_catalog("sl2_5", 0).perm, no_table());
  CHECK(names(tq) == std::vector<std::string>{"A_5"});
  CHECK_THROWS_AS(top_simple_quotients(PermGroup::trivial(3)), TrivialGroupError);
}

TEST_CASE("property: top quotients without the table never invent a quotient") {
  for (auto const& name : standard_corpus()) {
    INFO(name);
    auto e    = make_catalog(name);
    auto full = names(top_simple_quotients(e.perm));
    auto part = top_simple_quotients(e.perm, no_table());
    for (auto const& n : names(part)) {
      CHECK(std::find(full.begin(), full.end(), n) != full.end());
    }
    if (part.complete) {
      CHECK(names(part) == full);
    }
    for (auto const& w : part.quotients) {
      CHECK(w.type.order * w.kernel_order == e.order());
    }
  }
}

TEST_CASE("kappa_perm") {
  for (int n = 2; n <= 9; ++n) {
    INFO(n);
    auto r = kappa_perm(make_catalog("symmetric:" + std::to_string(n), 0).perm);
    CHECK(r.kappa == 2);
    CHECK(r.complete);
  }
  CHECK(kappa_perm(make_catalog("alternating:5", 0).perm).kappa == 5);
  CHECK(kappa_perm(make_catalog("sl2_5", 0).perm).kappa == 5);
  CHECK(kappa_perm(make_catalog("sl2_5", 0).perm, no_table()).kappa == 5);
  CHECK_THROWS_AS(kappa_perm(PermGroup::trivial(4)), TrivialGroupError);
  CHECK_THROWS_WITH(kappa_perm(PermGroup::trivial(4)),
                    Catch::Matchers::ContainsSubstring("no proper subgroup"));
}

TEST_CASE("kappa_cayley") {
  CHECK(kappa_cayley(*make_catalog("quaternion8").cayley).kappa == 2);
  CHECK(kappa_cayley(*make_catalog("cyclic:15").cayley).kappa == 3);
  CHECK(kappa_cayley(*make_catalog("psl2:7").cayley).kappa == 7);
  CHECK_THROWS_AS(kappa_cayley(validate_cayley({{0}})), TrivialGroupError);
}

TEST_CASE("property: kappa agrees with brute force on the corpus") {
  for (auto const& name : standard_corpus()) {
    INFO(name);
    auto       e     = make_catalog(name);
    auto const brute = oracle::brute_kappa(*e.cayley);
    auto const kc    = kappa_cayley(*e.cayley);
    auto const kp    = kappa_perm(e.perm);
    auto const kn    = kappa_perm(e.perm, no_table());
    CHECK(kc.kappa == brute);
    CHECK(kp.kappa == brute);
    CHECK(kp.complete);
    if (kn.complete) {
      CHECK(kn.kappa == brute);
    } else {
      CHECK(kn.lower_bound <= brute);
      CHECK(brute <= kn.kappa);
    }
    for (auto const* r : {&kc, &kp, &kn}) {
      CHECK(r->kappa == mu_of(r->witness.type));
      CHECK(r->witness.type.order * r->witness.kernel_order == e.order());
    }
  }
}

TEST_CASE("property: kappa is at most every point stabilizer index") {
  auto corpus = standard_corpus();
  corpus.emplace_back("psl2:11");
  corpus.emplace_back("symmetric:12");
  corpus.emplace_back("direct_product:alternating:7,cyclic:5");
  for (auto const& name : corpus) {
    INFO(name);
    auto e = make_catalog(name, 0);
    auto r = kappa_perm(e.perm);
    for (auto const& o : orbits(e.perm)) {
      if (o.size() > 1) {
        CHECK(r.kappa <= o.size());
      }
    }
  }
}

TEST_CASE("property: kappa is 2 iff 2 divides |G/G'| iff an index-2 subgroup exists") {
  for (auto const& name : standard_corpus()) {
    INFO(name);
    auto e        = make_catalog(name);
    auto lat      = oracle::subgroup_lattice(*e.cayley);
    bool index2   = !oracle::index_slice(lat, 2).empty();
    auto ab       = e.order() / derived_subgroup(e.perm).order();
    bool even_ab  = ab % 2 == 0;
    CHECK(index2 == even_ab);
    CHECK((kappa_cayley(*e.cayley).kappa == 2) == index2);
  }
}

TEST_CASE("kappa_perm flags what it cannot certify") {
  // A_5 wr A_6: the only simple quotient is A_6 (kappa 6), but A_5 is a
  // composition factor, so without the table route only 5 <= kappa <= 6
  // is certain.
  auto wr = load("a5_wr_a6.gens");
  auto r  = kappa_perm(wr);
  CHECK(r.kappa == 6);
  CHECK(r.witness.type == SimpleType::alternating(6));
  CHECK_FALSE(r.complete);
  CHECK(r.lower_bound == 5);

  auto diag = load("a5xa5_diagonal.gens");
  CHECK_THROWS_AS(kappa_perm(diag, no_table()), DecompositionIncomplete);
  auto d = kappa_perm(diag);
  CHECK(d.kappa == 5);
  CHECK(d.complete);
}

TEST_CASE("large groups through orbit and block images") {
  auto r = kappa_perm(make_catalog("direct_product:alternating:9,alternating:7", 0).perm);
  CHECK(r.kappa == 7);
  CHECK(r.complete);
  auto s = kappa_perm(make_catalog("alternating:30", 0).perm);
  CHECK(s.kappa == 30);
  CHECK(s.witness.type == SimpleType::alternating(30));
}

TEST_CASE("minimal index subgroups: cores give simple quotients") {
  for (auto const& name : standard_corpus()) {
    auto e = make_catalog(name);
    if (e.order() > 200) {
      continue;
    }
    INFO(name);
    auto const& g   = *e.cayley;
    auto const  mn  = maximal_normal_subgroups(g);
    auto const  hs  = minimal_index_subgroups(g);
    auto const  k   = kappa_cayley(g).kappa;
    auto        lat = oracle::subgroup_lattice(g);
    std::vector<std::vector<Element>> got;
    for (auto const& h : hs) {
      got.push_back(h.elements());
      CHECK(g.size() / h.size() == k);
      CHECK(std::any_of(mn.begin(), mn.end(),
                        [&](SubgroupSet const& n) { return n.is_subset_of(h); }));
      CHECK(is_simple_cayley(quotient(g, core(g, h)).group));
    }
    std::sort(got.begin(), got.end());
    auto want = oracle::index_slice(lat, k);
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
}

TEST_CASE("to_cayley") {
  auto g  = make_catalog("symmetric:4", 0).perm;
  auto pc = to_cayley(g);
  CHECK(pc.group.size() == 24);
  CHECK(pc.elements.front().is_identity());
  for (Element a = 0; a < 24; a += 5) {
    for (Element b = 0; b < 24; b += 3) {
      CHECK(pc.elements[pc.group.mul(a, b)] == pc.elements[a] * pc.elements[b]);
    }
  }
  CHECK_THROWS_AS(to_cayley(g, 10), CapabilityError);
}

#include <catch_amalgamated.hpp>

#include <fstream>
#include <numeric>
#include <random>

#include "mindex/catalog.hpp"
#include "mindex/io.hpp"
#include "mindex/kappa.hpp"
#include "mindex/oracle.hpp"
#include "mindex/tree.hpp"
#include "tree_oracle.hpp"

using namespace mindex;

namespace {

  using Edges = std::vector<std::pair<Vertex, Vertex>>;
  using tree_oracle::VPerm;

  Tree load(std::string const& file) {
    std::ifstream f(std::string(MINDEX_TEST_DATA) + "/" + file);
    REQUIRE(f);
    return io::read_tree(f);
  }

  // 0-1-2-3-4-5 with a pendant 6 on vertex 2: the smallest asymmetric tree
  Tree asymmetric7() {
    return Tree(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}});
  }

  Tree relabel(Tree const& t, std::vector<Vertex> const& p) {
    Edges e;
    for (auto [u, v] : t.edges()) {
      e.emplace_back(p[u], p[v]);
    }
    return Tree(t.size(), e);
  }

  Tree random_tree(std::size_t n, std::mt19937_64& rng) {
    Edges e;
    for (Vertex v = 1; v < n; ++v) {
      e.emplace_back(std::uniform_int_distribution<Vertex>(0, v - 1)(rng), v);
    }
    std::vector<Vertex> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return relabel(Tree(n, e), p);
  }

}  // namespace

TEST_CASE("Tree validation") {
  CHECK_THROWS_AS(Tree(0, {}), InputError);
  CHECK_THROWS_AS(Tree(3, {{0, 1}}), InputError);
  CHECK_THROWS_AS(Tree(3, {{0, 1}, {1, 3}}), InputError);
  CHECK_THROWS_AS(Tree(3, {{0, 0}, {1, 2}}), InputError);
  CHECK_THROWS_AS(Tree(4, {{0, 1}, {1, 0}, {2, 3}}), InputError);
  CHECK_THROWS_AS(load("cycle.tree"), InputError);
  CHECK(Tree(1, {}).size() == 1);
}

TEST_CASE("center") {
  CHECK(center(Tree::path(3)) == std::vector<Vertex>{1});
  CHECK(center(Tree::path(4)) == std::vector<Vertex>{1, 2});
  CHECK(center(Tree::star(5)) == std::vector<Vertex>{0});
  CHECK(center(Tree(1, {})) == std::vector<Vertex>{0});
  CHECK(center(Tree::path(2)) == std::vector<Vertex>{0, 1});
  CHECK(center(asymmetric7()) == std::vector<Vertex>{2, 3});
}

TEST_CASE("ahu_canonize") {
  auto star2 = ahu_canonize(Tree::path(3));
  CHECK(star2.root == 1);
  CHECK(star2.code[0] == star2.code[2]);
  CHECK(star2.multiplicities[1] == std::vector<std::size_t>{2});

  auto p3 = load("path3.tree");
  auto s3 = load("star3.tree");
  CHECK(ahu_canonize(p3).root_code() != ahu_canonize(s3).root_code());

  // bicentral: the virtual root sits at index n
  auto p4 = ahu_canonize(Tree::path(4));
  CHECK(p4.root == 4);
  CHECK(p4.code.size() == 5);
  CHECK(p4.multiplicities[4] == std::vector<std::size_t>{2});
}

TEST_CASE("max_symmetric_degree") {
  CHECK(max_symmetric_degree(Tree::path(3)) == 2);
  CHECK(max_symmetric_degree(Tree::star(5)) == 5);
  CHECK(max_symmetric_degree(asymmetric7()) == 1);
  CHECK(max_symmetric_degree(Tree(1, {})) == 1);
  CHECK(max_symmetric_degree(load("edge.tree")) == 2);
  CHECK(max_symmetric_degree(Tree::path(6)) == 2);
}

TEST_CASE("representable_on_tree") {
  auto const c3 = kappa_cayley(*make_catalog("cyclic:3").cayley).kappa;
  REQUIRE(c3 == 3);
  CHECK_FALSE(representable_on_tree(c3, load("path3.tree")));
  CHECK(representable_on_tree(c3, load("star3.tree")));
  CHECK(representable_on_tree(2, load("edge.tree")));
  CHECK_FALSE(representable_on_tree(2, Tree(1, {})));
  CHECK_THROWS_AS(representable_on_tree(1, Tree::path(3)), InputError);
  CHECK_THROWS_AS(representable_on_tree(0, Tree::path(3)), InputError);
}

TEST_CASE("unlabeled_trees") {
  std::vector<std::size_t> counts;
  for (std::size_t n = 1; n <= 8; ++n) {
    counts.push_back(unlabeled_trees(n).size());
  }
  // OEIS A000055
  CHECK(counts == std::vector<std::size_t>{1, 1, 1, 2, 3, 6, 11, 23});
  CHECK(unlabeled_trees(0).empty());
}

TEST_CASE("property: codes are invariant under relabeling") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    auto       t    = random_tree(1 + i % 30, rng);
    auto const code = ahu_canonize(t).root_code();
    auto const m    = max_symmetric_degree(t);
    for (int j = 0; j < 10; ++j) {
      std::vector<Vertex> p(t.size());
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      auto u = relabel(t, p);
      CHECK(ahu_canonize(u).root_code() == code);
      CHECK(max_symmetric_degree(u) == m);
    }
  }
}

TEST_CASE("property: distinct unlabeled trees are pairwise non-isomorphic") {
  // brute-force isomorphism on 7 vertices: no vertex bijection between two
  // listed trees preserves edges
  auto const trees = unlabeled_trees(7);
  for (std::size_t a = 0; a < trees.size(); ++a) {
    for (std::size_t b = a + 1; b < trees.size(); ++b) {
      std::vector<std::vector<bool>> adj(7, std::vector<bool>(7));
      for (auto [u, v] : trees[b].edges()) {
        adj[u][v] = adj[v][u] = true;
      }
      VPerm p(7);
      std::iota(p.begin(), p.end(), 0);
      bool iso = false;
      do {
        iso = std::all_of(trees[a].edges().begin(), trees[a].edges().end(),
                          [&](auto const& e) { return adj[p[e.first]][p[e.second]]; });
      } while (!iso && std::next_permutation(p.begin(), p.end()));
      CHECK_FALSE(iso);
    }
  }
}

TEST_CASE("property: m* = 1 iff Aut(T) is trivial") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (auto const& t : unlabeled_trees(n)) {
      auto const aut = tree_oracle::automorphisms(t);
      INFO(ahu_canonize(t).root_code());
      CHECK((max_symmetric_degree(t) == 1) == (aut.size() == 1));
    }
  }
}

TEST_CASE("property: criterion agrees with a brute-force homomorphism search") {
  std::vector<CayleyGroup>   groups;
  std::vector<unsigned long> kappas;
  for (auto const& name : standard_corpus()) {
    auto e = make_catalog(name);
    if (e.order() <= 24) {
      kappas.push_back(oracle::brute_kappa(*e.cayley));
      groups.push_back(std::move(*e.cayley));
    }
  }
  REQUIRE(groups.size() >= 20);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (auto const& t : unlabeled_trees(n)) {
      auto const aut = tree_oracle::automorphisms(t);
      for (std::size_t i = 0; i < groups.size(); ++i) {
        INFO(ahu_canonize(t).root_code() << " |G|=" << groups[i].size());
        CHECK(representable_on_tree(kappas[i], t) == tree_oracle::nontrivial_hom(groups[i], aut));
      }
    }
  }
}

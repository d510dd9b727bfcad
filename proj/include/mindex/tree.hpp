#ifndef MINDEX_TREE_HPP_
#define MINDEX_TREE_HPP_

// Trees, their AHU canonical codes and the representability test.
//
// Rooted at its center, Aut(T) is built from direct products and wreath
// products A wr Sym_m, one per class of m isomorphic sibling subtrees. A
// nontrivial image of G in A wr Sym_m projects nontrivially onto Sym_m or
// onto a coordinate of the base, and G maps nontrivially into Sym_m exactly
// when kappa(G) <= m. So G acts nontrivially on T iff kappa(G) <= m*, the
// largest sibling multiplicity.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace mindex {

  using Vertex = std::size_t;

  class Tree {
   public:
    /// 0-based edges. Throws InputError unless they form a tree on n vertices.
    Tree(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges)
        : _edges(std::move(edges)), _adj(n) {
      if (n == 0) {
        throw InputError("a tree needs at least one vertex");
      }
      if (_edges.size() != n - 1) {
        throw InputError("a tree on " + std::to_string(n) + " vertices has "
                         + std::to_string(n - 1) + " edges, got "
                         + std::to_string(_edges.size()));
      }
      for (auto [u, v] : _edges) {
        if (u >= n || v >= n) {
          throw InputError("edge endpoint out of range");
        }
        if (u == v) {
          throw InputError("self-loop at vertex " + std::to_string(u + 1));
        }
        _adj[u].push_back(v);
        _adj[v].push_back(u);
      }
      std::vector<char>   seen(n, 0);
      std::vector<Vertex> stack{0};
      seen[0]           = 1;
      std::size_t count = 1;
      while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex v : _adj[u]) {
          if (!seen[v]) {
            seen[v] = 1;
            ++count;
            stack.push_back(v);
          }
        }
      }
      if (count != n) {
        throw InputError("edges do not form a connected graph");
      }
    }

    std::size_t size() const noexcept {
      return _adj.size();
    }

    std::vector<std::pair<Vertex, Vertex>> const& edges() const noexcept {
      return _edges;
    }

    std::vector<Vertex> const& neighbours(Vertex v) const {
      return _adj.at(v);
    }

    static Tree path(std::size_t n) {
      std::vector<std::pair<Vertex, Vertex>> e;
      for (Vertex i = 1; i < n; ++i) {
        e.emplace_back(i - 1, i);
      }
      return Tree(n, std::move(e));
    }

    /// K_{1,k}: hub 0 and leaves 1..k.
    static Tree star(std::size_t k) {
      std::vector<std::pair<Vertex, Vertex>> e;
      for (Vertex i = 1; i <= k; ++i) {
        e.emplace_back(0, i);
      }
      return Tree(k + 1, std::move(e));
    }

   private:
    std::vector<std::pair<Vertex, Vertex>> _edges;
    std::vector<std::vector<Vertex>>       _adj;
  };

  /// One vertex, or the two ends of the central edge, by leaf stripping.
  inline std::vector<Vertex> center(Tree const& t) {
    std::size_t const        n = t.size();
    std::vector<std::size_t> degree(n);
    std::vector<Vertex>      layer;
    for (Vertex v = 0; v < n; ++v) {
      degree[v] = t.neighbours(v).size();
      if (degree[v] <= 1) {
        layer.push_back(v);
      }
    }
    std::size_t remaining = n;
    while (remaining > 2) {
      remaining -= layer.size();
      std::vector<Vertex> next;
      for (Vertex u : layer) {
        for (Vertex v : t.neighbours(u)) {
          if (--degree[v] == 1) {
            next.push_back(v);
          }
        }
      }
      layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
  }

  //! AHU codes of the tree rooted at its center. Bicentral trees get a
  //! virtual root (index n) adjacent to both centers.
  struct CanonicalCode {
    Vertex                   root = 0;
    std::vector<std::string> code;  // per vertex, size n or n + 1
    // per vertex: multiplicities of the isomorphism classes of its children,
    // in decreasing order
    std::vector<std::vector<std::size_t>> multiplicities;

    std::string const& root_code() const {
      return code[root];
    }
  };

  inline CanonicalCode ahu_canonize(Tree const& t) {
    std::size_t const                n = t.size();
    auto const                       c = center(t);
    std::vector<std::vector<Vertex>> adj(n);
    for (Vertex v = 0; v < n; ++v) {
      adj[v] = t.neighbours(v);
    }
    CanonicalCode cc;
    if (c.size() == 2) {
      // subdivide the central edge
      auto drop = [&](Vertex a, Vertex b) {
        adj[a].erase(std::find(adj[a].begin(), adj[a].end(), b));
        adj[a].push_back(n);
      };
      drop(c[0], c[1]);
      drop(c[1], c[0]);
      adj.push_back({c[0], c[1]});
      cc.root = n;
    } else {
      cc.root = c[0];
    }
    std::size_t const total = adj.size();
    // BFS order from the root; reverse it to go bottom-up
    std::vector<Vertex> order{cc.root};
    std::vector<Vertex> parent(total, total);
    parent[cc.root] = cc.root;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (Vertex v : adj[order[i]]) {
        if (parent[v] == total) {
          parent[v] = order[i];
          order.push_back(v);
        }
      }
    }
    cc.code.assign(total, "");
    cc.multiplicities.assign(total, {});
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      Vertex                   u = *it;
      std::vector<std::string> kids;
      for (Vertex v : adj[u]) {
        if (v != parent[u]) {
          kids.push_back(cc.code[v]);
        }
      }
      std::sort(kids.begin(), kids.end());
      std::string s = "(";
      for (auto const& k : kids) {
        s += k;
      }
      s += ")";
      cc.code[u] = std::move(s);
      for (std::size_t i = 0; i < kids.size();) {
        std::size_t j = i;
        while (j < kids.size() && kids[j] == kids[i]) {
          ++j;
        }
        cc.multiplicities[u].push_back(j - i);
        i = j;
      }
      std::sort(cc.multiplicities[u].rbegin(), cc.multiplicities[u].rend());
    }
    return cc;
  }

  /// Largest number of pairwise isomorphic sibling subtrees; 1 iff Aut(T)
  /// is trivial.
  inline std::size_t max_symmetric_degree(Tree const& t) {
    std::size_t best = 1;
    for (auto const& mult : ahu_canonize(t).multiplicities) {
      if (!mult.empty()) {
        best = std::max(best, mult.front());
      }
    }
    return best;
  }

  /// Does a group with this kappa map nontrivially into Aut(T)?
  inline bool representable_on_tree(unsigned long kappa, Tree const& t) {
    if (kappa < 2) {
      throw InputError("κ must be at least 2, got " + std::to_string(kappa));
    }
    return kappa <= max_symmetric_degree(t);
  }

  /// One representative of every unlabeled tree on n vertices, by decoding
  /// all Prüfer sequences and keeping the first tree of each AHU class.
  /// Costs n^(n-2) decodes; meant for n <= 9.
  inline std::vector<Tree> unlabeled_trees(std::size_t n) {
    if (n == 0) {
      return {};
    }
    if (n <= 2) {
      return {Tree::path(n)};
    }
    std::vector<Tree>     out;
    std::set<std::string> seen;
    std::vector<Vertex>   seq(n - 2, 0);
    while (true) {
      // decode
      std::vector<std::size_t> degree(n, 1);
      for (Vertex v : seq) {
        ++degree[v];
      }
      std::vector<std::pair<Vertex, Vertex>> edges;
      for (Vertex v : seq) {
        Vertex leaf = 0;
        while (degree[leaf] != 1) {
          ++leaf;
        }
        edges.emplace_back(leaf, v);
        --degree[leaf];
        --degree[v];
      }
      Vertex a = n, b = n;
      for (Vertex v = 0; v < n; ++v) {
        if (degree[v] == 1) {
          (a == n ? a : b) = v;
        }
      }
      edges.emplace_back(a, b);
      Tree t(n, std::move(edges));
      if (seen.insert(ahu_canonize(t).root_code()).second) {
        out.push_back(std::move(t));
      }
      std::size_t i = 0;
      while (i < seq.size() && ++seq[i] == n) {
        seq[i++] = 0;
      }
      if (i == seq.size()) {
        break;
      }
    }
    return out;
  }

}  // namespace mindex

#endif  // MINDEX_TREE_HPP_

#ifndef MINDEX_MAXIMAL_HPP_
#define MINDEX_MAXIMAL_HPP_

// Maximal normal subgroups of table groups, and all maximal subgroups of a
// simple table group by iterative deepening over generating tuples.

#include <algorithm>
#include <cstddef>
#include <thread>
#include <unordered_map>
#include <vector>

#include "cayley.hpp"
#include "errors.hpp"

namespace mindex {

  namespace detail {

    inline std::vector<unsigned long> prime_divisors(unsigned long n) {
      std::vector<unsigned long> out;
      for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
          out.push_back(p);
          while (n % p == 0) {
            n /= p;
          }
        }
      }
      if (n > 1) {
        out.push_back(n);
      }
      return out;
    }

    inline Element power(CayleyGroup const& g, Element x, unsigned long k) {
      Element r = 0;
      for (unsigned long i = 0; i < k; ++i) {
        r = g.mul(r, x);
      }
      return r;
    }

  }  // namespace detail

  /// Maximal normal subgroups N with G/N of prime order: the preimages of
  /// the hyperplanes of (G/G')/(G/G')^p, for every prime p dividing |G/G'|.
  inline std::vector<SubgroupSet>
  abelian_maximal_normal_subgroups(CayleyGroup const& g) {
    std::vector<SubgroupSet> out;
    auto const               derived = derived_subgroup(g);
    if (derived.size() == g.size()) {
      return out;
    }
    auto const ab = quotient(g, derived);
    for (unsigned long p : detail::prime_divisors(ab.group.size())) {
      // A^p is a subgroup because A is abelian
      Bitset pth(ab.group.size());
      for (Element x = 0; x < ab.group.size(); ++x) {
        pth.set(detail::power(ab.group, x, p));
      }
      auto const e = quotient(ab.group, SubgroupSet(pth));
      // basis of the elementary abelian group E
      std::vector<Element> basis;
      detail::Closure      span(e.group.size());
      for (Element x = 1; x < e.group.size(); ++x) {
        if (!span.members.test(x)) {
          basis.push_back(x);
          span.add(e.group, x);
        }
      }
      std::size_t const r = basis.size();
      // coordinates of every element of E
      std::vector<std::vector<unsigned long>> coord(e.group.size());
      std::vector<unsigned long>              c(r, 0);
      while (true) {
        Element x = 0;
        for (std::size_t i = 0; i < r; ++i) {
          x = e.group.mul(x, detail::power(e.group, basis[i], c[i]));
        }
        coord[x] = c;
        std::size_t i = 0;
        while (i < r && ++c[i] == p) {
          c[i++] = 0;
        }
        if (i == r) {
          break;
        }
      }
      // nonzero functionals whose last nonzero coefficient is 1
      std::vector<unsigned long> f(r, 0);
      while (true) {
        std::size_t i = 0;
        while (i < r && ++f[i] == p) {
          f[i++] = 0;
        }
        if (i == r) {
          break;
        }
        auto lead = std::find_if(f.rbegin(), f.rend(), [](auto v) {
          return v != 0;
        });
        if (*lead != 1) {
          continue;
        }
        Bitset kernel(g.size());
        for (Element x = 0; x < g.size(); ++x) {
          auto const& cx  = coord[e.projection[ab.projection[x]]];
          unsigned long s = 0;
          for (std::size_t k = 0; k < r; ++k) {
            s = (s + f[k] * cx[k]) % p;
          }
          if (s == 0) {
            kernel.set(x);
          }
        }
        out.emplace_back(std::move(kernel));
      }
    }
    sort_unique(out);
    return out;
  }

  /// Maximal normal subgroups N with G/N nonabelian simple. Such N never
  /// contains G', and neither does any normal subgroup below it, so the
  /// upward search joins conjugacy classes onto normal subgroups and prunes
  /// every join that contains G'.
  inline std::vector<SubgroupSet>
  nonabelian_maximal_normal_subgroups(CayleyGroup const& g) {
    std::vector<SubgroupSet> out;
    auto const               derived = derived_subgroup(g);
    if (derived.size() == 1) {
      return out;
    }
    std::unordered_map<Bitset, std::size_t> seen;
    std::vector<detail::Closure>            nodes;
    nodes.emplace_back(g.size());
    seen.emplace(nodes.front().members, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      bool has_proper_join = false;
      for (auto const& cls : g.classes()) {
        if (nodes[i].members.test(cls.front())) {
          continue;
        }
        auto join = nodes[i];
        join.add(g, cls);
        if (join.list.size() == g.size()) {
          continue;
        }
        has_proper_join = true;
        if (derived.members().is_subset_of(join.members)) {
          continue;
        }
        if (seen.find(join.members) == seen.end()) {
          seen.emplace(join.members, nodes.size());
          nodes.push_back(std::move(join));
        }
      }
      if (!has_proper_join) {
        out.push_back(nodes[i].subgroup());
      }
    }
    sort_unique(out);
    return out;
  }

  /// The set of all N normal in G with G/N simple, sorted.
  inline std::vector<SubgroupSet> maximal_normal_subgroups(CayleyGroup const& g) {
    if (g.size() == 1) {
      throw TrivialGroupError(
          "the trivial group has no maximal normal subgroup");
    }
    auto out = abelian_maximal_normal_subgroups(g);
    auto na  = nonabelian_maximal_normal_subgroups(g);
    out.insert(out.end(), na.begin(), na.end());
    sort_unique(out);
    return out;
  }

  struct MaximalSearchOptions {
    std::size_t size_cap = 700;
    unsigned    threads  = 1;
    unsigned    depth    = 4;
  };

  /// Every maximal subgroup of a simple table group. Level k holds the
  /// distinct subgroups first reached as <H, x> from level k-1 (x running
  /// over right coset representatives of H), so level k contains every
  /// subgroup generated by k elements. Every node is also tested for
  /// maximality; since maximal subgroups of finite simple groups are
  /// 4-generated, depth 4 finds them all.
  inline std::vector<SubgroupSet>
  all_maximal_subgroups_simple(CayleyGroup const&   g,
                               MaximalSearchOptions opts = {}) {
    std::size_t const m = g.size();
    if (m > opts.size_cap) {
      throw CapabilityError("maximal subgroup search capped at order "
                            + std::to_string(opts.size_cap) + ", got "
                            + std::to_string(m));
    }
    if (!is_simple_cayley(g)) {
      throw InputError("all_maximal_subgroups_simple: group is not simple");
    }

    struct Expansion {
      bool                         has_proper = false;
      std::vector<detail::Closure> found;
    };

    std::vector<detail::Closure>            nodes;
    std::unordered_map<Bitset, std::size_t> seen;
    nodes.emplace_back(m);
    seen.emplace(nodes.front().members, 0);

    auto expand = [&](std::size_t i, Expansion& ex) {
      auto const& h = nodes[i];
      for (Element x : detail::right_coset_reps(g, h.members, h.list)) {
        auto c = h;
        if (!c.add(g, x, m / 2)) {
          continue;  // more than half the group: it is G
        }
        ex.has_proper = true;
        ex.found.push_back(std::move(c));
      }
    };

    std::vector<SubgroupSet> maximal;
    std::size_t              level_begin = 0;
    unsigned const           threads = std::max(1u, opts.threads);
    for (unsigned depth = 0; depth <= opts.depth; ++depth) {
      std::size_t const      level_end = nodes.size();
      std::size_t const      count     = level_end - level_begin;
      std::vector<Expansion> results(count);
      if (threads == 1 || count < 2) {
        for (std::size_t k = 0; k < count; ++k) {
          expand(level_begin + k, results[k]);
        }
      } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
          pool.emplace_back([&, t] {
            for (std::size_t k = t; k < count; k += threads) {
              expand(level_begin + k, results[k]);
            }
          });
        }
        for (auto& th : pool) {
          th.join();
        }
      }
      // merge in node order so the result does not depend on threads
      for (std::size_t k = 0; k < count; ++k) {
        if (!results[k].has_proper) {
          maximal.push_back(nodes[level_begin + k].subgroup());
        }
        if (depth == opts.depth) {
          continue;
        }
        for (auto& c : results[k].found) {
          if (seen.find(c.members) == seen.end()) {
            seen.emplace(c.members, nodes.size());
            nodes.push_back(std::move(c));
          }
        }
      }
      level_begin = level_end;
    }
    sort_unique(maximal);
    return maximal;
  }

}  // namespace mindex

#endif  // MINDEX_MAXIMAL_HPP_

#ifndef MINDEX_ORACLE_HPP_
#define MINDEX_ORACLE_HPP_

// Brute-force reference computations on table groups. Everything here works
// from the multiplication table alone and shares no subgroup code with the
// rest of the library, so agreement between the two is evidence for both.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "cayley.hpp"
#include "errors.hpp"

namespace mindex::oracle {

  using Members = std::vector<bool>;

  struct Subgroup {
    Members              members;
    std::vector<Element> elements;  // sorted
    std::vector<Element> gens;
  };

  //! Every subgroup of a table group, sorted by (size, elements).
  struct Lattice {
    std::size_t           order = 0;
    std::vector<Subgroup> subgroups;
  };

  namespace detail {

    inline void check_bound(CayleyGroup const& g, std::size_t bound) {
      if (g.size() > bound) {
        throw CapabilityError("oracle bound is " + std::to_string(bound)
                              + ", group has order "
                              + std::to_string(g.size()));
      }
    }

    inline Subgroup close(CayleyGroup const& g, std::vector<Element> gens) {
      Subgroup s;
      s.members.assign(g.size(), false);
      s.members[0] = true;
      s.elements.push_back(0);
      for (std::size_t i = 0; i < s.elements.size(); ++i) {
        for (Element x : gens) {
          Element y = g.mul(s.elements[i], x);
          if (!s.members[y]) {
            s.members[y] = true;
            s.elements.push_back(y);
          }
        }
      }
      std::sort(s.elements.begin(), s.elements.end());
      s.gens = std::move(gens);
      return s;
    }

  }  // namespace detail

  /// The full subgroup lattice: start from the trivial group and repeatedly
  /// join each subgroup H with one representative of every right coset Hx.
  inline Lattice subgroup_lattice(CayleyGroup const& g,
                                  std::size_t        bound = 400) {
    detail::check_bound(g, bound);
    std::size_t const                    m = g.size();
    Lattice                              lat;
    std::unordered_map<Members, std::size_t> seen;
    lat.order = m;
    lat.subgroups.push_back(detail::close(g, {}));
    seen.emplace(lat.subgroups.back().members, 0);
    for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
      std::vector<char> covered(m, 0);
      for (Element x = 0; x < m; ++x) {
        if (lat.subgroups[i].members[x] || covered[x]) {
          continue;
        }
        for (Element h : lat.subgroups[i].elements) {
          covered[g.mul(h, x)] = 1;
        }
        auto gens = lat.subgroups[i].gens;
        gens.push_back(x);
        auto k = detail::close(g, std::move(gens));
        if (seen.emplace(k.members, lat.subgroups.size()).second) {
          lat.subgroups.push_back(std::move(k));
        }
      }
    }
    std::sort(lat.subgroups.begin(), lat.subgroups.end(),
              [](Subgroup const& a, Subgroup const& b) {
                if (a.elements.size() != b.elements.size()) {
                  return a.elements.size() < b.elements.size();
                }
                return a.elements < b.elements;
              });
    return lat;
  }

  /// The intersection of all conjugates x^-1 H x.
  inline Members core_by_conjugates(CayleyGroup const& g, Members const& h) {
    Members core = h;
    for (Element x = 0; x < g.size(); ++x) {
      Element xi = g.inv(x);
      Members conj(g.size(), false);
      for (Element y = 0; y < g.size(); ++y) {
        if (h[y]) {
          conj[g.mul(g.mul(xi, y), x)] = true;
        }
      }
      for (Element y = 0; y < g.size(); ++y) {
        core[y] = core[y] && conj[y];
      }
    }
    return core;
  }

  inline bool is_normal_by_conjugates(CayleyGroup const& g, Members const& h) {
    return core_by_conjugates(g, h) == h;
  }

  /// min |G : H| over proper subgroups H.
  inline unsigned long brute_kappa(Lattice const& lat) {
    if (lat.order == 1) {
      throw TrivialGroupError();
    }
    // sorted by size: the largest proper subgroup is second to last
    return lat.order / lat.subgroups[lat.subgroups.size() - 2].elements.size();
  }

  inline unsigned long brute_kappa(CayleyGroup const& g,
                                   std::size_t        bound = 400) {
    if (g.size() == 1) {
      throw TrivialGroupError();
    }
    return brute_kappa(subgroup_lattice(g, bound));
  }

  /// Least sum of indices |G : H_i| over families whose cores meet in 1.
  /// mu(1) is 0.
  inline unsigned long brute_mu(CayleyGroup const& g, Lattice const& lat) {
    std::size_t const m = g.size();
    if (m == 1) {
      return 0;
    }
    // smallest index achieving each core
    std::unordered_map<Members, unsigned long> best;
    for (auto const& s : lat.subgroups) {
      if (s.elements.size() == m) {
        continue;
      }
      auto          c   = core_by_conjugates(g, s.members);
      unsigned long idx = m / s.elements.size();
      auto [it, fresh]  = best.emplace(std::move(c), idx);
      if (!fresh) {
        it->second = std::min(it->second, idx);
      }
    }
    std::vector<std::pair<unsigned long, Members>> cores;
    for (auto& [c, idx] : best) {
      cores.emplace_back(idx, c);
    }
    std::sort(cores.begin(), cores.end());

    unsigned long answer = std::numeric_limits<unsigned long>::max();
    Members       all(m, true);
    auto          dfs = [&](auto& self, std::size_t from, Members const& cur,
                   unsigned long sum) -> void {
      if (sum >= answer) {
        return;
      }
      if (std::count(cur.begin(), cur.end(), true) == 1) {
        answer = sum;
        return;
      }
      for (std::size_t i = from; i < cores.size(); ++i) {
        if (sum + cores[i].first >= answer) {
          break;  // indices are sorted
        }
        Members next(m);
        bool    shrinks = false;
        for (std::size_t y = 0; y < m; ++y) {
          next[y] = cur[y] && cores[i].second[y];
          shrinks = shrinks || (cur[y] && !next[y]);
        }
        if (shrinks) {
          self(self, i + 1, next, sum + cores[i].first);
        }
      }
    };
    dfs(dfs, 0, all, 0);
    return answer;
  }

  inline unsigned long brute_mu(CayleyGroup const& g,
                                std::size_t        bound = 400) {
    return brute_mu(g, subgroup_lattice(g, bound));
  }

  /// Simple iff exactly two normal subgroups.
  inline bool brute_is_simple(CayleyGroup const& g, Lattice const& lat) {
    if (g.size() == 1) {
      throw TrivialGroupError("simplicity is undefined for the trivial group");
    }
    std::size_t normal = 0;
    for (auto const& s : lat.subgroups) {
      normal += is_normal_by_conjugates(g, s.members);
    }
    return normal == 2;
  }

  namespace detail {

    inline bool strictly_inside(Subgroup const& a, Subgroup const& b) {
      if (a.elements.size() >= b.elements.size()) {
        return false;
      }
      for (Element x : a.elements) {
        if (!b.members[x]) {
          return false;
        }
      }
      return true;
    }

    inline std::vector<std::vector<Element>>
    maximal_among(std::vector<Subgroup const*> const& pool, std::size_t m) {
      std::vector<std::vector<Element>> out;
      for (auto const* h : pool) {
        if (h->elements.size() == m) {
          continue;
        }
        bool maximal = true;
        for (auto const* k : pool) {
          if (k->elements.size() < m && strictly_inside(*h, *k)) {
            maximal = false;
            break;
          }
        }
        if (maximal) {
          out.push_back(h->elements);
        }
      }
      return out;
    }

  }  // namespace detail

  /// Maximal subgroups as sorted element lists, in lattice order.
  inline std::vector<std::vector<Element>>
  maximal_subgroups(Lattice const& lat) {
    std::vector<Subgroup const*> pool;
    for (auto const& s : lat.subgroups) {
      pool.push_back(&s);
    }
    return detail::maximal_among(pool, lat.order);
  }

  /// Maximal elements among the proper normal subgroups.
  inline std::vector<std::vector<Element>>
  maximal_normal_subgroups(CayleyGroup const& g, Lattice const& lat) {
    std::vector<Subgroup const*> pool;
    for (auto const& s : lat.subgroups) {
      if (is_normal_by_conjugates(g, s.members)) {
        pool.push_back(&s);
      }
    }
    return detail::maximal_among(pool, lat.order);
  }

  /// Subgroups of index exactly k.
  inline std::vector<std::vector<Element>> index_slice(Lattice const& lat,
                                                       unsigned long  k) {
    std::vector<std::vector<Element>> out;
    for (auto const& s : lat.subgroups) {
      if (s.elements.size() * k == lat.order) {
        out.push_back(s.elements);
      }
    }
    return out;
  }

  /// Is H (sorted element list) a maximal subgroup according to the lattice.
  inline bool is_maximal(Lattice const& lat, std::vector<Element> const& h) {
    for (auto const& m : maximal_subgroups(lat)) {
      if (m == h) {
        return true;
      }
    }
    return false;
  }

}  // namespace mindex::oracle

#endif  // MINDEX_ORACLE_HPP_

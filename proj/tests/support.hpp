// Test-side reference code: naive element enumeration and small helpers.
// Nothing here uses the stabilizer chain or the table-group algorithms.

#ifndef MINDEX_TESTS_SUPPORT_HPP_
#define MINDEX_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "mindex/cayley.hpp"
#include "mindex/perm.hpp"
#include "mindex/perm_group.hpp"

namespace support {

  using mindex::Permutation;
  using mindex::Point;

  using Images = std::vector<Point>;

  inline Images apply_right(Images const& x, Permutation const& g) {
    Images r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      r[i] = g(x[i]);
    }
    return r;
  }

  /// All elements of <gens> by breadth-first right multiplication.
  inline std::set<Images> naive_elements(std::size_t                     n,
                                         std::vector<Permutation> const& gens) {
    Images id(n);
    for (std::size_t i = 0; i < n; ++i) {
      id[i] = static_cast<Point>(i);
    }
    std::set<Images>    seen{id};
    std::vector<Images> queue{id};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (auto const& g : gens) {
        auto y = apply_right(queue[i], g);
        if (seen.insert(y).second) {
          queue.push_back(std::move(y));
        }
      }
    }
    return seen;
  }

  inline std::set<Images> naive_elements(mindex::PermGroup const& g) {
    return naive_elements(g.degree(), g.generators());
  }

  inline Images images_of(Permutation const& p) {
    return Images(p.images().begin(), p.images().end());
  }

  inline Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
    Images im(n);
    for (std::size_t i = 0; i < n; ++i) {
      im[i] = static_cast<Point>(i);
    }
    std::shuffle(im.begin(), im.end(), rng);
    return Permutation(im);
  }

  inline Permutation cyc(std::size_t n, std::initializer_list<std::vector<Point>> c) {
    return Permutation::from_cycles(n, c);
  }

  /// Element orders of a table group as a sorted list.
  inline std::vector<unsigned long> order_multiset(mindex::CayleyGroup const& g) {
    std::vector<unsigned long> v;
    for (mindex::Element x = 0; x < g.size(); ++x) {
      v.push_back(g.order_of(x));
    }
    std::sort(v.begin(), v.end());
    return v;
  }

  inline std::vector<unsigned long> order_multiset(std::set<Images> const& els) {
    std::vector<unsigned long> v;
    for (auto const& x : els) {
      Images        y = x;
      unsigned long k = 1;
      auto          is_id = [](Images const& z) {
        for (std::size_t i = 0; i < z.size(); ++i) {
          if (z[i] != i) {
            return false;
          }
        }
        return true;
      };
      while (!is_id(y)) {
        Images w(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
          w[i] = x[y[i]];
        }
        y = std::move(w);
        ++k;
      }
      v.push_back(k);
    }
    std::sort(v.begin(), v.end());
    return v;
  }

}  // namespace support

#endif  // MINDEX_TESTS_SUPPORT_HPP_

#ifndef MINDEX_CATALOG_HPP_
#define MINDEX_CATALOG_HPP_

// Named test groups. A name is
//
//   cyclic:n  dihedral:n  symmetric:n  alternating:n  psl2:p (p = 5, 7, 11)
//   psl2_9  sl2_5  quaternion8  klein4  direct_product:A,B
//
// where A and B are names again; direct_product nests to the left without
// ambiguity because every parameter is a plain integer.

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cayley.hpp"
#include "errors.hpp"
#include "kappa.hpp"
#include "perm_group.hpp"

namespace mindex {

  struct CatalogEntry {
    std::string                name;  // canonical spelling
    PermGroup                  perm;
    std::optional<CayleyGroup> cayley;  // when |G| <= cayley_bound
    // cayley element i is cayley_elements[i]
    std::vector<Permutation> cayley_elements;

    BigInt order() const {
      return perm.order();
    }

    bool is_trivial() const {
      return perm.is_trivial();
    }
  };

  namespace detail {

    inline Permutation perm_from_map(std::size_t n, auto&& f) {
      std::vector<Point> im(n);
      for (Point x = 0; x < n; ++x) {
        im[x] = static_cast<Point>(f(x));
      }
      return Permutation(std::move(im));
    }

    inline Permutation cycle_perm(std::size_t n) {
      return perm_from_map(n, [n](Point x) { return (x + 1) % n; });
    }

    inline PermGroup cyclic_group(std::size_t n) {
      return PermGroup(n, {cycle_perm(n)});
    }

    inline PermGroup dihedral_group(std::size_t n) {
      return PermGroup(n, {cycle_perm(n), perm_from_map(n, [n](Point x) {
                             return (n - x) % n;
                           })});
    }

    inline PermGroup symmetric_group(std::size_t n) {
      if (n < 2) {
        return PermGroup::trivial(n);
      }
      return PermGroup(n, {Permutation::from_cycles(n, {{0, 1}}), cycle_perm(n)});
    }

    inline PermGroup alternating_group(std::size_t n) {
      if (n < 3) {
        return PermGroup::trivial(n);
      }
      std::vector<Permutation> gens;
      for (Point k = 2; k < n; ++k) {
        gens.push_back(Permutation::from_cycles(n, {{0, 1, k}}));
      }
      return PermGroup(n, gens);
    }

    inline PermGroup klein4_group() {
      return PermGroup(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                           Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
    }

    // Q8 = {+-1, +-i, +-j, +-k}; element 4s + u is (-1)^s times unit u,
    // units ordered 1, i, j, k. Regular action by right multiplication.
    inline PermGroup quaternion8_group() {
      // unit products: sign and unit of u*v
      static constexpr std::array<std::array<int, 4>, 4> sign{{
          {0, 0, 0, 0},
          {0, 1, 0, 1},
          {0, 1, 1, 0},
          {0, 0, 1, 1},
      }};
      static constexpr std::array<std::array<int, 4>, 4> unit{{
          {0, 1, 2, 3},
          {1, 0, 3, 2},
          {2, 3, 0, 1},
          {3, 2, 1, 0},
      }};
      auto right = [](Point g) {
        return perm_from_map(8, [g](Point x) {
          Point s = (x / 4 + g / 4 + sign[x % 4][g % 4]) % 2;
          return 4 * s + unit[x % 4][g % 4];
        });
      };
      return PermGroup(8, {right(1), right(2)});
    }

    // PSL(2,p) on the projective line 0..p-1, infinity = p, generated by
    // x -> x+1 and x -> -1/x.
    inline PermGroup psl2_prime(std::size_t p) {
      Point const inf = static_cast<Point>(p);
      auto        inv = [p](Point x) {
        for (Point y = 1; y < p; ++y) {
          if (x * y % p == 1) {
            return y;
          }
        }
        return Point{0};
      };
      auto t = perm_from_map(p + 1, [=](Point x) {
        return x == inf ? inf : (x + 1) % p;
      });
      auto s = perm_from_map(p + 1, [=](Point x) -> Point {
        if (x == inf) {
          return 0;
        }
        if (x == 0) {
          return inf;
        }
        return static_cast<Point>((p - inv(x)) % p);
      });
      return PermGroup(p + 1, {t, s});
    }

    // GF(9) = F_3[i], i^2 = -1; a + bi is stored as a + 3b.
    inline Point gf9_add(Point x, Point y) {
      return (x % 3 + y % 3) % 3 + 3 * ((x / 3 + y / 3) % 3);
    }

    inline Point gf9_mul(Point x, Point y) {
      int a = x % 3, b = x / 3, c = y % 3, d = y / 3;
      int re = ((a * c - b * d) % 3 + 3) % 3;
      int im = (a * d + b * c) % 3;
      return static_cast<Point>(re + 3 * im);
    }

    inline Point gf9_neg(Point x) {
      return static_cast<Point>((3 - x % 3) % 3 + 3 * ((3 - x / 3) % 3));
    }

    // PSL(2,9) on the projective line over GF(9), generated by the
    // translations x -> x+1, x -> x+i and by x -> -1/x.
    inline PermGroup psl2_9_group() {
      Point const inf = 9;
      auto        inv = [](Point x) {
        for (Point y = 1; y < 9; ++y) {
          if (gf9_mul(x, y) == 1) {
            return y;
          }
        }
        return Point{0};
      };
      auto shift = [=](Point a) {
        return perm_from_map(10, [=](Point x) {
          return x == inf ? inf : gf9_add(x, a);
        });
      };
      auto s = perm_from_map(10, [=](Point x) -> Point {
        if (x == inf) {
          return 0;
        }
        if (x == 0) {
          return inf;
        }
        return gf9_neg(inv(x));
      });
      return PermGroup(10, {shift(1), shift(3), s});
    }

    // SL(2,5) on the 24 nonzero row vectors (a, b), stored as 5a + b - 1,
    // generated by [[1,1],[0,1]] and [[0,-1],[1,0]] acting on the right.
    inline PermGroup sl2_5_group() {
      auto act = [](int m00, int m01, int m10, int m11) {
        return perm_from_map(24, [=](Point x) {
          int a = static_cast<int>(x + 1) / 5, b = static_cast<int>(x + 1) % 5;
          int c = ((a * m00 + b * m10) % 5 + 5) % 5;
          int d = ((a * m01 + b * m11) % 5 + 5) % 5;
          return static_cast<Point>(5 * c + d - 1);
        });
      };
      return PermGroup(24, {act(1, 1, 0, 1), act(0, -1, 1, 0)});
    }

    inline PermGroup direct_product_group(PermGroup const& a, PermGroup const& b) {
      std::size_t const        n = a.degree() + b.degree();
      std::vector<Permutation> gens;
      for (auto const& g : a.generators()) {
        gens.push_back(perm_from_map(n, [&](Point x) {
          return x < a.degree() ? g(x) : x;
        }));
      }
      for (auto const& g : b.generators()) {
        gens.push_back(perm_from_map(n, [&](Point x) {
          return x < a.degree() ? x : static_cast<Point>(a.degree() + g(x - a.degree()));
        }));
      }
      return PermGroup(n, gens);
    }

    struct CatalogParser {
      std::string_view s;
      std::size_t      pos = 0;

      [[noreturn]] void fail(std::string const& what) const {
        throw InputError("catalog name '" + std::string(s) + "': " + what
                         + " at position " + std::to_string(pos + 1));
      }

      std::string ident() {
        std::size_t b = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos]))
                                  || s[pos] == '_')) {
          ++pos;
        }
        if (b == pos) {
          fail("expected a group name");
        }
        return std::string(s.substr(b, pos - b));
      }

      void expect(char c) {
        if (pos >= s.size() || s[pos] != c) {
          fail(std::string("expected '") + c + "'");
        }
        ++pos;
      }

      std::size_t number(std::size_t lo, std::size_t hi) {
        std::size_t b = pos, v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
          v = v * 10 + static_cast<std::size_t>(s[pos] - '0');
          if (v > 1000000) {
            fail("parameter too large");
          }
          ++pos;
        }
        if (b == pos) {
          fail("expected an integer parameter");
        }
        if (v < lo || v > hi) {
          pos = b;
          fail("parameter " + std::to_string(v) + " outside " + std::to_string(lo)
               + ".." + std::to_string(hi));
        }
        return v;
      }

      // returns the group and its canonical name
      std::pair<PermGroup, std::string> group() {
        std::string const id = ident();
        auto with = [&](std::string const& base, std::size_t v, PermGroup g) {
          return std::pair{std::move(g), base + ":" + std::to_string(v)};
        };
        if (id == "cyclic") {
          expect(':');
          auto n = number(1, 1000);
          return with(id, n, cyclic_group(n));
        }
        if (id == "dihedral") {
          expect(':');
          auto n = number(3, 1000);
          return with(id, n, dihedral_group(n));
        }
        if (id == "symmetric") {
          expect(':');
          auto n = number(1, 100);
          return with(id, n, symmetric_group(n));
        }
        if (id == "alternating") {
          expect(':');
          auto n = number(1, 100);
          return with(id, n, alternating_group(n));
        }
        if (id == "psl2") {
          expect(':');
          auto p = number(5, 11);
          if (p != 5 && p != 7 && p != 11) {
            fail("psl2 takes p in {5, 7, 11}");
          }
          return with(id, p, psl2_prime(p));
        }
        if (id == "psl2_9") {
          return {psl2_9_group(), id};
        }
        if (id == "sl2_5") {
          return {sl2_5_group(), id};
        }
        if (id == "quaternion8") {
          return {quaternion8_group(), id};
        }
        if (id == "klein4") {
          return {klein4_group(), id};
        }
        if (id == "direct_product") {
          expect(':');
          auto a = group();
          expect(',');
          auto b = group();
          return {direct_product_group(a.first, b.first),
                  id + ":" + a.second + "," + b.second};
        }
        pos -= id.size();
        fail("unknown group '" + id + "'");
      }
    };

  }  // namespace detail

  /// Builds a catalog group; the table realization is attached when the
  /// order is at most cayley_bound.
  inline CatalogEntry make_catalog(std::string_view name,
                                   std::size_t      cayley_bound = 5000) {
    detail::CatalogParser p{name};
    auto [g, canonical]   = p.group();
    if (p.pos != name.size()) {
      p.fail("trailing characters");
    }
    CatalogEntry e{canonical, std::move(g), std::nullopt, {}};
    if (e.perm.order() <= cayley_bound && e.perm.order() <= CayleyGroup::max_order) {
      auto pc           = to_cayley(e.perm, cayley_bound);
      e.cayley          = std::move(pc.group);
      e.cayley_elements = std::move(pc.elements);
    }
    return e;
  }

  /// The grammar of catalog names, one line per form.
  inline std::vector<std::string> catalog_forms() {
    return {"cyclic:n            (1 <= n <= 1000)",
            "dihedral:n          (3 <= n <= 1000, order 2n)",
            "symmetric:n         (1 <= n <= 100)",
            "alternating:n       (1 <= n <= 100)",
            "psl2:p              (p in {5, 7, 11}, on p+1 points)",
            "psl2_9              (on 10 points)",
            "sl2_5               (on the 24 nonzero vectors of F_5^2)",
            "quaternion8         (regular action)",
            "klein4",
            "direct_product:A,B"};
  }

  /// Test corpus: every group here has order at most 400.
  inline std::vector<std::string> standard_corpus() {
    return {
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "cyclic:5",
        "cyclic:6",
        "cyclic:7",
        "cyclic:8",
        "cyclic:9",
        "cyclic:11",
        "cyclic:13",
        "cyclic:15",
        "klein4",
        "symmetric:3",
        "quaternion8",
        "dihedral:4",
        "dihedral:5",
        "dihedral:6",
        "dihedral:7",
        "alternating:4",
        "direct_product:cyclic:3,cyclic:3",
        "direct_product:klein4,cyclic:2",
        "direct_product:symmetric:3,cyclic:3",
        "direct_product:quaternion8,cyclic:3",
        "symmetric:4",
        "direct_product:alternating:4,cyclic:2",
        "direct_product:alternating:4,cyclic:3",
        "alternating:5",
        "psl2:5",
        "symmetric:5",
        "sl2_5",
        "direct_product:alternating:5,cyclic:2",
        "psl2:7",
        "psl2_9",
        "alternating:6",
    };
  }

}  // namespace mindex

#endif  // MINDEX_CATALOG_HPP_

#ifndef MINDEX_PERM_HPP_
#define MINDEX_PERM_HPP_

// Permutations of {0, ..., n-1}.
//
// Convention used throughout the library: permutations act on the right, so
// compose(p, q) (also written p * q) is "first p, then q", i.e. the map
// x -> q(p(x)). Points are 0-based in memory and 1-based in every text format.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "errors.hpp"

namespace mindex {

  using Point = std::uint32_t;

  class Permutation {
   public:
    struct unchecked_t {};
    static constexpr unchecked_t unchecked{};

    Permutation() = default;

    /// Throws InputError unless images is a bijection on {0, ..., n-1}.
    explicit Permutation(std::vector<Point> images) : _images(std::move(images)) {
      std::vector<bool> seen(_images.size(), false);
      for (Point x : _images) {
        if (x >= _images.size() || seen[x]) {
          throw InputError("not a permutation: image list is not a bijection");
        }
        seen[x] = true;
      }
    }

    Permutation(std::vector<Point> images, unchecked_t) noexcept
        : _images(std::move(images)) {}

    static Permutation identity(std::size_t n) {
      std::vector<Point> im(n);
      std::iota(im.begin(), im.end(), Point{0});
      return Permutation(std::move(im), unchecked);
    }

    /// Builds a permutation of degree n from disjoint cycles (0-based).
    static Permutation from_cycles(std::size_t                         n,
                                   std::span<std::vector<Point> const> cycles) {
      std::vector<Point> im(n);
      std::iota(im.begin(), im.end(), Point{0});
      std::vector<bool> used(n, false);
      for (auto const& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (c[i] >= n) {
            throw InputError("cycle point " + std::to_string(c[i] + 1)
                             + " exceeds degree " + std::to_string(n));
          }
          if (used[c[i]]) {
            throw InputError("point " + std::to_string(c[i] + 1)
                             + " appears twice in cycle notation");
          }
          used[c[i]] = true;
          im[c[i]]   = c[(i + 1) % c.size()];
        }
      }
      return Permutation(std::move(im), unchecked);
    }

    static Permutation from_cycles(std::size_t                              n,
                                   std::initializer_list<std::vector<Point>> cycles) {
      std::vector<std::vector<Point>> v(cycles);
      return from_cycles(n, std::span<std::vector<Point> const>(v));
    }

    std::size_t degree() const noexcept {
      return _images.size();
    }

    Point operator()(Point x) const noexcept {
      return _images[x];
    }

    Point operator[](Point x) const noexcept {
      return _images[x];
    }

    std::span<Point const> images() const noexcept {
      return _images;
    }

    bool is_identity() const noexcept {
      for (std::size_t i = 0; i < _images.size(); ++i) {
        if (_images[i] != i) {
          return false;
        }
      }
      return true;
    }

    /// First point moved, or degree() if none.
    Point first_moved() const noexcept {
      for (std::size_t i = 0; i < _images.size(); ++i) {
        if (_images[i] != i) {
          return static_cast<Point>(i);
        }
      }
      return static_cast<Point>(_images.size());
    }

    /// Disjoint cycles of length > 1, each starting at its least point.
    std::vector<std::vector<Point>> cycles() const {
      std::vector<std::vector<Point>> out;
      std::vector<bool>               seen(_images.size(), false);
      for (Point x = 0; x < _images.size(); ++x) {
        if (seen[x] || _images[x] == x) {
          continue;
        }
        std::vector<Point> c;
        for (Point y = x; !seen[y]; y = _images[y]) {
          seen[y] = true;
          c.push_back(y);
        }
        out.push_back(std::move(c));
      }
      return out;
    }

    /// Element order: lcm of the cycle lengths.
    BigInt order() const {
      BigInt r = 1;
      for (auto const& c : cycles()) {
        BigInt len = c.size();
        r          = r / boost::multiprecision::gcd(r, len) * len;
      }
      return r;
    }

    /// Disjoint-cycle notation with 1-based points, "()" for the identity.
    std::string to_string() const {
      auto cs = cycles();
      if (cs.empty()) {
        return "()";
      }
      std::string s;
      for (auto const& c : cs) {
        s += '(';
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (i != 0) {
            s += ',';
          }
          s += std::to_string(c[i] + 1);
        }
        s += ')';
      }
      return s;
    }

    friend bool operator==(Permutation const&, Permutation const&) = default;
    friend auto operator<=>(Permutation const&, Permutation const&) = default;

   private:
    std::vector<Point> _images;
  };

  namespace detail {
    inline void check_degrees(Permutation const& p, Permutation const& q) {
      if (p.degree() != q.degree()) {
        throw InputError("degree mismatch: " + std::to_string(p.degree())
                         + " vs " + std::to_string(q.degree()));
      }
    }
  }  // namespace detail

  /// x -> q(p(x)).
  inline Permutation compose(Permutation const& p, Permutation const& q) {
    detail::check_degrees(p, q);
    std::vector<Point> im(p.degree());
    for (Point x = 0; x < im.size(); ++x) {
      im[x] = q(p(x));
    }
    return Permutation(std::move(im), Permutation::unchecked);
  }

  inline Permutation operator*(Permutation const& p, Permutation const& q) {
    return compose(p, q);
  }

  inline Permutation inverse(Permutation const& p) {
    std::vector<Point> im(p.degree());
    for (Point x = 0; x < im.size(); ++x) {
      im[p(x)] = x;
    }
    return Permutation(std::move(im), Permutation::unchecked);
  }

  /// by^-1 * p * by.
  inline Permutation conjugate(Permutation const& p, Permutation const& by) {
    detail::check_degrees(p, by);
    std::vector<Point> im(p.degree());
    for (Point x = 0; x < im.size(); ++x) {
      im[by(x)] = by(p(x));
    }
    return Permutation(std::move(im), Permutation::unchecked);
  }

  /// a^-1 b^-1 a b.
  inline Permutation commutator(Permutation const& a, Permutation const& b) {
    return inverse(a) * inverse(b) * a * b;
  }

}  // namespace mindex

template <>
struct std::hash<mindex::Permutation> {
  std::size_t operator()(mindex::Permutation const& p) const noexcept {
    auto im = p.images();
    return boost::hash_range(im.begin(), im.end());
  }
};

#endif  // MINDEX_PERM_HPP_

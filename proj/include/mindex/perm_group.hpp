#ifndef MINDEX_PERM_GROUP_HPP_
#define MINDEX_PERM_GROUP_HPP_

// Permutation groups given by generators, and the usual toolbox on top of a
// deterministic Schreier-Sims stabilizer chain: order, membership, uniform
// random elements, orbits, block systems, action homomorphisms, normal
// closures and derived subgroups.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"

namespace mindex {

  ////////////////////////////////////////////////////////////////////////////
  // StabilizerChain
  ////////////////////////////////////////////////////////////////////////////

  //! Base and strong generating set.
  //!
  //! Level i stores the base point b_i, the strong generators that fix
  //! b_0, ..., b_{i-1}, the orbit of b_i under them, and a transversal whose
  //! k-th entry maps b_i to orbit[k]. Transversal entries are never replaced
  //! once set, so a Schreier generator that has been sifted successfully stays
  //! sifted while deeper levels grow; the builder only revisits new pairs.
  class StabilizerChain {
   public:
    struct Level {
      Point                     base_point;
      std::vector<Permutation>  generators;
      std::vector<Point>        orbit;
      std::vector<std::int32_t> position;  // point -> index in orbit, or -1
      std::vector<Permutation>  transversal;
      std::vector<Permutation>  inverse_transversal;
    };

    StabilizerChain() = default;

    /// Runs Schreier-Sims on the given generators. Points in initial_base
    /// become the leading base points, in order, even when their orbits are
    /// trivial; further base points are appended as needed.
    StabilizerChain(std::size_t                  degree,
                    std::span<Permutation const> generators,
                    std::span<Point const>       initial_base = {})
        : _degree(degree) {
      for (Point b : initial_base) {
        if (b >= degree) {
          throw InputError("base point out of range");
        }
        push_level(b);
      }
      for (auto const& g : generators) {
        if (g.degree() != degree) {
          throw InputError("generator degree " + std::to_string(g.degree())
                           + " does not match group degree "
                           + std::to_string(degree));
        }
        extend(g);
      }
    }

    std::size_t degree() const noexcept {
      return _degree;
    }

    std::size_t depth() const noexcept {
      return _levels.size();
    }

    Level const& level(std::size_t i) const {
      return _levels.at(i);
    }

    std::vector<Point> base() const {
      std::vector<Point> b;
      for (auto const& l : _levels) {
        b.push_back(l.base_point);
      }
      return b;
    }

    BigInt order() const {
      BigInt r = 1;
      for (auto const& l : _levels) {
        r *= l.orbit.size();
      }
      return r;
    }

    /// Strips g through levels first, first+1, ...; returns the residue and
    /// the level at which stripping stopped (depth() if it went through).
    std::pair<Permutation, std::size_t> sift(Permutation g,
                                             std::size_t first = 0) const {
      for (std::size_t i = first; i < _levels.size(); ++i) {
        auto const& l   = _levels[i];
        auto        pos = l.position[g(l.base_point)];
        if (pos < 0) {
          return {std::move(g), i};
        }
        g = g * l.inverse_transversal[pos];
      }
      return {std::move(g), _levels.size()};
    }

    bool contains(Permutation const& g) const {
      detail::check_degrees(g, Permutation::identity(_degree));
      auto [h, lvl] = sift(g);
      return lvl == _levels.size() && h.is_identity();
    }

    /// Adds g to the group generated so far. Returns false if g was already
    /// a member.
    bool extend(Permutation const& g) {
      auto [h, j] = sift(g);
      if (j == _levels.size() && h.is_identity()) {
        return false;
      }
      if (j == _levels.size()) {
        push_level(first_moved_off_base(h));
      }
      for (std::size_t l = 0; l <= j; ++l) {
        add_generator(l, h);
      }
      complete(j);
      return true;
    }

    /// Uniform random element: one uniform transversal entry per level.
    Permutation random_element(std::mt19937_64& rng) const {
      Permutation g = Permutation::identity(_degree);
      for (std::size_t i = _levels.size(); i-- > 0;) {
        auto const& l = _levels[i];
        std::uniform_int_distribution<std::size_t> pick(0, l.orbit.size() - 1);
        g = g * l.transversal[pick(rng)];
      }
      return g;
    }

    /// Every element exactly once; the identity comes first.
    std::vector<Permutation> elements() const {
      std::vector<Permutation> out{Permutation::identity(_degree)};
      for (std::size_t i = _levels.size(); i-- > 0;) {
        auto const&              l = _levels[i];
        std::vector<Permutation> next;
        next.reserve(out.size() * l.orbit.size());
        for (auto const& t : l.transversal) {
          for (auto const& x : out) {
            next.push_back(x * t);
          }
        }
        out = std::move(next);
      }
      return out;
    }

    std::vector<Permutation> strong_generators() const {
      std::vector<Permutation> out;
      if (!_levels.empty()) {
        out = _levels.front().generators;
      }
      return out;
    }

   private:
    void push_level(Point b) {
      Level l;
      l.base_point = b;
      l.orbit      = {b};
      l.position.assign(_degree, -1);
      l.position[b] = 0;
      l.transversal.push_back(Permutation::identity(_degree));
      l.inverse_transversal.push_back(Permutation::identity(_degree));
      _levels.push_back(std::move(l));
      _checked.emplace_back();
    }

    Point first_moved_off_base(Permutation const& h) const {
      for (Point x = 0; x < _degree; ++x) {
        if (h(x) != x) {
          return x;
        }
      }
      return 0;  // unreachable for non-identity h
    }

    void add_generator(std::size_t i, Permutation const& g) {
      auto& l = _levels[i];
      l.generators.push_back(g);
      std::size_t const old = l.orbit.size();
      for (std::size_t k = 0; k < old; ++k) {
        try_extend_orbit(l, k, l.generators.size() - 1);
      }
      for (std::size_t k = old; k < l.orbit.size(); ++k) {
        for (std::size_t s = 0; s < l.generators.size(); ++s) {
          try_extend_orbit(l, k, s);
        }
      }
    }

    static void try_extend_orbit(Level& l, std::size_t k, std::size_t s) {
      Point const gamma = l.generators[s](l.orbit[k]);
      if (l.position[gamma] >= 0) {
        return;
      }
      l.position[gamma] = static_cast<std::int32_t>(l.orbit.size());
      l.orbit.push_back(gamma);
      auto t = l.transversal[k] * l.generators[s];
      l.inverse_transversal.push_back(inverse(t));
      l.transversal.push_back(std::move(t));
    }

    bool is_checked(std::size_t i, std::size_t k, std::size_t s) {
      auto& c = _checked[i];
      if (c.size() <= k) {
        c.resize(k + 1);
      }
      if (c[k].size() <= s) {
        c[k].resize(s + 1, false);
      }
      if (c[k][s]) {
        return true;
      }
      c[k][s] = true;
      return false;
    }

    // Sifts every Schreier generator of levels start, start-1, ..., 0 through
    // the levels below it, adding residues as new strong generators.
    void complete(std::size_t start) {
      std::ptrdiff_t i = static_cast<std::ptrdiff_t>(start);
      if (i >= static_cast<std::ptrdiff_t>(_levels.size())) {
        i = static_cast<std::ptrdiff_t>(_levels.size()) - 1;
      }
      while (i >= 0) {
        bool restarted = false;
        auto lvl       = static_cast<std::size_t>(i);
        for (std::size_t k = 0; k < _levels[lvl].orbit.size() && !restarted;
             ++k) {
          for (std::size_t s = 0; s < _levels[lvl].generators.size(); ++s) {
            if (is_checked(lvl, k, s)) {
              continue;
            }
            auto const& l     = _levels[lvl];
            Point       gamma = l.generators[s](l.orbit[k]);
            auto        y     = l.transversal[k] * l.generators[s]
                     * l.inverse_transversal[l.position[gamma]];
            auto [h, j] = sift(std::move(y), lvl + 1);
            if (j == _levels.size() && h.is_identity()) {
              continue;
            }
            if (j == _levels.size()) {
              push_level(first_moved_off_base(h));
            }
            for (std::size_t m = lvl + 1; m <= j; ++m) {
              add_generator(m, h);
            }
            i         = static_cast<std::ptrdiff_t>(j);
            restarted = true;
            break;
          }
        }
        if (!restarted) {
          --i;
        }
      }
    }

    std::size_t                                 _degree = 0;
    std::vector<Level>                          _levels;
    std::vector<std::vector<std::vector<bool>>> _checked;
  };

  ////////////////////////////////////////////////////////////////////////////
  // PermGroup
  ////////////////////////////////////////////////////////////////////////////

  //! A permutation group of degree n given by generators, together with its
  //! stabilizer chain (built on construction, immutable afterwards).
  class PermGroup {
   public:
    PermGroup(std::size_t degree, std::vector<Permutation> generators)
        : _degree(degree) {
      if (degree == 0) {
        throw InputError("permutation group degree must be positive");
      }
      if (generators.empty()) {
        throw InputError("permutation group needs at least one generator");
      }
      std::unordered_set<Permutation> seen;
      for (auto& g : generators) {
        if (g.degree() != degree) {
          throw InputError("generator degree " + std::to_string(g.degree())
                           + " does not match group degree "
                           + std::to_string(degree));
        }
        if (!g.is_identity() && seen.insert(g).second) {
          _generators.push_back(std::move(g));
        }
      }
      if (_generators.empty()) {
        _generators.push_back(Permutation::identity(degree));
      }
      _chain = std::make_shared<StabilizerChain const>(degree, _generators);
    }

    /// Adopts a chain already known to describe <generators>.
    PermGroup(std::size_t              degree,
              std::vector<Permutation> generators,
              StabilizerChain          chain)
        : _degree(degree),
          _generators(std::move(generators)),
          _chain(std::make_shared<StabilizerChain const>(std::move(chain))) {
      if (_generators.empty()) {
        _generators.push_back(Permutation::identity(degree));
      }
    }

    static PermGroup trivial(std::size_t degree) {
      return PermGroup(degree, {Permutation::identity(degree)});
    }

    std::size_t degree() const noexcept {
      return _degree;
    }

    std::vector<Permutation> const& generators() const noexcept {
      return _generators;
    }

    StabilizerChain const& chain() const noexcept {
      return *_chain;
    }

    BigInt order() const {
      return _chain->order();
    }

    bool is_trivial() const {
      return _chain->order() == 1;
    }

    bool contains(Permutation const& g) const {
      return _chain->contains(g);
    }

    /// True if this group is contained in other (same degree).
    bool is_subgroup_of(PermGroup const& other) const {
      return std::all_of(_generators.begin(),
                         _generators.end(),
                         [&](auto const& g) { return other.contains(g); });
    }

   private:
    std::size_t                            _degree;
    std::vector<Permutation>               _generators;
    std::shared_ptr<StabilizerChain const> _chain;
  };

  inline StabilizerChain build_bsgs(PermGroup const& g) {
    return StabilizerChain(g.degree(), g.generators());
  }

  inline BigInt order(StabilizerChain const& chain) {
    return chain.order();
  }

  inline bool contains(StabilizerChain const& chain, Permutation const& p) {
    return chain.contains(p);
  }

  inline Permutation random_element(StabilizerChain const& chain,
                                    std::mt19937_64&       rng) {
    return chain.random_element(rng);
  }

  ////////////////////////////////////////////////////////////////////////////
  // Orbits
  ////////////////////////////////////////////////////////////////////////////

  /// Sorted orbit of point under the generators of g.
  inline std::vector<Point> orbit(PermGroup const& g, Point point) {
    if (point >= g.degree()) {
      throw InputError("point " + std::to_string(point + 1)
                       + " out of range for degree "
                       + std::to_string(g.degree()));
    }
    std::vector<bool>  seen(g.degree(), false);
    std::vector<Point> out{point};
    seen[point] = true;
    for (std::size_t k = 0; k < out.size(); ++k) {
      for (auto const& s : g.generators()) {
        Point y = s(out[k]);
        if (!seen[y]) {
          seen[y] = true;
          out.push_back(y);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// All orbits, ordered by least point.
  inline std::vector<std::vector<Point>> orbits(PermGroup const& g) {
    std::vector<std::vector<Point>> out;
    std::vector<bool>               seen(g.degree(), false);
    for (Point x = 0; x < g.degree(); ++x) {
      if (!seen[x]) {
        auto o = orbit(g, x);
        for (Point y : o) {
          seen[y] = true;
        }
        out.push_back(std::move(o));
      }
    }
    return out;
  }

  inline bool is_transitive(PermGroup const& g) {
    return orbit(g, 0).size() == g.degree();
  }

  ////////////////////////////////////////////////////////////////////////////
  // Normal closure and derived subgroup
  ////////////////////////////////////////////////////////////////////////////

  /// Smallest subgroup containing seeds that is normalised by g.
  inline PermGroup normal_closure(PermGroup const&             g,
                                  std::span<Permutation const> seeds) {
    StabilizerChain          chain(g.degree(), {});
    std::vector<Permutation> gens;
    std::vector<Permutation> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
      Permutation c = std::move(queue.back());
      queue.pop_back();
      if (c.degree() != g.degree()) {
        throw InputError("seed degree does not match group degree");
      }
      if (!chain.extend(c)) {
        continue;
      }
      for (auto const& s : g.generators()) {
        queue.push_back(conjugate(c, s));
      }
      gens.push_back(std::move(c));
    }
    return PermGroup(g.degree(), std::move(gens), std::move(chain));
  }

  inline PermGroup normal_closure(PermGroup const&                   g,
                                  std::initializer_list<Permutation> seeds) {
    std::vector<Permutation> v(seeds);
    return normal_closure(g, std::span<Permutation const>(v));
  }

  /// Normal closure of the commutators of all generator pairs.
  inline PermGroup derived_subgroup(PermGroup const& g) {
    std::vector<Permutation> seeds;
    auto const&              gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        seeds.push_back(commutator(gens[i], gens[j]));
      }
    }
    return normal_closure(g, seeds);
  }

  /// The last term of the derived series.
  inline PermGroup perfect_core(PermGroup const& g) {
    PermGroup cur = g;
    while (true) {
      PermGroup next = derived_subgroup(cur);
      if (next.order() == cur.order()) {
        return cur;
      }
      cur = std::move(next);
    }
  }

  ////////////////////////////////////////////////////////////////////////////
  // Block systems
  ////////////////////////////////////////////////////////////////////////////

  //! A G-invariant partition of the points. Blocks are sorted, and ordered by
  //! least point; block_of maps each point to its block index.
  struct BlockSystem {
    std::vector<std::vector<Point>> blocks;
    std::vector<std::size_t>        block_of;

    std::size_t block_size() const {
      return blocks.empty() ? 0 : blocks.front().size();
    }

    friend bool operator==(BlockSystem const&, BlockSystem const&) = default;
  };

  namespace detail {
    inline Point uf_find(std::vector<Point>& parent, Point x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x         = parent[x];
      }
      return x;
    }

    inline BlockSystem partition_from_parents(std::vector<Point>& parent) {
      BlockSystem               bs;
      std::size_t               n = parent.size();
      std::vector<std::int64_t> id_of_root(n, -1);
      bs.block_of.resize(n);
      for (Point x = 0; x < n; ++x) {
        Point r = uf_find(parent, x);
        if (id_of_root[r] < 0) {
          id_of_root[r] = static_cast<std::int64_t>(bs.blocks.size());
          bs.blocks.emplace_back();
        }
        bs.block_of[x] = static_cast<std::size_t>(id_of_root[r]);
        bs.blocks[bs.block_of[x]].push_back(x);
      }
      return bs;
    }

    // Finest block system in which a and b share a block (union-find
    // refinement: every merged pair is pushed through every generator).
    inline BlockSystem minimal_block_containing(PermGroup const& g,
                                                Point            a,
                                                Point            b) {
      std::vector<Point> parent(g.degree());
      std::iota(parent.begin(), parent.end(), Point{0});
      std::vector<std::pair<Point, Point>> queue{{a, b}};
      parent[uf_find(parent, b)] = uf_find(parent, a);
      while (!queue.empty()) {
        auto [x, y] = queue.back();
        queue.pop_back();
        for (auto const& s : g.generators()) {
          Point rx = uf_find(parent, s(x));
          Point ry = uf_find(parent, s(y));
          if (rx != ry) {
            parent[ry] = rx;
            queue.emplace_back(s(x), s(y));
          }
        }
      }
      return partition_from_parents(parent);
    }
  }  // namespace detail

  /// A nontrivial block system with the smallest possible block size (> 1),
  /// the lexicographically least such one; std::nullopt if g is primitive.
  /// Throws InputError if g is not transitive.
  inline std::optional<BlockSystem> minimal_block_system(PermGroup const& g) {
    if (!is_transitive(g)) {
      throw InputError("minimal_block_system: group is not transitive");
    }
    std::optional<BlockSystem> best;
    std::size_t const          n = g.degree();
    for (Point b = 1; b < n; ++b) {
      auto bs = detail::minimal_block_containing(g, 0, b);
      if (bs.blocks.size() == 1) {
        continue;
      }
      if (!best || bs.block_size() < best->block_size()
          || (bs.block_size() == best->block_size()
              && bs.blocks < best->blocks)) {
        best = std::move(bs);
      }
    }
    return best;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Action homomorphisms
  ////////////////////////////////////////////////////////////////////////////

  struct ActionImage {
    PermGroup image;
    PermGroup kernel;
  };

  //! Either an invariant set of points (typically an orbit) or a block system.
  using ActionDomain = std::variant<std::vector<Point>, BlockSystem>;

  namespace detail {
    // Images of the generators of g on the domain, indexed 0..d-1.
    inline std::vector<Permutation> induced_generators(PermGroup const&    g,
                                                       ActionDomain const& dom,
                                                       std::size_t&        d) {
      std::vector<Permutation> out;
      if (auto const* pts = std::get_if<std::vector<Point>>(&dom)) {
        d = pts->size();
        if (d == 0) {
          throw InputError("action domain is empty");
        }
        std::vector<std::int64_t> idx(g.degree(), -1);
        for (std::size_t k = 0; k < d; ++k) {
          if ((*pts)[k] >= g.degree() || idx[(*pts)[k]] >= 0) {
            throw InputError("action domain has invalid or repeated points");
          }
          idx[(*pts)[k]] = static_cast<std::int64_t>(k);
        }
        for (auto const& s : g.generators()) {
          std::vector<Point> im(d);
          for (std::size_t k = 0; k < d; ++k) {
            auto j = idx[s((*pts)[k])];
            if (j < 0) {
              throw InputError("action domain is not invariant");
            }
            im[k] = static_cast<Point>(j);
          }
          out.emplace_back(std::move(im), Permutation::unchecked);
        }
      } else {
        auto const& bs = std::get<BlockSystem>(dom);
        d              = bs.blocks.size();
        if (bs.block_of.size() != g.degree() || d == 0) {
          throw InputError("block system does not cover the points");
        }
        for (auto const& s : g.generators()) {
          std::vector<Point> im(d);
          for (std::size_t k = 0; k < d; ++k) {
            auto const& blk    = bs.blocks[k];
            std::size_t target = bs.block_of[s(blk.front())];
            for (Point x : blk) {
              if (bs.block_of[s(x)] != target) {
                throw InputError("partition is not a block system");
              }
            }
            im[k] = static_cast<Point>(target);
          }
          out.emplace_back(Permutation(std::move(im)));
        }
      }
      return out;
    }
  }  // namespace detail

  /// Induced action on an invariant point set or on the blocks of a block
  /// system. The kernel is read off a chain for the diagonal action on
  /// points + domain whose base starts with the domain.
  inline ActionImage action_homomorphism(PermGroup const&    g,
                                         ActionDomain const& dom) {
    std::size_t d       = 0;
    auto        induced = detail::induced_generators(g, dom, d);
    std::size_t n       = g.degree();

    std::vector<Permutation> diag;
    for (std::size_t i = 0; i < g.generators().size(); ++i) {
      std::vector<Point> im(n + d);
      for (Point x = 0; x < n; ++x) {
        im[x] = g.generators()[i](x);
      }
      for (Point k = 0; k < d; ++k) {
        im[n + k] = static_cast<Point>(n) + induced[i](k);
      }
      diag.emplace_back(std::move(im), Permutation::unchecked);
    }
    std::vector<Point> base(d);
    std::iota(base.begin(), base.end(), static_cast<Point>(n));
    StabilizerChain chain(n + d, diag, base);

    std::vector<Permutation> kernel_gens;
    if (chain.depth() > d) {
      for (auto const& s : chain.level(d).generators) {
        std::vector<Point> im(s.images().begin(), s.images().begin() + n);
        kernel_gens.emplace_back(std::move(im), Permutation::unchecked);
      }
    }
    if (kernel_gens.empty()) {
      kernel_gens.push_back(Permutation::identity(n));
    }
    return ActionImage{PermGroup(d, std::move(induced)),
                       PermGroup(n, std::move(kernel_gens))};
  }

}  // namespace mindex

#endif  // MINDEX_PERM_GROUP_HPP_

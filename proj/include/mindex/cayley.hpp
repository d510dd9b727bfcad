#ifndef MINDEX_CAYLEY_HPP_
#define MINDEX_CAYLEY_HPP_

// Groups given by multiplication tables, and subgroups of them stored as
// membership bitsets.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "errors.hpp"
#include "simple_id.hpp"

namespace mindex {

  using Element = std::uint32_t;
  using Bitset  = boost::dynamic_bitset<std::uint64_t>;

  ////////////////////////////////////////////////////////////////////////////
  // CayleyGroup
  ////////////////////////////////////////////////////////////////////////////

  //! A finite group of order m on the elements 0..m-1 with 0 the identity.
  //!
  //! Inverses, element orders, a small generating set and the conjugacy
  //! classes are computed once on construction. Orders up to 65535 are
  //! supported.
  class CayleyGroup {
   public:
    static constexpr std::size_t max_order = 65535;

    struct Relabeling {
      bool    relabeled         = false;
      Element original_identity = 0;
    };

    CayleyGroup() = default;

    /// Checks the group axioms on a raw table: square, entries in range,
    /// Latin rows and columns, an identity, and associativity on all triples.
    /// An identity found away from index 0 is swapped into place and
    /// reported through rel.
    static CayleyGroup validate(std::vector<std::vector<std::int64_t>> const& raw,
                                Relabeling* rel = nullptr) {
      std::size_t const m = raw.size();
      if (m == 0) {
        throw InputError("Cayley table is empty");
      }
      if (m > max_order) {
        throw InputError("Cayley table order " + std::to_string(m)
                         + " exceeds the supported maximum 65535");
      }
      std::vector<std::uint16_t> t(m * m);
      for (std::size_t a = 0; a < m; ++a) {
        if (raw[a].size() != m) {
          throw InputError("Cayley table is not square: row "
                           + std::to_string(a) + " has "
                           + std::to_string(raw[a].size()) + " entries");
        }
        for (std::size_t b = 0; b < m; ++b) {
          auto v = raw[a][b];
          if (v < 0 || static_cast<std::size_t>(v) >= m) {
            throw InputError("Cayley table entry out of range at ("
                             + std::to_string(a) + "," + std::to_string(b)
                             + ")");
          }
          t[a * m + b] = static_cast<std::uint16_t>(v);
        }
      }
      for (std::size_t a = 0; a < m; ++a) {
        std::vector<bool> row(m, false), col(m, false);
        for (std::size_t b = 0; b < m; ++b) {
          if (row[t[a * m + b]]) {
            throw InputError("not a Latin square: row " + std::to_string(a)
                             + " repeats element "
                             + std::to_string(t[a * m + b]));
          }
          if (col[t[b * m + a]]) {
            throw InputError("not a Latin square: column " + std::to_string(a)
                             + " repeats element "
                             + std::to_string(t[b * m + a]));
          }
          row[t[a * m + b]] = true;
          col[t[b * m + a]] = true;
        }
      }
      std::optional<std::size_t> e;
      for (std::size_t a = 0; a < m && !e; ++a) {
        bool ok = true;
        for (std::size_t x = 0; x < m && ok; ++x) {
          ok = t[a * m + x] == x && t[x * m + a] == x;
        }
        if (ok) {
          e = a;
        }
      }
      if (!e) {
        throw InputError("identity axiom fails: no two-sided identity element");
      }
      if (*e != 0) {
        // swap the labels 0 and e
        auto relabel = [&](std::size_t x) -> std::size_t {
          return x == 0 ? *e : (x == *e ? 0 : x);
        };
        std::vector<std::uint16_t> u(m * m);
        for (std::size_t a = 0; a < m; ++a) {
          for (std::size_t b = 0; b < m; ++b) {
            u[relabel(a) * m + relabel(b)]
                = static_cast<std::uint16_t>(relabel(t[a * m + b]));
          }
        }
        t = std::move(u);
      }
      if (rel != nullptr) {
        rel->relabeled         = *e != 0;
        rel->original_identity = static_cast<Element>(*e);
      }
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          std::size_t ab = t[a * m + b];
          for (std::size_t c = 0; c < m; ++c) {
            if (t[ab * m + c] != t[a * m + t[b * m + c]]) {
              throw InputError("associativity fails for the triple ("
                               + std::to_string(a) + "," + std::to_string(b)
                               + "," + std::to_string(c) + ")");
            }
          }
        }
      }
      return CayleyGroup(m, std::move(t));
    }

    /// For tables known to satisfy the axioms with identity 0 (quotients,
    /// element enumerations of permutation groups). Nothing is checked.
    static CayleyGroup from_trusted(std::size_t m, std::vector<std::uint16_t> t) {
      return CayleyGroup(m, std::move(t));
    }

    std::size_t size() const noexcept {
      return _m;
    }

    Element mul(Element a, Element b) const noexcept {
      return _table[a * _m + b];
    }

    Element inv(Element a) const noexcept {
      return _inv[a];
    }

    /// by^-1 a by
    Element conj(Element a, Element by) const noexcept {
      return mul(mul(_inv[by], a), by);
    }

    std::size_t order_of(Element a) const noexcept {
      return _orders[a];
    }

    std::vector<std::size_t> const& element_orders() const noexcept {
      return _orders;
    }

    std::vector<Element> const& generators() const noexcept {
      return _gens;
    }

    std::vector<std::vector<Element>> const& classes() const noexcept {
      return _classes;
    }

    std::size_t class_of(Element a) const noexcept {
      return _class_of[a];
    }

    std::vector<std::vector<Element>> raw_table() const {
      std::vector<std::vector<Element>> out(_m, std::vector<Element>(_m));
      for (std::size_t a = 0; a < _m; ++a) {
        for (std::size_t b = 0; b < _m; ++b) {
          out[a][b] = mul(static_cast<Element>(a), static_cast<Element>(b));
        }
      }
      return out;
    }

    Fingerprint fingerprint() const {
      Fingerprint f;
      f.order = _m;
      for (auto o : _orders) {
        f.element_orders.insert(BigInt(o));
      }
      return f;
    }

   private:
    CayleyGroup(std::size_t m, std::vector<std::uint16_t> t)
        : _m(m), _table(std::move(t)) {
      _inv.resize(m);
      for (Element a = 0; a < m; ++a) {
        for (Element b = 0; b < m; ++b) {
          if (mul(a, b) == 0) {
            _inv[a] = b;
            break;
          }
        }
      }
      _orders.resize(m);
      for (Element a = 0; a < m; ++a) {
        // x = a^k
        std::size_t k = 1;
        for (Element x = a; x != 0; x = mul(x, a)) {
          ++k;
        }
        _orders[a] = a == 0 ? 1 : k;
      }
      compute_generators();
      compute_classes();
    }

    void compute_generators();
    void compute_classes();

    std::size_t                       _m = 0;
    std::vector<std::uint16_t>        _table;
    std::vector<Element>              _inv;
    std::vector<std::size_t>          _orders;
    std::vector<Element>              _gens;
    std::vector<std::vector<Element>> _classes;
    std::vector<std::size_t>          _class_of;
  };

  inline CayleyGroup validate_cayley(std::vector<std::vector<std::int64_t>> const& raw,
                                     CayleyGroup::Relabeling* rel = nullptr) {
    return CayleyGroup::validate(raw, rel);
  }

  ////////////////////////////////////////////////////////////////////////////
  // SubgroupSet
  ////////////////////////////////////////////////////////////////////////////

  //! A subgroup as a membership bitset over the elements of its group. The
  //! bitset is the canonical key: two SubgroupSets are equal iff they have
  //! the same elements. Ordered by (size, sorted element list).
  class SubgroupSet {
   public:
    SubgroupSet() = default;

    explicit SubgroupSet(Bitset members)
        : _members(std::move(members)), _size(_members.count()) {}

    static SubgroupSet trivial(std::size_t m) {
      Bitset b(m);
      b.set(0);
      return SubgroupSet(std::move(b));
    }

    static SubgroupSet whole(std::size_t m) {
      Bitset b(m);
      b.set();
      return SubgroupSet(std::move(b));
    }

    bool contains(Element x) const {
      return _members.test(x);
    }

    std::size_t size() const noexcept {
      return _size;
    }

    Bitset const& members() const noexcept {
      return _members;
    }

    std::vector<Element> elements() const {
      std::vector<Element> out;
      out.reserve(_size);
      for (auto i = _members.find_first(); i != Bitset::npos;
           i      = _members.find_next(i)) {
        out.push_back(static_cast<Element>(i));
      }
      return out;
    }

    bool is_subset_of(SubgroupSet const& other) const {
      return _members.is_subset_of(other._members);
    }

    friend bool operator==(SubgroupSet const& a, SubgroupSet const& b) {
      return a._members == b._members;
    }

    friend bool operator<(SubgroupSet const& a, SubgroupSet const& b) {
      if (a._size != b._size) {
        return a._size < b._size;
      }
      auto i = a._members.find_first();
      auto j = b._members.find_first();
      while (i != Bitset::npos && j != Bitset::npos) {
        if (i != j) {
          return i < j;
        }
        i = a._members.find_next(i);
        j = b._members.find_next(j);
      }
      return false;
    }

   private:
    Bitset      _members;
    std::size_t _size = 0;
  };

  inline void sort_unique(std::vector<SubgroupSet>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  ////////////////////////////////////////////////////////////////////////////
  // Closures
  ////////////////////////////////////////////////////////////////////////////

  namespace detail {

    //! A subgroup under construction: members, the same elements as a list,
    //! and generators. Invariant: list is closed under right multiplication
    //! by every generator.
    struct Closure {
      Bitset               members;
      std::vector<Element> list;
      std::vector<Element> gens;

      explicit Closure(std::size_t m) : members(m), list{0} {
        members.set(0);
      }

      // Adds generators one at a time. Returns false as soon as the size
      // exceeds limit (the closure is then left partial).
      bool add(CayleyGroup const&     g,
               std::span<Element const> extra,
               std::size_t            limit = static_cast<std::size_t>(-1)) {
        for (Element e : extra) {
          if (members.test(e)) {
            continue;
          }
          gens.push_back(e);
          std::size_t const old = list.size();
          for (std::size_t k = 0; k < old; ++k) {
            push(g.mul(list[k], e));
          }
          for (std::size_t k = old; k < list.size(); ++k) {
            for (Element s : gens) {
              push(g.mul(list[k], s));
            }
            if (list.size() > limit) {
              return false;
            }
          }
          if (list.size() > limit) {
            return false;
          }
        }
        return true;
      }

      bool add(CayleyGroup const& g, Element e, std::size_t limit = static_cast<std::size_t>(-1)) {
        return add(g, std::span<Element const>(&e, 1), limit);
      }

      void push(Element x) {
        if (!members.test(x)) {
          members.set(x);
          list.push_back(x);
        }
      }

      SubgroupSet subgroup() const {
        return SubgroupSet(members);
      }
    };

    // Closure seeded with an existing subgroup (generators recomputed).
    inline Closure closure_of(CayleyGroup const& g, SubgroupSet const& h) {
      Closure c(g.size());
      for (Element x : h.elements()) {
        if (!c.members.test(x)) {
          c.add(g, x);
        }
      }
      return c;
    }

    // Smallest element of each right coset Hx other than H itself.
    inline std::vector<Element> right_coset_reps(CayleyGroup const& g,
                                                 Bitset const&      h,
                                                 std::vector<Element> const& hlist) {
      std::size_t const    m = g.size();
      Bitset               seen(m);
      std::vector<Element> reps;
      for (Element x = 0; x < m; ++x) {
        if (seen.test(x)) {
          continue;
        }
        for (Element y : hlist) {
          seen.set(g.mul(y, x));
        }
        if (!h.test(x)) {
          reps.push_back(x);
        }
      }
      return reps;
    }

  }  // namespace detail

  inline void CayleyGroup::compute_generators() {
    std::vector<Element> cand(_m);
    std::iota(cand.begin(), cand.end(), Element{0});
    std::stable_sort(cand.begin(), cand.end(), [this](Element a, Element b) {
      return _orders[a] > _orders[b];
    });
    detail::Closure c(_m);
    for (Element x : cand) {
      if (c.list.size() == _m) {
        break;
      }
      c.add(*this, x);
    }
    _gens = c.gens;
  }

  inline void CayleyGroup::compute_classes() {
    _class_of.assign(_m, static_cast<std::size_t>(-1));
    for (Element x = 0; x < _m; ++x) {
      if (_class_of[x] != static_cast<std::size_t>(-1)) {
        continue;
      }
      std::size_t const    id = _classes.size();
      std::vector<Element> cls{x};
      _class_of[x] = id;
      for (std::size_t k = 0; k < cls.size(); ++k) {
        for (Element s : _gens) {
          Element y = conj(cls[k], s);
          if (_class_of[y] == static_cast<std::size_t>(-1)) {
            _class_of[y] = id;
            cls.push_back(y);
          }
        }
      }
      std::sort(cls.begin(), cls.end());
      _classes.push_back(std::move(cls));
    }
  }

  ////////////////////////////////////////////////////////////////////////////
  // Basic subgroup operations
  ////////////////////////////////////////////////////////////////////////////

  inline void check_element(CayleyGroup const& g, Element x) {
    if (x >= g.size()) {
      throw InputError("element " + std::to_string(x)
                       + " out of range for group of order "
                       + std::to_string(g.size()));
    }
  }

  /// Breadth-first closure of seeds under products.
  inline SubgroupSet generated_subgroup(CayleyGroup const&       g,
                                        std::span<Element const> seeds) {
    for (Element x : seeds) {
      check_element(g, x);
    }
    detail::Closure c(g.size());
    c.add(g, seeds);
    return c.subgroup();
  }

  inline SubgroupSet generated_subgroup(CayleyGroup const&             g,
                                        std::initializer_list<Element> seeds) {
    std::vector<Element> v(seeds);
    return generated_subgroup(g, std::span<Element const>(v));
  }

  /// Identity, closure under products, and Lagrange divisibility.
  inline bool is_subgroup(CayleyGroup const& g, Bitset const& b) {
    if (b.size() != g.size() || !b.test(0)) {
      return false;
    }
    SubgroupSet h(b);
    if (g.size() % h.size() != 0) {
      return false;
    }
    auto el = h.elements();
    for (Element x : el) {
      for (Element y : el) {
        if (!b.test(g.mul(x, y))) {
          return false;
        }
      }
    }
    return true;
  }

  inline bool is_normal(CayleyGroup const& g, SubgroupSet const& h) {
    for (Element x : h.elements()) {
      for (Element s : g.generators()) {
        if (!h.contains(g.conj(x, s))) {
          return false;
        }
      }
    }
    return true;
  }

  inline SubgroupSet intersection(SubgroupSet const& a, SubgroupSet const& b) {
    return SubgroupSet(a.members() & b.members());
  }

  /// The set {ab : a in A, b in B} (a subgroup when A or B is normal).
  inline Bitset product_set(CayleyGroup const& g,
                            SubgroupSet const& a,
                            SubgroupSet const& b) {
    Bitset out(g.size());
    auto   bl = b.elements();
    for (Element x : a.elements()) {
      for (Element y : bl) {
        out.set(g.mul(x, y));
      }
    }
    return out;
  }

  /// Smallest normal subgroup containing seeds.
  inline SubgroupSet normal_closure(CayleyGroup const&       g,
                                    std::span<Element const> seeds) {
    std::vector<Element> cls;
    for (Element x : seeds) {
      check_element(g, x);
      auto const& c = g.classes()[g.class_of(x)];
      cls.insert(cls.end(), c.begin(), c.end());
    }
    detail::Closure c(g.size());
    c.add(g, cls);
    return c.subgroup();
  }

  inline SubgroupSet derived_subgroup(CayleyGroup const& g) {
    std::vector<Element> comms;
    auto const&          gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        Element a = gens[i], b = gens[j];
        comms.push_back(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
      }
    }
    return normal_closure(g, comms);
  }

  /// core_G(H): the elements whose whole conjugacy class lies in H.
  inline SubgroupSet core(CayleyGroup const& g, SubgroupSet const& h) {
    Bitset out(g.size());
    for (auto const& cls : g.classes()) {
      if (std::all_of(cls.begin(), cls.end(), [&](Element x) {
            return h.contains(x);
          })) {
        for (Element x : cls) {
          out.set(x);
        }
      }
    }
    return SubgroupSet(std::move(out));
  }

  /// Exact: the normal closure of every nonidentity class is the whole group.
  inline bool is_simple_cayley(CayleyGroup const& g) {
    if (g.size() == 1) {
      throw TrivialGroupError("simplicity is undefined for the trivial group");
    }
    for (std::size_t i = 1; i < g.classes().size(); ++i) {
      detail::Closure c(g.size());
      c.add(g, g.classes()[i]);
      if (c.list.size() != g.size()) {
        return false;
      }
    }
    return true;
  }

  /// True iff <H, x> = G for every x outside H. Throws if H = G.
  inline bool is_maximal(CayleyGroup const& g, SubgroupSet const& h) {
    if (h.size() == g.size()) {
      throw InputError("is_maximal: subgroup is the whole group");
    }
    auto base = detail::closure_of(g, h);
    for (Element x : detail::right_coset_reps(g, h.members(), base.list)) {
      auto c = base;
      if (c.add(g, x, g.size() / 2)) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Quotients
  ////////////////////////////////////////////////////////////////////////////

  struct Quotient {
    CayleyGroup          group;
    std::vector<Element> projection;      // element of G -> coset index
    std::vector<Element> representative;  // coset index -> least element
  };

  /// G/N on the cosets of N, numbered by least element (N itself is 0).
  inline Quotient quotient(CayleyGroup const& g, SubgroupSet const& n) {
    if (!n.contains(0) || !is_normal(g, n)) {
      throw InputError("quotient: subgroup is not normal");
    }
    std::size_t const          m = g.size();
    auto                       nl = n.elements();
    std::vector<Element>       proj(m, static_cast<Element>(-1));
    std::vector<Element>       reps;
    for (Element x = 0; x < m; ++x) {
      if (proj[x] != static_cast<Element>(-1)) {
        continue;
      }
      auto id = static_cast<Element>(reps.size());
      reps.push_back(x);
      for (Element y : nl) {
        proj[g.mul(y, x)] = id;
      }
    }
    std::size_t const          k = reps.size();
    std::vector<std::uint16_t> t(k * k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        t[a * k + b] = static_cast<std::uint16_t>(proj[g.mul(reps[a], reps[b])]);
      }
    }
    for (Element a = 0; a < m; ++a) {
      for (Element b = 0; b < m; ++b) {
        if (proj[g.mul(a, b)] != t[proj[a] * k + proj[b]]) {
          throw InputError("quotient: projection is not a homomorphism");
        }
      }
    }
    return Quotient{CayleyGroup::from_trusted(k, std::move(t)),
                    std::move(proj),
                    std::move(reps)};
  }

  /// Preimage of a subgroup of G/N.
  inline SubgroupSet pullback(Quotient const& q, SubgroupSet const& h) {
    Bitset out(q.projection.size());
    for (std::size_t x = 0; x < q.projection.size(); ++x) {
      if (h.contains(q.projection[x])) {
        out.set(x);
      }
    }
    return SubgroupSet(std::move(out));
  }

  //! A subgroup as a group in its own right; element i of the new table is
  //! embedding[i] in the old one.
  struct SubgroupGroup {
    CayleyGroup          group;
    std::vector<Element> embedding;
  };

  inline SubgroupGroup as_group(CayleyGroup const& g, SubgroupSet const& h) {
    auto                  el = h.elements();
    std::vector<Element>  index(g.size(), static_cast<Element>(-1));
    for (std::size_t i = 0; i < el.size(); ++i) {
      index[el[i]] = static_cast<Element>(i);
    }
    std::size_t const          k = el.size();
    std::vector<std::uint16_t> t(k * k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        t[a * k + b] = static_cast<std::uint16_t>(index[g.mul(el[a], el[b])]);
      }
    }
    return SubgroupGroup{CayleyGroup::from_trusted(k, std::move(t)),
                         std::move(el)};
  }

  ////////////////////////////////////////////////////////////////////////////
  // Isaacs' index inequality
  ////////////////////////////////////////////////////////////////////////////

  //! Cardinalities behind |NU : NV| = |N||U||N∩V| / (|N||V||N∩U|) <= |U : V|.
  struct IsaacsReport {
    std::size_t n = 0, u = 0, v = 0;
    std::size_t nu = 0, nv = 0, n_cap_u = 0, n_cap_v = 0;
    bool        identity_holds   = false;  // |NU|/|NV| equals the formula
    bool        inequality_holds = false;  // |NU : NV| <= |U : V|

    std::size_t index_nu_nv() const {
      return nu / nv;
    }
    std::size_t index_u_v() const {
      return u / v;
    }
  };

  /// Requires N normal in G, U and V subgroups with V <= U.
  inline IsaacsReport isaacs_index_inequality(CayleyGroup const& g,
                                              SubgroupSet const& n,
                                              SubgroupSet const& u,
                                              SubgroupSet const& v) {
    for (auto const* s : {&n, &u, &v}) {
      if (!is_subgroup(g, s->members())) {
        throw InputError("isaacs_index_inequality: argument is not a subgroup");
      }
    }
    if (!is_normal(g, n)) {
      throw InputError("isaacs_index_inequality: N is not normal");
    }
    if (!v.is_subset_of(u)) {
      throw InputError("isaacs_index_inequality: V is not contained in U");
    }
    IsaacsReport r;
    r.n       = n.size();
    r.u       = u.size();
    r.v       = v.size();
    r.nu      = product_set(g, n, u).count();
    r.nv      = product_set(g, n, v).count();
    r.n_cap_u = intersection(n, u).size();
    r.n_cap_v = intersection(n, v).size();
    // |NU|/|NV| == (n u ncv)/(n v ncu), cross-multiplied
    BigInt lhs = BigInt(r.nu) * r.n * r.v * r.n_cap_u;
    BigInt rhs = BigInt(r.nv) * r.n * r.u * r.n_cap_v;
    r.identity_holds   = lhs == rhs && r.nu % r.nv == 0;
    r.inequality_holds = BigInt(r.nu) * r.v <= BigInt(r.u) * r.nv;
    return r;
  }

}  // namespace mindex

#endif  // MINDEX_CAYLEY_HPP_

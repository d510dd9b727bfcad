#ifndef MINDEX_KAPPA_HPP_
#define MINDEX_KAPPA_HPP_

// kappa(G), the smallest index of a proper subgroup.
//
// If H has minimal index then G/core_G(H) is simple, so kappa(G) is the least
// mu(S) over the simple groups S that occur as quotients G/N. For table
// groups all such N are enumerated directly. For permutation groups the
// quotients are gathered from the abelianization, from simple images of orbit
// and block actions, and (for orders up to cayley_bound) from the regular
// representation; when none of these settles the question, the composition
// factors give a lower bound that can still certify the answer.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "cayley.hpp"
#include "errors.hpp"
#include "maximal.hpp"
#include "perm_group.hpp"
#include "simple_id.hpp"

namespace mindex {

  struct KappaOptions {
    std::size_t   cayley_bound        = 5000;
    unsigned      trials              = 20;
    std::uint64_t seed                = 0;
    std::size_t   fingerprint_samples = 200;
    MaximalSearchOptions maximal{};
  };

  //! A simple group S together with how G maps onto it.
  struct SimpleQuotientWitness {
    SimpleType  type;
    std::string via;
    BigInt      kernel_order;
  };

  struct KappaResult {
    unsigned long         kappa = 0;
    SimpleQuotientWitness witness;
    // false: some simple quotient may have been missed; kappa is then only
    // an upper bound and lower_bound is what the composition factors allow.
    bool          complete    = true;
    unsigned long lower_bound = 0;
  };

  struct CompositionFactors {
    std::vector<SimpleType>                     factors;  // sorted
    std::vector<std::pair<BigInt, SimpleType>> chain_witness;
  };

  struct TopQuotients {
    std::vector<SimpleQuotientWitness> quotients;  // one per type, sorted
    bool                               complete = true;
  };

  ////////////////////////////////////////////////////////////////////////////
  // Helpers
  ////////////////////////////////////////////////////////////////////////////

  namespace detail {

    inline std::vector<std::pair<unsigned long, unsigned>>
    factorize(BigInt n) {
      std::vector<std::pair<unsigned long, unsigned>> out;
      for (unsigned long p = 2; BigInt(p) * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
          n /= p;
          ++e;
        }
        if (e > 0) {
          out.emplace_back(p, e);
        }
      }
      if (n > 1) {
        out.emplace_back(n.convert_to<unsigned long>(), 1);
      }
      return out;
    }

    inline void add_quotient(std::vector<SimpleQuotientWitness>& v,
                             SimpleQuotientWitness               w) {
      for (auto const& x : v) {
        if (x.type == w.type) {
          return;
        }
      }
      v.push_back(std::move(w));
    }

    inline void sort_quotients(std::vector<SimpleQuotientWitness>& v) {
      std::sort(v.begin(), v.end(), [](auto const& a, auto const& b) {
        return a.type < b.type;
      });
    }

    inline Permutation perm_power(Permutation const& x, BigInt e) {
      Permutation r = Permutation::identity(x.degree());
      Permutation b = x;
      while (e > 0) {
        if ((e & 1) != 0) {
          r = r * b;
        }
        b = b * b;
        e >>= 1;
      }
      return r;
    }

  }  // namespace detail

  //! Elements of a permutation group as a table group; element i of the
  //! table is elements[i], and 0 is the identity.
  struct PermCayley {
    CayleyGroup              group;
    std::vector<Permutation> elements;
  };

  /// Regular representation of G. Throws CapabilityError if |G| > bound.
  inline PermCayley to_cayley(PermGroup const& g, std::size_t bound = 5000) {
    BigInt const ord = g.order();
    if (ord > bound || ord > CayleyGroup::max_order) {
      throw CapabilityError("group order " + ord.str()
                            + " exceeds the Cayley bound "
                            + std::to_string(bound));
    }
    auto                                 el = g.chain().elements();
    std::unordered_map<Permutation, Element> index;
    index.reserve(el.size());
    for (std::size_t i = 0; i < el.size(); ++i) {
      index.emplace(el[i], static_cast<Element>(i));
    }
    std::size_t const          m = el.size();
    std::vector<std::uint16_t> t(m * m);
    std::vector<Point>         buf(g.degree());
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        t[a * m + b] = static_cast<std::uint16_t>(index.at(el[a] * el[b]));
      }
    }
    return PermCayley{CayleyGroup::from_trusted(m, std::move(t)),
                      std::move(el)};
  }

  /// Order plus the element orders of `samples` uniform random elements.
  inline Fingerprint fingerprint(PermGroup const& g,
                                 std::size_t      samples,
                                 std::uint64_t    seed) {
    Fingerprint f;
    f.order       = g.order();
    f.sample_size = samples;
    f.element_orders.insert(BigInt(1));
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      f.element_orders.insert(g.chain().random_element(rng).order());
    }
    return f;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Simplicity of permutation groups
  ////////////////////////////////////////////////////////////////////////////

  struct SimplicityVerdict {
    bool simple = false;
    // a proper nontrivial normal subgroup when simple == false
    std::optional<PermGroup> witness;
  };

  /// One-sided Monte Carlo: "not simple" always comes with a proper
  /// nontrivial normal subgroup; "simple" may be wrong with probability
  /// shrinking in trials. Non-perfect groups are decided exactly, and so are
  /// groups with a nontrivial orbit or block action kernel. Each random
  /// element x of order k contributes the normal closures of x and of every
  /// x^(k/p), p prime; the latter reach central and other small normal
  /// subgroups that random elements rarely hit.
  inline SimplicityVerdict is_simple_perm(PermGroup const& g,
                                          unsigned         trials,
                                          std::uint64_t    seed) {
    BigInt const ord = g.order();
    if (ord == 1) {
      throw TrivialGroupError("simplicity is undefined for the trivial group");
    }
    if (detail::is_prime_big(ord)) {
      return {true, std::nullopt};
    }
    auto derived = derived_subgroup(g);
    if (derived.order() != ord) {
      if (!derived.is_trivial()) {
        return {false, derived};
      }
      // abelian of composite order: an element of prime order
      for (auto const& x : g.generators()) {
        BigInt k = x.order();
        if (k == 1) {
          continue;
        }
        auto p = detail::factorize(k).front().first;
        return {false, normal_closure(g, {detail::perm_power(x, k / p)})};
      }
    }
    auto orbs = orbits(g);
    for (auto const& o : orbs) {
      if (o.size() > 1 && o.size() < g.degree()) {
        auto k = action_homomorphism(g, o).kernel;
        if (!k.is_trivial()) {
          return {false, std::move(k)};
        }
      }
    }
    if (orbs.size() == 1) {
      if (auto bs = minimal_block_system(g)) {
        auto k = action_homomorphism(g, *bs).kernel;
        if (!k.is_trivial()) {
          return {false, std::move(k)};
        }
      }
    }
    std::mt19937_64 rng(seed);
    for (unsigned t = 0; t < trials; ++t) {
      Permutation x = g.chain().random_element(rng);
      for (int retry = 0; x.is_identity() && retry < 64; ++retry) {
        x = g.chain().random_element(rng);
      }
      if (x.is_identity()) {
        continue;
      }
      BigInt const             k = x.order();
      std::vector<Permutation> seeds{x};
      for (auto [p, e] : detail::factorize(k)) {
        if (BigInt(p) != k) {
          seeds.push_back(detail::perm_power(x, k / p));
        }
      }
      for (auto const& y : seeds) {
        auto n = normal_closure(g, {y});
        if (n.order() != ord) {
          return {false, std::move(n)};
        }
      }
    }
    return {true, std::nullopt};
  }

  ////////////////////////////////////////////////////////////////////////////
  // Composition factors
  ////////////////////////////////////////////////////////////////////////////

  namespace detail {

    inline void push_abelian_factors(CompositionFactors& cf,
                                     BigInt const&       quotient_order,
                                     BigInt const&       group_order) {
      for (auto [p, e] : factorize(quotient_order)) {
        for (unsigned i = 0; i < e; ++i) {
          cf.factors.push_back(SimpleType::cyclic(p));
          cf.chain_witness.emplace_back(group_order, SimpleType::cyclic(p));
        }
      }
    }

    inline void decompose_cayley(CayleyGroup const& g, CompositionFactors& cf) {
      if (g.size() == 1) {
        return;
      }
      auto const derived = derived_subgroup(g);
      if (derived.size() != g.size()) {
        push_abelian_factors(cf, g.size() / derived.size(), g.size());
        decompose_cayley(as_group(g, derived).group, cf);
        return;
      }
      if (is_simple_cayley(g)) {
        auto t = identify_simple(g.fingerprint());
        cf.factors.push_back(t);
        cf.chain_witness.emplace_back(g.size(), t);
        return;
      }
      auto const n = nonabelian_maximal_normal_subgroups(g).front();
      auto       t = identify_simple(quotient(g, n).group.fingerprint());
      cf.factors.push_back(t);
      cf.chain_witness.emplace_back(g.size(), t);
      decompose_cayley(as_group(g, n).group, cf);
    }

    inline void decompose_perm(PermGroup const&    g,
                               KappaOptions const& opts,
                               CompositionFactors& cf) {
      if (g.is_trivial()) {
        return;
      }
      auto const ord  = g.order();
      auto       orbs = orbits(g);
      auto       it   = std::find_if(orbs.begin(), orbs.end(), [](auto const& o) {
        return o.size() > 1;
      });
      if (it->size() != g.degree()) {
        auto ah = action_homomorphism(g, *it);
        decompose_perm(ah.image, opts, cf);
        decompose_perm(ah.kernel, opts, cf);
        return;
      }
      if (auto bs = minimal_block_system(g)) {
        auto ah = action_homomorphism(g, *bs);
        decompose_perm(ah.image, opts, cf);
        decompose_perm(ah.kernel, opts, cf);
        return;
      }
      auto derived = derived_subgroup(g);
      if (derived.order() != ord) {
        push_abelian_factors(cf, ord / derived.order(), ord);
        decompose_perm(derived, opts, cf);
        return;
      }
      auto verdict = is_simple_perm(g, opts.trials, opts.seed);
      if (verdict.simple) {
        auto t = identify_simple(
            fingerprint(g, opts.fingerprint_samples, opts.seed));
        cf.factors.push_back(t);
        cf.chain_witness.emplace_back(ord, t);
        return;
      }
      if (ord > opts.cayley_bound) {
        throw DecompositionIncomplete(
            "decomposition incomplete: primitive perfect non-simple group of "
            "order "
            + ord.str() + " exceeds the Cayley bound");
      }
      // G/N via the regular representation, N recursively
      auto const& n  = *verdict.witness;
      auto        pc = to_cayley(g, opts.cayley_bound);
      Bitset      nb(pc.group.size());
      for (std::size_t i = 0; i < pc.elements.size(); ++i) {
        if (n.contains(pc.elements[i])) {
          nb.set(i);
        }
      }
      decompose_cayley(quotient(pc.group, SubgroupSet(nb)).group, cf);
      decompose_perm(n, opts, cf);
    }

    inline void finish(CompositionFactors& cf) {
      std::sort(cf.factors.begin(), cf.factors.end());
    }

  }  // namespace detail

  /// Composition factors of a permutation group: split along orbit actions,
  /// then block actions, then the derived subgroup; identify simple
  /// primitive groups.
  inline CompositionFactors composition_factors(PermGroup const&    g,
                                                KappaOptions const& opts = {}) {
    if (g.is_trivial()) {
      throw TrivialGroupError("the trivial group has no composition factors");
    }
    CompositionFactors cf;
    detail::decompose_perm(g, opts, cf);
    detail::finish(cf);
    return cf;
  }

  inline CompositionFactors composition_factors(CayleyGroup const& g) {
    if (g.size() == 1) {
      throw TrivialGroupError("the trivial group has no composition factors");
    }
    CompositionFactors cf;
    detail::decompose_cayley(g, cf);
    detail::finish(cf);
    return cf;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Top simple quotients
  ////////////////////////////////////////////////////////////////////////////

  namespace detail {

    inline void abelian_top(BigInt const&                       ord,
                            BigInt const&                       derived_ord,
                            std::vector<SimpleQuotientWitness>& out) {
      for (auto [p, e] : factorize(ord / derived_ord)) {
        add_quotient(out,
                     {SimpleType::cyclic(p),
                      "abelianization (|G/G'| = " + (ord / derived_ord).str()
                          + ")",
                      ord / p});
      }
    }

    inline void nonabelian_top_cayley(CayleyGroup const&                  g,
                                      std::string const&                  how,
                                      std::vector<SimpleQuotientWitness>& out) {
      for (auto const& n : nonabelian_maximal_normal_subgroups(g)) {
        auto t = identify_simple(quotient(g, n).group.fingerprint());
        add_quotient(out, {t, how, BigInt(n.size())});
      }
    }

    // Simple quotients of G exposed by images of orbit and block actions,
    // recursively. group_order is |G| of the original group.
    inline void image_tops(PermGroup const&                    g,
                           BigInt const&                       group_order,
                           std::string const&                  path,
                           KappaOptions const&                 opts,
                           unsigned                            depth,
                           std::vector<SimpleQuotientWitness>& out) {
      if (g.is_trivial() || depth > 8) {
        return;
      }
      auto orbs = orbits(g);
      std::vector<ActionDomain> domains;
      std::vector<std::string>  names;
      std::size_t               nontrivial = 0;
      for (auto const& o : orbs) {
        nontrivial += o.size() > 1;
      }
      if (nontrivial > 1 || (nontrivial == 1 && orbs.size() > 1)) {
        for (auto const& o : orbs) {
          if (o.size() > 1) {
            domains.emplace_back(o);
            names.push_back("orbit of length " + std::to_string(o.size()));
          }
        }
      } else {
        std::vector<BlockSystem> systems;
        for (Point b = 1; b < g.degree(); ++b) {
          auto bs = detail::minimal_block_containing(g, 0, b);
          if (bs.blocks.size() > 1
              && std::find(systems.begin(), systems.end(), bs)
                     == systems.end()) {
            systems.push_back(bs);
          }
        }
        for (auto& bs : systems) {
          names.push_back(std::to_string(bs.blocks.size()) + " blocks of size "
                          + std::to_string(bs.block_size()));
          domains.emplace_back(std::move(bs));
        }
      }
      for (std::size_t i = 0; i < domains.size(); ++i) {
        auto image = action_homomorphism(g, domains[i]).image;
        if (image.is_trivial()) {
          continue;
        }
        std::string how = path + (path.empty() ? "" : " -> ")
                          + "action on " + names[i];
        auto const iord = image.order();
        auto const v    = is_simple_perm(image, opts.trials, opts.seed);
        if (v.simple) {
          auto t = identify_simple(
              fingerprint(image, opts.fingerprint_samples, opts.seed));
          add_quotient(out, {t, how, group_order / iord});
          continue;
        }
        image_tops(image, group_order, how, opts, depth + 1, out);
      }
    }

  }  // namespace detail

  /// The simple groups S with G/N = S for some maximal normal N.
  inline TopQuotients top_simple_quotients(PermGroup const&    g,
                                           KappaOptions const& opts = {}) {
    BigInt const ord = g.order();
    if (ord == 1) {
      throw TrivialGroupError("the trivial group has no simple quotient");
    }
    TopQuotients tq;
    auto const   derived = derived_subgroup(g);
    detail::abelian_top(ord, derived.order(), tq.quotients);
    if (derived.is_trivial()) {
      detail::sort_quotients(tq.quotients);
      return tq;
    }
    if (ord <= opts.cayley_bound && ord <= CayleyGroup::max_order) {
      auto pc = to_cayley(g, opts.cayley_bound);
      detail::nonabelian_top_cayley(
          pc.group, "maximal normal subgroup (regular representation)", tq.quotients);
      detail::sort_quotients(tq.quotients);
      return tq;
    }
    if (derived.order() == ord) {
      auto v = is_simple_perm(g, opts.trials, opts.seed);
      if (v.simple) {
        auto t = identify_simple(fingerprint(g, opts.fingerprint_samples, opts.seed));
        detail::add_quotient(tq.quotients, {t, "G is simple", BigInt(1)});
        return tq;
      }
    }
    detail::image_tops(g, ord, "", opts, 0, tq.quotients);
    tq.complete = perfect_core(g).is_trivial();
    detail::sort_quotients(tq.quotients);
    return tq;
  }

  ////////////////////////////////////////////////////////////////////////////
  // kappa
  ////////////////////////////////////////////////////////////////////////////

  namespace detail {

    // Least mu over the candidates. Unidentified simple groups only matter
    // if the best known value exceeds 5, the smallest mu of any nonabelian
    // simple group.
    inline std::optional<KappaResult>
    best_of(std::vector<SimpleQuotientWitness> const& cands) {
      std::optional<KappaResult> best;
      std::optional<BigInt>      unknown;
      for (auto const& w : cands) {
        if (w.type.family == SimpleFamily::unknown) {
          unknown = w.type.order;
          continue;
        }
        auto mu = mu_of(w.type);
        if (!best || mu < best->kappa) {
          best = KappaResult{mu, w, true, mu};
        }
      }
      if (unknown && (!best || best->kappa > 5)) {
        throw UnknownSimpleError(*unknown);
      }
      return best;
    }

  }  // namespace detail

  /// kappa of a permutation group. If |G/G'| is even the answer is 2 at once.
  inline KappaResult kappa_perm(PermGroup const&    g,
                                KappaOptions const& opts = {}) {
    BigInt const ord = g.order();
    if (ord == 1) {
      throw TrivialGroupError();
    }
    auto const   derived = derived_subgroup(g);
    BigInt const ab      = ord / derived.order();
    if (ab % 2 == 0) {
      SimpleQuotientWitness w{SimpleType::cyclic(2),
                              "abelianization (|G/G'| = " + ab.str() + ")",
                              ord / 2};
      return KappaResult{2, w, true, 2};
    }
    auto tq   = top_simple_quotients(g, opts);
    auto best = detail::best_of(tq.quotients);
    if (tq.complete) {
      return *best;
    }
    // certify with the composition factors: every top quotient is C_p for
    // p | |G/G'| or a nonabelian composition factor
    unsigned long lower = static_cast<unsigned long>(-1);
    for (auto [p, e] : detail::factorize(ab)) {
      lower = std::min(lower, p);
    }
    try {
      for (auto const& t : composition_factors(g, opts).factors) {
        if (t.is_abelian()) {
          continue;
        }
        unsigned long mu = t.family == SimpleFamily::unknown ? 5 : mu_of(t);
        lower            = std::min(lower, mu);
      }
    } catch (DecompositionIncomplete const&) {
      lower = ab > 1 ? std::min(lower, 5ul) : 5ul;
    }
    if (!best) {
      throw DecompositionIncomplete(
          "no simple quotient of this perfect group was found without the "
          "regular representation (order "
          + ord.str() + "); κ >= " + std::to_string(lower));
    }
    best->lower_bound = lower;
    best->complete    = best->kappa <= lower;
    return *best;
  }

  /// kappa of a table group, always complete.
  inline KappaResult kappa_cayley(CayleyGroup const& g) {
    if (g.size() == 1) {
      throw TrivialGroupError();
    }
    std::vector<SimpleQuotientWitness> cands;
    auto const derived = derived_subgroup(g);
    BigInt const ord   = g.size();
    if (derived.size() != g.size()) {
      auto p = detail::factorize(BigInt(g.size() / derived.size())).front().first;
      cands.push_back({SimpleType::cyclic(p),
                       "abelianization (|G/G'| = "
                           + std::to_string(g.size() / derived.size()) + ")",
                       ord / p});
      if (p == 2) {
        return KappaResult{2, cands.front(), true, 2};
      }
    }
    detail::nonabelian_top_cayley(g, "maximal normal subgroup", cands);
    auto best = detail::best_of(cands);
    return *best;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Subgroups of minimal index
  ////////////////////////////////////////////////////////////////////////////

  /// Every H < G with |G : H| = kappa(G): the union over N in M(G) of the
  /// preimages of the index-kappa maximal subgroups of G/N.
  inline std::vector<SubgroupSet>
  minimal_index_subgroups(CayleyGroup const&   g,
                          MaximalSearchOptions opts = {}) {
    if (g.size() == 1) {
      throw TrivialGroupError();
    }
    unsigned long const      kappa = kappa_cayley(g).kappa;
    std::vector<SubgroupSet> out;
    for (auto const& n : maximal_normal_subgroups(g)) {
      auto const        q  = quotient(g, n);
      std::size_t const qs = q.group.size();
      auto const        t  = identify_simple(q.group.fingerprint());
      if (t.family != SimpleFamily::unknown && mu_of(t) > kappa) {
        continue;  // every proper subgroup of G/N has index >= mu > kappa
      }
      for (auto const& m : all_maximal_subgroups_simple(q.group, opts)) {
        if (qs / m.size() == kappa) {
          out.push_back(pullback(q, m));
        }
      }
    }
    sort_unique(out);
    return out;
  }

}  // namespace mindex

#endif  // MINDEX_KAPPA_HPP_

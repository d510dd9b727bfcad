#ifndef MINDEX_SIMPLE_ID_HPP_
#define MINDEX_SIMPLE_ID_HPP_

// Isomorphism types of finite simple groups, recognised from their order and
// element orders, and their minimal faithful permutation degrees.
//
// Shipped families: cyclic of prime order, alternating A_n (5 <= n <= 40),
// PSL(n, q) for prime powers q up to 1024 with order below 10^80, and seven
// sporadic groups. Exceptional isomorphisms are normalised:
//   PSL(2,4) = PSL(2,5) -> A_5,  PSL(2,9) -> A_6,  PSL(4,2) -> A_8,
//   PSL(3,2) -> PSL(2,7).
// The only clash of orders among shipped groups that is not an isomorphism is
// |A_8| = |PSL(3,4)| = 20160; A_8 has elements of order 15, PSL(3,4) does not.

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "errors.hpp"

namespace mindex {

  enum class SimpleFamily { cyclic_prime, alternating, psl, sporadic, unknown };

  struct SimpleType {
    SimpleFamily family = SimpleFamily::unknown;
    // cyclic_prime: p = q; alternating: n; psl: n, q; sporadic: name.
    unsigned long n = 0;
    unsigned long q = 0;
    std::string   name;
    BigInt        order;

    static SimpleType cyclic(unsigned long p) {
      return {SimpleFamily::cyclic_prime, 1, p, "", BigInt(p)};
    }

    static SimpleType alternating(unsigned long n);
    static SimpleType psl(unsigned long n, unsigned long q);
    static SimpleType sporadic(std::string const& name);

    static SimpleType unknown_simple(BigInt order) {
      return {SimpleFamily::unknown, 0, 0, "", std::move(order)};
    }

    bool is_abelian() const noexcept {
      return family == SimpleFamily::cyclic_prime;
    }

    std::string to_string() const {
      switch (family) {
        case SimpleFamily::cyclic_prime:
          return "C_" + std::to_string(q);
        case SimpleFamily::alternating:
          return "A_" + std::to_string(n);
        case SimpleFamily::psl:
          return "PSL(" + std::to_string(n) + "," + std::to_string(q) + ")";
        case SimpleFamily::sporadic:
          return name;
        case SimpleFamily::unknown:
          break;
      }
      return "UnknownSimple(" + order.str() + ")";
    }

    std::string family_name() const {
      switch (family) {
        case SimpleFamily::cyclic_prime:
          return "cyclic";
        case SimpleFamily::alternating:
          return "alternating";
        case SimpleFamily::psl:
          return "psl";
        case SimpleFamily::sporadic:
          return "sporadic";
        case SimpleFamily::unknown:
          break;
      }
      return "unknown";
    }

    friend bool operator==(SimpleType const& a, SimpleType const& b) {
      return a.family == b.family && a.n == b.n && a.q == b.q
             && a.name == b.name && a.order == b.order;
    }

    friend bool operator<(SimpleType const& a, SimpleType const& b) {
      if (a.order != b.order) {
        return a.order < b.order;
      }
      return a.to_string() < b.to_string();
    }
  };

  //! Order plus element orders. element_orders is exact when sample_size is
  //! 0, otherwise it holds the orders seen among sample_size random elements.
  struct Fingerprint {
    BigInt           order;
    std::set<BigInt> element_orders;
    std::size_t      sample_size = 0;
  };

  namespace detail {

    inline BigInt factorial(unsigned long n) {
      BigInt r = 1;
      for (unsigned long i = 2; i <= n; ++i) {
        r *= i;
      }
      return r;
    }

    inline BigInt ipow(BigInt b, unsigned long e) {
      BigInt r = 1;
      while (e > 0) {
        if (e & 1) {
          r *= b;
        }
        b *= b;
        e >>= 1;
      }
      return r;
    }

    inline unsigned long gcd_ul(unsigned long a, unsigned long b) {
      while (b != 0) {
        a %= b;
        std::swap(a, b);
      }
      return a;
    }

    inline BigInt psl_order(unsigned long n, unsigned long q) {
      BigInt r = ipow(BigInt(q), n * (n - 1) / 2);
      for (unsigned long i = 2; i <= n; ++i) {
        r *= ipow(BigInt(q), i) - 1;
      }
      return r / gcd_ul(n, q - 1);
    }

    inline bool is_prime_ul(unsigned long n) {
      if (n < 2) {
        return false;
      }
      for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
          return false;
        }
      }
      return true;
    }

    inline bool is_prime_power(unsigned long q) {
      if (q < 2) {
        return false;
      }
      unsigned long p = 2;
      while (q % p != 0) {
        ++p;
      }
      while (q % p == 0) {
        q /= p;
      }
      return q == 1;
    }

    struct SporadicEntry {
      char const*   name;
      char const*   order;
      unsigned long mu;
    };

    // Orders and minimal faithful degrees of the shipped sporadic groups.
    inline constexpr SporadicEntry sporadic_table[] = {
        {"M11", "7920", 11},
        {"M12", "95040", 12},
        {"M22", "443520", 22},
        {"M23", "10200960", 23},
        {"M24", "244823040", 24},
        {"J2", "604800", 100},
        {"HS", "44352000", 100},
    };

    inline constexpr unsigned long max_alternating_degree = 40;
    inline constexpr unsigned long max_psl_field          = 1024;

    // order -> shipped types with that order (two entries only for 20160)
    inline std::map<BigInt, std::vector<SimpleType>> const& order_table() {
      static auto const table = [] {
        std::map<BigInt, std::vector<SimpleType>> t;
        for (unsigned long n = 5; n <= max_alternating_degree; ++n) {
          auto s = SimpleType::alternating(n);
          t[s.order].push_back(s);
        }
        BigInt const limit = ipow(BigInt(10), 80);
        for (unsigned long n = 2; n <= 64; ++n) {
          for (unsigned long q = 2; q <= max_psl_field; ++q) {
            if (!is_prime_power(q) || (n == 2 && q < 4)) {
              continue;
            }
            BigInt o = psl_order(n, q);
            if (o > limit) {
              break;
            }
            auto it = t.find(o);
            if (it != t.end() && !(n == 3 && q == 4)) {
              continue;  // exceptional isomorphism, keep the earlier name
            }
            t[o].push_back(SimpleType::psl(n, q));
          }
        }
        for (auto const& e : sporadic_table) {
          auto s = SimpleType::sporadic(e.name);
          t[s.order].push_back(s);
        }
        return t;
      }();
      return table;
    }

    // Prime factors found by trial division up to 10^6; a remaining cofactor
    // > 1 is reported as one extra factor.
    inline std::size_t distinct_prime_factor_count(BigInt n) {
      std::size_t count = 0;
      for (unsigned long p = 2; p <= 1000000 && BigInt(p) * p <= n; ++p) {
        if (n % p == 0) {
          ++count;
          while (n % p == 0) {
            n /= p;
          }
        }
      }
      if (n > 1) {
        ++count;
      }
      return count;
    }

    inline bool is_prime_big(BigInt const& n) {
      if (n < 2) {
        return false;
      }
      if (n <= 1000000000000ULL) {
        return is_prime_ul(n.convert_to<unsigned long>());
      }
      return boost::multiprecision::miller_rabin_test(n, 40);
    }

  }  // namespace detail

  inline SimpleType SimpleType::alternating(unsigned long n) {
    if (n < 5) {
      throw InputError("A_n is nonabelian simple only for n >= 5");
    }
    return {SimpleFamily::alternating, n, 0, "", detail::factorial(n) / 2};
  }

  inline SimpleType SimpleType::psl(unsigned long n, unsigned long q) {
    if (n < 2 || !detail::is_prime_power(q) || (n == 2 && q < 4)) {
      throw InputError("PSL(" + std::to_string(n) + "," + std::to_string(q)
                       + ") is not simple");
    }
    return {SimpleFamily::psl, n, q, "", detail::psl_order(n, q)};
  }

  inline SimpleType SimpleType::sporadic(std::string const& name) {
    for (auto const& e : detail::sporadic_table) {
      if (name == e.name) {
        return {SimpleFamily::sporadic, 0, 0, name, BigInt(e.order)};
      }
    }
    throw InputError("unknown sporadic group " + name);
  }

  /// Type of the simple group behind f. Throws InputError when no simple
  /// group can have that order (order 1, prime powers that are not prime,
  /// odd orders, orders not divisible by 4, fewer than three prime divisors).
  inline SimpleType identify_simple(Fingerprint const& f) {
    BigInt const& m = f.order;
    if (m <= 1) {
      throw InputError("inconsistent input: a simple group has order > 1");
    }
    if (detail::is_prime_big(m)) {
      return SimpleType::cyclic(m.convert_to<unsigned long>());
    }
    auto const& table = detail::order_table();
    if (auto it = table.find(m); it != table.end()) {
      auto const& cands = it->second;
      if (cands.size() == 1) {
        return cands.front();
      }
      // 20160: A_8 vs PSL(3,4)
      bool has15 = f.element_orders.count(BigInt(15)) > 0;
      for (auto const& c : cands) {
        if ((c.family == SimpleFamily::alternating) == has15) {
          return c;
        }
      }
    }
    if (m % 4 != 0 || detail::distinct_prime_factor_count(m) < 3) {
      throw InputError("inconsistent input: no nonabelian simple group has order "
                       + m.str());
    }
    return SimpleType::unknown_simple(m);
  }

  /// Minimal degree of a faithful permutation representation of S.
  inline unsigned long mu_of(SimpleType const& s) {
    switch (s.family) {
      case SimpleFamily::cyclic_prime:
        return s.q;
      case SimpleFamily::alternating:
        return s.n;
      case SimpleFamily::psl: {
        if (s.n == 2) {
          switch (s.q) {
            case 5:
              return 5;
            case 7:
              return 7;
            case 9:
              return 6;
            case 11:
              return 11;
            default:
              return s.q + 1;
          }
        }
        if (s.n == 4 && s.q == 2) {
          return 8;
        }
        BigInt d = (detail::ipow(BigInt(s.q), s.n) - 1) / (s.q - 1);
        if (d > std::numeric_limits<unsigned long>::max()) {
          throw CapabilityError("μ(" + s.to_string() + ") overflows");
        }
        return d.convert_to<unsigned long>();
      }
      case SimpleFamily::sporadic:
        for (auto const& e : detail::sporadic_table) {
          if (s.name == e.name) {
            return e.mu;
          }
        }
        break;
      case SimpleFamily::unknown:
        break;
    }
    throw UnknownSimpleError(s.order);
  }

  /// Every shipped simple type with order at most max_order, sorted by order
  /// (prime cyclic groups are omitted).
  inline std::vector<SimpleType> shipped_simple_types(BigInt const& max_order) {
    std::vector<SimpleType> out;
    for (auto const& [o, v] : detail::order_table()) {
      if (o > max_order) {
        break;
      }
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }

}  // namespace mindex

#endif  // MINDEX_SIMPLE_ID_HPP_

#ifndef MINDEX_CLI_HPP_
#define MINDEX_CLI_HPP_

// The `mindex` command line: verb dispatch, input loading and reports.
// Exit status 0 on success, 1 on input errors, 2 at capability limits.

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catalog.hpp"
#include "cayley.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "kappa.hpp"
#include "maximal.hpp"
#include "oracle.hpp"
#include "simple_id.hpp"
#include "tree.hpp"

namespace mindex::cli {

  using json = nlohmann::json;

  inline constexpr int schema_version = 1;

  struct Settings {
    std::size_t   cayley_bound = 5000;
    std::size_t   oracle_bound = 400;
    unsigned      trials       = 20;
    std::uint64_t seed         = 0;
    unsigned      threads      = 1;
    bool          json         = false;
  };

  struct GroupArgs {
    std::string gens;
    std::string cayley;
    std::string catalog;

    bool given() const {
      return !gens.empty() || !cayley.empty() || !catalog.empty();
    }
  };

  //! A loaded group; `table` is present for table input and for permutation
  //! groups of order at most the Cayley bound.
  struct Loaded {
    json                       source;
    std::optional<PermGroup>   perm;
    std::optional<CayleyGroup> table;
    std::vector<Permutation>   elements;  // table element i, for perm input
  };

  namespace detail {

    inline Loaded load(GroupArgs const& a, Settings const& s, std::ostream& err) {
      int count = !a.gens.empty() + !a.cayley.empty() + !a.catalog.empty();
      if (count != 1) {
        throw InputError("give exactly one of --gens, --cayley, --catalog");
      }
      Loaded l;
      if (!a.cayley.empty()) {
        auto                    f = io::open(a.cayley);
        CayleyGroup::Relabeling rel;
        l.table = io::read_cayley(f, &rel);
        if (rel.relabeled) {
          err << "warning: identity is element " << rel.original_identity
              << "; swapped with element 0\n";
        }
        l.source = {{"kind", "cayley"}, {"order", std::to_string(l.table->size())}};
        return l;
      }
      if (!a.gens.empty()) {
        auto f = io::open(a.gens);
        l.perm = io::read_generators(f);
      } else {
        auto e     = make_catalog(a.catalog, s.cayley_bound);
        l.perm     = std::move(e.perm);
        l.table    = std::move(e.cayley);
        l.elements = std::move(e.cayley_elements);
        l.source   = {{"kind", "catalog"}, {"name", e.name}};
      }
      if (!a.gens.empty()) {
        l.source = {{"kind", "generators"}};
        BigInt const o = l.perm->order();
        if (o <= s.cayley_bound && o <= CayleyGroup::max_order) {
          auto pc    = to_cayley(*l.perm, s.cayley_bound);
          l.table    = std::move(pc.group);
          l.elements = std::move(pc.elements);
        }
      }
      l.source["order"]  = l.perm->order().str();
      l.source["degree"] = l.perm->degree();
      return l;
    }

    inline CayleyGroup const& need_table(Loaded const& l, Settings const& s,
                                         char const* verb) {
      if (!l.table) {
        throw CapabilityError(std::string(verb) + " needs a multiplication table; group order "
                              + l.perm->order().str() + " exceeds --cayley-bound "
                              + std::to_string(s.cayley_bound));
      }
      return *l.table;
    }

    inline json type_json(SimpleType const& t) {
      json j = {{"name", t.to_string()},
                {"family", t.family_name()},
                {"order", t.order.str()}};
      if (t.family != SimpleFamily::unknown) {
        j["mu"] = mu_of(t);
      }
      return j;
    }

    inline json subgroup_json(Loaded const& l, SubgroupSet const& h) {
      json j = {{"order", h.size()},
                {"index", l.table->size() / h.size()},
                {"elements", h.elements()}};
      if (!l.elements.empty()) {
        json perms = json::array();
        for (Element x : h.elements()) {
          perms.push_back(l.elements[x].to_string());
        }
        j["permutations"] = std::move(perms);
      }
      return j;
    }

    inline std::string set_text(std::vector<Element> const& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
      }
      return s + "}";
    }

    inline json envelope(char const* command, json const& source) {
      json j = {{"schema_version", schema_version}, {"command", command}};
      if (!source.is_null()) {
        j["group"] = source;
      }
      return j;
    }

    inline void emit(std::ostream& out, json const& j) {
      out << j.dump(2) << "\n";
    }

    /// "C_7", "A_5", "PSL(2,7)", or a sporadic name.
    inline SimpleType parse_type(std::string const& s) {
      static std::regex const cyc("C_([0-9]+)"), alt("A_([0-9]+)"),
          psl("PSL\\(([0-9]+),([0-9]+)\\)");
      std::smatch m;
      auto num = [](std::string const& x) {
        if (x.size() > 9) {
          throw InputError("parameter " + x + " too large");
        }
        return std::stoul(x);
      };
      if (std::regex_match(s, m, cyc)) {
        auto p = num(m[1]);
        if (!mindex::detail::is_prime_ul(p)) {
          throw InputError("C_" + std::to_string(p) + " is not simple");
        }
        return SimpleType::cyclic(p);
      }
      if (std::regex_match(s, m, alt)) {
        return SimpleType::alternating(num(m[1]));
      }
      if (std::regex_match(s, m, psl)) {
        auto n = num(m[1]), q = num(m[2]);
        auto t = SimpleType::psl(n, q);
        // normalise exceptional isomorphisms through the order table
        if (t.n == 3 && t.q == 4) {
          return t;
        }
        auto const& tab = mindex::detail::order_table();
        if (auto it = tab.find(t.order); it != tab.end()) {
          return it->second.front();
        }
        return t;
      }
      return SimpleType::sporadic(s);
    }

    inline KappaOptions kappa_options(Settings const& s) {
      KappaOptions o;
      o.cayley_bound    = s.cayley_bound;
      o.trials          = s.trials;
      o.seed            = s.seed;
      o.maximal.threads = s.threads;
      return o;
    }

  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////////
  // Verbs
  ////////////////////////////////////////////////////////////////////////////

  inline int cmd_kappa(GroupArgs const& a, Settings const& s, std::ostream& out,
                       std::ostream& err) {
    auto        l = detail::load(a, s, err);
    KappaResult r = l.perm ? kappa_perm(*l.perm, detail::kappa_options(s))
                           : kappa_cayley(*l.table);
    if (s.json) {
      json j = detail::envelope("kappa", l.source);
      j["kappa"]       = r.kappa;
      j["complete"]    = r.complete;
      j["lower_bound"] = r.lower_bound;
      j["witness"]     = {{"type", detail::type_json(r.witness.type)},
                          {"via", r.witness.via},
                          {"kernel_order", r.witness.kernel_order.str()}};
      detail::emit(out, j);
    } else {
      out << "kappa = " << r.kappa << "\n"
          << "witness: " << r.witness.type.to_string() << " (mu = " << r.kappa
          << "), via " << r.witness.via << ", kernel order "
          << r.witness.kernel_order << "\n"
          << "complete: " << (r.complete ? "yes" : "no") << "\n";
    }
    if (!r.complete) {
      err << "error: possibly incomplete: no certificate that every simple "
             "quotient was found; kappa >= "
          << r.lower_bound << " and kappa <= " << r.kappa << "\n";
      return 2;
    }
    return 0;
  }

  inline int cmd_min_subgroups(GroupArgs const& a, Settings const& s,
                               std::ostream& out, std::ostream& err) {
    auto        l  = detail::load(a, s, err);
    auto const& g  = detail::need_table(l, s, "min-subgroups");
    auto const  k  = kappa_cayley(g);
    MaximalSearchOptions mo;
    mo.threads  = s.threads;
    auto const  hs = minimal_index_subgroups(g, mo);
    if (s.json) {
      json j   = detail::envelope("min-subgroups", l.source);
      j["kappa"] = k.kappa;
      j["count"] = hs.size();
      json list  = json::array();
      for (auto const& h : hs) {
        list.push_back(detail::subgroup_json(l, h));
      }
      j["subgroups"] = std::move(list);
      detail::emit(out, j);
    } else {
      out << "kappa = " << k.kappa << "; " << hs.size()
          << " subgroup(s) of index " << k.kappa << "\n";
      for (auto const& h : hs) {
        out << "order " << h.size() << ": " << detail::set_text(h.elements()) << "\n";
      }
    }
    return 0;
  }

  inline int cmd_mu(GroupArgs const& a, std::string const& type, Settings const& s,
                    std::ostream& out, std::ostream& err) {
    SimpleType t;
    json       source;
    if (!type.empty()) {
      if (a.given()) {
        throw InputError("give either --type or a group, not both");
      }
      t      = detail::parse_type(type);
      source = {{"kind", "type"}, {"name", type}};
    } else {
      auto l = detail::load(a, s, err);
      source = l.source;
      if (l.table) {
        if (l.table->size() == 1 || !is_simple_cayley(*l.table)) {
          throw InputError("mu is reported for simple groups; this group is not simple "
                           "(use `oracle` for a brute-force value)");
        }
        t = identify_simple(l.table->fingerprint());
      } else {
        if (l.perm->is_trivial() || !is_simple_perm(*l.perm, s.trials, s.seed).simple) {
          throw InputError("mu is reported for simple groups; this group is not simple");
        }
        t = identify_simple(fingerprint(*l.perm, 200, s.seed));
      }
    }
    unsigned long mu = mu_of(t);
    if (s.json) {
      json j    = detail::envelope("mu", source);
      j["type"] = detail::type_json(t);
      j["mu"]   = mu;
      detail::emit(out, j);
    } else {
      out << t.to_string() << ": mu = " << mu << "\n";
    }
    return 0;
  }

  inline int cmd_factors(GroupArgs const& a, Settings const& s, std::ostream& out,
                         std::ostream& err) {
    auto               l  = detail::load(a, s, err);
    CompositionFactors cf = l.perm ? composition_factors(*l.perm, detail::kappa_options(s))
                                   : composition_factors(*l.table);
    if (s.json) {
      json j    = detail::envelope("factors", l.source);
      json fs   = json::array();
      for (auto const& t : cf.factors) {
        fs.push_back(detail::type_json(t));
      }
      json chain = json::array();
      for (auto const& [o, t] : cf.chain_witness) {
        chain.push_back({{"subgroup_order", o.str()}, {"factor", t.to_string()}});
      }
      j["factors"] = std::move(fs);
      j["chain"]   = std::move(chain);
      detail::emit(out, j);
    } else {
      out << "composition factors:";
      for (auto const& t : cf.factors) {
        out << " " << t.to_string();
      }
      out << "\n";
    }
    return 0;
  }

  inline int cmd_maximal(GroupArgs const& a, std::size_t size_cap, Settings const& s,
                         std::ostream& out, std::ostream& err) {
    auto        l = detail::load(a, s, err);
    auto const& g = detail::need_table(l, s, "maximal-subgroups");
    MaximalSearchOptions mo;
    mo.size_cap = size_cap;
    mo.threads  = s.threads;
    auto const ms = all_maximal_subgroups_simple(g, mo);
    std::map<std::size_t, std::size_t> by_order;
    for (auto const& h : ms) {
      ++by_order[h.size()];
    }
    if (s.json) {
      json j   = detail::envelope("maximal-subgroups", l.source);
      j["count"] = ms.size();
      json summary = json::object();
      for (auto [o, c] : by_order) {
        summary[std::to_string(o)] = c;
      }
      j["count_by_order"] = std::move(summary);
      json list           = json::array();
      for (auto const& h : ms) {
        list.push_back(detail::subgroup_json(l, h));
      }
      j["subgroups"] = std::move(list);
      detail::emit(out, j);
    } else {
      out << ms.size() << " maximal subgroup(s):";
      for (auto [o, c] : by_order) {
        out << " " << c << " of order " << o << ";";
      }
      out << "\n";
      for (auto const& h : ms) {
        out << "order " << h.size() << ": " << detail::set_text(h.elements()) << "\n";
      }
    }
    return 0;
  }

  inline int cmd_tree_rep(GroupArgs const& a, std::string const& tree_path,
                          unsigned long kappa_given, Settings const& s,
                          std::ostream& out, std::ostream& err) {
    auto f = io::open(tree_path);
    auto t = io::read_tree(f);
    json source;
    unsigned long kappa = kappa_given;
    if (kappa_given == 0) {
      auto l = detail::load(a, s, err);
      source = l.source;
      auto r = l.perm ? kappa_perm(*l.perm, detail::kappa_options(s))
                      : kappa_cayley(*l.table);
      if (!r.complete) {
        throw DecompositionIncomplete("kappa is not certified for this group");
      }
      kappa = r.kappa;
    } else if (a.given()) {
      throw InputError("give either --kappa or a group, not both");
    } else {
      source = {{"kind", "kappa"}, {"kappa", kappa}};
    }
    std::size_t const mstar = max_symmetric_degree(t);
    bool const        ok    = representable_on_tree(kappa, t);
    if (s.json) {
      json j               = detail::envelope("tree-rep", source);
      j["kappa"]           = kappa;
      j["m_star"]          = mstar;
      j["tree_vertices"]   = t.size();
      j["representable"]   = ok;
      detail::emit(out, j);
    } else {
      out << (ok ? "representable" : "NOT representable") << " (kappa = " << kappa
          << (ok ? " <= " : " > ") << "m* = " << mstar << ")\n";
    }
    return 0;
  }

  inline int cmd_mu_table(std::string const& max_order, Settings const& s,
                          std::ostream& out) {
    BigInt limit;
    try {
      limit = max_order.empty() ? mindex::detail::ipow(BigInt(10), 80) : BigInt(max_order);
    } catch (std::exception const&) {
      throw InputError("--max-order must be a decimal integer");
    }
    auto types = shipped_simple_types(limit);
    if (s.json) {
      json j    = detail::envelope("mu-table", nullptr);
      json list = json::array();
      for (auto const& t : types) {
        json e = detail::type_json(t);
        e["n"] = t.n;
        e["q"] = t.q;
        list.push_back(std::move(e));
      }
      j["types"] = std::move(list);
      j["count"] = types.size();
      detail::emit(out, j);
    } else {
      for (auto const& t : types) {
        out << t.to_string() << "\t" << t.order << "\t" << mu_of(t) << "\n";
      }
    }
    return 0;
  }

  inline int cmd_catalog(std::string const& name, std::string const& format,
                         Settings const& s, std::ostream& out) {
    if (name.empty()) {
      if (s.json) {
        json j       = detail::envelope("catalog", nullptr);
        j["forms"]   = catalog_forms();
        j["corpus"]  = standard_corpus();
        detail::emit(out, j);
      } else {
        out << "catalog names:\n";
        for (auto const& f : catalog_forms()) {
          out << "  " << f << "\n";
        }
        out << "standard corpus:\n";
        for (auto const& c : standard_corpus()) {
          out << "  " << c << "\n";
        }
      }
      return 0;
    }
    auto e = make_catalog(name, s.cayley_bound);
    if (format == "cayley") {
      if (!e.cayley) {
        throw CapabilityError("order " + e.order().str() + " exceeds --cayley-bound");
      }
      io::write_cayley(out, *e.cayley);
    } else if (s.json) {
      json j = detail::envelope("catalog", {{"kind", "catalog"}, {"name", e.name}});
      j["order"]  = e.order().str();
      j["degree"] = e.perm.degree();
      json gens   = json::array();
      for (auto const& p : e.perm.generators()) {
        gens.push_back(p.to_string());
      }
      j["generators"] = std::move(gens);
      detail::emit(out, j);
    } else {
      io::write_generators(out, e.perm);
    }
    return 0;
  }

  /// Brute-force facts for one table group.
  inline json oracle_facts(CayleyGroup const& g, std::size_t bound) {
    auto lat = oracle::subgroup_lattice(g, bound);
    json j   = {{"order", g.size()}, {"subgroups", lat.subgroups.size()}};
    if (g.size() == 1) {
      j["mu"] = 0;
      return j;
    }
    auto const kappa = oracle::brute_kappa(lat);
    j["simple"]                  = oracle::brute_is_simple(g, lat);
    j["kappa"]                   = kappa;
    j["mu"]                      = oracle::brute_mu(g, lat);
    j["maximal_subgroups"]       = oracle::maximal_subgroups(lat).size();
    j["maximal_normal_subgroups"] = oracle::maximal_normal_subgroups(g, lat).size();
    j["minimal_index_subgroups"] = oracle::index_slice(lat, kappa).size();
    return j;
  }

  inline int cmd_oracle(GroupArgs const& a, bool corpus, Settings const& s,
                        std::ostream& out, std::ostream& err) {
    if (corpus) {
      if (a.given()) {
        throw InputError("--corpus takes no group input");
      }
      json j = detail::envelope("oracle", nullptr);
      json facts = json::object();
      for (auto const& name : standard_corpus()) {
        auto e = make_catalog(name, s.cayley_bound);
        facts[e.name] = oracle_facts(*e.cayley, s.oracle_bound);
      }
      j["facts"] = std::move(facts);
      detail::emit(out, j);
      return 0;
    }
    auto        l = detail::load(a, s, err);
    auto const& g = detail::need_table(l, s, "oracle");
    json        f = oracle_facts(g, s.oracle_bound);
    if (s.json) {
      json j = detail::envelope("oracle", l.source);
      j["facts"] = f;
      detail::emit(out, j);
    } else {
      for (auto const& [k, v] : f.items()) {
        out << k << " = " << v.dump() << "\n";
      }
    }
    return 0;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Entry point
  ////////////////////////////////////////////////////////////////////////////

  inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"mindex: minimal index of proper subgroups, and related tools",
                 "mindex"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings s;
    app.add_option("--cayley-bound", s.cayley_bound,
                   "largest order converted to a multiplication table")
        ->capture_default_str();
    app.add_option("--oracle-bound", s.oracle_bound, "largest order for brute-force oracles")
        ->capture_default_str();
    app.add_option("--trials", s.trials, "Monte Carlo trials for simplicity tests")
        ->capture_default_str();
    app.add_option("--seed", s.seed, "random seed")->capture_default_str();
    app.add_option("--threads", s.threads, "worker threads for subgroup searches")
        ->capture_default_str()
        ->check(CLI::Range(1u, 256u));
    app.add_flag("--json", s.json, "emit JSON");

    GroupArgs ga;
    auto add_group = [&](CLI::App* sub) {
      sub->add_option("--gens", ga.gens, "generator file");
      sub->add_option("--cayley", ga.cayley, "Cayley table file");
      sub->add_option("--catalog", ga.catalog, "catalog group name");
    };

    auto* kappa = app.add_subcommand("kappa", "minimal index of a proper subgroup");
    add_group(kappa);
    auto* mins = app.add_subcommand("min-subgroups", "all subgroups of minimal index");
    add_group(mins);
    std::string type;
    auto*       mu = app.add_subcommand("mu", "minimal faithful degree of a simple group");
    add_group(mu);
    mu->add_option("--type", type, "simple type such as A_5, PSL(2,7), M11");
    auto* factors = app.add_subcommand("factors", "composition factors");
    add_group(factors);
    std::size_t size_cap = 700;
    auto*       maximal  = app.add_subcommand("maximal-subgroups",
                                              "maximal subgroups of a simple group");
    add_group(maximal);
    maximal->add_option("--size-cap", size_cap, "largest group order searched")
        ->capture_default_str();
    std::string   tree_path;
    unsigned long kappa_given = 0;
    auto* tree = app.add_subcommand("tree-rep", "nontrivial action on a tree?");
    add_group(tree);
    tree->add_option("--tree", tree_path, "tree file")->required();
    tree->add_option("--kappa", kappa_given, "use this kappa instead of a group");
    std::string max_order;
    auto*       table = app.add_subcommand("mu-table", "shipped simple types and mu");
    table->add_option("--max-order", max_order, "largest order listed");
    std::string name, format = "gens";
    auto*       catalog = app.add_subcommand("catalog", "list or emit catalog groups");
    catalog->add_option("--name", name, "catalog group to emit");
    catalog->add_option("--format", format, "gens or cayley")
        ->check(CLI::IsMember({"gens", "cayley"}))
        ->capture_default_str();
    bool  corpus = false;
    auto* oracle = app.add_subcommand("oracle", "brute-force kappa and mu");
    add_group(oracle);
    oracle->add_flag("--corpus", corpus, "facts for the whole standard corpus");

    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (CLI::ParseError const& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? 0 : 1;
    }

    try {
      if (kappa->parsed()) {
        return cmd_kappa(ga, s, out, err);
      }
      if (mins->parsed()) {
        return cmd_min_subgroups(ga, s, out, err);
      }
      if (mu->parsed()) {
        return cmd_mu(ga, type, s, out, err);
      }
      if (factors->parsed()) {
        return cmd_factors(ga, s, out, err);
      }
      if (maximal->parsed()) {
        return cmd_maximal(ga, size_cap, s, out, err);
      }
      if (tree->parsed()) {
        return cmd_tree_rep(ga, tree_path, kappa_given, s, out, err);
      }
      if (table->parsed()) {
        return cmd_mu_table(max_order, s, out);
      }
      if (catalog->parsed()) {
        return cmd_catalog(name, format, s, out);
      }
      return cmd_oracle(ga, corpus, s, out, err);
    } catch (CapabilityError const& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }

}  // namespace mindex::cli

#endif  // MINDEX_CLI_HPP_

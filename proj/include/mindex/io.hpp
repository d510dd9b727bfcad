#ifndef MINDEX_IO_HPP_
#define MINDEX_IO_HPP_

// Text formats. Points and tree vertices are 1-based on disk, table
// elements 0-based.
//
//   generators:  degree n            Cayley table:  order m
//                (1,2)(3,4,5)                       m rows of m integers
//                ()
//   tree:        vertices n
//                u v                 (n - 1 lines)
//
// Blank lines and text after '#' are ignored.

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cayley.hpp"
#include "errors.hpp"
#include "perm_group.hpp"
#include "tree.hpp"

namespace mindex::io {

  namespace detail {

    struct Line {
      std::size_t number;
      std::string text;
    };

    inline std::vector<Line> content_lines(std::istream& in) {
      std::vector<Line> out;
      std::string       s;
      for (std::size_t no = 1; std::getline(in, s); ++no) {
        if (auto h = s.find('#'); h != std::string::npos) {
          s.erase(h);
        }
        if (s.find_first_not_of(" \t\r") != std::string::npos) {
          out.push_back({no, s});
        }
      }
      return out;
    }

    [[noreturn]] inline void fail(std::size_t line, std::string const& what) {
      throw InputError("line " + std::to_string(line) + ": " + what);
    }

    inline std::vector<long long> integers(Line const& l) {
      std::istringstream     ss(l.text);
      std::vector<long long> out;
      std::string            tok;
      while (ss >> tok) {
        long long v   = 0;
        auto [p, ec]  = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size()) {
          fail(l.number, "expected an integer, got '" + tok + "'");
        }
        out.push_back(v);
      }
      return out;
    }

    inline std::size_t header(std::vector<Line> const& lines,
                              std::string const&       keyword,
                              std::size_t              lo,
                              std::size_t              hi) {
      if (lines.empty()) {
        throw InputError("empty input: expected '" + keyword + " N'");
      }
      std::istringstream ss(lines[0].text);
      std::string        kw, n, extra;
      ss >> kw >> n;
      if (kw != keyword || n.empty() || (ss >> extra)) {
        fail(lines[0].number, "expected '" + keyword + " N'");
      }
      std::size_t v = 0;
      auto [p, ec]  = std::from_chars(n.data(), n.data() + n.size(), v);
      if (ec != std::errc() || p != n.data() + n.size() || v < lo || v > hi) {
        fail(lines[0].number, keyword + " must be an integer in " + std::to_string(lo)
                                  + ".." + std::to_string(hi));
      }
      return v;
    }

  }  // namespace detail

  /// One permutation in 1-based cycle notation; points separated by commas
  /// or blanks.
  inline Permutation parse_cycles(std::string const& text,
                                  std::size_t        degree,
                                  std::size_t        line = 0) {
    std::vector<std::vector<Point>> cycles;
    std::size_t                     i = 0;
    auto skip = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
    };
    skip();
    if (i == text.size()) {
      detail::fail(line, "empty permutation; write () for the identity");
    }
    while (i < text.size()) {
      if (text[i] != '(') {
        detail::fail(line, std::string("expected '(', got '") + text[i] + "'");
      }
      ++i;
      std::vector<Point> c;
      while (true) {
        skip();
        if (i < text.size() && text[i] == ')') {
          ++i;
          break;
        }
        std::size_t b = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          ++i;
        }
        if (b == i) {
          detail::fail(line, "expected a point or ')'");
        }
        std::size_t v = 0;
        std::from_chars(text.data() + b, text.data() + i, v);
        if (v < 1 || v > degree) {
          detail::fail(line, "point " + text.substr(b, i - b) + " outside 1.."
                                 + std::to_string(degree));
        }
        c.push_back(static_cast<Point>(v - 1));
        skip();
        if (i < text.size() && text[i] == ',') {
          ++i;
        }
      }
      if (!c.empty()) {
        cycles.push_back(std::move(c));
      }
      skip();
    }
    try {
      return Permutation::from_cycles(degree, cycles);
    } catch (InputError const& e) {
      detail::fail(line, e.what());
    }
  }

  inline PermGroup read_generators(std::istream& in) {
    auto const  lines = detail::content_lines(in);
    std::size_t n     = detail::header(lines, "degree", 1, 100000);
    std::vector<Permutation> gens;
    for (std::size_t k = 1; k < lines.size(); ++k) {
      gens.push_back(parse_cycles(lines[k].text, n, lines[k].number));
    }
    return PermGroup(n, gens);
  }

  inline CayleyGroup read_cayley(std::istream& in,
                                 CayleyGroup::Relabeling* rel = nullptr) {
    auto const  lines = detail::content_lines(in);
    std::size_t m     = detail::header(lines, "order", 1, CayleyGroup::max_order);
    if (lines.size() != m + 1) {
      throw InputError("expected " + std::to_string(m) + " table rows, got "
                       + std::to_string(lines.size() - 1));
    }
    std::vector<std::vector<std::int64_t>> raw;
    for (std::size_t k = 1; k <= m; ++k) {
      auto row = detail::integers(lines[k]);
      if (row.size() != m) {
        detail::fail(lines[k].number, "row has " + std::to_string(row.size())
                                          + " entries, expected " + std::to_string(m));
      }
      std::vector<bool> seen(m);
      for (auto x : row) {
        if (x < 0 || static_cast<std::size_t>(x) >= m) {
          detail::fail(lines[k].number, "entry " + std::to_string(x) + " outside 0.."
                                            + std::to_string(m - 1));
        }
        if (seen[static_cast<std::size_t>(x)]) {
          detail::fail(lines[k].number, "not a Latin square: entry " + std::to_string(x)
                                            + " repeats in this row");
        }
        seen[static_cast<std::size_t>(x)] = true;
      }
      raw.emplace_back(row.begin(), row.end());
    }
    return validate_cayley(raw, rel);
  }

  inline Tree read_tree(std::istream& in) {
    auto const  lines = detail::content_lines(in);
    std::size_t n     = detail::header(lines, "vertices", 1, 1000000);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t k = 1; k < lines.size(); ++k) {
      auto v = detail::integers(lines[k]);
      if (v.size() != 2) {
        detail::fail(lines[k].number, "expected 'u v'");
      }
      for (auto x : v) {
        if (x < 1 || static_cast<std::size_t>(x) > n) {
          detail::fail(lines[k].number, "vertex " + std::to_string(x) + " outside 1.."
                                            + std::to_string(n));
        }
      }
      edges.emplace_back(static_cast<Vertex>(v[0] - 1), static_cast<Vertex>(v[1] - 1));
    }
    return Tree(n, std::move(edges));
  }

  inline std::ifstream open(std::string const& path) {
    std::ifstream f(path);
    if (!f) {
      throw InputError("cannot open " + path);
    }
    return f;
  }

  inline void write_generators(std::ostream& out, PermGroup const& g) {
    out << "degree " << g.degree() << "\n";
    for (auto const& p : g.generators()) {
      out << p.to_string() << "\n";
    }
  }

  inline void write_cayley(std::ostream& out, CayleyGroup const& g) {
    out << "order " << g.size() << "\n";
    for (Element a = 0; a < g.size(); ++a) {
      for (Element b = 0; b < g.size(); ++b) {
        out << (b ? " " : "") << g.mul(a, b);
      }
      out << "\n";
    }
  }

  inline void write_tree(std::ostream& out, Tree const& t) {
    out << "vertices " << t.size() << "\n";
    for (auto [u, v] : t.edges()) {
      out << u + 1 << " " << v + 1 << "\n";
    }
  }

}  // namespace mindex::io

#endif  // MINDEX_IO_HPP_

#pragma once

// Scenario files: line-oriented key/value blocks.
//
//   ring { vars = [x, y]; degrees = [(1,0), (0,1)]; certificate = (1,1) }
//   ideal { gens = [x, y] }
//   module {
//     generators = [(0,0)]
//     relation = [x^2]
//     relation = [x*y]
//   }
//   psi { target_free_rank = 1; matrix = [[1, 1]] }
//   gwindow { lo = (-3,-3); hi = (1,1) }
//   hwindow { lo = -5; hi = 0 }
//   caps { n_cap = 10; ray_cap = 8 }
//
// Degrees are written (free... ; torsion...). Statements end at ';' or at a
// newline outside brackets. '#' starts a comment.

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcoh/grading.hpp"
#include "gcoh/linalg.hpp"
#include "gcoh/localcoh.hpp"
#include "gcoh/module.hpp"
#include "gcoh/ring.hpp"

namespace gcoh {

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;
};

inline std::string to_string(const Diagnostic& d) {
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message;
}

/// Thrown with every diagnostic found; `syntax` distinguishes malformed text
/// from well-formed text describing an invalid scenario.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(bool syntax, std::vector<Diagnostic> diags)
      : std::runtime_error(render(diags)), syntax_(syntax), diags_(std::move(diags)) {}

  bool syntax() const { return syntax_; }
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  static std::string render(const std::vector<Diagnostic>& diags) {
    std::string s;
    for (const auto& d : diags) s += (s.empty() ? "" : "\n") + to_string(d);
    return s;
  }

  bool syntax_;
  std::vector<Diagnostic> diags_;
};

struct WindowSpec {
  std::vector<Int> lo, hi;
  bool operator==(const WindowSpec&) const = default;
};

struct PsiSpec {
  DegreeGroup target;
  std::vector<std::vector<Int>> matrix;
  std::optional<std::vector<Rational>> certificate;
  bool operator==(const PsiSpec&) const = default;
};

struct Scenario {
  RingPtr ring;
  std::optional<MonomialIdeal> ideal;
  std::optional<GradedModule> module;
  std::optional<GradedModule> target;
  std::optional<PsiSpec> psi;
  std::optional<WindowSpec> gwindow;
  std::optional<WindowSpec> hwindow;
  Caps caps;

  GradedModule source_module() const { return module ? *module : GradedModule::ring_module(ring); }
  GradedModule target_module() const { return target ? *target : GradedModule::ring_module(ring); }

  GroupEpimorphism epimorphism() const {
    if (!psi) throw std::invalid_argument("scenario has no psi block");
    return GroupEpimorphism(ring->group(), psi->target, psi->matrix);
  }

  DegreeWindow source_window() const {
    if (!gwindow) throw std::invalid_argument("scenario has no gwindow block");
    return DegreeWindow::box(ring->group(), gwindow->lo, gwindow->hi);
  }

  DegreeWindow target_window() const {
    if (!hwindow) throw std::invalid_argument("scenario has no hwindow block");
    if (!psi) throw std::invalid_argument("scenario has no psi block");
    return DegreeWindow::box(psi->target, hwindow->lo, hwindow->hi);
  }
};

inline bool same_module(const GradedModule& a, const GradedModule& b) {
  if (!(a.generator_degrees() == b.generator_degrees())) return false;
  if (a.relations().size() != b.relations().size()) return false;
  for (std::size_t k = 0; k < a.relations().size(); ++k) {
    const auto& r = a.relations()[k];
    const auto& s = b.relations()[k];
    if (!(r.degree == s.degree) || r.entries != s.entries) return false;
  }
  return true;
}

inline bool operator==(const Scenario& a, const Scenario& b) {
  auto opt_module = [](const std::optional<GradedModule>& x, const std::optional<GradedModule>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || same_module(*x, *y);
  };
  if (!(*a.ring == *b.ring)) return false;
  if (a.ring->names() != b.ring->names()) return false;
  if (a.ideal.has_value() != b.ideal.has_value()) return false;
  if (a.ideal && a.ideal->generators() != b.ideal->generators()) return false;
  return opt_module(a.module, b.module) && opt_module(a.target, b.target) && a.psi == b.psi &&
         a.gwindow == b.gwindow && a.hwindow == b.hwindow && a.caps.n_cap == b.caps.n_cap &&
         a.caps.ray_cap == b.caps.ray_cap;
}

namespace detail {

struct Token {
  enum Kind { Ident, Number, Punct, Newline, End } kind = End;
  std::string text;
  int line = 1;
  int column = 1;
};

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1, depth = 0;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string s, int l, int c) { out.push_back(Token{k, std::move(s), l, c}); };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (ch == '\n') {
      if (depth == 0) push(Token::Newline, "\\n", line, col);
      ++i, ++line, col = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i, ++col;
      continue;
    }
    const int l = line, c = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      push(Token::Ident, text.substr(i, j - i), l, c);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Token::Number, text.substr(i, j - i), l, c);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    static const std::string punct = "{}[](),;=+-*^/";
    if (punct.find(ch) == std::string::npos)
      throw ScenarioError(true, {{l, c, std::string("unexpected character '") + ch + "'"}});
    if (ch == '(' || ch == '[') ++depth;
    if ((ch == ')' || ch == ']') && depth > 0) --depth;
    push(Token::Punct, std::string(1, ch), l, c);
    ++i, ++col;
  }
  push(Token::End, "end of input", line, col);
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(const std::string& punct) const { return peek().kind == Token::Punct && peek().text == punct; }
  bool at_end_of_statement() const {
    return peek().kind == Token::Newline || peek().kind == Token::End || at(";") || at("}");
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw ScenarioError(true, {{t.line, t.column, msg}});
  }

  void expect(const std::string& punct) {
    if (!at(punct)) fail("expected '" + punct + "', found '" + peek().text + "'");
    next();
  }

  std::string ident() {
    if (peek().kind != Token::Ident) fail("expected a name, found '" + peek().text + "'");
    return next().text;
  }

  void skip_newlines() {
    while (peek().kind == Token::Newline || at(";")) next();
  }

  Int integer() {
    bool neg = false;
    if (at("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Token::Number) fail("expected an integer, found '" + peek().text + "'");
    const Token& t = next();
    try {
      const Int v = std::stoll(t.text);
      return neg ? -v : v;
    } catch (const std::out_of_range&) {
      fail_at(t, "integer out of range");
    }
  }

  Rational rational() {
    const Int num = integer();
    if (at("/")) {
      next();
      const Token& t = peek();
      const Int den = integer();
      if (den <= 0) fail_at(t, "denominator must be positive");
      Rational q(to_rational(num) / to_rational(den));
      q.canonicalize();
      return q;
    }
    return to_rational(num);
  }

  /// "(a, b ; t)", or a bare integer for a single coordinate.
  std::pair<std::vector<Int>, std::vector<Int>> degree_parts() {
    std::vector<Int> free, torsion;
    if (!at("(")) {
      free.push_back(integer());
      return {free, torsion};
    }
    next();
    auto* part = &free;
    if (at(";")) {
      next();
      part = &torsion;
    }
    if (!at(")")) {
      for (;;) {
        part->push_back(integer());
        if (at(",")) {
          next();
          continue;
        }
        if (at(";") && part == &free) {
          next();
          part = &torsion;
          continue;
        }
        break;
      }
    }
    expect(")");
    return {free, torsion};
  }

  template <class F>
  void list(F&& item) {
    expect("[");
    if (at("]")) {
      next();
      return;
    }
    for (;;) {
      item();
      if (at(",")) {
        next();
        continue;
      }
      break;
    }
    expect("]");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline Monomial parse_monomial_factor(Cursor& c, const std::vector<std::string>& names, std::vector<int>& exps) {
  const Token& t = c.peek();
  const std::string name = c.ident();
  std::size_t idx = names.size();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) idx = i;
  if (idx == names.size()) Cursor::fail_at(t, "unknown variable '" + name + "'");
  int e = 1;
  if (c.at("^")) {
    c.next();
    const Token& et = c.peek();
    const Int v = c.integer();
    if (v < 0) Cursor::fail_at(et, "negative exponent");
    e = static_cast<int>(v);
  }
  exps[idx] += e;
  return Monomial(exps);
}

/// term := [rational '*'] factor ('*' factor)* | rational
inline Polynomial parse_polynomial(Cursor& c, const std::vector<std::string>& names) {
  Polynomial p;
  bool first = true;
  for (;;) {
    Rational sign = 1;
    if (c.at("+") || c.at("-")) {
      if (c.at("-")) sign = -1;
      c.next();
    } else if (!first) {
      break;
    }
    first = false;
    Rational coeff = 1;
    std::vector<int> exps(names.size(), 0);
    if (c.peek().kind == Token::Number) {
      coeff = c.rational();
      if (c.at("*")) {
        c.next();
        parse_monomial_factor(c, names, exps);
      }
    } else {
      parse_monomial_factor(c, names, exps);
    }
    while (c.at("*")) {
      c.next();
      parse_monomial_factor(c, names, exps);
    }
    p.add_term(Monomial(exps), sign * coeff);
  }
  return p;
}

struct Statement {
  Token key;
  std::size_t value_pos = 0;
};

struct RawModule {
  Token at;
  std::vector<std::pair<std::vector<Int>, std::vector<Int>>> generators;
  std::vector<std::pair<Token, std::vector<Polynomial>>> relations;
  std::vector<std::optional<std::pair<std::vector<Int>, std::vector<Int>>>> relation_degrees;
};

}  // namespace detail

/// Parses and validates a scenario. Syntax errors stop at the first
/// offending token; semantic errors are collected and reported together.
inline Scenario parse_scenario(const std::string& text) {
  using detail::Cursor;
  using detail::Token;
  Cursor c(detail::tokenize(text));

  // Raw values, validated after the whole file is read.
  std::optional<Token> ring_at, ideal_at, psi_at;
  std::vector<std::string> names;
  std::vector<std::pair<Token, std::pair<std::vector<Int>, std::vector<Int>>>> var_degrees;
  std::optional<std::pair<Token, std::vector<Rational>>> certificate;
  std::optional<Int> free_rank;
  std::vector<Int> torsion;
  std::vector<std::pair<Token, Polynomial>> ideal_gens;
  std::optional<detail::RawModule> module_raw, target_raw;
  std::optional<Int> psi_free;
  std::vector<Int> psi_torsion;
  std::vector<std::vector<Int>> psi_matrix;
  std::optional<std::vector<Rational>> psi_cert;
  std::map<std::string, std::pair<Token, WindowSpec>> windows;
  Caps caps;

  std::vector<Diagnostic> sem;
  auto complain = [&](const Token& t, std::string msg) { sem.push_back({t.line, t.column, std::move(msg)}); };

  // Module blocks mention variables, so the ring block must come first.
  auto parse_module_block = [&](const Token& at) {
    detail::RawModule m;
    m.at = at;
    c.skip_newlines();
    while (!c.at("}")) {
      const Token key = c.peek();
      const std::string k = c.ident();
      c.expect("=");
      if (k == "generators") {
        c.list([&] { m.generators.push_back(c.degree_parts()); });
      } else if (k == "relation") {
        std::vector<Polynomial> entries;
        const Token open = c.peek();
        c.list([&] { entries.push_back(detail::parse_polynomial(c, names)); });
        std::optional<std::pair<std::vector<Int>, std::vector<Int>>> deg;
        if (c.peek().kind == Token::Ident && c.peek().text == "at") {
          c.next();
          deg = c.degree_parts();
        }
        m.relations.emplace_back(open, std::move(entries));
        m.relation_degrees.push_back(std::move(deg));
      } else {
        Cursor::fail_at(key, "unknown key '" + k + "' in module block");
      }
      if (!c.at_end_of_statement()) c.fail("expected end of statement, found '" + c.peek().text + "'");
      c.skip_newlines();
    }
    return m;
  };

  c.skip_newlines();
  while (c.peek().kind != Token::End) {
    const Token head = c.peek();
    const std::string block = c.ident();
    c.skip_newlines();
    c.expect("{");
    c.skip_newlines();
    if (block == "module" || block == "target_module") {
      if (!ring_at) Cursor::fail_at(head, "the ring block must precede '" + block + "'");
      auto m = parse_module_block(head);
      (block == "module" ? module_raw : target_raw) = std::move(m);
    } else {
      if (block == "ring") ring_at = head;
      else if (block == "ideal") {
        if (!ring_at) Cursor::fail_at(head, "the ring block must precede 'ideal'");
        ideal_at = head;
      } else if (block == "psi") psi_at = head;
      else if (block != "gwindow" && block != "hwindow" && block != "caps")
        Cursor::fail_at(head, "unknown block '" + block + "'");
      while (!c.at("}")) {
        const Token key = c.peek();
        const std::string k = c.ident();
        c.expect("=");
        auto unknown = [&] { Cursor::fail_at(key, "unknown key '" + k + "' in " + block + " block"); };
        if (block == "ring") {
          if (k == "vars") c.list([&] { names.push_back(c.ident()); });
          else if (k == "degrees") c.list([&] {
            const Token t = c.peek();
            var_degrees.emplace_back(t, c.degree_parts());
          });
          else if (k == "certificate") {
            std::vector<Rational> w;
            const Token t = c.peek();
            if (c.at("(")) {
              c.next();
              for (;;) {
                w.push_back(c.rational());
                if (!c.at(",")) break;
                c.next();
              }
              c.expect(")");
            } else {
              w.push_back(c.rational());
            }
            certificate.emplace(t, std::move(w));
          } else if (k == "free_rank") free_rank = c.integer();
          else if (k == "torsion") c.list([&] { torsion.push_back(c.integer()); });
          else unknown();
        } else if (block == "ideal") {
          if (k != "gens") unknown();
          c.list([&] {
            const Token t = c.peek();
            ideal_gens.emplace_back(t, detail::parse_polynomial(c, names));
          });
        } else if (block == "psi") {
          if (k == "target_free_rank") psi_free = c.integer();
          else if (k == "target_torsion") c.list([&] { psi_torsion.push_back(c.integer()); });
          else if (k == "matrix") c.list([&] {
            std::vector<Int> row;
            c.list([&] { row.push_back(c.integer()); });
            psi_matrix.push_back(std::move(row));
          });
          else if (k == "certificate") {
            std::vector<Rational> w;
            if (c.at("(")) {
              c.next();
              for (;;) {
                w.push_back(c.rational());
                if (!c.at(",")) break;
                c.next();
              }
              c.expect(")");
            } else {
              w.push_back(c.rational());
            }
            psi_cert = std::move(w);
          } else unknown();
        } else if (block == "gwindow" || block == "hwindow") {
          auto& slot = windows[block];
          slot.first = head;
          if (k == "lo") slot.second.lo = c.degree_parts().first;
          else if (k == "hi") slot.second.hi = c.degree_parts().first;
          else unknown();
        } else if (block == "caps") {
          const Token t = c.peek();
          const Int v = c.integer();
          if (k == "n_cap") caps.n_cap = static_cast<int>(v);
          else if (k == "ray_cap") caps.ray_cap = static_cast<int>(v);
          else unknown();
          if (v < (k == "n_cap" ? 2 : 1)) complain(t, k + " is too small");
        }
        if (!c.at_end_of_statement()) c.fail("expected end of statement, found '" + c.peek().text + "'");
        c.skip_newlines();
      }
    }
    c.expect("}");
    c.skip_newlines();
  }

  // Semantic validation.
  if (!ring_at) throw ScenarioError(false, {{1, 1, "missing ring block"}});
  Scenario s;
  s.caps = caps;
  if (names.empty()) complain(*ring_at, "ring has no variables");
  if (var_degrees.size() != names.size())
    complain(*ring_at, "ring declares " + std::to_string(names.size()) + " variables but " +
                           std::to_string(var_degrees.size()) + " degrees");
  const std::size_t r =
      free_rank ? static_cast<std::size_t>(*free_rank) : (var_degrees.empty() ? 0 : var_degrees[0].second.first.size());
  for (auto t : torsion)
    if (t < 2) complain(*ring_at, "torsion orders must be at least 2");
  if (!sem.empty()) throw ScenarioError(false, sem);
  const DegreeGroup G(r, torsion);
  std::vector<Degree> degs;
  for (const auto& [t, d] : var_degrees) {
    if (d.first.size() != r || d.second.size() != torsion.size()) {
      complain(t, "degree does not belong to " + G.describe());
      continue;
    }
    degs.push_back(G.make(d.first, d.second));
  }
  if (!certificate) complain(*ring_at, "ring has no certificate");
  else if (certificate->second.size() != r)
    complain(certificate->first, "certificate needs " + std::to_string(r) + " entries");
  if (!sem.empty()) throw ScenarioError(false, sem);
  for (std::size_t i = 0; i < degs.size(); ++i) {
    Rational w = 0;
    for (std::size_t j = 0; j < r; ++j) w += certificate->second[j] * to_rational(degs[i].free[j]);
    if (sgn(w) <= 0)
      complain(certificate->first, "certificate is not strictly positive on deg " + names[i] + " = " + to_string(degs[i]));
  }
  if (!sem.empty()) throw ScenarioError(false, sem);
  s.ring = std::make_shared<GradedPolynomialRing>(G, names, degs, certificate->second);
  const auto& R = *s.ring;

  if (ideal_at) {
    std::vector<Monomial> gens;
    for (const auto& [t, p] : ideal_gens) {
      if (p.terms().size() != 1 || p.terms().begin()->second != 1)
        complain(t, "ideal generators must be monomials");
      else
        gens.push_back(p.terms().begin()->first);
    }
    if (sem.empty()) s.ideal = MonomialIdeal(names.size(), gens);
  }

  auto build_module = [&](const detail::RawModule& m) -> std::optional<GradedModule> {
    const std::size_t before = sem.size();
    std::vector<Degree> gens;
    for (const auto& d : m.generators) {
      if (d.first.size() != r || d.second.size() != torsion.size()) {
        complain(m.at, "generator degree does not belong to " + G.describe());
        continue;
      }
      gens.push_back(G.make(d.first, d.second));
    }
    std::vector<Relation> rels;
    for (std::size_t k = 0; k < m.relations.size(); ++k) {
      const auto& [t, entries] = m.relations[k];
      const std::string where = "relation " + std::to_string(k + 1);
      if (entries.size() != gens.size()) {
        complain(t, where + " has " + std::to_string(entries.size()) + " entries for " + std::to_string(gens.size()) +
                        " generators");
        continue;
      }
      std::optional<Degree> col;
      if (const auto& d = m.relation_degrees[k]) {
        if (d->first.size() != r || d->second.size() != torsion.size())
          complain(t, where + " degree does not belong to " + G.describe());
        else
          col = G.make(d->first, d->second);
      }
      bool ok = true;
      for (std::size_t j = 0; j < entries.size(); ++j) {
        if (entries[j].is_zero()) continue;
        const auto deg = R.degree(entries[j]);
        const std::string label = where + ", entry " + std::to_string(j + 1) + " (" + to_string(entries[j], names) + ")";
        if (!deg) {
          complain(t, label + " is not homogeneous");
          ok = false;
          continue;
        }
        const Degree want = G.add(*deg, gens[j]);
        if (!col) col = want;
        else if (!(*col == want)) {
          complain(t, label + " has degree " + to_string(*deg) + ", inconsistent with column degree " + to_string(*col));
          ok = false;
        }
      }
      if (ok && !col) {
        complain(t, where + " is zero; give its degree with 'at'");
        ok = false;
      }
      if (ok) rels.push_back(Relation{*col, entries});
    }
    if (sem.size() != before) return std::nullopt;
    return GradedModule(s.ring, gens, rels);
  };
  if (module_raw) s.module = build_module(*module_raw);
  if (target_raw) s.target = build_module(*target_raw);

  if (psi_at) {
    PsiSpec p;
    p.target = DegreeGroup(static_cast<std::size_t>(psi_free.value_or(1)), psi_torsion);
    p.matrix = psi_matrix;
    p.certificate = psi_cert;
    try {
      const GroupEpimorphism e(G, p.target, p.matrix);
      if (!e.verify_surjective()) complain(*psi_at, "psi is not surjective");
      if (p.certificate && p.certificate->size() != p.target.free_rank())
        complain(*psi_at, "psi certificate needs " + std::to_string(p.target.free_rank()) + " entries");
    } catch (const std::invalid_argument& e) {
      complain(*psi_at, e.what());
    }
    s.psi = std::move(p);
  }

  for (auto& [name, slot] : windows) {
    const auto& [t, spec] = slot;
    const std::size_t want = name == "gwindow" ? r : (s.psi ? s.psi->target.free_rank() : 0);
    if (name == "hwindow" && !s.psi) complain(t, "hwindow needs a psi block");
    else if (spec.lo.size() != want || spec.hi.size() != want)
      complain(t, name + " bounds need " + std::to_string(want) + " coordinates");
    else
      for (std::size_t i = 0; i < want; ++i)
        if (spec.lo[i] > spec.hi[i]) complain(t, name + " has lo > hi in coordinate " + std::to_string(i + 1));
    (name == "gwindow" ? s.gwindow : s.hwindow) = spec;
  }
  if (!sem.empty()) throw ScenarioError(false, sem);
  return s;
}

/// "lo:hi" with each bound a degree tuple or one integer for every coordinate.
inline WindowSpec parse_window_text(const std::string& text, std::size_t rank) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ScenarioError(true, {{1, 1, "window must be written lo:hi"}});
  auto bound = [rank](const std::string& part, int offset) {
    detail::Cursor c(detail::tokenize(part));
    try {
      auto v = c.degree_parts().first;
      if (c.peek().kind != detail::Token::End) c.fail("trailing text in window bound");
      if (v.size() == 1 && rank > 1) v.assign(rank, v[0]);
      if (v.size() != rank)
        throw ScenarioError(false, {{1, offset, "window bound needs " + std::to_string(rank) + " coordinates"}});
      return v;
    } catch (const ScenarioError& e) {
      auto d = e.diagnostics();
      for (auto& x : d) x.column += offset - 1;
      throw ScenarioError(e.syntax(), d);
    }
  };
  WindowSpec w{bound(text.substr(0, colon), 1), bound(text.substr(colon + 1), static_cast<int>(colon) + 2)};
  for (std::size_t i = 0; i < rank; ++i)
    if (w.lo[i] > w.hi[i]) throw ScenarioError(false, {{1, 1, "window has lo > hi"}});
  return w;
}

/// "x, y^2" or "[x, y^2]".
inline MonomialIdeal parse_ideal_text(const std::string& text, const GradedPolynomialRing& R) {
  const std::string t = !text.empty() && text[0] == '[' ? text : "[" + text + "]";
  detail::Cursor c(detail::tokenize(t));
  std::vector<Monomial> gens;
  c.list([&] {
    const auto tok = c.peek();
    const auto p = detail::parse_polynomial(c, R.names());
    if (p.terms().size() != 1 || p.terms().begin()->second != 1)
      detail::Cursor::fail_at(tok, "ideal generators must be monomials");
    gens.push_back(p.terms().begin()->first);
  });
  if (c.peek().kind != detail::Token::End) c.fail("trailing text after ideal");
  return MonomialIdeal(R.variable_count(), gens);
}

/// "1,1" (one row), "1,0;0,1" (rows split by ';') or "[[1,0],[0,1]]".
inline std::vector<std::vector<Int>> parse_matrix_text(std::string text) {
  if (text.empty() || text[0] != '[') {
    std::string t = "[[";
    for (char ch : text) t += ch == ';' ? std::string("],[") : std::string(1, ch);
    text = t + "]]";
  }
  detail::Cursor c(detail::tokenize(text));
  std::vector<std::vector<Int>> m;
  c.list([&] {
    std::vector<Int> row;
    c.list([&] { row.push_back(c.integer()); });
    m.push_back(std::move(row));
  });
  if (c.peek().kind != detail::Token::End) c.fail("trailing text after matrix");
  return m;
}

namespace detail {

inline std::string degree_text(const std::vector<Int>& free, const std::vector<Int>& torsion = {}) {
  std::string s = "(";
  for (std::size_t i = 0; i < free.size(); ++i) s += (i ? "," : "") + std::to_string(free[i]);
  if (!torsion.empty()) {
    s += ";";
    for (std::size_t i = 0; i < torsion.size(); ++i) s += (i ? "," : "") + std::to_string(torsion[i]);
  }
  return s + ")";
}

inline std::string degree_text(const Degree& d) { return degree_text(d.free, d.torsion); }

inline std::string rational_tuple(const std::vector<Rational>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i].get_str();
  return s + ")";
}

inline void write_module(std::ostringstream& os, const char* block, const GradedModule& M,
                         const std::vector<std::string>& names) {
  os << block << " {\n  generators = [";
  for (std::size_t j = 0; j < M.generator_degrees().size(); ++j)
    os << (j ? ", " : "") << degree_text(M.generator_degrees()[j]);
  os << "]\n";
  for (const auto& r : M.relations()) {
    os << "  relation = [";
    for (std::size_t j = 0; j < r.entries.size(); ++j) os << (j ? ", " : "") << to_string(r.entries[j], names);
    os << "] at " << degree_text(r.degree) << "\n";
  }
  os << "}\n";
}

}  // namespace detail

/// Canonical text of a validated scenario; parse_scenario inverts it.
inline std::string serialize_scenario(const Scenario& s) {
  using detail::degree_text;
  std::ostringstream os;
  const auto& R = *s.ring;
  const auto& G = R.group();
  os << "ring {\n  vars = [";
  for (std::size_t i = 0; i < R.names().size(); ++i) os << (i ? ", " : "") << R.names()[i];
  os << "]\n  free_rank = " << G.free_rank() << "\n";
  if (!G.torsion_orders().empty()) {
    os << "  torsion = [";
    for (std::size_t i = 0; i < G.torsion_orders().size(); ++i) os << (i ? ", " : "") << G.torsion_orders()[i];
    os << "]\n";
  }
  os << "  degrees = [";
  for (std::size_t i = 0; i < R.variable_degrees().size(); ++i)
    os << (i ? ", " : "") << degree_text(R.variable_degrees()[i]);
  os << "]\n  certificate = " << detail::rational_tuple(R.certificate()) << "\n}\n";
  if (s.ideal) {
    os << "ideal {\n  gens = [";
    const auto& g = s.ideal->generators();
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? ", " : "") << to_string(g[i], R.names());
    os << "]\n}\n";
  }
  if (s.module) detail::write_module(os, "module", *s.module, R.names());
  if (s.target) detail::write_module(os, "target_module", *s.target, R.names());
  if (s.psi) {
    os << "psi {\n  target_free_rank = " << s.psi->target.free_rank() << "\n";
    if (!s.psi->target.torsion_orders().empty()) {
      os << "  target_torsion = [";
      const auto& t = s.psi->target.torsion_orders();
      for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << t[i];
      os << "]\n";
    }
    os << "  matrix = [";
    for (std::size_t i = 0; i < s.psi->matrix.size(); ++i) {
      os << (i ? ", " : "") << "[";
      for (std::size_t j = 0; j < s.psi->matrix[i].size(); ++j) os << (j ? ", " : "") << s.psi->matrix[i][j];
      os << "]";
    }
    os << "]\n";
    if (s.psi->certificate) os << "  certificate = " << detail::rational_tuple(*s.psi->certificate) << "\n";
    os << "}\n";
  }
  auto window = [&](const char* name, const std::optional<WindowSpec>& w) {
    if (w) os << name << " { lo = " << degree_text(w->lo) << "; hi = " << degree_text(w->hi) << " }\n";
  };
  window("gwindow", s.gwindow);
  window("hwindow", s.hwindow);
  os << "caps { n_cap = " << s.caps.n_cap << "; ray_cap = " << s.caps.ray_cap << " }\n";
  return os.str();
}

}  // namespace gcoh

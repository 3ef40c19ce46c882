// Recursive-descent parser for the text DSL. Parse errors report line and
// column.
//
//   sort A;
//   fun plus : A A -> A;            fun zero : -> A;
//   rel R : A A;
//   axiom forallctx(x, y): top |- plus(x, y) = plus(y, x);
//   sequent forallctx(x): top |- f(x) = g(x);
//   monoid <a, b | ab = ba>;
//
// Model files reuse the signature declarations with carrier and table
// payloads; lab files describe posets, categories, copresheaves and
// transformations. Formulas use top, &, exists x., =; conjunction is
// right-associative and an existential body extends to the end of its
// enclosing group.

#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartlog/copresheaf.hpp"
#include "cartlog/model.hpp"
#include "cartlog/theory.hpp"

namespace cartlog {

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
        line(l),
        column(c) {}
};

namespace parser {

struct Token {
  enum Kind { Ident, Number, Punct, End } kind = End;
  std::string text;
  int line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token next() {
    Token t = cur_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur_.line, cur_.column);
  }

 private:
  void advance() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '#' || (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')) {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    cur_ = Token{};
    cur_.line = line_;
    cur_.column = col_;
    if (pos_ >= src_.size()) {
      cur_.kind = Token::End;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        s += src_[pos_++];
        ++col_;
      }
      cur_.kind = Token::Ident;
      cur_.text = s;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        s += src_[pos_++];
        ++col_;
      }
      cur_.kind = Token::Number;
      cur_.text = s;
      return;
    }
    // multi-character punctuation first
    static const char* multi[] = {"|-", "->", "<="};
    for (const char* m : multi) {
      std::size_t len = std::string(m).size();
      if (src_.compare(pos_, len, m) == 0) {
        cur_.kind = Token::Punct;
        cur_.text = m;
        pos_ += len;
        col_ += static_cast<int>(len);
        return;
      }
    }
    cur_.kind = Token::Punct;
    cur_.text = std::string(1, c);
    ++pos_;
    ++col_;
  }

  std::string src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  bool at_end() { return lex_.peek().kind == Token::End; }

  bool peek_ident(const std::string& s) {
    return lex_.peek().kind == Token::Ident && lex_.peek().text == s;
  }
  bool peek_punct(const std::string& s) {
    return lex_.peek().kind == Token::Punct && lex_.peek().text == s;
  }
  bool accept_ident(const std::string& s) {
    if (!peek_ident(s)) return false;
    lex_.next();
    return true;
  }
  bool accept_punct(const std::string& s) {
    if (!peek_punct(s)) return false;
    lex_.next();
    return true;
  }
  void expect_punct(const std::string& s) {
    if (!accept_punct(s)) lex_.fail("expected '" + s + "'");
  }
  std::string expect_ident(const std::string& what) {
    if (lex_.peek().kind != Token::Ident) lex_.fail("expected " + what);
    return lex_.next().text;
  }
  int expect_number() {
    if (lex_.peek().kind != Token::Number) lex_.fail("expected a number");
    return std::stoi(lex_.next().text);
  }
  [[noreturn]] void fail(const std::string& msg) { lex_.fail(msg); }

  Lexer lex_;
};

// Variable scope for formula parsing: name -> Variable.
struct Scope {
  const Signature* sig = nullptr;
  std::vector<std::pair<std::string, Variable>> vars;
  std::map<Sort, int> next_rank;

  Variable declare(Parser& p, const std::string& name, const std::optional<std::string>& sort) {
    for (const auto& [n, v] : vars)
      if (n == name) p.fail("variable '" + name + "' already declared");
    Sort s;
    if (sort) {
      s = Sort{*sort};
      if (!sig->has_sort(s)) p.fail("undeclared sort '" + *sort + "'");
    } else if (sig->sorts.size() == 1) {
      s = sig->sorts[0];
    } else {
      p.fail("variable '" + name + "' needs a sort annotation");
    }
    Variable v{s, next_rank[s]++};
    vars.push_back({name, v});
    return v;
  }

  std::optional<Variable> lookup(const std::string& name) const {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      if (it->first == name) return it->second;
    return std::nullopt;
  }
};

inline Term parse_term(Parser& p, Scope& scope);

inline std::vector<Term> parse_term_args(Parser& p, Scope& scope) {
  std::vector<Term> args;
  p.expect_punct("(");
  if (!p.accept_punct(")")) {
    args.push_back(parse_term(p, scope));
    while (p.accept_punct(",")) args.push_back(parse_term(p, scope));
    p.expect_punct(")");
  }
  return args;
}

inline Term parse_term(Parser& p, Scope& scope) {
  std::string name = p.expect_ident("a term");
  if (p.peek_punct("(")) {
    const FunctionSymbol* f = scope.sig->find_function(name);
    if (!f) p.fail("unknown function symbol '" + name + "'");
    auto args = parse_term_args(p, scope);
    if (static_cast<int>(args.size()) != f->arity())
      p.fail("arity mismatch applying '" + name + "'");
    for (std::size_t i = 0; i < args.size(); ++i)
      if (args[i].sort() != f->arg_sorts[i]) p.fail("argument sort mismatch in '" + name + "'");
    return Term(*f, args);
  }
  if (auto v = scope.lookup(name)) return var(*v);
  const FunctionSymbol* f = scope.sig->find_function(name);
  if (f && f->arity() == 0) return constant(*f);
  p.fail("unknown variable or constant '" + name + "'");
}

inline Formula parse_formula(Parser& p, Scope& scope);

inline bool lexer_is_ident(Parser& p) { return p.lex_.peek().kind == Token::Ident; }

inline Formula parse_formula_unit(Parser& p, Scope& scope) {
  if (p.accept_punct("(")) {
    Formula f = parse_formula(p, scope);
    p.expect_punct(")");
    return f;
  }
  if (p.accept_ident("top")) return Formula::top();
  if (p.accept_ident("exists")) {
    std::string name = p.expect_ident("a bound variable");
    std::optional<std::string> sort;
    if (p.accept_punct(":")) sort = p.expect_ident("a sort");
    Scope inner = scope;
    Variable v = inner.declare(p, name, sort);
    p.expect_punct(".");
    Formula body = parse_formula(p, inner);
    return Formula::exists(v, body);
  }
  // relation atom or equality
  if (lexer_is_ident(p)) {
    std::string name = p.lex_.peek().text;
    const RelationSymbol* r = scope.sig->find_relation(name);
    if (r) {
      p.lex_.next();
      auto args = parse_term_args(p, scope);
      if (static_cast<int>(args.size()) != r->arity())
        p.fail("arity mismatch applying relation '" + name + "'");
      return Formula::rel(*r, args);
    }
  }
  Term lhs = parse_term(p, scope);
  p.expect_punct("=");
  Term rhs = parse_term(p, scope);
  if (lhs.sort() != rhs.sort()) p.fail("equality between different sorts");
  return Formula::eq(lhs, rhs);
}

inline Formula parse_formula(Parser& p, Scope& scope) {
  Formula f = parse_formula_unit(p, scope);
  if (p.accept_punct("&")) {
    Formula rest = parse_formula(p, scope);
    return Formula::conj(f, rest);
  }
  return f;
}

inline Scope parse_forallctx(Parser& p, const Signature& sig) {
  Scope scope;
  scope.sig = &sig;
  if (!p.accept_ident("forallctx")) p.fail("expected 'forallctx'");
  p.expect_punct("(");
  if (!p.accept_punct(")")) {
    do {
      std::string name = p.expect_ident("a context variable");
      std::optional<std::string> sort;
      if (p.accept_punct(":")) sort = p.expect_ident("a sort");
      scope.declare(p, name, sort);
    } while (p.accept_punct(","));
    p.expect_punct(")");
  }
  return scope;
}

inline Sequent parse_sequent_body(Parser& p, const Signature& sig) {
  Scope scope = parse_forallctx(p, sig);
  p.expect_punct(":");
  Formula ante = parse_formula(p, scope);
  p.expect_punct("|-");
  Formula cons = parse_formula(p, scope);
  std::vector<Variable> ctx;
  for (const auto& [n, v] : scope.vars) ctx.push_back(v);
  return Sequent{ante, Context(ctx), cons};
}

inline MonoidPresentation parse_monoid_body(Parser& p) {
  // after the 'monoid' keyword: <a, b | ab = ba, ...>;
  MonoidPresentation m;
  p.expect_punct("<");
  if (!p.peek_punct("|") && !p.peek_punct(">")) {
    do {
      std::string g = p.expect_ident("a generator");
      if (g.size() != 1) p.fail("generators must be single characters");
      m.generators.push_back(g);
    } while (p.accept_punct(","));
  }
  auto word_of = [&](const std::string& text) -> Word {
    auto w = parse_word(m, text);
    if (!w) p.fail("word '" + text + "' uses an undeclared generator");
    return *w;
  };
  if (p.accept_punct("|")) {
    while (!p.peek_punct(">")) {
      std::string l = p.expect_ident("a word");
      p.expect_punct("=");
      std::string r = p.expect_ident("a word");
      m.relations.push_back({word_of(l), word_of(r)});
      if (!p.accept_punct(",")) break;
    }
  }
  p.expect_punct(">");
  p.expect_punct(";");
  m.validate();
  return m;
}

}  // namespace parser

// ---------------------------------------------------------------------------
// Entry points

// A theory file: sort/fun/rel declarations followed by axioms. A trailing
// 'monoid <...>;' block is also accepted and returned separately.
struct ParsedFile {
  Theory theory;
  std::optional<MonoidPresentation> presentation;
  std::vector<Sequent> sequents;  // standalone 'sequent' statements
  bool has_theory = false;
};

inline ParsedFile parse_file(const std::string& src) {
  parser::Parser p(src);
  ParsedFile out;
  Signature& sig = out.theory.signature;

  while (!p.at_end()) {
    if (p.accept_ident("sort")) {
      std::string name = p.expect_ident("a sort name");
      sig.sorts.push_back(Sort{name});
      p.expect_punct(";");
      out.has_theory = true;
    } else if (p.accept_ident("fun")) {
      std::string name = p.expect_ident("a function symbol");
      p.expect_punct(":");
      std::vector<Sort> args;
      while (!p.peek_punct("->")) args.push_back(Sort{p.expect_ident("an argument sort")});
      p.expect_punct("->");
      Sort res{p.expect_ident("a result sort")};
      sig.functions.push_back(FunctionSymbol{name, args, res});
      p.expect_punct(";");
      out.has_theory = true;
    } else if (p.accept_ident("rel")) {
      std::string name = p.expect_ident("a relation symbol");
      p.expect_punct(":");
      std::vector<Sort> args;
      while (!p.peek_punct(";")) args.push_back(Sort{p.expect_ident("an argument sort")});
      sig.relations.push_back(RelationSymbol{name, args});
      p.expect_punct(";");
      out.has_theory = true;
    } else if (p.accept_ident("axiom")) {
      Sequent s = parser::parse_sequent_body(p, sig);
      p.expect_punct(";");
      out.theory.axioms.push_back(s);
      out.has_theory = true;
    } else if (p.accept_ident("sequent")) {
      Sequent s = parser::parse_sequent_body(p, sig);
      p.expect_punct(";");
      out.sequents.push_back(s);
    } else if (p.accept_ident("monoid")) {
      out.presentation = parser::parse_monoid_body(p);
    } else {
      p.fail("expected a declaration");
    }
  }

  // Axioms without binders are certified cartesian outright.
  for (const auto& ax : out.theory.axioms) {
    bool has_exists = false;
    std::vector<Formula> todo{ax.antecedent, ax.consequent};
    while (!todo.empty()) {
      Formula f = todo.back();
      todo.pop_back();
      if (f.is_exists()) has_exists = true;
      if (f.is_and()) {
        todo.push_back(f.and_parts().lhs());
        todo.push_back(f.and_parts().rhs());
      }
    }
    out.theory.axiom_status.push_back(has_exists ? CartesianStatus::Declared
                                                 : CartesianStatus::Certified);
  }
  if (out.has_theory) out.theory.validate();
  return out;
}

inline Theory parse_theory(const std::string& src) {
  ParsedFile f = parse_file(src);
  if (!f.has_theory) throw std::runtime_error("no theory declarations in the input");
  return f.theory;
}

inline MonoidPresentation parse_presentation(const std::string& src) {
  ParsedFile f = parse_file(src);
  if (!f.presentation) throw std::runtime_error("no 'monoid <...>' block in the input");
  return *f.presentation;
}

// A sequent against a known signature: 'sequent forallctx(...): phi |- psi;'
// or the bare 'forallctx(...): phi |- psi'.
inline Sequent parse_sequent(const std::string& src, const Signature& sig) {
  parser::Parser p(src);
  (void)p.accept_ident("sequent");
  Sequent s = parser::parse_sequent_body(p, sig);
  (void)p.accept_punct(";");
  if (!p.at_end()) p.fail("trailing input after the sequent");
  return s;
}

// A formula-in-context '{x, y. phi}' or '{x:A. phi}'.
inline FormulaInContext parse_formula_in_context(const std::string& src, const Signature& sig) {
  parser::Parser p(src);
  parser::Scope scope;
  scope.sig = &sig;
  p.expect_punct("{");
  if (!p.peek_punct(".")) {
    do {
      std::string name = p.expect_ident("a context variable");
      std::optional<std::string> sort;
      if (p.accept_punct(":")) sort = p.expect_ident("a sort");
      scope.declare(p, name, sort);
    } while (p.accept_punct(","));
  }
  p.expect_punct(".");
  Formula f = parser::parse_formula(p, scope);
  p.expect_punct("}");
  if (!p.at_end()) p.fail("trailing input after the formula");
  std::vector<Variable> ctx;
  for (const auto& [n, v] : scope.vars) ctx.push_back(v);
  return FormulaInContext{Context(ctx), f};
}

// ---------------------------------------------------------------------------
// Model files
//
//   sort A = { e0, e1 };
//   fun plus : A A -> A = [ 0, 1, 1, 0 ];
//   rel R : A = { (0), (1) };

inline FiniteModel parse_model(const std::string& src) {
  parser::Parser p(src);
  FiniteModel m;
  while (!p.at_end()) {
    if (p.accept_ident("sort")) {
      std::string name = p.expect_ident("a sort name");
      m.signature.sorts.push_back(Sort{name});
      p.expect_punct("=");
      p.expect_punct("{");
      std::vector<std::string> labels;
      if (!p.peek_punct("}")) {
        do {
          if (p.lex_.peek().kind == parser::Token::Number)
            labels.push_back(p.lex_.next().text);
          else
            labels.push_back(p.expect_ident("a carrier label"));
        } while (p.accept_punct(","));
      }
      p.expect_punct("}");
      p.expect_punct(";");
      m.carriers[name] = labels;
    } else if (p.accept_ident("fun")) {
      std::string name = p.expect_ident("a function symbol");
      p.expect_punct(":");
      std::vector<Sort> args;
      while (!p.peek_punct("->")) args.push_back(Sort{p.expect_ident("an argument sort")});
      p.expect_punct("->");
      Sort res{p.expect_ident("a result sort")};
      m.signature.functions.push_back(FunctionSymbol{name, args, res});
      p.expect_punct("=");
      p.expect_punct("[");
      std::vector<int> table;
      if (!p.peek_punct("]")) {
        do {
          table.push_back(p.expect_number());
        } while (p.accept_punct(","));
      }
      p.expect_punct("]");
      p.expect_punct(";");
      m.functions[name] = table;
    } else if (p.accept_ident("rel")) {
      std::string name = p.expect_ident("a relation symbol");
      p.expect_punct(":");
      std::vector<Sort> args;
      while (!p.peek_punct("=")) args.push_back(Sort{p.expect_ident("an argument sort")});
      m.signature.relations.push_back(RelationSymbol{name, args});
      p.expect_punct("=");
      p.expect_punct("{");
      std::set<std::vector<int>> tuples;
      while (p.accept_punct("(")) {
        std::vector<int> t;
        if (!p.peek_punct(")")) {
          do {
            t.push_back(p.expect_number());
          } while (p.accept_punct(","));
        }
        p.expect_punct(")");
        tuples.insert(t);
        if (!p.accept_punct(",")) break;
      }
      p.expect_punct("}");
      p.expect_punct(";");
      m.relations[name] = tuples;
    } else {
      p.fail("expected a model declaration");
    }
  }
  m.validate();
  return m;
}

// ---------------------------------------------------------------------------
// Lab files
//
//   poset { objects a, t; leq a t; }
//   copresheaf K { at a = 2; at t = 1; map a -> t = [ 0, 0 ]; }
//   nat eta : K -> L { at a = [ 0, 1 ]; at t = [ 0 ]; }

struct LabFile {
  FiniteCategory category;
  bool has_category = false;
  std::map<std::string, Copresheaf> copresheaves;
  struct NamedNat {
    std::string from, to;
    NatTransformation nat;
  };
  std::map<std::string, NamedNat> nats;
};

inline LabFile parse_lab_file(const std::string& src) {
  parser::Parser p(src);
  LabFile out;

  while (!p.at_end()) {
    if (p.accept_ident("poset")) {
      p.expect_punct("{");
      std::vector<std::string> names;
      std::vector<std::pair<int, int>> below;
      auto index_of = [&](const std::string& n) {
        for (std::size_t i = 0; i < names.size(); ++i)
          if (names[i] == n) return static_cast<int>(i);
        p.fail("unknown object '" + n + "'");
      };
      while (!p.accept_punct("}")) {
        if (p.accept_ident("objects")) {
          do {
            names.push_back(p.expect_ident("an object name"));
          } while (p.accept_punct(","));
          p.expect_punct(";");
        } else if (p.accept_ident("leq")) {
          std::string a = p.expect_ident("an object");
          std::string b = p.expect_ident("an object");
          below.push_back({index_of(a), index_of(b)});
          p.expect_punct(";");
        } else {
          p.fail("expected 'objects' or 'leq'");
        }
      }
      out.category = poset_category(names, below);
      out.has_category = true;
    } else if (p.accept_ident("copresheaf")) {
      if (!out.has_category) p.fail("copresheaf before any poset");
      std::string name = p.expect_ident("a copresheaf name");
      Copresheaf k;
      k.sizes.assign(out.category.n_objects(), 0);
      std::map<std::pair<int, int>, std::vector<int>> edge_maps;
      p.expect_punct("{");
      while (!p.accept_punct("}")) {
        if (p.accept_ident("at")) {
          std::string obj = p.expect_ident("an object");
          p.expect_punct("=");
          k.sizes[out.category.object_index(obj)] = p.expect_number();
          p.expect_punct(";");
        } else if (p.accept_ident("map")) {
          std::string a = p.expect_ident("an object");
          p.expect_punct("->");
          std::string b = p.expect_ident("an object");
          p.expect_punct("=");
          p.expect_punct("[");
          std::vector<int> t;
          if (!p.peek_punct("]")) {
            do {
              t.push_back(p.expect_number());
            } while (p.accept_punct(","));
          }
          p.expect_punct("]");
          p.expect_punct(";");
          edge_maps[{out.category.object_index(a), out.category.object_index(b)}] = t;
        } else {
          p.fail("expected 'at' or 'map'");
        }
      }
      // identities, then given maps, then composites of given maps
      for (int f = 0; f < out.category.n_arrows(); ++f) {
        int a = out.category.arrows[f].src, b = out.category.arrows[f].tgt;
        if (a == b) {
          std::vector<int> id(k.sizes[a]);
          for (int i = 0; i < k.sizes[a]; ++i) id[i] = i;
          k.maps[f] = id;
        } else if (edge_maps.count({a, b})) {
          k.maps[f] = edge_maps.at({a, b});
        }
      }
      // derive missing arrows by composing given ones
      bool changed = true;
      while (changed) {
        changed = false;
        for (int g = 0; g < out.category.n_arrows(); ++g)
          for (int f = 0; f < out.category.n_arrows(); ++f) {
            if (out.category.arrows[f].tgt != out.category.arrows[g].src) continue;
            int gf = out.category.comp[g][f];
            if (k.maps.count(gf) || !k.maps.count(f) || !k.maps.count(g)) continue;
            std::vector<int> t;
            for (int v : k.maps.at(f)) t.push_back(k.maps.at(g)[v]);
            k.maps[gf] = t;
            changed = true;
          }
      }
      if (!k.functorial(out.category)) p.fail("copresheaf '" + name + "' is not functorial");
      out.copresheaves[name] = k;
    } else if (p.accept_ident("nat")) {
      std::string name = p.expect_ident("a transformation name");
      p.expect_punct(":");
      std::string from = p.expect_ident("a copresheaf");
      p.expect_punct("->");
      std::string to = p.expect_ident("a copresheaf");
      if (!out.copresheaves.count(from) || !out.copresheaves.count(to))
        p.fail("transformation between unknown copresheaves");
      NatTransformation nat;
      nat.at.assign(out.category.n_objects(), {});
      p.expect_punct("{");
      while (!p.accept_punct("}")) {
        if (!p.accept_ident("at")) p.fail("expected 'at'");
        std::string obj = p.expect_ident("an object");
        p.expect_punct("=");
        p.expect_punct("[");
        std::vector<int> t;
        if (!p.peek_punct("]")) {
          do {
            t.push_back(p.expect_number());
          } while (p.accept_punct(","));
        }
        p.expect_punct("]");
        p.expect_punct(";");
        nat.at[out.category.object_index(obj)] = t;
      }
      if (!nat.natural(out.category, out.copresheaves.at(from), out.copresheaves.at(to)))
        p.fail("transformation '" + name + "' is not natural");
      out.nats[name] = LabFile::NamedNat{from, to, nat};
    } else {
      p.fail("expected 'poset', 'copresheaf' or 'nat'");
    }
  }
  if (!out.has_category) throw std::runtime_error("lab file has no poset block");
  return out;
}

}  // namespace cartlog

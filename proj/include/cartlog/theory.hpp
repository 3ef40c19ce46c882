// Theories: a signature plus an ordered list of axiom sequents, the module
// theory generated by a presented algebra, theory extension by a formula, and
// the syntactic half of translations (signature maps extended to terms,
// formulas and sequents).

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cartlog/print.hpp"
#include "cartlog/syntax.hpp"

namespace cartlog {

// Cartesianness of an axiom relative to its predecessors. Axioms without
// existential quantifiers are certified outright; adjoined formulas may carry
// kernel proofs or arrive merely declared.
enum class CartesianStatus { Certified, Declared, Unknown };

struct Theory {
  Signature signature;
  std::vector<Sequent> axioms;
  std::vector<CartesianStatus> axiom_status;

  friend bool operator==(const Theory& a, const Theory& b) {
    return a.signature == b.signature && a.axioms == b.axioms;
  }

  void validate() const {
    signature.validate();
    if (axiom_status.size() != axioms.size())
      throw SortError("axiom status list out of step with axioms");
    for (const auto& ax : axioms)
      if (!well_formed(signature, ax))
        throw SortError("axiom not well-formed over the signature");
  }
};

// ---------------------------------------------------------------------------
// Presentations

// A word over the generators, stored as indices into the generator list.
using Word = std::vector<int>;

// Generators and word-pair relations. Serves both as the input of the module
// theory and as the subject of the word-problem tooling.
struct MonoidPresentation {
  std::vector<std::string> generators;
  std::vector<std::pair<Word, Word>> relations;

  friend bool operator==(const MonoidPresentation&, const MonoidPresentation&) = default;

  void validate() const {
    std::set<std::string> seen;
    for (const auto& g : generators) {
      if (g.size() != 1)
        throw SortError("generator names must be single characters: " + g);
      if (!seen.insert(g).second) throw SortError("duplicate generator: " + g);
    }
    for (const auto& [u, v] : relations) {
      for (int g : u)
        if (g < 0 || g >= static_cast<int>(generators.size()))
          throw SortError("relation uses undeclared generator");
      for (int g : v)
        if (g < 0 || g >= static_cast<int>(generators.size()))
          throw SortError("relation uses undeclared generator");
    }
  }

  std::string word_text(const Word& w) const {
    if (w.empty()) return "eps";
    std::string out;
    for (int g : w) out += generators[g];
    return out;
  }
};

using AlgebraPresentation = MonoidPresentation;

inline std::optional<Word> parse_word(const MonoidPresentation& p, const std::string& text) {
  if (text == "eps") return Word{};
  Word w;
  for (char c : text) {
    std::string g(1, c);
    auto it = std::find(p.generators.begin(), p.generators.end(), g);
    if (it == p.generators.end()) return std::nullopt;
    w.push_back(static_cast<int>(it - p.generators.begin()));
  }
  return w;
}

inline std::string print_presentation(const MonoidPresentation& p) {
  std::string out = "monoid <";
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (i) out += ", ";
    out += p.generators[i];
  }
  out += " |";
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    out += i ? ", " : " ";
    out += p.word_text(p.relations[i].first) + " = " + p.word_text(p.relations[i].second);
  }
  out += ">;";
  return out;
}

// ---------------------------------------------------------------------------
// The module theory of a presented algebra
//
// Single sort A; symbols +, 0, -, and one unary symbol per generator. The
// word a1 a2 ... an acts as the term a1(a2(...an(x)...)): leftmost letter
// outermost, matching the left-action reading of composition.

struct ModuleVocabulary {
  Sort carrier{"A"};
  FunctionSymbol plus{"plus", {Sort{"A"}, Sort{"A"}}, Sort{"A"}};
  FunctionSymbol zero{"zero", {}, Sort{"A"}};
  FunctionSymbol neg{"neg", {Sort{"A"}}, Sort{"A"}};
  FunctionSymbol generator(const std::string& name) const {
    return FunctionSymbol{name, {carrier}, carrier};
  }
};

inline Term word_term(const MonoidPresentation& p, const Word& w, const Term& point) {
  ModuleVocabulary voc;
  Term t = point;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    t = app(voc.generator(p.generators[*it]), {t});
  return t;
}

inline Theory module_theory(const MonoidPresentation& p) {
  p.validate();
  ModuleVocabulary voc;
  for (const auto& g : p.generators)
    if (g == "plus" || g == "zero" || g == "neg")
      throw SortError("generator name collides with module vocabulary: " + g);

  Theory t;
  t.signature.sorts = {voc.carrier};
  t.signature.functions = {voc.plus, voc.zero, voc.neg};
  for (const auto& g : p.generators)
    t.signature.functions.push_back(voc.generator(g));

  Variable x{voc.carrier, 0}, y{voc.carrier, 1}, z{voc.carrier, 2};
  Term tx = var(x), ty = var(y), tz = var(z);
  Term t0 = constant(voc.zero);
  auto add = [&](Term a, Term b) { return app(voc.plus, {a, b}); };

  auto axiom = [&](std::vector<Variable> ctx, Formula cons) {
    t.axioms.push_back(Sequent{Formula::top(), Context(std::move(ctx)), cons});
    t.axiom_status.push_back(CartesianStatus::Certified);
  };

  axiom({x, y, z}, Formula::eq(add(add(tx, ty), tz), add(tx, add(ty, tz))));
  axiom({x, y}, Formula::eq(add(tx, ty), add(ty, tx)));
  axiom({x}, Formula::eq(add(tx, t0), tx));
  axiom({x}, Formula::eq(add(tx, app(voc.neg, {tx})), t0));
  for (const auto& g : p.generators) {
    FunctionSymbol gs = voc.generator(g);
    axiom({x, y}, Formula::eq(app(gs, {add(tx, ty)}), add(app(gs, {tx}), app(gs, {ty}))));
    axiom({}, Formula::eq(app(gs, {t0}), t0));
  }
  for (const auto& [u, v] : p.relations)
    axiom({x}, Formula::eq(word_term(p, u, tx), word_term(p, v, tx)));

  t.validate();
  return t;
}

// The free module theory on the presentation's generators: the same
// vocabulary but no relation axioms. Relations travel in formulas instead.
inline Theory module_theory_free(const MonoidPresentation& p) {
  MonoidPresentation q{p.generators, {}};
  return module_theory(q);
}

// ---------------------------------------------------------------------------
// Translations (syntactic layer)

// Signature map between theories, extended canonically to terms, formulas and
// sequents. Provability preservation is certified separately (see
// translation.hpp); this layer is pure syntax.
struct Translation {
  Theory source, target;
  std::map<std::string, std::string> sort_map;  // by sort name
  std::map<std::string, std::string> fn_map;    // by symbol name
  std::map<std::string, std::string> rel_map;

  void validate() const {
    for (const auto& s : source.signature.sorts) {
      auto it = sort_map.find(s.name);
      if (it == sort_map.end()) throw SortError("sort unmapped: " + s.name);
      if (!target.signature.has_sort(Sort{it->second}))
        throw SortError("sort mapped outside target: " + s.name);
    }
    for (const auto& f : source.signature.functions) {
      auto it = fn_map.find(f.name);
      if (it == fn_map.end()) throw SortError("function symbol unmapped: " + f.name);
      const FunctionSymbol* g = target.signature.find_function(it->second);
      if (!g) throw SortError("function symbol mapped outside target: " + f.name);
      if (g->arity() != f.arity())
        throw SortError("incoherent function map: " + f.name);
      if (apply_sort(f.result_sort) != g->result_sort)
        throw SortError("result sort mismatch mapping " + f.name);
      for (int i = 0; i < f.arity(); ++i)
        if (apply_sort(f.arg_sorts[i]) != g->arg_sorts[i])
          throw SortError("argument sort mismatch mapping " + f.name);
    }
    for (const auto& r : source.signature.relations) {
      auto it = rel_map.find(r.name);
      if (it == rel_map.end()) throw SortError("relation symbol unmapped: " + r.name);
      const RelationSymbol* s = target.signature.find_relation(it->second);
      if (!s) throw SortError("relation symbol mapped outside target: " + r.name);
      if (s->arity() != r.arity()) throw SortError("incoherent relation map: " + r.name);
      for (int i = 0; i < r.arity(); ++i)
        if (apply_sort(r.arg_sorts[i]) != s->arg_sorts[i])
          throw SortError("argument sort mismatch mapping relation " + r.name);
    }
  }

  Sort apply_sort(const Sort& s) const {
    auto it = sort_map.find(s.name);
    if (it == sort_map.end()) throw SortError("sort unmapped: " + s.name);
    return Sort{it->second};
  }

  // Rank is preserved: the image variable has the same place in the ordering
  // of variables of the image sort.
  Variable apply(const Variable& v) const { return Variable{apply_sort(v.sort), v.rank}; }

  FunctionSymbol apply_fn(const FunctionSymbol& f) const {
    auto it = fn_map.find(f.name);
    if (it == fn_map.end()) throw SortError("function symbol unmapped: " + f.name);
    const FunctionSymbol* g = target.signature.find_function(it->second);
    if (!g) throw SortError("function symbol mapped outside target: " + f.name);
    return *g;
  }

  RelationSymbol apply_rel(const RelationSymbol& r) const {
    auto it = rel_map.find(r.name);
    if (it == rel_map.end()) throw SortError("relation symbol unmapped: " + r.name);
    const RelationSymbol* s = target.signature.find_relation(it->second);
    if (!s) throw SortError("relation symbol mapped outside target: " + r.name);
    return *s;
  }

  Term apply(const Term& t) const {
    if (t.is_var()) return var(apply(t.var()));
    std::vector<Term> args;
    for (const auto& a : t.app().args) args.push_back(apply(a));
    return Term(apply_fn(t.app().fn), std::move(args));
  }

  Formula apply(const Formula& f) const {
    if (f.is_top()) return f;
    if (f.is_eq()) return Formula::eq(apply(f.eq_parts().lhs), apply(f.eq_parts().rhs));
    if (f.is_rel()) {
      std::vector<Term> args;
      for (const auto& a : f.rel_parts().args) args.push_back(apply(a));
      return Formula::rel(apply_rel(f.rel_parts().rel), std::move(args));
    }
    if (f.is_and())
      return Formula::conj(apply(f.and_parts().lhs()), apply(f.and_parts().rhs()));
    return Formula::exists(apply(f.exists_parts().bound), apply(f.exists_parts().body()));
  }

  Context apply(const Context& c) const {
    std::vector<Variable> vs;
    for (const auto& v : c.vars) vs.push_back(apply(v));
    Context out(std::move(vs));
    if (!out.distinct())
      throw SortError("translated context not distinct (non-injective sort map)");
    return out;
  }

  Sequent apply(const Sequent& s) const {
    return Sequent{apply(s.antecedent), apply(s.context), apply(s.consequent)};
  }
};

inline Translation identity_translation(const Theory& t) {
  Translation tr;
  tr.source = t;
  tr.target = t;
  for (const auto& s : t.signature.sorts) tr.sort_map[s.name] = s.name;
  for (const auto& f : t.signature.functions) tr.fn_map[f.name] = f.name;
  for (const auto& r : t.signature.relations) tr.rel_map[r.name] = r.name;
  return tr;
}

// ---------------------------------------------------------------------------
// Theory extension T[phi]

// T[phi]: T plus the new final axiom (top |- phi). The returned translation
// is the evident inclusion: identity on every symbol.
inline std::pair<Theory, Translation> adjoin(const Theory& t, const FormulaInContext& phi) {
  if (!well_sorted(t.signature, phi.formula))
    throw SortError("adjoined formula not well-sorted over the theory");
  for (const auto& v : free_vars(phi.formula))
    if (!phi.context.contains(v))
      throw SortError("adjoined formula has a free variable outside its context");

  Theory ext = t;
  ext.axioms.push_back(Sequent{Formula::top(), phi.context, phi.formula});
  // Conjunctions of atoms are cartesian outright; anything with a binder is
  // recorded as declared pending a kernel certificate.
  bool has_exists = false;
  std::vector<Formula> todo{phi.formula};
  while (!todo.empty()) {
    Formula f = todo.back();
    todo.pop_back();
    if (f.is_exists()) has_exists = true;
    if (f.is_and()) {
      todo.push_back(f.and_parts().lhs());
      todo.push_back(f.and_parts().rhs());
    }
  }
  ext.axiom_status.push_back(has_exists ? CartesianStatus::Declared
                                        : CartesianStatus::Certified);
  ext.validate();

  Translation inc = identity_translation(t);
  inc.target = ext;
  return {ext, inc};
}

// ---------------------------------------------------------------------------
// Theory files

inline std::string print_theory(const Theory& t) {
  std::ostringstream out;
  out << print_signature(t.signature);
  Namer n = namer_for(t.signature);
  for (const auto& ax : t.axioms) out << "axiom " << print_sequent(ax, n) << ";\n";
  return out.str();
}

}  // namespace cartlog

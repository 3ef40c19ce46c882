// Sorted terms, cartesian formulas, contexts and sequents: the shared object
// language. Formulas are built from top, equality, relations, binary
// conjunction and existential quantification only; there is no falsity,
// disjunction, negation, implication or universal quantifier.
//
// All values are immutable after construction and safe to share across
// threads. Structural sharing is via shared_ptr<const Node>.

#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cartlog {

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Signatures

struct Sort {
  std::string name;
  friend auto operator<=>(const Sort&, const Sort&) = default;
};

// Variables are identified by (sort, rank): rank is the position in the
// per-sort total order. Display names are a printing concern only.
struct Variable {
  Sort sort;
  int rank = 0;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

struct FunctionSymbol {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result_sort;
  friend auto operator<=>(const FunctionSymbol&, const FunctionSymbol&) = default;
  int arity() const { return static_cast<int>(arg_sorts.size()); }
};

struct RelationSymbol {
  std::string name;
  std::vector<Sort> arg_sorts;
  friend auto operator<=>(const RelationSymbol&, const RelationSymbol&) = default;
  int arity() const { return static_cast<int>(arg_sorts.size()); }
};

struct Signature {
  std::vector<Sort> sorts;
  std::vector<FunctionSymbol> functions;
  std::vector<RelationSymbol> relations;

  friend auto operator<=>(const Signature&, const Signature&) = default;

  bool has_sort(const Sort& s) const {
    return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
  }
  const FunctionSymbol* find_function(const std::string& name) const {
    for (const auto& f : functions)
      if (f.name == name) return &f;
    return nullptr;
  }
  const RelationSymbol* find_relation(const std::string& name) const {
    for (const auto& r : relations)
      if (r.name == name) return &r;
    return nullptr;
  }

  // Names must be unambiguous and every referenced sort declared.
  void validate() const {
    std::set<std::string> names;
    for (const auto& s : sorts)
      if (!names.insert(s.name).second)
        throw SortError("duplicate sort name: " + s.name);
    std::set<std::string> syms;
    for (const auto& f : functions) {
      if (!syms.insert(f.name).second)
        throw SortError("duplicate symbol name: " + f.name);
      for (const auto& a : f.arg_sorts)
        if (!has_sort(a)) throw SortError("undeclared sort in " + f.name);
      if (!has_sort(f.result_sort))
        throw SortError("undeclared result sort in " + f.name);
    }
    for (const auto& r : relations) {
      if (!syms.insert(r.name).second)
        throw SortError("duplicate symbol name: " + r.name);
      for (const auto& a : r.arg_sorts)
        if (!has_sort(a)) throw SortError("undeclared sort in " + r.name);
    }
  }
};

// ---------------------------------------------------------------------------
// Terms

class Term {
 public:
  struct App {
    FunctionSymbol fn;
    std::vector<Term> args;
  };
  using Node = std::variant<Variable, App>;

  Term() = default;
  explicit Term(Variable v) : node_(std::make_shared<const Node>(std::move(v))) {}
  Term(FunctionSymbol fn, std::vector<Term> args) {
    if (static_cast<int>(args.size()) != fn.arity())
      throw SortError("arity mismatch applying " + fn.name);
    for (std::size_t i = 0; i < args.size(); ++i)
      if (args[i].sort() != fn.arg_sorts[i])
        throw SortError("argument sort mismatch applying " + fn.name);
    node_ = std::make_shared<const Node>(App{std::move(fn), std::move(args)});
  }

  bool is_var() const { return std::holds_alternative<Variable>(*node_); }
  const Variable& var() const { return std::get<Variable>(*node_); }
  const App& app() const { return std::get<App>(*node_); }

  Sort sort() const {
    if (is_var()) return var().sort;
    return app().fn.result_sort;
  }

  bool valid() const { return node_ != nullptr; }

 private:
  std::shared_ptr<const Node> node_;
};

inline Term var(const Variable& v) { return Term(v); }
inline Term app(const FunctionSymbol& f, std::vector<Term> args) {
  return Term(f, std::move(args));
}
inline Term constant(const FunctionSymbol& f) { return Term(f, {}); }

inline int term_cmp(const Term& a, const Term& b) {
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) {
    if (a.var() < b.var()) return -1;
    if (b.var() < a.var()) return 1;
    return 0;
  }
  const auto& fa = a.app();
  const auto& fb = b.app();
  if (fa.fn < fb.fn) return -1;
  if (fb.fn < fa.fn) return 1;
  if (fa.args.size() != fb.args.size())
    return fa.args.size() < fb.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < fa.args.size(); ++i)
    if (int c = term_cmp(fa.args[i], fb.args[i])) return c;
  return 0;
}

inline bool operator==(const Term& a, const Term& b) { return term_cmp(a, b) == 0; }
inline bool operator!=(const Term& a, const Term& b) { return term_cmp(a, b) != 0; }
struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return term_cmp(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// Formulas

class Formula {
 public:
  struct Top {};
  struct Eq {
    Term lhs, rhs;
  };
  struct Rel {
    RelationSymbol rel;
    std::vector<Term> args;
  };
  struct And {
    std::vector<Formula> sub;  // exactly two
    const Formula& lhs() const { return sub[0]; }
    const Formula& rhs() const { return sub[1]; }
  };
  struct Exists {
    Variable bound;
    std::vector<Formula> sub;  // exactly one
    const Formula& body() const { return sub[0]; }
  };
  using Node = std::variant<Top, Eq, Rel, And, Exists>;

  Formula() = default;

  static Formula top() { return Formula(Node(Top{})); }
  static Formula eq(Term l, Term r) {
    if (l.sort() != r.sort())
      throw SortError("equality operands of different sorts");
    return Formula(Node(Eq{std::move(l), std::move(r)}));
  }
  static Formula rel(RelationSymbol r, std::vector<Term> args) {
    if (static_cast<int>(args.size()) != r.arity())
      throw SortError("arity mismatch applying relation " + r.name);
    for (std::size_t i = 0; i < args.size(); ++i)
      if (args[i].sort() != r.arg_sorts[i])
        throw SortError("argument sort mismatch applying relation " + r.name);
    return Formula(Node(Rel{std::move(r), std::move(args)}));
  }
  static Formula conj(Formula l, Formula r) {
    return Formula(Node(And{{std::move(l), std::move(r)}}));
  }
  static Formula exists(Variable v, Formula body) {
    return Formula(Node(Exists{std::move(v), {std::move(body)}}));
  }

  bool is_top() const { return std::holds_alternative<Top>(*node_); }
  bool is_eq() const { return std::holds_alternative<Eq>(*node_); }
  bool is_rel() const { return std::holds_alternative<Rel>(*node_); }
  bool is_and() const { return std::holds_alternative<And>(*node_); }
  bool is_exists() const { return std::holds_alternative<Exists>(*node_); }

  const Eq& eq_parts() const { return std::get<Eq>(*node_); }
  const Rel& rel_parts() const { return std::get<Rel>(*node_); }
  const And& and_parts() const { return std::get<And>(*node_); }
  const Exists& exists_parts() const { return std::get<Exists>(*node_); }

  bool valid() const { return node_ != nullptr; }

 private:
  explicit Formula(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  std::shared_ptr<const Node> node_;
};

inline int formula_cmp(const Formula& a, const Formula& b) {
  auto tag = [](const Formula& f) {
    if (f.is_top()) return 0;
    if (f.is_eq()) return 1;
    if (f.is_rel()) return 2;
    if (f.is_and()) return 3;
    return 4;
  };
  if (tag(a) != tag(b)) return tag(a) < tag(b) ? -1 : 1;
  if (a.is_top()) return 0;
  if (a.is_eq()) {
    if (int c = term_cmp(a.eq_parts().lhs, b.eq_parts().lhs)) return c;
    return term_cmp(a.eq_parts().rhs, b.eq_parts().rhs);
  }
  if (a.is_rel()) {
    const auto& ra = a.rel_parts();
    const auto& rb = b.rel_parts();
    if (ra.rel < rb.rel) return -1;
    if (rb.rel < ra.rel) return 1;
    for (std::size_t i = 0; i < ra.args.size(); ++i)
      if (int c = term_cmp(ra.args[i], rb.args[i])) return c;
    return 0;
  }
  if (a.is_and()) {
    if (int c = formula_cmp(a.and_parts().lhs(), b.and_parts().lhs())) return c;
    return formula_cmp(a.and_parts().rhs(), b.and_parts().rhs());
  }
  const auto& ea = a.exists_parts();
  const auto& eb = b.exists_parts();
  if (ea.bound < eb.bound) return -1;
  if (eb.bound < ea.bound) return 1;
  return formula_cmp(ea.body(), eb.body());
}

inline bool operator==(const Formula& a, const Formula& b) {
  return formula_cmp(a, b) == 0;
}
inline bool operator!=(const Formula& a, const Formula& b) {
  return formula_cmp(a, b) != 0;
}
struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const {
    return formula_cmp(a, b) < 0;
  }
};

// ---------------------------------------------------------------------------
// Contexts, formulas-in-context, sequents

// Ordered list of distinct variables. Order is significant: alpha-equivalence
// permits renaming but never permutation.
struct Context {
  std::vector<Variable> vars;

  Context() = default;
  explicit Context(std::vector<Variable> vs) : vars(std::move(vs)) {}

  friend auto operator<=>(const Context&, const Context&) = default;

  bool contains(const Variable& v) const {
    return std::find(vars.begin(), vars.end(), v) != vars.end();
  }
  bool distinct() const {
    std::set<Variable> seen(vars.begin(), vars.end());
    return seen.size() == vars.size();
  }
  std::size_t size() const { return vars.size(); }

  Context extended(const Variable& v) const {
    Context c = *this;
    c.vars.push_back(v);
    return c;
  }
};

struct FormulaInContext {
  Context context;
  Formula formula;
  friend bool operator==(const FormulaInContext&, const FormulaInContext&) = default;
};

struct Sequent {
  Formula antecedent;
  Context context;
  Formula consequent;
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

// ---------------------------------------------------------------------------
// Free variables

inline void collect_free_vars(const Term& t, std::set<Variable>& out) {
  if (t.is_var()) {
    out.insert(t.var());
    return;
  }
  for (const auto& a : t.app().args) collect_free_vars(a, out);
}

inline void collect_free_vars(const Formula& f, std::set<Variable>& out) {
  if (f.is_top()) return;
  if (f.is_eq()) {
    collect_free_vars(f.eq_parts().lhs, out);
    collect_free_vars(f.eq_parts().rhs, out);
    return;
  }
  if (f.is_rel()) {
    for (const auto& a : f.rel_parts().args) collect_free_vars(a, out);
    return;
  }
  if (f.is_and()) {
    collect_free_vars(f.and_parts().lhs(), out);
    collect_free_vars(f.and_parts().rhs(), out);
    return;
  }
  std::set<Variable> inner;
  collect_free_vars(f.exists_parts().body(), inner);
  inner.erase(f.exists_parts().bound);
  out.insert(inner.begin(), inner.end());
}

inline std::set<Variable> free_vars(const Formula& f) {
  std::set<Variable> out;
  collect_free_vars(f, out);
  return out;
}

inline std::set<Variable> free_vars(const Term& t) {
  std::set<Variable> out;
  collect_free_vars(t, out);
  return out;
}

inline bool occurs_free(const Variable& v, const Formula& f) {
  return free_vars(f).count(v) > 0;
}

// Free variables of f in the canonical order: by sort name, then rank.
inline Context minimal_context(const Formula& f) {
  auto fv = free_vars(f);  // std::set<Variable> already orders by (sort, rank)
  return Context(std::vector<Variable>(fv.begin(), fv.end()));
}

// ---------------------------------------------------------------------------
// Well-sortedness

inline bool well_sorted(const Signature& sig, const Term& t) {
  if (t.is_var()) return sig.has_sort(t.var().sort);
  const auto& a = t.app();
  const FunctionSymbol* f = sig.find_function(a.fn.name);
  if (!f || *f != a.fn) return false;
  for (const auto& arg : a.args)
    if (!well_sorted(sig, arg)) return false;
  return true;  // arity and argument sorts were enforced at construction
}

inline bool well_sorted(const Signature& sig, const Formula& f) {
  if (f.is_top()) return true;
  if (f.is_eq())
    return well_sorted(sig, f.eq_parts().lhs) && well_sorted(sig, f.eq_parts().rhs);
  if (f.is_rel()) {
    const auto& r = f.rel_parts();
    const RelationSymbol* d = sig.find_relation(r.rel.name);
    if (!d || *d != r.rel) return false;
    for (const auto& a : r.args)
      if (!well_sorted(sig, a)) return false;
    return true;
  }
  if (f.is_and())
    return well_sorted(sig, f.and_parts().lhs()) && well_sorted(sig, f.and_parts().rhs());
  return sig.has_sort(f.exists_parts().bound.sort) &&
         well_sorted(sig, f.exists_parts().body());
}

inline bool well_formed(const Signature& sig, const Sequent& s) {
  if (!s.context.distinct()) return false;
  if (!well_sorted(sig, s.antecedent) || !well_sorted(sig, s.consequent)) return false;
  for (const auto& v : free_vars(s.antecedent))
    if (!s.context.contains(v)) return false;
  for (const auto& v : free_vars(s.consequent))
    if (!s.context.contains(v)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Substitution

// Simultaneous binding of variables to sort-matching terms.
using Binding = std::map<Variable, Term>;

inline Binding singleton_binding(const Variable& v, const Term& t) {
  if (t.sort() != v.sort)
    throw SortError("binding maps variable to term of different sort");
  return Binding{{v, t}};
}

// Least rank of the given sort not used by any variable in `avoid`.
inline Variable fresh_variable(const Sort& sort, const std::set<Variable>& avoid) {
  int rank = 0;
  while (avoid.count(Variable{sort, rank})) ++rank;
  return Variable{sort, rank};
}

inline Term substitute(const Term& t, const Binding& b) {
  if (t.is_var()) {
    auto it = b.find(t.var());
    if (it == b.end()) return t;
    if (it->second.sort() != t.var().sort)
      throw SortError("substitution sort mismatch");
    return it->second;
  }
  std::vector<Term> args;
  args.reserve(t.app().args.size());
  for (const auto& a : t.app().args) args.push_back(substitute(a, b));
  return Term(t.app().fn, std::move(args));
}

// Capture-avoiding simultaneous substitution. Bound variables are renamed to
// the least unused rank of their sort whenever a substituted term would be
// captured, so results are deterministic.
inline Formula substitute(const Formula& f, const Binding& b) {
  if (b.empty()) return f;
  if (f.is_top()) return f;
  if (f.is_eq())
    return Formula::eq(substitute(f.eq_parts().lhs, b),
                       substitute(f.eq_parts().rhs, b));
  if (f.is_rel()) {
    std::vector<Term> args;
    for (const auto& a : f.rel_parts().args) args.push_back(substitute(a, b));
    return Formula::rel(f.rel_parts().rel, std::move(args));
  }
  if (f.is_and())
    return Formula::conj(substitute(f.and_parts().lhs(), b),
                         substitute(f.and_parts().rhs(), b));

  const auto& ex = f.exists_parts();
  // Restrict to bindings that can act on the body.
  auto body_free = free_vars(ex.body());
  Binding active;
  for (const auto& [v, t] : b)
    if (v != ex.bound && body_free.count(v)) active.emplace(v, t);
  if (active.empty()) return f;

  std::set<Variable> danger;
  for (const auto& [v, t] : active) {
    auto tv = free_vars(t);
    danger.insert(tv.begin(), tv.end());
  }
  Variable bound = ex.bound;
  Formula body = ex.body();
  if (danger.count(bound)) {
    std::set<Variable> avoid = danger;
    avoid.insert(body_free.begin(), body_free.end());
    for (const auto& [v, t] : active) avoid.insert(v);
    Variable renamed = fresh_variable(bound.sort, avoid);
    body = substitute(body, Binding{{bound, Term(renamed)}});
    bound = renamed;
  }
  return Formula::exists(bound, substitute(body, active));
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace detail {

// Structural equality where bound variables are compared through a
// correspondence and free variables through the seed environment (or
// literally when unmapped).
struct AlphaEnv {
  std::map<Variable, int> left, right;
  int next = 0;

  void bind(const Variable& a, const Variable& b) {
    left[a] = next;
    right[b] = next;
    ++next;
  }
};

inline bool alpha_eq_term(const Term& a, const Term& b, const AlphaEnv& env) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) {
    auto la = env.left.find(a.var());
    auto rb = env.right.find(b.var());
    if (la != env.left.end() || rb != env.right.end())
      return la != env.left.end() && rb != env.right.end() &&
             la->second == rb->second;
    return a.var() == b.var();
  }
  if (a.app().fn != b.app().fn) return false;
  for (std::size_t i = 0; i < a.app().args.size(); ++i)
    if (!alpha_eq_term(a.app().args[i], b.app().args[i], env)) return false;
  return true;
}

inline bool alpha_eq_formula(const Formula& a, const Formula& b, AlphaEnv env) {
  if (a.is_top() && b.is_top()) return true;
  if (a.is_eq() && b.is_eq())
    return alpha_eq_term(a.eq_parts().lhs, b.eq_parts().lhs, env) &&
           alpha_eq_term(a.eq_parts().rhs, b.eq_parts().rhs, env);
  if (a.is_rel() && b.is_rel()) {
    if (a.rel_parts().rel != b.rel_parts().rel) return false;
    for (std::size_t i = 0; i < a.rel_parts().args.size(); ++i)
      if (!alpha_eq_term(a.rel_parts().args[i], b.rel_parts().args[i], env))
        return false;
    return true;
  }
  if (a.is_and() && b.is_and())
    return alpha_eq_formula(a.and_parts().lhs(), b.and_parts().lhs(), env) &&
           alpha_eq_formula(a.and_parts().rhs(), b.and_parts().rhs(), env);
  if (a.is_exists() && b.is_exists()) {
    const auto& ea = a.exists_parts();
    const auto& eb = b.exists_parts();
    if (ea.bound.sort != eb.bound.sort) return false;
    env.bind(ea.bound, eb.bound);
    return alpha_eq_formula(ea.body(), eb.body(), env);
  }
  return false;
}

}  // namespace detail

// Formulas over a shared free-variable supply: bound variables may differ,
// free variables must agree literally.
inline bool alpha_eq(const Formula& a, const Formula& b) {
  return detail::alpha_eq_formula(a, b, detail::AlphaEnv{});
}

// True iff a and b differ only by a sort-preserving, order-preserving
// renaming of context variables and bound variables.
inline bool alpha_equal(const FormulaInContext& a, const FormulaInContext& b) {
  if (a.context.size() != b.context.size()) return false;
  detail::AlphaEnv env;
  for (std::size_t i = 0; i < a.context.size(); ++i) {
    if (a.context.vars[i].sort != b.context.vars[i].sort) return false;
    env.bind(a.context.vars[i], b.context.vars[i]);
  }
  return detail::alpha_eq_formula(a.formula, b.formula, env);
}

// Sequent alpha-equality: contexts correspond positionwise.
inline bool alpha_equal(const Sequent& a, const Sequent& b) {
  if (a.context.size() != b.context.size()) return false;
  detail::AlphaEnv env;
  for (std::size_t i = 0; i < a.context.size(); ++i) {
    if (a.context.vars[i].sort != b.context.vars[i].sort) return false;
    env.bind(a.context.vars[i], b.context.vars[i]);
  }
  return detail::alpha_eq_formula(a.antecedent, b.antecedent, env) &&
         detail::alpha_eq_formula(a.consequent, b.consequent, env);
}

// ---------------------------------------------------------------------------
// Alpha-normal form
//
// Canonical representative of the alpha-class: context variables take the
// ranks 0..n-1 per sort in order of first appearance, binders continue the
// counters in a depth-first, left-to-right traversal. Used for hashing and
// for equality of syntactic-category objects.

namespace detail {

struct Renamer {
  std::map<Sort, int> next_rank;
  std::map<Variable, Variable> map;

  Variable assign(const Variable& v) {
    Variable fresh{v.sort, next_rank[v.sort]++};
    map[v] = fresh;
    return fresh;
  }
};

inline Term rename_term(const Term& t, const Renamer& r) {
  if (t.is_var()) {
    auto it = r.map.find(t.var());
    return it == r.map.end() ? t : Term(it->second);
  }
  std::vector<Term> args;
  for (const auto& a : t.app().args) args.push_back(rename_term(a, r));
  return Term(t.app().fn, std::move(args));
}

inline Formula normalize_formula(const Formula& f, Renamer& r) {
  if (f.is_top()) return f;
  if (f.is_eq())
    return Formula::eq(rename_term(f.eq_parts().lhs, r),
                       rename_term(f.eq_parts().rhs, r));
  if (f.is_rel()) {
    std::vector<Term> args;
    for (const auto& a : f.rel_parts().args) args.push_back(rename_term(a, r));
    return Formula::rel(f.rel_parts().rel, std::move(args));
  }
  if (f.is_and())
    return Formula::conj(normalize_formula(f.and_parts().lhs(), r),
                         normalize_formula(f.and_parts().rhs(), r));
  const auto& ex = f.exists_parts();
  Renamer inner = r;
  Variable nb = inner.assign(ex.bound);
  Formula body = normalize_formula(ex.body(), inner);
  r.next_rank = inner.next_rank;  // counters advance globally
  return Formula::exists(nb, body);
}

}  // namespace detail

inline FormulaInContext alpha_normalize(const FormulaInContext& fic) {
  detail::Renamer r;
  std::vector<Variable> ctx;
  ctx.reserve(fic.context.size());
  for (const auto& v : fic.context.vars) ctx.push_back(r.assign(v));
  Formula f = detail::normalize_formula(fic.formula, r);
  return FormulaInContext{Context(std::move(ctx)), f};
}

inline Sequent alpha_normalize(const Sequent& s) {
  detail::Renamer r;
  std::vector<Variable> ctx;
  ctx.reserve(s.context.size());
  for (const auto& v : s.context.vars) ctx.push_back(r.assign(v));
  // Two independent binder supplies would collide across the two formulas;
  // share the renamer sequentially for a canonical result.
  Formula ante = detail::normalize_formula(s.antecedent, r);
  Formula cons = detail::normalize_formula(s.consequent, r);
  return Sequent{ante, Context(std::move(ctx)), cons};
}

// ---------------------------------------------------------------------------
// Conjunction helpers (right-nested folds are the canonical shape)

inline Formula conj_fold(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it)
    acc = Formula::conj(*it, acc);
  return acc;
}

inline void flatten_conj(const Formula& f, std::vector<Formula>& out) {
  if (f.is_and()) {
    flatten_conj(f.and_parts().lhs(), out);
    flatten_conj(f.and_parts().rhs(), out);
    return;
  }
  out.push_back(f);
}

inline std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  flatten_conj(f, out);
  return out;
}

}  // namespace cartlog

// Proof objects for the cartesian sequent calculus and the trusted checker.
//
// The rule inventory: identity axiom, cut, simultaneous sort-correct
// substitution, top introduction, conjunction introduction/eliminations,
// equality reflexivity, equality replacement (Leibniz on a variable), the
// existential adjunction in both directions, the Frobenius axiom, and theory
// axiom citation. Existential introduction is a derived macro, never a
// primitive.
//
// check_proof is the sole trusted component. Everything in rules:: and
// derived:: merely builds trees; validity is always re-established by the
// checker.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cartlog/theory.hpp"

namespace cartlog {

enum class RuleKind {
  IdentityAxiom,
  Cut,
  Substitution,
  EqReflexivity,
  EqReplacement,
  AndIntro,
  AndElimLeft,
  AndElimRight,
  TopIntro,
  ExistsElim,     // from  phi |-_{x,y} psi  (y not free in psi)  infer  (exists y. phi) |-_x psi
  ExistsAdjoint,  // from  (exists y. phi) |-_x psi               infer  phi |-_{x,y} psi
  Frobenius,      // (phi & exists y. psi) |- exists y. (phi & psi), y not free in phi
  TheoryAxiom,
};

inline const char* rule_name(RuleKind k) {
  switch (k) {
    case RuleKind::IdentityAxiom: return "IdentityAxiom";
    case RuleKind::Cut: return "Cut";
    case RuleKind::Substitution: return "Substitution";
    case RuleKind::EqReflexivity: return "EqReflexivity";
    case RuleKind::EqReplacement: return "EqReplacement";
    case RuleKind::AndIntro: return "AndIntro";
    case RuleKind::AndElimLeft: return "AndElimLeft";
    case RuleKind::AndElimRight: return "AndElimRight";
    case RuleKind::TopIntro: return "TopIntro";
    case RuleKind::ExistsElim: return "ExistsElim";
    case RuleKind::ExistsAdjoint: return "ExistsAdjoint";
    case RuleKind::Frobenius: return "Frobenius";
    case RuleKind::TheoryAxiom: return "TheoryAxiom";
  }
  return "?";
}

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

// Each node carries exactly the side data its checking clause needs.
struct ProofNode {
  Sequent conclusion;
  RuleKind rule{};
  std::vector<Proof> premises;

  std::optional<Formula> cut_formula;                      // Cut
  std::optional<Binding> binding;                          // Substitution
  std::optional<std::pair<Variable, Variable>> repl_vars;  // EqReplacement
  std::optional<Formula> repl_formula;                     // EqReplacement
  std::optional<Term> refl_term;                           // EqReflexivity
  std::optional<int> axiom_index;                          // TheoryAxiom
};

struct CheckError {
  std::vector<int> path;  // premise indices from the root to the bad node
  std::string reason;

  std::string to_string() const {
    std::string p = "root";
    for (int i : path) p += "." + std::to_string(i);
    return p + ": " + reason;
  }
};

struct ProofError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// The checker

namespace detail {

inline std::optional<std::string> check_node(const Theory& th, const ProofNode& n) {
  const Sequent& c = n.conclusion;
  if (!well_formed(th.signature, c)) return "conclusion not well-formed";

  auto premise_count = [&](std::size_t want) -> std::optional<std::string> {
    if (n.premises.size() != want)
      return std::string("expected ") + std::to_string(want) + " premises";
    return std::nullopt;
  };
  auto same_context = [&](const Sequent& s) { return s.context == c.context; };

  switch (n.rule) {
    case RuleKind::IdentityAxiom: {
      if (auto e = premise_count(0)) return e;
      if (!alpha_eq(c.antecedent, c.consequent))
        return "identity axiom with distinct sides";
      return std::nullopt;
    }
    case RuleKind::TopIntro: {
      if (auto e = premise_count(0)) return e;
      if (!c.consequent.is_top()) return "top introduction must conclude top";
      return std::nullopt;
    }
    case RuleKind::AndIntro: {
      if (auto e = premise_count(2)) return e;
      const Sequent& l = n.premises[0]->conclusion;
      const Sequent& r = n.premises[1]->conclusion;
      if (!same_context(l) || !same_context(r)) return "context mismatch";
      if (!alpha_eq(l.antecedent, c.antecedent) || !alpha_eq(r.antecedent, c.antecedent))
        return "antecedent mismatch";
      if (!c.consequent.is_and()) return "conclusion not a conjunction";
      if (!alpha_eq(c.consequent.and_parts().lhs(), l.consequent) ||
          !alpha_eq(c.consequent.and_parts().rhs(), r.consequent))
        return "conjunct mismatch";
      return std::nullopt;
    }
    case RuleKind::AndElimLeft:
    case RuleKind::AndElimRight: {
      if (auto e = premise_count(1)) return e;
      const Sequent& p = n.premises[0]->conclusion;
      if (!same_context(p)) return "context mismatch";
      if (!alpha_eq(p.antecedent, c.antecedent)) return "antecedent mismatch";
      if (!p.consequent.is_and()) return "premise consequent not a conjunction";
      const Formula& kept = n.rule == RuleKind::AndElimLeft
                                ? p.consequent.and_parts().lhs()
                                : p.consequent.and_parts().rhs();
      if (!alpha_eq(kept, c.consequent)) return "eliminated to the wrong conjunct";
      return std::nullopt;
    }
    case RuleKind::Cut: {
      if (auto e = premise_count(2)) return e;
      if (!n.cut_formula) return "cut without cut formula";
      const Sequent& p1 = n.premises[0]->conclusion;
      const Sequent& p2 = n.premises[1]->conclusion;
      if (!same_context(p1) || !same_context(p2)) return "context mismatch";
      if (!alpha_eq(p1.antecedent, c.antecedent)) return "left premise antecedent mismatch";
      if (!alpha_eq(p1.consequent, *n.cut_formula) || !alpha_eq(p2.antecedent, *n.cut_formula))
        return "premises disagree on the cut formula";
      if (!alpha_eq(p2.consequent, c.consequent)) return "right premise consequent mismatch";
      return std::nullopt;
    }
    case RuleKind::EqReflexivity: {
      if (auto e = premise_count(0)) return e;
      if (!n.refl_term) return "reflexivity without its term";
      if (!c.antecedent.is_top()) return "reflexivity antecedent must be top";
      if (!c.consequent.is_eq()) return "reflexivity must conclude an equality";
      if (c.consequent.eq_parts().lhs != *n.refl_term ||
          c.consequent.eq_parts().rhs != *n.refl_term)
        return "reflexivity sides differ from the stated term";
      return std::nullopt;
    }
    case RuleKind::EqReplacement: {
      if (auto e = premise_count(0)) return e;
      if (!n.repl_vars || !n.repl_formula) return "replacement without side data";
      const auto& [x, y] = *n.repl_vars;
      if (x.sort != y.sort) return "replacement variables of different sorts";
      if (!c.context.contains(x) || !c.context.contains(y))
        return "replacement variables outside the context";
      Formula want_ante = Formula::conj(Formula::eq(var(x), var(y)), *n.repl_formula);
      if (!alpha_eq(c.antecedent, want_ante)) return "antecedent is not (x=y) & phi";
      Formula want_cons = substitute(*n.repl_formula, Binding{{x, var(y)}});
      if (!alpha_eq(c.consequent, want_cons)) return "consequent is not phi[y/x]";
      return std::nullopt;
    }
    case RuleKind::Substitution: {
      if (auto e = premise_count(1)) return e;
      if (!n.binding) return "substitution without a binding";
      const Sequent& p = n.premises[0]->conclusion;
      for (const auto& [v, t] : *n.binding) {
        if (!p.context.contains(v)) return "binding of a variable outside the premise context";
        if (t.sort() != v.sort) return "binding not sort-correct";
        if (!well_sorted(th.signature, t)) return "binding term not well-sorted";
        for (const auto& fv : free_vars(t))
          if (!c.context.contains(fv)) return "binding term not over the conclusion context";
      }
      // Variables left unbound must survive into the conclusion context.
      for (const auto& v : p.context.vars)
        if (!n.binding->count(v) && !c.context.contains(v))
          return "premise variable dropped without a binding";
      if (!alpha_eq(c.antecedent, substitute(p.antecedent, *n.binding)))
        return "antecedent is not the substituted premise antecedent";
      if (!alpha_eq(c.consequent, substitute(p.consequent, *n.binding)))
        return "consequent is not the substituted premise consequent";
      return std::nullopt;
    }
    case RuleKind::ExistsElim: {
      if (auto e = premise_count(1)) return e;
      if (!c.antecedent.is_exists()) return "antecedent is not an existential";
      const auto& ex = c.antecedent.exists_parts();
      if (c.context.contains(ex.bound)) return "eliminated variable shadows the context";
      if (occurs_free(ex.bound, c.consequent)) return "eliminated variable free in the consequent";
      const Sequent& p = n.premises[0]->conclusion;
      if (p.context != c.context.extended(ex.bound))
        return "premise context must extend the conclusion context by the bound variable";
      if (!alpha_eq(p.antecedent, ex.body())) return "premise antecedent is not the body";
      if (!alpha_eq(p.consequent, c.consequent)) return "consequent mismatch";
      return std::nullopt;
    }
    case RuleKind::ExistsAdjoint: {
      if (auto e = premise_count(1)) return e;
      const Sequent& p = n.premises[0]->conclusion;
      if (!p.antecedent.is_exists()) return "premise antecedent is not an existential";
      if (c.context.vars.empty()) return "conclusion context cannot be empty";
      Variable y = c.context.vars.back();
      Context shrunk(std::vector<Variable>(c.context.vars.begin(), c.context.vars.end() - 1));
      if (p.context != shrunk) return "conclusion context must extend the premise context";
      if (occurs_free(y, c.consequent)) return "adjoined variable free in the consequent";
      if (!alpha_eq(Formula::exists(y, c.antecedent), p.antecedent))
        return "antecedent is not the opened premise body";
      if (!alpha_eq(p.consequent, c.consequent)) return "consequent mismatch";
      return std::nullopt;
    }
    case RuleKind::Frobenius: {
      if (auto e = premise_count(0)) return e;
      if (!c.antecedent.is_and()) return "antecedent is not a conjunction";
      const Formula& phi = c.antecedent.and_parts().lhs();
      const Formula& exf = c.antecedent.and_parts().rhs();
      if (!exf.is_exists()) return "right conjunct is not an existential";
      const auto& ex = exf.exists_parts();
      if (occurs_free(ex.bound, phi)) return "bound variable free in the passenger formula";
      Formula want = Formula::exists(ex.bound, Formula::conj(phi, ex.body()));
      if (!alpha_eq(c.consequent, want)) return "consequent is not exists y. (phi & psi)";
      return std::nullopt;
    }
    case RuleKind::TheoryAxiom: {
      if (auto e = premise_count(0)) return e;
      if (!n.axiom_index) return "axiom citation without an index";
      int i = *n.axiom_index;
      if (i < 0 || i >= static_cast<int>(th.axioms.size())) return "axiom index out of range";
      if (!alpha_equal(c, th.axioms[i]))
        return "conclusion is not the cited axiom (up to alpha)";
      return std::nullopt;
    }
  }
  return "unknown rule";
}

inline std::optional<CheckError> check_rec(const Theory& th, const Proof& p,
                                           std::vector<int>& path) {
  if (!p) return CheckError{path, "null proof"};
  if (auto reason = check_node(th, *p))
    return CheckError{path, std::string(rule_name(p->rule)) + ": " + *reason};
  for (std::size_t i = 0; i < p->premises.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (auto e = check_rec(th, p->premises[i], path)) return e;
    path.pop_back();
  }
  return std::nullopt;
}

}  // namespace detail

// ok iff every node is a valid instance of its rule and every axiom citation
// names an actual axiom of the theory.
inline std::optional<CheckError> check_proof(const Theory& th, const Proof& p) {
  std::vector<int> path;
  return detail::check_rec(th, p, path);
}

inline void require_checked(const Theory& th, const Proof& p) {
  if (auto e = check_proof(th, p))
    throw ProofError("internal proof failed the checker at " + e->to_string());
}

// ---------------------------------------------------------------------------
// Rule node builders

namespace rules {

inline Proof identity(const Formula& phi, const Context& ctx) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{phi, ctx, phi};
  n->rule = RuleKind::IdentityAxiom;
  return n;
}

inline Proof top_intro(const Formula& ante, const Context& ctx) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{ante, ctx, Formula::top()};
  n->rule = RuleKind::TopIntro;
  return n;
}

inline Proof and_intro(const Proof& l, const Proof& r) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{l->conclusion.antecedent, l->conclusion.context,
                          Formula::conj(l->conclusion.consequent, r->conclusion.consequent)};
  n->rule = RuleKind::AndIntro;
  n->premises = {l, r};
  return n;
}

inline Proof and_elim_left(const Proof& p) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{p->conclusion.antecedent, p->conclusion.context,
                          p->conclusion.consequent.and_parts().lhs()};
  n->rule = RuleKind::AndElimLeft;
  n->premises = {p};
  return n;
}

inline Proof and_elim_right(const Proof& p) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{p->conclusion.antecedent, p->conclusion.context,
                          p->conclusion.consequent.and_parts().rhs()};
  n->rule = RuleKind::AndElimRight;
  n->premises = {p};
  return n;
}

inline Proof cut(const Proof& p1, const Proof& p2) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{p1->conclusion.antecedent, p1->conclusion.context,
                          p2->conclusion.consequent};
  n->rule = RuleKind::Cut;
  n->cut_formula = p1->conclusion.consequent;
  n->premises = {p1, p2};
  return n;
}

inline Proof eq_refl_node(const Term& t, const Context& ctx) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{Formula::top(), ctx, Formula::eq(t, t)};
  n->rule = RuleKind::EqReflexivity;
  n->refl_term = t;
  return n;
}

inline Proof eq_replacement(const Variable& x, const Variable& y, const Formula& phi,
                            const Context& ctx) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{Formula::conj(Formula::eq(var(x), var(y)), phi), ctx,
                          substitute(phi, Binding{{x, var(y)}})};
  n->rule = RuleKind::EqReplacement;
  n->repl_vars = {x, y};
  n->repl_formula = phi;
  return n;
}

inline Proof substitution(const Proof& p, const Binding& b, const Context& target) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{substitute(p->conclusion.antecedent, b), target,
                          substitute(p->conclusion.consequent, b)};
  n->rule = RuleKind::Substitution;
  n->binding = b;
  n->premises = {p};
  return n;
}

// premise: phi |-_{ctx,y} psi,  conclusion: (exists y. phi) |-_ctx psi.
inline Proof exists_elim(const Proof& p) {
  const Sequent& s = p->conclusion;
  if (s.context.vars.empty()) throw ProofError("exists_elim: empty premise context");
  Variable y = s.context.vars.back();
  Context shrunk(std::vector<Variable>(s.context.vars.begin(), s.context.vars.end() - 1));
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{Formula::exists(y, s.antecedent), shrunk, s.consequent};
  n->rule = RuleKind::ExistsElim;
  n->premises = {p};
  return n;
}

// premise: (exists y. phi) |-_ctx psi,  conclusion: phi |-_{ctx,y} psi.
inline Proof exists_adjoint(const Proof& p) {
  const Sequent& s = p->conclusion;
  const auto& ex = s.antecedent.exists_parts();
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{ex.body(), s.context.extended(ex.bound), s.consequent};
  n->rule = RuleKind::ExistsAdjoint;
  n->premises = {p};
  return n;
}

inline Proof frobenius(const Formula& phi, const Variable& y, const Formula& psi,
                       const Context& ctx) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = Sequent{Formula::conj(phi, Formula::exists(y, psi)), ctx,
                          Formula::exists(y, Formula::conj(phi, psi))};
  n->rule = RuleKind::Frobenius;
  return n;
}

inline Proof theory_axiom(const Theory& th, int idx) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = th.axioms.at(idx);
  n->rule = RuleKind::TheoryAxiom;
  n->axiom_index = idx;
  return n;
}

}  // namespace rules

// ---------------------------------------------------------------------------
// Derived constructions

namespace derived {

// A |- B over the same context, via the identity binding: covers context
// weakening and reordering.
inline Proof weaken_context(const Proof& p, const Context& target) {
  if (p->conclusion.context == target) return p;
  return rules::substitution(p, Binding{}, target);
}

// tree |- leaf, where leaf alpha-matches some conjunct of tree.
inline Proof conj_project(const Formula& tree, const Context& ctx, const Formula& leaf) {
  std::function<std::optional<std::vector<bool>>(const Formula&)> find =
      [&](const Formula& f) -> std::optional<std::vector<bool>> {
    if (alpha_eq(f, leaf)) return std::vector<bool>{};
    if (!f.is_and()) return std::nullopt;
    if (auto l = find(f.and_parts().lhs())) {
      l->insert(l->begin(), true);
      return l;
    }
    if (auto r = find(f.and_parts().rhs())) {
      r->insert(r->begin(), false);
      return r;
    }
    return std::nullopt;
  };
  auto path = find(tree);
  if (!path) throw ProofError("conj_project: leaf not found in the conjunction");
  Proof p = rules::identity(tree, ctx);
  for (bool left : *path) p = left ? rules::and_elim_left(p) : rules::and_elim_right(p);
  return p;
}

// source |- target, where target is assembled by conjunction from top and
// conjuncts of source.
inline Proof prove_conj_from(const Formula& source, const Formula& target,
                             const Context& ctx) {
  if (alpha_eq(source, target)) return rules::identity(source, ctx);
  if (target.is_top()) return rules::top_intro(source, ctx);
  if (target.is_and()) {
    // Prefer a direct projection when the whole conjunction already occurs.
    try {
      return conj_project(source, ctx, target);
    } catch (const ProofError&) {
    }
    return rules::and_intro(prove_conj_from(source, target.and_parts().lhs(), ctx),
                            prove_conj_from(source, target.and_parts().rhs(), ctx));
  }
  return conj_project(source, ctx, target);
}

// ante |- t = t.
inline Proof eq_refl(const Formula& ante, const Context& ctx, const Term& t) {
  if (ante.is_top()) return rules::eq_refl_node(t, ctx);
  return rules::cut(rules::top_intro(ante, ctx), rules::eq_refl_node(t, ctx));
}

namespace gadget {

// ((a=b) & (a=c)) |- b=c over fresh variables, instantiated by substitution
// at terms s, t, u from proofs of A|-s=t? No: callers substitute themselves.
// Returns the replacement instance over its private three-variable context.
inline Proof flip_chain(const Sort& sort) {
  Variable a{sort, 0}, b{sort, 1}, c{sort, 2};
  Context ctx({a, b, c});
  // EqReplacement with phi := (a = c) rewrites a to b: ((a=b) & (a=c)) |- (b=c).
  return rules::eq_replacement(a, b, Formula::eq(var(a), var(c)), ctx);
}

}  // namespace gadget

// From A |- s=t conclude A |- t=s.
inline Proof eq_sym(const Proof& p) {
  const Sequent& s = p->conclusion;
  const Term& lhs = s.consequent.eq_parts().lhs;
  const Term& rhs = s.consequent.eq_parts().rhs;
  Sort so = lhs.sort();
  Variable a{so, 0}, b{so, 1}, c{so, 2};
  // ((s=t) & (s=s)) |- (t=s)
  Proof inst = rules::substitution(gadget::flip_chain(so),
                                   Binding{{a, lhs}, {b, rhs}, {c, lhs}}, s.context);
  Proof pair = rules::and_intro(p, eq_refl(s.antecedent, s.context, lhs));
  return rules::cut(pair, inst);
}

// From A |- s=t and A |- t=u conclude A |- s=u.
inline Proof eq_trans(const Proof& p1, const Proof& p2) {
  const Sequent& s1 = p1->conclusion;
  const Term& s = s1.consequent.eq_parts().lhs;
  const Term& t = s1.consequent.eq_parts().rhs;
  const Term& u = p2->conclusion.consequent.eq_parts().rhs;
  Sort so = s.sort();
  Variable a{so, 0}, b{so, 1}, c{so, 2};
  // ((t=s) & (t=u)) |- (s=u)
  Proof inst = rules::substitution(gadget::flip_chain(so), Binding{{a, t}, {b, s}, {c, u}},
                                   s1.context);
  Proof pair = rules::and_intro(eq_sym(p1), p2);
  return rules::cut(pair, inst);
}

// From A |- s=t conclude A |- f(..,s,..) = f(..,t,..) with s at argument
// slot i and the remaining arguments fixed.
inline Proof eq_cong(const Proof& p, const FunctionSymbol& fn,
                     const std::vector<Term>& args, int slot) {
  const Sequent& sq = p->conclusion;
  const Term& s = sq.consequent.eq_parts().lhs;
  const Term& t = sq.consequent.eq_parts().rhs;

  // Private context: pivot pair (p0, p1) in the slot sort, one generic
  // variable per argument position.
  std::map<Sort, int> next;
  auto fresh = [&](const Sort& so) { return Variable{so, next[so]++}; };
  Variable pivot = fresh(fn.arg_sorts[slot]);
  Variable pivot2 = fresh(fn.arg_sorts[slot]);
  std::vector<Variable> generic;
  for (const auto& as : fn.arg_sorts) generic.push_back(fresh(as));

  std::vector<Variable> ctx_vars{pivot, pivot2};
  ctx_vars.insert(ctx_vars.end(), generic.begin(), generic.end());
  Context gctx(ctx_vars);

  std::vector<Term> lhs_args, rhs_args;
  for (std::size_t j = 0; j < fn.arg_sorts.size(); ++j) {
    lhs_args.push_back(static_cast<int>(j) == slot ? var(pivot) : var(generic[j]));
    rhs_args.push_back(var(generic[j]));
  }
  // ((pivot=pivot2) & f(..pivot..) = f(..g_i..)) |- f(..pivot2..) = f(..g_i..)
  Formula phi = Formula::eq(Term(fn, lhs_args), Term(fn, rhs_args));
  Proof repl = rules::eq_replacement(pivot, pivot2, phi, gctx);

  Binding b{{pivot, s}, {pivot2, t}};
  for (std::size_t j = 0; j < generic.size(); ++j)
    b.emplace(generic[j], static_cast<int>(j) == slot ? s : args[j]);
  Proof inst = rules::substitution(repl, b, sq.context);  // ((s=t) & F[s]=F[s]) |- F[t]=F[s]

  std::vector<Term> at_s = args;
  at_s[slot] = s;
  Proof pair = rules::and_intro(p, eq_refl(sq.antecedent, sq.context, Term(fn, at_s)));
  return eq_sym(rules::cut(pair, inst));
}

// From A |- s=t and A |- R(..,s,..) conclude A |- R(..,t,..).
inline Proof rel_replace(const Proof& p_eq, const Proof& p_rel, int slot) {
  const Sequent& sq = p_eq->conclusion;
  const Term& s = sq.consequent.eq_parts().lhs;
  const Term& t = sq.consequent.eq_parts().rhs;
  const auto& atom = p_rel->conclusion.consequent.rel_parts();

  std::map<Sort, int> next;
  auto fresh = [&](const Sort& so) { return Variable{so, next[so]++}; };
  Variable pivot = fresh(atom.rel.arg_sorts[slot]);
  Variable pivot2 = fresh(atom.rel.arg_sorts[slot]);
  std::vector<Variable> generic;
  for (const auto& as : atom.rel.arg_sorts) generic.push_back(fresh(as));
  std::vector<Variable> ctx_vars{pivot, pivot2};
  ctx_vars.insert(ctx_vars.end(), generic.begin(), generic.end());
  Context gctx(ctx_vars);

  std::vector<Term> pat;
  for (std::size_t j = 0; j < generic.size(); ++j)
    pat.push_back(static_cast<int>(j) == slot ? var(pivot) : var(generic[j]));
  Proof repl = rules::eq_replacement(pivot, pivot2, Formula::rel(atom.rel, pat), gctx);

  // Every gadget variable needs an image; the slot's generic variable does
  // not occur in the pattern, so any well-sorted term will do.
  Binding b{{pivot, s}, {pivot2, t}};
  for (std::size_t j = 0; j < generic.size(); ++j)
    b.emplace(generic[j], static_cast<int>(j) == slot ? s : atom.args[j]);
  Proof inst = rules::substitution(repl, b, sq.context);

  Proof pair = rules::and_intro(p_eq, p_rel);
  return rules::cut(pair, inst);
}

}  // namespace derived

// ---------------------------------------------------------------------------
// Existential introduction (Lemma-style derived macro)
//
//    phi |-_x psi[tau/y]
//   ---------------------
//    phi |-_x exists y. psi
//
// The expansion is exactly: identity on (exists y. psi), the adjoint rule to
// open the binder, substitution of tau for the bound variable, and a cut with
// the given premise.

inline Proof exists_intro(const Proof& premise, const Term& witness, Variable y,
                          Formula psi) {
  const Sequent& s = premise->conclusion;
  if (witness.sort() != y.sort)
    throw ProofError("exists_intro: witness sort does not match the bound variable");

  // The adjoint rule needs the binder outside the ambient context; rename
  // only in that case, so caller-chosen binder names survive.
  bool clashes = s.context.contains(y);
  for (const auto& v : free_vars(witness)) clashes = clashes || v == y;
  if (clashes) {
    std::set<Variable> avoid(s.context.vars.begin(), s.context.vars.end());
    for (const auto& v : free_vars(psi)) avoid.insert(v);
    for (const auto& v : free_vars(witness)) avoid.insert(v);
    Variable fresh = fresh_variable(y.sort, avoid);
    psi = substitute(psi, Binding{{y, var(fresh)}});
    y = fresh;
  }

  Formula instantiated = substitute(psi, Binding{{y, witness}});
  if (!alpha_eq(instantiated, s.consequent))
    throw ProofError("exists_intro: premise does not conclude psi[tau/y]");

  Formula target = Formula::exists(y, psi);
  Proof id = rules::identity(target, s.context);
  Proof opened = rules::exists_adjoint(id);                       // psi |-_{x,y} exists y. psi
  Proof subbed = rules::substitution(opened, Binding{{y, witness}}, s.context);
  return rules::cut(premise, subbed);                             // phi |-_x exists y. psi
}

namespace derived {

// From A |- x=y (variables) and A |- phi conclude A |- phi[y/x].
inline Proof replace_var(const Proof& p_eq, const Proof& p_f) {
  const Sequent& s = p_eq->conclusion;
  const Term& xl = s.consequent.eq_parts().lhs;
  const Term& xr = s.consequent.eq_parts().rhs;
  if (!xl.is_var() || !xr.is_var())
    throw ProofError("replace_var needs a variable equation");
  Proof repl = rules::eq_replacement(xl.var(), xr.var(), p_f->conclusion.consequent, s.context);
  return rules::cut(rules::and_intro(p_eq, p_f), repl);
}

// From A |-_c chi conclude A |- exists v'. chi[v'/v], binding every free
// occurrence of v through a fresh binder.
inline Proof exists_intro_self(const Proof& p, const Variable& v) {
  return exists_intro(p, var(v), v, p->conclusion.consequent);
}

// From A |-_{c,y} B with y free on both sides conclude (exists y. A) |-_c (exists y. B).
inline Proof map_under_binder(const Proof& p) {
  const Sequent& s = p->conclusion;
  if (s.context.vars.empty()) throw ProofError("map_under_binder: empty context");
  Variable y = s.context.vars.back();
  return rules::exists_elim(exists_intro_self(p, y));
}

// Iterated map_under_binder over the trailing `count` context variables:
// from A |-_{c,z1..zk} B conclude (exists z1..zk. A) |-_c (exists z1..zk. B).
inline Proof map_under_binders(Proof p, int count) {
  for (int i = 0; i < count; ++i) p = map_under_binder(p);
  return p;
}

// From body |-_{c, z1..zk} cons with no zi free in cons conclude
// (exists z1..zk. body) |-_c cons.
inline Proof open_exists_chain(Proof p, int count) {
  for (int i = 0; i < count; ++i) p = rules::exists_elim(p);
  return p;
}

// (passenger & exists z1..zk. body) |-_ctx exists z1..zk. (passenger & body),
// with no zi free in the passenger.
inline Proof frobenius_pull(const Formula& passenger, const std::vector<Variable>& binders,
                            const Formula& body, const Context& ctx) {
  if (binders.empty()) {
    Formula whole = Formula::conj(passenger, body);
    return rules::identity(whole, ctx);
  }
  Formula inner_ex = body;
  for (auto it = binders.rbegin(); it != binders.rend() - 1; ++it)
    inner_ex = Formula::exists(*it, inner_ex);
  // (passenger & exists z1. rest) |- exists z1. (passenger & rest)
  Proof head = rules::frobenius(passenger, binders.front(), inner_ex, ctx);
  if (binders.size() == 1) return head;
  std::vector<Variable> tail(binders.begin() + 1, binders.end());
  Proof inner = frobenius_pull(passenger, tail, body, ctx.extended(binders.front()));
  return rules::cut(head, map_under_binder(inner));
}

// Fold a list of proofs sharing an antecedent into its conjunction.
inline Proof conj_of(const std::vector<Proof>& ps) {
  if (ps.empty()) throw ProofError("conj_of: empty list");
  Proof acc = ps.back();
  for (auto it = ps.rbegin() + 1; it != ps.rend(); ++it) acc = rules::and_intro(*it, acc);
  return acc;
}

}  // namespace derived

// ---------------------------------------------------------------------------
// Transport across the extension T[phi]
//
// Into: from a T-proof of phi |-_x psi produce a T[phi]-proof of top |-_x psi
// by a cut with the adjoined axiom. Out: from a T[phi]-proof of top |-_x psi
// produce a T-proof of phi |-_x psi, regarding every usage of the adjoined
// axiom as an assumption. The out direction threads the assumption through
// the tree and is therefore partial: it refuses proofs that substitute into
// the adjoined formula's variables below an axiom citation, since no sequent
// of the shape phi |- psi exists in that case.

struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TransportDirection { IntoExtension, OutOfExtension };

namespace detail {

inline bool cites_axiom(const Proof& p, int idx) {
  if (p->rule == RuleKind::TheoryAxiom && p->axiom_index && *p->axiom_index == idx)
    return true;
  for (const auto& q : p->premises)
    if (cites_axiom(q, idx)) return true;
  return false;
}

// Thread `hyp` into the antecedent: from a T[phi]-proof of chi1 |- chi2
// build a T-proof of (hyp & chi1) |- chi2.
inline Proof thread_hypothesis(const Theory& base, const Formula& hyp, const Proof& p,
                               int axiom_idx) {
  const Sequent& c = p->conclusion;
  for (const auto& v : free_vars(hyp))
    if (!c.context.contains(v))
      throw TransportError("adjoined formula's variables leave the context mid-proof");

  if (!cites_axiom(p, axiom_idx)) {
    // The subtree is already a T-proof; weaken its antecedent.
    Formula grown = Formula::conj(hyp, c.antecedent);
    return rules::cut(derived::conj_project(grown, c.context, c.antecedent), p);
  }

  switch (p->rule) {
    case RuleKind::TheoryAxiom: {
      // The citation itself: (hyp & top) |- phi.
      Formula grown = Formula::conj(hyp, c.antecedent);
      return derived::conj_project(grown, c.context, c.consequent);
    }
    case RuleKind::Cut: {
      Proof l = thread_hypothesis(base, hyp, p->premises[0], axiom_idx);
      Proof r = thread_hypothesis(base, hyp, p->premises[1], axiom_idx);
      Formula grown = Formula::conj(hyp, c.antecedent);
      Proof pick_hyp = derived::conj_project(grown, c.context, hyp);
      Proof pair = rules::and_intro(pick_hyp, l);  // (hyp & chi1) |- hyp & delta
      return rules::cut(pair, r);
    }
    case RuleKind::AndIntro:
      return rules::and_intro(thread_hypothesis(base, hyp, p->premises[0], axiom_idx),
                              thread_hypothesis(base, hyp, p->premises[1], axiom_idx));
    case RuleKind::AndElimLeft:
      return rules::and_elim_left(thread_hypothesis(base, hyp, p->premises[0], axiom_idx));
    case RuleKind::AndElimRight:
      return rules::and_elim_right(thread_hypothesis(base, hyp, p->premises[0], axiom_idx));
    case RuleKind::Substitution: {
      for (const auto& [v, t] : *p->binding)
        if (occurs_free(v, hyp) && !(t.is_var() && t.var() == v))
          throw TransportError(
              "the adjoined axiom is used under a substitution of its context; "
              "no proof of the shape phi |- psi exists for this tree");
      Proof inner = thread_hypothesis(base, hyp, p->premises[0], axiom_idx);
      return rules::substitution(inner, *p->binding, c.context);
    }
    case RuleKind::ExistsElim: {
      const auto& ex = c.antecedent.exists_parts();
      Proof inner = thread_hypothesis(base, hyp, p->premises[0], axiom_idx);
      // inner: (hyp & body) |-_{ctx,y} psi; eliminate, then route through the
      // Frobenius axiom.
      Proof elim = rules::exists_elim(inner);  // exists y.(hyp & body) |- psi
      Proof frob = rules::frobenius(hyp, ex.bound, ex.body(), c.context);
      return rules::cut(frob, elim);
    }
    case RuleKind::ExistsAdjoint: {
      Proof inner = thread_hypothesis(base, hyp, p->premises[0], axiom_idx);
      // inner: (hyp & exists y. chi) |-_ctx psi. Target: (hyp & chi) |-_{ctx,y} psi.
      Variable y = c.context.vars.back();
      Formula grown = Formula::conj(hyp, c.antecedent);
      Proof open_body =
          exists_intro(derived::conj_project(grown, c.context, c.antecedent), var(y), y,
                       p->premises[0]->conclusion.antecedent.exists_parts().body());
      Proof pair = rules::and_intro(derived::conj_project(grown, c.context, hyp), open_body);
      Proof weakened = derived::weaken_context(inner, c.context);
      return rules::cut(pair, weakened);
    }
    default:
      throw TransportError(std::string("cannot thread through rule ") + rule_name(p->rule));
  }
}

}  // namespace detail

inline Proof transport(const Theory& base, const FormulaInContext& phi, const Proof& p,
                       TransportDirection dir) {
  auto [ext, inc] = adjoin(base, phi);
  int axiom_idx = static_cast<int>(ext.axioms.size()) - 1;

  if (dir == TransportDirection::IntoExtension) {
    const Sequent& s = p->conclusion;
    if (!alpha_equal(Sequent{Formula::top(), s.context, s.antecedent}, ext.axioms[axiom_idx]))
      throw TransportError("premise antecedent is not the adjoined formula at its context");
    auto ax = std::make_shared<ProofNode>();
    ax->conclusion = Sequent{Formula::top(), s.context, s.antecedent};
    ax->rule = RuleKind::TheoryAxiom;
    ax->axiom_index = axiom_idx;
    return rules::cut(Proof(ax), p);
  }

  const Sequent& s = p->conclusion;
  if (!s.antecedent.is_top())
    throw TransportError("out-of-extension transport expects a top antecedent");
  if (s.context.size() < phi.context.size())
    throw TransportError("conclusion context does not cover the adjoined formula");
  // The assumption formula, spelled at the proof's own context.
  Binding rename;
  for (std::size_t i = 0; i < phi.context.size(); ++i) {
    if (phi.context.vars[i].sort != s.context.vars[i].sort)
      throw TransportError("context sorts do not line up with the adjoined formula");
    rename.emplace(phi.context.vars[i], var(s.context.vars[i]));
  }
  Formula hyp = substitute(phi.formula, rename);

  try {
    Proof threaded = detail::thread_hypothesis(base, hyp, p, axiom_idx);
    // threaded: (hyp & top) |-_x psi; finish with hyp |- hyp & top.
    Proof intro = rules::and_intro(rules::identity(hyp, s.context),
                                   rules::top_intro(hyp, s.context));
    return rules::cut(intro, threaded);
  } catch (const ProofError& e) {
    throw TransportError(std::string("transport out failed: ") + e.what());
  }
}

}  // namespace cartlog

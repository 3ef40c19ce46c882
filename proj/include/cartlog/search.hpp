// Bounded proof search: backward decomposition of the consequent plus a
// forward equality-saturation pass (congruence closure) over the antecedent
// atoms and instantiated theory axioms. Everything returned is a kernel
// proof tree; search itself is untrusted.
//
// Outcomes are three-valued by design: proved carries a checkable tree,
// unknown is never a disproof.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cartlog/proof.hpp"

namespace cartlog {

struct ProofBudget {
  int max_depth = 12;
  int max_sequents = 4096;  // caps memoized subgoals and axiom instances alike
  std::uint64_t seed = 0;   // reserved for generator-driven callers

  ProofBudget() = default;
  ProofBudget(int depth, int sequents, std::uint64_t s = 0)
      : max_depth(depth), max_sequents(sequents), seed(s) {}
};

namespace detail {

// Proof-carrying congruence closure. Every member of a class keeps an
// explicit kernel proof connecting it to the class representative, built
// eagerly at merge time, so explanations are assembled by symmetry and
// transitivity alone.
class EqEngine {
 public:
  EqEngine(const Theory& th, Formula flat_antecedent, Context ctx)
      : theory_(th), ante_(std::move(flat_antecedent)), ctx_(std::move(ctx)) {}

  int intern(const Term& t) {
    auto it = ids_.find(t);
    if (it != ids_.end()) return it->second;
    if (!t.is_var())
      for (const auto& a : t.app().args) intern(a);
    int id = static_cast<int>(terms_.size());
    ids_.emplace(t, id);
    terms_.push_back(t);
    rep_.push_back(id);
    members_.push_back({id});
    to_rep_.push_back(derived::eq_refl(ante_, ctx_, t));
    return id;
  }

  int find(int id) const { return rep_[id]; }

  bool has(const Term& t) const { return ids_.count(t) > 0; }

  const std::vector<Term>& universe() const { return terms_; }

  // Record an equation justified by `why` (a proof of ante |- lhs = rhs).
  // The proof is only demanded when the classes actually differ.
  void add_equation(const Term& lhs, const Term& rhs,
                    const std::function<Proof()>& why) {
    int a = intern(lhs), b = intern(rhs);
    if (rep_[a] != rep_[b]) merge(a, b, why());
  }

  void saturate() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::string, int> keys;
      for (int id = 0; id < static_cast<int>(terms_.size()); ++id) {
        const Term& t = terms_[id];
        if (t.is_var()) continue;
        std::string key = t.app().fn.name;
        for (const auto& a : t.app().args)
          key += "#" + std::to_string(rep_[ids_.at(a)]);
        auto [it, inserted] = keys.emplace(key, id);
        if (!inserted && rep_[it->second] != rep_[id]) {
          merge(it->second, id, congruence_proof(it->second, id));
          changed = true;
        }
      }
    }
  }

  bool equal(const Term& a, const Term& b) {
    return rep_[intern(a)] == rep_[intern(b)];
  }

  // ante |- a = b, assuming equal(a, b).
  Proof explain(const Term& a, const Term& b) {
    int ia = intern(a), ib = intern(b);
    if (ia == ib) return derived::eq_refl(ante_, ctx_, a);
    return derived::eq_trans(to_rep_[ia], derived::eq_sym(to_rep_[ib]));
  }

 private:
  Proof congruence_proof(int u, int v) {
    const auto& fu = terms_[u].app();
    const auto& fv = terms_[v].app();
    std::vector<Term> cur = fu.args;
    Proof acc;  // ante |- terms_[u] = f(cur)
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] == fv.args[i]) continue;
      Proof arg_eq = explain(cur[i], fv.args[i]);
      Proof step = derived::eq_cong(arg_eq, fu.fn, cur, static_cast<int>(i));
      cur[i] = fv.args[i];
      acc = acc ? derived::eq_trans(acc, step) : step;
    }
    if (!acc) return derived::eq_refl(ante_, ctx_, terms_[u]);
    return acc;
  }

  void merge(int a, int b, Proof a_eq_b) {
    int ra = rep_[a], rb = rep_[b];
    if (ra == rb) return;
    // ra = a = b = rb
    Proof ra_rb = derived::eq_trans(
        derived::eq_sym(to_rep_[a]), derived::eq_trans(a_eq_b, to_rep_[b]));
    if (members_[ra].size() < members_[rb].size()) {
      std::swap(ra, rb);
      ra_rb = derived::eq_sym(ra_rb);
    }
    // Absorb rb's members into ra.
    Proof rb_ra = derived::eq_sym(ra_rb);
    for (int m : members_[rb]) {
      to_rep_[m] = derived::eq_trans(to_rep_[m], rb_ra);
      rep_[m] = ra;
      members_[ra].push_back(m);
    }
    members_[rb].clear();
  }

  const Theory& theory_;
  Formula ante_;
  Context ctx_;
  std::map<Term, int, TermLess> ids_;
  std::vector<Term> terms_;
  std::vector<int> rep_;
  std::vector<std::vector<int>> members_;
  std::vector<Proof> to_rep_;  // ante |- term = representative
};

inline void collect_subterms(const Term& t, std::set<Term, TermLess>& out) {
  out.insert(t);
  if (!t.is_var())
    for (const auto& a : t.app().args) collect_subterms(a, out);
}

inline void collect_formula_terms(const Formula& f, std::set<Term, TermLess>& out) {
  if (f.is_eq()) {
    collect_subterms(f.eq_parts().lhs, out);
    collect_subterms(f.eq_parts().rhs, out);
  } else if (f.is_rel()) {
    for (const auto& a : f.rel_parts().args) collect_subterms(a, out);
  } else if (f.is_and()) {
    collect_formula_terms(f.and_parts().lhs(), out);
    collect_formula_terms(f.and_parts().rhs(), out);
  } else if (f.is_exists()) {
    collect_formula_terms(f.exists_parts().body(), out);
  }
}

inline void collect_fn_names(const Formula& f, std::set<std::string>& out) {
  std::set<Term, TermLess> ts;
  collect_formula_terms(f, ts);
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_var()) return;
    out.insert(t.app().fn.name);
    for (const auto& a : t.app().args) walk(a);
  };
  for (const auto& t : ts) walk(t);
}

class Searcher {
 public:
  Searcher(const Theory& th, const ProofBudget& b) : th_(th), budget_(b) {}

  std::optional<Proof> prove(const Sequent& goal) { return prove(goal, budget_.max_depth); }

 private:
  struct MemoEntry {
    std::optional<Proof> proof;
    int failed_depth = -1;  // deepest budget at which the goal failed
  };

  // The memo key identifies goals up to alpha, so a cached proof may carry
  // different free variables than the query; rename its context positionally.
  static Proof renamed_to(const Proof& p, const Sequent& goal) {
    const Context& from = p->conclusion.context;
    Binding ren;
    for (std::size_t i = 0; i < from.size(); ++i)
      if (from.vars[i] != goal.context.vars[i])
        ren.emplace(from.vars[i], var(goal.context.vars[i]));
    if (ren.empty()) return p;
    return rules::substitution(p, ren, goal.context);
  }

  std::optional<Proof> prove(const Sequent& goal, int depth) {
    if (!well_formed(th_.signature, goal)) return std::nullopt;
    Namer n = namer_for(th_.signature);
    std::string key = print_sequent(alpha_normalize(goal), n);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      if (it->second.proof) return renamed_to(*it->second.proof, goal);
      if (it->second.failed_depth >= depth) return std::nullopt;
    }
    if (++sequents_used_ > budget_.max_sequents) return std::nullopt;

    std::optional<Proof> result = attempt(goal, depth);
    MemoEntry& e = memo_[key];
    if (result)
      e.proof = result;
    else
      e.failed_depth = std::max(e.failed_depth, depth);
    return result;
  }

  std::optional<Proof> attempt(const Sequent& goal, int depth) {
    // Immediate closures.
    if (alpha_eq(goal.antecedent, goal.consequent))
      return rules::identity(goal.antecedent, goal.context);
    if (goal.consequent.is_top())
      return rules::top_intro(goal.antecedent, goal.context);
    for (std::size_t i = 0; i < th_.axioms.size(); ++i)
      if (alpha_equal(goal, th_.axioms[i]))
        return rules::theory_axiom(th_, static_cast<int>(i));

    // Antecedent normalization: eliminate a top-level existential, hoist an
    // existential out of a conjunction via Frobenius, or reorder to the
    // canonical flat conjunction. Each step recurses at the same depth.
    if (goal.antecedent.is_exists()) return step_exists_elim(goal, depth);
    if (goal.antecedent.is_and()) {
      if (auto hoist = step_frobenius_hoist(goal, depth)) return hoist;
      // fall through when no existential leaf remains
    }

    std::vector<Formula> atoms;
    for (const auto& c : conjuncts(goal.antecedent))
      if (!c.is_top()) atoms.push_back(c);
    Formula flat = conj_fold(atoms);
    if (flat != goal.antecedent) {
      auto sub = prove(Sequent{flat, goal.context, goal.consequent}, depth);
      if (!sub) return std::nullopt;
      return rules::cut(derived::prove_conj_from(goal.antecedent, flat, goal.context), *sub);
    }

    return decide(goal, atoms, depth);
  }

  std::optional<Proof> step_exists_elim(const Sequent& goal, int depth) {
    const auto& ex = goal.antecedent.exists_parts();
    Variable y = ex.bound;
    Formula body = ex.body();
    std::set<Variable> avoid(goal.context.vars.begin(), goal.context.vars.end());
    for (const auto& v : free_vars(body)) avoid.insert(v);
    for (const auto& v : free_vars(goal.consequent)) avoid.insert(v);
    if (avoid.count(y) || goal.context.contains(y) || occurs_free(y, goal.consequent)) {
      Variable fresh = fresh_variable(y.sort, avoid);
      body = substitute(body, Binding{{y, var(fresh)}});
      y = fresh;
    }
    auto sub = prove(Sequent{body, goal.context.extended(y), goal.consequent}, depth);
    if (!sub) return std::nullopt;
    return rules::exists_elim(*sub);
  }

  std::optional<Proof> step_frobenius_hoist(const Sequent& goal, int depth) {
    std::vector<Formula> leaves = conjuncts(goal.antecedent);
    int ex_index = -1;
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (leaves[i].is_exists()) {
        ex_index = static_cast<int>(i);
        break;
      }
    if (ex_index < 0) return std::nullopt;

    std::vector<Formula> rest_leaves;
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (static_cast<int>(i) != ex_index) rest_leaves.push_back(leaves[i]);
    Formula rest = conj_fold(rest_leaves);

    const auto& ex = leaves[ex_index].exists_parts();
    Variable y = ex.bound;
    Formula body = ex.body();
    std::set<Variable> avoid(goal.context.vars.begin(), goal.context.vars.end());
    for (const auto& v : free_vars(rest)) avoid.insert(v);
    for (const auto& v : free_vars(body)) avoid.insert(v);
    for (const auto& v : free_vars(goal.consequent)) avoid.insert(v);
    if (avoid.count(y)) {
      Variable fresh = fresh_variable(y.sort, avoid);
      body = substitute(body, Binding{{y, var(fresh)}});
      y = fresh;
    }

    Formula reordered = Formula::conj(rest, Formula::exists(y, body));
    Formula hoisted = Formula::exists(y, Formula::conj(rest, body));
    auto sub = prove(Sequent{hoisted, goal.context, goal.consequent}, depth);
    if (!sub) return std::nullopt;
    Proof reorder = derived::prove_conj_from(goal.antecedent, reordered, goal.context);
    Proof frob = rules::frobenius(rest, y, body, goal.context);
    return rules::cut(reorder, rules::cut(frob, *sub));
  }

  // Decision phase over a flat antecedent.
  std::optional<Proof> decide(const Sequent& goal, const std::vector<Formula>& atoms,
                              int depth) {
    // A conjunct may already close the goal.
    for (const auto& a : atoms)
      if (alpha_eq(a, goal.consequent))
        return derived::conj_project(goal.antecedent, goal.context, goal.consequent);

    if (goal.consequent.is_and()) {
      if (depth <= 0) return std::nullopt;
      auto l = prove(Sequent{goal.antecedent, goal.context, goal.consequent.and_parts().lhs()},
                     depth - 1);
      if (!l) return std::nullopt;
      auto r = prove(Sequent{goal.antecedent, goal.context, goal.consequent.and_parts().rhs()},
                     depth - 1);
      if (!r) return std::nullopt;
      return rules::and_intro(*l, *r);
    }

    if (goal.consequent.is_exists()) return decide_exists(goal, atoms, depth);

    EqEngine eq = build_engine(goal, atoms);

    if (goal.consequent.is_eq()) {
      const auto& e = goal.consequent.eq_parts();
      if (eq.equal(e.lhs, e.rhs)) return eq.explain(e.lhs, e.rhs);
      return std::nullopt;
    }

    if (goal.consequent.is_rel()) {
      const auto& want = goal.consequent.rel_parts();
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (!atoms[k].is_rel()) continue;
        const auto& have = atoms[k].rel_parts();
        if (have.rel != want.rel) continue;
        bool ok = true;
        for (std::size_t i = 0; i < have.args.size() && ok; ++i)
          ok = eq.equal(have.args[i], want.args[i]);
        if (!ok) continue;
        Proof p = derived::conj_project(goal.antecedent, goal.context, atoms[k]);
        std::vector<Term> cur = have.args;
        for (std::size_t i = 0; i < cur.size(); ++i) {
          if (cur[i] == want.args[i]) continue;
          p = derived::rel_replace(eq.explain(cur[i], want.args[i]), p, static_cast<int>(i));
          cur[i] = want.args[i];
        }
        return p;
      }
      return std::nullopt;
    }

    return std::nullopt;
  }

  std::optional<Proof> decide_exists(const Sequent& goal, const std::vector<Formula>& atoms,
                                     int depth) {
    if (depth <= 0) return std::nullopt;
    const auto& ex = goal.consequent.exists_parts();

    std::set<Term, TermLess> pool;
    for (const auto& a : atoms) collect_formula_terms(a, pool);
    collect_formula_terms(goal.consequent, pool);
    for (const auto& v : goal.context.vars) pool.insert(var(v));
    for (const auto& f : th_.signature.functions)
      if (f.arity() == 0) pool.insert(constant(f));

    std::vector<Term> candidates;
    for (const auto& t : pool) {
      if (t.sort() != ex.bound.sort) continue;
      bool closed = true;
      for (const auto& v : free_vars(t))
        if (!goal.context.contains(v)) {
          closed = false;
          break;
        }
      if (closed) candidates.push_back(t);
    }

    for (const auto& witness : candidates) {
      Formula inst = substitute(ex.body(), Binding{{ex.bound, witness}});
      auto sub = prove(Sequent{goal.antecedent, goal.context, inst}, depth - 1);
      if (!sub) continue;
      return exists_intro(*sub, witness, ex.bound, ex.body());
    }
    return std::nullopt;
  }

  EqEngine build_engine(const Sequent& goal, const std::vector<Formula>& atoms) {
    EqEngine eq(th_, goal.antecedent, goal.context);

    std::set<Term, TermLess> pool;
    for (const auto& a : atoms) collect_formula_terms(a, pool);
    collect_formula_terms(goal.consequent, pool);
    for (const auto& v : goal.context.vars) pool.insert(var(v));
    for (const auto& t : pool) eq.intern(t);

    std::set<std::string> fn_names;
    for (const auto& a : atoms) collect_fn_names(a, fn_names);
    collect_fn_names(goal.consequent, fn_names);

    // Antecedent equations.
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (!atoms[k].is_eq()) continue;
      const auto& e = atoms[k].eq_parts();
      Formula atom = atoms[k];
      const Formula& ante = goal.antecedent;
      const Context& ctx = goal.context;
      eq.add_equation(e.lhs, e.rhs,
                      [&ante, &ctx, atom] { return derived::conj_project(ante, ctx, atom); });
    }

    // Theory axiom instances. Only axioms with a top antecedent and only
    // axioms whose symbols already occur in the goal: foreign symbols cannot
    // shorten an equality chain at this scale, and the instance budget is
    // shared with the subgoal budget.
    int instance_budget = budget_.max_sequents;
    for (std::size_t i = 0; i < th_.axioms.size(); ++i) {
      const Sequent& ax = th_.axioms[i];
      if (!ax.antecedent.is_top()) continue;
      std::set<std::string> ax_fns;
      collect_fn_names(ax.consequent, ax_fns);
      bool relevant = true;
      for (const auto& f : ax_fns)
        if (!fn_names.count(f)) {
          relevant = false;
          break;
        }
      if (!relevant) continue;

      std::vector<Formula> parts = conjuncts(ax.consequent);
      std::vector<std::vector<bool>> paths = conjunct_paths(ax.consequent);

      // Enumerate assignments of the axiom context over the current universe.
      std::vector<std::vector<Term>> choices;
      bool feasible = true;
      std::vector<Term> uni = eq.universe();
      for (const auto& v : ax.context.vars) {
        std::vector<Term> of_sort;
        for (const auto& t : uni)
          if (t.sort() == v.sort) {
            bool closed = true;
            for (const auto& fv : free_vars(t))
              if (!goal.context.contains(fv)) {
                closed = false;
                break;
              }
            if (closed) of_sort.push_back(t);
          }
        if (of_sort.empty()) {
          feasible = false;
          break;
        }
        choices.push_back(std::move(of_sort));
      }
      if (!feasible) continue;

      std::vector<std::size_t> idx(ax.context.size(), 0);
      bool done = false;
      while (!done) {
        if (instance_budget-- <= 0) {
          done = true;
          break;
        }
        Binding b;
        for (std::size_t j = 0; j < idx.size(); ++j)
          b.emplace(ax.context.vars[j], choices[j][idx[j]]);

        for (std::size_t k = 0; k < parts.size(); ++k) {
          if (!parts[k].is_eq()) continue;
          Term lhs = substitute(parts[k].eq_parts().lhs, b);
          Term rhs = substitute(parts[k].eq_parts().rhs, b);
          // An instance relating two unseen terms cannot connect existing
          // classes; skipping it keeps the universe from snowballing.
          if (!eq.has(lhs) && !eq.has(rhs)) continue;
          const Formula& ante = goal.antecedent;
          const Context& ctx = goal.context;
          const Theory& th = th_;
          int axiom_idx = static_cast<int>(i);
          std::vector<bool> path = paths[k];
          eq.add_equation(lhs, rhs, [&th, &ante, &ctx, axiom_idx, b, path] {
            Proof p = rules::theory_axiom(th, axiom_idx);
            p = rules::substitution(p, b, ctx);
            for (bool left : path)
              p = left ? rules::and_elim_left(p) : rules::and_elim_right(p);
            if (ante.is_top()) return p;
            return rules::cut(rules::top_intro(ante, ctx), p);
          });
        }

        // Advance the mixed-radix counter.
        done = true;
        for (int j = static_cast<int>(idx.size()) - 1; j >= 0; --j) {
          if (++idx[j] < choices[j].size()) {
            done = false;
            break;
          }
          idx[j] = 0;
        }
        if (idx.empty()) done = true;
      }
    }

    eq.saturate();
    return eq;
  }

  static std::vector<std::vector<bool>> conjunct_paths(const Formula& f) {
    std::vector<std::vector<bool>> out;
    std::function<void(const Formula&, std::vector<bool>)> walk =
        [&](const Formula& g, std::vector<bool> path) {
          if (g.is_and()) {
            auto l = path;
            l.push_back(true);
            walk(g.and_parts().lhs(), l);
            auto r = path;
            r.push_back(false);
            walk(g.and_parts().rhs(), r);
            return;
          }
          out.push_back(path);
        };
    walk(f, {});
    return out;
  }

  const Theory& th_;
  ProofBudget budget_;
  int sequents_used_ = 0;
  std::map<std::string, MemoEntry> memo_;
};

}  // namespace detail

// proved implies check_proof accepts the returned proof of exactly the goal
// (up to alpha); unknown is not a disproof.
inline std::optional<Proof> search(const Theory& th, const Sequent& goal,
                                   const ProofBudget& budget = {}) {
  detail::Searcher s(th, budget);
  auto p = s.prove(goal);
  if (p && check_proof(th, *p))
    throw ProofError("search produced a tree the checker rejects");
  return p;
}

// Mutual entailment of two formulas-in-context sharing a context up to alpha.
inline std::optional<std::pair<Proof, Proof>> bi_provable(const Theory& th,
                                                          const FormulaInContext& a,
                                                          const FormulaInContext& b,
                                                          const ProofBudget& budget = {}) {
  if (a.context.size() != b.context.size())
    throw SortError("bi_provable: context length mismatch");
  Binding rename;
  for (std::size_t i = 0; i < b.context.size(); ++i) {
    if (a.context.vars[i].sort != b.context.vars[i].sort)
      throw SortError("bi_provable: context sorts differ");
    rename.emplace(b.context.vars[i], var(a.context.vars[i]));
  }
  Formula b_at_a = substitute(b.formula, rename);

  auto fwd = search(th, Sequent{a.formula, a.context, b_at_a}, budget);
  if (!fwd) return std::nullopt;
  auto bwd = search(th, Sequent{b_at_a, a.context, a.formula}, budget);
  if (!bwd) return std::nullopt;
  return std::make_pair(*fwd, *bwd);
}

// ---------------------------------------------------------------------------
// Cartesianness relative to a theory

// Every existential subformula owes a uniqueness proof:
//   psi & psi[z/y] |- y = z  over the enclosing context.
struct CartesianCertificate {
  std::vector<Proof> uniqueness;  // one per existential, outermost first
};

inline std::optional<CartesianCertificate> is_cartesian_relative(
    const FormulaInContext& fic, const Theory& th, const ProofBudget& budget = {}) {
  if (!well_sorted(th.signature, fic.formula))
    throw SortError("formula not well-sorted over the theory");

  CartesianCertificate cert;
  bool ok = true;
  std::function<void(const Formula&, Context)> walk = [&](const Formula& f, Context ctx) {
    if (!ok) return;
    if (f.is_and()) {
      walk(f.and_parts().lhs(), ctx);
      walk(f.and_parts().rhs(), ctx);
      return;
    }
    if (!f.is_exists()) return;
    const auto& ex = f.exists_parts();
    Variable y = ex.bound;
    Formula body = ex.body();
    if (ctx.contains(y)) {
      std::set<Variable> avoid(ctx.vars.begin(), ctx.vars.end());
      for (const auto& v : free_vars(body)) avoid.insert(v);
      Variable fresh = fresh_variable(y.sort, avoid);
      body = substitute(body, Binding{{y, var(fresh)}});
      y = fresh;
    }

    std::set<Variable> avoid(ctx.vars.begin(), ctx.vars.end());
    avoid.insert(y);
    for (const auto& v : free_vars(body)) avoid.insert(v);
    Variable z = fresh_variable(y.sort, avoid);
    Formula shifted = substitute(body, Binding{{y, var(z)}});

    Context uctx = ctx.extended(y).extended(z);
    Sequent obligation{Formula::conj(body, shifted), uctx, Formula::eq(var(y), var(z))};
    auto p = search(th, obligation, budget);
    if (!p) {
      ok = false;
      return;
    }
    cert.uniqueness.push_back(*p);
    walk(body, ctx.extended(y));
  };
  walk(fic.formula, fic.context);
  if (!ok) return std::nullopt;
  return cert;
}

}  // namespace cartlog

// Finite-presentation arithmetic in the syntactic category of a theory:
// objects are alpha-classes of formulas-in-context, morphisms are provably
// functional formula classes carrying kernel certificates. Composites,
// identities, projections and pairings synthesize their certificates from
// the component certificates; only make_morphism runs proof search.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cartlog/search.hpp"

namespace cartlog {

struct SynError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SynObject {
  FormulaInContext repr;  // alpha-normal representative
  CartesianStatus status = CartesianStatus::Unknown;
};

inline SynObject make_object(const Theory& th, const FormulaInContext& fic,
                             const ProofBudget& budget = {}) {
  SynObject o;
  o.repr = alpha_normalize(fic);
  if (!well_sorted(th.signature, o.repr.formula))
    throw SynError("object formula not well-sorted");
  o.status = is_cartesian_relative(o.repr, th, budget) ? CartesianStatus::Certified
                                                       : CartesianStatus::Unknown;
  return o;
}

// The three provably-functional sequents, checked proofs of each.
struct FunctionalityCertificate {
  Proof containment;    // theta |- phi & psi
  Proof single_valued;  // theta & theta[z/y] |- y = z
  Proof total;          // phi |- exists y. theta
};

struct SynMorphism {
  SynObject dom, cod;
  Context dom_ctx, cod_ctx;  // disjoint blocks; dom_ctx ++ cod_ctx carries rep
  Formula rep;
  FunctionalityCertificate cert;

  Context whole_context() const {
    std::vector<Variable> vs = dom_ctx.vars;
    vs.insert(vs.end(), cod_ctx.vars.begin(), cod_ctx.vars.end());
    return Context(vs);
  }
};

// ---------------------------------------------------------------------------
// Context blocks

namespace blocks {

inline std::map<Sort, int> counts(const Context& c) {
  std::map<Sort, int> n;
  for (const auto& v : c.vars) ++n[v.sort];
  return n;
}

inline std::map<Sort, int> add(std::map<Sort, int> a, const std::map<Sort, int>& b) {
  for (const auto& [s, k] : b) a[s] += k;
  return a;
}

// Rename an alpha-normal context to ranks shifted by per-sort offsets.
inline Context shifted(const Context& normal, const std::map<Sort, int>& offset) {
  std::vector<Variable> out;
  std::map<Sort, int> next = offset;
  for (const auto& v : normal.vars) out.push_back(Variable{v.sort, next[v.sort]++});
  return Context(out);
}

inline Binding renaming(const Context& from, const Context& to) {
  if (from.size() != to.size()) throw SynError("block length mismatch");
  Binding b;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (from.vars[i].sort != to.vars[i].sort) throw SynError("block sort mismatch");
    if (from.vars[i] != to.vars[i]) b.emplace(from.vars[i], var(to.vars[i]));
  }
  return b;
}

inline Context concat(const Context& a, const Context& b) {
  std::vector<Variable> vs = a.vars;
  vs.insert(vs.end(), b.vars.begin(), b.vars.end());
  return Context(vs);
}

inline Context slice(const Context& c, std::size_t from, std::size_t count) {
  return Context(std::vector<Variable>(c.vars.begin() + from, c.vars.begin() + from + count));
}

}  // namespace blocks

// y1=z1 & y2=z2 & ... (top when the block is empty).
inline Formula block_equalities(const Context& ys, const Context& zs) {
  std::vector<Formula> eqs;
  for (std::size_t i = 0; i < ys.size(); ++i)
    eqs.push_back(Formula::eq(var(ys.vars[i]), var(zs.vars[i])));
  return conj_fold(eqs);
}

inline Formula exists_block(const Context& block, Formula body) {
  for (auto it = block.vars.rbegin(); it != block.vars.rend(); ++it)
    body = Formula::exists(*it, body);
  return body;
}

// The canonical context blocks for a morphism between two objects.
struct MorphismShape {
  Context dom_ctx, cod_ctx, prime_ctx;
  Formula dom_formula, cod_formula;  // renamed to the blocks
};

inline MorphismShape morphism_shape(const SynObject& dom, const SynObject& cod) {
  MorphismShape s;
  s.dom_ctx = dom.repr.context;  // alpha-normal: ranks from 0
  s.cod_ctx = blocks::shifted(cod.repr.context, blocks::counts(s.dom_ctx));
  s.prime_ctx = blocks::shifted(
      cod.repr.context, blocks::add(blocks::counts(s.dom_ctx), blocks::counts(s.cod_ctx)));
  s.dom_formula = dom.repr.formula;
  s.cod_formula = substitute(cod.repr.formula, blocks::renaming(cod.repr.context, s.cod_ctx));
  return s;
}

inline Sequent containment_sequent(const MorphismShape& s, const Formula& rep) {
  return Sequent{rep, blocks::concat(s.dom_ctx, s.cod_ctx),
                 Formula::conj(s.dom_formula, s.cod_formula)};
}

inline Sequent single_valued_sequent(const MorphismShape& s, const Formula& rep) {
  Formula shifted_rep = substitute(rep, blocks::renaming(s.cod_ctx, s.prime_ctx));
  Context ctx = blocks::concat(blocks::concat(s.dom_ctx, s.cod_ctx), s.prime_ctx);
  return Sequent{Formula::conj(rep, shifted_rep), ctx,
                 block_equalities(s.cod_ctx, s.prime_ctx)};
}

inline Sequent totality_sequent(const MorphismShape& s, const Formula& rep) {
  return Sequent{s.dom_formula, s.dom_ctx, exists_block(s.cod_ctx, rep)};
}

// ---------------------------------------------------------------------------
// make_morphism: certify an arbitrary representative by proof search

inline std::optional<SynMorphism> make_morphism(const Theory& th, const Formula& rep,
                                                const SynObject& dom, const SynObject& cod,
                                                const ProofBudget& budget = {}) {
  MorphismShape s = morphism_shape(dom, cod);
  Context whole = blocks::concat(s.dom_ctx, s.cod_ctx);
  for (const auto& v : free_vars(rep))
    if (!whole.contains(v)) throw SynError("representative has a variable outside the blocks");

  auto contain = search(th, containment_sequent(s, rep), budget);
  if (!contain) return std::nullopt;
  auto single = search(th, single_valued_sequent(s, rep), budget);
  if (!single) return std::nullopt;
  auto total = search(th, totality_sequent(s, rep), budget);
  if (!total) return std::nullopt;

  SynMorphism m;
  m.dom = dom;
  m.cod = cod;
  m.dom_ctx = s.dom_ctx;
  m.cod_ctx = s.cod_ctx;
  m.rep = rep;
  m.cert = FunctionalityCertificate{*contain, *single, *total};
  return m;
}

// ---------------------------------------------------------------------------
// Composition: [gamma][theta] = [exists m. theta & gamma]

inline SynMorphism compose(const Theory& th, const SynMorphism& g, const SynMorphism& f) {
  if (!alpha_equal(f.cod.repr, g.dom.repr)) throw SynError("compose: boundary mismatch");

  MorphismShape s = morphism_shape(f.dom, g.cod);
  auto offset = blocks::add(blocks::add(blocks::counts(s.dom_ctx), blocks::counts(s.cod_ctx)),
                            blocks::counts(s.prime_ctx));
  Context mid = blocks::shifted(g.dom.repr.context, offset);
  Context mid2 = blocks::shifted(g.dom.repr.context, blocks::add(offset, blocks::counts(mid)));

  // theta(x, m): f's representative with its codomain block moved to mid.
  Binding f_re = blocks::renaming(f.cod_ctx, mid);
  Formula theta = substitute(f.rep, f_re);
  // gamma(m, z): g's representative, domain to mid, codomain to the z block.
  Binding g_re = blocks::renaming(g.dom_ctx, mid);
  for (auto& [k, v] : blocks::renaming(g.cod_ctx, s.cod_ctx)) g_re.emplace(k, v);
  Formula gamma = substitute(g.rep, g_re);

  Formula pair = Formula::conj(theta, gamma);
  Formula rep = exists_block(mid, pair);

  SynMorphism out;
  out.dom = f.dom;
  out.cod = g.cod;
  out.dom_ctx = s.dom_ctx;
  out.cod_ctx = s.cod_ctx;
  out.rep = rep;

  int nmid = static_cast<int>(mid.size());

  // Containment: open the middle block and route through the components.
  {
    Context ctx = blocks::concat(blocks::concat(s.dom_ctx, s.cod_ctx), mid);
    Proof f_cont = rules::substitution(f.cert.containment, f_re, ctx);
    Proof g_cont = rules::substitution(g.cert.containment, g_re, ctx);
    Proof phi = rules::and_elim_left(
        rules::cut(derived::conj_project(pair, ctx, theta), f_cont));
    Proof chi = rules::and_elim_right(
        rules::cut(derived::conj_project(pair, ctx, gamma), g_cont));
    out.cert.containment =
        derived::open_exists_chain(rules::and_intro(phi, chi), nmid);
  }

  // Single-valuedness.
  {
    Formula theta2 = substitute(theta, blocks::renaming(mid, mid2));
    Formula gamma2 = substitute(substitute(gamma, blocks::renaming(mid, mid2)),
                                blocks::renaming(s.cod_ctx, s.prime_ctx));
    Formula pair2 = Formula::conj(theta2, gamma2);
    Formula rep2 = exists_block(mid2, pair2);  // rep[z'/z] up to alpha

    Context base = blocks::concat(blocks::concat(s.dom_ctx, s.cod_ctx), s.prime_ctx);
    Formula big = Formula::conj(rep, substitute(rep, blocks::renaming(s.cod_ctx, s.prime_ctx)));

    // big |- exists mid. (rep2 & pair)
    Proof comm = rules::and_intro(derived::conj_project(big, base, rep2),
                                  derived::conj_project(big, base, rep));
    Proof stage1 = rules::cut(comm, derived::frobenius_pull(rep2, mid.vars, pair, base));

    // Under mid: (rep2 & pair) |- exists mid2. (pair & pair2)
    Context ctx1 = base;
    for (const auto& v : mid.vars) ctx1 = ctx1.extended(v);
    Formula b1 = Formula::conj(rep2, pair);
    Proof comm1 = rules::and_intro(derived::conj_project(b1, ctx1, pair),
                                   derived::conj_project(b1, ctx1, rep2));
    Proof stage2 = rules::cut(comm1, derived::frobenius_pull(pair, mid2.vars, pair2, ctx1));

    // Fully open: the equational endgame.
    Context ctx2 = ctx1;
    for (const auto& v : mid2.vars) ctx2 = ctx2.extended(v);
    Formula all4 = Formula::conj(pair, pair2);

    MorphismShape fs = morphism_shape(f.dom, f.cod);
    Binding f_sv_inst = f_re;
    for (auto& [k, v] : blocks::renaming(fs.prime_ctx, mid2)) f_sv_inst.emplace(k, v);
    Proof f_sv = rules::substitution(f.cert.single_valued, f_sv_inst, ctx2);
    Proof mids = rules::cut(
        derived::prove_conj_from(all4, f_sv->conclusion.antecedent, ctx2), f_sv);
    // mids: all4 |- mid = mid2 (as a conjunction)

    std::vector<Proof> mid_eqs;
    for (std::size_t i = 0; i < mid.size(); ++i) {
      Formula leaf = Formula::eq(var(mid.vars[i]), var(mid2.vars[i]));
      mid_eqs.push_back(
          rules::cut(mids, derived::conj_project(mids->conclusion.consequent, ctx2, leaf)));
    }

    Proof gz = derived::conj_project(all4, ctx2, gamma);  // all4 |- gamma(mid, z)
    for (std::size_t i = 0; i < mid.size(); ++i) gz = derived::replace_var(mid_eqs[i], gz);
    // gz: all4 |- gamma(mid2, z)

    MorphismShape gs = morphism_shape(g.dom, g.cod);
    Binding g_sv_inst = blocks::renaming(g.dom_ctx, mid2);
    for (auto& [k, v] : blocks::renaming(g.cod_ctx, s.cod_ctx)) g_sv_inst.emplace(k, v);
    for (auto& [k, v] : blocks::renaming(gs.prime_ctx, s.prime_ctx)) g_sv_inst.emplace(k, v);
    Proof g_sv = rules::substitution(g.cert.single_valued, g_sv_inst, ctx2);
    // g_sv: (gamma(mid2, z) & gamma(mid2, z')) |- z = z'
    Proof zz = rules::cut(
        rules::and_intro(gz, derived::conj_project(all4, ctx2, gamma2)), g_sv);

    Proof through2 = rules::cut(
        stage2, derived::open_exists_chain(zz, static_cast<int>(mid2.size())));
    out.cert.single_valued =
        rules::cut(stage1, derived::open_exists_chain(through2, nmid));
  }

  // Totality.
  {
    Context lem_ctx = blocks::concat(s.dom_ctx, mid);
    Proof f_cont = rules::substitution(f.cert.containment, f_re, lem_ctx);
    Proof psi_m = rules::and_elim_right(f_cont);  // theta |- psi(mid)

    Binding g_tot_inst = blocks::renaming(g.dom_ctx, mid);
    Proof g_tot = rules::substitution(g.cert.total, g_tot_inst, lem_ctx);
    // g_tot: psi(mid) |- exists z. gamma(mid, z), with g's own bound names
    Proof theta_exz = rules::cut(psi_m, g_tot);

    // The bound block differs from the canonical z block only up to alpha,
    // which the cut rule tolerates.
    Proof theta_pair = rules::and_intro(rules::identity(theta, lem_ctx), theta_exz);
    Proof pulled = derived::frobenius_pull(theta, s.cod_ctx.vars, gamma, lem_ctx);
    Proof to_exz = rules::cut(theta_pair, pulled);  // theta |- exists z. (theta & gamma)

    Context under_z = lem_ctx;
    for (const auto& v : s.cod_ctx.vars) under_z = under_z.extended(v);
    Proof inner = rules::identity(pair, under_z);
    for (auto it = mid.vars.rbegin(); it != mid.vars.rend(); ++it)
      inner = derived::exists_intro_self(inner, *it);
    Proof mapped = derived::map_under_binders(inner, static_cast<int>(s.cod_ctx.size()));
    Proof lemma = rules::cut(to_exz, mapped);
    // lemma: theta |-_{dom ++ mid} exists z. exists mid'. (theta' & gamma')

    Proof opened = derived::open_exists_chain(lemma, nmid);
    Proof f_tot = rules::substitution(f.cert.total, blocks::renaming(f.dom_ctx, s.dom_ctx),
                                      s.dom_ctx);
    // f_tot: phi |- exists mid. theta (up to alpha on the bound block)
    out.cert.total = rules::cut(f_tot, opened);
  }

  require_checked(th, out.cert.containment);
  require_checked(th, out.cert.single_valued);
  require_checked(th, out.cert.total);
  return out;
}

// ---------------------------------------------------------------------------
// Restriction-style morphisms: the graph of a distinct variable list
//
// For a source {c. sigma}, a target {d. tau} and distinct source variables v
// aligned with d such that sigma |- tau(v), the representative is
// sigma & (v = d'); identities and product projections are instances.

namespace detail {

// Replace the first equation (lhs = lhs) whose left side is the given
// variable by (lhs = fresh); used to abstract reflexive witnesses one at a
// time when building totality certificates.
inline std::optional<Formula> abstract_reflexive(const Formula& f, const Variable& lhs,
                                                 const Variable& fresh) {
  if (f.is_eq()) {
    const auto& e = f.eq_parts();
    if (e.lhs.is_var() && e.lhs.var() == lhs && e.rhs.is_var() && e.rhs.var() == lhs)
      return Formula::eq(e.lhs, var(fresh));
    return std::nullopt;
  }
  if (f.is_and()) {
    if (auto l = abstract_reflexive(f.and_parts().lhs(), lhs, fresh))
      return Formula::conj(*l, f.and_parts().rhs());
    if (auto r = abstract_reflexive(f.and_parts().rhs(), lhs, fresh))
      return Formula::conj(f.and_parts().lhs(), *r);
    return std::nullopt;
  }
  if (f.is_exists()) {
    const auto& ex = f.exists_parts();
    if (auto b = abstract_reflexive(ex.body(), lhs, fresh))
      return Formula::exists(ex.bound, *b);
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

inline SynMorphism restriction_morphism(const Theory& th, const SynObject& src,
                                        const SynObject& tgt,
                                        const std::vector<Variable>& vs,
                                        const Proof& maps_into) {
  MorphismShape s = morphism_shape(src, tgt);
  if (vs.size() != s.cod_ctx.size()) throw SynError("restriction: variable list mismatch");
  std::set<Variable> distinct(vs.begin(), vs.end());
  if (distinct.size() != vs.size()) throw SynError("restriction: repeated variables");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!s.dom_ctx.contains(vs[i])) throw SynError("restriction: variable outside the domain");
    if (vs[i].sort != s.cod_ctx.vars[i].sort) throw SynError("restriction: sort mismatch");
  }

  Context vctx(vs);
  Formula graph = block_equalities(vctx, s.cod_ctx);
  Formula rep = graph.is_top() ? s.dom_formula : Formula::conj(s.dom_formula, graph);
  Context whole = blocks::concat(s.dom_ctx, s.cod_ctx);

  SynMorphism out;
  out.dom = src;
  out.cod = tgt;
  out.dom_ctx = s.dom_ctx;
  out.cod_ctx = s.cod_ctx;
  out.rep = rep;

  // Containment: sigma |- tau(v), then carry the equations to the cod block.
  {
    Proof sigma = rep.is_and() ? rules::and_elim_left(rules::identity(rep, whole))
                               : rules::identity(rep, whole);
    Proof tau_v = derived::weaken_context(maps_into, whole);
    Proof cur = rules::cut(sigma, tau_v);  // rep |- tau(v)
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Proof eq = derived::conj_project(
          rep, whole, Formula::eq(var(vs[i]), var(s.cod_ctx.vars[i])));
      cur = derived::replace_var(eq, cur);
    }
    out.cert.containment = rules::and_intro(sigma, cur);
  }

  // Single-valuedness: y = v = z pointwise.
  {
    Formula rep2 = substitute(rep, blocks::renaming(s.cod_ctx, s.prime_ctx));
    Formula big = Formula::conj(rep, rep2);
    Context ctx = blocks::concat(whole, s.prime_ctx);
    std::vector<Proof> eqs;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Proof ve_y = derived::conj_project(
          big, ctx, Formula::eq(var(vs[i]), var(s.cod_ctx.vars[i])));
      Proof ve_z = derived::conj_project(
          big, ctx, Formula::eq(var(vs[i]), var(s.prime_ctx.vars[i])));
      eqs.push_back(derived::eq_trans(derived::eq_sym(ve_y), ve_z));
    }
    out.cert.single_valued = eqs.empty() ? rules::top_intro(big, ctx) : derived::conj_of(eqs);
  }

  // Totality: witness the cod block by v itself, abstracting from the inside
  // out.
  {
    std::vector<Proof> refl;
    for (std::size_t i = 0; i < vs.size(); ++i)
      refl.push_back(derived::eq_refl(s.dom_formula, s.dom_ctx, var(vs[i])));
    Proof cur = refl.empty()
                    ? rules::identity(s.dom_formula, s.dom_ctx)
                    : rules::and_intro(rules::identity(s.dom_formula, s.dom_ctx),
                                       derived::conj_of(refl));
    for (int i = static_cast<int>(vs.size()) - 1; i >= 0; --i) {
      auto target = detail::abstract_reflexive(cur->conclusion.consequent, vs[i],
                                               s.cod_ctx.vars[i]);
      if (!target) throw SynError("restriction: witness abstraction failed");
      cur = exists_intro(cur, var(vs[i]), s.cod_ctx.vars[i], *target);
    }
    out.cert.total = cur;
  }

  require_checked(th, out.cert.containment);
  require_checked(th, out.cert.single_valued);
  require_checked(th, out.cert.total);
  return out;
}

inline SynMorphism identity_morphism(const Theory& th, const SynObject& o) {
  Proof maps_into = rules::identity(o.repr.formula, o.repr.context);
  return restriction_morphism(th, o, o, o.repr.context.vars, maps_into);
}

// ---------------------------------------------------------------------------
// Products with projections

struct ProductResult {
  SynObject object;
  SynMorphism proj1, proj2;
};

inline ProductResult product(const Theory& th, const SynObject& o1, const SynObject& o2) {
  Context c1 = o1.repr.context;
  Context c2 = blocks::shifted(o2.repr.context, blocks::counts(c1));
  Formula f2 = substitute(o2.repr.formula, blocks::renaming(o2.repr.context, c2));
  // Redundant top conjuncts are dropped, so the product of top objects is
  // again a top object.
  std::vector<Formula> parts;
  for (const auto& c : conjuncts(o1.repr.formula))
    if (!c.is_top()) parts.push_back(c);
  for (const auto& c : conjuncts(f2))
    if (!c.is_top()) parts.push_back(c);
  Formula both = conj_fold(parts);

  SynObject prod;
  prod.repr = alpha_normalize(FormulaInContext{blocks::concat(c1, c2), both});
  prod.status = (o1.status == CartesianStatus::Certified &&
                 o2.status == CartesianStatus::Certified)
                    ? CartesianStatus::Certified
                    : CartesianStatus::Unknown;

  Context whole = prod.repr.context;
  Proof into1 = derived::prove_conj_from(both, o1.repr.formula, whole);
  Proof into2 = derived::prove_conj_from(both, f2, whole);
  return ProductResult{prod, restriction_morphism(th, prod, o1, c1.vars, into1),
                       restriction_morphism(th, prod, o2, c2.vars, into2)};
}

// The pairing <f, g>: S -> T1 x T2 of morphisms with a shared domain.
inline SynMorphism pairing(const Theory& th, const SynMorphism& f, const SynMorphism& g,
                           const SynObject& prod_obj) {
  if (!alpha_equal(f.dom.repr, g.dom.repr)) throw SynError("pairing: domain mismatch");

  MorphismShape s = morphism_shape(f.dom, prod_obj);
  std::size_t n1 = f.cod.repr.context.size();
  std::size_t n2 = g.cod.repr.context.size();
  Context c1 = blocks::slice(s.cod_ctx, 0, n1);
  Context c2 = blocks::slice(s.cod_ctx, n1, n2);
  Context p1 = blocks::slice(s.prime_ctx, 0, n1);
  Context p2 = blocks::slice(s.prime_ctx, n1, n2);

  // f's cod block coincides with c1; g's cod block must move to c2.
  Formula theta_f = substitute(f.rep, blocks::renaming(f.cod_ctx, c1));
  Formula theta_g = substitute(g.rep, blocks::renaming(g.cod_ctx, c2));
  Formula rep = Formula::conj(theta_f, theta_g);
  Context whole = blocks::concat(s.dom_ctx, s.cod_ctx);

  SynMorphism out;
  out.dom = f.dom;
  out.cod = prod_obj;
  out.dom_ctx = s.dom_ctx;
  out.cod_ctx = s.cod_ctx;
  out.rep = rep;

  // Containment: conclude the canonical phi & cod-formula, whatever shape
  // the product object's formula took.
  {
    Proof f_cont = rules::substitution(f.cert.containment,
                                       blocks::renaming(f.cod_ctx, c1), whole);
    Proof g_cont = rules::substitution(g.cert.containment,
                                       blocks::renaming(g.cod_ctx, c2), whole);
    Proof via_f = rules::cut(derived::conj_project(rep, whole, theta_f), f_cont);
    Proof via_g = rules::cut(derived::conj_project(rep, whole, theta_g), g_cont);
    Proof phi = rules::and_elim_left(via_f);
    Proof tau1 = rules::and_elim_right(via_f);
    Proof tau2 = rules::and_elim_right(via_g);
    Proof taus = rules::and_intro(tau1, tau2);
    Proof cod = rules::cut(
        taus, derived::prove_conj_from(taus->conclusion.consequent, s.cod_formula, whole));
    out.cert.containment = rules::and_intro(phi, cod);
  }

  // Single-valuedness, componentwise.
  {
    Formula rep2 = substitute(rep, blocks::renaming(s.cod_ctx, s.prime_ctx));
    Formula big = Formula::conj(rep, rep2);
    Context ctx = blocks::concat(whole, s.prime_ctx);

    MorphismShape fsh = morphism_shape(f.dom, f.cod);
    Binding f_inst = blocks::renaming(fsh.cod_ctx, c1);
    for (auto& [k, v] : blocks::renaming(fsh.prime_ctx, p1)) f_inst.emplace(k, v);
    Proof f_sv = rules::substitution(f.cert.single_valued, f_inst, ctx);
    Proof f_eqs = rules::cut(
        derived::prove_conj_from(big, f_sv->conclusion.antecedent, ctx), f_sv);

    MorphismShape gsh = morphism_shape(g.dom, g.cod);
    Binding g_inst = blocks::renaming(gsh.cod_ctx, c2);
    for (auto& [k, v] : blocks::renaming(gsh.prime_ctx, p2)) g_inst.emplace(k, v);
    Proof g_sv = rules::substitution(g.cert.single_valued, g_inst, ctx);
    Proof g_eqs = rules::cut(
        derived::prove_conj_from(big, g_sv->conclusion.antecedent, ctx), g_sv);

    std::vector<Proof> eqs;
    for (std::size_t i = 0; i < n1; ++i)
      eqs.push_back(rules::cut(
          f_eqs, derived::conj_project(f_eqs->conclusion.consequent, ctx,
                                       Formula::eq(var(c1.vars[i]), var(p1.vars[i])))));
    for (std::size_t i = 0; i < n2; ++i)
      eqs.push_back(rules::cut(
          g_eqs, derived::conj_project(g_eqs->conclusion.consequent, ctx,
                                       Formula::eq(var(c2.vars[i]), var(p2.vars[i])))));
    out.cert.single_valued = eqs.empty() ? rules::top_intro(big, ctx) : derived::conj_of(eqs);
  }

  // Totality.
  {
    Context under1 = blocks::concat(s.dom_ctx, c1);
    Proof f_cont = rules::substitution(f.cert.containment,
                                       blocks::renaming(f.cod_ctx, c1), under1);
    Proof phi_again = rules::and_elim_left(f_cont);  // theta_f |- phi
    Proof g_tot = rules::substitution(g.cert.total, Binding{}, under1);
    Proof theta_exz = rules::cut(phi_again, g_tot);  // theta_f |- exists c2. theta_g (alpha)
    Proof pulled = derived::frobenius_pull(theta_f, c2.vars, theta_g, under1);
    Proof to_pair = rules::cut(
        rules::and_intro(rules::identity(theta_f, under1), theta_exz), pulled);
    // to_pair: theta_f |-_{dom,c1} exists c2. (theta_f & theta_g)
    Proof lifted = derived::map_under_binders(to_pair, static_cast<int>(n1));
    // lifted: exists c1. theta_f |-_{dom} exists c1. exists c2. rep
    out.cert.total = rules::cut(f.cert.total, lifted);
  }

  require_checked(th, out.cert.containment);
  require_checked(th, out.cert.single_valued);
  require_checked(th, out.cert.total);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical interpretation of a word of unary symbols

inline SynMorphism canonical_interpretation(const Theory& th, const MonoidPresentation& p,
                                            const Word& w, const ProofBudget& budget = {}) {
  Sort carrier{"A"};
  SynObject pt;
  pt.repr = FormulaInContext{Context({Variable{carrier, 0}}), Formula::top()};
  pt.status = CartesianStatus::Certified;

  Variable x{carrier, 0}, y{carrier, 1};
  Formula rep = Formula::eq(word_term(p, w, var(x)), var(y));
  auto m = make_morphism(th, rep, pt, pt, budget);
  if (!m) throw SynError("canonical interpretation failed to certify");
  return *m;
}

// ---------------------------------------------------------------------------
// Subobject order on a shared context

inline std::optional<Proof> subobject_leq(const Theory& th, const FormulaInContext& phi,
                                          const FormulaInContext& psi,
                                          const ProofBudget& budget = {}) {
  if (phi.context.size() != psi.context.size())
    throw SynError("subobject_leq: context mismatch");
  Binding rename;
  for (std::size_t i = 0; i < psi.context.size(); ++i) {
    if (phi.context.vars[i].sort != psi.context.vars[i].sort)
      throw SynError("subobject_leq: context sorts differ");
    rename.emplace(psi.context.vars[i], var(phi.context.vars[i]));
  }
  return search(th, Sequent{phi.formula, phi.context, substitute(psi.formula, rename)},
                budget);
}

// ---------------------------------------------------------------------------
// Morphism equality is mutual entailment of representatives

inline std::optional<std::pair<Proof, Proof>> morphisms_equal(const Theory& th,
                                                              const SynMorphism& a,
                                                              const SynMorphism& b,
                                                              const ProofBudget& budget = {}) {
  if (!alpha_equal(a.dom.repr, b.dom.repr) || !alpha_equal(a.cod.repr, b.cod.repr))
    return std::nullopt;
  FormulaInContext fa{a.whole_context(), a.rep};
  FormulaInContext fb{b.whole_context(), b.rep};
  return bi_provable(th, fa, fb, budget);
}

inline std::string print_morphism(const SynMorphism& m, const Namer& n) {
  return "[" + print_formula(m.rep, n) + "] : " +
         print_formula_in_context(m.dom.repr, n) + " -> " +
         print_formula_in_context(m.cod.repr, n) + " (certified)";
}

}  // namespace cartlog

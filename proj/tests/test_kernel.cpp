#include <doctest.h>

#include "gen.hpp"

using namespace cartlog;

namespace {

struct Fixture {
  MonoidPresentation p{{"X", "Y"}, {}};
  Theory th = module_theory(p);
  Sort A{"A"};
  Variable x{A, 0}, y{A, 1}, z{A, 2};
  ModuleVocabulary voc;
  Term gen(const std::string& g, Term t) const { return app(voc.generator(g), {t}); }
};

}  // namespace

TEST_CASE("identity axiom checks") {
  Fixture f;
  Formula phi = Formula::eq(f.gen("X", var(f.x)), var(f.y));
  Proof p = rules::identity(phi, Context({f.x, f.y}));
  CHECK_FALSE(check_proof(f.th, p));
}

TEST_CASE("a cut whose premises disagree on the cut formula is rejected") {
  Fixture f;
  Context ctx({f.x});
  Proof l = rules::top_intro(Formula::eq(var(f.x), var(f.x)), ctx);
  Proof r = rules::identity(Formula::eq(var(f.x), var(f.x)), ctx);
  auto bad = std::make_shared<ProofNode>();
  bad->conclusion = Sequent{Formula::eq(var(f.x), var(f.x)), ctx,
                            Formula::eq(var(f.x), var(f.x))};
  bad->rule = RuleKind::Cut;
  bad->cut_formula = Formula::top();
  bad->premises = {l, r};
  auto err = check_proof(f.th, Proof(bad));
  REQUIRE(err);
  CHECK(err->path.empty());  // the root is the bad node
  CHECK(err->reason.find("cut formula") != std::string::npos);
}

TEST_CASE("error paths point at the first invalid node") {
  Fixture f;
  Context ctx({f.x});
  Proof ok = rules::top_intro(Formula::top(), ctx);
  auto broken = std::make_shared<ProofNode>();
  broken->conclusion = Sequent{Formula::top(), ctx, Formula::eq(var(f.x), var(f.x))};
  broken->rule = RuleKind::TheoryAxiom;
  broken->axiom_index = 99;
  Proof cut = rules::cut(ok, Proof(broken));
  auto err = check_proof(f.th, cut);
  REQUIRE(err);
  CHECK(err->path == std::vector<int>{1});
}

TEST_CASE("existential introduction expands to the three-rule display") {
  Fixture f;
  Context ctx({f.x});
  // premise: top |- X(x) = X(x), by reflexivity
  Proof premise = rules::eq_refl_node(f.gen("X", var(f.x)), ctx);
  Formula psi = Formula::eq(f.gen("X", var(f.x)), var(f.y));
  Proof p = exists_intro(premise, f.gen("X", var(f.x)), f.y, psi);
  CHECK_FALSE(check_proof(f.th, p));
  CHECK(alpha_eq(p->conclusion.consequent, Formula::exists(f.y, psi)));

  // shape: cut at the root, substitution over the adjoint over the identity
  CHECK(p->rule == RuleKind::Cut);
  REQUIRE(p->premises.size() == 2);
  CHECK(p->premises[0] == premise);
  const Proof& sub = p->premises[1];
  CHECK(sub->rule == RuleKind::Substitution);
  CHECK(sub->premises[0]->rule == RuleKind::ExistsAdjoint);
  CHECK(sub->premises[0]->premises[0]->rule == RuleKind::IdentityAxiom);
}

TEST_CASE("existential introduction with the context variable as witness") {
  Fixture f;
  Context ctx({f.x});
  Proof premise = rules::eq_refl_node(var(f.x), ctx);  // top |- x = x
  Formula psi = Formula::eq(var(f.y), var(f.x));
  Proof p = exists_intro(premise, var(f.x), f.y, psi);
  CHECK_FALSE(check_proof(f.th, p));
  CHECK(alpha_eq(p->conclusion.consequent, Formula::exists(f.y, psi)));
}

TEST_CASE("existential introduction rejects a mismatched premise") {
  Fixture f;
  Context ctx({f.x});
  Proof premise = rules::eq_refl_node(var(f.x), ctx);
  // psi[tau/y] would be X(x) = x, but the premise concludes x = x.
  Formula psi = Formula::eq(f.gen("X", var(f.x)), var(f.y));
  CHECK_THROWS_AS(exists_intro(premise, var(f.x), f.y, psi), ProofError);
}

TEST_CASE("equality gadgets assemble and check") {
  Fixture f;
  Context ctx({f.x, f.y, f.z});
  Formula hyp = Formula::conj(Formula::eq(var(f.x), var(f.y)),
                              Formula::eq(var(f.y), var(f.z)));
  Proof h1 = derived::conj_project(hyp, ctx, Formula::eq(var(f.x), var(f.y)));
  Proof h2 = derived::conj_project(hyp, ctx, Formula::eq(var(f.y), var(f.z)));
  Proof sym = derived::eq_sym(h1);
  CHECK_FALSE(check_proof(f.th, sym));
  CHECK(sym->conclusion.consequent == Formula::eq(var(f.y), var(f.x)));
  Proof trans = derived::eq_trans(h1, h2);
  CHECK_FALSE(check_proof(f.th, trans));
  CHECK(trans->conclusion.consequent == Formula::eq(var(f.x), var(f.z)));
  Proof cong = derived::eq_cong(h1, f.voc.generator("X"), {var(f.x)}, 0);
  CHECK_FALSE(check_proof(f.th, cong));
  CHECK(cong->conclusion.consequent ==
        Formula::eq(f.gen("X", var(f.x)), f.gen("X", var(f.y))));
}

TEST_CASE("frobenius and binder helpers check") {
  Fixture f;
  Context ctx({f.x});
  Formula body = Formula::eq(f.gen("X", var(f.x)), var(f.y));
  Formula passenger = Formula::eq(var(f.x), var(f.x));
  Proof fr = rules::frobenius(passenger, f.y, body, ctx);
  CHECK_FALSE(check_proof(f.th, fr));

  // map_under_binder on a projection
  Context cxy({f.x, f.y});
  Proof inner = rules::and_elim_left(
      rules::identity(Formula::conj(body, passenger), cxy));
  Proof mapped = derived::map_under_binder(inner);
  CHECK_FALSE(check_proof(f.th, mapped));
  CHECK(mapped->conclusion.context == Context({f.x}));
}

TEST_CASE("theory axiom citations must match an axiom up to alpha") {
  Fixture f;
  // axiom 1 is commutativity at (x, y); cite it at (y, z)
  auto node = std::make_shared<ProofNode>();
  Term l = app(f.voc.plus, {var(f.y), var(f.z)});
  Term r = app(f.voc.plus, {var(f.z), var(f.y)});
  node->conclusion = Sequent{Formula::top(), Context({f.y, f.z}), Formula::eq(l, r)};
  node->rule = RuleKind::TheoryAxiom;
  node->axiom_index = 1;
  CHECK_FALSE(check_proof(f.th, Proof(node)));

  node->axiom_index = 0;  // associativity: wrong shape
  auto bad = std::make_shared<ProofNode>(*node);
  CHECK(check_proof(f.th, Proof(bad)));
}

TEST_CASE("the checker rejects ill-formed rule instances") {
  Fixture f;
  Context cx({f.x});

  // Frobenius with the bound variable free in the passenger
  auto frob = std::make_shared<ProofNode>();
  Formula passenger = Formula::eq(var(f.y), var(f.y));
  Formula body = Formula::eq(f.gen("X", var(f.x)), var(f.y));
  frob->conclusion = Sequent{Formula::conj(passenger, Formula::exists(f.y, body)),
                             Context({f.x, f.y}),
                             Formula::exists(f.y, Formula::conj(passenger, body))};
  frob->rule = RuleKind::Frobenius;
  auto err = check_proof(f.th, Proof(frob));
  REQUIRE(err);
  CHECK(err->reason.find("free in the passenger") != std::string::npos);

  // substitution dropping a premise variable without a binding
  Proof prem = rules::identity(Formula::eq(var(f.x), var(f.y)), Context({f.x, f.y}));
  auto drop = std::make_shared<ProofNode>();
  drop->conclusion = Sequent{Formula::eq(var(f.x), var(f.x)), cx,
                             Formula::eq(var(f.x), var(f.x))};
  drop->rule = RuleKind::Substitution;
  drop->binding = Binding{};
  drop->premises = {prem};
  CHECK(check_proof(f.th, Proof(drop)));

  // equality replacement with a consequent that is not phi[y/x]
  auto repl = std::make_shared<ProofNode>();
  Formula phi = Formula::eq(var(f.x), var(f.z));
  repl->conclusion = Sequent{Formula::conj(Formula::eq(var(f.x), var(f.y)), phi),
                             Context({f.x, f.y, f.z}), phi};
  repl->rule = RuleKind::EqReplacement;
  repl->repl_vars = {f.x, f.y};
  repl->repl_formula = phi;
  auto err2 = check_proof(f.th, Proof(repl));
  REQUIRE(err2);
  CHECK(err2->reason.find("phi[y/x]") != std::string::npos);
}

TEST_CASE("transport into and out of an extension") {
  Fixture f;
  Context ctx({f.x});
  Formula phi = Formula::eq(f.gen("X", var(f.x)), f.gen("Y", var(f.x)));
  FormulaInContext fic{ctx, phi};

  // A real T-proof of phi |- Y(x) = X(x), found by search.
  Sequent sym{phi, ctx, Formula::eq(f.gen("Y", var(f.x)), f.gen("X", var(f.x)))};
  auto base = search(f.th, sym, ProofBudget{});
  REQUIRE(base);

  auto [ext, inc] = adjoin(f.th, fic);
  Proof into = transport(f.th, fic, *base, TransportDirection::IntoExtension);
  CHECK_FALSE(check_proof(ext, into));
  CHECK(into->conclusion.antecedent.is_top());

  Proof back = transport(f.th, fic, into, TransportDirection::OutOfExtension);
  CHECK_FALSE(check_proof(f.th, back));
  CHECK(alpha_equal(back->conclusion, (*base)->conclusion));
}

TEST_CASE("transport is identity-shaped on top |- top") {
  Fixture f;
  Context ctx({f.x});
  FormulaInContext top_fic{ctx, Formula::top()};
  Proof triv = rules::top_intro(Formula::top(), ctx);
  auto [ext, inc] = adjoin(f.th, top_fic);

  Proof into = transport(f.th, top_fic, triv, TransportDirection::IntoExtension);
  CHECK_FALSE(check_proof(ext, into));
  Proof out = transport(f.th, top_fic, into, TransportDirection::OutOfExtension);
  CHECK_FALSE(check_proof(f.th, out));
  CHECK(alpha_equal(out->conclusion, triv->conclusion));
}

TEST_CASE("transport rejects direction and shape mismatches") {
  Fixture f;
  Context ctx({f.x});
  Formula phi = Formula::eq(f.gen("X", var(f.x)), f.gen("Y", var(f.x)));
  FormulaInContext fic{ctx, phi};
  // wrong antecedent for the into direction
  Proof wrong = rules::top_intro(Formula::top(), ctx);
  CHECK_THROWS_AS(transport(f.th, fic, wrong, TransportDirection::IntoExtension),
                  TransportError);
  // out direction expects a top antecedent
  Proof not_top = rules::identity(phi, ctx);
  CHECK_THROWS_AS(transport(f.th, fic, not_top, TransportDirection::OutOfExtension),
                  TransportError);
}

TEST_CASE("extension proofs that substitute into the adjoined formula do not transport out") {
  // In the extension, the axiom X(x)=Y(x) substitutes to any instance; the
  // fixed assumption does not, and a finite module separates the two
  // readings, so the honest outcome is a refusal.
  Fixture f;
  Context ctx({f.x});
  Formula phi = Formula::eq(f.gen("X", var(f.x)), f.gen("Y", var(f.x)));
  FormulaInContext fic{ctx, phi};
  auto [ext, inc] = adjoin(f.th, fic);
  int idx = static_cast<int>(ext.axioms.size()) - 1;

  Proof ax = rules::theory_axiom(ext, idx);
  Proof shifted = rules::substitution(ax, singleton_binding(f.x, f.gen("X", var(f.x))), ctx);
  CHECK_FALSE(check_proof(ext, shifted));  // fine in the extension
  CHECK_THROWS_AS(transport(f.th, fic, shifted, TransportDirection::OutOfExtension),
                  TransportError);

  // The blocked sequent phi |- X(X(x)) = Y(X(x)) is genuinely invalid: a
  // three-dimensional F2 module satisfies phi at e1 but not the instance.
  FiniteModel m = gen::f2_module_model(f.p, {{2, 4, 0}, {2, 0, 0}});
  CHECK(is_model(m, f.th));
  Sequent blocked{phi, ctx, substitute(phi, singleton_binding(f.x, f.gen("X", var(f.x))))};
  CHECK_FALSE(satisfies(m, blocked));
  CHECK_FALSE(search(f.th, blocked, ProofBudget{8, 4000}));
}

TEST_CASE("proof documents round-trip through JSON") {
  Fixture f;
  Sequent sym{Formula::eq(var(f.x), var(f.y)), Context({f.x, f.y}),
              Formula::eq(var(f.y), var(f.x))};
  auto p = search(f.th, sym, ProofBudget{});
  REQUIRE(p);
  std::string text = save_proof_document(f.th, *p);
  ProofDocument doc = load_proof_document(text);
  CHECK(doc.theory == f.th);
  CHECK_FALSE(check_proof(doc.theory, doc.proof));
  CHECK(save_proof_document(doc.theory, doc.proof) == text);
}

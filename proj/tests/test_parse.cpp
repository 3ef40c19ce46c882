#include <doctest.h>

#include "gen.hpp"

using namespace cartlog;

TEST_CASE("theory files round-trip through the printer") {
  MonoidPresentation p{{"a", "b"}, {{{0, 1}, {1, 0}}, {{0, 0}, {0}}}};
  Theory th = module_theory(p);
  Theory back = parse_theory(print_theory(th));
  CHECK(back == th);
  CHECK(print_theory(back) == print_theory(th));
}

TEST_CASE("sequent parsing against a signature") {
  Theory th = module_theory(MonoidPresentation{{"a"}, {}});
  Sequent s = parse_sequent("sequent forallctx(x, y): x = y |- y = x;", th.signature);
  Namer n = namer_for(th.signature);
  CHECK(print_sequent(s, n) == "forallctx(x, y): x = y |- y = x");
  Sequent again = parse_sequent(print_sequent(s, n), th.signature);
  CHECK(again == s);
}

TEST_CASE("formulas-in-context round-trip") {
  Theory th = module_theory(MonoidPresentation{{"a"}, {}});
  Namer n = namer_for(th.signature);
  auto fic = parse_formula_in_context("{x. exists y. a(x) = y}", th.signature);
  CHECK(fic.context.size() == 1);
  auto back = parse_formula_in_context(print_formula_in_context(fic, n), th.signature);
  CHECK(back == fic);
}

TEST_CASE("conjunction is right-associative and exists extends right") {
  Theory th = module_theory(MonoidPresentation{{"a"}, {}});
  auto f1 = parse_formula_in_context("{x. top & x = x & a(x) = x}", th.signature);
  REQUIRE(f1.formula.is_and());
  CHECK(f1.formula.and_parts().lhs().is_top());
  CHECK(f1.formula.and_parts().rhs().is_and());

  auto f2 = parse_formula_in_context("{x. top & exists y. a(x) = y & x = x}", th.signature);
  // the existential body swallows the rest of the conjunction
  CHECK(f2.formula.and_parts().rhs().is_exists());
  CHECK(f2.formula.and_parts().rhs().exists_parts().body().is_and());

  auto f3 = parse_formula_in_context("{x. (exists y. a(x) = y) & x = x}", th.signature);
  CHECK(f3.formula.and_parts().lhs().is_exists());
  CHECK(f3.formula.and_parts().rhs().is_eq());

  Namer n = namer_for(th.signature);
  for (const auto& f : {f1, f2, f3})
    CHECK(parse_formula_in_context(print_formula_in_context(f, n), th.signature) == f);
}

TEST_CASE("presentations parse and print") {
  MonoidPresentation p = parse_presentation("monoid <a, b | ab = ba, aa = a>;");
  CHECK(p.generators == std::vector<std::string>{"a", "b"});
  CHECK(p.relations.size() == 2);
  CHECK(parse_presentation(print_presentation(p)) == p);

  MonoidPresentation free = parse_presentation("monoid <a, b |>;");
  CHECK(free.relations.empty());
  CHECK(parse_presentation(print_presentation(free)) == free);

  MonoidPresentation collapse = parse_presentation("monoid <a | a = eps>;");
  CHECK(collapse.relations[0].second.empty());
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_theory("sort A;\nfun f : A -> ;\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 1);
  }

  try {
    parse_sequent("forallctx(x): top |- q(x);",
                  module_theory(MonoidPresentation{{"a"}, {}}).signature);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
  }
}

TEST_CASE("model files round-trip") {
  MonoidPresentation p{{"a"}, {{{0, 0}, {0}}}};
  auto q = finite_quotient(p, 8);
  REQUIRE(q);
  FiniteModel m = monoid_algebra_model(p, q->monoid, 2);
  FiniteModel back = parse_model(print_model(m));
  CHECK(back.signature == m.signature);
  CHECK(back.functions == m.functions);
  CHECK(back.carriers == m.carriers);
}

TEST_CASE("lab files parse posets, copresheaves and transformations") {
  std::string src = R"(
    poset { objects a, t; leq a t; }
    copresheaf K { at a = 2; at t = 1; map a -> t = [ 0, 0 ]; }
    copresheaf L { at a = 1; at t = 1; map a -> t = [ 0 ]; }
    nat collapse : K -> L { at a = [ 0, 0 ]; at t = [ 0 ]; }
  )";
  LabFile f = parse_lab_file(src);
  CHECK(f.category.n_objects() == 2);
  CHECK(f.copresheaves.at("K").sizes == std::vector<int>{2, 1});
  CHECK(f.nats.count("collapse") == 1);

  CHECK_THROWS_AS(parse_lab_file("poset { objects a; }\n"
                                 "copresheaf K { at a = 1; }\n"
                                 "nat bad : K -> Missing { at a = [ 0 ]; }"),
                  ParseError);
}

TEST_CASE("theory files may carry presentation blocks and standalone sequents") {
  ParsedFile f = parse_file(
      "sort A;\n"
      "fun s : A -> A;\n"
      "axiom forallctx(x): top |- s(x) = s(x);\n"
      "sequent forallctx(x, y): s(x) = y |- s(x) = y;\n"
      "monoid <a, b | ab = ba>;\n");
  CHECK(f.has_theory);
  CHECK(f.theory.axioms.size() == 1);
  CHECK(f.sequents.size() == 1);
  REQUIRE(f.presentation);
  CHECK(f.presentation->generators.size() == 2);
}

TEST_CASE("generated theories are emittable and reparse identically") {
  gen::Rng rng(31337);
  for (int round = 0; round < 25; ++round) {
    MonoidPresentation p = gen::random_presentation(rng);
    Theory th = module_theory(p);
    CHECK(parse_theory(print_theory(th)) == th);
  }
}

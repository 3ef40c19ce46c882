#include <doctest.h>

#include "gen.hpp"

using namespace cartlog;

namespace {

// Independent recursive evaluator: the oracle for the tuple-set interpreter.
bool eval_formula(const FiniteModel& m, Environment env, const Formula& f) {
  if (f.is_top()) return true;
  if (f.is_eq())
    return eval_term(m, env, f.eq_parts().lhs) == eval_term(m, env, f.eq_parts().rhs);
  if (f.is_rel()) {
    std::vector<int> args;
    for (const auto& a : f.rel_parts().args) args.push_back(eval_term(m, env, a));
    auto it = m.relations.find(f.rel_parts().rel.name);
    return it != m.relations.end() && it->second.count(args);
  }
  if (f.is_and())
    return eval_formula(m, env, f.and_parts().lhs()) &&
           eval_formula(m, env, f.and_parts().rhs());
  const auto& ex = f.exists_parts();
  for (int v = 0; v < m.carrier_size(ex.bound.sort); ++v) {
    Environment inner = env;
    inner[ex.bound] = v;
    if (eval_formula(m, inner, ex.body())) return true;
  }
  return false;
}

struct Fixture {
  MonoidPresentation p{{"X", "Y"}, {}};
  Theory th = module_theory(p);
  Sort A{"A"};
  Variable x{A, 0}, y{A, 1};
  ModuleVocabulary voc;
  FiniteModel swap_model = gen::f2_module_model(p, {{2, 1}, {2, 1}});  // X = Y = swap
};

}  // namespace

TEST_CASE("top interprets as the full product") {
  Fixture f;
  FiniteModel m = gen::f2_module_model(f.p, {{1, 2, 4}, {1, 2, 4}});  // dim 3: 8 elements
  Interpretation i = interpret_formula(m, Context({f.x}), Formula::top());
  CHECK(i.tuples.size() == 8);
}

TEST_CASE("reflexive equality interprets as the full product") {
  Fixture f;
  Interpretation i =
      interpret_formula(f.swap_model, Context({f.x}), Formula::eq(var(f.x), var(f.x)));
  CHECK(i.tuples.size() == f.swap_model.carriers.at("A").size());
}

TEST_CASE("totality of a function table makes its graph existential full") {
  Fixture f;
  Formula ex = Formula::exists(
      f.y, Formula::eq(app(f.voc.generator("X"), {var(f.x)}), var(f.y)));
  Interpretation i = interpret_formula(f.swap_model, Context({f.x}), ex);
  CHECK(i.tuples.size() == f.swap_model.carriers.at("A").size());
}

TEST_CASE("a sequent with equal sides is satisfied everywhere") {
  Fixture f;
  gen::Rng rng(121);
  for (int round = 0; round < 30; ++round) {
    Formula phi = gen::random_module_formula(rng, f.p, {f.x, f.y}, 2);
    Sequent s{phi, Context({f.x, f.y}), phi};
    CHECK(satisfies(f.swap_model, s));
  }
}

TEST_CASE("identity actions satisfy the pointwise agreement axiom") {
  Fixture f;
  FiniteModel m = gen::f2_module_model(f.p, {{1}, {1}});  // X = Y = id on F2
  Sequent s{Formula::top(), Context({f.x}),
            Formula::eq(app(f.voc.generator("X"), {var(f.x)}),
                        app(f.voc.generator("Y"), {var(f.x)}))};
  CHECK(satisfies(m, s));
}

TEST_CASE("the band algebra refutes the encoded letter equation") {
  MonoidPresentation band{{"a", "b"},
                          {{{0, 0}, {0}}, {{1, 1}, {1}}, {{0, 1}, {0}}, {{1, 0}, {1}}}};
  auto q = finite_quotient(band, 8);
  REQUIRE(q);
  // a and b are inequivalent in the band
  auto res = equivalent(band, Word{0}, Word{1}, 8);
  CHECK(res.verdict == WordVerdict::Inequivalent);
  FiniteModel m = monoid_algebra_model(band, q->monoid, 2);
  EncodedInstance inst = encode(band, Word{0}, Word{1});
  CHECK_FALSE(satisfies(m, inst.sequent));
}

TEST_CASE("model validation accepts constructions and rejects corruption") {
  Fixture f;
  CHECK(is_model(f.swap_model, f.th));

  FiniteModel corrupted = f.swap_model;
  // break commutativity of the addition table
  corrupted.functions["plus"][1] ^= 3;
  corrupted.validate();  // still well-typed
  CHECK_FALSE(is_model(corrupted, f.th));

  FiniteModel trivial;
  trivial.signature = f.th.signature;
  trivial.carriers["A"] = {"only"};
  trivial.functions["plus"] = {0};
  trivial.functions["zero"] = {0};
  trivial.functions["neg"] = {0};
  trivial.functions["X"] = {0};
  trivial.functions["Y"] = {0};
  trivial.validate();
  CHECK(is_model(trivial, f.th));
}

TEST_CASE("signature mismatches are reported") {
  Fixture f;
  Theory other = module_theory(MonoidPresentation{{"Z"}, {}});
  CHECK_THROWS_AS(is_model(f.swap_model, other), ModelError);
}

TEST_CASE("the interpreter agrees with a direct recursive evaluator") {
  Fixture f;
  gen::Rng rng(787);
  for (int round = 0; round < 60; ++round) {
    Formula phi = gen::random_module_formula(rng, f.p, {f.x, f.y}, 3);
    Context ctx({f.x, f.y});
    Interpretation i = interpret_formula(f.swap_model, ctx, phi);
    int n = f.swap_model.carrier_size(f.A);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Environment env{{f.x, a}, {f.y, b}};
        bool in_set = i.tuples.count({a, b}) > 0;
        CHECK(in_set == eval_formula(f.swap_model, env, phi));
      }
  }
}

TEST_CASE("existential interpretation is the projection of the extension") {
  Fixture f;
  gen::Rng rng(343);
  for (int round = 0; round < 40; ++round) {
    Formula body = gen::random_module_formula(rng, f.p, {f.x, f.y}, 2);
    Formula ex = Formula::exists(f.y, body);
    Context ctx({f.x});
    Interpretation whole = interpret_formula(f.swap_model, ctx.extended(f.y), body);
    Interpretation proj = interpret_formula(f.swap_model, ctx, ex);
    std::set<std::vector<int>> image;
    for (const auto& t : whole.tuples) image.insert({t[0]});
    CHECK(image == proj.tuples);
  }
}

TEST_CASE("proved entailments are subset inclusions in validating models") {
  Fixture f;
  gen::Rng rng(998);
  int proved = 0;
  for (int round = 0; round < 40 && proved < 10; ++round) {
    Term s = gen::random_module_term(rng, f.p, {f.x, f.y}, 2);
    Term t = gen::random_module_term(rng, f.p, {f.x, f.y}, 2);
    Context ctx({f.x, f.y});
    Sequent goal{Formula::eq(s, t), ctx, Formula::eq(t, s)};
    auto p = search(f.th, goal, ProofBudget{8, 4000});
    if (!p) continue;
    ++proved;
    Interpretation a = interpret_formula(f.swap_model, ctx, goal.antecedent);
    Interpretation c = interpret_formula(f.swap_model, ctx, goal.consequent);
    for (const auto& tup : a.tuples) CHECK(c.tuples.count(tup) == 1);
  }
  CHECK(proved >= 10);
}

TEST_CASE("the tuple cap guards runaway contexts") {
  Fixture f;
  FiniteModel m = gen::f2_module_model(f.p, {{1, 2, 4}, {1, 2, 4}});
  Context big({f.x, f.y, Variable{f.A, 2}, Variable{f.A, 3}, Variable{f.A, 4}});
  CHECK_THROWS_AS(interpret_formula(m, big, Formula::top(), 4096), ModelError);
}

// Proof serialization: a structured JSON tree that round-trips losslessly.
// The theory travels with the proof (as DSL text), so a serialized proof is
// checkable on its own.

#pragma once

#include <string>

#include <json.hpp>

#include "cartlog/parse.hpp"
#include "cartlog/proof.hpp"

namespace cartlog {

using Json = nlohmann::json;

inline Json term_to_json(const Term& t) {
  if (t.is_var()) return Json{{"v", {t.var().sort.name, t.var().rank}}};
  Json args = Json::array();
  for (const auto& a : t.app().args) args.push_back(term_to_json(a));
  return Json{{"f", t.app().fn.name}, {"args", args}};
}

inline Term term_from_json(const Json& j, const Signature& sig) {
  if (j.contains("v"))
    return var(Variable{Sort{j["v"][0].get<std::string>()}, j["v"][1].get<int>()});
  const FunctionSymbol* f = sig.find_function(j["f"].get<std::string>());
  if (!f) throw std::runtime_error("proof cites unknown symbol " + j["f"].get<std::string>());
  std::vector<Term> args;
  for (const auto& a : j["args"]) args.push_back(term_from_json(a, sig));
  return Term(*f, args);
}

inline Json formula_to_json(const Formula& f) {
  if (f.is_top()) return Json{{"top", true}};
  if (f.is_eq())
    return Json{{"eq", {term_to_json(f.eq_parts().lhs), term_to_json(f.eq_parts().rhs)}}};
  if (f.is_rel()) {
    Json args = Json::array();
    for (const auto& a : f.rel_parts().args) args.push_back(term_to_json(a));
    return Json{{"rel", f.rel_parts().rel.name}, {"args", args}};
  }
  if (f.is_and())
    return Json{
        {"and", {formula_to_json(f.and_parts().lhs()), formula_to_json(f.and_parts().rhs())}}};
  const auto& ex = f.exists_parts();
  return Json{{"ex", {Json{ex.bound.sort.name, ex.bound.rank}, formula_to_json(ex.body())}}};
}

inline Formula formula_from_json(const Json& j, const Signature& sig) {
  if (j.contains("top")) return Formula::top();
  if (j.contains("eq"))
    return Formula::eq(term_from_json(j["eq"][0], sig), term_from_json(j["eq"][1], sig));
  if (j.contains("rel")) {
    const RelationSymbol* r = sig.find_relation(j["rel"].get<std::string>());
    if (!r) throw std::runtime_error("proof cites unknown relation");
    std::vector<Term> args;
    for (const auto& a : j["args"]) args.push_back(term_from_json(a, sig));
    return Formula::rel(*r, args);
  }
  if (j.contains("and"))
    return Formula::conj(formula_from_json(j["and"][0], sig),
                         formula_from_json(j["and"][1], sig));
  Variable v{Sort{j["ex"][0][0].get<std::string>()}, j["ex"][0][1].get<int>()};
  return Formula::exists(v, formula_from_json(j["ex"][1], sig));
}

inline Json sequent_to_json(const Sequent& s) {
  Json ctx = Json::array();
  for (const auto& v : s.context.vars) ctx.push_back(Json{v.sort.name, v.rank});
  return Json{{"context", ctx},
              {"antecedent", formula_to_json(s.antecedent)},
              {"consequent", formula_to_json(s.consequent)}};
}

inline Sequent sequent_from_json(const Json& j, const Signature& sig) {
  std::vector<Variable> ctx;
  for (const auto& v : j["context"])
    ctx.push_back(Variable{Sort{v[0].get<std::string>()}, v[1].get<int>()});
  return Sequent{formula_from_json(j["antecedent"], sig), Context(ctx),
                 formula_from_json(j["consequent"], sig)};
}

inline Json proof_to_json(const Proof& p) {
  Json j;
  j["conclusion"] = sequent_to_json(p->conclusion);
  j["rule"] = rule_name(p->rule);
  if (p->cut_formula) j["cut_formula"] = formula_to_json(*p->cut_formula);
  if (p->binding) {
    Json b = Json::array();
    for (const auto& [v, t] : *p->binding)
      b.push_back(Json{{"var", {v.sort.name, v.rank}}, {"term", term_to_json(t)}});
    j["binding"] = b;
  }
  if (p->repl_vars)
    j["repl_vars"] = Json::array(
        {Json::array({p->repl_vars->first.sort.name, p->repl_vars->first.rank}),
         Json::array({p->repl_vars->second.sort.name, p->repl_vars->second.rank})});
  if (p->repl_formula) j["repl_formula"] = formula_to_json(*p->repl_formula);
  if (p->refl_term) j["refl_term"] = term_to_json(*p->refl_term);
  if (p->axiom_index) j["axiom"] = *p->axiom_index;
  if (!p->premises.empty()) {
    Json prem = Json::array();
    for (const auto& q : p->premises) prem.push_back(proof_to_json(q));
    j["premises"] = prem;
  }
  return j;
}

inline RuleKind rule_from_name(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(RuleKind::TheoryAxiom); ++k)
    if (name == rule_name(static_cast<RuleKind>(k))) return static_cast<RuleKind>(k);
  throw std::runtime_error("unknown rule name: " + name);
}

inline Proof proof_from_json(const Json& j, const Signature& sig) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = sequent_from_json(j["conclusion"], sig);
  n->rule = rule_from_name(j["rule"].get<std::string>());
  if (j.contains("cut_formula")) n->cut_formula = formula_from_json(j["cut_formula"], sig);
  if (j.contains("binding")) {
    Binding b;
    for (const auto& e : j["binding"])
      b.emplace(Variable{Sort{e["var"][0].get<std::string>()}, e["var"][1].get<int>()},
                term_from_json(e["term"], sig));
    n->binding = b;
  }
  if (j.contains("repl_vars")) {
    const auto& rv = j["repl_vars"];
    n->repl_vars = {Variable{Sort{rv[0][0].get<std::string>()}, rv[0][1].get<int>()},
                    Variable{Sort{rv[1][0].get<std::string>()}, rv[1][1].get<int>()}};
  }
  if (j.contains("repl_formula")) n->repl_formula = formula_from_json(j["repl_formula"], sig);
  if (j.contains("refl_term")) n->refl_term = term_from_json(j["refl_term"], sig);
  if (j.contains("axiom")) n->axiom_index = j["axiom"].get<int>();
  if (j.contains("premises"))
    for (const auto& q : j["premises"]) n->premises.push_back(proof_from_json(q, sig));
  return n;
}

// Self-contained proof documents.
struct ProofDocument {
  Theory theory;
  Proof proof;
};

inline std::string save_proof_document(const Theory& th, const Proof& p) {
  Json j;
  j["format"] = "cartlog-proof";
  j["theory"] = print_theory(th);
  j["proof"] = proof_to_json(p);
  return j.dump(1) + "\n";
}

inline ProofDocument load_proof_document(const std::string& text) {
  Json j = Json::parse(text);
  if (!j.contains("format") || j["format"] != "cartlog-proof")
    throw std::runtime_error("not a proof document");
  ProofDocument doc;
  doc.theory = parse_theory(j["theory"].get<std::string>());
  doc.proof = proof_from_json(j["proof"], doc.theory.signature);
  return doc;
}

}  // namespace cartlog

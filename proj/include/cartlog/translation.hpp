// Provability transport along translations. A translation carries its
// signature map (theory.hpp); here every translated source axiom gets a
// target proof, which by rule-wise induction is enough to translate whole
// proofs.

#pragma once

#include <optional>
#include <vector>

#include "cartlog/search.hpp"

namespace cartlog {

struct TranslationCertificate {
  std::vector<Proof> axiom_proofs;  // one target proof per source axiom
};

// certified implies every translated source axiom is target-provable.
inline std::optional<TranslationCertificate> verify_translation(const Translation& tr,
                                                                const ProofBudget& budget = {}) {
  tr.validate();
  TranslationCertificate cert;
  for (const auto& ax : tr.source.axioms) {
    auto p = search(tr.target, tr.apply(ax), budget);
    if (!p) return std::nullopt;
    cert.axiom_proofs.push_back(*p);
  }
  return cert;
}

namespace detail {

inline Proof rename_context_to(const Proof& p, const Context& target) {
  const Context& from = p->conclusion.context;
  Binding ren;
  for (std::size_t i = 0; i < from.size(); ++i)
    if (from.vars[i] != target.vars[i]) ren.emplace(from.vars[i], var(target.vars[i]));
  if (ren.empty()) return p;
  return rules::substitution(p, ren, target);
}

}  // namespace detail

// Structure-preserving image of a proof: every axiom citation is replaced by
// the certificate's proof of the translated axiom. The result passes
// check_proof in the target theory.
inline Proof apply_translation(const Translation& tr, const TranslationCertificate& cert,
                               const Proof& p) {
  std::vector<Proof> prem;
  prem.reserve(p->premises.size());
  for (const auto& q : p->premises) prem.push_back(apply_translation(tr, cert, q));

  switch (p->rule) {
    case RuleKind::IdentityAxiom:
      return rules::identity(tr.apply(p->conclusion.antecedent), tr.apply(p->conclusion.context));
    case RuleKind::TopIntro:
      return rules::top_intro(tr.apply(p->conclusion.antecedent), tr.apply(p->conclusion.context));
    case RuleKind::AndIntro:
      return rules::and_intro(prem[0], prem[1]);
    case RuleKind::AndElimLeft:
      return rules::and_elim_left(prem[0]);
    case RuleKind::AndElimRight:
      return rules::and_elim_right(prem[0]);
    case RuleKind::Cut:
      return rules::cut(prem[0], prem[1]);
    case RuleKind::EqReflexivity:
      return rules::eq_refl_node(tr.apply(*p->refl_term), tr.apply(p->conclusion.context));
    case RuleKind::EqReplacement:
      return rules::eq_replacement(tr.apply(p->repl_vars->first), tr.apply(p->repl_vars->second),
                                   tr.apply(*p->repl_formula), tr.apply(p->conclusion.context));
    case RuleKind::Substitution: {
      Binding b;
      for (const auto& [v, t] : *p->binding) b.emplace(tr.apply(v), tr.apply(t));
      return rules::substitution(prem[0], b, tr.apply(p->conclusion.context));
    }
    case RuleKind::ExistsElim:
      return rules::exists_elim(prem[0]);
    case RuleKind::ExistsAdjoint:
      return rules::exists_adjoint(prem[0]);
    case RuleKind::Frobenius: {
      const auto& a = p->conclusion.antecedent.and_parts();
      const auto& ex = a.rhs().exists_parts();
      return rules::frobenius(tr.apply(a.lhs()), tr.apply(ex.bound), tr.apply(ex.body()),
                              tr.apply(p->conclusion.context));
    }
    case RuleKind::TheoryAxiom: {
      int i = *p->axiom_index;
      if (i < 0 || i >= static_cast<int>(cert.axiom_proofs.size()))
        throw ProofError("translation certificate does not cover the cited axiom");
      // The citation may sit at an alpha-renamed context.
      return detail::rename_context_to(cert.axiom_proofs[i], tr.apply(p->conclusion.context));
    }
  }
  throw ProofError("unknown rule in translation");
}

}  // namespace cartlog

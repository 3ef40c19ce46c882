// Pretty printer for the text DSL. parse(print(x)) is stable for every value
// the toolkit emits.

#pragma once

#include <sstream>
#include <string>

#include "cartlog/syntax.hpp"

namespace cartlog {

// Display names are a pure function of (sort, rank); the parser recovers the
// identity of a variable from its declaration site, not from the name.
inline std::string variable_name(const Variable& v, bool single_sorted = true) {
  static const char* letters[] = {"x", "y", "z", "w", "u", "v"};
  std::string base;
  if (v.rank < 6)
    base = letters[v.rank];
  else
    base = "x" + std::to_string(v.rank);
  if (single_sorted) return base;
  return base + "_" + v.sort.name;
}

struct Namer {
  bool single_sorted = true;
  std::string operator()(const Variable& v) const {
    return variable_name(v, single_sorted);
  }
};

inline Namer namer_for(const Signature& sig) {
  return Namer{sig.sorts.size() <= 1};
}

inline std::string print_term(const Term& t, const Namer& n) {
  if (t.is_var()) return n(t.var());
  const auto& a = t.app();
  if (a.args.empty()) return a.fn.name;
  std::string out = a.fn.name + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ", ";
    out += print_term(a.args[i], n);
  }
  return out + ")";
}

namespace detail {

inline std::string print_formula_inner(const Formula& f, const Namer& n,
                                        bool parenthesize_exists) {
  if (f.is_top()) return "top";
  if (f.is_eq())
    return print_term(f.eq_parts().lhs, n) + " = " + print_term(f.eq_parts().rhs, n);
  if (f.is_rel()) {
    const auto& r = f.rel_parts();
    std::string out = r.rel.name + "(";
    for (std::size_t i = 0; i < r.args.size(); ++i) {
      if (i) out += ", ";
      out += print_term(r.args[i], n);
    }
    return out + ")";
  }
  if (f.is_and()) {
    // The grammar is right-associative, so a left operand that is itself a
    // conjunction or an existential must be parenthesized; on the right an
    // existential body extends to the end, which reparses identically.
    std::string l = print_formula_inner(f.and_parts().lhs(), n, true);
    if (f.and_parts().lhs().is_and()) l = "(" + l + ")";
    std::string r = print_formula_inner(f.and_parts().rhs(), n, false);
    return l + " & " + r;
  }
  const auto& ex = f.exists_parts();
  std::string bound = n(ex.bound);
  if (!n.single_sorted) bound += ":" + ex.bound.sort.name;
  std::string body = "exists " + bound + ". " + print_formula_inner(ex.body(), n, false);
  return parenthesize_exists ? "(" + body + ")" : body;
}

}  // namespace detail

inline std::string print_formula(const Formula& f, const Namer& n) {
  return detail::print_formula_inner(f, n, false);
}

inline std::string print_context(const Context& c, const Namer& n) {
  std::string out;
  for (std::size_t i = 0; i < c.vars.size(); ++i) {
    if (i) out += ", ";
    out += n(c.vars[i]);
    if (!n.single_sorted) out += ":" + c.vars[i].sort.name;
  }
  return out;
}

inline std::string print_sequent(const Sequent& s, const Namer& n) {
  return "forallctx(" + print_context(s.context, n) + "): " +
         print_formula(s.antecedent, n) + " |- " + print_formula(s.consequent, n);
}

inline std::string print_formula_in_context(const FormulaInContext& fic,
                                             const Namer& n) {
  return "{" + print_context(fic.context, n) + ". " +
         print_formula(fic.formula, n) + "}";
}

// Canonical text of the alpha-normal form; usable as a deterministic map key.
inline std::string alpha_normal_text(const Sequent& s, const Namer& n) {
  return print_sequent(alpha_normalize(s), n);
}

inline std::string print_signature(const Signature& sig) {
  std::ostringstream out;
  for (const auto& s : sig.sorts) out << "sort " << s.name << ";\n";
  for (const auto& f : sig.functions) {
    out << "fun " << f.name << " :";
    for (const auto& a : f.arg_sorts) out << " " << a.name;
    out << " -> " << f.result_sort.name << ";\n";
  }
  for (const auto& r : sig.relations) {
    out << "rel " << r.name << " :";
    for (const auto& a : r.arg_sorts) out << " " << a.name;
    out << ";\n";
  }
  return out.str();
}

}  // namespace cartlog

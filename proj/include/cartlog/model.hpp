// Finite Set-semantics of cartesian theories: term and formula interpretation
// by exhaustive tuple enumeration, sequent satisfaction, model validation.
//
// This evaluator is the soundness oracle for the proof kernel, so it stays
// deliberately naive: no symbolic shortcuts, no sharing with the kernel or
// the search beyond the syntax types.

#pragma once

#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cartlog/theory.hpp"

namespace cartlog {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-sort finite carriers, total function tables, relation subsets.
// Function tables are row-major with the leftmost argument most significant.
struct FiniteModel {
  Signature signature;
  std::map<std::string, std::vector<std::string>> carriers;   // sort -> labels
  std::map<std::string, std::vector<int>> functions;          // symbol -> table
  std::map<std::string, std::set<std::vector<int>>> relations;

  int carrier_size(const Sort& s) const {
    auto it = carriers.find(s.name);
    if (it == carriers.end()) throw ModelError("no carrier for sort " + s.name);
    return static_cast<int>(it->second.size());
  }

  const std::vector<int>& table(const FunctionSymbol& f) const {
    auto it = functions.find(f.name);
    if (it == functions.end()) throw ModelError("no table for symbol " + f.name);
    return it->second;
  }

  void validate() const {
    signature.validate();
    for (const auto& s : signature.sorts)
      if (!carriers.count(s.name)) throw ModelError("missing carrier: " + s.name);
    for (const auto& f : signature.functions) {
      auto it = functions.find(f.name);
      if (it == functions.end()) throw ModelError("missing table: " + f.name);
      long want = 1;
      for (const auto& a : f.arg_sorts) want *= carrier_size(a);
      if (static_cast<long>(it->second.size()) != want)
        throw ModelError("table size mismatch for " + f.name);
      int res = carrier_size(f.result_sort);
      for (int v : it->second)
        if (v < 0 || v >= res) throw ModelError("table value out of range in " + f.name);
    }
    for (const auto& r : signature.relations) {
      auto it = relations.find(r.name);
      if (it == relations.end()) throw ModelError("missing relation table: " + r.name);
      for (const auto& tup : it->second) {
        if (static_cast<int>(tup.size()) != r.arity())
          throw ModelError("relation tuple arity mismatch in " + r.name);
        for (int i = 0; i < r.arity(); ++i)
          if (tup[i] < 0 || tup[i] >= carrier_size(r.arg_sorts[i]))
            throw ModelError("relation tuple out of range in " + r.name);
      }
    }
  }
};

using Environment = std::map<Variable, int>;

inline int eval_term(const FiniteModel& m, const Environment& env, const Term& t) {
  if (t.is_var()) {
    auto it = env.find(t.var());
    if (it == env.end()) throw ModelError("unbound variable in evaluation");
    return it->second;
  }
  const auto& a = t.app();
  long idx = 0;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    int v = eval_term(m, env, a.args[i]);
    idx = idx * m.carrier_size(a.fn.arg_sorts[i]) + v;
  }
  return m.table(a.fn).at(static_cast<std::size_t>(idx));
}

// Subset of the cartesian product of the carriers, tuples in context order.
struct Interpretation {
  Context context;
  std::set<std::vector<int>> tuples;
};

inline constexpr long kDefaultTupleCap = 4096;

namespace detail {

inline long context_volume(const FiniteModel& m, const Context& ctx) {
  long vol = 1;
  for (const auto& v : ctx.vars) {
    vol *= m.carrier_size(v.sort);
    if (vol > (1L << 30)) throw ModelError("context volume overflow");
  }
  return vol;
}

inline std::vector<std::vector<int>> all_tuples(const FiniteModel& m, const Context& ctx,
                                                long cap) {
  long vol = context_volume(m, ctx);
  if (vol > cap) throw ModelError("tuple enumeration exceeds the configured cap");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(ctx.size(), 0);
  if (vol == 0) return out;
  for (long k = 0; k < vol; ++k) {
    out.push_back(cur);
    for (int i = static_cast<int>(ctx.size()) - 1; i >= 0; --i) {
      if (++cur[i] < m.carrier_size(ctx.vars[i].sort)) break;
      cur[i] = 0;
    }
  }
  return out;
}

}  // namespace detail

inline Interpretation interpret_formula(const FiniteModel& m, const Context& ctx,
                                        const Formula& f, long cap = kDefaultTupleCap) {
  for (const auto& v : free_vars(f))
    if (!ctx.contains(v)) throw ModelError("free variable outside the context");
  if (!well_sorted(m.signature, f)) throw ModelError("formula not well-sorted for the model");

  Interpretation out;
  out.context = ctx;

  if (f.is_exists()) {
    const auto& ex = f.exists_parts();
    Variable bound = ex.bound;
    Formula body = ex.body();
    if (ctx.contains(bound)) {
      std::set<Variable> avoid(ctx.vars.begin(), ctx.vars.end());
      for (const auto& v : free_vars(body)) avoid.insert(v);
      Variable fresh = fresh_variable(bound.sort, avoid);
      body = substitute(body, Binding{{bound, var(fresh)}});
      bound = fresh;
    }
    Interpretation inner = interpret_formula(m, ctx.extended(bound), body, cap);
    for (const auto& tup : inner.tuples)
      out.tuples.insert(std::vector<int>(tup.begin(), tup.end() - 1));
    return out;
  }

  auto tuples = detail::all_tuples(m, ctx, cap);

  if (f.is_and()) {
    Interpretation l = interpret_formula(m, ctx, f.and_parts().lhs(), cap);
    Interpretation r = interpret_formula(m, ctx, f.and_parts().rhs(), cap);
    for (const auto& t : l.tuples)
      if (r.tuples.count(t)) out.tuples.insert(t);
    return out;
  }

  for (const auto& tup : tuples) {
    Environment env;
    for (std::size_t i = 0; i < ctx.size(); ++i) env[ctx.vars[i]] = tup[i];
    bool holds;
    if (f.is_top()) {
      holds = true;
    } else if (f.is_eq()) {
      holds = eval_term(m, env, f.eq_parts().lhs) == eval_term(m, env, f.eq_parts().rhs);
    } else {  // relation atom
      std::vector<int> args;
      for (const auto& a : f.rel_parts().args) args.push_back(eval_term(m, env, a));
      auto it = m.relations.find(f.rel_parts().rel.name);
      holds = it != m.relations.end() && it->second.count(args) > 0;
    }
    if (holds) out.tuples.insert(tup);
  }
  return out;
}

// true iff the antecedent's interpretation is contained in the consequent's.
inline bool satisfies(const FiniteModel& m, const Sequent& s, long cap = kDefaultTupleCap) {
  Interpretation a = interpret_formula(m, s.context, s.antecedent, cap);
  Interpretation c = interpret_formula(m, s.context, s.consequent, cap);
  for (const auto& t : a.tuples)
    if (!c.tuples.count(t)) return false;
  return true;
}

inline bool is_model(const FiniteModel& m, const Theory& th, long cap = kDefaultTupleCap) {
  if (m.signature != th.signature) throw ModelError("model and theory signatures differ");
  for (const auto& ax : th.axioms)
    if (!satisfies(m, ax, cap)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Model files

inline std::string print_model(const FiniteModel& m) {
  std::ostringstream out;
  for (const auto& s : m.signature.sorts) {
    out << "sort " << s.name << " = {";
    const auto& labels = m.carriers.at(s.name);
    for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? ", " : " ") << labels[i];
    out << " };\n";
  }
  for (const auto& f : m.signature.functions) {
    out << "fun " << f.name << " :";
    for (const auto& a : f.arg_sorts) out << " " << a.name;
    out << " -> " << f.result_sort.name << " = [";
    const auto& tbl = m.functions.at(f.name);
    for (std::size_t i = 0; i < tbl.size(); ++i) out << (i ? ", " : " ") << tbl[i];
    out << " ];\n";
  }
  for (const auto& r : m.signature.relations) {
    out << "rel " << r.name << " :";
    for (const auto& a : r.arg_sorts) out << " " << a.name;
    out << " = {";
    bool first = true;
    for (const auto& tup : m.relations.at(r.name)) {
      out << (first ? " (" : ", (");
      first = false;
      for (std::size_t i = 0; i < tup.size(); ++i) out << (i ? ", " : "") << tup[i];
      out << ")";
    }
    out << " };\n";
  }
  return out.str();
}

}  // namespace cartlog

// Seeded generators for property-style tests. Everything is deterministic in
// the seed so failures reproduce.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "cartlog/cartlog.hpp"

namespace gen {

using namespace cartlog;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  int pick(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  bool coin() { return pick(2) == 0; }
};

inline Word random_word(Rng& r, int n_generators, int max_len, int min_len = 0) {
  int len = min_len + r.pick(max_len - min_len + 1);
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(r.pick(n_generators));
  return w;
}

inline MonoidPresentation random_presentation(Rng& r, int max_generators = 3,
                                              int max_relations = 2) {
  static const std::vector<std::string> pool{"a", "b", "c"};
  int ng = 1 + r.pick(max_generators);
  MonoidPresentation p;
  for (int i = 0; i < ng; ++i) p.generators.push_back(pool[i]);
  int nr = r.pick(max_relations + 1);
  for (int i = 0; i < nr; ++i)
    p.relations.push_back({random_word(r, ng, 3, 1), random_word(r, ng, 3)});
  return p;
}

// A random term over the module vocabulary: generator chains and sums over
// the given context variables.
inline Term random_module_term(Rng& r, const MonoidPresentation& p,
                               const std::vector<Variable>& scope, int depth) {
  ModuleVocabulary voc;
  if (depth == 0 || r.pick(4) == 0) {
    if (r.pick(6) == 0) return constant(voc.zero);
    return var(scope[r.pick(static_cast<int>(scope.size()))]);
  }
  switch (r.pick(3)) {
    case 0: {
      FunctionSymbol g = voc.generator(p.generators[r.pick(static_cast<int>(p.generators.size()))]);
      return app(g, {random_module_term(r, p, scope, depth - 1)});
    }
    case 1:
      return app(voc.plus, {random_module_term(r, p, scope, depth - 1),
                            random_module_term(r, p, scope, depth - 1)});
    default:
      return app(voc.neg, {random_module_term(r, p, scope, depth - 1)});
  }
}

// A random cartesian-shaped formula: top, equalities, conjunctions and
// existentials over the module vocabulary.
inline Formula random_module_formula(Rng& r, const MonoidPresentation& p,
                                     std::vector<Variable> scope, int depth) {
  Sort carrier{"A"};
  if (depth == 0 || r.pick(3) == 0) {
    if (r.pick(5) == 0) return Formula::top();
    Term l = random_module_term(r, p, scope, 1 + r.pick(2));
    Term t = random_module_term(r, p, scope, 1 + r.pick(2));
    return Formula::eq(l, t);
  }
  if (r.coin())
    return Formula::conj(random_module_formula(r, p, scope, depth - 1),
                         random_module_formula(r, p, scope, depth - 1));
  int max_rank = 0;
  for (const auto& v : scope) max_rank = std::max(max_rank, v.rank + 1);
  Variable bound{carrier, max_rank + r.pick(2)};
  auto inner = scope;
  inner.push_back(bound);
  return Formula::exists(bound, random_module_formula(r, p, inner, depth - 1));
}

// The identity function table on n elements.
inline std::vector<int> identity_table(int n) {
  std::vector<int> t(n);
  for (int i = 0; i < n; ++i) t[i] = i;
  return t;
}

// An F2 vector-space model of the free module theory on the presentation's
// generators, with each generator acting by the given linear map on basis
// vectors (dimension = basis.size(), elements are bitmasks).
inline FiniteModel f2_module_model(const MonoidPresentation& p,
                                   const std::vector<std::vector<int>>& basis_images) {
  int dim = static_cast<int>(basis_images.empty() ? 0 : basis_images[0].size());
  int n = 1 << dim;
  FiniteModel m;
  Theory th = module_theory_free(p);
  m.signature = th.signature;
  std::vector<std::string> labels;
  for (int e = 0; e < n; ++e) labels.push_back("v" + std::to_string(e));
  m.carriers["A"] = labels;

  std::vector<int> plus;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) plus.push_back(a ^ b);
  m.functions["plus"] = plus;
  m.functions["zero"] = {0};
  m.functions["neg"] = identity_table(n);  // characteristic two

  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    std::vector<int> table;
    for (int e = 0; e < n; ++e) {
      int out = 0;
      for (int i = 0; i < dim; ++i)
        if (e & (1 << i)) out ^= basis_images[g][i];
      table.push_back(out);
    }
    m.functions[p.generators[g]] = table;
  }
  m.validate();
  return m;
}

}  // namespace gen

// Finitely presented monoids: replacement equivalence by bidirectional BFS,
// shortlex Knuth-Bendix completion with step provenance, finite quotients,
// the encoding of word problems into module-theory sequents, synthesis of
// kernel proofs from rewrite certificates, and monoid-algebra countermodels
// over finite prime fields.

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cartlog/model.hpp"
#include "cartlog/proof.hpp"
#include "cartlog/theory.hpp"

namespace cartlog {

struct WordError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One replacement: at `position`, the relation's left word (forward) or right
// word (backward) is replaced by the other side.
struct RewriteStep {
  int position = 0;
  int relation = 0;
  bool forward = true;
  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

struct RewriteCertificate {
  Word start, end;
  std::vector<RewriteStep> steps;
};

inline std::optional<Word> apply_step(const MonoidPresentation& p, const Word& w,
                                      const RewriteStep& s) {
  if (s.relation < 0 || s.relation >= static_cast<int>(p.relations.size()))
    return std::nullopt;
  const Word& from = s.forward ? p.relations[s.relation].first : p.relations[s.relation].second;
  const Word& to = s.forward ? p.relations[s.relation].second : p.relations[s.relation].first;
  if (s.position < 0 || s.position + static_cast<int>(from.size()) > static_cast<int>(w.size()))
    return std::nullopt;
  for (std::size_t i = 0; i < from.size(); ++i)
    if (w[s.position + i] != from[i]) return std::nullopt;
  Word out(w.begin(), w.begin() + s.position);
  out.insert(out.end(), to.begin(), to.end());
  out.insert(out.end(), w.begin() + s.position + from.size(), w.end());
  return out;
}

inline bool replays(const MonoidPresentation& p, const RewriteCertificate& c) {
  Word w = c.start;
  for (const auto& s : c.steps) {
    auto next = apply_step(p, w, s);
    if (!next) return false;
    w = *next;
  }
  return w == c.end;
}

inline std::vector<RewriteStep> invert_steps(const std::vector<RewriteStep>& steps) {
  std::vector<RewriteStep> out(steps.rbegin(), steps.rend());
  for (auto& s : out) s.forward = !s.forward;
  return out;
}

// ---------------------------------------------------------------------------
// Shortlex rewriting and Knuth-Bendix completion with provenance
//
// Every derived rule carries a certificate transforming its left side into
// its right side by original-relation replacements, so completion-based
// equality verdicts can always be replayed.

inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct TrackedRule {
  Word lhs, rhs;
  std::vector<RewriteStep> cert;  // transforms lhs into rhs
};

struct CompletedSystem {
  std::vector<TrackedRule> rules;

  // Leftmost occurrence of the first applicable rule, repeated to a normal
  // form; terminating because every rule is shortlex-decreasing.
  std::pair<Word, std::vector<RewriteStep>> normalize(const Word& start) const {
    Word w = start;
    std::vector<RewriteStep> trail;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t r = 0; r < rules.size() && !changed; ++r) {
        const Word& l = rules[r].lhs;
        if (l.empty() || l.size() > w.size()) continue;
        for (std::size_t pos = 0; pos + l.size() <= w.size(); ++pos) {
          if (!std::equal(l.begin(), l.end(), w.begin() + pos)) continue;
          for (auto s : rules[r].cert) {
            s.position += static_cast<int>(pos);
            trail.push_back(s);
          }
          Word out(w.begin(), w.begin() + pos);
          out.insert(out.end(), rules[r].rhs.begin(), rules[r].rhs.end());
          out.insert(out.end(), w.begin() + pos + l.size(), w.end());
          w = std::move(out);
          changed = true;
          break;
        }
      }
    }
    return {w, trail};
  }
};

struct CompletionLimits {
  int max_rules = 64;
  int max_pair_checks = 20000;
};

// Returns a confluent terminating system equivalent to the presentation, or
// nullopt when the limits are hit first.
inline std::optional<CompletedSystem> knuth_bendix(const MonoidPresentation& p,
                                                   const CompletionLimits& lim = {}) {
  CompletedSystem sys;
  auto orient = [&](const Word& a, const Word& b, std::vector<RewriteStep> a_to_b) -> bool {
    if (a == b) return true;
    TrackedRule r;
    if (shortlex_less(b, a)) {
      r = TrackedRule{a, b, std::move(a_to_b)};
    } else {
      r = TrackedRule{b, a, invert_steps(a_to_b)};
    }
    for (const auto& e : sys.rules)
      if (e.lhs == r.lhs && e.rhs == r.rhs) return true;
    sys.rules.push_back(std::move(r));
    return static_cast<int>(sys.rules.size()) <= lim.max_rules;
  };

  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    std::vector<RewriteStep> cert{{0, static_cast<int>(i), true}};
    if (!orient(p.relations[i].first, p.relations[i].second, cert)) return std::nullopt;
  }

  int checks = 0;
  std::size_t next_i = 0, next_j = 0;
  std::set<std::pair<std::size_t, std::size_t>> done;
  while (true) {
    // Find an unprocessed ordered pair.
    bool found = false;
    for (std::size_t i = 0; i < sys.rules.size() && !found; ++i)
      for (std::size_t j = 0; j < sys.rules.size() && !found; ++j)
        if (!done.count({i, j})) {
          next_i = i;
          next_j = j;
          found = true;
        }
    if (!found) return sys;  // every critical pair joinable
    done.insert({next_i, next_j});

    const Word l1 = sys.rules[next_i].lhs;
    const Word l2 = sys.rules[next_j].lhs;
    int len1 = static_cast<int>(l1.size());
    int len2 = static_cast<int>(l2.size());

    for (int d = -(len2 - 1); d < len1; ++d) {
      if (++checks > lim.max_pair_checks) return std::nullopt;
      int lo = std::min(0, d), hi = std::max(len1, d + len2);
      // Positions of the two occurrences inside the superposition word; the
      // loop bounds guarantee the occurrences overlap.
      int o1 = -lo, o2 = d - lo;
      // Build the superposition; check agreement on the shared region.
      Word w(static_cast<std::size_t>(hi - lo), -1);
      bool consistent = true;
      for (int k = 0; k < len1 && consistent; ++k) w[o1 + k] = l1[k];
      for (int k = 0; k < len2 && consistent; ++k) {
        int pos = o2 + k;
        if (w[pos] != -1 && w[pos] != l2[k]) consistent = false;
        w[pos] = l2[k];
      }
      if (!consistent) continue;

      auto apply_rule = [&](const TrackedRule& r, int at) {
        Word out(w.begin(), w.begin() + at);
        out.insert(out.end(), r.rhs.begin(), r.rhs.end());
        out.insert(out.end(), w.begin() + at + r.lhs.size(), w.end());
        std::vector<RewriteStep> steps;
        for (auto s : r.cert) {
          s.position += at;
          steps.push_back(s);
        }
        return std::make_pair(out, steps);
      };
      auto [t1, c1] = apply_rule(sys.rules[next_i], o1);
      auto [t2, c2] = apply_rule(sys.rules[next_j], o2);
      auto [n1, d1] = sys.normalize(t1);
      auto [n2, d2] = sys.normalize(t2);
      if (n1 == n2) continue;

      // Certificate n1 -> n2 through the superposition word.
      std::vector<RewriteStep> path = invert_steps(d1);
      std::vector<RewriteStep> up = invert_steps(c1);
      path.insert(path.end(), up.begin(), up.end());
      path.insert(path.end(), c2.begin(), c2.end());
      path.insert(path.end(), d2.begin(), d2.end());
      if (!orient(n1, n2, path)) return std::nullopt;
    }
  }
}

// ---------------------------------------------------------------------------
// Replacement equivalence

enum class WordVerdict { Equivalent, Inequivalent, Unknown };

struct EquivalenceResult {
  WordVerdict verdict = WordVerdict::Unknown;
  std::optional<RewriteCertificate> certificate;  // Equivalent
  std::optional<CompletedSystem> completion;      // Inequivalent via normal forms
  std::optional<Word> nf_left, nf_right;
};

namespace detail {

struct BfsLimits {
  int max_word_length;
  int max_visited;
};

// Single-relation replacements at every position, deterministic order.
inline std::vector<std::pair<Word, RewriteStep>> neighbors(const MonoidPresentation& p,
                                                           const Word& w, int maxlen) {
  std::vector<std::pair<Word, RewriteStep>> out;
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    for (int dir = 0; dir < 2; ++dir) {
      bool forward = dir == 0;
      const Word& from = forward ? p.relations[r].first : p.relations[r].second;
      const Word& to = forward ? p.relations[r].second : p.relations[r].first;
      if (from.size() > w.size()) continue;
      if (w.size() - from.size() + to.size() > static_cast<std::size_t>(maxlen)) continue;
      for (std::size_t pos = 0; pos + from.size() <= w.size(); ++pos) {
        if (!std::equal(from.begin(), from.end(), w.begin() + pos)) continue;
        RewriteStep s{static_cast<int>(pos), static_cast<int>(r), forward};
        out.push_back({*apply_step(p, w, s), s});
      }
    }
  }
  return out;
}

}  // namespace detail

// Bidirectional BFS over the replacement graph, words length-capped by
// `bound`. The returned certificate replays from u to v.
inline std::optional<RewriteCertificate> bfs_equivalent(const MonoidPresentation& p,
                                                        const Word& u, const Word& v,
                                                        int bound, int max_visited = 50000) {
  if (u == v) return RewriteCertificate{u, v, {}};
  // parents: word -> (previous word, step applied to previous)
  std::map<Word, std::pair<Word, RewriteStep>> from_u, from_v;
  std::deque<Word> qu{u}, qv{v};
  std::set<Word> seen_u{u}, seen_v{v};
  int visited = 2;

  auto path_from = [&](const std::map<Word, std::pair<Word, RewriteStep>>& par,
                       const Word& origin, Word w) {
    std::vector<RewriteStep> steps;
    while (w != origin) {
      const auto& [prev, step] = par.at(w);
      steps.push_back(step);
      w = prev;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;  // origin -> w
  };

  auto assemble = [&](const Word& meet) {
    std::vector<RewriteStep> a = path_from(from_u, u, meet);
    std::vector<RewriteStep> b = invert_steps(path_from(from_v, v, meet));
    a.insert(a.end(), b.begin(), b.end());
    return RewriteCertificate{u, v, a};
  };

  while (!qu.empty() || !qv.empty()) {
    bool expand_u = !qu.empty() && (qv.empty() || qu.size() <= qv.size());
    auto& q = expand_u ? qu : qv;
    auto& seen = expand_u ? seen_u : seen_v;
    auto& par = expand_u ? from_u : from_v;
    auto& other = expand_u ? seen_v : seen_u;

    Word w = q.front();
    q.pop_front();
    for (const auto& [next, step] : detail::neighbors(p, w, bound)) {
      if (seen.count(next)) continue;
      if (++visited > max_visited) return std::nullopt;
      seen.insert(next);
      par.emplace(next, std::make_pair(w, step));
      q.push_back(next);
      if (other.count(next)) return assemble(next);
    }
  }
  return std::nullopt;
}

inline EquivalenceResult equivalent(const MonoidPresentation& p, const Word& u, const Word& v,
                                    int bound, int max_visited = 50000,
                                    const CompletionLimits& lim = {}) {
  p.validate();
  for (int g : u)
    if (g < 0 || g >= static_cast<int>(p.generators.size()))
      throw WordError("word uses an undeclared generator");
  for (int g : v)
    if (g < 0 || g >= static_cast<int>(p.generators.size()))
      throw WordError("word uses an undeclared generator");

  EquivalenceResult res;
  if (auto cert = bfs_equivalent(p, u, v, bound, max_visited)) {
    res.verdict = WordVerdict::Equivalent;
    res.certificate = cert;
    return res;
  }

  if (auto sys = knuth_bendix(p, lim)) {
    auto [nu, cu] = sys->normalize(u);
    auto [nv, cv] = sys->normalize(v);
    res.completion = sys;
    res.nf_left = nu;
    res.nf_right = nv;
    if (nu == nv) {
      // The BFS bound was too small; the completion still certifies equality.
      std::vector<RewriteStep> steps = cu;
      auto back = invert_steps(cv);
      steps.insert(steps.end(), back.begin(), back.end());
      RewriteCertificate cert{u, v, steps};
      if (!replays(p, cert)) throw WordError("completion produced a bad certificate");
      res.verdict = WordVerdict::Equivalent;
      res.certificate = cert;
    } else {
      res.verdict = WordVerdict::Inequivalent;
    }
    return res;
  }

  res.verdict = WordVerdict::Unknown;
  return res;
}

// ---------------------------------------------------------------------------
// Finite quotients

// Element labels are normal-form words under a completed system; the table is
// faithful to the presentation whenever completion succeeded.
struct FiniteMonoid {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> mult;
  int identity = 0;
  std::vector<int> generator_class;  // class of each presentation generator

  int size() const { return static_cast<int>(labels.size()); }

  bool laws_hold() const {
    int n = size();
    if (identity < 0 || identity >= n) return false;
    for (int a = 0; a < n; ++a)
      if (mult[identity][a] != a || mult[a][identity] != a) return false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mult[mult[a][b]][c] != mult[a][mult[b][c]]) return false;
    return true;
  }

  // The class of a word, acting on the left of an element.
  int act(const Word& w, int element) const {
    int cur = element;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      cur = mult[generator_class[*it]][cur];
    return cur;
  }
};

struct FiniteQuotient {
  FiniteMonoid monoid;
  CompletedSystem system;
  std::map<Word, int> index;  // normal form -> element

  std::optional<int> class_of(const Word& w) const {
    auto [nf, cert] = system.normalize(w);
    auto it = index.find(nf);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

// Enumerates normal forms under a completed system, multiplication by
// concatenate-then-normalize. not_within_bound when enumeration exceeds the
// bound or completion fails.
inline std::optional<FiniteQuotient> finite_quotient(const MonoidPresentation& p, int bound,
                                                     const CompletionLimits& lim = {}) {
  auto sys = knuth_bendix(p, lim);
  if (!sys) return std::nullopt;

  FiniteQuotient q;
  q.system = *sys;
  std::vector<Word> elements;
  std::deque<Word> todo;
  auto add = [&](const Word& nf) -> std::optional<int> {
    auto it = q.index.find(nf);
    if (it != q.index.end()) return it->second;
    if (static_cast<int>(elements.size()) >= bound) return std::nullopt;
    int id = static_cast<int>(elements.size());
    q.index.emplace(nf, id);
    elements.push_back(nf);
    todo.push_back(nf);
    return id;
  };
  if (!add(Word{})) return std::nullopt;
  while (!todo.empty()) {
    Word e = todo.front();
    todo.pop_front();
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      Word w = e;
      w.push_back(static_cast<int>(g));
      auto [nf, cert] = sys->normalize(w);
      if (!add(nf)) return std::nullopt;
    }
  }

  int n = static_cast<int>(elements.size());
  q.monoid.labels.reserve(n);
  for (const auto& e : elements) q.monoid.labels.push_back(p.word_text(e));
  q.monoid.mult.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Word w = elements[a];
      w.insert(w.end(), elements[b].begin(), elements[b].end());
      auto [nf, cert] = sys->normalize(w);
      auto it = q.index.find(nf);
      if (it == q.index.end()) throw WordError("quotient closure was not closed");
      q.monoid.mult[a][b] = it->second;
    }
  q.monoid.identity = q.index.at(Word{});
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    auto [nf, cert] = sys->normalize(Word{static_cast<int>(g)});
    q.monoid.generator_class.push_back(q.index.at(nf));
  }
  if (!q.monoid.laws_hold()) throw WordError("quotient table violates the monoid laws");
  return q;
}

// Rees-style quotient of the free monoid: words shorter than `cutoff` stay
// distinct, everything longer collapses to a sink. Only meaningful for
// relation-free presentations; separates any two distinct short words.
inline FiniteMonoid rees_quotient(const MonoidPresentation& p, int cutoff) {
  if (!p.relations.empty())
    throw WordError("the length quotient is only faithful without relations");
  std::vector<Word> elements{Word{}};
  for (int len = 1; len < cutoff; ++len) {
    std::vector<Word> next;
    for (const auto& e : elements)
      if (static_cast<int>(e.size()) == len - 1)
        for (std::size_t g = 0; g < p.generators.size(); ++g) {
          Word w = e;
          w.push_back(static_cast<int>(g));
          next.push_back(w);
        }
    elements.insert(elements.end(), next.begin(), next.end());
  }
  int sink = static_cast<int>(elements.size());
  std::map<Word, int> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = static_cast<int>(i);

  FiniteMonoid m;
  for (const auto& e : elements) m.labels.push_back(p.word_text(e));
  m.labels.push_back("sink");
  int n = sink + 1;
  m.mult.assign(n, std::vector<int>(n, sink));
  for (int a = 0; a < sink; ++a)
    for (int b = 0; b < sink; ++b) {
      Word w = elements[a];
      w.insert(w.end(), elements[b].begin(), elements[b].end());
      auto it = index.find(w);
      m.mult[a][b] = it == index.end() ? sink : it->second;
    }
  for (int a = 0; a < n; ++a) {
    m.mult[a][0] = a;  // identity is the empty word at index 0
    m.mult[0][a] = a;
  }
  m.identity = 0;
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    Word w{static_cast<int>(g)};
    auto it = index.find(w);
    m.generator_class.push_back(it == index.end() ? sink : it->second);
  }
  if (!m.laws_hold()) throw WordError("length quotient violates the monoid laws");
  return m;
}

// ---------------------------------------------------------------------------
// The encoding of a word problem instance

struct EncodedInstance {
  Theory theory;                 // free module theory: relations live in the antecedent
  Sequent sequent;               // /\ f_i(x)=g_i(x) |-_x f(x)=g(x)
  FormulaInContext antecedent;   // {x. /\ f_i(x)=g_i(x)}
};

inline EncodedInstance encode(const MonoidPresentation& p, const Word& u, const Word& v) {
  p.validate();
  for (int g : u)
    if (g < 0 || g >= static_cast<int>(p.generators.size()))
      throw WordError("word uses an undeclared generator");
  for (int g : v)
    if (g < 0 || g >= static_cast<int>(p.generators.size()))
      throw WordError("word uses an undeclared generator");

  EncodedInstance out;
  out.theory = module_theory_free(p);
  Variable x{Sort{"A"}, 0};
  Term tx = var(x);
  std::vector<Formula> eqs;
  for (const auto& [l, r] : p.relations)
    eqs.push_back(Formula::eq(word_term(p, l, tx), word_term(p, r, tx)));
  Formula phi = conj_fold(eqs);
  Context ctx({x});
  out.antecedent = FormulaInContext{ctx, phi};
  out.sequent = Sequent{phi, ctx, Formula::eq(word_term(p, u, tx), word_term(p, v, tx))};
  return out;
}

// ---------------------------------------------------------------------------
// Rewrite certificates to kernel proofs
//
// Each replacement w1 . u_i . w2 -> w1 . v_i . w2 becomes: a citation of the
// adjoined relation axiom, conjunct elimination to isolate f_i(x) = g_i(x),
// substitution of the w2 suffix term for x, and equality replacement to wrap
// the w1 prefix; the steps chain by transitivity. The derivation lives in the
// extension of the free theory by the antecedent, where the relations hold at
// every instance; the resulting proof of the encoded sequent is checked
// there.

struct CertifiedReduction {
  Theory proof_theory;  // the free theory extended by the antecedent
  Sequent conclusion;   // the encoded sequent
  Proof proof;
};

inline CertifiedReduction certificate_to_proof(const MonoidPresentation& p,
                                               const RewriteCertificate& c) {
  if (!replays(p, c)) throw WordError("certificate does not replay");

  EncodedInstance inst = encode(p, c.start, c.end);
  auto [ext, inc] = adjoin(inst.theory, inst.antecedent);
  int axiom_idx = static_cast<int>(ext.axioms.size()) - 1;

  Variable x{Sort{"A"}, 0};
  Term tx = var(x);
  Context ctx({x});
  ModuleVocabulary voc;

  // Elimination paths to each relation conjunct of the adjoined axiom.
  std::vector<std::vector<bool>> paths;
  {
    std::function<void(const Formula&, std::vector<bool>)> walk =
        [&](const Formula& f, std::vector<bool> path) {
          if (f.is_and()) {
            auto l = path;
            l.push_back(true);
            walk(f.and_parts().lhs(), l);
            auto r = path;
            r.push_back(false);
            walk(f.and_parts().rhs(), r);
            return;
          }
          paths.push_back(path);
        };
    walk(inst.antecedent.formula, {});
  }

  auto step_equation = [&](const Word& w, const RewriteStep& s) -> Proof {
    const Word& from = s.forward ? p.relations[s.relation].first : p.relations[s.relation].second;
    Word prefix(w.begin(), w.begin() + s.position);
    Word suffix(w.begin() + s.position + from.size(), w.end());

    Proof pr = rules::theory_axiom(ext, axiom_idx);  // top |- /\ relations
    for (bool left : paths.at(s.relation))
      pr = left ? rules::and_elim_left(pr) : rules::and_elim_right(pr);
    if (!s.forward) pr = derived::eq_sym(pr);
    // top |- from(x) = to(x); instantiate at the suffix.
    if (!suffix.empty())
      pr = rules::substitution(pr, Binding{{x, word_term(p, suffix, tx)}}, ctx);
    // Wrap the prefix, innermost letter first.
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
      FunctionSymbol g = voc.generator(p.generators[*it]);
      Term lhs = pr->conclusion.consequent.eq_parts().lhs;
      pr = derived::eq_cong(pr, g, {lhs}, 0);
    }
    return pr;
  };

  Proof chain;
  Word w = c.start;
  for (const auto& s : c.steps) {
    Proof step = step_equation(w, s);
    chain = chain ? derived::eq_trans(chain, step) : step;
    w = *apply_step(p, w, s);
  }
  if (!chain) chain = rules::eq_refl_node(word_term(p, c.start, tx), ctx);

  // Strengthen the antecedent from top to the encoded antecedent.
  Proof result = inst.antecedent.formula.is_top()
                     ? chain
                     : rules::cut(rules::top_intro(inst.antecedent.formula, ctx), chain);

  CertifiedReduction out{ext, inst.sequent, result};
  require_checked(out.proof_theory, out.proof);
  if (!alpha_equal(out.proof->conclusion, out.conclusion))
    throw WordError("synthesized proof concludes the wrong sequent");
  return out;
}

// ---------------------------------------------------------------------------
// Monoid-algebra models over a prime field
//
// Carrier: all functions monoid -> F_p, encoded as base-p digit strings. A
// generator acts by convolution with its delta function, which is an index
// shift along left multiplication.

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline long pow_long(int base, int exp) {
  long r = 1;
  while (exp-- > 0) {
    r *= base;
    if (r > (1L << 24)) throw WordError("monoid algebra size cap exceeded");
  }
  return r;
}

inline std::vector<int> algebra_digits(long index, int prime, int n) {
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) {
    d[i] = static_cast<int>(index % prime);
    index /= prime;
  }
  return d;
}

inline long algebra_index(const std::vector<int>& digits, int prime) {
  long idx = 0;
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) idx = idx * prime + digits[i];
  return idx;
}

inline FiniteModel monoid_algebra_model(const MonoidPresentation& p, const FiniteMonoid& m,
                                        int prime, long size_cap = 1024) {
  if (!is_prime(prime)) throw WordError("the field order must be prime");
  int n = m.size();
  long carrier = pow_long(prime, n);
  if (carrier > size_cap) throw WordError("monoid algebra size cap exceeded");

  Theory th = module_theory_free(p);
  FiniteModel model;
  model.signature = th.signature;

  std::vector<std::string> labels;
  for (long e = 0; e < carrier; ++e) {
    auto d = algebra_digits(e, prime, n);
    std::string s = "f";
    for (int i = 0; i < n; ++i) s += std::to_string(d[i]);
    labels.push_back(s);
  }
  model.carriers["A"] = labels;

  std::vector<int> plus_table;
  plus_table.reserve(carrier * carrier);
  for (long a = 0; a < carrier; ++a) {
    auto da = algebra_digits(a, prime, n);
    for (long b = 0; b < carrier; ++b) {
      auto db = algebra_digits(b, prime, n);
      std::vector<int> sum(n);
      for (int i = 0; i < n; ++i) sum[i] = (da[i] + db[i]) % prime;
      plus_table.push_back(static_cast<int>(algebra_index(sum, prime)));
    }
  }
  model.functions["plus"] = std::move(plus_table);
  model.functions["zero"] = {0};

  std::vector<int> neg_table;
  for (long a = 0; a < carrier; ++a) {
    auto d = algebra_digits(a, prime, n);
    for (int i = 0; i < n; ++i) d[i] = (prime - d[i]) % prime;
    neg_table.push_back(static_cast<int>(algebra_index(d, prime)));
  }
  model.functions["neg"] = std::move(neg_table);

  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    int gc = m.generator_class.at(g);
    std::vector<int> table;
    for (long a = 0; a < carrier; ++a) {
      auto d = algebra_digits(a, prime, n);
      // (delta_g * alpha)(w) = sum over s with g.s = w of alpha(s)
      std::vector<int> out(n, 0);
      for (int s = 0; s < n; ++s) out[m.mult[gc][s]] = (out[m.mult[gc][s]] + d[s]) % prime;
      table.push_back(static_cast<int>(algebra_index(out, prime)));
    }
    model.functions[p.generators[g]] = std::move(table);
  }

  model.validate();
  return model;
}

// The delta function at a monoid element, as a carrier index.
inline long delta_index(const FiniteMonoid& m, int element, int prime) {
  std::vector<int> d(m.size(), 0);
  d[element] = 1;
  return algebra_index(d, prime);
}

}  // namespace cartlog

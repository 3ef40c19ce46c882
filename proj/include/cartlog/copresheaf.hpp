// Finite categories and finite copresheaves: Yoneda computations, image
// factorizations, projectivity by exhaustive epi/section search, Cauchy
// completeness, and the desk-scale checks for the representable
// characterization and representation embeddings.
//
// Enumeration of copresheaves is supported on poset bases (at most one arrow
// between any two objects); the lab's standard bases are finite
// meet-semilattices with a top element.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <stdexcept>

namespace cartlog {

struct LabError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Finite categories

struct FiniteCategory {
  struct Arrow {
    std::string name;
    int src = 0, tgt = 0;
  };

  std::vector<std::string> objects;
  std::vector<Arrow> arrows;             // includes identities
  std::vector<int> identity;             // per object: arrow index
  std::vector<std::vector<int>> comp;    // comp[g][f] = g after f, or -1

  int n_objects() const { return static_cast<int>(objects.size()); }
  int n_arrows() const { return static_cast<int>(arrows.size()); }

  int compose(int g, int f) const {
    int r = comp[g][f];
    if (r < 0) throw LabError("composing non-composable arrows");
    return r;
  }

  std::vector<int> hom(int a, int b) const {
    std::vector<int> out;
    for (int i = 0; i < n_arrows(); ++i)
      if (arrows[i].src == a && arrows[i].tgt == b) out.push_back(i);
    return out;
  }

  int object_index(const std::string& name) const {
    for (int i = 0; i < n_objects(); ++i)
      if (objects[i] == name) return i;
    throw LabError("unknown object: " + name);
  }

  void validate() const {
    if (static_cast<int>(identity.size()) != n_objects())
      throw LabError("identity list out of step with objects");
    for (int a = 0; a < n_objects(); ++a) {
      int e = identity[a];
      if (arrows[e].src != a || arrows[e].tgt != a) throw LabError("bad identity typing");
    }
    for (int g = 0; g < n_arrows(); ++g)
      for (int f = 0; f < n_arrows(); ++f) {
        bool composable = arrows[f].tgt == arrows[g].src;
        if (composable != (comp[g][f] >= 0)) throw LabError("composition table shape");
        if (composable) {
          int gf = comp[g][f];
          if (arrows[gf].src != arrows[f].src || arrows[gf].tgt != arrows[g].tgt)
            throw LabError("composite mistyped");
        }
      }
    for (int f = 0; f < n_arrows(); ++f) {
      if (comp[f][identity[arrows[f].src]] != f) throw LabError("right identity law fails");
      if (comp[identity[arrows[f].tgt]][f] != f) throw LabError("left identity law fails");
    }
    for (int h = 0; h < n_arrows(); ++h)
      for (int g = 0; g < n_arrows(); ++g)
        for (int f = 0; f < n_arrows(); ++f) {
          if (arrows[f].tgt != arrows[g].src || arrows[g].tgt != arrows[h].src) continue;
          if (comp[comp[h][g]][f] != comp[h][comp[g][f]])
            throw LabError("associativity fails");
        }
  }

  bool is_poset() const {
    for (int a = 0; a < n_objects(); ++a)
      for (int b = 0; b < n_objects(); ++b)
        if (hom(a, b).size() > 1) return false;
    return true;
  }

  bool leq(int a, int b) const { return !hom(a, b).empty(); }
};

// Category of a finite poset: one arrow a -> b whenever a <= b. The given
// relation is closed reflexively and transitively.
inline FiniteCategory poset_category(const std::vector<std::string>& names,
                                     std::vector<std::pair<int, int>> below) {
  int n = static_cast<int>(names.size());
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (auto [a, b] : below) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw LabError("leq pair out of range");
    le[a][b] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && le[i][j] && le[j][i]) throw LabError("poset relation has a cycle");

  FiniteCategory c;
  c.objects = names;
  std::map<std::pair<int, int>, int> idx;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (le[a][b]) {
        idx[{a, b}] = c.n_arrows();
        c.arrows.push_back({names[a] + "<=" + names[b], a, b});
      }
  c.identity.resize(n);
  for (int a = 0; a < n; ++a) c.identity[a] = idx.at({a, a});
  c.comp.assign(c.n_arrows(), std::vector<int>(c.n_arrows(), -1));
  for (int g = 0; g < c.n_arrows(); ++g)
    for (int f = 0; f < c.n_arrows(); ++f)
      if (c.arrows[f].tgt == c.arrows[g].src)
        c.comp[g][f] = idx.at({c.arrows[f].src, c.arrows[g].tgt});
  c.validate();
  return c;
}

// Standard bases.
inline FiniteCategory chain_category(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> below;
  for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) below.push_back({i, i + 1});
  return poset_category(names, below);
}

inline FiniteCategory diamond_category() {
  // bottom b, middles m1 m2, top t
  return poset_category({"b", "m1", "m2", "t"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

// Meet-semilattice structure on a poset category.
struct MeetStructure {
  int top = -1;
  std::vector<std::vector<int>> meet;  // greatest lower bound
};

inline std::optional<MeetStructure> meet_semilattice(const FiniteCategory& c) {
  if (!c.is_poset()) return std::nullopt;
  int n = c.n_objects();
  MeetStructure m;
  for (int t = 0; t < n; ++t) {
    bool top = true;
    for (int a = 0; a < n; ++a) top = top && c.leq(a, t);
    if (top) {
      m.top = t;
      break;
    }
  }
  if (m.top < 0) return std::nullopt;
  m.meet.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int best = -1;
      for (int x = 0; x < n; ++x) {
        if (!c.leq(x, a) || !c.leq(x, b)) continue;
        if (best < 0 || c.leq(best, x)) best = x;
      }
      if (best < 0) return std::nullopt;
      for (int x = 0; x < n; ++x)
        if (c.leq(x, a) && c.leq(x, b) && !c.leq(x, best)) return std::nullopt;
      m.meet[a][b] = best;
    }
  return m;
}

// ---------------------------------------------------------------------------
// Copresheaves and natural transformations

struct Copresheaf {
  std::vector<int> sizes;               // per object
  std::map<int, std::vector<int>> maps; // per arrow: table of length sizes[src]

  bool functorial(const FiniteCategory& c) const {
    if (static_cast<int>(sizes.size()) != c.n_objects()) return false;
    for (int f = 0; f < c.n_arrows(); ++f) {
      auto it = maps.find(f);
      if (it == maps.end()) return false;
      const auto& t = it->second;
      if (static_cast<int>(t.size()) != sizes[c.arrows[f].src]) return false;
      for (int v : t)
        if (v < 0 || v >= sizes[c.arrows[f].tgt]) return false;
    }
    for (int a = 0; a < c.n_objects(); ++a) {
      const auto& id = maps.at(c.identity[a]);
      for (int i = 0; i < sizes[a]; ++i)
        if (id[i] != i) return false;
    }
    for (int g = 0; g < c.n_arrows(); ++g)
      for (int f = 0; f < c.n_arrows(); ++f) {
        if (c.arrows[f].tgt != c.arrows[g].src) continue;
        int gf = c.comp[g][f];
        for (int i = 0; i < sizes[c.arrows[f].src]; ++i)
          if (maps.at(g)[maps.at(f)[i]] != maps.at(gf)[i]) return false;
      }
    return true;
  }

  friend bool operator==(const Copresheaf&, const Copresheaf&) = default;
};

struct NatTransformation {
  std::vector<std::vector<int>> at;  // per object: K(c) -> L(c)

  bool natural(const FiniteCategory& c, const Copresheaf& k, const Copresheaf& l) const {
    if (static_cast<int>(at.size()) != c.n_objects()) return false;
    for (int a = 0; a < c.n_objects(); ++a) {
      if (static_cast<int>(at[a].size()) != k.sizes[a]) return false;
      for (int v : at[a])
        if (v < 0 || v >= l.sizes[a]) return false;
    }
    for (int f = 0; f < c.n_arrows(); ++f) {
      int a = c.arrows[f].src, b = c.arrows[f].tgt;
      for (int i = 0; i < k.sizes[a]; ++i)
        if (l.maps.at(f)[at[a][i]] != at[b][k.maps.at(f)[i]]) return false;
    }
    return true;
  }

  bool pointwise_surjective(const Copresheaf& l) const {
    for (std::size_t a = 0; a < at.size(); ++a) {
      std::set<int> img(at[a].begin(), at[a].end());
      if (static_cast<int>(img.size()) != l.sizes[a]) return false;
    }
    return true;
  }

  bool pointwise_injective() const {
    for (const auto& comp : at) {
      std::set<int> img(comp.begin(), comp.end());
      if (img.size() != comp.size()) return false;
    }
    return true;
  }

  friend bool operator==(const NatTransformation&, const NatTransformation&) = default;
};

inline NatTransformation nat_compose(const NatTransformation& second,
                                     const NatTransformation& first) {
  NatTransformation out;
  out.at.resize(first.at.size());
  for (std::size_t a = 0; a < first.at.size(); ++a) {
    out.at[a].resize(first.at[a].size());
    for (std::size_t i = 0; i < first.at[a].size(); ++i)
      out.at[a][i] = second.at[a][first.at[a][i]];
  }
  return out;
}

inline NatTransformation nat_identity(const Copresheaf& k) {
  NatTransformation out;
  for (int s : k.sizes) {
    std::vector<int> id(s);
    for (int i = 0; i < s; ++i) id[i] = i;
    out.at.push_back(id);
  }
  return out;
}

// All natural transformations K -> L, in lexicographic component order.
inline std::vector<NatTransformation> enumerate_nats(const FiniteCategory& c,
                                                     const Copresheaf& k, const Copresheaf& l,
                                                     long cap = 2000000) {
  long combos = 1;
  for (int a = 0; a < c.n_objects(); ++a) {
    for (int i = 0; i < k.sizes[a]; ++i) {
      combos *= std::max(1, l.sizes[a]);
      if (combos > cap) throw LabError("transformation enumeration exceeds the cap");
    }
    if (k.sizes[a] > 0 && l.sizes[a] == 0) return {};
  }

  std::vector<NatTransformation> out;
  NatTransformation cur;
  cur.at.resize(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a) cur.at[a].assign(k.sizes[a], 0);

  bool done = false;
  while (!done) {
    if (cur.natural(c, k, l)) out.push_back(cur);
    done = true;
    for (int a = c.n_objects() - 1; a >= 0 && done; --a)
      for (int i = k.sizes[a] - 1; i >= 0 && done; --i) {
        if (++cur.at[a][i] < l.sizes[a]) {
          done = false;
          break;
        }
        cur.at[a][i] = 0;
      }
    // all-zero wraparound means the space is exhausted
    if (done) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Yoneda

inline Copresheaf yoneda(const FiniteCategory& c, int obj) {
  Copresheaf k;
  std::vector<std::vector<int>> homs(c.n_objects());
  for (int d = 0; d < c.n_objects(); ++d) homs[d] = c.hom(obj, d);
  for (int d = 0; d < c.n_objects(); ++d) k.sizes.push_back(static_cast<int>(homs[d].size()));
  for (int h = 0; h < c.n_arrows(); ++h) {
    int d = c.arrows[h].src, e = c.arrows[h].tgt;
    std::vector<int> table;
    for (int f : homs[d]) {
      int hf = c.compose(h, f);
      auto it = std::find(homs[e].begin(), homs[e].end(), hf);
      table.push_back(static_cast<int>(it - homs[e].begin()));
    }
    k.maps[h] = table;
  }
  return k;
}

struct YonedaBijection {
  std::vector<NatTransformation> nats;   // all of Nat(y(c), K)
  std::vector<int> value_at_identity;    // nats[i] corresponds to K(c) element
  bool is_bijection = false;
};

inline YonedaBijection yoneda_bijection(const FiniteCategory& c, int obj, const Copresheaf& k) {
  Copresheaf yc = yoneda(c, obj);
  YonedaBijection out;
  out.nats = enumerate_nats(c, yc, k);

  // Position of the identity inside hom(c, c).
  auto homcc = c.hom(obj, obj);
  auto idpos = std::find(homcc.begin(), homcc.end(), c.identity[obj]) - homcc.begin();

  std::set<int> seen;
  for (const auto& n : out.nats) {
    int v = n.at[obj][idpos];
    out.value_at_identity.push_back(v);
    seen.insert(v);
  }
  out.is_bijection = static_cast<int>(out.nats.size()) == k.sizes[obj] &&
                     static_cast<int>(seen.size()) == k.sizes[obj];

  // The inverse direction: each element induces the transformation
  // f |-> K(f)(x); confirm it is the paired one.
  if (out.is_bijection) {
    for (std::size_t i = 0; i < out.nats.size(); ++i) {
      int x = out.value_at_identity[i];
      for (int d = 0; d < c.n_objects(); ++d) {
        auto homcd = c.hom(obj, d);
        for (std::size_t j = 0; j < homcd.size(); ++j)
          if (out.nats[i].at[d][j] != k.maps.at(homcd[j])[x]) out.is_bijection = false;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Image factorization

struct ImageFactorization {
  Copresheaf image;
  NatTransformation epi;   // K -> image, pointwise surjective
  NatTransformation mono;  // image -> L, pointwise injective
};

inline ImageFactorization image_factorization(const FiniteCategory& c, const Copresheaf& k,
                                              const Copresheaf& l,
                                              const NatTransformation& eta) {
  if (!eta.natural(c, k, l)) throw LabError("factorizing a non-natural transformation");
  ImageFactorization out;
  std::vector<std::vector<int>> elems(c.n_objects());  // image elements as L-values
  for (int a = 0; a < c.n_objects(); ++a) {
    std::set<int> img(eta.at[a].begin(), eta.at[a].end());
    elems[a].assign(img.begin(), img.end());
    out.image.sizes.push_back(static_cast<int>(elems[a].size()));
  }
  auto pos = [&](int a, int v) {
    auto it = std::find(elems[a].begin(), elems[a].end(), v);
    if (it == elems[a].end()) throw LabError("image closure failure");
    return static_cast<int>(it - elems[a].begin());
  };
  for (int f = 0; f < c.n_arrows(); ++f) {
    int a = c.arrows[f].src, b = c.arrows[f].tgt;
    std::vector<int> table;
    for (int v : elems[a]) table.push_back(pos(b, l.maps.at(f)[v]));
    out.image.maps[f] = table;
  }
  out.epi.at.resize(c.n_objects());
  out.mono.at.resize(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a) {
    for (int i = 0; i < k.sizes[a]; ++i) out.epi.at[a].push_back(pos(a, eta.at[a][i]));
    out.mono.at[a] = elems[a];
  }
  if (!out.image.functorial(c) || !out.epi.natural(c, k, out.image) ||
      !out.mono.natural(c, out.image, l))
    throw LabError("image factorization is not natural");
  if (nat_compose(out.mono, out.epi) != eta) throw LabError("factorization does not compose");
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration of copresheaves on poset bases

// All copresheaves with value sizes <= cap; when cartesian_only is set, only
// finite-limit-preserving ones over the meet-semilattice structure.
inline std::vector<Copresheaf> enumerate_copresheaves(const FiniteCategory& c, int cap,
                                                      bool cartesian_only,
                                                      long combo_cap = 5000000) {
  if (!c.is_poset()) throw LabError("copresheaf enumeration needs a poset base");
  auto ms = meet_semilattice(c);
  if (cartesian_only && !ms) throw LabError("cartesian enumeration needs meets and a top");

  int n = c.n_objects();
  // Covering edges of the Hasse diagram.
  std::vector<std::pair<int, int>> covers;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !c.leq(a, b)) continue;
      bool cover = true;
      for (int x = 0; x < n && cover; ++x)
        if (x != a && x != b && c.leq(a, x) && c.leq(x, b)) cover = false;
      if (cover) covers.push_back({a, b});
    }

  std::vector<Copresheaf> out;
  std::vector<int> sizes(n, cartesian_only ? 1 : 0);

  std::function<void(int)> size_loop = [&](int obj) {
    if (obj == n) {
      if (cartesian_only) {
        if (sizes[ms->top] != 1) return;
        // |K(a /\ b)| = |K(a)| * |K(b)| is necessary; the bijectivity of the
        // canonical map is checked after the maps are chosen.
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (sizes[ms->meet[a][b]] > sizes[a] * sizes[b]) return;
      }
      // Enumerate cover maps.
      std::vector<std::vector<int>> tables(covers.size());
      long combos = 1;
      for (std::size_t e = 0; e < covers.size(); ++e) {
        long options = 1;
        for (int i = 0; i < sizes[covers[e].first]; ++i) options *= sizes[covers[e].second];
        combos *= std::max(1L, options);
        if (combos > combo_cap) throw LabError("copresheaf enumeration exceeds the cap");
      }
      std::function<void(std::size_t)> map_loop = [&](std::size_t e) {
        if (e == covers.size()) {
          // Extend cover tables to all arrows by path composition; reject on
          // path disagreement.
          Copresheaf k;
          k.sizes = sizes;
          bool ok = true;
          for (int f = 0; f < c.n_arrows() && ok; ++f) {
            int a = c.arrows[f].src, b = c.arrows[f].tgt;
            // Find any cover path a -> ... -> b by breadth-first search.
            if (a == b) {
              std::vector<int> id(sizes[a]);
              for (int i = 0; i < sizes[a]; ++i) id[i] = i;
              k.maps[f] = id;
              continue;
            }
            // compose along one path
            std::vector<int> cur(sizes[a]);
            for (int i = 0; i < sizes[a]; ++i) cur[i] = i;
            std::function<bool(int)> walk = [&](int at) -> bool {
              if (at == b) return true;
              for (std::size_t e2 = 0; e2 < covers.size(); ++e2) {
                if (covers[e2].first != at || !c.leq(covers[e2].second, b)) continue;
                std::vector<int> next(cur.size());
                for (std::size_t i = 0; i < cur.size(); ++i)
                  next[i] = tables[e2][cur[i]];
                std::vector<int> save = cur;
                cur = next;
                if (walk(covers[e2].second)) return true;
                cur = save;
              }
              return false;
            };
            if (!walk(a)) {
              ok = false;
              break;
            }
            k.maps[f] = cur;
          }
          if (!ok) return;
          if (!k.functorial(c)) return;  // path independence and laws
          if (cartesian_only) {
            // terminal: K(top) a singleton (already framed by sizes);
            // meets: the canonical pairing K(a /\ b) -> K(a) x K(b) bijective.
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b) {
                int ab = ms->meet[a][b];
                int fa = c.hom(ab, a)[0], fb = c.hom(ab, b)[0];
                std::set<std::pair<int, int>> pairs;
                for (int i = 0; i < k.sizes[ab]; ++i)
                  pairs.insert({k.maps.at(fa)[i], k.maps.at(fb)[i]});
                if (static_cast<int>(pairs.size()) != k.sizes[ab] ||
                    k.sizes[ab] != k.sizes[a] * k.sizes[b])
                  return;
              }
          }
          out.push_back(k);
          return;
        }
        int a = covers[e].first, b = covers[e].second;
        long options = 1;
        for (int i = 0; i < sizes[a]; ++i) options *= sizes[b];
        if (sizes[a] > 0 && sizes[b] == 0) return;  // no functions into empty
        std::vector<int> t(sizes[a], 0);
        for (long w = 0; w < std::max(1L, options); ++w) {
          tables[e] = t;
          map_loop(e + 1);
          for (int i = sizes[a] - 1; i >= 0; --i) {
            if (++t[i] < sizes[b]) break;
            t[i] = 0;
          }
        }
      };
      map_loop(0);
      return;
    }
    for (int s = 0; s <= cap; ++s) {
      sizes[obj] = s;
      size_loop(obj + 1);
    }
  };
  size_loop(0);
  return out;
}

// ---------------------------------------------------------------------------
// Projectivity, retracts, representability

enum class EpiPool { Cartesian, All };

// true iff every pointwise-surjective transformation onto P from a copresheaf
// within the cap admits a section.
inline bool is_projective(const FiniteCategory& c, const Copresheaf& p, int cap,
                          EpiPool pool = EpiPool::Cartesian) {
  auto candidates = enumerate_copresheaves(c, cap, pool == EpiPool::Cartesian);
  for (const auto& q : candidates) {
    for (const auto& e : enumerate_nats(c, q, p)) {
      if (!e.pointwise_surjective(p)) continue;
      bool has_section = false;
      for (const auto& s : enumerate_nats(c, p, q))
        if (nat_compose(e, s) == nat_identity(p)) {
          has_section = true;
          break;
        }
      if (!has_section) return false;
    }
  }
  return true;
}

inline bool is_retract_of_representable(const FiniteCategory& c, const Copresheaf& p) {
  for (int obj = 0; obj < c.n_objects(); ++obj) {
    Copresheaf yc = yoneda(c, obj);
    for (const auto& r : enumerate_nats(c, yc, p))
      for (const auto& s : enumerate_nats(c, p, yc))
        if (nat_compose(r, s) == nat_identity(p)) return true;
  }
  return false;
}

inline std::optional<int> representing_object(const FiniteCategory& c, const Copresheaf& p) {
  for (int obj = 0; obj < c.n_objects(); ++obj) {
    Copresheaf yc = yoneda(c, obj);
    for (const auto& f : enumerate_nats(c, yc, p))
      for (const auto& g : enumerate_nats(c, p, yc))
        if (nat_compose(f, g) == nat_identity(p) && nat_compose(g, f) == nat_identity(yc))
          return obj;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cauchy completeness: every idempotent splits

inline bool is_cauchy_complete(const FiniteCategory& c) {
  for (int e = 0; e < c.n_arrows(); ++e) {
    if (c.arrows[e].src != c.arrows[e].tgt) continue;
    if (c.compose(e, e) != e) continue;
    bool splits = false;
    for (int d = 0; d < c.n_objects() && !splits; ++d)
      for (int r : c.hom(c.arrows[e].src, d))
        for (int s : c.hom(d, c.arrows[e].src))
          if (c.compose(s, r) == e && c.compose(r, s) == c.identity[d]) {
            splits = true;
            break;
          }
    if (!splits) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The representable characterization at desk scale

struct CharacterizationRow {
  Copresheaf copresheaf;
  bool projective = false;
  bool retract_of_representable = false;
  bool representable = false;
};

struct CharacterizationReport {
  std::vector<CharacterizationRow> rows;
  bool equivalence_holds = true;
  int n_cartesian = 0;
};

inline CharacterizationReport verify_representable_characterization(const FiniteCategory& c,
                                                                    int cap) {
  if (!meet_semilattice(c))
    throw LabError("the characterization check needs a meet-semilattice with top");
  if (!is_cauchy_complete(c)) throw LabError("base category is not Cauchy-complete");

  CharacterizationReport report;
  for (const auto& k : enumerate_copresheaves(c, cap, /*cartesian_only=*/true)) {
    CharacterizationRow row;
    row.copresheaf = k;
    row.projective = is_projective(c, k, cap, EpiPool::Cartesian);
    row.retract_of_representable = is_retract_of_representable(c, k);
    row.representable = representing_object(c, k).has_value();
    if (row.projective != row.retract_of_representable ||
        row.projective != row.representable)
      report.equivalence_holds = false;
    report.rows.push_back(row);
    ++report.n_cartesian;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Representation embeddings (desk-scale data: images of representables)

struct EmbeddingCheck {
  bool valid = false;
  std::string reason;
  std::vector<int> induced_object_map;  // representing object in the target
  // Witness for a failed epi preservation/reflection: the pair of base
  // objects and the direction that failed.
  std::optional<std::string> witness;
};

inline EmbeddingCheck check_representation_embedding(
    const FiniteCategory& c1, const FiniteCategory& c2,
    const std::vector<Copresheaf>& images /* per object of c1 */) {
  EmbeddingCheck out;
  if (static_cast<int>(images.size()) != c1.n_objects()) {
    out.reason = "one image per representable is required";
    return out;
  }

  // Every representable must land on a representable.
  out.induced_object_map.assign(c1.n_objects(), -1);
  for (int c = 0; c < c1.n_objects(); ++c) {
    auto rep = representing_object(c2, images[c]);
    if (!rep) {
      out.reason = "image of y(" + c1.objects[c] + ") is not representable";
      return out;
    }
    out.induced_object_map[c] = *rep;
  }

  // Transformations between representables and their images. On poset bases
  // there is at most one either side, so the action is forced.
  for (int c = 0; c < c1.n_objects(); ++c)
    for (int d = 0; d < c1.n_objects(); ++d) {
      auto src_nats = enumerate_nats(c1, yoneda(c1, c), yoneda(c1, d));
      auto img_nats = enumerate_nats(c2, images[c], images[d]);
      if (src_nats.empty()) continue;
      if (src_nats.size() > 1 || img_nats.size() > 1) {
        out.reason = "ambiguous transformation action; poset bases expected";
        return out;
      }
      if (img_nats.empty()) {
        out.reason = "no image for the transformation y(" + c1.objects[c] + ") -> y(" +
                     c1.objects[d] + ")";
        out.witness = c1.objects[c] + "->" + c1.objects[d];
        return out;
      }
      bool src_epi = src_nats[0].pointwise_surjective(yoneda(c1, d));
      bool img_epi = img_nats[0].pointwise_surjective(images[d]);
      if (src_epi && !img_epi) {
        out.reason = "fails to preserve an epimorphism";
        out.witness = c1.objects[c] + "->" + c1.objects[d];
        return out;
      }
      if (!src_epi && img_epi) {
        out.reason = "fails to reflect an epimorphism: a non-epi maps to an epi";
        out.witness = c1.objects[c] + "->" + c1.objects[d];
        return out;
      }
    }

  out.valid = true;
  out.reason = "ok";
  return out;
}

}  // namespace cartlog

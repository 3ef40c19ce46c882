#include <doctest.h>

#include "gen.hpp"

using namespace cartlog;

namespace {

// Random functorial copresheaf on a poset base, by rejection.
Copresheaf random_copresheaf(gen::Rng& rng, const FiniteCategory& c, int cap) {
  while (true) {
    Copresheaf k;
    for (int i = 0; i < c.n_objects(); ++i) k.sizes.push_back(1 + rng.pick(cap));
    for (int f = 0; f < c.n_arrows(); ++f) {
      int a = c.arrows[f].src, b = c.arrows[f].tgt;
      std::vector<int> t;
      if (a == c.arrows[f].tgt && f == c.identity[a]) {
        t = gen::identity_table(k.sizes[a]);
      } else {
        for (int i = 0; i < k.sizes[a]; ++i) t.push_back(rng.pick(k.sizes[b]));
      }
      k.maps[f] = t;
    }
    if (k.functorial(c)) return k;
  }
}

}  // namespace

TEST_CASE("yoneda on the two-chain") {
  auto c = chain_category(2);  // c0 <= c1
  Copresheaf y_top = yoneda(c, 1);
  CHECK(y_top.sizes == std::vector<int>{0, 1});
  Copresheaf y_bot = yoneda(c, 0);
  CHECK(y_bot.sizes == std::vector<int>{1, 1});
}

TEST_CASE("yoneda on the one-object one-arrow category") {
  auto c = poset_category({"pt"}, {});
  Copresheaf y = yoneda(c, 0);
  CHECK(y.sizes == std::vector<int>{1});
}

TEST_CASE("yoneda bijection pairs the identity with the identity") {
  auto c = chain_category(2);
  Copresheaf yc = yoneda(c, 0);
  auto b = yoneda_bijection(c, 0, yc);
  CHECK(b.is_bijection);
  REQUIRE(b.nats.size() == 1);
  CHECK(b.nats[0] == nat_identity(yc));
}

TEST_CASE("a constant singleton admits exactly one transformation from any representable") {
  auto c = chain_category(3);
  Copresheaf constant;
  constant.sizes = {1, 1, 1};
  for (int f = 0; f < c.n_arrows(); ++f) constant.maps[f] = {0};
  REQUIRE(constant.functorial(c));
  for (int obj = 0; obj < 3; ++obj) {
    auto b = yoneda_bijection(c, obj, constant);
    CHECK(b.is_bijection);
    CHECK(b.nats.size() == 1);
  }
}

TEST_CASE("the bijection counts hold for random copresheaves") {
  gen::Rng rng(515);
  auto c = chain_category(2);
  for (int round = 0; round < 20; ++round) {
    Copresheaf k = random_copresheaf(rng, c, 3);
    for (int obj = 0; obj < c.n_objects(); ++obj) {
      auto b = yoneda_bijection(c, obj, k);
      CHECK(b.is_bijection);
      CHECK(static_cast<int>(b.nats.size()) == k.sizes[obj]);
    }
  }
}

TEST_CASE("the yoneda bijection is natural in both arguments") {
  gen::Rng rng(226);
  auto c = chain_category(2);
  Copresheaf k = random_copresheaf(rng, c, 3);
  // naturality in the object: for h : c0 -> c1,
  //   value_at_identity(eta o y(h)) == K(h)(value_at_identity(eta))
  int h = -1;
  for (int f = 0; f < c.n_arrows(); ++f)
    if (c.arrows[f].src == 0 && c.arrows[f].tgt == 1) h = f;
  REQUIRE(h >= 0);
  Copresheaf y0 = yoneda(c, 0), y1 = yoneda(c, 1);

  // y(h) : y(c1) -> y(c0) acts by precomposition
  auto yh = enumerate_nats(c, y1, y0);
  REQUIRE(yh.size() == 1);
  for (const auto& eta : enumerate_nats(c, y0, k)) {
    NatTransformation shifted = nat_compose(eta, yh[0]);  // y(c1) -> K
    // values at the identities
    int v0 = eta.at[0][0];
    int v1 = shifted.at[1][0];
    CHECK(v1 == k.maps.at(h)[v0]);
  }
  // naturality in K: post-composition commutes with the pairing
  Copresheaf l = random_copresheaf(rng, c, 3);
  for (const auto& mu : enumerate_nats(c, k, l))
    for (const auto& eta : enumerate_nats(c, y0, k))
      CHECK(nat_compose(mu, eta).at[0][0] == mu.at[0][eta.at[0][0]]);
}

TEST_CASE("image factorization of the identity is the identity") {
  gen::Rng rng(31);
  auto c = chain_category(2);
  Copresheaf k = random_copresheaf(rng, c, 3);
  auto f = image_factorization(c, k, k, nat_identity(k));
  CHECK(f.image.sizes == k.sizes);
  CHECK(f.epi == nat_identity(k));
}

TEST_CASE("image factorization of a collapse is the generated point") {
  auto c = chain_category(2);
  Copresheaf k;
  k.sizes = {2, 2};
  k.maps[c.identity[0]] = {0, 1};
  k.maps[c.identity[1]] = {0, 1};
  for (int f = 0; f < c.n_arrows(); ++f)
    if (c.arrows[f].src == 0 && c.arrows[f].tgt == 1) k.maps[f] = {0, 1};
  REQUIRE(k.functorial(c));
  NatTransformation collapse;
  collapse.at = {{0, 0}, {0, 0}};
  REQUIRE(collapse.natural(c, k, k));
  auto f = image_factorization(c, k, k, collapse);
  CHECK(f.image.sizes == std::vector<int>{1, 1});
  CHECK(f.epi.pointwise_surjective(f.image));
  CHECK(f.mono.pointwise_injective());
}

TEST_CASE("random factorizations verify componentwise and are unique up to unique iso") {
  gen::Rng rng(77);
  auto c = chain_category(2);
  for (int round = 0; round < 20; ++round) {
    Copresheaf k = random_copresheaf(rng, c, 3);
    Copresheaf l = random_copresheaf(rng, c, 3);
    auto nats = enumerate_nats(c, k, l);
    if (nats.empty()) continue;
    const auto& eta = nats[rng.pick(static_cast<int>(nats.size()))];
    auto f = image_factorization(c, k, l, eta);
    CHECK(nat_compose(f.mono, f.epi) == eta);
    CHECK(f.epi.pointwise_surjective(f.image));
    CHECK(f.mono.pointwise_injective());

    // uniqueness of the comparison: exactly one endomorphism of the image
    // commutes with both legs, and it is the identity
    int count = 0;
    for (const auto& g : enumerate_nats(c, f.image, f.image))
      if (nat_compose(g, f.epi) == f.epi && nat_compose(f.mono, g) == f.mono) {
        CHECK(g == nat_identity(f.image));
        ++count;
      }
    CHECK(count == 1);
  }
}

TEST_CASE("representables are projective") {
  for (const auto& c : {chain_category(2), chain_category(3), diamond_category()}) {
    for (int obj = 0; obj < c.n_objects(); ++obj) {
      Copresheaf y = yoneda(c, obj);
      CHECK(is_projective(c, y, 2, EpiPool::Cartesian));
      CHECK(is_projective(c, y, 2, EpiPool::All));
    }
  }
}

TEST_CASE("the empty copresheaf is projective") {
  auto c = chain_category(2);
  Copresheaf empty;
  empty.sizes = {0, 0};
  for (int f = 0; f < c.n_arrows(); ++f) empty.maps[f] = {};
  REQUIRE(empty.functorial(c));
  CHECK(is_projective(c, empty, 2, EpiPool::All));
  CHECK(is_retract_of_representable(c, empty) == false);
}

TEST_CASE("a two-point fiber over the top is projective but not a retract") {
  // P(c0) empty, P(c1) two points: projective by the brute-force search in
  // the full functor category, yet not a retract of a single representable;
  // P is not cartesian, so the characterization does not apply to it.
  auto c = chain_category(2);
  Copresheaf p;
  p.sizes = {0, 2};
  p.maps[c.identity[0]] = {};
  p.maps[c.identity[1]] = {0, 1};
  for (int f = 0; f < c.n_arrows(); ++f)
    if (c.arrows[f].src == 0 && c.arrows[f].tgt == 1) p.maps[f] = {};
  REQUIRE(p.functorial(c));
  CHECK(is_projective(c, p, 2, EpiPool::All));
  CHECK_FALSE(is_retract_of_representable(c, p));
  // not cartesian: the top value is not a singleton
  bool found = false;
  for (const auto& k : enumerate_copresheaves(c, 2, /*cartesian_only=*/true))
    if (k.sizes == p.sizes) found = true;
  CHECK_FALSE(found);
}

TEST_CASE("posets are Cauchy-complete; an unsplit idempotent is detected") {
  CHECK(is_cauchy_complete(chain_category(3)));
  CHECK(is_cauchy_complete(diamond_category()));

  FiniteCategory m;
  m.objects = {"pt"};
  m.arrows = {{"one", 0, 0}, {"e", 0, 0}};
  m.identity = {0};
  m.comp = {{0, 1}, {1, 1}};
  m.validate();
  CHECK_FALSE(is_cauchy_complete(m));

  // adjoin a splitting object by hand
  FiniteCategory split;
  split.objects = {"pt", "s"};
  split.arrows = {{"one", 0, 0}, {"e", 0, 0}, {"r", 0, 1}, {"q", 1, 0}, {"id_s", 1, 1}};
  split.identity = {0, 4};
  // comp[g][f]: rows g, cols f; -1 when not composable
  split.comp = {
      {0, 1, -1, 3, -1},   // one . f
      {1, 1, -1, 3, -1},   // e . f   (e o q = q after r o q = id_s gives q)
      {2, 2, -1, 4, -1},   // r . f   (r o e = r, r o q = id_s)
      {-1, -1, 1, -1, 3},  // q . f   (q o r = e, q o id_s = q)
      {-1, -1, 2, -1, 4},  // id_s . f
  };
  split.validate();
  CHECK(is_cauchy_complete(split));
}

TEST_CASE("epis and monos are exactly the pointwise surjections and injections") {
  auto c = chain_category(2);
  auto pool = enumerate_copresheaves(c, 2, /*cartesian_only=*/false);
  gen::Rng rng(4444);
  Copresheaf k = random_copresheaf(rng, c, 2);
  Copresheaf l = random_copresheaf(rng, c, 2);
  for (const auto& eta : enumerate_nats(c, k, l)) {
    // epi by cancellation: for every pair into a small test object
    bool cancellable_epi = true;
    for (const auto& w : pool) {
      auto outs = enumerate_nats(c, l, w);
      for (std::size_t i = 0; i < outs.size() && cancellable_epi; ++i)
        for (std::size_t j = i + 1; j < outs.size() && cancellable_epi; ++j)
          if (nat_compose(outs[i], eta) == nat_compose(outs[j], eta))
            cancellable_epi = false;
    }
    CHECK(cancellable_epi == eta.pointwise_surjective(l));

    bool cancellable_mono = true;
    for (const auto& w : pool) {
      auto ins = enumerate_nats(c, w, k);
      for (std::size_t i = 0; i < ins.size() && cancellable_mono; ++i)
        for (std::size_t j = i + 1; j < ins.size() && cancellable_mono; ++j)
          if (nat_compose(eta, ins[i]) == nat_compose(eta, ins[j]))
            cancellable_mono = false;
    }
    CHECK(cancellable_mono == eta.pointwise_injective());
  }
}

TEST_CASE("the characterization holds on the standard bases") {
  for (const auto& c : {chain_category(2), chain_category(3), diamond_category()}) {
    auto report = verify_representable_characterization(c, 3);
    CHECK(report.equivalence_holds);
    CHECK(report.n_cartesian >= c.n_objects());  // at least the representables
    int representables = 0;
    for (const auto& row : report.rows)
      if (row.representable) ++representables;
    CHECK(representables == c.n_objects());
  }
}

TEST_CASE("the singleton base has a unique representable and unique projective") {
  auto c = poset_category({"pt"}, {});
  auto report = verify_representable_characterization(c, 3);
  CHECK(report.equivalence_holds);
  CHECK(report.n_cartesian == 1);
  CHECK(report.rows[0].representable);
  CHECK(report.rows[0].projective);
}

TEST_CASE("the identity assignment is a valid embedding") {
  auto c = diamond_category();
  std::vector<Copresheaf> images;
  for (int i = 0; i < c.n_objects(); ++i) images.push_back(yoneda(c, i));
  auto r = check_representation_embedding(c, c, images);
  CHECK(r.valid);
  for (int i = 0; i < c.n_objects(); ++i) CHECK(r.induced_object_map[i] == i);
}

TEST_CASE("collapsing everything to the terminal fails to reflect epis") {
  auto c = chain_category(2);
  // the constant singleton is y(c0); assign it to both objects
  std::vector<Copresheaf> images{yoneda(c, 0), yoneda(c, 0)};
  auto r = check_representation_embedding(c, c, images);
  CHECK_FALSE(r.valid);
  REQUIRE(r.witness);
  CHECK(r.reason.find("reflect") != std::string::npos);
}

TEST_CASE("precomposition along a meet-preserving surjection checks exhaustively") {
  // collapse the 3-chain onto the 2-chain: c0, c1 |-> a; c2 |-> t.
  auto c2 = chain_category(2);
  auto c3 = chain_category(3);
  auto precompose = [&](int obj2) {
    // E(y(obj2))(d) = hom_{2-chain}(obj2, f(d)) where f collapses as above
    Copresheaf k;
    std::vector<int> fd{0, 0, 1};
    for (int d = 0; d < 3; ++d)
      k.sizes.push_back(static_cast<int>(c2.hom(obj2, fd[d]).size()));
    for (int a = 0; a < c3.n_arrows(); ++a) {
      int s = c3.arrows[a].src, t = c3.arrows[a].tgt;
      std::vector<int> table;
      for (int i = 0; i < k.sizes[s]; ++i) table.push_back(i < k.sizes[t] ? i : 0);
      k.maps[a] = table;
    }
    REQUIRE(k.functorial(c3));
    return k;
  };
  std::vector<Copresheaf> images{precompose(0), precompose(1)};
  auto r = check_representation_embedding(c2, c3, images);
  CHECK(r.valid);
  CHECK(r.induced_object_map[0] == 0);  // a |-> c0 (constant singleton)
  CHECK(r.induced_object_map[1] == 2);  // t |-> c2
}

TEST_CASE("an image that is not representable is rejected") {
  auto c = chain_category(2);
  Copresheaf fat;
  fat.sizes = {2, 2};
  fat.maps[c.identity[0]] = {0, 1};
  fat.maps[c.identity[1]] = {0, 1};
  for (int f = 0; f < c.n_arrows(); ++f)
    if (c.arrows[f].src == 0 && c.arrows[f].tgt == 1) fat.maps[f] = {0, 1};
  REQUIRE(fat.functorial(c));
  auto r = check_representation_embedding(c, c, {fat, yoneda(c, 1)});
  CHECK_FALSE(r.valid);
  CHECK(r.reason.find("not representable") != std::string::npos);
}

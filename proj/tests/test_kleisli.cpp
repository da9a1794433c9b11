#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "kleislilab/kleisli.hpp"
#include "kleislilab/quantale.hpp"

using namespace klab;

namespace {

FinSet pts(int n) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i)));
  return FinSet::ordered(std::move(ids));
}

// Structure whose value at each point is the set of predecessors under leq.
KleisliMonoid p_structure(int n, const std::function<bool(int, int)>& leq) {
  KleisliMonoid s{MonadInstance::make_p(), pts(n), {}};
  for (int j = 0; j < n; ++j) {
    TElem e;
    e.kind = MonadKind::P;
    e.set = Bitset(n);
    for (int i = 0; i < n; ++i)
      if (leq(i, j)) e.set.set(i);
    s.alpha.push_back(std::move(e));
  }
  return s;
}

std::vector<std::vector<std::uint64_t>> structure_keys(const std::vector<KleisliMonoid>& ms) {
  std::vector<std::vector<std::uint64_t>> keys;
  for (const auto& s : ms) {
    std::vector<std::uint64_t> k;
    for (const TElem& e : s.alpha) k.push_back(e.set.mask());
    keys.push_back(std::move(k));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

TEST_CASE("subset structures on small carriers are exactly the preorders") {
  auto p = MonadInstance::make_p();
  for (int n : {2, 3}) {
    // reflexive transitive relation matrices, rows as alpha masks
    std::vector<std::vector<std::uint64_t>> expected;
    int cells = n * n;
    for (std::uint64_t rel = 0; rel < (std::uint64_t{1} << cells); ++rel) {
      auto has = [&](int i, int j) { return (rel >> (i * n + j) & 1) == 1; };
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        if (!has(i, i)) ok = false;
      for (int i = 0; i < n && ok; ++i)
        for (int z = 0; z < n && ok; ++z)
          for (int w = 0; w < n && ok; ++w)
            if (has(i, z) && has(z, w) && !has(i, w)) ok = false;
      if (!ok) continue;
      std::vector<std::uint64_t> key;
      for (int i = 0; i < n; ++i) {
        std::uint64_t row = 0;
        for (int j = 0; j < n; ++j)
          if (has(i, j)) row |= std::uint64_t{1} << j;
        key.push_back(row);
      }
      expected.push_back(std::move(key));
    }
    std::sort(expected.begin(), expected.end());
    REQUIRE(expected.size() == (n == 2 ? 4u : 29u));

    std::vector<KleisliMonoid> found = enumerate_monoids(p, pts(n));
    CHECK(structure_keys(found) == expected);
  }
}

TEST_CASE("filter structures coincide with subset structures through generators") {
  for (int n : {2, 3}) {
    auto from_p = structure_keys(enumerate_monoids(MonadInstance::make_p(), pts(n)));
    auto from_f = structure_keys(enumerate_monoids(MonadInstance::make_f(), pts(n)));
    CHECK(from_p == from_f);
  }
}

TEST_CASE("interior structures on two points counted from first principles") {
  auto u = MonadInstance::make_u();
  int n = 2;

  // every pair of up-closed families, with the laws spelled out on raw masks
  std::vector<std::uint64_t> fams;
  for (std::uint64_t fam = 0; fam < 16; ++fam) {
    bool up = true;
    for (int m = 0; m < 4 && up; ++m)
      for (int mm = 0; mm < 4 && up; ++mm)
        if ((fam >> m & 1) && (m & mm) == m && !(fam >> mm & 1)) up = false;
    if (up) fams.push_back(fam);
  }
  REQUIRE(fams.size() == 6);

  std::vector<std::vector<std::uint64_t>> expected;
  for (std::uint64_t fa : fams)
    for (std::uint64_t fb : fams) {
      std::uint64_t al[2] = {fa, fb};
      // unit at i holds the subsets containing i; reverse inclusion order
      auto unit_fam = [&](int i) {
        std::uint64_t f = 0;
        for (int m = 0; m < 4; ++m)
          if (m >> i & 1) f |= std::uint64_t{1} << m;
        return f;
      };
      bool refl = true;
      for (int i = 0; i < n; ++i)
        if ((al[i] & ~unit_fam(i)) != 0) refl = false;
      if (!refl) continue;
      // composite membership: A is in when {z : A in alpha(z)} is in alpha(i)
      bool trans = true, idem = true;
      for (int i = 0; i < n; ++i) {
        std::uint64_t comp = 0;
        for (int am = 0; am < 4; ++am) {
          int pre = 0;
          for (int z = 0; z < n; ++z)
            if (al[z] >> am & 1) pre |= 1 << z;
          if (al[i] >> pre & 1) comp |= std::uint64_t{1} << am;
        }
        if ((al[i] & ~comp) != 0) trans = false;  // composite must refine
        if (comp != al[i]) idem = false;
      }
      if (!trans || !idem) continue;
      expected.push_back({fa, fb});
    }
  std::sort(expected.begin(), expected.end());
  REQUIRE(expected.size() == 7);

  CHECK(structure_keys(enumerate_monoids(u, pts(n))) == expected);
}

TEST_CASE("monoid law failures carry the offending point") {
  auto bad_refl = p_structure(2, [](int i, int j) { return i == j && i != 0; });
  CheckReport r1 = check_monoid(bad_refl);
  CHECK_FALSE(r1.passed());
  CHECK(r1.witness["law"] == "reflexivity");
  CHECK(r1.witness["point"] == "a");

  KleisliMonoid bad_trans{MonadInstance::make_p(), pts(3), {}};
  std::uint64_t rows[3] = {0b001, 0b011, 0b110};  // a<=b, b<=c, but not a<=c
  for (std::uint64_t row : rows) {
    TElem e;
    e.kind = MonadKind::P;
    e.set = Bitset::from_mask(3, row);
    bad_trans.alpha.push_back(std::move(e));
  }
  CheckReport r2 = check_monoid(bad_trans);
  CHECK_FALSE(r2.passed());
  CHECK(r2.witness["law"] == "transitivity");
  CHECK(r2.witness["point"] == "c");
}

TEST_CASE("homs of subset structures are the monotone maps") {
  auto chain = p_structure(2, [](int i, int j) { return i <= j; });
  auto vee = p_structure(3, [](int i, int j) { return i == j || i == 0; });
  REQUIRE(check_monoid(chain).passed());
  REQUIRE(check_monoid(vee).passed());

  for (auto [a, b] : {std::pair<const KleisliMonoid&, const KleisliMonoid&>{chain, vee},
                      {vee, chain},
                      {vee, vee}}) {
    std::vector<std::vector<int>> expected;
    std::vector<int> tbl(static_cast<std::size_t>(a.size()), 0);
    while (true) {
      bool mono = true;
      for (int i = 0; i < a.size() && mono; ++i)
        for (int j = 0; j < a.size() && mono; ++j)
          if (points_leq(a, i, j) &&
              !points_leq(b, tbl[static_cast<std::size_t>(i)], tbl[static_cast<std::size_t>(j)]))
            mono = false;
      if (mono) expected.push_back(tbl);
      int d = a.size() - 1;
      while (d >= 0 && tbl[static_cast<std::size_t>(d)] == b.size() - 1) {
        tbl[static_cast<std::size_t>(d)] = 0;
        --d;
      }
      if (d < 0) break;
      ++tbl[static_cast<std::size_t>(d)];
    }
    CHECK(hom_set(a, b, 1000000) == expected);
  }

  CHECK_THROWS_MATCHES(hom_set(vee, vee, 10), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::CapExceeded; }));
}

TEST_CASE("mixing theories is rejected") {
  auto chain = p_structure(2, [](int i, int j) { return i <= j; });
  KleisliMonoid fil = unit_monoid(MonadInstance::make_f());
  CHECK_THROWS_MATCHES(is_hom({0, 0}, chain, fil), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::MonadMismatch; }));
  CHECK_THROWS_MATCHES(box_product(chain, fil), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::MonadMismatch; }));
  auto tens = unit_monoid(MonadInstance::make_pv(builtin_quantale("bool2"), KappaFlavor::Tensor));
  auto cart =
      unit_monoid(MonadInstance::make_pv(builtin_quantale("bool2"), KappaFlavor::Cartesian));
  CHECK_THROWS_MATCHES(box_product(tens, cart), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::MonadMismatch; }));
}

TEST_CASE("box product pairs structures pointwise as rectangles") {
  auto chain = p_structure(2, [](int i, int j) { return i <= j; });
  auto disc = p_structure(3, [](int i, int j) { return i == j; });
  KleisliMonoid box = box_product(chain, disc);
  REQUIRE(box.size() == 6);
  CHECK(check_monoid(box).passed());
  int ny = disc.size();
  for (int i = 0; i < chain.size(); ++i)
    for (int j = 0; j < ny; ++j)
      for (int p = 0; p < chain.size(); ++p)
        for (int q = 0; q < ny; ++q)
          CHECK(box.alpha[static_cast<std::size_t>(i * ny + j)].set.test(p * ny + q) ==
                (chain.alpha[static_cast<std::size_t>(i)].set.test(p) &&
                 disc.alpha[static_cast<std::size_t>(j)].set.test(q)));
  // the points order of the box is the componentwise order
  for (int i = 0; i < box.size(); ++i)
    for (int j = 0; j < box.size(); ++j)
      CHECK(points_leq(box, i, j) == (points_leq(chain, i / ny, j / ny) &&
                                      points_leq(disc, i % ny, j % ny)));
}

TEST_CASE("right adjoints of lifted maps satisfy both galois directions") {
  struct Case {
    MonadInstance m;
    int nx, ny;
    std::vector<int> f;
  };
  std::vector<Case> cases = {
      {MonadInstance::make_p(), 2, 1, {0, 0}},
      {MonadInstance::make_p(), 3, 2, {0, 1, 1}},
      {MonadInstance::make_f(), 2, 2, {1, 1}},
      {MonadInstance::make_u(), 2, 2, {1, 0}},
      {MonadInstance::make_pv(builtin_quantale("chain_min(3)")), 2, 2, {0, 0}},
  };
  for (const auto& c : cases) {
    TSpace tx = t_obj(c.m, pts(c.nx)), ty = t_obj(c.m, pts(c.ny));
    std::vector<TElem> adj = lifted_right_adjoint(c.m, tx, ty, c.f);
    REQUIRE(static_cast<int>(adj.size()) == ty.size());
    for (int b = 0; b < ty.size(); ++b) {
      // largest preimage: the sup of everything mapping below b
      std::vector<const TElem*> below;
      for (int k = 0; k < tx.size(); ++k)
        if (t_elem_leq(c.m, t_map(c.m, c.f, c.ny, tx.at(k)), ty.at(b))) below.push_back(&tx.at(k));
      CHECK(adj[static_cast<std::size_t>(b)] == sup_fold(c.m, c.nx, below));
      for (int k = 0; k < tx.size(); ++k)
        CHECK(t_elem_leq(c.m, t_map(c.m, c.f, c.ny, tx.at(k)), ty.at(b)) ==
              t_elem_leq(c.m, tx.at(k), adj[static_cast<std::size_t>(b)]));
    }
  }
}

TEST_CASE("initial structure is the largest one making the legs homs") {
  auto chain = p_structure(2, [](int i, int j) { return i <= j; });
  auto rev = p_structure(2, [](int i, int j) { return i >= j; });
  auto m = MonadInstance::make_p();
  FinSet x = pts(2);
  std::vector<std::pair<std::vector<int>, KleisliMonoid>> legs = {{{0, 1}, chain}, {{0, 1}, rev}};
  KleisliMonoid init = initial_structure(m, x, legs);

  for (const auto& [f, target] : legs) CHECK(is_hom(f, init, target));

  // any structure table with both legs homs refines the initial one
  TSpace tx = t_obj(m, x);
  for (int u = 0; u < tx.size(); ++u)
    for (int v = 0; v < tx.size(); ++v) {
      KleisliMonoid beta{m, x, {tx.at(u), tx.at(v)}};
      bool all = true;
      for (const auto& [f, target] : legs)
        if (!is_hom(f, beta, target)) all = false;
      if (all)
        for (int i = 0; i < 2; ++i)
          CHECK(t_elem_leq(m, beta.alpha[static_cast<std::size_t>(i)],
                           init.alpha[static_cast<std::size_t>(i)]));
    }

  // chain and reversed chain force the discrete order
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(points_leq(init, i, j) == (i == j));

  // no legs: everything is related
  KleisliMonoid indiscrete = initial_structure(m, x, {});
  for (int i = 0; i < 2; ++i) CHECK(indiscrete.alpha[static_cast<std::size_t>(i)] == t_top(m, 2));

  // same story one monad over: interior structures on two points
  auto mu = MonadInstance::make_u();
  std::vector<KleisliMonoid> all_u = enumerate_monoids(mu, pts(2));
  REQUIRE(all_u.size() == 7);
  KleisliMonoid utarget = all_u[2];  // some fixed lawful structure
  std::vector<std::pair<std::vector<int>, KleisliMonoid>> ulegs = {{{1, 0}, utarget}};
  KleisliMonoid uinit = initial_structure(mu, pts(2), ulegs);
  CHECK(is_hom({1, 0}, uinit, utarget));
  TSpace tu = t_obj(mu, pts(2));
  for (int u = 0; u < tu.size(); ++u)
    for (int v = 0; v < tu.size(); ++v) {
      KleisliMonoid beta{mu, pts(2), {tu.at(u), tu.at(v)}};
      if (is_hom({1, 0}, beta, utarget))
        for (int i = 0; i < 2; ++i)
          CHECK(t_elem_leq(mu, beta.alpha[static_cast<std::size_t>(i)],
                           uinit.alpha[static_cast<std::size_t>(i)]));
    }
}

TEST_CASE("one point carriers are monoids for every monad") {
  for (const auto& m : {MonadInstance::make_p(), MonadInstance::make_f(), MonadInstance::make_u(),
                        MonadInstance::make_pv(builtin_quantale("lukasiewicz(5)"))}) {
    KleisliMonoid e = unit_monoid(m);
    CHECK(e.size() == 1);
    CHECK(check_monoid(e).passed());
    CHECK(points_leq(e, 0, 0));
  }
}

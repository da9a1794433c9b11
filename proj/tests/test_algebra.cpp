#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "kleislilab/algebra.hpp"
#include "kleislilab/quantale.hpp"

using namespace klab;

namespace {

bool capped(const Error& e) { return e.code() == Errc::CapExceeded; }
bool malformed(const Error& e) { return e.code() == Errc::MalformedSurface; }

std::vector<int> act_table(const Algebra& a) {
  TSpace ta = t_obj(a.m, a.carrier);
  std::vector<int> tbl;
  for (int k = 0; k < ta.size(); ++k) tbl.push_back(a.act(ta.at(k)));
  return tbl;
}

}  // namespace

TEST_CASE("the built-in dualizers are lawful actions") {
  LawsConfig cfg;
  cfg.budget = 300;

  for (const auto& m : {MonadInstance::make_p(), MonadInstance::make_f(),
                        MonadInstance::make_pv(builtin_quantale("bool2"))}) {
    Algebra a = test_algebra(m);
    CHECK(check_algebra(a, AlgebraMode::Exhaustive).passed());
    CHECK(check_algebra(a, AlgebraMode::Characterization).passed());
    CHECK(check_algebra(a, AlgebraMode::Witness, cfg).passed());
  }

  Algebra u = test_algebra(MonadInstance::make_u());
  CHECK(check_algebra(u, AlgebraMode::Characterization).passed());
  CHECK(check_algebra(u, AlgebraMode::Witness, cfg).passed());
  // the double space over the six up-families is out of reach by design
  CHECK_THROWS_MATCHES(check_algebra(u, AlgebraMode::Exhaustive), Error,
                       Catch::Matchers::Predicate<Error>(capped));

  Algebra luk = test_algebra(MonadInstance::make_pv(builtin_quantale("lukasiewicz(5)")));
  CHECK(check_algebra(luk, AlgebraMode::Characterization).passed());
  CHECK(check_algebra(luk, AlgebraMode::Witness, cfg).passed());
}

TEST_CASE("characterization agrees with the exhaustive square on every table") {
  // Small enough carriers let us sweep every candidate action table and
  // compare the closed characterizations with the definitional check.
  for (const auto& m : {MonadInstance::make_p(), MonadInstance::make_f(),
                        MonadInstance::make_pv(builtin_quantale("bool2"))}) {
    FinSet carrier = FinSet::ordered({"0", "1"});
    TSpace ta = t_obj(m, carrier);
    REQUIRE(ta.size() == 4);
    int agree = 0, lawful = 0;
    for (int code = 0; code < (1 << ta.size()); ++code) {
      std::vector<int> tbl;
      for (int k = 0; k < ta.size(); ++k) tbl.push_back(code >> k & 1);
      Algebra a = algebra_from_table(m, carrier, tbl);
      bool ex = check_algebra(a, AlgebraMode::Exhaustive).passed();
      bool ch = check_algebra(a, AlgebraMode::Characterization).passed();
      INFO(m.describe() << " table code " << code);
      CHECK(ex == ch);
      agree += (ex == ch);
      lawful += ex;
    }
    CHECK(agree == 16);
    CHECK(lawful > 0);
    CHECK(lawful < 16);
  }
}

TEST_CASE("up-family characterization never rejects what witnesses accept") {
  auto m = MonadInstance::make_u();
  FinSet carrier = FinSet::ordered({"0", "1"});
  TSpace ta = t_obj(m, carrier);
  REQUIRE(ta.size() == 6);
  LawsConfig cfg;
  cfg.budget = 150;
  int lawful = 0;
  for (int code = 0; code < (1 << ta.size()); ++code) {
    std::vector<int> tbl;
    for (int k = 0; k < ta.size(); ++k) tbl.push_back(code >> k & 1);
    Algebra a = algebra_from_table(m, carrier, tbl);
    bool ch = false;
    try {
      ch = check_algebra(a, AlgebraMode::Characterization).passed();
    } catch (const Error&) {
      continue;  // tables whose pair families leave the space are malformed
    }
    if (ch) {
      ++lawful;
      CHECK(check_algebra(a, AlgebraMode::Witness, cfg).passed());
    }
  }
  CHECK(lawful > 0);
}

TEST_CASE("actions order their carriers and the dualizer gives the two chain") {
  for (const auto& m : {MonadInstance::make_p(), MonadInstance::make_f(), MonadInstance::make_u(),
                        MonadInstance::make_pv(builtin_quantale("bool2"))}) {
    FinOrder ord = algebra_order(test_algebra(m));
    CHECK(ord.carrier.ids() == std::vector<std::string>{"0", "1"});
    CHECK(ord.leq(0, 1));
    CHECK_FALSE(ord.leq(1, 0));
  }
}

TEST_CASE("the adjoint of an action is the largest element acting below") {
  for (const auto& m : {MonadInstance::make_p(), MonadInstance::make_f(), MonadInstance::make_u(),
                        MonadInstance::make_pv(builtin_quantale("lukasiewicz(5)"))}) {
    Algebra a = test_algebra(m);
    TSpace ta = t_obj(m, a.carrier);
    FinOrder ord = algebra_order(a);
    std::vector<TElem> adj = algebra_right_adjoint(a);
    for (int y = 0; y < a.carrier.size(); ++y)
      for (int k = 0; k < ta.size(); ++k)
        CHECK(ord.leq(a.act(ta.at(k)), y) == t_elem_leq(m, ta.at(k), adj[static_cast<std::size_t>(y)]));
  }

  // spot values on the subset and filter sides
  for (const auto& m : {MonadInstance::make_p(), MonadInstance::make_f()}) {
    std::vector<TElem> adj = algebra_right_adjoint(test_algebra(m));
    CHECK(adj[0].set.mask() == 0b01);
    CHECK(adj[1].set.mask() == 0b11);
  }

  // residuation on the unit interval: the adjoint at y sends x to the
  // largest v with v (x) below y
  auto luk = MonadInstance::make_pv(builtin_quantale("lukasiewicz(5)"));
  std::vector<TElem> adj = algebra_right_adjoint(test_algebra(luk));
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) CHECK(adj[static_cast<std::size_t>(y)].vals[static_cast<std::size_t>(x)] == std::min(4, y + 4 - x));
}

TEST_CASE("every dualizer carries a lawful structure through its adjoint") {
  for (const auto& m : {MonadInstance::make_p(), MonadInstance::make_f(), MonadInstance::make_u(),
                        MonadInstance::make_pv(builtin_quantale("lukasiewicz(5)"))}) {
    Algebra a = test_algebra(m);
    KleisliMonoid s = algebra_to_monoid(a);
    CHECK(check_monoid(s).passed());
    FinOrder ord = algebra_order(a);
    for (int i = 0; i < s.size(); ++i)
      for (int j = 0; j < s.size(); ++j) CHECK(points_leq(s, i, j) == ord.leq(i, j));
  }
}

TEST_CASE("algebra tables survive the json round trip") {
  for (const auto& m : {MonadInstance::make_p(), MonadInstance::make_u(),
                        MonadInstance::make_pv(builtin_quantale("bool2"))}) {
    Algebra a = test_algebra(m);
    Algebra back = algebra_from_json(algebra_to_json(a));
    CHECK(back.m.same_theory(a.m));
    CHECK(back.carrier.ids() == a.carrier.ids());
    CHECK(act_table(back) == act_table(a));
  }

  json j = algebra_to_json(test_algebra(MonadInstance::make_p()));
  json missing = j;
  missing.erase("a");
  CHECK_THROWS_MATCHES(algebra_from_json(missing), Error,
                       Catch::Matchers::Predicate<Error>(malformed));
  json sparse = j;
  sparse["a"].erase("{}");
  CHECK_THROWS_MATCHES(algebra_from_json(sparse), Error,
                       Catch::Matchers::Predicate<Error>(malformed));
  json badval = j;
  badval["a"]["{}"] = "7";
  CHECK_THROWS_MATCHES(algebra_from_json(badval), Error,
                       Catch::Matchers::Predicate<Error>(malformed));
}

TEST_CASE("table construction validates shape and range") {
  auto m = MonadInstance::make_p();
  FinSet carrier = FinSet::ordered({"0", "1"});
  CHECK_THROWS_MATCHES(algebra_from_table(m, carrier, {0, 1}), Error,
                       Catch::Matchers::Predicate<Error>(malformed));
  CHECK_THROWS_MATCHES(algebra_from_table(m, carrier, {0, 1, 2, 0}), Error,
                       Catch::Matchers::Predicate<Error>(malformed));

  // a broken unit is reported as such
  Algebra bad = algebra_from_table(m, carrier, {0, 0, 0, 0});
  CheckReport r = check_algebra(bad, AlgebraMode::Exhaustive);
  CHECK_FALSE(r.passed());
  CHECK(r.witness["check"] == "unit");
  CHECK(r.witness["detail"]["law"] == "action-after-unit");
}

TEST_CASE("algebra mode names parse strictly") {
  CHECK(algebra_mode_from_string("exhaustive") == AlgebraMode::Exhaustive);
  CHECK(algebra_mode_from_string("characterization") == AlgebraMode::Characterization);
  CHECK(algebra_mode_from_string("witness") == AlgebraMode::Witness);
  CHECK_THROWS_MATCHES(algebra_mode_from_string("closed"), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::ModeUnsupported; }));
}

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "kleislilab/kleisli.hpp"
#include "kleislilab/laws.hpp"
#include "kleislilab/monad.hpp"

namespace klab {

// An action of the monad on a carrier. The action is kept behind a
// function so that structures whose T-space is only queried pointwise
// (rather than materialized) fit the same interface.
struct Algebra {
  MonadInstance m;
  FinSet carrier;
  std::function<int(const TElem&)> act;  // total on elements over carrier
  std::string name;
};

inline Algebra algebra_from_table(const MonadInstance& m, const FinSet& carrier,
                                  std::vector<int> tbl, std::string name = "") {
  auto ta = std::make_shared<TSpace>(t_obj(m, carrier));
  if (static_cast<int>(tbl.size()) != ta->size())
    raise(Errc::MalformedSurface, "algebra table does not cover the T-space");
  for (int v : tbl)
    if (v < 0 || v >= carrier.size()) raise(Errc::MalformedSurface, "algebra table value out of range");
  Algebra a{m, carrier, {}, std::move(name)};
  a.act = [ta, tbl = std::move(tbl)](const TElem& e) {
    return tbl[static_cast<std::size_t>(ta->index_of_checked(e))];
  };
  return a;
}

// The built-in dualizing algebra for each monad: the two-point join
// algebra for subsets, the Sierpinski-style join on generators for
// filters, meet-of-joins on two points for up-families, and the value
// quantale acting on itself.
inline Algebra test_algebra(const MonadInstance& m) {
  switch (m.kind) {
    case MonadKind::P: {
      Algebra a{m, FinSet::ordered({"0", "1"}), {}, "two-point-join"};
      a.act = [](const TElem& e) { return e.set.test(1) ? 1 : 0; };
      return a;
    }
    case MonadKind::F: {
      Algebra a{m, FinSet::ordered({"0", "1"}), {}, "sierpinski-join"};
      // Join of the generator; the empty generator joins to 0.
      a.act = [](const TElem& e) { return e.set.test(1) ? 1 : 0; };
      return a;
    }
    case MonadKind::U: {
      Algebra a{m, FinSet::ordered({"0", "1"}), {}, "two-point-meet-of-joins"};
      a.act = [](const TElem& e) {
        // Meet over members of the join of the member; empty family gives 1.
        int out = 1;
        for (int mask = 0; mask < 4; ++mask) {
          if (!e.set.test(mask)) continue;
          int member_join = (mask & 2) ? 1 : 0;
          out = std::min(out, member_join);
        }
        return out;
      };
      return a;
    }
    default: {
      const Quantale& q = m.quant();
      Algebra a{m, q.carrier, {}, "value-self-action"};
      std::shared_ptr<const Quantale> qp = m.q;
      a.act = [qp](const TElem& e) {
        int out = qp->bot();
        for (int v = 0; v < qp->size(); ++v)
          out = qp->join(out, qp->tens(e.vals[static_cast<std::size_t>(v)], v));
        return out;
      };
      return a;
    }
  }
}

// Join table induced by the action on pairs; also the source of the
// algebra's underlying order x <= y iff act of {x,y} lands on y.
inline FinOrder algebra_order(const Algebra& alg) {
  int n = alg.carrier.size();
  std::vector<Bitset> up(static_cast<std::size_t>(n), Bitset(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Bitset pair(n);
      pair.set(x);
      pair.set(y);
      if (alg.act(t_tau(alg.m, n, pair)) == y) up[static_cast<std::size_t>(x)].set(y);
    }
  return make_order(alg.carrier, std::move(up));
}

enum class AlgebraMode { Exhaustive, Characterization, Witness };

inline AlgebraMode algebra_mode_from_string(const std::string& s) {
  if (s == "exhaustive") return AlgebraMode::Exhaustive;
  if (s == "characterization") return AlgebraMode::Characterization;
  if (s == "witness") return AlgebraMode::Witness;
  raise(Errc::ModeUnsupported, "unknown algebra mode '" + s + "'");
}

namespace detail {

inline CheckReport check_algebra_unit(const Algebra& alg) {
  int n = alg.carrier.size();
  for (int i = 0; i < n; ++i)
    if (alg.act(t_unit(alg.m, n, i)) != i)
      return CheckReport::fail({{"law", "action-after-unit"}, {"point", alg.carrier.id(i)}});
  return CheckReport::pass();
}

// Subset/filter actions are exactly suprema: induce the order from pairs,
// then demand that every subset's action is its least upper bound.
inline CheckReport characterize_join_algebra(const Algebra& alg) {
  int n = alg.carrier.size();
  FinOrder ord;
  try {
    ord = algebra_order(alg);
  } catch (const Error& e) {
    return CheckReport::fail({{"law", "induced-order"}, {"reason", e.what()}});
  }
  if (n > 20) raise(Errc::CapExceeded, "characterization: carrier too large");
  for (long long mask = 0; mask < (1ll << n); ++mask) {
    Bitset s = Bitset::from_mask(n, static_cast<std::uint64_t>(mask));
    int v = alg.act(t_tau(alg.m, n, s));
    bool ub = true;
    s.for_each([&](int i) { ub = ub && ord.leq(i, v); });
    if (!ub)
      return CheckReport::fail({{"law", "action-is-upper-bound"}, {"subset", s.indices()}});
    for (int u = 0; u < n; ++u) {
      bool u_is_ub = true;
      s.for_each([&](int i) { u_is_ub = u_is_ub && ord.leq(i, u); });
      if (u_is_ub && !ord.leq(v, u))
        return CheckReport::fail({{"law", "action-is-least-upper-bound"},
                                  {"subset", s.indices()},
                                  {"smaller_bound", alg.carrier.id(u)}});
    }
  }
  return CheckReport::pass();
}

// Valuation algebras are quantale modules: a complete lattice with an
// action of V that is unital, multiplicative and sup-preserving in both
// slots, where the whole structure map is forced to be
// a(phi) = join over x of phi(x) . x.
inline CheckReport characterize_module_algebra(const Algebra& alg) {
  const MonadInstance& m = alg.m;
  const Quantale& q = m.quant();
  int n = alg.carrier.size(), nv = q.size(), bot = q.bot();

  FinOrder ord;
  LatticeOps lat;
  try {
    ord = algebra_order(alg);
    lat = LatticeOps::from_order(ord);
  } catch (const Error& e) {
    return CheckReport::fail({{"law", "induced-lattice"}, {"reason", e.what()}});
  }

  auto scaled_unit = [&](int v, int x) {
    TElem e;
    e.kind = MonadKind::PV;
    e.vals.assign(static_cast<std::size_t>(n), bot);
    e.vals[static_cast<std::size_t>(x)] = v;
    return e;
  };
  std::vector<std::vector<int>> dot(static_cast<std::size_t>(nv),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int v = 0; v < nv; ++v)
    for (int x = 0; x < n; ++x) dot[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)] = alg.act(scaled_unit(v, x));

  for (int x = 0; x < n; ++x) {
    if (dot[static_cast<std::size_t>(q.unit)][static_cast<std::size_t>(x)] != x)
      return CheckReport::fail({{"law", "action-unital"}, {"point", alg.carrier.id(x)}});
    if (dot[static_cast<std::size_t>(bot)][static_cast<std::size_t>(x)] != lat.bot)
      return CheckReport::fail({{"law", "action-strict"}, {"point", alg.carrier.id(x)}});
  }
  for (int u = 0; u < nv; ++u)
    for (int v = 0; v < nv; ++v)
      for (int x = 0; x < n; ++x) {
        int lhs = dot[static_cast<std::size_t>(u)][static_cast<std::size_t>(
            dot[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)])];
        int rhs = dot[static_cast<std::size_t>(q.tens(u, v))][static_cast<std::size_t>(x)];
        if (lhs != rhs)
          return CheckReport::fail({{"law", "action-multiplicative"},
                                    {"u", q.carrier.id(u)},
                                    {"v", q.carrier.id(v)},
                                    {"point", alg.carrier.id(x)}});
      }
  for (int u = 0; u < nv; ++u)
    for (int v = 0; v < nv; ++v)
      for (int x = 0; x < n; ++x)
        if (dot[static_cast<std::size_t>(q.join(u, v))][static_cast<std::size_t>(x)] !=
            lat.join(dot[static_cast<std::size_t>(u)][static_cast<std::size_t>(x)],
                     dot[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)]))
          return CheckReport::fail({{"law", "action-joins-in-value"},
                                    {"u", q.carrier.id(u)},
                                    {"v", q.carrier.id(v)},
                                    {"point", alg.carrier.id(x)}});
  for (int v = 0; v < nv; ++v)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (dot[static_cast<std::size_t>(v)][static_cast<std::size_t>(lat.join(x, y))] !=
            lat.join(dot[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)],
                     dot[static_cast<std::size_t>(v)][static_cast<std::size_t>(y)]))
          return CheckReport::fail({{"law", "action-joins-in-carrier"},
                                    {"v", q.carrier.id(v)},
                                    {"x", alg.carrier.id(x)},
                                    {"y", alg.carrier.id(y)}});

  // The structure map itself must be the weighted join of the action.
  TSpace ta = t_obj(m, alg.carrier);
  for (int k = 0; k < ta.size(); ++k) {
    const TElem& phi = ta.at(k);
    int expect = lat.bot;
    for (int x = 0; x < n; ++x)
      expect = lat.join(expect, dot[static_cast<std::size_t>(phi.vals[static_cast<std::size_t>(x)])]
                                   [static_cast<std::size_t>(x)]);
    if (alg.act(phi) != expect)
      return CheckReport::fail({{"law", "action-is-weighted-join"},
                                {"element", elem_to_json(m, alg.carrier, phi)},
                                {"expected", alg.carrier.id(expect)},
                                {"got", alg.carrier.id(alg.act(phi))}});
  }
  return CheckReport::pass();
}

// Up-family algebras: the unit law plus the mult square at every element
// of UUA generated by at most two generators of at most two materialized
// elements each. Fast paths keep the pair sweep to mask operations.
inline CheckReport characterize_upfamily_algebra(const Algebra& alg, long long* out_checks) {
  const MonadInstance& m = alg.m;
  int n = alg.carrier.size();
  TSpace ta = t_obj(m, alg.carrier);
  int nt = ta.size();
  if (1 << n > 64) raise(Errc::CapExceeded, "characterization: carrier too large for mask sweep");

  std::vector<std::uint64_t> masks(static_cast<std::size_t>(nt));
  std::vector<int> a_tbl(static_cast<std::size_t>(nt));
  std::unordered_map<std::uint64_t, int> act_of_mask;
  act_of_mask.reserve(static_cast<std::size_t>(nt) * 2);
  for (int k = 0; k < nt; ++k) {
    masks[static_cast<std::size_t>(k)] = ta.at(k).set.mask();
    a_tbl[static_cast<std::size_t>(k)] = alg.act(ta.at(k));
    act_of_mask.emplace(masks[static_cast<std::size_t>(k)], a_tbl[static_cast<std::size_t>(k)]);
  }

  // act of the family "everything containing u or v" and "everything
  // containing both u and v", tabulated over carrier pairs.
  std::vector<int> or_act(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  std::vector<int> and_act(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      TElem fam_or, fam_and;
      fam_or.kind = fam_and.kind = MonadKind::U;
      fam_or.set = Bitset(1 << n);
      fam_and.set = Bitset(1 << n);
      for (int mask = 0; mask < (1 << n); ++mask) {
        bool hu = (mask >> u) & 1, hv = (mask >> v) & 1;
        if (hu || hv) fam_or.set.set(mask);
        if (hu && hv) fam_and.set.set(mask);
      }
      or_act[static_cast<std::size_t>(u * n + v)] = alg.act(fam_or);
      and_act[static_cast<std::size_t>(u * n + v)] = alg.act(fam_and);
    }

  long long checks = 0;
  auto lookup = [&](std::uint64_t mask) {
    auto it = act_of_mask.find(mask);
    if (it == act_of_mask.end())
      raise(Errc::MalformedSurface, "characterization: combined family left the T-space");
    return it->second;
  };

  for (int s = 0; s < nt; ++s) {
    // Single generator of one element: both routes reduce to the unit law.
    ++checks;
    for (int t = s + 1; t < nt; ++t) {
      checks += 2;
      int as = a_tbl[static_cast<std::size_t>(s)], at = a_tbl[static_cast<std::size_t>(t)];
      // Two singleton generators: mult is the union of the families.
      int lhs_or = lookup(masks[static_cast<std::size_t>(s)] | masks[static_cast<std::size_t>(t)]);
      if (lhs_or != or_act[static_cast<std::size_t>(as * n + at)])
        return CheckReport::fail(
            {{"law", "action-mult-square"},
             {"shape", "two-singleton-generators"},
             {"first", {{"id", ta.carrier.id(s)}, {"label", ta.labels[static_cast<std::size_t>(s)]}}},
             {"second", {{"id", ta.carrier.id(t)}, {"label", ta.labels[static_cast<std::size_t>(t)]}}},
             {"via_mult", alg.carrier.id(lhs_or)},
             {"via_action", alg.carrier.id(or_act[static_cast<std::size_t>(as * n + at)])}});
      // One two-element generator: mult is the intersection.
      int lhs_and = lookup(masks[static_cast<std::size_t>(s)] & masks[static_cast<std::size_t>(t)]);
      if (lhs_and != and_act[static_cast<std::size_t>(as * n + at)])
        return CheckReport::fail(
            {{"law", "action-mult-square"},
             {"shape", "one-pair-generator"},
             {"first", {{"id", ta.carrier.id(s)}, {"label", ta.labels[static_cast<std::size_t>(s)]}}},
             {"second", {{"id", ta.carrier.id(t)}, {"label", ta.labels[static_cast<std::size_t>(t)]}}},
             {"via_mult", alg.carrier.id(lhs_and)},
             {"via_action", alg.carrier.id(and_act[static_cast<std::size_t>(as * n + at)])}});
    }
  }
  if (out_checks) *out_checks = checks;
  return CheckReport::pass();
}

}  // namespace detail

inline CheckReport check_algebra(const Algebra& alg, AlgebraMode mode, const LawsConfig& cfg = {}) {
  const MonadInstance& m = alg.m;
  int n = alg.carrier.size();
  CheckReport r = CheckReport::pass();
  r.stats["carrier"] = n;
  r.stats["mode"] = mode == AlgebraMode::Exhaustive       ? "exhaustive"
                    : mode == AlgebraMode::Characterization ? "characterization"
                                                            : "witness";

  r.absorb("unit", detail::check_algebra_unit(alg));
  if (!r.passed()) return r;

  if (mode == AlgebraMode::Exhaustive) {
    TSpace ta = t_obj(m, alg.carrier);
    TSpace tta = t_obj(m, ta.carrier, m.caps.ttx);
    r.stats["ta"] = ta.size();
    r.stats["tta"] = tta.size();
    std::vector<int> a_tbl;
    a_tbl.reserve(static_cast<std::size_t>(ta.size()));
    for (int k = 0; k < ta.size(); ++k) a_tbl.push_back(alg.act(ta.at(k)));
    for (int k = 0; k < tta.size(); ++k) {
      const TElem& big = tta.at(k);
      int lhs = alg.act(mult(ta, big));
      int rhs = alg.act(t_map(m, a_tbl, n, big));
      if (lhs != rhs) {
        r.absorb("mult_square",
                 CheckReport::fail({{"law", "action-mult-square"},
                                    {"element", detail::tt_ref(ta, big)},
                                    {"via_mult", alg.carrier.id(lhs)},
                                    {"via_action", alg.carrier.id(rhs)}}));
        return r;
      }
    }
    r.stats["checks"] = tta.size();
    return r;
  }

  if (mode == AlgebraMode::Characterization) {
    CheckReport sub;
    long long checks = 0;
    switch (m.kind) {
      case MonadKind::P:
      case MonadKind::F:
        sub = detail::characterize_join_algebra(alg);
        break;
      case MonadKind::PV:
        sub = detail::characterize_module_algebra(alg);
        break;
      case MonadKind::U:
        sub = detail::characterize_upfamily_algebra(alg, &checks);
        if (checks > 0) r.stats["checks"] = checks;
        break;
    }
    r.absorb("characterization", sub);
    return r;
  }

  // Witness mode: the mult square at sampled two-level elements.
  TSpace ta = t_obj(m, alg.carrier);
  r.stats["ta"] = ta.size();
  std::vector<int> a_tbl;
  a_tbl.reserve(static_cast<std::size_t>(ta.size()));
  for (int k = 0; k < ta.size(); ++k) a_tbl.push_back(alg.act(ta.at(k)));

  long long checks = 0;
  if (m.kind == MonadKind::U) {
    std::vector<UGens> wits = detail::u_tt_witnesses(ta, cfg);
    for (const UGens& g : wits) {
      ++checks;
      int lhs = alg.act(ugen_mult(ta, g));
      UGens mapped = ugen_map(a_tbl, g);
      Bitset seeds(1 << n);
      for (const auto& gen : mapped) {
        Bitset b(n);
        for (int i : gen) b.set(i);
        seeds.set(static_cast<int>(b.mask()));
      }
      TElem via_action;
      via_action.kind = MonadKind::U;
      via_action.set = family_up_closure(seeds, n);
      int rhs = alg.act(via_action);
      if (lhs != rhs)
        r.absorb("mult_square", CheckReport::fail({{"law", "action-mult-square"},
                                                   {"witness", detail::ugens_ref(ta, g)},
                                                   {"via_mult", alg.carrier.id(lhs)},
                                                   {"via_action", alg.carrier.id(rhs)}}));
      if (!r.passed()) return r;
    }
  } else {
    std::vector<TElem> wits = detail::tt_witnesses(ta, cfg);
    for (const TElem& w : wits) {
      ++checks;
      int lhs = alg.act(mult(ta, w));
      int rhs = alg.act(t_map(m, a_tbl, n, w));
      if (lhs != rhs)
        r.absorb("mult_square", CheckReport::fail({{"law", "action-mult-square"},
                                                   {"witness", detail::tt_ref(ta, w)},
                                                   {"via_mult", alg.carrier.id(lhs)},
                                                   {"via_action", alg.carrier.id(rhs)}}));
      if (!r.passed()) return r;
    }
  }
  r.stats["checks"] = checks;
  return r;
}

// Right adjoint of the action as a table over the carrier, with both
// Galois inequalities verified.
inline std::vector<TElem> algebra_right_adjoint(const Algebra& alg) {
  const MonadInstance& m = alg.m;
  int n = alg.carrier.size();
  TSpace ta = t_obj(m, alg.carrier);
  FinOrder ord = algebra_order(alg);

  std::vector<int> a_tbl;
  a_tbl.reserve(static_cast<std::size_t>(ta.size()));
  for (int k = 0; k < ta.size(); ++k) a_tbl.push_back(alg.act(ta.at(k)));

  std::vector<TElem> adj;
  adj.reserve(static_cast<std::size_t>(n));
  for (int y = 0; y < n; ++y) {
    std::vector<const TElem*> below;
    for (int k = 0; k < ta.size(); ++k)
      if (ord.leq(a_tbl[static_cast<std::size_t>(k)], y)) below.push_back(&ta.at(k));
    TElem cand = sup_fold(m, n, below);
    if (!ord.leq(alg.act(cand), y))
      raise(Errc::NoAdjoint, "action has no right adjoint at " + alg.carrier.id(y));
    adj.push_back(std::move(cand));
  }
  for (int k = 0; k < ta.size(); ++k)
    if (!t_elem_leq(m, ta.at(k), adj[static_cast<std::size_t>(a_tbl[static_cast<std::size_t>(k)])]))
      raise(Errc::NoAdjoint, "action adjoint fails the unit inequality");
  return adj;
}

// The monoid carried by an algebra: same points, structure given by the
// right adjoint of the action.
inline KleisliMonoid algebra_to_monoid(const Algebra& alg) {
  KleisliMonoid s{alg.m, alg.carrier, algebra_right_adjoint(alg)};
  return s;
}

inline json algebra_to_json(const Algebra& alg) {
  TSpace ta = t_obj(alg.m, alg.carrier);
  json j;
  j["monad"] = json::object();
  j["monad"]["kind"] = kind_name(alg.m.kind);
  if (alg.m.kind == MonadKind::PV) {
    j["monad"]["quantale"] = alg.m.quant().name.empty() ? json(quantale_to_json(alg.m.quant()))
                                                        : json(alg.m.quant().name);
    j["monad"]["kappa"] = alg.m.kappa == KappaFlavor::Tensor ? "tensor" : "cartesian";
  }
  json carr = json::array();
  for (const auto& id : alg.carrier.ids()) carr.push_back(id);
  j["carrier"] = carr;
  json table = json::object();
  for (int k = 0; k < ta.size(); ++k)
    table[ta.labels[static_cast<std::size_t>(k)]] = alg.carrier.id(alg.act(ta.at(k)));
  j["a"] = table;
  return j;
}

inline Algebra algebra_from_json(const json& j, Caps caps = {}) {
  if (!j.is_object() || !j.contains("monad") || !j.contains("carrier") || !j.contains("a"))
    raise(Errc::MalformedSurface, "algebra: needs 'monad', 'carrier' and 'a'");
  MonadInstance m = [&] {
    const json& mj = j.at("monad");
    if (!mj.is_object() || !mj.contains("kind")) raise(Errc::MalformedSurface, "algebra: malformed monad");
    MonadKind kind = kind_from_string(mj.at("kind").get<std::string>());
    switch (kind) {
      case MonadKind::P: return MonadInstance::make_p(caps);
      case MonadKind::F: return MonadInstance::make_f(caps);
      case MonadKind::U: return MonadInstance::make_u(caps);
      default: {
        if (!mj.contains("quantale")) raise(Errc::MalformedSurface, "algebra: PV needs a quantale");
        Quantale q = mj.at("quantale").is_string()
                         ? builtin_quantale(mj.at("quantale").get<std::string>())
                         : quantale_from_json(mj.at("quantale"));
        KappaFlavor flavor = KappaFlavor::Tensor;
        if (mj.contains("kappa") && mj.at("kappa").get<std::string>() == "cartesian")
          flavor = KappaFlavor::Cartesian;
        return MonadInstance::make_pv(std::move(q), flavor, caps);
      }
    }
  }();

  std::vector<std::string> ids;
  for (const auto& v : j.at("carrier")) ids.push_back(v.get<std::string>());
  FinSet carrier = FinSet::sorted(std::move(ids));
  TSpace ta = t_obj(m, carrier);

  const json& table = j.at("a");
  if (!table.is_object()) raise(Errc::MalformedSurface, "algebra: 'a' must be an object");
  std::vector<int> tbl(static_cast<std::size_t>(ta.size()));
  for (int k = 0; k < ta.size(); ++k) {
    const std::string& key = ta.labels[static_cast<std::size_t>(k)];
    if (!table.contains(key))
      raise(Errc::MalformedSurface, "algebra: table missing entry for " + key);
    int v = carrier.index_of(table.at(key).get<std::string>());
    if (v < 0) raise(Errc::MalformedSurface, "algebra: unknown value in table at " + key);
    tbl[static_cast<std::size_t>(k)] = v;
  }
  return algebra_from_table(m, carrier, std::move(tbl));
}

}  // namespace klab

#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kleislilab/algebra.hpp"
#include "kleislilab/kleisli.hpp"
#include "kleislilab/surface.hpp"

namespace klab {

namespace detail {

inline FinSet hom_carrier(int count) {
  int width = 1;
  for (long long p = 10; p <= count; p *= 10) ++width;
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::string num = std::to_string(i);
    ids.push_back("g" + std::string(static_cast<std::size_t>(width) - num.size(), '0') + num);
  }
  return FinSet::ordered(std::move(ids));
}

}  // namespace detail

// The function space [X, V]: structure-preserving maps from a monoid into
// the monoid carried by the dualizing algebra, together with evaluation
// and the data needed to compute the induced structure on the hom set.
struct FunctionSpace {
  KleisliMonoid base;    // (X, alpha)
  Algebra dual;          // (V, act)
  FinOrder dual_order;   // induced order on V
  LatticeOps dual_lat;
  KleisliMonoid dual_monoid;  // (V, adjoint of act)

  std::vector<std::vector<int>> homs;  // value tables X -> V
  FinSet carrier;                      // one id per hom
  std::vector<int> ev_tbl;             // (hom, point) -> V, at hom * |X| + point
  std::map<std::vector<int>, int> hom_pos;

  // Fused-path data for the up-family monad: for each hom h and each
  // subset C of V, the set of base points x with ev(h, x) in C; and the
  // minimal members of each structure value.
  std::vector<std::vector<Bitset>> okrow;
  std::vector<std::vector<std::uint32_t>> alpha_min;

  int points() const { return base.size(); }
  int hom_count() const { return static_cast<int>(homs.size()); }
};

inline FunctionSpace function_space(const KleisliMonoid& s, const Algebra& dual) {
  if (!s.m.same_theory(dual.m)) raise(Errc::MonadMismatch, "function_space: monoid and algebra theories differ");
  FunctionSpace fs;
  fs.base = s;
  fs.dual = dual;
  fs.dual_order = algebra_order(dual);
  fs.dual_lat = LatticeOps::from_order(fs.dual_order);
  fs.dual_monoid = algebra_to_monoid(dual);

  int n = s.size(), nv = dual.carrier.size();
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= nv;
    if (total > s.m.caps.homs) raise(Errc::CapExceeded, "function_space: hom space exceeds cap");
  }
  fs.homs = hom_set(s, fs.dual_monoid, s.m.caps.homs);
  fs.carrier = detail::hom_carrier(fs.hom_count());
  fs.ev_tbl.resize(static_cast<std::size_t>(fs.hom_count()) * static_cast<std::size_t>(n));
  for (int h = 0; h < fs.hom_count(); ++h) {
    fs.hom_pos.emplace(fs.homs[static_cast<std::size_t>(h)], h);
    for (int x = 0; x < n; ++x)
      fs.ev_tbl[static_cast<std::size_t>(h * n + x)] = fs.homs[static_cast<std::size_t>(h)][static_cast<std::size_t>(x)];
  }

  if (s.m.kind == MonadKind::U) {
    fs.okrow.assign(static_cast<std::size_t>(fs.hom_count()),
                    std::vector<Bitset>(static_cast<std::size_t>(1 << nv), Bitset(n)));
    for (int h = 0; h < fs.hom_count(); ++h)
      for (int cmask = 0; cmask < (1 << nv); ++cmask) {
        Bitset& row = fs.okrow[static_cast<std::size_t>(h)][static_cast<std::size_t>(cmask)];
        for (int x = 0; x < n; ++x)
          if ((cmask >> fs.ev_tbl[static_cast<std::size_t>(h * n + x)]) & 1) row.set(x);
      }
    fs.alpha_min.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
      fs.alpha_min.push_back(family_min_sets(s.alpha[static_cast<std::size_t>(x)].set, n));
  }
  return fs;
}

// The pointwise bound: the dualizer's action on the lifted evaluation of
// the pairing of frak with the structure at x.
inline int h_value(const FunctionSpace& fs, const TElem& frak, int x) {
  const MonadInstance& m = fs.base.m;
  int n = fs.points(), nh = fs.hom_count(), nv = fs.dual.carrier.size();

  if (m.kind == MonadKind::U) {
    // Members of the lifted evaluation are exactly the C whose preimage
    // contains a generating rectangle.
    TElem over_v;
    over_v.kind = MonadKind::U;
    over_v.set = Bitset(1 << nv);
    std::vector<std::uint32_t> fmin = family_min_sets(frak.set, nh);
    const std::vector<std::uint32_t>& amin = fs.alpha_min[static_cast<std::size_t>(x)];
    for (int cmask = 0; cmask < (1 << nv); ++cmask) {
      bool member = false;
      for (std::uint32_t am : fmin) {
        if (member) break;
        for (std::uint32_t bm : amin) {
          Bitset need = Bitset::from_mask(n, bm);
          bool all = true;
          for (int h = 0; h < nh && all; ++h) {
            if (!((am >> h) & 1u)) continue;
            if (!need.subset_of(fs.okrow[static_cast<std::size_t>(h)][static_cast<std::size_t>(cmask)]))
              all = false;
          }
          if (all) {
            member = true;
            break;
          }
        }
      }
      if (member) over_v.set.set(cmask);
    }
    return fs.dual.act(over_v);
  }

  TElem paired = t_kappa(m, nh, n, frak, fs.base.alpha[static_cast<std::size_t>(x)]);
  TElem over_v = t_map(m, fs.ev_tbl, nv, paired);
  return fs.dual.act(over_v);
}

struct ConvOutcome {
  std::vector<int> values;  // pointwise result, as V indices
  int hom_index = -1;       // position in the hom space, or -1 if outside it
};

// Structure map on the function space: the meet of all homs dominating
// the pointwise bound.
inline ConvOutcome conv_eval(const FunctionSpace& fs, const TElem& frak) {
  int n = fs.points();
  std::vector<int> hv(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) hv[static_cast<std::size_t>(x)] = h_value(fs, frak, x);

  std::vector<int> out(static_cast<std::size_t>(n), fs.dual_lat.top);
  for (int h = 0; h < fs.hom_count(); ++h) {
    const std::vector<int>& g = fs.homs[static_cast<std::size_t>(h)];
    bool dominates = true;
    for (int x = 0; x < n && dominates; ++x)
      if (!fs.dual_order.leq(hv[static_cast<std::size_t>(x)], g[static_cast<std::size_t>(x)])) dominates = false;
    if (!dominates) continue;
    for (int x = 0; x < n; ++x)
      out[static_cast<std::size_t>(x)] = fs.dual_lat.meet(out[static_cast<std::size_t>(x)], g[static_cast<std::size_t>(x)]);
  }
  auto it = fs.hom_pos.find(out);
  return {std::move(out), it == fs.hom_pos.end() ? -1 : it->second};
}

// Closed-form counterpart, where one exists.
inline ConvOutcome conv_closed_eval(const FunctionSpace& fs, const TElem& frak) {
  const MonadInstance& m = fs.base.m;
  const LatticeOps& lat = fs.dual_lat;
  int n = fs.points(), nh = fs.hom_count();
  std::vector<int> out(static_cast<std::size_t>(n), lat.bot);

  switch (m.kind) {
    case MonadKind::P:
    case MonadKind::F:
      // Pointwise join of the members (of the generator, for filters).
      frak.set.for_each([&](int h) {
        for (int x = 0; x < n; ++x)
          out[static_cast<std::size_t>(x)] =
              lat.join(out[static_cast<std::size_t>(x)], fs.ev_tbl[static_cast<std::size_t>(h * n + x)]);
      });
      break;
    case MonadKind::PV: {
      const Quantale& q = m.quant();
      if (m.kappa == KappaFlavor::Tensor) {
        for (int x = 0; x < n; ++x) {
          int acc = q.bot();
          for (int h = 0; h < nh; ++h)
            acc = q.join(acc, q.tens(frak.vals[static_cast<std::size_t>(h)],
                                     fs.ev_tbl[static_cast<std::size_t>(h * n + x)]));
          out[static_cast<std::size_t>(x)] = acc;
        }
      } else {
        for (int y = 0; y < n; ++y) {
          int acc = q.bot();
          for (int h = 0; h < nh; ++h)
            for (int z = 0; z < n; ++z) {
              int weight = q.meet(frak.vals[static_cast<std::size_t>(h)],
                                  fs.base.alpha[static_cast<std::size_t>(y)].vals[static_cast<std::size_t>(z)]);
              acc = q.join(acc, q.tens(weight, fs.ev_tbl[static_cast<std::size_t>(h * n + z)]));
            }
          out[static_cast<std::size_t>(y)] = acc;
        }
      }
      break;
    }
    case MonadKind::U:
      raise(Errc::NoClosedForm, "no closed form for the up-family structure map");
  }
  auto it = fs.hom_pos.find(out);
  return {std::move(out), it == fs.hom_pos.end() ? -1 : it->second};
}

// The structure map packaged as an algebra on the hom carrier. Evaluation
// raises if a meet ever escapes the hom space (the meet-of-homs lemma says
// it cannot for the built-in dualizers).
inline Algebra conv_algebra(const FunctionSpace& fs) {
  auto shared = std::make_shared<FunctionSpace>(fs);
  Algebra a{fs.base.m, fs.carrier, {}, "function-space-structure"};
  a.act = [shared](const TElem& frak) {
    ConvOutcome o = conv_eval(*shared, frak);
    if (o.hom_index < 0)
      raise(Errc::MalformedSurface, "structure map left the hom space");
    return o.hom_index;
  };
  return a;
}

inline CheckReport conv_is_algebra(const FunctionSpace& fs, AlgebraMode mode,
                                   const LawsConfig& cfg = {}) {
  return check_algebra(conv_algebra(fs), mode, cfg);
}

// Neighborhood-style structure on the hom carrier: the monoid carried by
// the structure-map algebra (its right adjoint).
inline KleisliMonoid nbhd_structure(const FunctionSpace& fs) {
  return algebra_to_monoid(conv_algebra(fs));
}

struct ExpoVerdict {
  Verdict verdict = Verdict::Pass;  // Pass = exponentiable
  std::string route;
  json witness;

  bool exponentiable() const { return verdict == Verdict::Pass; }
  json to_json() const {
    json j;
    j["exponentiable"] = verdict == Verdict::Pass ? "yes"
                         : verdict == Verdict::Fail ? "no"
                                                    : verdict_name(verdict);
    j["route"] = route;
    j["witness"] = witness;
    return j;
  }
};

// Structural criteria, one per monad.
inline ExpoVerdict exponentiability_criterion(const KleisliMonoid& s) {
  ExpoVerdict v;
  switch (s.m.kind) {
    case MonadKind::P:
      v.route = "subset-structures";
      return v;
    case MonadKind::F:
      v.route = "finite-topology";
      return v;
    case MonadKind::U: {
      v.route = "opens-distributivity";
      OpensResult opens = opens_of(s);
      try {
        DistributivityResult d = is_distributive(opens.order);
        if (!d.distributive) {
          v.verdict = Verdict::Fail;
          v.witness = {{"x", opens.order.carrier.id(d.x)},
                       {"y", opens.order.carrier.id(d.y)},
                       {"z", opens.order.carrier.id(d.z)}};
        }
      } catch (const Error& e) {
        v.verdict = Verdict::Fail;
        v.witness = {{"reason", e.what()}};
      }
      return v;
    }
    default: {
      const Quantale& q = s.m.quant();
      if (s.m.kappa == KappaFlavor::Tensor) {
        v.route = "tensor-pairing";
        return v;
      }
      v.route = "cartesian-interchange";
      if (!q.frame || !q.unit_is_top) {
        v.verdict = Verdict::HypothesisUnmet;
        v.witness = {{"reason", "cartesian criterion needs a frame with its unit on top"}};
        return v;
      }
      int n = s.size(), nv = q.size();
      for (int u = 0; u < nv; ++u)
        for (int w = 0; w < nv; ++w)
          for (int x = 0; x < n; ++x)
            for (int z = 0; z < n; ++z) {
              int lhs = q.bot();
              for (int y = 0; y < n; ++y) {
                int a = q.meet(u, s.alpha[static_cast<std::size_t>(x)].vals[static_cast<std::size_t>(y)]);
                int b = q.meet(w, s.alpha[static_cast<std::size_t>(y)].vals[static_cast<std::size_t>(z)]);
                lhs = q.join(lhs, q.tens(a, b));
              }
              int rhs = q.meet(q.tens(u, w),
                               s.alpha[static_cast<std::size_t>(x)].vals[static_cast<std::size_t>(z)]);
              if (!q.leq(rhs, lhs)) {
                v.verdict = Verdict::Fail;
                v.witness = {{"u", q.carrier.id(u)},
                             {"v", q.carrier.id(w)},
                             {"x", s.carrier.id(x)},
                             {"z", s.carrier.id(z)},
                             {"lhs", q.carrier.id(lhs)},
                             {"rhs", q.carrier.id(rhs)}};
                return v;
              }
            }
      return v;
    }
  }
}

// Evaluation out of the function space is couniversal: every structured
// map Z box X -> V factors through ev by a unique structure-preserving
// currying.
inline CheckReport check_couniversal(const KleisliMonoid& s, const Algebra& dual,
                                     const std::vector<KleisliMonoid>& tests) {
  FunctionSpace fs = function_space(s, dual);
  KleisliMonoid hom_monoid = nbhd_structure(fs);
  int n = fs.points(), nh = fs.hom_count();
  CheckReport r = CheckReport::pass();
  r.stats["homs"] = nh;

  // The structure map collapses its own adjoint: conv of the adjoint of g
  // is g again.
  {
    Algebra ca = conv_algebra(fs);
    for (int h = 0; h < nh; ++h) {
      if (ca.act(hom_monoid.alpha[static_cast<std::size_t>(h)]) != h)
        return CheckReport::fail({{"check", "structure-after-adjoint"},
                                  {"hom", fs.carrier.id(h)}});
    }
  }

  // ev is itself structure-preserving out of the box product.
  KleisliMonoid box = box_product(hom_monoid, s);
  if (!is_hom(fs.ev_tbl, box, fs.dual_monoid))
    return CheckReport::fail({{"check", "evaluation-is-hom"}});

  long long curried = 0;
  for (const KleisliMonoid& z : tests) {
    KleisliMonoid zbox = box_product(z, s);
    std::vector<std::vector<int>> gs = hom_set(zbox, fs.dual_monoid, s.m.caps.homs);
    for (const std::vector<int>& g : gs) {
      ++curried;
      // Curry pointwise and find each slice in the hom space.
      std::vector<int> curry(static_cast<std::size_t>(z.size()));
      for (int zi = 0; zi < z.size(); ++zi) {
        std::vector<int> slice(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) slice[static_cast<std::size_t>(x)] = g[static_cast<std::size_t>(zi * n + x)];
        auto it = fs.hom_pos.find(slice);
        if (it == fs.hom_pos.end())
          return CheckReport::fail({{"check", "curry-lands-in-hom-space"},
                                    {"test_carrier", z.size()},
                                    {"map", g},
                                    {"slice_at", z.carrier.id(zi)}});
        curry[static_cast<std::size_t>(zi)] = it->second;
      }
      if (!is_hom(curry, z, hom_monoid))
        return CheckReport::fail({{"check", "curry-is-hom"}, {"test_carrier", z.size()}, {"map", g}});

      // Uniqueness among structure-preserving factorizations.
      int factorizations = 0;
      bool curry_seen = false;
      long long space = 1;
      for (int i = 0; i < z.size(); ++i) space *= nh;
      if (space > s.m.caps.homs) raise(Errc::CapExceeded, "couniversal: factorization space exceeds cap");
      for_each_map(z.size(), nh, [&](const std::vector<int>& u) {
        bool factors = true;
        for (int zi = 0; zi < z.size() && factors; ++zi)
          for (int x = 0; x < n && factors; ++x)
            if (fs.ev_tbl[static_cast<std::size_t>(u[static_cast<std::size_t>(zi)] * n + x)] !=
                g[static_cast<std::size_t>(zi * n + x)])
              factors = false;
        if (!factors || !is_hom(u, z, hom_monoid)) return;
        ++factorizations;
        if (u == curry) curry_seen = true;
      });
      if (factorizations != 1 || !curry_seen)
        return CheckReport::fail({{"check", "curry-unique"},
                                  {"test_carrier", z.size()},
                                  {"map", g},
                                  {"factorizations", factorizations}});
    }
  }
  r.stats["curried_maps"] = curried;
  return r;
}

// The exponential object [X, Y]: hom carrier with the initial structure
// along post-composition into the function space, one leg per hom Y -> V.
struct Exponential {
  KleisliMonoid object;
  std::vector<std::vector<int>> homs;  // tables X -> Y backing the carrier
};

inline Exponential exponential(const KleisliMonoid& x, const KleisliMonoid& y, const Algebra& dual) {
  if (!x.m.same_theory(y.m)) raise(Errc::MonadMismatch, "exponential: mismatched theories");
  FunctionSpace fs = function_space(x, dual);
  KleisliMonoid hom_monoid = nbhd_structure(fs);

  std::vector<std::vector<int>> homs_xy = hom_set(x, y, x.m.caps.homs);
  FinSet carrier = detail::hom_carrier(static_cast<int>(homs_xy.size()));
  std::vector<std::vector<int>> homs_yv = hom_set(y, fs.dual_monoid, x.m.caps.homs);

  std::vector<std::pair<std::vector<int>, KleisliMonoid>> legs;
  legs.reserve(homs_yv.size());
  for (const std::vector<int>& f : homs_yv) {
    std::vector<int> leg(homs_xy.size());
    for (std::size_t gidx = 0; gidx < homs_xy.size(); ++gidx) {
      std::vector<int> composed(static_cast<std::size_t>(x.size()));
      for (int xi = 0; xi < x.size(); ++xi)
        composed[static_cast<std::size_t>(xi)] =
            f[static_cast<std::size_t>(homs_xy[gidx][static_cast<std::size_t>(xi)])];
      auto it = fs.hom_pos.find(composed);
      if (it == fs.hom_pos.end())
        raise(Errc::MalformedSurface, "exponential: post-composition left the hom space");
      leg[gidx] = it->second;
    }
    legs.emplace_back(std::move(leg), hom_monoid);
  }

  Exponential e{initial_structure(x.m, carrier, legs), std::move(homs_xy)};
  return e;
}

// Hom-set sizes on both sides of the expected adjunction, with the
// currying bijection checked explicitly.
struct AdjunctionCount {
  long long boxed;    // |[Z box X, Y]|
  long long curried;  // |[Z, [X,Y]]|
  bool bijective;

  json to_json() const {
    json j;
    j["boxed_homs"] = boxed;
    j["curried_homs"] = curried;
    j["bijective"] = bijective;
    return j;
  }
};

inline AdjunctionCount adjunction_count(const KleisliMonoid& z, const KleisliMonoid& x,
                                        const KleisliMonoid& y, const Algebra& dual) {
  Exponential e = exponential(x, y, dual);
  KleisliMonoid zbox = box_product(z, x);
  std::vector<std::vector<int>> left = hom_set(zbox, y, z.m.caps.homs);
  std::vector<std::vector<int>> right = hom_set(z, e.object, z.m.caps.homs);

  std::map<std::vector<int>, int> hom_xy_pos;
  for (std::size_t i = 0; i < e.homs.size(); ++i) hom_xy_pos.emplace(e.homs[i], static_cast<int>(i));
  std::map<std::vector<int>, int> right_pos;
  for (std::size_t i = 0; i < right.size(); ++i) right_pos.emplace(right[i], static_cast<int>(i));

  bool bij = true;
  std::vector<char> hit(right.size(), 0);
  int n = x.size();
  for (const std::vector<int>& g : left) {
    std::vector<int> curry(static_cast<std::size_t>(z.size()));
    bool ok = true;
    for (int zi = 0; zi < z.size() && ok; ++zi) {
      std::vector<int> slice(static_cast<std::size_t>(n));
      for (int xi = 0; xi < n; ++xi) slice[static_cast<std::size_t>(xi)] = g[static_cast<std::size_t>(zi * n + xi)];
      auto it = hom_xy_pos.find(slice);
      if (it == hom_xy_pos.end())
        ok = false;
      else
        curry[static_cast<std::size_t>(zi)] = it->second;
    }
    auto rit = ok ? right_pos.find(curry) : right_pos.end();
    if (!ok || rit == right_pos.end()) {
      bij = false;
      continue;
    }
    if (hit[static_cast<std::size_t>(rit->second)]) bij = false;
    hit[static_cast<std::size_t>(rit->second)] = 1;
  }
  for (char c : hit)
    if (!c) bij = false;

  return {static_cast<long long>(left.size()), static_cast<long long>(right.size()), bij};
}

}  // namespace klab

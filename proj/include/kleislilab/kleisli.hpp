#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kleislilab/laws.hpp"
#include "kleislilab/monad.hpp"
#include "kleislilab/report.hpp"

namespace klab {

// A carrier together with a structure map into its T-space. Reflexivity
// and transitivity in Kleisli form make it a monoid; the four monads then
// present preorders, topologies (as neighborhood filters), interior
// spaces and quantale-valued categories by one definition.
struct KleisliMonoid {
  MonadInstance m;
  FinSet carrier;
  std::vector<TElem> alpha;  // one structure value per carrier point

  int size() const { return carrier.size(); }
};

inline KleisliMonoid unit_monoid(const MonadInstance& m) {
  KleisliMonoid s{m, unit_set(), {t_unit(m, 1, 0)}};
  return s;
}

// Points order presented by the structure: x <= y when the unit at x sits
// below the structure value at y.
inline bool points_leq(const KleisliMonoid& s, int i, int j) {
  return t_elem_leq(s.m, t_unit(s.m, s.size(), i), s.alpha[static_cast<std::size_t>(j)]);
}

inline CheckReport check_monoid(const KleisliMonoid& s) {
  const MonadInstance& m = s.m;
  int n = s.size();
  CheckReport r = CheckReport::pass();
  r.stats["carrier"] = n;

  for (int i = 0; i < n; ++i)
    if (!t_elem_leq(m, t_unit(m, n, i), s.alpha[static_cast<std::size_t>(i)]))
      return CheckReport::fail({{"law", "reflexivity"},
                                {"point", s.carrier.id(i)},
                                {"structure", elem_to_json(m, s.carrier, s.alpha[static_cast<std::size_t>(i)])}});

  bool reflexive_and_transitive = true;
  for (int i = 0; i < n; ++i) {
    TElem twice = kleisli_ext(m, s.alpha, n, s.alpha[static_cast<std::size_t>(i)]);
    if (!t_elem_leq(m, twice, s.alpha[static_cast<std::size_t>(i)])) {
      return CheckReport::fail({{"law", "transitivity"},
                                {"point", s.carrier.id(i)},
                                {"composite", elem_to_json(m, s.carrier, twice)},
                                {"structure", elem_to_json(m, s.carrier, s.alpha[static_cast<std::size_t>(i)])}});
    }
    // With reflexivity in hand the composite dominates the structure as
    // well, so the two laws force equality; treat a gap as a failure of
    // the ambient enrichment rather than of this structure.
    if (!(twice == s.alpha[static_cast<std::size_t>(i)])) reflexive_and_transitive = false;
  }
  if (!reflexive_and_transitive)
    return CheckReport::fail({{"law", "idempotence-expected"},
                              {"note", "reflexive transitive structure composed strictly below itself"}});
  r.stats["checks"] = 2 * n;
  return r;
}

inline bool is_hom(const std::vector<int>& f, const KleisliMonoid& a, const KleisliMonoid& b) {
  if (!a.m.same_theory(b.m)) raise(Errc::MonadMismatch, "is_hom: structures over different theories");
  if (static_cast<int>(f.size()) != a.size()) raise(Errc::MalformedSurface, "is_hom: map table has wrong domain size");
  int nb = b.size();
  for (int x = 0; x < a.size(); ++x) {
    TElem lifted = t_map(a.m, f, nb, a.alpha[static_cast<std::size_t>(x)]);
    if (!t_elem_leq(a.m, lifted, b.alpha[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])]))
      return false;
  }
  return true;
}

// All structure-preserving maps a -> b, in lexicographic table order.
inline std::vector<std::vector<int>> hom_set(const KleisliMonoid& a, const KleisliMonoid& b,
                                             long long cap) {
  long long total = 1;
  for (int i = 0; i < a.size(); ++i) {
    total *= b.size();
    if (total > cap) raise(Errc::CapExceeded, "hom_set: map space exceeds cap");
  }
  std::vector<std::vector<int>> homs;
  for_each_map(a.size(), b.size(), [&](const std::vector<int>& tbl) {
    if (is_hom(tbl, a, b)) homs.push_back(tbl);
  });
  return homs;
}

// Product carrier with the paired structure.
inline KleisliMonoid box_product(const KleisliMonoid& a, const KleisliMonoid& b) {
  if (!a.m.same_theory(b.m)) raise(Errc::MonadMismatch, "box_product: structures over different theories");
  ProductSet p = product_set(a.carrier, b.carrier);
  KleisliMonoid out{a.m, p.set, {}};
  out.alpha.reserve(static_cast<std::size_t>(p.set.size()));
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      out.alpha.push_back(t_kappa(a.m, a.size(), b.size(), a.alpha[static_cast<std::size_t>(i)],
                                  b.alpha[static_cast<std::size_t>(j)]));
  return out;
}

// Right adjoint of the lifted map TX -> TY, as a table over TY. Exists
// because lifted maps preserve suprema for all four monads; both Galois
// inequalities are verified and a gap raises NoAdjoint.
inline std::vector<TElem> lifted_right_adjoint(const MonadInstance& m, const TSpace& tx,
                                               const TSpace& ty, const std::vector<int>& f) {
  int ny = ty.base.size();
  std::vector<TElem> lifted;
  lifted.reserve(static_cast<std::size_t>(tx.size()));
  for (int k = 0; k < tx.size(); ++k) lifted.push_back(t_map(m, f, ny, tx.at(k)));

  std::vector<TElem> adj;
  adj.reserve(static_cast<std::size_t>(ty.size()));
  for (int b = 0; b < ty.size(); ++b) {
    std::vector<const TElem*> below;
    for (int k = 0; k < tx.size(); ++k)
      if (t_elem_leq(m, lifted[static_cast<std::size_t>(k)], ty.at(b))) below.push_back(&tx.at(k));
    TElem cand = sup_fold(m, tx.base.size(), below);
    if (!t_elem_leq(m, t_map(m, f, ny, cand), ty.at(b)))
      raise(Errc::NoAdjoint, "lifted map does not admit a right adjoint at " + ty.carrier.id(b));
    adj.push_back(std::move(cand));
  }
  for (int k = 0; k < tx.size(); ++k) {
    int b = ty.index_of_checked(lifted[static_cast<std::size_t>(k)]);
    if (!t_elem_leq(m, tx.at(k), adj[static_cast<std::size_t>(b)]))
      raise(Errc::NoAdjoint, "lifted map adjoint fails the unit inequality");
  }
  return adj;
}

// Largest structure on x making every leg a hom: the pointwise meet of the
// structures pulled back along the legs. No legs yields the indiscrete
// structure (the top of the structure order).
inline KleisliMonoid initial_structure(
    const MonadInstance& m, const FinSet& x,
    const std::vector<std::pair<std::vector<int>, KleisliMonoid>>& legs) {
  int n = x.size();
  TSpace tx = t_obj(m, x);
  KleisliMonoid out{m, x, {}};
  out.alpha.reserve(static_cast<std::size_t>(n));

  // Per leg: the adjoint table over TY and, per point of x, the index of
  // the pulled-back structure value.
  std::vector<std::vector<TElem>> adjoints;
  std::vector<std::vector<int>> beta_idx;
  for (const auto& [f, target] : legs) {
    if (!m.same_theory(target.m)) raise(Errc::MonadMismatch, "initial_structure: leg over a different theory");
    if (static_cast<int>(f.size()) != n) raise(Errc::MalformedSurface, "initial_structure: leg table has wrong domain size");
    TSpace ty = t_obj(m, target.carrier);
    adjoints.push_back(lifted_right_adjoint(m, tx, ty, f));
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      idx[static_cast<std::size_t>(i)] =
          ty.index_of_checked(target.alpha[static_cast<std::size_t>(f[static_cast<std::size_t>(i)])]);
    beta_idx.push_back(std::move(idx));
  }

  for (int i = 0; i < n; ++i) {
    std::vector<const TElem*> parts;
    for (std::size_t leg = 0; leg < legs.size(); ++leg)
      parts.push_back(&adjoints[leg][static_cast<std::size_t>(beta_idx[leg][static_cast<std::size_t>(i)])]);
    out.alpha.push_back(inf_fold(m, n, parts));
  }
  return out;
}

// Every structure table on x, filtered by the monoid laws, in
// lexicographic table order over the materialized T-space.
inline std::vector<KleisliMonoid> enumerate_monoids(const MonadInstance& m, const FinSet& x) {
  TSpace tx = t_obj(m, x);
  int n = x.size();
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= tx.size();
    if (total > m.caps.homs) raise(Errc::CapExceeded, "enumerate_monoids: structure space exceeds hom cap");
  }
  std::vector<KleisliMonoid> found;
  for_each_map(n, tx.size(), [&](const std::vector<int>& tbl) {
    KleisliMonoid s{m, x, {}};
    s.alpha.reserve(static_cast<std::size_t>(n));
    for (int i : tbl) s.alpha.push_back(tx.at(i));
    if (check_monoid(s).passed()) found.push_back(std::move(s));
  });
  return found;
}

}  // namespace klab

#pragma once

#include <climits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kleislilab/bitset.hpp"
#include "kleislilab/errors.hpp"
#include "kleislilab/finset.hpp"
#include "kleislilab/order.hpp"
#include "kleislilab/quantale.hpp"
#include "kleislilab/report.hpp"

namespace klab {

enum class MonadKind { P, F, U, PV };
enum class KappaFlavor { Tensor, Cartesian };

inline const char* kind_name(MonadKind k) {
  switch (k) {
    case MonadKind::P: return "P";
    case MonadKind::F: return "F";
    case MonadKind::U: return "U";
    case MonadKind::PV: return "PV";
  }
  return "?";
}

inline MonadKind kind_from_string(const std::string& s) {
  if (s == "P") return MonadKind::P;
  if (s == "F") return MonadKind::F;
  if (s == "U") return MonadKind::U;
  if (s == "PV") return MonadKind::PV;
  raise(Errc::UnknownName, "no monad named '" + s + "'");
}

/** Enumeration budgets. tx bounds materialized T-spaces, ttx bounds
 *  double-level spaces and witness sweeps, homs bounds map-space scans. */
struct Caps {
  long long tx = 20000;
  long long ttx = 200000;
  long long homs = 1000000;
};

/** One of the four set-functor monads this library knows how to run:
 *
 *   P   subsets of X; unit = singleton, mult = union.
 *   F   filters on X. On a finite carrier every filter is the up-closure
 *       of its intersection, so elements are stored by that principal
 *       generator; the empty generator encodes the improper filter (all
 *       of PX), which is kept as a genuine element.
 *   U   up-closed families of subsets of X, stored as a bit per subset
 *       mask of the base.
 *   PV  functions X -> V into a quantale V.
 *
 * Each comes with the inclusion tau of P into it and a product-style
 * kappa; for PV kappa is tensor (needs a commutative quantale) or
 * pointwise meet (needs a frame).
 */
struct MonadInstance {
  MonadKind kind = MonadKind::P;
  std::shared_ptr<const Quantale> q;
  KappaFlavor kappa = KappaFlavor::Tensor;
  Caps caps;

  static MonadInstance make_p(Caps c = {}) { return {MonadKind::P, nullptr, KappaFlavor::Tensor, c}; }
  static MonadInstance make_f(Caps c = {}) { return {MonadKind::F, nullptr, KappaFlavor::Tensor, c}; }
  static MonadInstance make_u(Caps c = {}) { return {MonadKind::U, nullptr, KappaFlavor::Tensor, c}; }

  static MonadInstance make_pv(Quantale quant, KappaFlavor flavor = KappaFlavor::Tensor,
                               Caps c = {}) {
    if (!check_quantale(quant).passed())
      raise(Errc::HypothesisUnmet, "quantale laws fail for '" + quant.name + "'");
    if (flavor == KappaFlavor::Tensor && !quant.commutative)
      raise(Errc::HypothesisUnmet, "tensor kappa needs a commutative quantale");
    if (flavor == KappaFlavor::Cartesian && !quant.frame)
      raise(Errc::HypothesisUnmet, "cartesian kappa needs a frame");
    MonadInstance m;
    m.kind = MonadKind::PV;
    m.q = std::make_shared<Quantale>(std::move(quant));
    m.kappa = flavor;
    m.caps = c;
    return m;
  }

  const Quantale& quant() const {
    assert(q);
    return *q;
  }

  bool same_theory(const MonadInstance& o) const {
    if (kind != o.kind) return false;
    if (kind != MonadKind::PV) return true;
    return kappa == o.kappa && quant().same_as(o.quant());
  }

  std::string describe() const {
    std::string s = kind_name(kind);
    if (kind == MonadKind::PV)
      s += std::string("[") + (quant().name.empty() ? "custom" : quant().name) + "," +
           (kappa == KappaFlavor::Tensor ? "tensor" : "cartesian") + "]";
    return s;
  }
};

/** Element of T(base). Which field is live depends on the monad:
 *  set = the subset (P) / the principal generator (F) / one bit per subset
 *  mask of the base (U); vals = a quantale value per base point (PV). */
struct TElem {
  MonadKind kind = MonadKind::P;
  Bitset set;
  std::vector<int> vals;

  bool operator==(const TElem& o) const {
    return kind == o.kind && set == o.set && vals == o.vals;
  }
  bool operator<(const TElem& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (!(set == o.set)) return set < o.set;
    return vals < o.vals;
  }
};

// ---- U family helpers (bit i of a family = subset mask i of the base) ----

inline void require_family_base(int n) {
  if (n > 24)
    raise(Errc::CapExceeded,
          "up-family over a " + std::to_string(n) + "-point base needs 2^" + std::to_string(n) +
              " bits");
}

inline bool family_up_closed(const Bitset& fam, int n) {
  int total = 1 << n;
  for (int m = 0; m < total; ++m) {
    if (!fam.test(m)) continue;
    for (int b = 0; b < n; ++b)
      if (!(m & (1 << b)) && !fam.test(m | (1 << b))) return false;
  }
  return true;
}

inline Bitset family_up_closure(const Bitset& seeds, int n) {
  int total = 1 << n;
  Bitset fam = seeds;
  for (int m = 0; m < total; ++m) {
    if (fam.test(m)) continue;
    for (int b = 0; b < n; ++b)
      if ((m & (1 << b)) && fam.test(m ^ (1 << b))) {
        fam.set(m);
        break;
      }
  }
  return fam;
}

inline std::vector<std::uint32_t> family_min_sets(const Bitset& fam, int n) {
  std::vector<std::uint32_t> mins;
  int total = 1 << n;
  for (int m = 0; m < total; ++m) {
    if (!fam.test(m)) continue;
    bool minimal = true;
    for (int b = 0; b < n && minimal; ++b)
      if ((m & (1 << b)) && fam.test(m ^ (1 << b))) minimal = false;
    if (minimal) mins.push_back(static_cast<std::uint32_t>(m));
  }
  return mins;
}

// ---- size estimation ----

inline long long t_size_estimate(const MonadInstance& m, int n) {
  auto pow_sat = [](long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) {
      if (r > LLONG_MAX / (b == 0 ? 1 : b)) return LLONG_MAX;
      r *= b;
    }
    return r;
  };
  switch (m.kind) {
    case MonadKind::P:
    case MonadKind::F:
      return n >= 62 ? LLONG_MAX : (1LL << n);
    case MonadKind::U: {
      // Counts of up-closed families over an n-point base (Dedekind numbers).
      static const long long dedekind[] = {2, 3, 6, 20, 168, 7581, 7828354, 2414682040998LL};
      return n <= 7 ? dedekind[n] : LLONG_MAX;
    }
    case MonadKind::PV:
      return pow_sat(m.quant().size(), n);
  }
  return LLONG_MAX;
}

// ---- materialized T-space ----

inline std::string elem_label(const MonadInstance& m, const FinSet& base, const TElem& e);

/** T applied to a carrier, with every element enumerated in canonical
 *  order. Carrier ids are zero-padded positional names so that derived
 *  spaces stay lexicographically ordered; labels carry the readable form. */
struct TSpace {
  MonadInstance m;
  FinSet base;
  std::vector<TElem> elems;
  FinSet carrier;
  std::vector<std::string> labels;
  std::map<TElem, int> pos;

  int size() const { return static_cast<int>(elems.size()); }
  const TElem& at(int i) const { return elems[static_cast<std::size_t>(i)]; }
  int index_of(const TElem& e) const {
    auto it = pos.find(e);
    return it == pos.end() ? -1 : it->second;
  }
  int index_of_checked(const TElem& e) const {
    int i = index_of(e);
    assert(i >= 0);
    return i;
  }
};

namespace detail {
inline void enumerate_up_families(int n, std::vector<TElem>& out, long long cap) {
  // Masks from large popcount to small: a mask may enter the family only
  // when all its one-bit extensions are already in, so every partial
  // assignment completes and the census is exactly the up-closed families.
  int total = 1 << n;
  std::vector<int> order(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [](int a, int b) {
    return std::popcount(static_cast<unsigned>(a)) > std::popcount(static_cast<unsigned>(b));
  });
  Bitset fam(total);
  auto rec = [&](auto&& self, std::size_t at) -> void {
    if (at == order.size()) {
      if (static_cast<long long>(out.size()) >= cap)
        raise(Errc::CapExceeded, "up-family enumeration exceeds cap");
      TElem e;
      e.kind = MonadKind::U;
      e.set = fam;
      out.push_back(std::move(e));
      return;
    }
    int msk = order[at];
    self(self, at + 1);
    bool ok = true;
    for (int b = 0; b < n && ok; ++b)
      if (!(msk & (1 << b)) && !fam.test(msk | (1 << b))) ok = false;
    if (ok) {
      fam.set(msk);
      self(self, at + 1);
      fam.reset(msk);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
}
}  // namespace detail

inline TSpace t_obj(const MonadInstance& m, const FinSet& base, long long cap_override = -1) {
  long long cap = cap_override > 0 ? cap_override : m.caps.tx;
  int n = base.size();
  long long est = t_size_estimate(m, n);
  if (est > cap)
    raise(Errc::CapExceeded, "|" + m.describe() + "(" + std::to_string(n) + " points)| = " +
                                 (est == LLONG_MAX ? std::string("huge") : std::to_string(est)) +
                                 " exceeds cap " + std::to_string(cap));
  TSpace sp;
  sp.m = m;
  sp.base = base;
  switch (m.kind) {
    case MonadKind::P:
    case MonadKind::F:
      for (std::uint64_t msk = 0; msk < (std::uint64_t{1} << n); ++msk) {
        TElem e;
        e.kind = m.kind;
        e.set = Bitset::from_mask(n, msk);
        sp.elems.push_back(std::move(e));
      }
      break;
    case MonadKind::U:
      require_family_base(n);
      detail::enumerate_up_families(n, sp.elems, cap);
      break;
    case MonadKind::PV: {
      int nv = m.quant().size();
      TElem e;
      e.kind = MonadKind::PV;
      e.vals.assign(static_cast<std::size_t>(n), 0);
      while (true) {
        sp.elems.push_back(e);
        int d = n - 1;
        while (d >= 0 && e.vals[static_cast<std::size_t>(d)] == nv - 1) {
          e.vals[static_cast<std::size_t>(d)] = 0;
          --d;
        }
        if (d < 0) break;
        ++e.vals[static_cast<std::size_t>(d)];
      }
      break;
    }
  }
  int width = 1;
  for (long long v = static_cast<long long>(sp.elems.size()) - 1; v >= 10; v /= 10) ++width;
  std::vector<std::string> ids;
  ids.reserve(sp.elems.size());
  for (std::size_t i = 0; i < sp.elems.size(); ++i) {
    std::string num = std::to_string(i);
    ids.push_back("t" + std::string(static_cast<std::size_t>(width) - num.size(), '0') + num);
    sp.labels.push_back(elem_label(m, base, sp.elems[i]));
    sp.pos.emplace(sp.elems[i], static_cast<int>(i));
  }
  sp.carrier = FinSet::ordered(std::move(ids));
  return sp;
}

// ---- pointwise structure maps ----

inline TElem t_unit(const MonadInstance& m, int n, int i) {
  TElem e;
  e.kind = m.kind;
  switch (m.kind) {
    case MonadKind::P:
    case MonadKind::F:
      e.set = Bitset::single(n, i);
      break;
    case MonadKind::U: {
      require_family_base(n);
      e.set = Bitset(1 << n);
      for (int msk = 0; msk < (1 << n); ++msk)
        if (msk & (1 << i)) e.set.set(msk);
      break;
    }
    case MonadKind::PV:
      e.vals.assign(static_cast<std::size_t>(n), m.quant().bot());
      e.vals[static_cast<std::size_t>(i)] = m.quant().unit;
      break;
  }
  return e;
}

inline TElem t_tau(const MonadInstance& m, int n, const Bitset& a) {
  TElem e;
  e.kind = m.kind;
  switch (m.kind) {
    case MonadKind::P:
    case MonadKind::F:
      e.set = a;
      break;
    case MonadKind::U: {
      require_family_base(n);
      assert(n <= 62);
      std::uint64_t amask = a.mask();
      e.set = Bitset(1 << n);
      for (std::uint64_t msk = 0; msk < (std::uint64_t{1} << n); ++msk)
        if ((msk & amask) == amask) e.set.set(static_cast<int>(msk));
      break;
    }
    case MonadKind::PV: {
      e.vals.assign(static_cast<std::size_t>(n), m.quant().bot());
      a.for_each([&](int i) { e.vals[static_cast<std::size_t>(i)] = m.quant().unit; });
      break;
    }
  }
  return e;
}

inline TElem t_map(const MonadInstance& m, const std::vector<int>& f, int ny, const TElem& x) {
  TElem e;
  e.kind = m.kind;
  int nx = static_cast<int>(f.size());
  switch (m.kind) {
    case MonadKind::P:
    case MonadKind::F: {
      e.set = Bitset(ny);
      x.set.for_each([&](int i) { e.set.set(f[static_cast<std::size_t>(i)]); });
      break;
    }
    case MonadKind::U: {
      require_family_base(ny);
      e.set = Bitset(1 << ny);
      for (int bmask = 0; bmask < (1 << ny); ++bmask) {
        int pre = 0;
        for (int i = 0; i < nx; ++i)
          if (bmask & (1 << f[static_cast<std::size_t>(i)])) pre |= 1 << i;
        if (x.set.test(pre)) e.set.set(bmask);
      }
      break;
    }
    case MonadKind::PV: {
      const Quantale& q = m.quant();
      e.vals.assign(static_cast<std::size_t>(ny), q.bot());
      for (int i = 0; i < nx; ++i) {
        int y = f[static_cast<std::size_t>(i)];
        e.vals[static_cast<std::size_t>(y)] =
            q.join(e.vals[static_cast<std::size_t>(y)], x.vals[static_cast<std::size_t>(i)]);
      }
      break;
    }
  }
  return e;
}

/** Kleisli extension: given g : X -> TY as a table and an element of TX,
 *  produce mult(Tg(x)) in TY directly. mult itself is the special case
 *  where g is the identity table of a materialized space. */
inline TElem kleisli_ext(const MonadInstance& m, const std::vector<TElem>& g, int ny,
                         const TElem& x) {
  TElem e;
  e.kind = m.kind;
  int nx = static_cast<int>(g.size());
  switch (m.kind) {
    case MonadKind::P:
    case MonadKind::F: {
      e.set = Bitset(ny);
      x.set.for_each([&](int i) { e.set = e.set | g[static_cast<std::size_t>(i)].set; });
      break;
    }
    case MonadKind::U: {
      require_family_base(ny);
      e.set = Bitset(1 << ny);
      for (int bmask = 0; bmask < (1 << ny); ++bmask) {
        int pre = 0;
        for (int i = 0; i < nx; ++i)
          if (g[static_cast<std::size_t>(i)].set.test(bmask)) pre |= 1 << i;
        if (x.set.test(pre)) e.set.set(bmask);
      }
      break;
    }
    case MonadKind::PV: {
      const Quantale& q = m.quant();
      e.vals.assign(static_cast<std::size_t>(ny), q.bot());
      for (int y = 0; y < ny; ++y) {
        int acc = q.bot();
        for (int i = 0; i < nx; ++i)
          acc = q.join(acc, q.tens(x.vals[static_cast<std::size_t>(i)],
                                   g[static_cast<std::size_t>(i)].vals[static_cast<std::size_t>(y)]));
        e.vals[static_cast<std::size_t>(y)] = acc;
      }
      break;
    }
  }
  return e;
}

inline TElem mult(const TSpace& tx, const TElem& outer) {
  return kleisli_ext(tx.m, tx.elems, tx.base.size(), outer);
}

inline TElem t_kappa(const MonadInstance& m, int nx, int ny, const TElem& a, const TElem& b) {
  TElem e;
  e.kind = m.kind;
  int np = nx * ny;
  switch (m.kind) {
    case MonadKind::P:
    case MonadKind::F: {
      e.set = Bitset(np);
      a.set.for_each([&](int i) { b.set.for_each([&](int j) { e.set.set(i * ny + j); }); });
      break;
    }
    case MonadKind::U: {
      // Up-closure of the rectangles A x B; minimal members suffice as seeds.
      require_family_base(np);
      Bitset seeds(1 << np);
      for (std::uint32_t am : family_min_sets(a.set, nx))
        for (std::uint32_t bm : family_min_sets(b.set, ny)) {
          int rect = 0;
          for (int i = 0; i < nx; ++i)
            if (am & (1u << i))
              for (int j = 0; j < ny; ++j)
                if (bm & (1u << j)) rect |= 1 << (i * ny + j);
          seeds.set(rect);
        }
      e.set = family_up_closure(seeds, np);
      break;
    }
    case MonadKind::PV: {
      const Quantale& q = m.quant();
      e.vals.assign(static_cast<std::size_t>(np), q.bot());
      for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
          e.vals[static_cast<std::size_t>(i * ny + j)] =
              m.kappa == KappaFlavor::Tensor
                  ? q.tens(a.vals[static_cast<std::size_t>(i)], b.vals[static_cast<std::size_t>(j)])
                  : q.meet(a.vals[static_cast<std::size_t>(i)], b.vals[static_cast<std::size_t>(j)]);
      break;
    }
  }
  return e;
}

// ---- generator descriptions of U elements one level up ----
//
// An element of UU(base) is an up-family of subsets of U(base). When U(base)
// is large its members cannot be held as one bit per subset mask, but any
// up-family is the up-closure of finitely many generator sets, and the
// monad data only ever asks membership questions that reduce to "does some
// generator sit inside this set". Each generator is kept as a list of
// indices into the materialized space.

using UGens = std::vector<std::vector<int>>;

/** mult on a generator-described element of UU(base): a subset B of the
 *  base lands in the result iff some generator G has B in every family
 *  G points at. */
inline TElem ugen_mult(const TSpace& tx, const UGens& gens) {
  assert(tx.m.kind == MonadKind::U);
  int n = tx.base.size();
  require_family_base(n);
  TElem e;
  e.kind = MonadKind::U;
  e.set = Bitset(1 << n);
  for (int bmask = 0; bmask < (1 << n); ++bmask) {
    for (const auto& g : gens) {
      bool all = true;
      for (int i : g)
        if (!tx.at(i).set.test(bmask)) {
          all = false;
          break;
        }
      if (all) {
        e.set.set(bmask);
        break;
      }
    }
  }
  return e;
}

/** Image of a generator-described element under Uf, for f given as an
 *  index table out of the space's carrier: generators map to their element
 *  images. */
inline UGens ugen_map(const std::vector<int>& f, const UGens& gens) {
  UGens out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    std::vector<int> img;
    img.reserve(g.size());
    for (int i : g) img.push_back(f[static_cast<std::size_t>(i)]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    out.push_back(std::move(img));
  }
  return out;
}

/** Concrete UU(base) element (one bit per subset of the carrier) from a
 *  generator description; only for small spaces. */
inline TElem ugen_concrete(const TSpace& tx, const UGens& gens) {
  int nt = tx.size();
  require_family_base(nt);
  Bitset seeds(1 << nt);
  for (const auto& g : gens) {
    int msk = 0;
    for (int i : g) msk |= 1 << i;
    seeds.set(msk);
  }
  TElem e;
  e.kind = MonadKind::U;
  e.set = family_up_closure(seeds, nt);
  return e;
}

// ---- the refinement order on TX and its lattice structure ----

inline bool t_elem_leq(const MonadInstance& m, const TElem& a, const TElem& b) {
  switch (m.kind) {
    case MonadKind::P:
    case MonadKind::F:
      return a.set.subset_of(b.set);
    case MonadKind::U:
      return b.set.subset_of(a.set);  // reverse inclusion of families
    case MonadKind::PV: {
      const Quantale& q = m.quant();
      for (std::size_t i = 0; i < a.vals.size(); ++i)
        if (!q.leq(a.vals[i], b.vals[i])) return false;
      return true;
    }
  }
  return false;
}

/** Supremum of a set of elements of TX, the mult-of-tau recipe in closed
 *  form per monad (union / generator union / family intersection /
 *  pointwise join). The empty supremum is the bottom of the order. */
inline TElem sup_fold(const MonadInstance& m, int n, const std::vector<const TElem*>& items) {
  TElem e;
  e.kind = m.kind;
  switch (m.kind) {
    case MonadKind::P:
    case MonadKind::F:
      e.set = Bitset(n);
      for (auto* it : items) e.set = e.set | it->set;
      break;
    case MonadKind::U:
      require_family_base(n);
      e.set = Bitset::full(1 << n);
      for (auto* it : items) e.set = e.set & it->set;
      break;
    case MonadKind::PV: {
      const Quantale& q = m.quant();
      e.vals.assign(static_cast<std::size_t>(n), q.bot());
      for (auto* it : items)
        for (int i = 0; i < n; ++i)
          e.vals[static_cast<std::size_t>(i)] =
              q.join(e.vals[static_cast<std::size_t>(i)], it->vals[static_cast<std::size_t>(i)]);
      break;
    }
  }
  return e;
}

/** Infimum, dually (intersection / generator intersection from the full
 *  set / family union / pointwise meet). The empty infimum is the top. */
inline TElem inf_fold(const MonadInstance& m, int n, const std::vector<const TElem*>& items) {
  TElem e;
  e.kind = m.kind;
  switch (m.kind) {
    case MonadKind::P:
    case MonadKind::F:
      e.set = Bitset::full(n);
      for (auto* it : items) e.set = e.set & it->set;
      break;
    case MonadKind::U:
      require_family_base(n);
      e.set = Bitset(1 << n);
      for (auto* it : items) e.set = e.set | it->set;
      break;
    case MonadKind::PV: {
      const Quantale& q = m.quant();
      e.vals.assign(static_cast<std::size_t>(n), q.top());
      for (auto* it : items)
        for (int i = 0; i < n; ++i)
          e.vals[static_cast<std::size_t>(i)] =
              q.meet(e.vals[static_cast<std::size_t>(i)], it->vals[static_cast<std::size_t>(i)]);
      break;
    }
  }
  return e;
}

inline TElem sup_of(const TSpace& tx, const Bitset& subset) {
  std::vector<const TElem*> items;
  subset.for_each([&](int i) { items.push_back(&tx.at(i)); });
  return sup_fold(tx.m, tx.base.size(), items);
}

inline TElem inf_of(const TSpace& tx, const Bitset& subset) {
  std::vector<const TElem*> items;
  subset.for_each([&](int i) { items.push_back(&tx.at(i)); });
  return inf_fold(tx.m, tx.base.size(), items);
}

inline TElem t_bottom(const MonadInstance& m, int n) { return sup_fold(m, n, {}); }
inline TElem t_top(const MonadInstance& m, int n) { return inf_fold(m, n, {}); }

/** The refinement order on a materialized space, computed directly. The
 *  sup-structure route (induced_order over mult of tau) agrees with this;
 *  order_on_t_via_sup below exists so that agreement stays checkable. */
inline FinOrder order_on_t(const TSpace& tx) {
  int n = tx.size();
  std::vector<Bitset> up(static_cast<std::size_t>(n), Bitset(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (t_elem_leq(tx.m, tx.at(i), tx.at(j))) up[static_cast<std::size_t>(i)].set(j);
  return make_order(tx.carrier, std::move(up));
}

inline FinOrder order_on_t_via_sup(const TSpace& tx) {
  SupStructure s;
  s.carrier = tx.carrier;
  s.sup = [&tx](const Bitset& subset) { return tx.index_of_checked(sup_of(tx, subset)); };
  return induced_order(s);
}

// ---- display ----

inline std::string elem_label(const MonadInstance& m, const FinSet& base, const TElem& e) {
  auto set_label = [&](const Bitset& s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](int i) {
      if (!first) out += ",";
      out += base.id(i);
      first = false;
    });
    return out + "}";
  };
  switch (m.kind) {
    case MonadKind::P:
      return set_label(e.set);
    case MonadKind::F:
      return "up" + set_label(e.set);
    case MonadKind::U: {
      std::string out = "fam[";
      bool first = true;
      for (std::uint32_t msk : family_min_sets(e.set, base.size())) {
        if (!first) out += ",";
        out += set_label(Bitset::from_mask(base.size(), msk));
        first = false;
      }
      return out + "]";
    }
    case MonadKind::PV: {
      std::string out = "(";
      for (int i = 0; i < base.size(); ++i) {
        if (i) out += ",";
        out += base.id(i) + ":" + m.quant().carrier.id(e.vals[static_cast<std::size_t>(i)]);
      }
      return out + ")";
    }
  }
  return "?";
}

inline json elem_to_json(const MonadInstance& m, const FinSet& base, const TElem& e) {
  auto set_json = [&](const Bitset& s) {
    json arr = json::array();
    s.for_each([&](int i) { arr.push_back(base.id(i)); });
    return arr;
  };
  json j;
  switch (m.kind) {
    case MonadKind::P:
      j["set"] = set_json(e.set);
      break;
    case MonadKind::F:
      j["filter_generator"] = set_json(e.set);
      break;
    case MonadKind::U: {
      json mins = json::array();
      for (std::uint32_t msk : family_min_sets(e.set, base.size()))
        mins.push_back(set_json(Bitset::from_mask(base.size(), msk)));
      j["up_family_min"] = mins;
      break;
    }
    case MonadKind::PV: {
      json fn = json::object();
      for (int i = 0; i < base.size(); ++i)
        fn[base.id(i)] = m.quant().carrier.id(e.vals[static_cast<std::size_t>(i)]);
      j["function"] = fn;
      break;
    }
  }
  return j;
}

}  // namespace klab

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kleislilab/bitset.hpp"
#include "kleislilab/errors.hpp"
#include "kleislilab/finset.hpp"

namespace klab {

/** Partial order on a carrier. up[i] is the principal up-set of element i,
 *  so leq(i,j) == up[i].test(j). */
struct FinOrder {
  FinSet carrier;
  std::vector<Bitset> up;

  bool leq(int i, int j) const { return up[static_cast<std::size_t>(i)].test(j); }
  int size() const { return carrier.size(); }

  Bitset up_set(int i) const { return up[static_cast<std::size_t>(i)]; }
  Bitset down_set(int i) const {
    Bitset d(size());
    for (int j = 0; j < size(); ++j)
      if (leq(j, i)) d.set(j);
    return d;
  }
};

// Validates reflexivity, antisymmetry, transitivity of a raw relation.
inline FinOrder make_order(FinSet carrier, std::vector<Bitset> up) {
  FinOrder o{std::move(carrier), std::move(up)};
  int n = o.size();
  for (int i = 0; i < n; ++i)
    if (!o.leq(i, i)) raise(Errc::NotALattice, "relation not reflexive at " + o.carrier.id(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && o.leq(i, j) && o.leq(j, i))
        raise(Errc::NotALattice,
              "antisymmetry fails on {" + o.carrier.id(i) + ", " + o.carrier.id(j) + "}");
      if (o.leq(i, j) && !o.up[static_cast<std::size_t>(j)].subset_of(o.up[static_cast<std::size_t>(i)]))
        raise(Errc::NotALattice,
              "transitivity fails through " + o.carrier.id(i) + " <= " + o.carrier.id(j));
    }
  return o;
}

inline std::vector<Bitset> reflexive_transitive_closure(int n, std::vector<Bitset> up) {
  for (int i = 0; i < n; ++i) up[static_cast<std::size_t>(i)].set(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (up[static_cast<std::size_t>(i)].test(j)) {
          Bitset merged = up[static_cast<std::size_t>(i)] | up[static_cast<std::size_t>(j)];
          if (merged != up[static_cast<std::size_t>(i)]) {
            up[static_cast<std::size_t>(i)] = merged;
            changed = true;
          }
        }
  }
  return up;
}

/** A carrier together with a total choice of suprema: sup(S) for every
 *  subset S, the data a multiplication-against-tau recipe produces. */
struct SupStructure {
  FinSet carrier;
  std::function<int(const Bitset&)> sup;
};

/** Order induced by a supremum assignment: x <= y iff sup({x,y}) = y.
 *
 * Checks that the relation is a partial order, that pairwise suprema are
 * genuine least upper bounds, and (up to full_check_limit subsets) that
 * sup(S) is the least upper bound of every S. A failure means the supremum
 * data did not come from a complete lattice.
 */
inline FinOrder induced_order(const SupStructure& s, std::uint64_t full_check_limit = 1u << 12) {
  int n = s.carrier.size();
  for (int i = 0; i < n; ++i)
    if (s.sup(Bitset::single(n, i)) != i)
      raise(Errc::NotALattice, "sup of singleton {" + s.carrier.id(i) + "} is not itself");

  std::vector<std::vector<int>> pj(static_cast<std::size_t>(n),
                                   std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<Bitset> up(static_cast<std::size_t>(n), Bitset(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Bitset pairset(n);
      pairset.set(i);
      pairset.set(j);
      pj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s.sup(pairset);
      if (pj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == j) up[static_cast<std::size_t>(i)].set(j);
    }

  FinOrder o = make_order(s.carrier, std::move(up));

  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int u = pj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!o.leq(i, u) || !o.leq(j, u))
        raise(Errc::NotALattice, "sup{" + s.carrier.id(i) + "," + s.carrier.id(j) +
                                     "} is not an upper bound");
      for (int v = 0; v < n; ++v)
        if (o.leq(i, v) && o.leq(j, v) && !o.leq(u, v))
          raise(Errc::NotALattice, "sup{" + s.carrier.id(i) + "," + s.carrier.id(j) +
                                       "} is not least below " + s.carrier.id(v));
    }

  if (n <= 62 && (std::uint64_t{1} << n) <= full_check_limit) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      Bitset sub = Bitset::from_mask(n, m);
      int u = s.sup(sub);
      bool least_ok = true;
      for (int x = 0; x < n && least_ok; ++x)
        if (sub.test(x) && !o.leq(x, u)) least_ok = false;
      for (int v = 0; v < n && least_ok; ++v) {
        bool upper = true;
        for (int x = 0; x < n && upper; ++x)
          if (sub.test(x) && !o.leq(x, v)) upper = false;
        if (upper && !o.leq(u, v)) least_ok = false;
      }
      if (!least_ok)
        raise(Errc::NotALattice, "sup is not the least upper bound of some subset");
    }
  }
  return o;
}

/** Binary join/meet tables plus bottom and top, derived from a FinOrder.
 *  Construction fails with NotALattice if some pair lacks a join or meet. */
struct LatticeOps {
  std::vector<int> joins;  // n*n, joins[i*n+j]
  std::vector<int> meets;
  int n = 0;
  int bot = -1, top = -1;

  int join(int i, int j) const { return joins[static_cast<std::size_t>(i * n + j)]; }
  int meet(int i, int j) const { return meets[static_cast<std::size_t>(i * n + j)]; }

  int join_of(const Bitset& s) const {
    int acc = bot;
    s.for_each([&](int i) { acc = join(acc, i); });
    return acc;
  }
  int meet_of(const Bitset& s) const {
    int acc = top;
    s.for_each([&](int i) { acc = meet(acc, i); });
    return acc;
  }

  static LatticeOps from_order(const FinOrder& o) {
    int n = o.size();
    LatticeOps ops;
    ops.n = n;
    ops.joins.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
    ops.meets.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int jn = bound(o, i, j, /*join=*/true);
        int mt = bound(o, i, j, /*join=*/false);
        if (jn < 0)
          raise(Errc::NotALattice,
                "no join of {" + o.carrier.id(i) + ", " + o.carrier.id(j) + "}");
        if (mt < 0)
          raise(Errc::NotALattice,
                "no meet of {" + o.carrier.id(i) + ", " + o.carrier.id(j) + "}");
        ops.joins[static_cast<std::size_t>(i * n + j)] = jn;
        ops.meets[static_cast<std::size_t>(i * n + j)] = mt;
      }
    for (int c = 0; c < n; ++c) {
      bool is_bot = true, is_top = true;
      for (int x = 0; x < n; ++x) {
        if (!o.leq(c, x)) is_bot = false;
        if (!o.leq(x, c)) is_top = false;
      }
      if (is_bot) ops.bot = c;
      if (is_top) ops.top = c;
    }
    if (n > 0 && (ops.bot < 0 || ops.top < 0))
      raise(Errc::NotALattice, "order has no bottom or no top");
    return ops;
  }

private:
  static int bound(const FinOrder& o, int i, int j, bool join) {
    int n = o.size();
    int best = -1;
    for (int c = 0; c < n; ++c) {
      bool cand = join ? (o.leq(i, c) && o.leq(j, c)) : (o.leq(c, i) && o.leq(c, j));
      if (!cand) continue;
      if (best < 0)
        best = c;
      else if (join ? o.leq(c, best) : o.leq(best, c))
        best = c;
    }
    if (best < 0) return -1;
    for (int c = 0; c < n; ++c) {
      bool cand = join ? (o.leq(i, c) && o.leq(j, c)) : (o.leq(c, i) && o.leq(c, j));
      if (cand && !(join ? o.leq(best, c) : o.leq(c, best))) return -1;
    }
    return best;
  }
};

/** Right adjoint of a sup-preserving map f between complete lattices:
 *  f*(y) = join of { x : f(x) <= y }. Fails with NoAdjoint if the Galois
 *  inequalities do not come out, i.e. f was not sup-preserving. */
inline FinMap right_adjoint(const FinMap& f, const FinOrder& ox, const FinOrder& oy) {
  LatticeOps lx = LatticeOps::from_order(ox);
  int nx = ox.size(), ny = oy.size();
  FinMap g{f.cod, f.dom, {}};
  g.tbl.resize(static_cast<std::size_t>(ny));
  for (int y = 0; y < ny; ++y) {
    Bitset below(nx);
    for (int x = 0; x < nx; ++x)
      if (oy.leq(f(x), y)) below.set(x);
    g.tbl[static_cast<std::size_t>(y)] = lx.join_of(below);
  }
  for (int x = 0; x < nx; ++x)
    if (!ox.leq(x, g(f(x))))
      raise(Errc::NoAdjoint, "unit fails at " + ox.carrier.id(x));
  for (int y = 0; y < ny; ++y)
    if (!oy.leq(f(g(y)), y))
      raise(Errc::NoAdjoint, "counit fails at " + oy.carrier.id(y));
  return g;
}

struct DistributivityResult {
  bool distributive = true;
  int x = -1, y = -1, z = -1;  // witness triple when not
};

inline DistributivityResult is_distributive(const FinOrder& o) {
  LatticeOps ops = LatticeOps::from_order(o);
  int n = o.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (ops.meet(x, ops.join(y, z)) != ops.join(ops.meet(x, y), ops.meet(x, z)))
          return {false, x, y, z};
  return {};
}

}  // namespace klab

#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "kleislilab/errors.hpp"

namespace klab {

/** Finite carrier: an ordered list of distinct element names.
 *
 * User-supplied carriers are sorted lexicographically; derived carriers
 * (products, materialized T-spaces, hom sets) keep their construction
 * order, which is deterministic by design. All computation is positional,
 * names only matter at the serialization boundary.
 */
class FinSet {
public:
  FinSet() = default;

  static FinSet sorted(std::vector<std::string> ids) {
    std::sort(ids.begin(), ids.end());
    return make(std::move(ids));
  }
  static FinSet ordered(std::vector<std::string> ids) { return make(std::move(ids)); }

  // Canonical n-point carrier a, b, c, ...
  static FinSet letters(int n) {
    assert(0 <= n && n <= 26);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i)));
    return make(std::move(ids));
  }

  int size() const { return static_cast<int>(ids_.size()); }
  const std::string& id(int i) const { return ids_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& ids() const { return ids_; }

  int index_of(const std::string& id) const {
    auto it = pos_.find(id);
    return it == pos_.end() ? -1 : it->second;
  }
  bool contains(const std::string& id) const { return pos_.count(id) > 0; }

  bool operator==(const FinSet& o) const { return ids_ == o.ids_; }

private:
  static FinSet make(std::vector<std::string> ids) {
    FinSet s;
    s.ids_ = std::move(ids);
    for (int i = 0; i < static_cast<int>(s.ids_.size()); ++i) {
      auto [it, fresh] = s.pos_.emplace(s.ids_[static_cast<std::size_t>(i)], i);
      if (!fresh) raise(Errc::MalformedSurface, "duplicate element '" + s.ids_[i] + "'");
    }
    return s;
  }

  std::vector<std::string> ids_;
  std::map<std::string, int> pos_;
};

/** Total map between carriers, stored as a table of codomain positions. */
struct FinMap {
  FinSet dom;
  FinSet cod;
  std::vector<int> tbl;  // tbl[i] = position in cod of the image of dom element i

  int operator()(int i) const { return tbl[static_cast<std::size_t>(i)]; }

  static FinMap identity(const FinSet& x) {
    FinMap f{x, x, {}};
    f.tbl.resize(static_cast<std::size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) f.tbl[static_cast<std::size_t>(i)] = i;
    return f;
  }

  FinMap then(const FinMap& g) const {  // this ; g
    assert(cod == g.dom);
    FinMap h{dom, g.cod, {}};
    h.tbl.reserve(tbl.size());
    for (int v : tbl) h.tbl.push_back(g.tbl[static_cast<std::size_t>(v)]);
    return h;
  }

  bool is_bijection() const {
    if (dom.size() != cod.size()) return false;
    std::vector<char> seen(static_cast<std::size_t>(cod.size()), 0);
    for (int v : tbl) {
      if (seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
  }

  bool operator==(const FinMap& f) const {
    return dom == f.dom && cod == f.cod && tbl == f.tbl;
  }
};

inline FinSet unit_set() { return FinSet::ordered({"*"}); }

/** Enumerate all tables dom -> {0..cod-1} in lexicographic order (first
 *  coordinate most significant). fn may return false to stop early. */
template <class Fn>
inline void for_each_map(int dom, int cod, Fn&& fn) {
  if (cod <= 0) {
    if (dom == 0) {
      std::vector<int> empty;
      fn(empty);
    }
    return;
  }
  std::vector<int> tbl(static_cast<std::size_t>(dom), 0);
  while (true) {
    if constexpr (std::is_convertible_v<decltype(fn(tbl)), bool>) {
      if (!fn(tbl)) return;
    } else {
      fn(tbl);
    }
    int d = dom - 1;
    while (d >= 0 && tbl[static_cast<std::size_t>(d)] == cod - 1) {
      tbl[static_cast<std::size_t>(d)] = 0;
      --d;
    }
    if (d < 0) break;
    ++tbl[static_cast<std::size_t>(d)];
  }
}

/** Cartesian product carrier, pairs enumerated row-major: (x0,y0), (x0,y1), ...
 *  Pair (i,j) sits at position i*|Y|+j. */
struct ProductSet {
  FinSet set;
  int nx = 0, ny = 0;

  int pair(int i, int j) const { return i * ny + j; }
  int first(int k) const { return k / ny; }
  int second(int k) const { return k % ny; }
};

inline ProductSet product_set(const FinSet& x, const FinSet& y) {
  ProductSet p;
  p.nx = x.size();
  p.ny = y.size();
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(p.nx * p.ny));
  for (int i = 0; i < p.nx; ++i)
    for (int j = 0; j < p.ny; ++j) ids.push_back("(" + x.id(i) + "," + y.id(j) + ")");
  p.set = FinSet::ordered(std::move(ids));
  return p;
}

// Associator X x (Y x Z) -> (X x Y) x Z. With row-major pair indexing both
// sides enumerate identically, but the map is kept explicit so equations can
// be stated on the nose.
inline FinMap upsilon_map(const FinSet& x, const FinSet& y, const FinSet& z) {
  ProductSet yz = product_set(y, z);
  ProductSet xy = product_set(x, y);
  ProductSet lhs = product_set(x, yz.set);
  ProductSet rhs = product_set(xy.set, z);
  FinMap f{lhs.set, rhs.set, {}};
  f.tbl.resize(static_cast<std::size_t>(lhs.set.size()));
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < y.size(); ++j)
      for (int k = 0; k < z.size(); ++k)
        f.tbl[static_cast<std::size_t>(lhs.pair(i, yz.pair(j, k)))] =
            rhs.pair(xy.pair(i, j), k);
  return f;
}

inline FinMap lambda_map(const FinSet& x) {  // X -> X x 1
  ProductSet p = product_set(x, unit_set());
  FinMap f{x, p.set, {}};
  f.tbl.resize(static_cast<std::size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i) f.tbl[static_cast<std::size_t>(i)] = p.pair(i, 0);
  return f;
}

inline FinMap rho_map(const FinSet& x) {  // X -> 1 x X
  ProductSet p = product_set(unit_set(), x);
  FinMap f{x, p.set, {}};
  f.tbl.resize(static_cast<std::size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i) f.tbl[static_cast<std::size_t>(i)] = p.pair(0, i);
  return f;
}

}  // namespace klab

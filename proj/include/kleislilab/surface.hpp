#pragma once

#include <string>
#include <vector>

#include "kleislilab/kleisli.hpp"
#include "kleislilab/monad.hpp"
#include "kleislilab/quantale.hpp"

// JSON surface for monads and structured carriers.
//
// Instance files look like
//   {"monad": {"kind": "U"},
//    "carrier": ["1", "2", "3"],
//    "structure": {"1": [["1","2"],["1","3"]], ...}}
// with a kind-specific structure encoding:
//   P   rows: each point maps to the list of points related below it
//   F   per-point neighborhood generators (one set, or several sets whose
//       intersection generates), or {"opens": [...]} for a whole topology
//   U   per-point generator lists (family = everything above some listed
//       set), or {"opens": [...]} meaning the sets containing each point
//   PV  a value matrix {"x": {"y": "v"}}; missing entries read as bottom
// Parsing is strict about keys; the monoid laws are not assumed and are
// checked separately.

namespace klab {

namespace detail {

inline void require_keys(const json& j, const std::vector<std::string>& keys, const char* where) {
  if (!j.is_object()) raise(Errc::MalformedSurface, std::string(where) + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const auto& k : keys)
      if (it.key() == k) known = true;
    if (!known) raise(Errc::MalformedSurface, std::string(where) + ": unknown key '" + it.key() + "'");
  }
}

inline int checked_index(const FinSet& carrier, const std::string& id, const char* where) {
  int i = carrier.index_of(id);
  if (i < 0) raise(Errc::MalformedSurface, std::string(where) + ": unknown element '" + id + "'");
  return i;
}

inline Bitset subset_from_json(const json& arr, const FinSet& carrier, const char* where) {
  if (!arr.is_array()) raise(Errc::MalformedSurface, std::string(where) + ": expected an array of element names");
  Bitset out(carrier.size());
  for (const auto& v : arr) {
    if (!v.is_string()) raise(Errc::MalformedSurface, std::string(where) + ": element names must be strings");
    out.set(checked_index(carrier, v.get<std::string>(), where));
  }
  return out;
}

inline json subset_to_json(const Bitset& s, const FinSet& carrier) {
  json arr = json::array();
  s.for_each([&](int i) { arr.push_back(carrier.id(i)); });
  return arr;
}

}  // namespace detail

inline MonadInstance monad_from_json(const json& j, Caps caps = {}) {
  detail::require_keys(j, {"kind", "quantale", "kappa"}, "monad");
  if (!j.contains("kind") || !j.at("kind").is_string())
    raise(Errc::MalformedSurface, "monad: missing string field 'kind'");
  MonadKind kind = kind_from_string(j.at("kind").get<std::string>());

  if (kind != MonadKind::PV) {
    if (j.contains("quantale") || j.contains("kappa"))
      raise(Errc::MalformedSurface, "monad: 'quantale'/'kappa' only apply to kind PV");
    switch (kind) {
      case MonadKind::P: return MonadInstance::make_p(caps);
      case MonadKind::F: return MonadInstance::make_f(caps);
      default: return MonadInstance::make_u(caps);
    }
  }

  if (!j.contains("quantale")) raise(Errc::MalformedSurface, "monad: kind PV requires a 'quantale'");
  Quantale q = j.at("quantale").is_string()
                   ? builtin_quantale(j.at("quantale").get<std::string>())
                   : quantale_from_json(j.at("quantale"));
  KappaFlavor flavor = KappaFlavor::Tensor;
  if (j.contains("kappa")) {
    std::string f = j.at("kappa").get<std::string>();
    if (f == "tensor")
      flavor = KappaFlavor::Tensor;
    else if (f == "cartesian")
      flavor = KappaFlavor::Cartesian;
    else
      raise(Errc::MalformedSurface, "monad: kappa must be 'tensor' or 'cartesian'");
  }
  return MonadInstance::make_pv(std::move(q), flavor, caps);
}

inline json monad_to_json(const MonadInstance& m) {
  json j;
  j["kind"] = kind_name(m.kind);
  if (m.kind == MonadKind::PV) {
    if (!m.quant().name.empty())
      j["quantale"] = m.quant().name;
    else
      j["quantale"] = quantale_to_json(m.quant());
    j["kappa"] = m.kappa == KappaFlavor::Tensor ? "tensor" : "cartesian";
  }
  return j;
}

inline FinSet carrier_from_json(const json& j) {
  if (!j.is_array() || j.empty()) raise(Errc::MalformedSurface, "carrier: expected a non-empty array");
  std::vector<std::string> ids;
  for (const auto& v : j) {
    if (!v.is_string() || v.get<std::string>().empty())
      raise(Errc::MalformedSurface, "carrier: element names must be non-empty strings");
    ids.push_back(v.get<std::string>());
  }
  return FinSet::sorted(std::move(ids));
}

// Topology checks for the opens encoding: must contain the empty set and
// the whole carrier and be closed under binary union and intersection.
inline std::vector<Bitset> validate_opens(const std::vector<Bitset>& opens_in, int n) {
  std::vector<Bitset> opens = opens_in;
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  auto have = [&](const Bitset& s) {
    return std::binary_search(opens.begin(), opens.end(), s);
  };
  if (!have(Bitset(n))) raise(Errc::MalformedSurface, "opens: missing the empty set");
  if (!have(Bitset::full(n))) raise(Errc::MalformedSurface, "opens: missing the whole carrier");
  for (std::size_t i = 0; i < opens.size(); ++i)
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!have(opens[i] | opens[j])) raise(Errc::MalformedSurface, "opens: not closed under union");
      if (!have(opens[i] & opens[j])) raise(Errc::MalformedSurface, "opens: not closed under intersection");
    }
  return opens;
}

// Neighborhood structure of a topology: each point gets the filter of its
// smallest open neighborhood.
inline KleisliMonoid f_from_opens(const FinSet& carrier, const std::vector<Bitset>& opens_in,
                                  Caps caps = {}) {
  int n = carrier.size();
  std::vector<Bitset> opens = validate_opens(opens_in, n);
  KleisliMonoid s{MonadInstance::make_f(caps), carrier, {}};
  for (int x = 0; x < n; ++x) {
    Bitset least = Bitset::full(n);
    for (const Bitset& o : opens)
      if (o.test(x)) least = least & o;
    TElem e;
    e.kind = MonadKind::F;
    e.set = least;
    s.alpha.push_back(std::move(e));
  }
  return s;
}

// Interior-style structure generated by an arbitrary family of sets: the
// structure value at x is everything above some member containing x. No
// closure axioms are demanded of the family itself.
inline KleisliMonoid u_from_family(const FinSet& carrier, const std::vector<Bitset>& family,
                                   Caps caps = {}) {
  int n = carrier.size();
  require_family_base(n);
  KleisliMonoid s{MonadInstance::make_u(caps), carrier, {}};
  for (int x = 0; x < n; ++x) {
    Bitset seeds(1 << n);
    for (const Bitset& f : family)
      if (f.test(x)) seeds.set(static_cast<int>(f.mask()));
    TElem e;
    e.kind = MonadKind::U;
    e.set = family_up_closure(seeds, n);
    s.alpha.push_back(std::move(e));
  }
  return s;
}

namespace detail {

// A per-point generator entry is either one set (array of names) or a
// list of sets (array of arrays).
inline std::vector<Bitset> generator_list_from_json(const json& v, const FinSet& carrier,
                                                    const char* where) {
  if (!v.is_array()) raise(Errc::MalformedSurface, std::string(where) + ": expected an array");
  std::vector<Bitset> gens;
  if (v.empty() || v.front().is_string()) {
    gens.push_back(subset_from_json(v, carrier, where));
  } else {
    for (const auto& inner : v) gens.push_back(subset_from_json(inner, carrier, where));
  }
  return gens;
}

inline std::vector<Bitset> opens_from_json(const json& j, const FinSet& carrier) {
  if (!j.is_array()) raise(Errc::MalformedSurface, "opens: expected an array of subsets");
  std::vector<Bitset> opens;
  for (const auto& o : j) opens.push_back(subset_from_json(o, carrier, "opens"));
  return opens;
}

}  // namespace detail

inline KleisliMonoid instance_from_json(const json& j, Caps caps = {}) {
  detail::require_keys(j, {"monad", "carrier", "structure"}, "instance");
  if (!j.contains("monad") || !j.contains("carrier") || !j.contains("structure"))
    raise(Errc::MalformedSurface, "instance: needs 'monad', 'carrier' and 'structure'");
  MonadInstance m = monad_from_json(j.at("monad"), caps);
  FinSet carrier = carrier_from_json(j.at("carrier"));
  int n = carrier.size();
  const json& st = j.at("structure");

  // Whole-topology shorthand.
  if (st.is_object() && st.contains("opens")) {
    detail::require_keys(st, {"opens"}, "structure");
    std::vector<Bitset> opens = detail::opens_from_json(st.at("opens"), carrier);
    if (m.kind == MonadKind::F) return f_from_opens(carrier, opens, caps);
    if (m.kind == MonadKind::U) return u_from_family(carrier, opens, caps);
    raise(Errc::MalformedSurface, "structure: 'opens' only applies to kinds F and U");
  }

  if (!st.is_object()) raise(Errc::MalformedSurface, "structure: expected an object keyed by carrier elements");
  for (int x = 0; x < n; ++x)
    if (!st.contains(carrier.id(x)))
      raise(Errc::MalformedSurface, "structure: missing entry for '" + carrier.id(x) + "'");
  for (auto it = st.begin(); it != st.end(); ++it) detail::checked_index(carrier, it.key(), "structure");

  KleisliMonoid s{m, carrier, {}};
  s.alpha.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    const json& row = st.at(carrier.id(x));
    TElem e;
    e.kind = m.kind;
    switch (m.kind) {
      case MonadKind::P:
        e.set = detail::subset_from_json(row, carrier, "structure");
        break;
      case MonadKind::F: {
        std::vector<Bitset> gens = detail::generator_list_from_json(row, carrier, "structure");
        Bitset acc = Bitset::full(n);
        for (const Bitset& g : gens) acc = acc & g;
        e.set = acc;
        break;
      }
      case MonadKind::U: {
        require_family_base(n);
        // An empty row means no generators at all: the empty family. One
        // empty generator ([[]]) means everything, as usual.
        Bitset seeds(1 << n);
        if (!(row.is_array() && row.empty())) {
          std::vector<Bitset> gens = detail::generator_list_from_json(row, carrier, "structure");
          for (const Bitset& g : gens) seeds.set(static_cast<int>(g.mask()));
        }
        e.set = family_up_closure(seeds, n);
        break;
      }
      case MonadKind::PV: {
        if (!row.is_object()) raise(Errc::MalformedSurface, "structure: PV rows must be objects");
        const Quantale& q = m.quant();
        e.vals.assign(static_cast<std::size_t>(n), q.bot());
        for (auto it = row.begin(); it != row.end(); ++it) {
          int y = detail::checked_index(carrier, it.key(), "structure");
          if (!it.value().is_string())
            raise(Errc::MalformedSurface, "structure: PV entries must name quantale elements");
          e.vals[static_cast<std::size_t>(y)] =
              detail::checked_index(q.carrier, it.value().get<std::string>(), "structure");
        }
        break;
      }
    }
    s.alpha.push_back(std::move(e));
  }
  return s;
}

inline json instance_to_json(const KleisliMonoid& s) {
  json j;
  j["monad"] = monad_to_json(s.m);
  json carr = json::array();
  for (const auto& id : s.carrier.ids()) carr.push_back(id);
  j["carrier"] = carr;

  json st = json::object();
  int n = s.size();
  for (int x = 0; x < n; ++x) {
    const TElem& e = s.alpha[static_cast<std::size_t>(x)];
    switch (s.m.kind) {
      case MonadKind::P:
        st[s.carrier.id(x)] = detail::subset_to_json(e.set, s.carrier);
        break;
      case MonadKind::F:
        st[s.carrier.id(x)] = detail::subset_to_json(e.set, s.carrier);
        break;
      case MonadKind::U: {
        json gens = json::array();
        for (std::uint32_t msk : family_min_sets(e.set, n))
          gens.push_back(detail::subset_to_json(Bitset::from_mask(n, msk), s.carrier));
        st[s.carrier.id(x)] = gens;
        break;
      }
      case MonadKind::PV: {
        json row = json::object();
        const Quantale& q = s.m.quant();
        for (int y = 0; y < n; ++y)
          if (e.vals[static_cast<std::size_t>(y)] != q.bot())
            row[s.carrier.id(y)] = q.carrier.id(e.vals[static_cast<std::size_t>(y)]);
        st[s.carrier.id(x)] = row;
        break;
      }
    }
  }
  j["structure"] = st;
  return j;
}

// The open sets of a neighborhood or interior structure: those O whose
// every point has O in its structure value. Returned with the inclusion
// order on the family.
struct OpensResult {
  std::vector<Bitset> opens;
  FinOrder order;
};

inline OpensResult opens_of(const KleisliMonoid& s) {
  int n = s.size();
  if (s.m.kind != MonadKind::F && s.m.kind != MonadKind::U)
    raise(Errc::ModeUnsupported, "opens_of: only neighborhood and interior structures have opens");
  if (n > 24) raise(Errc::CapExceeded, "opens_of: carrier too large");
  std::vector<Bitset> opens;
  for (int omask = 0; omask < (1 << n); ++omask) {
    Bitset o = Bitset::from_mask(n, static_cast<std::uint64_t>(omask));
    bool open = true;
    for (int x = 0; x < n && open; ++x) {
      if (!o.test(x)) continue;
      const TElem& e = s.alpha[static_cast<std::size_t>(x)];
      bool member = s.m.kind == MonadKind::F ? e.set.subset_of(o) : e.set.test(omask);
      if (!member) open = false;
    }
    if (open) opens.push_back(o);
  }
  std::vector<std::string> ids;
  for (const Bitset& o : opens) {
    std::string id = "{";
    bool first = true;
    o.for_each([&](int i) {
      if (!first) id += ",";
      id += s.carrier.id(i);
      first = false;
    });
    id += "}";
    ids.push_back(std::move(id));
  }
  FinSet fam = FinSet::ordered(std::move(ids));
  int k = fam.size();
  std::vector<Bitset> up(static_cast<std::size_t>(k), Bitset(k));
  for (int i = 0; i < k; ++i)
    for (int jx = 0; jx < k; ++jx)
      if (opens[static_cast<std::size_t>(i)].subset_of(opens[static_cast<std::size_t>(jx)]))
        up[static_cast<std::size_t>(i)].set(jx);
  OpensResult out{std::move(opens), make_order(fam, up)};
  return out;
}

inline json opens_to_json(const OpensResult& r, const FinSet& carrier) {
  json arr = json::array();
  for (const Bitset& o : r.opens) arr.push_back(detail::subset_to_json(o, carrier));
  return arr;
}

}  // namespace klab

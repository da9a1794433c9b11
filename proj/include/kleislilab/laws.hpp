#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kleislilab/monad.hpp"
#include "kleislilab/report.hpp"

namespace klab {

// How deep a law check digs.
//
// Exhaustive materializes every space the law quantifies over and fails
// loudly (CapExceeded) when one is too big. Witness keeps the base-level
// parts exhaustive but replaces iterated-application spaces (TTX, TTTX)
// with structured witness classes: elements with at most two "moving
// parts", which is where every violation we know how to produce lives,
// plus seeded random samples when a class itself outgrows the budget.
enum class Mode { Exhaustive, Witness };

inline const char* mode_name(Mode m) { return m == Mode::Exhaustive ? "exhaustive" : "witness"; }

inline Mode mode_from_string(const std::string& s) {
  if (s == "exhaustive") return Mode::Exhaustive;
  if (s == "witness") return Mode::Witness;
  raise(Errc::ModeUnsupported, "unknown mode '" + s + "' (expected exhaustive or witness)");
}

struct LawsConfig {
  Mode mode = Mode::Exhaustive;
  std::uint64_t seed = 0;
  long long budget = 20000;  // max sampled witnesses per class
};

namespace detail {

inline json elem_ref(const TSpace& sp, const TElem& e) {
  json j = json::object();
  int i = sp.index_of(e);
  if (i >= 0) j["id"] = sp.carrier.id(i);
  j["label"] = elem_label(sp.m, sp.base, e);
  j["value"] = elem_to_json(sp.m, sp.base, e);
  return j;
}

// Element one level up: lives over the materialized carrier of `sp`.
inline json tt_ref(const TSpace& sp, const TElem& e) {
  json j = json::object();
  j["label"] = elem_label(sp.m, sp.carrier, e);
  j["value"] = elem_to_json(sp.m, sp.carrier, e);
  return j;
}

inline json ugens_ref(const TSpace& sp, const UGens& gens) {
  json arr = json::array();
  for (const auto& g : gens) {
    json gg = json::array();
    for (int i : g) gg.push_back(sp.carrier.id(i));
    arr.push_back(gg);
  }
  return arr;
}

inline std::vector<int> eta_table(const TSpace& tx) {
  std::vector<int> tbl;
  tbl.reserve(static_cast<std::size_t>(tx.base.size()));
  for (int i = 0; i < tx.base.size(); ++i)
    tbl.push_back(tx.index_of_checked(t_unit(tx.m, tx.base.size(), i)));
  return tbl;
}

// Unit of the up-family monad as a generator description: one generator {i}.
inline UGens ugens_unit(int i) { return UGens{{i}}; }

// Image of an up-family under T(eta), described by generators. A family
// with minimal members M_1..M_k maps to the family generated by the sets
// eta[M_1]..eta[M_k].
inline UGens ugens_of_teta(const TSpace& tx, const std::vector<int>& eta_tbl, const TElem& v) {
  UGens gens;
  for (std::uint32_t msk : family_min_sets(v.set, tx.base.size())) {
    std::vector<int> g;
    for (int b = 0; b < tx.base.size(); ++b)
      if (msk >> b & 1u) g.push_back(eta_tbl[static_cast<std::size_t>(b)]);
    std::sort(g.begin(), g.end());
    gens.push_back(std::move(g));
  }
  return gens;
}

}  // namespace detail

// mu . T(eta) = id and mu . eta_T = id, checked at every element of TX.
inline CheckReport check_unit_laws(const MonadInstance& m, const FinSet& x) {
  TSpace tx = t_obj(m, x);
  int n = x.size(), nt = tx.size();
  CheckReport r = CheckReport::pass();
  r.stats["tx"] = nt;

  std::vector<int> eta_tbl = detail::eta_table(tx);
  for (int i = 0; i < nt; ++i) {
    TElem lhs, rhs;
    if (m.kind == MonadKind::U) {
      lhs = ugen_mult(tx, detail::ugens_of_teta(tx, eta_tbl, tx.at(i)));
      rhs = ugen_mult(tx, detail::ugens_unit(i));
    } else {
      lhs = mult(tx, t_map(m, eta_tbl, nt, tx.at(i)));
      rhs = mult(tx, t_unit(m, nt, i));
    }
    if (!(lhs == tx.at(i)))
      return CheckReport::fail({{"law", "mult-after-lifted-unit"},
                                {"element", detail::elem_ref(tx, tx.at(i))},
                                {"got", elem_to_json(m, tx.base, lhs)}});
    if (!(rhs == tx.at(i)))
      return CheckReport::fail({{"law", "mult-after-outer-unit"},
                                {"element", detail::elem_ref(tx, tx.at(i))},
                                {"got", elem_to_json(m, tx.base, rhs)}});
  }
  r.stats["checks"] = 2 * nt;
  return r;
}

namespace detail {

// Witness classes two application levels up, for the concretely
// representable monads. Elements over base TX with at most two moving
// parts: empty, singly and doubly supported, plus images of TX under both
// unit routes.
inline std::vector<TElem> tt_witnesses(const TSpace& tx, const LawsConfig& cfg) {
  const MonadInstance& m = tx.m;
  int nt = tx.size();
  std::set<TElem> acc;

  if (m.kind == MonadKind::P || m.kind == MonadKind::F) {
    TElem e;
    e.kind = m.kind;
    e.set = Bitset(nt);
    acc.insert(e);  // empty set / least filter generator
    for (int i = 0; i < nt; ++i) {
      TElem s = e;
      s.set.set(i);
      acc.insert(s);
    }
    long long pairs = static_cast<long long>(nt) * (nt - 1) / 2;
    if (pairs <= cfg.budget) {
      for (int i = 0; i < nt; ++i)
        for (int j = i + 1; j < nt; ++j) {
          TElem p = e;
          p.set.set(i);
          p.set.set(j);
          acc.insert(p);
        }
    } else {
      std::mt19937_64 rng(cfg.seed);
      std::uniform_int_distribution<int> pick(0, nt - 1);
      for (long long k = 0; k < cfg.budget; ++k) {
        TElem p = e;
        p.set.set(pick(rng));
        p.set.set(pick(rng));
        acc.insert(p);
      }
    }
  } else if (m.kind == MonadKind::PV) {
    const Quantale& q = m.quant();
    int nv = q.size(), bot = q.bot();
    TElem zero;
    zero.kind = m.kind;
    zero.vals.assign(static_cast<std::size_t>(nt), bot);
    acc.insert(zero);
    for (int i = 0; i < nt; ++i)
      for (int v = 0; v < nv; ++v) {
        if (v == bot) continue;
        TElem s = zero;
        s.vals[static_cast<std::size_t>(i)] = v;
        acc.insert(s);
      }
    long long pairs = static_cast<long long>(nt) * (nt - 1) / 2 * (nv - 1) * (nv - 1);
    if (pairs <= cfg.budget) {
      for (int i = 0; i < nt; ++i)
        for (int j = i + 1; j < nt; ++j)
          for (int v = 0; v < nv; ++v)
            for (int w = 0; w < nv; ++w) {
              if (v == bot || w == bot) continue;
              TElem p = zero;
              p.vals[static_cast<std::size_t>(i)] = v;
              p.vals[static_cast<std::size_t>(j)] = w;
              acc.insert(p);
            }
    } else {
      std::mt19937_64 rng(cfg.seed);
      std::uniform_int_distribution<int> pick(0, nt - 1);
      std::uniform_int_distribution<int> val(0, nv - 1);
      for (long long k = 0; k < cfg.budget; ++k) {
        TElem p = zero;
        p.vals[static_cast<std::size_t>(pick(rng))] = val(rng);
        p.vals[static_cast<std::size_t>(pick(rng))] = val(rng);
        acc.insert(p);
      }
    }
  } else {
    raise(Errc::ModeUnsupported, "tt_witnesses: concrete witnesses unavailable for this monad");
  }

  // Unit-route images of every base-level element.
  std::vector<int> eta_tbl = eta_table(tx);
  for (int i = 0; i < nt; ++i) {
    acc.insert(t_map(m, eta_tbl, nt, tx.at(i)));
    acc.insert(t_unit(m, nt, i));
  }
  return {acc.begin(), acc.end()};
}

// The same idea for the up-family monad, where elements over TX are kept
// as generator descriptions: families generated by one or two sets, each
// set holding one or two carrier indices.
inline std::vector<UGens> u_tt_witnesses(const TSpace& tx, const LawsConfig& cfg) {
  int nt = tx.size();
  std::set<UGens> acc;
  for (int i = 0; i < nt; ++i) acc.insert(UGens{{i}});
  long long pairs = static_cast<long long>(nt) * (nt - 1) / 2;
  if (pairs <= cfg.budget) {
    for (int i = 0; i < nt; ++i)
      for (int j = i + 1; j < nt; ++j) {
        acc.insert(UGens{{i}, {j}});
        acc.insert(UGens{{i, j}});
      }
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(0, nt - 1);
    for (long long k = 0; k < cfg.budget; ++k) {
      int i = pick(rng), j = pick(rng);
      if (i == j) {
        acc.insert(UGens{{i}});
        continue;
      }
      if (i > j) std::swap(i, j);
      acc.insert(UGens{{i}, {j}});
      acc.insert(UGens{{i, j}});
    }
  }
  std::vector<int> eta_tbl = eta_table(tx);
  for (int i = 0; i < nt; ++i) {
    UGens g = ugens_of_teta(tx, eta_tbl, tx.at(i));
    for (auto& gen : g) std::sort(gen.begin(), gen.end());
    std::sort(g.begin(), g.end());
    acc.insert(g);
  }
  return {acc.begin(), acc.end()};
}

}  // namespace detail

// mu . mu_T = mu . T(mu) on TTTX.
//
// Exhaustive mode materializes TTX and TTTX outright. Witness mode builds
// third-level elements out of the second-level witness classes: for the
// subset and filter monads a third-level element is a (generating) set of
// second-level witnesses, for the valuation monad a finitely supported
// valuation on them, and for the up-family monad a family generated by
// sets of them. Both routes of the law are evaluated symbolically, so no
// doubly iterated space is ever materialized in witness mode.
inline CheckReport check_assoc(const MonadInstance& m, const FinSet& x, const LawsConfig& cfg) {
  TSpace tx = t_obj(m, x);
  int n = x.size(), nt = tx.size();
  CheckReport r = CheckReport::pass();
  r.stats["tx"] = nt;
  r.stats["mode"] = mode_name(cfg.mode);

  if (cfg.mode == Mode::Exhaustive) {
    TSpace ttx = t_obj(m, tx.carrier, m.caps.ttx);
    TSpace tttx = t_obj(m, ttx.carrier, m.caps.ttx);
    r.stats["ttx"] = ttx.size();
    r.stats["tttx"] = tttx.size();

    std::vector<int> mu_tbl;  // TTX -> TX as carrier indices
    mu_tbl.reserve(static_cast<std::size_t>(ttx.size()));
    for (int k = 0; k < ttx.size(); ++k) mu_tbl.push_back(tx.index_of_checked(mult(tx, ttx.at(k))));

    for (int k = 0; k < tttx.size(); ++k) {
      const TElem& big = tttx.at(k);
      TElem lhs = mult(tx, mult(ttx, big));
      TElem rhs = mult(tx, t_map(m, mu_tbl, nt, big));
      if (!(lhs == rhs))
        return CheckReport::fail({{"law", "mult-assoc"},
                                  {"element", detail::tt_ref(ttx, big)},
                                  {"via_outer", elem_to_json(m, tx.base, lhs)},
                                  {"via_lifted", elem_to_json(m, tx.base, rhs)}});
    }
    r.stats["checks"] = tttx.size();
    return r;
  }

  // Witness mode.
  long long checks = 0;
  if (m.kind == MonadKind::U) {
    std::vector<UGens> wits = detail::u_tt_witnesses(tx, cfg);
    int nw = static_cast<int>(wits.size());
    r.stats["tt_witnesses"] = nw;

    // Collapse of each witness, and per-witness membership masks:
    // ok[i] holds, for every base subset B, whether B belongs to every
    // member of some generator of witness i.
    std::vector<int> mu_idx(static_cast<std::size_t>(nw));
    std::vector<Bitset> ok(static_cast<std::size_t>(nw), Bitset(1 << n));
    for (int i = 0; i < nw; ++i) {
      TElem mi = ugen_mult(tx, wits[static_cast<std::size_t>(i)]);
      mu_idx[static_cast<std::size_t>(i)] = tx.index_of_checked(mi);
      for (int bmask = 0; bmask < (1 << n); ++bmask) {
        bool in = false;
        for (const auto& g : wits[static_cast<std::size_t>(i)]) {
          bool all = true;
          for (int s : g)
            if (!tx.at(s).set.test(bmask)) {
              all = false;
              break;
            }
          if (all) {
            in = true;
            break;
          }
        }
        if (in) ok[static_cast<std::size_t>(i)].set(bmask);
      }
    }

    // A third-level witness is a list of generators, each generator a set
    // of second-level witness indices.
    auto eval = [&](const std::vector<std::vector<int>>& ggens) -> bool {
      ++checks;
      TElem lhs;
      lhs.kind = MonadKind::U;
      lhs.set = Bitset(1 << n);
      for (int bmask = 0; bmask < (1 << n); ++bmask) {
        bool in = false;
        for (const auto& h : ggens) {
          bool all = true;
          for (int i : h)
            if (!ok[static_cast<std::size_t>(i)].test(bmask)) {
              all = false;
              break;
            }
          if (all) {
            in = true;
            break;
          }
        }
        if (in) lhs.set.set(bmask);
      }
      UGens collapsed;
      for (const auto& h : ggens) {
        std::vector<int> g;
        for (int i : h) g.push_back(mu_idx[static_cast<std::size_t>(i)]);
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        collapsed.push_back(std::move(g));
      }
      TElem rhs = ugen_mult(tx, collapsed);
      return lhs == rhs;
    };

    auto fail_at = [&](const std::vector<std::vector<int>>& ggens) {
      json w = json::array();
      for (const auto& h : ggens) {
        json hh = json::array();
        for (int i : h) hh.push_back(detail::ugens_ref(tx, wits[static_cast<std::size_t>(i)]));
        w.push_back(hh);
      }
      return CheckReport::fail({{"law", "mult-assoc"}, {"witness_generators", w}});
    };

    for (int i = 0; i < nw; ++i)
      if (!eval({{i}})) return fail_at({{i}});
    long long pairs = static_cast<long long>(nw) * (nw - 1) / 2;
    if (pairs <= cfg.budget) {
      for (int i = 0; i < nw; ++i)
        for (int j = i + 1; j < nw; ++j) {
          if (!eval({{i}, {j}})) return fail_at({{i}, {j}});
          if (!eval({{i, j}})) return fail_at({{i, j}});
        }
    } else {
      std::mt19937_64 rng(cfg.seed + 1);
      std::uniform_int_distribution<int> pick(0, nw - 1);
      for (long long k = 0; k < cfg.budget; ++k) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        if (!eval({{i}, {j}})) return fail_at({{i}, {j}});
        if (!eval({{i, j}})) return fail_at({{i, j}});
      }
    }
    r.stats["checks"] = checks;
    return r;
  }

  std::vector<TElem> wits = detail::tt_witnesses(tx, cfg);
  int nw = static_cast<int>(wits.size());
  r.stats["tt_witnesses"] = nw;

  std::vector<int> mu_idx(static_cast<std::size_t>(nw));
  for (int i = 0; i < nw; ++i)
    mu_idx[static_cast<std::size_t>(i)] = tx.index_of_checked(mult(tx, wits[static_cast<std::size_t>(i)]));

  if (m.kind == MonadKind::P || m.kind == MonadKind::F) {
    // Third-level witness: a set of second-level witnesses (read as a
    // subset, or as a filter generator).
    auto eval = [&](const std::vector<int>& members) -> bool {
      ++checks;
      TElem mid;
      mid.kind = m.kind;
      mid.set = Bitset(nt);
      for (int i : members) mid.set = mid.set | wits[static_cast<std::size_t>(i)].set;
      TElem lhs = mult(tx, mid);
      TElem folded;
      folded.kind = m.kind;
      folded.set = Bitset(nt);
      for (int i : members) folded.set.set(mu_idx[static_cast<std::size_t>(i)]);
      TElem rhs = mult(tx, folded);
      return lhs == rhs;
    };
    auto fail_at = [&](const std::vector<int>& members) {
      json w = json::array();
      for (int i : members) w.push_back(detail::tt_ref(tx, wits[static_cast<std::size_t>(i)]));
      return CheckReport::fail({{"law", "mult-assoc"}, {"witness_members", w}});
    };
    if (!eval({})) return fail_at({});
    for (int i = 0; i < nw; ++i)
      if (!eval({i})) return fail_at({i});
    long long pairs = static_cast<long long>(nw) * (nw - 1) / 2;
    if (pairs <= cfg.budget) {
      for (int i = 0; i < nw; ++i)
        for (int j = i + 1; j < nw; ++j)
          if (!eval({i, j})) return fail_at({i, j});
    } else {
      std::mt19937_64 rng(cfg.seed + 1);
      std::uniform_int_distribution<int> pick(0, nw - 1);
      for (long long k = 0; k < cfg.budget; ++k) {
        int i = pick(rng), j = pick(rng);
        if (i != j && !eval({i, j})) return fail_at({i, j});
      }
    }
    r.stats["checks"] = checks;
    return r;
  }

  // Valuation monad: a third-level witness is a finitely supported
  // valuation on second-level witnesses, kept as (index, value) pairs.
  const Quantale& q = m.quant();
  int nv = q.size(), bot = q.bot();
  auto eval = [&](const std::vector<std::pair<int, int>>& supp) -> bool {
    ++checks;
    TElem mid;
    mid.kind = m.kind;
    mid.vals.assign(static_cast<std::size_t>(nt), bot);
    for (auto [i, v] : supp)
      for (int s = 0; s < nt; ++s)
        mid.vals[static_cast<std::size_t>(s)] =
            q.join(mid.vals[static_cast<std::size_t>(s)],
                   q.tens(v, wits[static_cast<std::size_t>(i)].vals[static_cast<std::size_t>(s)]));
    TElem lhs = mult(tx, mid);
    TElem folded;
    folded.kind = m.kind;
    folded.vals.assign(static_cast<std::size_t>(nt), bot);
    for (auto [i, v] : supp) {
      int at = mu_idx[static_cast<std::size_t>(i)];
      folded.vals[static_cast<std::size_t>(at)] = q.join(folded.vals[static_cast<std::size_t>(at)], v);
    }
    TElem rhs = mult(tx, folded);
    return lhs == rhs;
  };
  auto fail_at = [&](const std::vector<std::pair<int, int>>& supp) {
    json w = json::array();
    for (auto [i, v] : supp) {
      json entry;
      entry["weight"] = q.carrier.id(v);
      entry["at"] = detail::tt_ref(tx, wits[static_cast<std::size_t>(i)]);
      w.push_back(entry);
    }
    return CheckReport::fail({{"law", "mult-assoc"}, {"witness_support", w}});
  };

  if (!eval({})) return fail_at({});
  for (int i = 0; i < nw; ++i)
    for (int v = 0; v < nv; ++v) {
      if (v == bot) continue;
      if (!eval({{i, v}})) return fail_at({{i, v}});
    }
  long long pairs = static_cast<long long>(nw) * (nw - 1) / 2 * (nv - 1) * (nv - 1);
  if (pairs <= cfg.budget) {
    for (int i = 0; i < nw; ++i)
      for (int j = i + 1; j < nw; ++j)
        for (int v = 0; v < nv; ++v)
          for (int w = 0; w < nv; ++w) {
            if (v == bot || w == bot) continue;
            if (!eval({{i, v}, {j, w}})) return fail_at({{i, v}, {j, w}});
          }
  } else {
    std::mt19937_64 rng(cfg.seed + 1);
    std::uniform_int_distribution<int> pick(0, nw - 1);
    std::uniform_int_distribution<int> val(0, nv - 1);
    for (long long k = 0; k < cfg.budget; ++k) {
      int i = pick(rng), j = pick(rng);
      if (i == j) continue;
      std::vector<std::pair<int, int>> supp{{i, val(rng)}, {j, val(rng)}};
      if (!eval(supp)) return fail_at(supp);
    }
  }
  r.stats["checks"] = checks;
  return r;
}

namespace detail {

// Test maps for naturality: every endomap of X and every map X -> {a,b}.
inline std::vector<std::pair<FinSet, std::vector<int>>> naturality_maps(const FinSet& x) {
  std::vector<std::pair<FinSet, std::vector<int>>> out;
  int n = x.size();
  for_each_map(n, n, [&](const std::vector<int>& tbl) { out.emplace_back(x, tbl); });
  FinSet two = FinSet::letters(2);
  if (!(two.ids() == x.ids()))
    for_each_map(n, 2, [&](const std::vector<int>& tbl) { out.emplace_back(two, tbl); });
  return out;
}

}  // namespace detail

// Naturality of unit, mult and the subset inclusion: checked against every
// endomap of the carrier and every map to a two-point carrier. Unit and
// inclusion squares are always exhaustive; the mult square follows cfg.mode.
inline CheckReport check_naturality(const MonadInstance& m, const FinSet& x, const LawsConfig& cfg) {
  TSpace tx = t_obj(m, x);
  int n = x.size();
  CheckReport r = CheckReport::pass();
  r.stats["mode"] = mode_name(cfg.mode);

  auto targets = detail::naturality_maps(x);
  r.stats["maps"] = static_cast<long long>(targets.size());

  // Shared across all targets in exhaustive mode.
  std::vector<TElem> ttx_elems;
  bool have_ttx = false;
  std::vector<UGens> uwits;
  std::vector<TElem> cwits;
  if (cfg.mode == Mode::Exhaustive) {
    TSpace ttx = t_obj(m, tx.carrier, m.caps.ttx);
    ttx_elems = ttx.elems;
    have_ttx = true;
    r.stats["ttx"] = static_cast<long long>(ttx_elems.size());
  } else if (m.kind == MonadKind::U) {
    uwits = detail::u_tt_witnesses(tx, cfg);
    r.stats["tt_witnesses"] = static_cast<long long>(uwits.size());
  } else {
    cwits = detail::tt_witnesses(tx, cfg);
    r.stats["tt_witnesses"] = static_cast<long long>(cwits.size());
  }

  long long checks = 0;
  for (const auto& [y, f] : targets) {
    int ny = y.size();
    TSpace ty = t_obj(m, y);

    for (int i = 0; i < n; ++i) {
      ++checks;
      if (!(t_map(m, f, ny, t_unit(m, n, i)) == t_unit(m, ny, f[static_cast<std::size_t>(i)])))
        return CheckReport::fail({{"law", "unit-naturality"},
                                  {"map", f},
                                  {"point", x.id(i)}});
    }
    for (int amask = 0; amask < (1 << n); ++amask) {
      ++checks;
      Bitset a = Bitset::from_mask(n, static_cast<std::uint64_t>(amask));
      Bitset img(ny);
      a.for_each([&](int i) { img.set(f[static_cast<std::size_t>(i)]); });
      if (!(t_map(m, f, ny, t_tau(m, n, a)) == t_tau(m, ny, img)))
        return CheckReport::fail({{"law", "inclusion-naturality"},
                                  {"map", f},
                                  {"subset", a.indices()}});
    }

    std::vector<int> tf_tbl;  // TX -> TY
    tf_tbl.reserve(static_cast<std::size_t>(tx.size()));
    for (int k = 0; k < tx.size(); ++k)
      tf_tbl.push_back(ty.index_of_checked(t_map(m, f, ny, tx.at(k))));

    auto fail_mult = [&](json elem) {
      return CheckReport::fail({{"law", "mult-naturality"}, {"map", f}, {"element", std::move(elem)}});
    };
    if (have_ttx) {
      for (const TElem& big : ttx_elems) {
        ++checks;
        TElem lhs = mult(ty, t_map(m, tf_tbl, ty.size(), big));
        TElem rhs = t_map(m, f, ny, mult(tx, big));
        if (!(lhs == rhs)) return fail_mult(detail::tt_ref(tx, big));
      }
    } else if (m.kind == MonadKind::U) {
      for (const UGens& g : uwits) {
        ++checks;
        TElem lhs = ugen_mult(ty, ugen_map(tf_tbl, g));
        TElem rhs = t_map(m, f, ny, ugen_mult(tx, g));
        if (!(lhs == rhs)) return fail_mult(detail::ugens_ref(tx, g));
      }
    } else {
      for (const TElem& big : cwits) {
        ++checks;
        TElem lhs = mult(ty, t_map(m, tf_tbl, ty.size(), big));
        TElem rhs = t_map(m, f, ny, mult(tx, big));
        if (!(lhs == rhs)) return fail_mult(detail::tt_ref(tx, big));
      }
    }
  }
  r.stats["checks"] = checks;
  return r;
}

// The subset inclusion is a morphism of monads: it sends singletons to
// units and unions to the mult of its own lift.
inline CheckReport check_inclusion_morphism(const MonadInstance& m, const FinSet& x,
                                            const LawsConfig& cfg) {
  int n = x.size();
  TSpace tx = t_obj(m, x);
  CheckReport r = CheckReport::pass();

  for (int i = 0; i < n; ++i)
    if (!(t_tau(m, n, Bitset::single(n, i)) == t_unit(m, n, i)))
      return CheckReport::fail({{"law", "inclusion-of-singleton"}, {"point", x.id(i)}});

  MonadInstance p = MonadInstance::make_p(m.caps);
  TSpace px = t_obj(p, x);
  int np = px.size();
  std::vector<int> tau_tbl;  // PX -> TX
  tau_tbl.reserve(static_cast<std::size_t>(np));
  for (int k = 0; k < np; ++k) tau_tbl.push_back(tx.index_of_checked(t_tau(m, n, px.at(k).set)));

  if (np > 62) raise(Errc::CapExceeded, "inclusion-morphism: subset space too large");
  long long total = 1ll << np;
  r.stats["subset_families"] = total;

  std::mt19937_64 rng(cfg.seed + 2);
  bool sample = cfg.mode == Mode::Witness && total > cfg.budget;
  long long rounds = sample ? cfg.budget : total;
  std::uniform_int_distribution<std::uint64_t> draw(0, static_cast<std::uint64_t>(total) - 1);

  for (long long k = 0; k < rounds; ++k) {
    std::uint64_t smask = sample ? draw(rng) : static_cast<std::uint64_t>(k);
    Bitset s = Bitset::from_mask(np, smask);
    Bitset unioned(n);
    s.for_each([&](int idx) { unioned = unioned | px.at(idx).set; });
    TElem lhs = t_tau(m, n, unioned);

    TElem rhs;
    if (m.kind == MonadKind::U) {
      UGens g{{}};
      s.for_each([&](int idx) { g[0].push_back(idx); });
      rhs = ugen_mult(tx, ugen_map(tau_tbl, g));
    } else {
      TElem fam = t_tau(m, np, s);  // inclusion at the level of PX
      rhs = mult(tx, t_map(m, tau_tbl, tx.size(), fam));
    }
    if (!(lhs == rhs))
      return CheckReport::fail({{"law", "inclusion-after-union"},
                                {"family", s.indices()},
                                {"via_union", elem_to_json(m, tx.base, lhs)},
                                {"via_mult", elem_to_json(m, tx.base, rhs)}});
  }
  r.stats["checks"] = rounds + n;
  return r;
}

// Full monad law suite on one carrier.
inline CheckReport check_monad_laws(const MonadInstance& m, const FinSet& x, const LawsConfig& cfg) {
  CheckReport r = CheckReport::pass();
  r.stats["monad"] = m.describe();
  r.stats["carrier"] = x.size();
  r.stats["mode"] = mode_name(cfg.mode);
  r.absorb("unit_laws", check_unit_laws(m, x));
  if (r.passed()) r.absorb("assoc", check_assoc(m, x, cfg));
  if (r.passed()) r.absorb("naturality", check_naturality(m, x, cfg));
  if (r.passed()) r.absorb("inclusion_morphism", check_inclusion_morphism(m, x, cfg));
  return r;
}

// Kleisli composition respects the pointwise order on maps into TY:
// if f <= g pointwise then their extensions stay ordered at every element.
inline CheckReport check_enrichment(const MonadInstance& m, const FinSet& x, const FinSet& y,
                                    const LawsConfig& cfg) {
  TSpace tx = t_obj(m, x);
  TSpace ty = t_obj(m, y);
  int n = x.size(), nty = ty.size();
  CheckReport r = CheckReport::pass();
  r.stats["tx"] = tx.size();
  r.stats["ty"] = nty;
  r.stats["mode"] = mode_name(cfg.mode);

  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= nty;
    if (total > m.caps.homs) break;
  }

  auto materialize = [&](const std::vector<int>& tbl) {
    std::vector<TElem> g;
    g.reserve(static_cast<std::size_t>(n));
    for (int i : tbl) g.push_back(ty.at(i));
    return g;
  };
  auto leq_tbl = [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (int i = 0; i < n; ++i)
      if (!t_elem_leq(m, ty.at(a[static_cast<std::size_t>(i)]), ty.at(b[static_cast<std::size_t>(i)])))
        return false;
    return true;
  };
  auto check_pair = [&](const std::vector<int>& ft, const std::vector<int>& gt) -> CheckReport {
    std::vector<TElem> f = materialize(ft), g = materialize(gt);
    for (int k = 0; k < tx.size(); ++k) {
      TElem ef = kleisli_ext(m, f, y.size(), tx.at(k));
      TElem eg = kleisli_ext(m, g, y.size(), tx.at(k));
      if (!t_elem_leq(m, ef, eg))
        return CheckReport::fail({{"law", "kleisli-extension-monotone"},
                                  {"smaller_map", ft},
                                  {"larger_map", gt},
                                  {"at", detail::elem_ref(tx, tx.at(k))}});
    }
    return CheckReport::pass();
  };

  long long checks = 0;
  if (cfg.mode == Mode::Exhaustive) {
    if (total > m.caps.homs)
      raise(Errc::CapExceeded, "enrichment: map space exceeds hom cap");
    std::vector<std::vector<int>> maps;
    for_each_map(n, nty, [&](const std::vector<int>& tbl) { maps.push_back(tbl); });
    for (const auto& ft : maps)
      for (const auto& gt : maps) {
        if (!leq_tbl(ft, gt)) continue;
        ++checks;
        CheckReport sub = check_pair(ft, gt);
        if (!sub.passed()) return sub;
      }
  } else {
    // Seeded comparable pairs: draw f, then raise each coordinate within
    // its up-set to get g.
    FinOrder oty = order_on_t(ty);
    std::vector<std::vector<int>> ups(static_cast<std::size_t>(nty));
    for (int i = 0; i < nty; ++i)
      for (int j = 0; j < nty; ++j)
        if (oty.leq(i, j)) ups[static_cast<std::size_t>(i)].push_back(j);
    std::mt19937_64 rng(cfg.seed + 3);
    std::uniform_int_distribution<int> pick(0, nty - 1);
    for (long long k = 0; k < cfg.budget; ++k) {
      std::vector<int> ft(static_cast<std::size_t>(n)), gt(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        ft[static_cast<std::size_t>(i)] = pick(rng);
        const auto& up = ups[static_cast<std::size_t>(ft[static_cast<std::size_t>(i)])];
        gt[static_cast<std::size_t>(i)] =
            up[std::uniform_int_distribution<std::size_t>(0, up.size() - 1)(rng)];
      }
      ++checks;
      CheckReport sub = check_pair(ft, gt);
      if (!sub.passed()) return sub;
    }
  }
  r.stats["pairs"] = checks;
  return r;
}

// Lax monoidal structure of the pairing map.
//
// Checked here: associativity up to the product re-bracketing (as an
// equality), the two unit triangles, lax unit and lax mult comparisons,
// interaction with the subset inclusion, and monotonicity in both slots.
inline CheckReport check_lax_monoidal(const MonadInstance& m, const FinSet& x, const FinSet& y,
                                      const FinSet& z, const LawsConfig& cfg) {
  int nx = x.size(), ny = y.size(), nz = z.size();
  TSpace tx = t_obj(m, x), ty = t_obj(m, y), tz = t_obj(m, z);
  CheckReport r = CheckReport::pass();
  r.stats["tx"] = tx.size();
  r.stats["ty"] = ty.size();
  r.stats["tz"] = tz.size();
  r.stats["mode"] = mode_name(cfg.mode);
  long long checks = 0;

  // Associativity: pairing twice from the left equals pairing twice from
  // the right, transported along the product re-bracketing.
  std::vector<int> upsilon = upsilon_map(x, y, z).tbl;
  for (int a = 0; a < tx.size(); ++a)
    for (int b = 0; b < ty.size(); ++b)
      for (int c = 0; c < tz.size(); ++c) {
        ++checks;
        TElem left = t_kappa(m, nx * ny, nz, t_kappa(m, nx, ny, tx.at(a), ty.at(b)), tz.at(c));
        TElem right_pre = t_kappa(m, nx, ny * nz, tx.at(a), t_kappa(m, ny, nz, ty.at(b), tz.at(c)));
        TElem right = t_map(m, upsilon, nx * ny * nz, right_pre);
        if (!(left == right))
          return CheckReport::fail({{"law", "pairing-assoc"},
                                    {"a", detail::elem_ref(tx, tx.at(a))},
                                    {"b", detail::elem_ref(ty, ty.at(b))},
                                    {"c", detail::elem_ref(tz, tz.at(c))}});
      }

  // Unit triangles against the one-point carrier.
  TElem unit_star = t_unit(m, 1, 0);
  std::vector<int> lam = lambda_map(x).tbl, rho = rho_map(x).tbl;
  for (int a = 0; a < tx.size(); ++a) {
    ++checks;
    if (!(t_kappa(m, nx, 1, tx.at(a), unit_star) == t_map(m, lam, nx, tx.at(a))))
      return CheckReport::fail({{"law", "pairing-right-unit"}, {"a", detail::elem_ref(tx, tx.at(a))}});
    if (!(t_kappa(m, 1, nx, unit_star, tx.at(a)) == t_map(m, rho, nx, tx.at(a))))
      return CheckReport::fail({{"law", "pairing-left-unit"}, {"a", detail::elem_ref(tx, tx.at(a))}});
  }

  // Lax unit: the unit of a pair sits below the pairing of units.
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      ++checks;
      TElem lhs = t_unit(m, nx * ny, i * ny + j);
      TElem rhs = t_kappa(m, nx, ny, t_unit(m, nx, i), t_unit(m, ny, j));
      if (!t_elem_leq(m, lhs, rhs))
        return CheckReport::fail({{"law", "pairing-lax-unit"}, {"point", {x.id(i), y.id(j)}}});
    }

  // Lax inclusion: the inclusion of a rectangle sits below the pairing of
  // inclusions.
  for (int amask = 0; amask < (1 << nx); ++amask)
    for (int bmask = 0; bmask < (1 << ny); ++bmask) {
      ++checks;
      Bitset a = Bitset::from_mask(nx, static_cast<std::uint64_t>(amask));
      Bitset b = Bitset::from_mask(ny, static_cast<std::uint64_t>(bmask));
      Bitset rect(nx * ny);
      a.for_each([&](int i) { b.for_each([&](int j) { rect.set(i * ny + j); }); });
      TElem lhs = t_tau(m, nx * ny, rect);
      TElem rhs = t_kappa(m, nx, ny, t_tau(m, nx, a), t_tau(m, ny, b));
      if (!t_elem_leq(m, lhs, rhs))
        return CheckReport::fail({{"law", "pairing-lax-inclusion"},
                                  {"subset_a", a.indices()},
                                  {"subset_b", b.indices()}});
    }

  // Lax mult: collapsing then pairing dominates pairing then collapsing.
  ProductSet xy = product_set(x, y);
  TSpace txy = t_obj(m, xy.set);
  std::vector<int> kap_tbl(static_cast<std::size_t>(tx.size()) * static_cast<std::size_t>(ty.size()));
  for (int s = 0; s < tx.size(); ++s)
    for (int t = 0; t < ty.size(); ++t)
      kap_tbl[static_cast<std::size_t>(s * ty.size() + t)] =
          txy.index_of_checked(t_kappa(m, nx, ny, tx.at(s), ty.at(t)));

  auto check_lax_mult_pair = [&](const TElem& big_a, const TElem& big_b, json wa,
                                 json wb) -> CheckReport {
    // big_a over TX, big_b over TY (concrete representations).
    TElem paired = t_kappa(m, tx.size(), ty.size(), big_a, big_b);
    TElem lhs = mult(txy, t_map(m, kap_tbl, txy.size(), paired));
    TElem rhs = t_kappa(m, nx, ny, mult(tx, big_a), mult(ty, big_b));
    if (!t_elem_leq(m, lhs, rhs))
      return CheckReport::fail({{"law", "pairing-lax-mult"},
                                {"a", std::move(wa)},
                                {"b", std::move(wb)},
                                {"collapsed_then_paired", elem_to_json(m, xy.set, rhs)},
                                {"paired_then_collapsed", elem_to_json(m, xy.set, lhs)}});
    return CheckReport::pass();
  };

  if (cfg.mode == Mode::Exhaustive) {
    TSpace ttx = t_obj(m, tx.carrier, m.caps.ttx);
    TSpace tty = t_obj(m, ty.carrier, m.caps.ttx);
    r.stats["ttx"] = ttx.size();
    r.stats["tty"] = tty.size();
    for (int i = 0; i < ttx.size(); ++i)
      for (int j = 0; j < tty.size(); ++j) {
        ++checks;
        CheckReport sub = check_lax_mult_pair(ttx.at(i), tty.at(j), detail::tt_ref(tx, ttx.at(i)),
                                              detail::tt_ref(ty, tty.at(j)));
        if (!sub.passed()) return sub;
      }
  } else if (m.kind == MonadKind::U) {
    std::vector<UGens> wa = detail::u_tt_witnesses(tx, cfg);
    std::vector<UGens> wb = detail::u_tt_witnesses(ty, cfg);
    long long pairs = static_cast<long long>(wa.size()) * static_cast<long long>(wb.size());
    std::mt19937_64 rng(cfg.seed + 4);
    auto run_pair = [&](const UGens& ga, const UGens& gb) -> CheckReport {
      ++checks;
      // Pairing of generator descriptions: generators are rectangles of
      // generators, as pair indices into TX x TY.
      UGens paired;
      for (const auto& g : ga)
        for (const auto& h : gb) {
          std::vector<int> rect;
          for (int s : g)
            for (int t : h) rect.push_back(s * ty.size() + t);
          std::sort(rect.begin(), rect.end());
          paired.push_back(std::move(rect));
        }
      TElem lhs = ugen_mult(txy, ugen_map(kap_tbl, paired));
      TElem rhs = t_kappa(m, nx, ny, ugen_mult(tx, ga), ugen_mult(ty, gb));
      if (!t_elem_leq(m, lhs, rhs))
        return CheckReport::fail({{"law", "pairing-lax-mult"},
                                  {"a", detail::ugens_ref(tx, ga)},
                                  {"b", detail::ugens_ref(ty, gb)}});
      return CheckReport::pass();
    };
    if (pairs <= cfg.budget) {
      for (const auto& ga : wa)
        for (const auto& gb : wb) {
          CheckReport sub = run_pair(ga, gb);
          if (!sub.passed()) return sub;
        }
    } else {
      std::uniform_int_distribution<std::size_t> pa(0, wa.size() - 1), pb(0, wb.size() - 1);
      for (long long k = 0; k < cfg.budget; ++k) {
        CheckReport sub = run_pair(wa[pa(rng)], wb[pb(rng)]);
        if (!sub.passed()) return sub;
      }
    }
  } else {
    std::vector<TElem> wa = detail::tt_witnesses(tx, cfg);
    std::vector<TElem> wb = detail::tt_witnesses(ty, cfg);
    long long pairs = static_cast<long long>(wa.size()) * static_cast<long long>(wb.size());
    if (pairs <= cfg.budget) {
      for (const auto& ea : wa)
        for (const auto& eb : wb) {
          ++checks;
          CheckReport sub =
              check_lax_mult_pair(ea, eb, detail::tt_ref(tx, ea), detail::tt_ref(ty, eb));
          if (!sub.passed()) return sub;
        }
    } else {
      std::mt19937_64 rng(cfg.seed + 4);
      std::uniform_int_distribution<std::size_t> pa(0, wa.size() - 1), pb(0, wb.size() - 1);
      for (long long k = 0; k < cfg.budget; ++k) {
        ++checks;
        const TElem& ea = wa[pa(rng)];
        const TElem& eb = wb[pb(rng)];
        CheckReport sub = check_lax_mult_pair(ea, eb, detail::tt_ref(tx, ea), detail::tt_ref(ty, eb));
        if (!sub.passed()) return sub;
      }
    }
  }

  // Monotonicity in each slot.
  {
    std::vector<std::pair<int, int>> cmpx, cmpy;
    for (int i = 0; i < tx.size(); ++i)
      for (int j = 0; j < tx.size(); ++j)
        if (t_elem_leq(m, tx.at(i), tx.at(j))) cmpx.emplace_back(i, j);
    for (int i = 0; i < ty.size(); ++i)
      for (int j = 0; j < ty.size(); ++j)
        if (t_elem_leq(m, ty.at(i), ty.at(j))) cmpy.emplace_back(i, j);
    long long pairs = static_cast<long long>(cmpx.size()) * static_cast<long long>(cmpy.size());
    auto run_mono = [&](std::pair<int, int> pa, std::pair<int, int> pb) -> CheckReport {
      ++checks;
      TElem lo = t_kappa(m, nx, ny, tx.at(pa.first), ty.at(pb.first));
      TElem hi = t_kappa(m, nx, ny, tx.at(pa.second), ty.at(pb.second));
      if (!t_elem_leq(m, lo, hi))
        return CheckReport::fail({{"law", "pairing-monotone"},
                                  {"a_low", detail::elem_ref(tx, tx.at(pa.first))},
                                  {"a_high", detail::elem_ref(tx, tx.at(pa.second))},
                                  {"b_low", detail::elem_ref(ty, ty.at(pb.first))},
                                  {"b_high", detail::elem_ref(ty, ty.at(pb.second))}});
      return CheckReport::pass();
    };
    if (cfg.mode == Mode::Exhaustive || pairs <= cfg.budget) {
      for (auto pa : cmpx)
        for (auto pb : cmpy) {
          CheckReport sub = run_mono(pa, pb);
          if (!sub.passed()) return sub;
        }
    } else {
      std::mt19937_64 rng(cfg.seed + 5);
      std::uniform_int_distribution<std::size_t> pa(0, cmpx.size() - 1), pb(0, cmpy.size() - 1);
      for (long long k = 0; k < cfg.budget; ++k) {
        CheckReport sub = run_mono(cmpx[pa(rng)], cmpy[pb(rng)]);
        if (!sub.passed()) return sub;
      }
    }
  }

  r.stats["checks"] = checks;
  return r;
}

}  // namespace klab

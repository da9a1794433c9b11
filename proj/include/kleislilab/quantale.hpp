#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "kleislilab/errors.hpp"
#include "kleislilab/order.hpp"
#include "kleislilab/report.hpp"

namespace klab {

/** Unital quantale on a finite carrier: a complete lattice with an
 *  associative tensor that distributes over arbitrary joins.
 *
 * Construction only requires the shape (total tables, lattice order);
 * check_quantale verifies the laws. Flags are recomputed from the tables,
 * never trusted from input:
 *   - commutative: tensor symmetric (pairwise tensors commute);
 *   - frame: the lattice is distributive, hence (finitely) a frame;
 *   - unit_is_top: the tensor unit is the top element.
 */
struct Quantale {
  FinSet carrier;
  FinOrder order;
  LatticeOps lat;
  std::vector<int> tensor_tbl;
  int unit = -1;
  bool commutative = false;
  bool frame = false;
  bool unit_is_top = false;
  std::string name = "custom";

  int size() const { return carrier.size(); }
  bool leq(int a, int b) const { return order.leq(a, b); }
  int tens(int a, int b) const { return tensor_tbl[static_cast<std::size_t>(a * size() + b)]; }
  int join(int a, int b) const { return lat.join(a, b); }
  int meet(int a, int b) const { return lat.meet(a, b); }
  int join_of(const Bitset& s) const { return lat.join_of(s); }
  int bot() const { return lat.bot; }
  int top() const { return lat.top; }

  bool same_as(const Quantale& o) const {
    if (!(carrier == o.carrier) || unit != o.unit || tensor_tbl != o.tensor_tbl) return false;
    for (int i = 0; i < size(); ++i)
      if (order.up[static_cast<std::size_t>(i)] != o.order.up[static_cast<std::size_t>(i)]) return false;
    return true;
  }
};

inline Quantale make_quantale(FinSet carrier, std::vector<Bitset> up, std::vector<int> tensor,
                              const std::string& unit_id, std::string name = "custom") {
  Quantale q;
  q.carrier = std::move(carrier);
  int n = q.carrier.size();
  if (n == 0) raise(Errc::MalformedSurface, "quantale carrier is empty");
  q.order = make_order(q.carrier, std::move(up));
  q.lat = LatticeOps::from_order(q.order);
  if (static_cast<int>(tensor.size()) != n * n)
    raise(Errc::MalformedSurface, "tensor table is not total");
  q.tensor_tbl = std::move(tensor);
  q.unit = q.carrier.index_of(unit_id);
  if (q.unit < 0) raise(Errc::MalformedSurface, "unit '" + unit_id + "' not in carrier");
  q.commutative = true;
  for (int a = 0; a < n && q.commutative; ++a)
    for (int b = 0; b < n; ++b)
      if (q.tens(a, b) != q.tens(b, a)) {
        q.commutative = false;
        break;
      }
  q.frame = is_distributive(q.order).distributive;
  q.unit_is_top = (q.unit == q.lat.top);
  q.name = std::move(name);
  return q;
}

/** Verifies associativity, unit laws, and distribution of the tensor over
 *  arbitrary joins (every subset on each side). Bottom annihilation is the
 *  empty-join instance but is asserted directly as well. */
inline CheckReport check_quantale(const Quantale& q) {
  CheckReport r;
  int n = q.size();
  r.stats["carrier"] = n;
  r.stats["commutative"] = q.commutative;
  r.stats["frame"] = q.frame;
  r.stats["unit_is_top"] = q.unit_is_top;
  if (n > 20) return CheckReport::capped({{"reason", "carrier too large for subset scan"}});

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (q.tens(q.tens(a, b), c) != q.tens(a, q.tens(b, c)))
          return CheckReport::fail({{"law", "associativity"},
                                    {"a", q.carrier.id(a)},
                                    {"b", q.carrier.id(b)},
                                    {"c", q.carrier.id(c)}});
  for (int a = 0; a < n; ++a)
    if (q.tens(q.unit, a) != a || q.tens(a, q.unit) != a)
      return CheckReport::fail({{"law", "unit"}, {"a", q.carrier.id(a)}});

  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    Bitset sub = Bitset::from_mask(n, m);
    int js = q.join_of(sub);
    for (int a = 0; a < n; ++a) {
      Bitset left(n), right(n);
      sub.for_each([&](int s) {
        left.set(q.tens(a, s));
        right.set(q.tens(s, a));
      });
      if (q.tens(a, js) != q.join_of(left) || q.tens(js, a) != q.join_of(right)) {
        json w;
        w["law"] = "tensor-join-distribution";
        w["a"] = q.carrier.id(a);
        json subset = json::array();
        sub.for_each([&](int s) { subset.push_back(q.carrier.id(s)); });
        w["subset"] = subset;
        return CheckReport::fail(w);
      }
    }
  }
  for (int a = 0; a < n; ++a)
    if (q.tens(a, q.bot()) != q.bot() || q.tens(q.bot(), a) != q.bot())
      return CheckReport::fail({{"law", "bottom-annihilation"}, {"a", q.carrier.id(a)}});
  return r;
}

namespace detail {
inline std::string fraction_id(int num, int den) {
  if (num == 0) return "0";
  if (num == den) return "1";
  int g = std::gcd(num, den);
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}
}  // namespace detail

/** Built-in quantales: "bool2", "chain_min(n)", "lukasiewicz(n)". */
inline Quantale builtin_quantale(const std::string& name) {
  auto chain_order = [](int n) {
    std::vector<Bitset> up(static_cast<std::size_t>(n), Bitset(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) up[static_cast<std::size_t>(i)].set(j);
    return up;
  };
  auto parse_arg = [&](const std::string& prefix) -> int {
    if (name.size() <= prefix.size() + 1 || name.compare(0, prefix.size(), prefix) != 0 ||
        name[prefix.size()] != '(' || name.back() != ')')
      return -1;
    std::string digits = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    if (digits.empty()) return -1;
    for (char c : digits)
      if (c < '0' || c > '9') return -1;
    return std::stoi(digits);
  };

  if (name == "bool2") {
    std::vector<int> tensor = {0, 0, 0, 1};  // meet on the 2-chain
    return make_quantale(FinSet::ordered({"0", "1"}), chain_order(2), std::move(tensor), "1",
                         "bool2");
  }
  if (int n = parse_arg("chain_min"); n >= 1) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    std::vector<int> tensor(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) tensor[static_cast<std::size_t>(i * n + j)] = std::min(i, j);
    return make_quantale(FinSet::ordered(std::move(ids)), chain_order(n), std::move(tensor),
                         std::to_string(n - 1), name);
  }
  if (int n = parse_arg("lukasiewicz"); n >= 2) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(detail::fraction_id(i, n - 1));
    std::vector<int> tensor(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        tensor[static_cast<std::size_t>(i * n + j)] = std::max(0, i + j - (n - 1));
    return make_quantale(FinSet::ordered(std::move(ids)), chain_order(n), std::move(tensor), "1",
                         name);
  }
  raise(Errc::UnknownName, "no builtin quantale named '" + name + "'");
}

inline Quantale quantale_from_json(const json& j) {
  if (!j.is_object()) raise(Errc::MalformedSurface, "quantale: expected an object");
  for (auto& [key, _] : j.items())
    if (key != "carrier" && key != "leq" && key != "tensor" && key != "unit")
      raise(Errc::MalformedSurface, "quantale: unknown key '" + key + "'");
  if (!j.contains("carrier") || !j.contains("leq") || !j.contains("tensor") || !j.contains("unit"))
    raise(Errc::MalformedSurface, "quantale: need carrier, leq, tensor, unit");

  std::vector<std::string> ids;
  for (auto& e : j.at("carrier")) {
    std::string id = e.get<std::string>();
    if (id.empty() || id.find(',') != std::string::npos)
      raise(Errc::MalformedSurface, "quantale: bad element id '" + id + "'");
    ids.push_back(id);
  }
  FinSet carrier = FinSet::ordered(ids);
  int n = carrier.size();
  auto idx = [&](const std::string& id) {
    int i = carrier.index_of(id);
    if (i < 0) raise(Errc::MalformedSurface, "quantale: unknown element '" + id + "'");
    return i;
  };

  std::vector<Bitset> up(static_cast<std::size_t>(n), Bitset(n));
  for (auto& pr : j.at("leq")) {
    if (!pr.is_array() || pr.size() != 2)
      raise(Errc::MalformedSurface, "quantale: leq entries must be pairs");
    up[static_cast<std::size_t>(idx(pr[0].get<std::string>()))].set(idx(pr[1].get<std::string>()));
  }
  up = reflexive_transitive_closure(n, std::move(up));

  std::vector<int> tensor(static_cast<std::size_t>(n) * n, -1);
  for (auto& [key, val] : j.at("tensor").items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos)
      raise(Errc::MalformedSurface, "quantale: tensor key '" + key + "' is not 'u,v'");
    int a = idx(key.substr(0, comma)), b = idx(key.substr(comma + 1));
    if (tensor[static_cast<std::size_t>(a * n + b)] >= 0)
      raise(Errc::MalformedSurface, "quantale: duplicate tensor entry '" + key + "'");
    tensor[static_cast<std::size_t>(a * n + b)] = idx(val.get<std::string>());
  }
  for (int v : tensor)
    if (v < 0) raise(Errc::MalformedSurface, "quantale: tensor table is not total");

  // An empty name marks the quantale as ad hoc, so serialization writes the
  // full object back out instead of a lookup key.
  return make_quantale(std::move(carrier), std::move(up), std::move(tensor),
                       j.at("unit").get<std::string>(), "");
}

inline json quantale_to_json(const Quantale& q) {
  json j;
  j["carrier"] = q.carrier.ids();
  json leq = json::array();
  for (int a = 0; a < q.size(); ++a)
    for (int b = 0; b < q.size(); ++b)
      if (q.leq(a, b)) leq.push_back(json::array({q.carrier.id(a), q.carrier.id(b)}));
  j["leq"] = leq;
  json tensor = json::object();
  for (int a = 0; a < q.size(); ++a)
    for (int b = 0; b < q.size(); ++b)
      tensor[q.carrier.id(a) + "," + q.carrier.id(b)] = q.carrier.id(q.tens(a, b));
  j["tensor"] = tensor;
  j["unit"] = q.carrier.id(q.unit);
  return j;
}

}  // namespace klab

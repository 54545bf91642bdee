#pragma once

// JSON reading and writing. Field order is fixed (ordered_json) so that equal
// inputs give byte-identical output.
//
//   graph          {"vertices": n, "edges": [{"u": i, "v": j}, ...]}
//   group          {"orders": [n1, ..., ns]}
//   voltage graph  {"graph": ..., "group": ..., "voltages": [[e1, ..., es], ...]}
//   tower          {"graph": ..., "prime": p, "voltages": [a1, ...],
//                   "finite": {"group": ..., "voltages": [[...], ...]}}   (prime, finite optional)
//   ideal          {"ring": ..., "denominator": d, "hnf": [[...], ...]}

#include "galjac/covering.hpp"
#include "galjac/ideal.hpp"
#include "galjac/iwasawa.hpp"
#include "galjac/report.hpp"
#include "galjac/theorems.hpp"
#include "galjac/zeta.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace galjac {

using Json = nlohmann::ordered_json;

/// Malformed or semantically invalid input file.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline long nonneg(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long>() < 0) throw InputError(std::string(what) + " must be a non-negative integer");
  return j.get<long>();
}

}  // namespace detail

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline Json to_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline Json to_json(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Graph graph_from_json(const Json& j) {
  const long n = detail::nonneg(detail::field(j, "vertices"), "vertices");
  const Json& es = detail::field(j, "edges");
  if (!es.is_array()) throw InputError("edges must be an array");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : es) {
    const long u = detail::nonneg(detail::field(e, "u"), "u"), v = detail::nonneg(detail::field(e, "v"), "v");
    if (u >= n || v >= n) throw InputError("edge endpoint out of range");
    edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

inline Json to_json(const Graph& g) {
  Json es = Json::array();
  for (std::size_t e : g.edge_representatives()) es.push_back({{"u", g.src(e)}, {"v", g.dst(e)}});
  return {{"vertices", g.vertex_count()}, {"edges", es}};
}

inline GroupPtr group_from_json(const Json& j) {
  const Json& o = detail::field(j, "orders");
  if (!o.is_array()) throw InputError("orders must be an array");
  std::vector<long> orders;
  for (const auto& x : o) {
    const long n = detail::nonneg(x, "group order");
    if (n < 1) throw InputError("group orders must be positive");
    orders.push_back(n);
  }
  return make_group(orders);
}

inline Json to_json(const FinAbGroup& g) { return {{"orders", g.orders()}}; }

inline std::vector<long> exponent_vector(const Json& j, std::size_t rank) {
  if (!j.is_array() || j.size() != rank) throw InputError("voltage must list one exponent per group factor");
  std::vector<long> e;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError("voltage exponents must be integers");
    e.push_back(x.get<long>());
  }
  return e;
}

inline VoltageGraph voltage_graph_from_json(const Json& j) {
  Graph x = graph_from_json(detail::field(j, "graph"));
  const GroupPtr g = group_from_json(detail::field(j, "group"));
  const Json& v = detail::field(j, "voltages");
  if (!v.is_array() || v.size() != x.edge_count()) throw InputError("need exactly one voltage per edge");
  std::vector<std::vector<long>> exps;
  for (const auto& e : v) exps.push_back(exponent_vector(e, g->rank()));
  return make_voltage_graph(std::move(x), g, exps);
}

inline Json to_json(const VoltageGraph& vg) {
  Json v = Json::array();
  for (std::size_t a : vg.edge_voltages()) v.push_back(vg.group()->exponents(a));
  return {{"graph", to_json(vg.base())}, {"group", to_json(*vg.group())}, {"voltages", v}};
}

/// The prime comes from the file unless given explicitly.
inline ZpVoltageGraph tower_from_json(const Json& j, std::optional<unsigned long> prime = std::nullopt) {
  Graph x = graph_from_json(detail::field(j, "graph"));
  unsigned long p = 0;
  if (prime) p = *prime;
  else if (j.contains("prime")) p = static_cast<unsigned long>(detail::nonneg(j.at("prime"), "prime"));
  else throw InputError("no prime given");
  const Json& v = detail::field(j, "voltages");
  if (!v.is_array() || v.size() != x.edge_count()) throw InputError("need exactly one voltage per edge");
  std::vector<long> a;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw InputError("tower voltages must be integers");
    a.push_back(e.get<long>());
  }
  ZpVoltageGraph z(x, p, std::move(a));
  if (j.contains("finite")) {
    const Json& f = j.at("finite");
    const GroupPtr g = group_from_json(detail::field(f, "group"));
    const Json& gv = detail::field(f, "voltages");
    if (!gv.is_array() || gv.size() != x.edge_count()) throw InputError("need exactly one finite voltage per edge");
    std::vector<std::size_t> idx;
    for (const auto& e : gv) idx.push_back(g->index(exponent_vector(e, g->rank())));
    z = z.with_group(g, std::move(idx));
  }
  return z;
}

inline Json to_json(const ZpVoltageGraph& z) {
  Json j = {{"graph", to_json(z.base())}, {"prime", z.p()}, {"voltages", z.edge_voltages()}};
  if (const auto& f = z.finite_part()) {
    Json v = Json::array();
    for (std::size_t a : f->edge_voltages()) v.push_back(f->group()->exponents(a));
    j["finite"] = {{"group", to_json(*f->group())}, {"voltages", v}};
  }
  return j;
}

inline Json to_json(const GroupRingElement& x) { return to_json(x.coeffs()); }

inline Json to_json(const IdealLattice& I) {
  Json hnf = Json::array();
  for (const auto& r : I.lattice().basis()) hnf.push_back(to_json(r));
  return {{"ring", ring_name(I.tag())}, {"denominator", to_json(I.denominator())}, {"hnf", hnf}};
}

inline Json to_json(const Report& r) {
  return {{"claim", r.claim}, {"cases", r.cases}, {"failures", r.failures}};
}

/// Timing is left out so that reports are reproducible.
inline Json to_json(const VerificationReport& r) {
  Json v = Json::object(), ideals = Json::object();
  for (const auto& [name, ok] : r.verdicts) v[name] = ok;
  for (std::size_t i = 0; i < r.ideals.size(); ++i) ideals[r.labels[i]] = to_json(r.ideals[i]);
  return {{"instance", r.instance}, {"verdicts", v}, {"ideals", ideals}, {"failures", r.failures}};
}

inline Json to_json(const GroupRingPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

inline Json to_json(const IwasawaReport& r) {
  Json layers = Json::array();
  for (std::size_t n = 0; n < r.layers.orders.size(); ++n)
    layers.push_back({{"n", n}, {"jacobian_order", to_json(r.layers.orders[n])}, {"ord_p", r.layers.ord[n]}});
  return {{"prime", r.p},
          {"layers", layers},
          {"capped", r.layers.capped},
          {"fit", {{"lambda", r.fit.lambda}, {"mu", r.fit.mu}, {"nu", r.fit.nu}, {"n0", r.fit.n0}, {"stable", r.fit.stable}}},
          {"z_series", {{"coefficients", to_json(r.z.coeffs.coeffs())}, {"unit_shift", r.z.unit_shift}}},
          {"weierstrass_of_z_over_t", {{"mu", r.weierstrass.mu}, {"lambda", r.weierstrass.lambda}}},
          {"verdict", r.verdict},
          {"failures", r.failures}};
}

inline Json to_json(const KidaReport& r) {
  return {{"group_order", r.group_order},
          {"mu_zero", r.mu_zero},
          {"base", to_json(r.base)},
          {"cover", to_json(r.cover)},
          {"failures", r.failures}};
}

}  // namespace galjac

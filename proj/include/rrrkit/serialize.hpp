#pragma once

#include "rrrkit/model.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <utility>

namespace rrrkit {

namespace detail {

inline nlohmann::json entry_to_json(Real v) { return v; }
inline nlohmann::json entry_to_json(const Complex& v) {
  return nlohmann::json::array({v.real(), v.imag()});
}

inline void entry_from_json(const nlohmann::json& j, Real& out) {
  if (!j.is_number()) throw parse_error("expected a real number entry", 0);
  out = j.get<Real>();
}

inline void entry_from_json(const nlohmann::json& j, Complex& out) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw parse_error("expected a [re, im] pair", 0);
  out = Complex(j[0].get<Real>(), j[1].get<Real>());
}

}  // namespace detail

template <class Scalar>
nlohmann::json to_json(const Instance<Scalar>& inst) {
  nlohmann::json j;
  j["m"] = inst.m();
  j["n"] = inst.n();
  j["field"] = to_string(Instance<Scalar>::field);
  j["kind"] = to_string(inst.kind, inst.sparsity);
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < inst.m(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index k = 0; k < inst.n(); ++k) row.push_back(detail::entry_to_json(inst.A(i, k)));
    rows.push_back(std::move(row));
  }
  j["A"] = std::move(rows);
  nlohmann::json mags = nlohmann::json::array();
  for (Index i = 0; i < inst.m(); ++i) mags.push_back(inst.b[i]);
  j["b"] = std::move(mags);
  if (inst.x0) {
    nlohmann::json signal = nlohmann::json::array();
    for (Index i = 0; i < inst.n(); ++i) signal.push_back(detail::entry_to_json((*inst.x0)[i]));
    j["x0"] = std::move(signal);
  } else {
    j["x0"] = nullptr;
  }
  return j;
}

inline nlohmann::json to_json(const AnyInstance& inst) {
  return std::visit([](const auto& concrete) { return to_json(concrete); }, inst);
}

inline std::string serialize_instance(const AnyInstance& inst) { return to_json(inst).dump(); }

namespace detail {

template <class Scalar>
Instance<Scalar> instance_from_json(const nlohmann::json& j) {
  for (const char* key : {"m", "n", "field", "kind", "A", "b", "x0"})
    if (!j.contains(key)) throw parse_error(std::string("missing key '") + key + "'", 0);
  Instance<Scalar> inst;
  const Index m = j["m"].get<Index>();
  const Index n = j["n"].get<Index>();
  if (m < 1 || n < 1) throw validation_error("m", "dimensions must be positive");
  const auto [kind, sparsity] = parse_instance_kind(j["kind"].get<std::string>());
  inst.kind = kind;
  inst.sparsity = sparsity;
  const auto& rows = j["A"];
  if (!rows.is_array() || static_cast<Index>(rows.size()) != m)
    throw parse_error("'A' must hold m rows", 0);
  inst.A.resize(m, n);
  for (Index i = 0; i < m; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n)
      throw parse_error("'A' rows must hold n entries", 0);
    for (Index k = 0; k < n; ++k)
      entry_from_json(row[static_cast<std::size_t>(k)], inst.A(i, k));
  }
  const auto& mags = j["b"];
  if (!mags.is_array() || static_cast<Index>(mags.size()) != m)
    throw parse_error("'b' must hold m entries", 0);
  inst.b.resize(m);
  for (Index i = 0; i < m; ++i) {
    if (!mags[static_cast<std::size_t>(i)].is_number())
      throw parse_error("'b' entries must be real numbers", 0);
    inst.b[i] = mags[static_cast<std::size_t>(i)].get<Real>();
  }
  if (!j["x0"].is_null()) {
    const auto& signal = j["x0"];
    if (!signal.is_array() || static_cast<Index>(signal.size()) != n)
      throw parse_error("'x0' must hold n entries or null", 0);
    Vec<Scalar> x0(n);
    for (Index i = 0; i < n; ++i)
      entry_from_json(signal[static_cast<std::size_t>(i)], x0[i]);
    inst.x0 = std::move(x0);
  }
  inst.validate();
  return inst;
}

}  // namespace detail

/// Parses and validates an instance; throws parse_error on malformed input
/// (with the byte offset when the JSON itself is broken) and
/// validation_error naming the field on an invariant violation.
inline AnyInstance deserialize_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(e.what(), e.byte);
  }
  if (!j.is_object() || !j.contains("field"))
    throw parse_error("instance file must be an object with a 'field' key", 0);
  const std::string field = j["field"].get<std::string>();
  if (field == "real") return detail::instance_from_json<Real>(j);
  if (field == "complex") return detail::instance_from_json<Complex>(j);
  throw parse_error("unknown field '" + field + "'", 0);
}

inline void save_instance(const AnyInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << to_json(inst).dump(2) << '\n';
}

inline AnyInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize_instance(buffer.str());
}

}  // namespace rrrkit

#pragma once

// JSON forms of the exact data types. Rationals are "p/q" strings so
// nothing is rounded through serialization.

#include <json.hpp>

#include "kzdual/gl_action.hpp"
#include "kzdual/rational.hpp"
#include "kzdual/sampling.hpp"
#include "kzdual/weight_basis.hpp"

namespace kzdual {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json rat_json(const Rat& r) { return to_string(r); }

inline json matrix_json(const QMatrix& m) {
  json entries = json::array();
  for (const auto& e : m.entries()) entries.push_back(to_string(e));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline QMatrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  std::vector<Rat> entries;
  entries.reserve(rows * cols);
  for (const auto& e : j.at("entries")) entries.push_back(parse_rat(e.get<std::string>()));
  return QMatrix(rows, cols, std::move(entries));
}

inline json margins_json(const Margins& m) {
  return json{{"k", m.k}, {"n", m.n}, {"lambda", m.lambda}, {"mu", m.mu}};
}

/// Nested k x n integer array.
inline json table_json(const Table& t) {
  json rows = json::array();
  for (int a = 0; a < t.k; ++a) {
    json row = json::array();
    for (int i = 0; i < t.n; ++i) row.push_back(t(a, i));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json block_json(const WeightBlock& b) {
  json tables = json::array();
  for (const auto& t : b.tables()) tables.push_back(table_json(t));
  return json{{"margins", margins_json(b.margins())}, {"tables", std::move(tables)}};
}

inline json block_map_json(const BlockMap& m) {
  return json{{"source_margins", margins_json(m.source->margins())},
              {"target_margins", margins_json(m.target->margins())},
              {"matrix", matrix_json(m.matrix)}};
}

inline json point_json(const ParamPoint& p) {
  json z = json::array();
  for (const auto& v : p.z) z.push_back(to_string(v));
  json lam = json::array();
  for (const auto& v : p.lam) lam.push_back(to_string(v));
  json out{{"z", std::move(z)}, {"lam", std::move(lam)}, {"kappa", to_string(p.kappa)}};
  if (p.t) out["t"] = to_string(*p.t);
  return out;
}

}  // namespace kzdual

#pragma once

#include <json.hpp>

#include "stellar/subsystems.hpp"

namespace stellar {

inline nlohmann::json vec_to_json(const Vec& v, int dim) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < dim; ++i) a.push_back(v[i]);
  return a;
}

inline nlohmann::json witness_to_json(const PatternWitness& w, int dim) {
  nlohmann::json j;
  j["criterion"] = w.criterion;
  j["delta_type"] = w.delta_type;
  nlohmann::json simples = nlohmann::json::array();
  for (const auto& s : w.delta_simples) simples.push_back(vec_to_json(s, dim));
  j["delta_simples"] = simples;
  j["flattened_word"] = w.flattened_word;
  if (!w.embedding_kind.empty()) {
    j["embedding_kind"] = w.embedding_kind;
    nlohmann::json images = nlohmann::json::array();
    for (const auto& b : w.images) images.push_back(vec_to_json(b, dim));
    j["images"] = images;
    j["dual"] = w.dual;
    j["proper"] = w.proper;
  }
  return j;
}

// Round trip used by the output contract tests.
inline PatternWitness witness_from_json(const nlohmann::json& j) {
  PatternWitness w;
  w.criterion = j.at("criterion").get<std::string>();
  w.delta_type = j.at("delta_type").get<std::string>();
  for (const auto& s : j.at("delta_simples")) {
    Vec v{};
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = s[i].get<std::int64_t>();
    w.delta_simples.push_back(v);
  }
  w.flattened_word = j.at("flattened_word").get<std::vector<int>>();
  if (j.contains("embedding_kind")) {
    w.embedding_kind = j.at("embedding_kind").get<std::string>();
    for (const auto& s : j.at("images")) {
      Vec v{};
      for (std::size_t i = 0; i < s.size(); ++i) v[i] = s[i].get<std::int64_t>();
      w.images.push_back(v);
    }
    w.dual = j.at("dual").get<bool>();
    w.proper = j.at("proper").get<bool>();
  }
  return w;
}

}  // namespace stellar

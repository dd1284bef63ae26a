#pragma once

// Spectral projectors of V_l (x) V_m keyed by (N, l, m). They do not
// depend on the spectral parameter, so R(t) is evaluated from them on
// demand. An optional directory persists them across runs.

#include <compare>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>

#include "kzdual/gl_action.hpp"
#include "kzdual/serialize.hpp"

namespace kzdual {

struct RMatrixKey {
  int N = 0;
  int l = 0;
  int m = 0;
  friend auto operator<=>(const RMatrixKey&, const RMatrixKey&) = default;
};

struct PairProjectors {
  RMatrixKey key;
  PairBlock pair;
  PairDecomposition decomposition;
};

inline json projectors_json(const PairProjectors& p) {
  json spectrum = json::array();
  for (const auto& c : p.decomposition.spectrum) spectrum.push_back(to_string(c));
  json projectors = json::array();
  for (const auto& m : p.decomposition.projectors) projectors.push_back(matrix_json(m));
  return json{{"schema_version", kSchemaVersion},
              {"key", {{"N", p.key.N}, {"l", p.key.l}, {"m", p.key.m}}},
              {"labels", p.decomposition.labels},
              {"spectrum", std::move(spectrum)},
              {"projectors", std::move(projectors)}};
}

class ProjectorCache {
 public:
  ProjectorCache() = default;
  explicit ProjectorCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void set_directory(std::optional<std::filesystem::path> dir) {
    std::lock_guard lock(mutex_);
    dir_ = std::move(dir);
  }

  std::shared_ptr<const PairProjectors> get(const RMatrixKey& key) {
    std::lock_guard lock(mutex_);
    if (auto it = memory_.find(key); it != memory_.end()) return it->second;
    std::shared_ptr<const PairProjectors> entry;
    if (dir_) entry = load(key);
    if (!entry) {
      PairBlock pair(key.N, key.l, key.m);
      PairDecomposition dec = pair_decomposition(pair);
      entry = std::make_shared<const PairProjectors>(PairProjectors{key, std::move(pair), std::move(dec)});
      ++computed_;
      if (dir_) store(*entry);
    }
    memory_.emplace(key, entry);
    return entry;
  }

  /// Drops the in-memory entries; the directory is left alone.
  void clear_memory() {
    std::lock_guard lock(mutex_);
    memory_.clear();
  }

  std::size_t computed() const {
    std::lock_guard lock(mutex_);
    return computed_;
  }
  std::size_t loaded() const {
    std::lock_guard lock(mutex_);
    return loaded_;
  }

  std::filesystem::path file_for(const RMatrixKey& key) const {
    std::ostringstream name;
    name << "rproj-N" << key.N << "-l" << key.l << "-m" << key.m << ".json";
    return *dir_ / name.str();
  }

 private:
  std::shared_ptr<const PairProjectors> load(const RMatrixKey& key) {
    std::ifstream in(file_for(key));
    if (!in) return nullptr;
    json j;
    try {
      in >> j;
    } catch (const json::exception&) {
      return nullptr;
    }
    const auto& jk = j.at("key");
    if (j.value("schema_version", 0) != kSchemaVersion || jk.at("N") != key.N ||
        jk.at("l") != key.l || jk.at("m") != key.m)
      return nullptr;
    PairBlock pair(key.N, key.l, key.m);
    PairDecomposition dec;
    dec.labels = j.at("labels").get<std::vector<int>>();
    for (const auto& c : j.at("spectrum")) dec.spectrum.push_back(parse_rat(c.get<std::string>()));
    for (const auto& p : j.at("projectors")) {
      QMatrix m = matrix_from_json(p);
      if (m.rows() != pair.size() || m.cols() != pair.size()) return nullptr;
      dec.projectors.push_back(std::move(m));
    }
    if (dec.projectors.size() != dec.labels.size() || dec.spectrum.size() != dec.labels.size())
      return nullptr;
    ++loaded_;
    return std::make_shared<const PairProjectors>(PairProjectors{key, std::move(pair), std::move(dec)});
  }

  void store(const PairProjectors& p) const {
    std::filesystem::create_directories(*dir_);
    const auto path = file_for(p.key);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << projectors_json(p).dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
  }

  mutable std::mutex mutex_;
  std::optional<std::filesystem::path> dir_;
  std::map<RMatrixKey, std::shared_ptr<const PairProjectors>> memory_;
  std::size_t computed_ = 0;
  std::size_t loaded_ = 0;
};

inline ProjectorCache& default_projector_cache() {
  static ProjectorCache cache;
  return cache;
}

}  // namespace kzdual

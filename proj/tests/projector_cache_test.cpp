#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "kzdual/kzdual.hpp"

using namespace kzdual;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("kzdual-cache-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void expect_same(const PairProjectors& a, const PairProjectors& b) {
  EXPECT_EQ(a.key, b.key);
  EXPECT_EQ(a.decomposition.labels, b.decomposition.labels);
  EXPECT_EQ(a.decomposition.spectrum, b.decomposition.spectrum);
  EXPECT_EQ(a.decomposition.projectors, b.decomposition.projectors);
}

TEST(ProjectorCache, MemoryOnly) {
  ProjectorCache cache;
  const auto a = cache.get({2, 1, 1});
  const auto b = cache.get({2, 1, 1});
  EXPECT_EQ(a.get(), b.get());
  EXPECT_EQ(cache.computed(), 1u);
  EXPECT_EQ(cache.loaded(), 0u);
  cache.clear_memory();
  cache.get({2, 1, 1});
  EXPECT_EQ(cache.computed(), 2u);
}

TEST(ProjectorCache, DiskRoundTrip) {
  TempDir dir;
  ProjectorCache writer(dir.path);
  const auto original = writer.get({3, 2, 1});
  EXPECT_EQ(writer.computed(), 1u);
  EXPECT_TRUE(fs::exists(writer.file_for({3, 2, 1})));

  ProjectorCache reader(dir.path);
  const auto restored = reader.get({3, 2, 1});
  EXPECT_EQ(reader.computed(), 0u);
  EXPECT_EQ(reader.loaded(), 1u);
  expect_same(*original, *restored);
  EXPECT_EQ(r_matrix({3, 2, 1}, make_rat(2, 17), writer), r_matrix({3, 2, 1}, make_rat(2, 17), reader));
}

TEST(ProjectorCache, FileContentsAreStable) {
  TempDir dir;
  ProjectorCache first(dir.path);
  first.get({2, 1, 1});
  std::ifstream in(first.file_for({2, 1, 1}));
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const json j = json::parse(bytes);
  EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
  EXPECT_EQ(j.at("labels"), json::array({0, 1}));
  EXPECT_EQ(j.at("spectrum"), json::array({"6", "2"}));
  EXPECT_EQ(bytes, projectors_json(*first.get({2, 1, 1})).dump() + "\n");
}

TEST(ProjectorCache, CorruptFileIsRecomputed) {
  TempDir dir;
  ProjectorCache cache(dir.path);
  {
    std::ofstream out(cache.file_for({2, 2, 1}));
    out << "{ not json";
  }
  const auto entry = cache.get({2, 2, 1});
  EXPECT_EQ(cache.computed(), 1u);
  EXPECT_EQ(cache.loaded(), 0u);
  expect_same(*entry, *ProjectorCache().get({2, 2, 1}));
}

TEST(ProjectorCache, MismatchedKeyIsRecomputed) {
  TempDir dir;
  ProjectorCache cache(dir.path);
  cache.get({2, 1, 1});
  fs::copy_file(cache.file_for({2, 1, 1}), cache.file_for({2, 1, 2}));
  ProjectorCache fresh(dir.path);
  fresh.get({2, 1, 2});
  EXPECT_EQ(fresh.computed(), 1u);
}

TEST(ProjectorCache, ConcurrentAccess) {
  TempDir dir;
  ProjectorCache cache(dir.path);
  const RMatrixKey keys[] = {{2, 1, 1}, {2, 2, 1}, {3, 1, 1}, {3, 2, 2}};
  std::vector<std::jthread> threads;
  for (int w = 0; w < 4; ++w)
    threads.emplace_back([&, w] {
      for (int rep = 0; rep < 3; ++rep)
        for (std::size_t j = 0; j < 4; ++j) cache.get(keys[(j + static_cast<std::size_t>(w)) % 4]);
    });
  threads.clear();
  EXPECT_EQ(cache.computed(), 4u);
  ProjectorCache reader(dir.path);
  for (const auto& key : keys) expect_same(*cache.get(key), *reader.get(key));
  EXPECT_EQ(reader.loaded(), 4u);
}

}  // namespace

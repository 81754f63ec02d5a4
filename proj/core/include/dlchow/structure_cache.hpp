#ifndef DLCHOW_STRUCTURE_CACHE_HPP
#define DLCHOW_STRUCTURE_CACHE_HPP

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dlchow/schubert.hpp"

namespace dlchow {

/// Outcome of loading a cache file.
struct CacheLoadReport {
  std::size_t records = 0;
  std::size_t discarded_lines = 0;
  bool corruption_detected = false;
  bool header_rebuilt = false;
};

/// Memo table for Schubert structure constants of one rank.
///
/// Keys are unordered pairs {u, v}, stored with u <= v in WOrder. When
/// file-backed, the file is append-only JSON lines:
///
///   {"format":"dlchow-cache","version":1,"n":4}
///   {"u":"s1","v":"s2","expansion":[["s1 s2","1"],["s2 s1","1"]]}
///
/// A malformed line ends loading (it and everything after it are dropped)
/// and the file is rewritten. The file is also compacted on destruction.
/// Lookups and inserts may run concurrently; a product computed twice by
/// racing threads is identical, so the first insert wins.
class StructureCache {
public:
  explicit StructureCache(int n);
  StructureCache(int n, std::filesystem::path file);
  ~StructureCache();

  StructureCache(const StructureCache&) = delete;
  StructureCache& operator=(const StructureCache&) = delete;

  int rank() const { return n_; }
  const std::optional<std::filesystem::path>& file() const { return file_; }
  const CacheLoadReport& load_report() const { return report_; }

  std::optional<SchubertVector> lookup(const Permutation& u, const Permutation& v) const;
  void insert(const Permutation& u, const Permutation& v, const SchubertVector& expansion);
  std::size_t size() const;

  /// Rewrites the file with one record per key in WOrder order.
  void compact();

  static std::filesystem::path file_for(const std::filesystem::path& dir, int n);

private:
  struct Key {
    std::uint32_t u, v;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept { return (static_cast<std::size_t>(k.u) << 32U) ^ k.v; }
  };
  Key key_for(const Permutation& u, const Permutation& v) const;
  void load();
  void write_header(std::ostream& os) const;
  void write_record(std::ostream& os, const Key& key, const SchubertVector& expansion) const;

  int n_;
  std::optional<std::filesystem::path> file_;
  CacheLoadReport report_;
  mutable std::shared_mutex mu_;
  std::unordered_map<Key, SchubertVector, KeyHash> table_;
  std::ofstream append_;
};

/// Process-wide caches, one per rank. In-memory until configured.
class CacheRegistry {
public:
  static CacheRegistry& instance();

  /// Subsequent calls to cache(n) for ranks not yet opened use files under
  /// dir. Already opened ranks keep their current backing.
  void set_directory(std::filesystem::path dir);
  /// Ranks opened afterwards are kept in memory only.
  void clear_directory();
  std::optional<std::filesystem::path> directory() const;
  StructureCache& cache(int n);
  /// Load reports of every open file-backed cache, by rank.
  std::vector<std::pair<int, CacheLoadReport>> reports() const;
  /// Compacts and closes every cache (the next cache(n) reopens).
  void reset();

private:
  CacheRegistry() = default;
  mutable std::mutex mu_;
  std::optional<std::filesystem::path> dir_;
  std::unordered_map<int, std::unique_ptr<StructureCache>> caches_;
};

} // namespace dlchow

#endif // DLCHOW_STRUCTURE_CACHE_HPP

#pragma once

#include <json.hpp>

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace jtdet {

/// Append-only JSON-lines store of computed results, one record per line:
/// {"tool_version", "key", "timestamp", "value"}. The last record for a key
/// wins; records from other tool versions are ignored on load.
class ResultCache {
 public:
  /// Creates `dir` if needed and loads `dir`/results.jsonl.
  explicit ResultCache(std::filesystem::path dir);

  std::optional<nlohmann::json> lookup(const std::string& key) const;
  /// Appends a record and flushes; writes are serialized.
  void store(const std::string& key, const nlohmann::json& value);

  std::size_t size() const;
  const std::filesystem::path& file() const { return file_; }

  /// tool_version|field|subject|target, e.g. "0.1.0|q=4;mod=1,1,1|shape=2,1|a=all".
  static std::string make_key(const std::string& field, const std::string& subject, const std::string& target);

 private:
  std::filesystem::path file_;
  mutable std::mutex mutex_;
  std::map<std::string, nlohmann::json> entries_;
};

/// Directory from an explicit flag value, else $JTDET_CACHE_DIR, else none.
std::optional<std::filesystem::path> cache_dir_from(const std::string& flag_value);

}  // namespace jtdet

#include "jtdet/cache.hpp"

#include "jtdet/error.hpp"
#include "jtdet/version.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>

namespace jtdet {

ResultCache::ResultCache(std::filesystem::path dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create cache directory " + dir.string() + ": " + ec.message());
  file_ = dir / "results.jsonl";
  std::ifstream in(file_);
  std::string line;
  while (std::getline(in, line)) {
    // A torn last line from an interrupted run is skipped.
    const auto rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) continue;
    if (rec.value("tool_version", std::string()) != kToolVersion) continue;
    if (!rec.contains("key") || !rec["key"].is_string() || !rec.contains("value")) continue;
    entries_[rec["key"].get<std::string>()] = rec["value"];
  }
}

std::optional<nlohmann::json> ResultCache::lookup(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResultCache::store(const std::string& key, const nlohmann::json& value) {
  const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  const nlohmann::json rec = {{"tool_version", kToolVersion}, {"key", key}, {"timestamp", now}, {"value", value}};
  std::lock_guard lock(mutex_);
  std::ofstream out(file_, std::ios::app);
  if (!out) throw InvalidArgument("cannot write cache file " + file_.string());
  out << rec.dump() << '\n';
  out.flush();
  entries_[key] = value;
}

std::size_t ResultCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::string ResultCache::make_key(const std::string& field, const std::string& subject, const std::string& target) {
  return std::string(kToolVersion) + "|" + field + "|" + subject + "|" + target;
}

std::optional<std::filesystem::path> cache_dir_from(const std::string& flag_value) {
  if (!flag_value.empty()) return std::filesystem::path(flag_value);
  if (const char* env = std::getenv("JTDET_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

}  // namespace jtdet

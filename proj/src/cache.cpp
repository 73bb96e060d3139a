#include "permcollide/cache.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "permcollide/serialize.hpp"

namespace permcollide {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

}  // namespace

ResultCache::ResultCache(std::filesystem::path dir, bool enabled)
    : dir_(std::move(dir)), enabled_(enabled) {}

std::filesystem::path ResultCache::path_for(const std::string& command,
                                            const nlohmann::json& params,
                                            const std::string& format) const {
  const std::string key = command + "\x1f" + params.dump() + "\x1f" + format;
  return dir_ / (command + "-" + hex16(fnv1a64(key)) + ".json");
}

std::optional<std::string> ResultCache::lookup(const std::string& command,
                                               const nlohmann::json& params,
                                               const std::string& format) const {
  if (!enabled_) return std::nullopt;
  const std::filesystem::path path = path_for(command, params, format);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(buf.str(), nullptr, /*allow_exceptions=*/false);
  const bool valid = !doc.is_discarded() && doc.is_object() &&
                     doc.value("schema_version", -1) == serialize::kSchemaVersion &&
                     doc.value("command", "") == command && doc.value("format", "") == format &&
                     doc.contains("params") && doc["params"] == params &&
                     doc.contains("payload") && doc["payload"].is_string();
  if (!valid) {
    std::cerr << "warning: ignoring corrupt cache file " << path.string() << "\n";
    return std::nullopt;
  }
  return doc["payload"].get<std::string>();
}

void ResultCache::store(const std::string& command, const nlohmann::json& params,
                        const std::string& format, const std::string& payload) const {
  if (!enabled_) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const std::filesystem::path path = path_for(command, params, format);
  nlohmann::json doc;
  doc["command"] = command;
  doc["format"] = format;
  doc["params"] = params;
  doc["payload"] = payload;
  doc["schema_version"] = serialize::kSchemaVersion;
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "warning: cache directory " << dir_.string() << " is not writable\n";
      return;
    }
    out << doc.dump();
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::cerr << "warning: could not finalize cache file " << path.string() << "\n";
}

}  // namespace permcollide

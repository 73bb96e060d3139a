#pragma once

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>

namespace permcollide {

// Content-addressed store of serialized command output. The cached bytes are
// exactly what stdout would carry, so a hit and a recomputation are
// byte-identical. Corrupt or mismatched files are ignored with a warning and
// rewritten.
class ResultCache {
 public:
  ResultCache(std::filesystem::path dir, bool enabled);

  bool enabled() const { return enabled_; }
  const std::filesystem::path& dir() const { return dir_; }

  std::optional<std::string> lookup(const std::string& command, const nlohmann::json& params,
                                    const std::string& format) const;
  void store(const std::string& command, const nlohmann::json& params, const std::string& format,
             const std::string& payload) const;

  std::filesystem::path path_for(const std::string& command, const nlohmann::json& params,
                                 const std::string& format) const;

 private:
  std::filesystem::path dir_;
  bool enabled_ = false;
};

}  // namespace permcollide

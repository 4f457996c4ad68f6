#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>

#include "argdecode/providers.hpp"

namespace argdecode {

/// Content-addressed response cache: one file per key, hex-named, with a
/// checksum header. Entries failing the checksum are treated as misses and
/// logged. Concurrent readers, serialized writers.
class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path dir);

  std::optional<std::string> get(const std::string& key);
  void put(const std::string& key, const std::string& value);

  /// Canonical cache key for a provider call.
  static std::string make_key(const std::string& provider_id,
                              const std::string& operation,
                              const std::string& canonical_inputs);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& key) const;

  std::filesystem::path dir_;
  mutable std::shared_mutex mutex_;
};

// Read-through wrappers. A null cache pointer disables caching transparently.

class CachedEmbedProvider : public EmbedProvider {
 public:
  CachedEmbedProvider(std::shared_ptr<EmbedProvider> inner,
                      std::shared_ptr<DiskCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}
  std::string id() const override { return inner_->id(); }
  EmbeddingVector embed(const std::string& text) override;

 private:
  std::shared_ptr<EmbedProvider> inner_;
  std::shared_ptr<DiskCache> cache_;
};

class CachedNliProvider : public NliProvider {
 public:
  CachedNliProvider(std::shared_ptr<NliProvider> inner,
                    std::shared_ptr<DiskCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}
  std::string id() const override { return inner_->id(); }
  NliScores score(const std::string& premise,
                  const std::string& hypothesis) override;

 private:
  std::shared_ptr<NliProvider> inner_;
  std::shared_ptr<DiskCache> cache_;
};

class CachedGenProvider : public GenProvider {
 public:
  CachedGenProvider(std::shared_ptr<GenProvider> inner,
                    std::shared_ptr<DiskCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}
  std::string id() const override { return inner_->id(); }
  std::vector<std::string> generate(const GenerationRequest& req) override;

 private:
  std::shared_ptr<GenProvider> inner_;
  std::shared_ptr<DiskCache> cache_;
};

class CachedParseProvider : public AmrParseProvider {
 public:
  CachedParseProvider(std::shared_ptr<AmrParseProvider> inner,
                      std::shared_ptr<DiskCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}
  std::string id() const override { return inner_->id(); }
  std::string parse(const std::string& sentence) override;

 private:
  std::shared_ptr<AmrParseProvider> inner_;
  std::shared_ptr<DiskCache> cache_;
};

}  // namespace argdecode

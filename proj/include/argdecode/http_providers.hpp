#pragma once

#include <memory>
#include <string>

#include "argdecode/providers.hpp"

namespace argdecode {

/// Endpoint configuration for the JSON-over-HTTP wire protocol. Each call is
/// a single POST; the client retries transient failures with exponential
/// backoff before giving up with ProviderUnavailable.
struct HttpOptions {
  int timeout_seconds = 30;
  int max_attempts = 3;
  int backoff_initial_ms = 100;

  /// Reads ARGDECODE_HTTP_TIMEOUT (seconds), if set.
  static HttpOptions from_env();
};

/// Reads ARGDECODE_EMBED_URL / ARGDECODE_NLI_URL / ARGDECODE_GEN_URL /
/// ARGDECODE_PARSE_URL; empty string when unset.
std::string embed_url_from_env();
std::string nli_url_from_env();
std::string gen_url_from_env();
std::string parse_url_from_env();

/// POST {"text"} → {"embedding": [..]}.
class HttpEmbedProvider : public EmbedProvider {
 public:
  explicit HttpEmbedProvider(std::string url, HttpOptions options = {});
  std::string id() const override { return "http-embed:" + url_; }
  EmbeddingVector embed(const std::string& text) override;

 private:
  std::string url_;
  HttpOptions options_;
};

/// POST {"premise","hypothesis"} → {"ent","con","neu"}, each in [0,1] on the
/// wire; the client scales to [0,100].
class HttpNliProvider : public NliProvider {
 public:
  explicit HttpNliProvider(std::string url, HttpOptions options = {});
  std::string id() const override { return "http-nli:" + url_; }
  NliScores score(const std::string& premise,
                  const std::string& hypothesis) override;

 private:
  std::string url_;
  HttpOptions options_;
};

/// POST {"premise","claim","steps","kind","prompt"} → {"text": completion}.
/// The prompt field carries the full rendered instruction template; the
/// completion must follow the mandated "Helpful:" / "Non-Helpful:" format.
class HttpGenProvider : public GenProvider {
 public:
  explicit HttpGenProvider(std::string url, HttpOptions options = {});
  std::string id() const override { return "http-gen:" + url_; }
  std::vector<std::string> generate(const GenerationRequest& req) override;

 private:
  std::string url_;
  HttpOptions options_;
};

/// POST {"sentence"} → {"penman": "(w / want-01 ...)"}.
class HttpParseProvider : public AmrParseProvider {
 public:
  explicit HttpParseProvider(std::string url, HttpOptions options = {});
  std::string id() const override { return "http-parse:" + url_; }
  std::string parse(const std::string& sentence) override;

 private:
  std::string url_;
  HttpOptions options_;
};

}  // namespace argdecode

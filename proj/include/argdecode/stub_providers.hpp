#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "argdecode/providers.hpp"

namespace argdecode {

/// Fixture file failed to load or violates its own schema.
struct FixtureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Recorded provider responses, loaded from JSON. All sections are optional:
///   {
///     "embeddings": { "<text>": [0.1, ...] },
///     "nli": [ {"premise": "...", "hypothesis": "...",
///               "ent": 0, "con": 85, "neu": 5} ],
///     "chains": [ {"premise": "...", "claim": "...", "steps": 2,
///                  "kind": "Helpful", "sentences": ["...", "..."]} ],
///     "parses": { "<sentence>": "(w / want-01 ...)" }
///   }
/// NLI scores are on the [0,100] scale. Chain sentence counts must equal
/// their "steps" value.
struct StubFixtures {
  std::map<std::string, EmbeddingVector> embeddings;
  std::map<std::pair<std::string, std::string>, NliScores> nli;
  std::map<std::tuple<std::string, std::string, int, std::string>,
           std::vector<std::string>>
      chains;
  std::map<std::string, std::string> parses;

  static StubFixtures load(const std::string& path);
  /// Later entries win on key collision.
  void merge(const StubFixtures& other);
};

/// Fixture hit → recorded vector; miss → unit vector derived from a seeded
/// hash of the text, so unknown texts still embed deterministically.
class StubEmbedProvider : public EmbedProvider {
 public:
  explicit StubEmbedProvider(std::shared_ptr<const StubFixtures> fixtures,
                             size_t fallback_dim = 32)
      : fixtures_(std::move(fixtures)), fallback_dim_(fallback_dim) {}
  std::string id() const override { return "stub-embed"; }
  EmbeddingVector embed(const std::string& text) override;

 private:
  std::shared_ptr<const StubFixtures> fixtures_;
  size_t fallback_dim_;
};

/// Fixture hit → recorded scores; miss → the neutral default (0, 0, 100).
class StubNliProvider : public NliProvider {
 public:
  explicit StubNliProvider(std::shared_ptr<const StubFixtures> fixtures)
      : fixtures_(std::move(fixtures)) {}
  std::string id() const override { return "stub-nli"; }
  NliScores score(const std::string& premise,
                  const std::string& hypothesis) override;

 private:
  std::shared_ptr<const StubFixtures> fixtures_;
};

/// Pure replay: misses are ProviderUnavailable, since reasoning chains cannot
/// be invented offline.
class StubGenProvider : public GenProvider {
 public:
  explicit StubGenProvider(std::shared_ptr<const StubFixtures> fixtures)
      : fixtures_(std::move(fixtures)) {}
  std::string id() const override { return "stub-gen"; }
  std::vector<std::string> generate(const GenerationRequest& req) override;

 private:
  std::shared_ptr<const StubFixtures> fixtures_;
};

/// Pure replay, like StubGenProvider.
class StubParseProvider : public AmrParseProvider {
 public:
  explicit StubParseProvider(std::shared_ptr<const StubFixtures> fixtures)
      : fixtures_(std::move(fixtures)) {}
  std::string id() const override { return "stub-parse"; }
  std::string parse(const std::string& sentence) override;

 private:
  std::shared_ptr<const StubFixtures> fixtures_;
};

}  // namespace argdecode

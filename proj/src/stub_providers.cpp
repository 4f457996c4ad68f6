#include "argdecode/stub_providers.hpp"

#include <cmath>
#include <fstream>

#include "argdecode/util.hpp"
#include "json.hpp"

namespace argdecode {

using nlohmann::json;

namespace {

double require_score(const json& j, const char* field, const std::string& ctx) {
  double v = j.at(field).get<double>();
  if (!(v >= 0.0 && v <= 100.0))
    throw OutOfRangeScore("fixture " + ctx + ": " + field + " = " +
                          std::to_string(v) + " outside [0,100]");
  return v;
}

}  // namespace

StubFixtures StubFixtures::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open fixture file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FixtureError("fixture file " + path + ": " + e.what());
  }
  StubFixtures out;
  try {
    if (j.contains("embeddings")) {
      for (const auto& [text, vec] : j.at("embeddings").items()) {
        EmbeddingVector v = vec.get<EmbeddingVector>();
        if (v.empty())
          throw FixtureError("fixture " + path + ": empty embedding for \"" +
                             text + "\"");
        out.embeddings[text] = std::move(v);
      }
    }
    if (j.contains("nli")) {
      for (const auto& entry : j.at("nli")) {
        std::string p = entry.at("premise").get<std::string>();
        std::string h = entry.at("hypothesis").get<std::string>();
        std::string ctx = "nli(" + p + ", " + h + ")";
        out.nli[{p, h}] = {require_score(entry, "ent", ctx),
                           require_score(entry, "con", ctx),
                           require_score(entry, "neu", ctx)};
      }
    }
    if (j.contains("chains")) {
      for (const auto& entry : j.at("chains")) {
        int steps = entry.at("steps").get<int>();
        auto sentences = entry.at("sentences").get<std::vector<std::string>>();
        if (static_cast<int>(sentences.size()) != steps)
          throw FixtureError("fixture " + path + ": chain with " +
                             std::to_string(sentences.size()) +
                             " sentences declared steps=" +
                             std::to_string(steps));
        std::string kind = entry.at("kind").get<std::string>();
        parse_chain_kind(kind);  // validate
        out.chains[{entry.at("premise").get<std::string>(),
                    entry.at("claim").get<std::string>(), steps, kind}] =
            std::move(sentences);
      }
    }
    if (j.contains("parses")) {
      for (const auto& [sentence, penman] : j.at("parses").items())
        out.parses[sentence] = penman.get<std::string>();
    }
  } catch (const json::exception& e) {
    throw FixtureError("fixture file " + path + ": " + e.what());
  }
  return out;
}

void StubFixtures::merge(const StubFixtures& other) {
  for (const auto& [k, v] : other.embeddings) embeddings[k] = v;
  for (const auto& [k, v] : other.nli) nli[k] = v;
  for (const auto& [k, v] : other.chains) chains[k] = v;
  for (const auto& [k, v] : other.parses) parses[k] = v;
}

EmbeddingVector StubEmbedProvider::embed(const std::string& text) {
  if (text.empty())
    throw std::invalid_argument("embed: empty text");
  if (fixtures_) {
    auto it = fixtures_->embeddings.find(text);
    if (it != fixtures_->embeddings.end()) return it->second;
  }
  // Deterministic pseudo-embedding: hash-seeded stream, unit-normalized.
  uint64_t state = fnv1a64(text, 0x61726764u /* arbitrary fixed seed */);
  EmbeddingVector v(fallback_dim_);
  for (double& x : v) {
    uint64_t bits = splitmix64(state);
    x = static_cast<double>(bits >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm < 1e-12) {
    v.assign(fallback_dim_, 0.0);
    v[0] = 1.0;
    return v;
  }
  for (double& x : v) x /= norm;
  return v;
}

NliScores StubNliProvider::score(const std::string& premise,
                                 const std::string& hypothesis) {
  if (premise.empty() || hypothesis.empty())
    throw std::invalid_argument("nli: empty sentence");
  if (fixtures_) {
    auto it = fixtures_->nli.find({premise, hypothesis});
    if (it != fixtures_->nli.end()) return it->second;
  }
  return {0.0, 0.0, 100.0};
}

std::vector<std::string> StubGenProvider::generate(
    const GenerationRequest& req) {
  if (fixtures_) {
    auto it = fixtures_->chains.find(
        {req.premise, req.claim, req.steps, chain_kind_name(req.kind)});
    if (it != fixtures_->chains.end()) return it->second;
  }
  throw ProviderUnavailable("stub-gen: no recorded chain for (" + req.premise +
                            ", " + req.claim + ", " +
                            std::to_string(req.steps) + ", " +
                            chain_kind_name(req.kind) + ")");
}

std::string StubParseProvider::parse(const std::string& sentence) {
  if (fixtures_) {
    auto it = fixtures_->parses.find(sentence);
    if (it != fixtures_->parses.end()) return it->second;
  }
  throw ProviderUnavailable("stub-parse: no recorded graph for \"" + sentence +
                            "\"");
}

}  // namespace argdecode

#include "argdecode/cache.hpp"

#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "argdecode/util.hpp"
#include "json.hpp"

namespace argdecode {

namespace fs = std::filesystem;
using nlohmann::json;

DiskCache::DiskCache(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
}

std::string DiskCache::make_key(const std::string& provider_id,
                                const std::string& operation,
                                const std::string& canonical_inputs) {
  json j = {{"provider", provider_id},
            {"op", operation},
            {"inputs", canonical_inputs}};
  return j.dump();
}

fs::path DiskCache::path_for(const std::string& key) const {
  // Two independently seeded hashes give a 128-bit name; collisions across
  // distinct keys are not a practical concern for desk-scale corpora.
  uint64_t lo = fnv1a64(key);
  uint64_t hi = fnv1a64(key, 0x9e3779b97f4a7c15ull);
  return dir_ / (to_hex(hi) + to_hex(lo) + ".entry");
}

std::optional<std::string> DiskCache::get(const std::string& key) {
  fs::path path = path_for(key);
  std::shared_lock lock(mutex_);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  if (!std::getline(in, header)) return std::nullopt;
  std::ostringstream rest;
  rest << in.rdbuf();
  std::string payload = rest.str();
  std::istringstream hs(header);
  std::string magic, version, checksum;
  size_t size = 0;
  if (!(hs >> magic >> version >> checksum >> size) || magic != "argdecode-cache") {
    std::cerr << "warning: corrupt cache entry (bad header): " << path.string()
              << "\n";
    return std::nullopt;
  }
  if (payload.size() != size || to_hex(fnv1a64(payload)) != checksum) {
    std::cerr << "warning: corrupt cache entry (checksum mismatch): "
              << path.string() << "\n";
    return std::nullopt;
  }
  return payload;
}

void DiskCache::put(const std::string& key, const std::string& value) {
  fs::path path = path_for(key);
  fs::path tmp = path;
  tmp += ".tmp";
  std::unique_lock lock(mutex_);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << "argdecode-cache 1 " << to_hex(fnv1a64(value)) << ' '
        << value.size() << '\n'
        << value;
    if (!out) {
      std::cerr << "warning: cache write failed: " << tmp.string() << "\n";
      return;
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
    std::cerr << "warning: cache rename failed: " << ec.message() << "\n";
}

EmbeddingVector CachedEmbedProvider::embed(const std::string& text) {
  if (!cache_) return inner_->embed(text);
  std::string key = DiskCache::make_key(id(), "embed", text);
  if (auto hit = cache_->get(key)) {
    json j = json::parse(*hit);
    return j.get<EmbeddingVector>();
  }
  EmbeddingVector v = inner_->embed(text);
  cache_->put(key, json(v).dump());
  return v;
}

NliScores CachedNliProvider::score(const std::string& premise,
                                   const std::string& hypothesis) {
  if (!cache_) return inner_->score(premise, hypothesis);
  json inputs = {{"premise", premise}, {"hypothesis", hypothesis}};
  std::string key = DiskCache::make_key(id(), "nli", inputs.dump());
  if (auto hit = cache_->get(key)) {
    json j = json::parse(*hit);
    return {j.at("ent").get<double>(), j.at("con").get<double>(),
            j.at("neu").get<double>()};
  }
  NliScores s = inner_->score(premise, hypothesis);
  json j = {{"ent", s.ent}, {"con", s.con}, {"neu", s.neu}};
  cache_->put(key, j.dump());
  return s;
}

std::vector<std::string> CachedGenProvider::generate(
    const GenerationRequest& req) {
  if (!cache_) return inner_->generate(req);
  json inputs = {{"premise", req.premise},
                 {"claim", req.claim},
                 {"steps", req.steps},
                 {"kind", chain_kind_name(req.kind)}};
  std::string key = DiskCache::make_key(id(), "generate", inputs.dump());
  if (auto hit = cache_->get(key)) {
    json j = json::parse(*hit);
    return j.get<std::vector<std::string>>();
  }
  std::vector<std::string> chain = inner_->generate(req);
  cache_->put(key, json(chain).dump());
  return chain;
}

std::string CachedParseProvider::parse(const std::string& sentence) {
  if (!cache_) return inner_->parse(sentence);
  std::string key = DiskCache::make_key(id(), "parse", sentence);
  if (auto hit = cache_->get(key)) return *hit;
  std::string penman = inner_->parse(sentence);
  cache_->put(key, penman);
  return penman;
}

}  // namespace argdecode

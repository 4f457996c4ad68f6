#include "argdecode/http_providers.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace argdecode {

using nlohmann::json;

namespace {

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

// "http://host:port/some/path" → {"http://host:port", "/some/path"}.
std::pair<std::string, std::string> split_url(const std::string& url) {
  size_t scheme = url.find("://");
  size_t path_start =
      url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

// One POST with retry/backoff. Returns the parsed JSON body of a 200
// response; throws ProviderUnavailable after exhausting attempts and
// MalformedResponse when a body arrives but is not JSON.
json post_json(const std::string& url, const json& body,
               const HttpOptions& options) {
  auto [base, path] = split_url(url);
  std::string payload = body.dump();
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt < std::max(1, options.max_attempts);
       ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(
          options.backoff_initial_ms << (attempt - 1)));
    }
    httplib::Client client(base);
    client.set_connection_timeout(options.timeout_seconds, 0);
    client.set_read_timeout(options.timeout_seconds, 0);
    client.set_write_timeout(options.timeout_seconds, 0);
    auto res = client.Post(path, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    try {
      return json::parse(res->body);
    } catch (const json::exception& e) {
      throw MalformedResponse(url + ": response is not JSON: " + e.what());
    }
  }
  throw ProviderUnavailable(url + ": " + last_error + " after " +
                            std::to_string(std::max(1, options.max_attempts)) +
                            " attempts");
}

double wire_score(const json& j, const char* field, const std::string& url) {
  if (!j.contains(field))
    throw MalformedResponse(url + ": missing field \"" + field + "\"");
  double v = j.at(field).get<double>();
  if (!(v >= 0.0 && v <= 1.0))
    throw OutOfRangeScore(url + ": " + field + " = " + std::to_string(v) +
                          " outside wire range [0,1]");
  return v * 100.0;  // wire scale is [0,1]; scores are kept in [0,100]
}

}  // namespace

HttpOptions HttpOptions::from_env() {
  HttpOptions o;
  std::string t = env_or_empty("ARGDECODE_HTTP_TIMEOUT");
  if (!t.empty()) o.timeout_seconds = std::max(1, std::atoi(t.c_str()));
  return o;
}

std::string embed_url_from_env() { return env_or_empty("ARGDECODE_EMBED_URL"); }
std::string nli_url_from_env() { return env_or_empty("ARGDECODE_NLI_URL"); }
std::string gen_url_from_env() { return env_or_empty("ARGDECODE_GEN_URL"); }
std::string parse_url_from_env() { return env_or_empty("ARGDECODE_PARSE_URL"); }

HttpEmbedProvider::HttpEmbedProvider(std::string url, HttpOptions options)
    : url_(std::move(url)), options_(options) {}

EmbeddingVector HttpEmbedProvider::embed(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("embed: empty text");
  json res = post_json(url_, {{"text", text}}, options_);
  if (!res.contains("embedding") || !res.at("embedding").is_array())
    throw MalformedResponse(url_ + ": missing \"embedding\" array");
  EmbeddingVector v = res.at("embedding").get<EmbeddingVector>();
  if (v.empty()) throw MalformedResponse(url_ + ": empty embedding");
  for (double x : v)
    if (!std::isfinite(x))
      throw MalformedResponse(url_ + ": non-finite embedding entry");
  return v;
}

HttpNliProvider::HttpNliProvider(std::string url, HttpOptions options)
    : url_(std::move(url)), options_(options) {}

NliScores HttpNliProvider::score(const std::string& premise,
                                 const std::string& hypothesis) {
  if (premise.empty() || hypothesis.empty())
    throw std::invalid_argument("nli: empty sentence");
  json res = post_json(
      url_, {{"premise", premise}, {"hypothesis", hypothesis}}, options_);
  return {wire_score(res, "ent", url_), wire_score(res, "con", url_),
          wire_score(res, "neu", url_)};
}

HttpGenProvider::HttpGenProvider(std::string url, HttpOptions options)
    : url_(std::move(url)), options_(options) {}

std::vector<std::string> HttpGenProvider::generate(
    const GenerationRequest& req) {
  json body = {{"premise", req.premise},
               {"claim", req.claim},
               {"steps", req.steps},
               {"kind", chain_kind_name(req.kind)},
               {"prompt", render_generation_prompt(req)}};
  json res = post_json(url_, body, options_);
  if (!res.contains("text") || !res.at("text").is_string())
    throw MalformedResponse(url_ + ": missing \"text\" field");
  return parse_chain_response(res.at("text").get<std::string>(), req);
}

HttpParseProvider::HttpParseProvider(std::string url, HttpOptions options)
    : url_(std::move(url)), options_(options) {}

std::string HttpParseProvider::parse(const std::string& sentence) {
  if (sentence.empty()) throw std::invalid_argument("parse: empty sentence");
  json res = post_json(url_, {{"sentence", sentence}}, options_);
  if (!res.contains("penman") || !res.at("penman").is_string())
    throw MalformedResponse(url_ + ": missing \"penman\" field");
  std::string penman = res.at("penman").get<std::string>();
  if (penman.empty()) throw MalformedResponse(url_ + ": empty penman");
  return penman;
}

}  // namespace argdecode

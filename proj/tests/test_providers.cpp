#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "argdecode/cache.hpp"
#include "argdecode/http_providers.hpp"
#include "argdecode/providers.hpp"
#include "argdecode/stub_providers.hpp"
#include "doctest.h"
#include "httplib.h"

using namespace argdecode;
namespace fs = std::filesystem;

#ifndef ARGDECODE_DATA_DIR
#error "ARGDECODE_DATA_DIR must point at the repository data directory"
#endif

namespace {

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("argdecode-test-" + tag + "-" +
                                              std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_temp(const fs::path& dir, const std::string& name,
                       const std::string& content) {
  fs::path p = dir / name;
  std::ofstream(p) << content;
  return p.string();
}

struct CountingEmbed : EmbedProvider {
  std::atomic<int> calls{0};
  std::string id() const override { return "counting-embed"; }
  EmbeddingVector embed(const std::string& text) override {
    ++calls;
    return {1.0, static_cast<double>(text.size())};
  }
};

// Loopback HTTP endpoint for exercising the wire protocol.
struct TestServer {
  httplib::Server svr;
  int port = 0;
  std::thread thread;

  void start() {
    port = svr.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { svr.listen_after_bind(); });
    svr.wait_until_ready();
  }
  ~TestServer() {
    svr.stop();
    if (thread.joinable()) thread.join();
  }
  std::string url(const std::string& path = "/") const {
    return "http://127.0.0.1:" + std::to_string(port) + path;
  }
};

HttpOptions fast_options() {
  HttpOptions o;
  o.timeout_seconds = 5;
  o.backoff_initial_ms = 1;
  return o;
}

}  // namespace

TEST_CASE("cosine similarity on exact vectors") {
  CHECK(cosine_similarity({1, 0}, {1, 0}) == 1.0);
  CHECK(cosine_similarity({1, 0}, {0, 1}) == 0.0);
  CHECK(cosine_similarity({1, 0}, {-1, 0}) == -1.0);
  CHECK(cosine_similarity({2, 0}, {5, 0}) == 1.0);  // scale-invariant
  CHECK(cosine_similarity({1, 1}, {1, 0}) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_THROWS_AS(cosine_similarity({1, 0}, {1, 0, 0}), DimensionMismatch);
  CHECK_THROWS_AS(cosine_similarity({0, 0}, {1, 0}), ZeroVector);
  CHECK_THROWS_AS(cosine_similarity({1, 0}, {0, 0}), ZeroVector);
}

TEST_CASE("nli_label picks the argmax and breaks ties reproducibly") {
  CHECK(nli_label({90, 5, 5}, 0) == NliOutcome::Ent);
  CHECK(nli_label({5, 90, 5}, 0) == NliOutcome::Con);
  CHECK(nli_label({5, 5, 90}, 0) == NliOutcome::Neu);

  NliScores tied{50, 50, 0};
  NliOutcome first = nli_label(tied, 42);
  CHECK((first == NliOutcome::Ent || first == NliOutcome::Con));
  for (int i = 0; i < 10; ++i) CHECK(nli_label(tied, 42) == first);

  // across seeds both tied outcomes are reachable
  bool saw_ent = false, saw_con = false;
  for (uint64_t seed = 0; seed < 64; ++seed) {
    NliOutcome o = nli_label(tied, seed);
    saw_ent |= o == NliOutcome::Ent;
    saw_con |= o == NliOutcome::Con;
  }
  CHECK(saw_ent);
  CHECK(saw_con);
}

TEST_CASE("name helpers round-trip") {
  CHECK(nli_outcome_name(NliOutcome::Con) == "Con");
  CHECK(parse_chain_kind(chain_kind_name(ChainKind::Helpful)) == ChainKind::Helpful);
  CHECK(parse_chain_kind(chain_kind_name(ChainKind::Unhelpful)) == ChainKind::Unhelpful);
  CHECK_THROWS_AS(parse_chain_kind("helpful"), std::invalid_argument);
}

TEST_CASE("generation prompt substitutes premise, claim, and step words") {
  GenerationRequest req{"The web is torn.", "An insect escaped.", 2,
                        ChainKind::Helpful};
  std::string prompt = render_generation_prompt(req);
  CHECK(prompt.find("**Premise:** The web is torn.") != std::string::npos);
  CHECK(prompt.find("Claim: An insect escaped.") != std::string::npos);
  CHECK(prompt.find("Give two statements") != std::string::npos);
  CHECK(prompt.find("{premise}") == std::string::npos);
  CHECK(prompt.find("{count}") == std::string::npos);

  req.steps = 1;
  CHECK(render_generation_prompt(req).find("Give one statements") != std::string::npos);
  req.steps = 3;
  CHECK(render_generation_prompt(req).find("Give three statements") != std::string::npos);
  req.steps = 4;
  CHECK_THROWS_AS(render_generation_prompt(req), std::invalid_argument);
}

TEST_CASE("chain responses are split per the mandated format") {
  GenerationRequest helpful{"p", "c", 2, ChainKind::Helpful};
  GenerationRequest unhelpful{"p", "c", 2, ChainKind::Unhelpful};
  std::string raw =
      "Premise: p\n"
      "Claim: c\n"
      "Helpful: Prey was trapped. Prey escaped the web.\n"
      "Non-Helpful: Wind blew hard. The web sagged.\n";
  CHECK(parse_chain_response(raw, helpful) ==
        std::vector<std::string>{"Prey was trapped.", "Prey escaped the web."});
  CHECK(parse_chain_response(raw, unhelpful) ==
        std::vector<std::string>{"Wind blew hard.", "The web sagged."});

  // trailing whitespace and a missing final period are tolerated
  GenerationRequest one{"p", "c", 1, ChainKind::Helpful};
  CHECK(parse_chain_response("Helpful: Prey escaped\nNon-Helpful: Wind blew.\n", one) ==
        std::vector<std::string>{"Prey escaped."});

  // wrong sentence count, missing sections
  CHECK_THROWS_AS(parse_chain_response(raw, GenerationRequest{"p", "c", 3, ChainKind::Helpful}),
                  UnparseableResponse);
  CHECK_THROWS_AS(parse_chain_response("Helpful: A. B.\n", helpful), UnparseableResponse);
  CHECK_THROWS_AS(parse_chain_response("Non-Helpful: A. B.\n", helpful), UnparseableResponse);
  CHECK_THROWS_AS(parse_chain_response("free text without sections", helpful),
                  UnparseableResponse);
}

TEST_CASE("stub embeddings: fixture hits are exact, misses are hashed") {
  auto fixtures = std::make_shared<StubFixtures>(
      StubFixtures::load(std::string(ARGDECODE_DATA_DIR) + "/fixtures/examples.json"));
  StubEmbedProvider embed(fixtures);

  EmbeddingVector tiger_move = embed.embed("tiger is the agent performing action move.");
  CHECK(tiger_move == EmbeddingVector{1, 0, 0});
  // the engineered fixture pair hits the similarity value exactly
  CHECK(cosine_similarity(tiger_move,
                          embed.embed("tiger is the agent performing action walk.")) == 0.8483);

  EmbeddingVector a = embed.embed("no such text recorded");
  EmbeddingVector b = embed.embed("no such text recorded");
  EmbeddingVector c = embed.embed("another unknown text");
  CHECK(a.size() == 32);
  CHECK(a == b);       // deterministic
  CHECK(!(a == c));    // text-dependent
  double norm = 0.0;
  for (double x : a) norm += x * x;
  CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(embed.embed(""), std::invalid_argument);

  StubEmbedProvider bare(nullptr);
  CHECK(bare.embed("no such text recorded") == a);  // fixtures only add hits
}

TEST_CASE("stub nli: recorded pairs, neutral default otherwise") {
  auto fixtures = std::make_shared<StubFixtures>(
      StubFixtures::load(std::string(ARGDECODE_DATA_DIR) + "/fixtures/examples.json"));
  StubNliProvider nli(fixtures);
  NliScores hit = nli.score("tiger is the agent performing action sleep.",
                            "tiger is the agent performing action walk.");
  CHECK(hit.con == 85);
  NliScores miss = nli.score("anything", "else");
  CHECK(miss.ent == 0);
  CHECK(miss.con == 0);
  CHECK(miss.neu == 100);
}

TEST_CASE("stub gen and parse are replay-only") {
  auto fixtures = std::make_shared<StubFixtures>();
  fixtures->chains[{"p", "c", 2, "Helpful"}] = {"First step.", "Second step."};
  fixtures->parses["The boy wants to go."] =
      "(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-01 :ARG0 b))";

  StubGenProvider gen(fixtures);
  CHECK(gen.generate({"p", "c", 2, ChainKind::Helpful}) ==
        std::vector<std::string>{"First step.", "Second step."});
  CHECK_THROWS_AS(gen.generate({"p", "c", 2, ChainKind::Unhelpful}), ProviderUnavailable);
  CHECK_THROWS_AS(gen.generate({"p", "c", 1, ChainKind::Helpful}), ProviderUnavailable);

  StubParseProvider parse(fixtures);
  CHECK(parse.parse("The boy wants to go.").substr(0, 12) == "(w / want-01");
  CHECK_THROWS_AS(parse.parse("Unseen sentence."), ProviderUnavailable);
}

TEST_CASE("fixture files validate their own schema") {
  fs::path dir = fresh_dir("fixtures");
  CHECK_THROWS_AS(StubFixtures::load((dir / "absent.json").string()), FixtureError);
  CHECK_THROWS_AS(StubFixtures::load(write_temp(dir, "bad.json", "{not json")), FixtureError);
  CHECK_THROWS_AS(StubFixtures::load(write_temp(
                      dir, "empty_vec.json", R"({"embeddings": {"t": []}})")),
                  FixtureError);
  CHECK_THROWS_AS(StubFixtures::load(write_temp(
                      dir, "chain_len.json",
                      R"({"chains": [{"premise":"p","claim":"c","steps":2,
                          "kind":"Helpful","sentences":["Only one."]}]})")),
                  FixtureError);
  CHECK_THROWS_AS(StubFixtures::load(write_temp(
                      dir, "bad_kind.json",
                      R"({"chains": [{"premise":"p","claim":"c","steps":1,
                          "kind":"Sideways","sentences":["One."]}]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(StubFixtures::load(write_temp(
                      dir, "nli_range.json",
                      R"({"nli": [{"premise":"p","hypothesis":"h",
                          "ent":5,"con":140,"neu":5}]})")),
                  OutOfRangeScore);
  // scores use the [0,100] scale, so 1.0 is a legal (tiny) value
  StubFixtures ok = StubFixtures::load(write_temp(
      dir, "ok.json",
      R"({"nli": [{"premise":"p","hypothesis":"h","ent":1.0,"con":0,"neu":99}]})"));
  CHECK(ok.nli.at({"p", "h"}).ent == 1.0);
  fs::remove_all(dir);
}

TEST_CASE("fixture merge lets later files win") {
  StubFixtures base;
  base.embeddings["t"] = {1, 0};
  base.parses["s"] = "(a / alpha)";
  StubFixtures over;
  over.embeddings["t"] = {0, 1};
  over.embeddings["u"] = {1, 1};
  base.merge(over);
  CHECK(base.embeddings.at("t") == EmbeddingVector{0, 1});
  CHECK(base.embeddings.at("u") == EmbeddingVector{1, 1});
  CHECK(base.parses.at("s") == "(a / alpha)");
}

TEST_CASE("disk cache round-trips and survives reopening") {
  fs::path dir = fresh_dir("cache");
  {
    DiskCache cache(dir);
    CHECK(!cache.get("k1").has_value());
    cache.put("k1", "value one");
    cache.put("k2", std::string("binary\0data", 11));
    CHECK(cache.get("k1") == "value one");
    CHECK(cache.get("k2") == std::string("binary\0data", 11));
  }
  DiskCache reopened(dir);
  CHECK(reopened.get("k1") == "value one");
  fs::remove_all(dir);
}

TEST_CASE("corrupt cache entries read as misses") {
  fs::path dir = fresh_dir("cache-corrupt");
  DiskCache cache(dir);
  cache.put("key", "payload");
  REQUIRE(cache.get("key") == "payload");
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ofstream(entry.path(), std::ios::trunc) << "garbage";
  }
  CHECK(!cache.get("key").has_value());
  fs::remove_all(dir);
}

TEST_CASE("cached providers hit the backend once per distinct input") {
  fs::path dir = fresh_dir("cache-wrap");
  auto counting = std::make_shared<CountingEmbed>();
  auto cache = std::make_shared<DiskCache>(dir);
  CachedEmbedProvider cached(counting, cache);

  EmbeddingVector first = cached.embed("some text");
  CHECK(counting->calls == 1);
  CHECK(cached.embed("some text") == first);
  CHECK(counting->calls == 1);  // served from disk
  cached.embed("other text");
  CHECK(counting->calls == 2);

  // a fresh wrapper over the same directory still hits the cache
  CachedEmbedProvider again(counting, std::make_shared<DiskCache>(dir));
  CHECK(again.embed("some text") == first);
  CHECK(counting->calls == 2);

  // a null cache disables caching transparently
  CachedEmbedProvider uncached(counting, nullptr);
  uncached.embed("some text");
  CHECK(counting->calls == 3);
  fs::remove_all(dir);
}

TEST_CASE("cache keys separate providers, operations, and inputs") {
  std::string a = DiskCache::make_key("embed", "embed", "text");
  CHECK(DiskCache::make_key("embed", "embed", "text") == a);
  CHECK(DiskCache::make_key("nli", "embed", "text") != a);
  CHECK(DiskCache::make_key("embed", "score", "text") != a);
  CHECK(DiskCache::make_key("embed", "embed", "other") != a);
}

TEST_CASE("http embed provider speaks the wire protocol") {
  TestServer server;
  std::string seen_body;
  server.svr.Post("/embed", [&](const httplib::Request& req, httplib::Response& res) {
    seen_body = req.body;
    res.set_content(R"({"embedding": [0.5, -0.25, 1.0]})", "application/json");
  });
  server.start();

  HttpEmbedProvider embed(server.url("/embed"), fast_options());
  CHECK(embed.embed("hello") == EmbeddingVector{0.5, -0.25, 1.0});
  CHECK(seen_body.find("\"text\"") != std::string::npos);
  CHECK(seen_body.find("hello") != std::string::npos);
}

TEST_CASE("http nli provider scales wire scores to [0,100]") {
  TestServer server;
  server.svr.Post("/nli", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"ent": 0.05, "con": 0.85, "neu": 0.10})", "application/json");
  });
  server.svr.Post("/high", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"ent": 1.5, "con": 0.1, "neu": 0.1})", "application/json");
  });
  server.svr.Post("/missing", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"ent": 0.1, "neu": 0.1})", "application/json");
  });
  server.start();

  HttpNliProvider nli(server.url("/nli"), fast_options());
  NliScores s = nli.score("p", "h");
  CHECK(s.ent == 5.0);
  CHECK(s.con == 85.0);
  CHECK(s.neu == 10.0);

  HttpNliProvider high(server.url("/high"), fast_options());
  CHECK_THROWS_AS(high.score("p", "h"), OutOfRangeScore);
  HttpNliProvider missing(server.url("/missing"), fast_options());
  CHECK_THROWS_AS(missing.score("p", "h"), MalformedResponse);
}

TEST_CASE("http gen provider sends the rendered prompt and parses the reply") {
  TestServer server;
  std::string seen_body;
  server.svr.Post("/gen", [&](const httplib::Request& req, httplib::Response& res) {
    seen_body = req.body;
    res.set_content(
        R"({"text": "Helpful: Prey was trapped. Prey escaped.\nNon-Helpful: Wind blew. It rained.\n"})",
        "application/json");
  });
  server.start();

  HttpGenProvider gen(server.url("/gen"), fast_options());
  GenerationRequest req{"The web is torn.", "An insect escaped.", 2, ChainKind::Unhelpful};
  CHECK(gen.generate(req) == std::vector<std::string>{"Wind blew.", "It rained."});
  CHECK(seen_body.find("\"steps\":2") != std::string::npos);
  CHECK(seen_body.find("\"kind\":\"Unhelpful\"") != std::string::npos);
  CHECK(seen_body.find("Generate two distinct chains") != std::string::npos);
}

TEST_CASE("http parse provider returns penman text") {
  TestServer server;
  server.svr.Post("/parse", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"json({"penman": "(b / boy)"})json", "application/json");
  });
  server.start();
  HttpParseProvider parse(server.url("/parse"), fast_options());
  CHECK(parse.parse("A boy.") == "(b / boy)");
}

TEST_CASE("http providers retry transient failures, then give up") {
  TestServer server;
  std::atomic<int> hits{0};
  server.svr.Post("/flaky", [&](const httplib::Request&, httplib::Response& res) {
    if (++hits < 3) {
      res.status = 500;
      return;
    }
    res.set_content(R"({"embedding": [1.0]})", "application/json");
  });
  std::atomic<int> dead_hits{0};
  server.svr.Post("/dead", [&](const httplib::Request&, httplib::Response& res) {
    ++dead_hits;
    res.status = 503;
  });
  server.start();

  HttpEmbedProvider flaky(server.url("/flaky"), fast_options());
  CHECK(flaky.embed("x") == EmbeddingVector{1.0});
  CHECK(hits == 3);

  HttpEmbedProvider dead(server.url("/dead"), fast_options());
  CHECK_THROWS_AS(dead.embed("x"), ProviderUnavailable);
  CHECK(dead_hits == 3);  // default attempt budget

  HttpEmbedProvider refused("http://127.0.0.1:1/none", fast_options());
  CHECK_THROWS_AS(refused.embed("x"), ProviderUnavailable);
}

TEST_CASE("http providers reject non-json and malformed bodies") {
  TestServer server;
  server.svr.Post("/text", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("plain text", "text/plain");
  });
  server.svr.Post("/wrong", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"vector": [1.0]})", "application/json");
  });
  server.start();

  HttpEmbedProvider text(server.url("/text"), fast_options());
  CHECK_THROWS_AS(text.embed("x"), MalformedResponse);
  HttpEmbedProvider wrong(server.url("/wrong"), fast_options());
  CHECK_THROWS_AS(wrong.embed("x"), MalformedResponse);
}

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace argdecode {

using EmbeddingVector = std::vector<double>;

/// Base for failures talking to a neural backend.
struct ProviderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Endpoint unreachable / kept failing after retries.
struct ProviderUnavailable : ProviderError {
  using ProviderError::ProviderError;
};
/// Response did not match the wire schema.
struct MalformedResponse : ProviderError {
  using ProviderError::ProviderError;
};
/// NLI score outside the legal range.
struct OutOfRangeScore : MalformedResponse {
  using MalformedResponse::MalformedResponse;
};
/// Generation output deviates from the mandated completion format.
struct UnparseableResponse : ProviderError {
  using ProviderError::ProviderError;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ZeroVector : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Entailment / contradiction / neutral scores, each in [0,100].
struct NliScores {
  double ent = 0.0;
  double con = 0.0;
  double neu = 0.0;
};

enum class NliOutcome { Ent, Con, Neu };

std::string nli_outcome_name(NliOutcome outcome);

enum class ChainKind { Helpful, Unhelpful };

std::string chain_kind_name(ChainKind kind);
ChainKind parse_chain_kind(const std::string& name);

struct GenerationRequest {
  std::string premise;
  std::string claim;
  int steps = 1;  // in {1,2,3}
  ChainKind kind = ChainKind::Helpful;
};

/// Dot product over the product of L2 norms. Throws DimensionMismatch or
/// ZeroVector on bad inputs.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

/// Argmax over {Ent, Con, Neu}; exact ties are broken by a pseudo-random
/// choice derived from (scores, seed) only, so the result is a pure function.
NliOutcome nli_label(const NliScores& scores, uint64_t seed);

/// The instruction template sent to the generation backend, with
/// {premise}/{claim} substituted and the step count spelled out.
std::string render_generation_prompt(const GenerationRequest& req);

/// Extracts the requested chain from a raw completion that follows the
/// mandated "Helpful:" / "Non-Helpful:" output format, splitting the chain on
/// full stops. Returns exactly req.steps sentences (each re-terminated with
/// "."); throws UnparseableResponse otherwise.
std::vector<std::string> parse_chain_response(const std::string& raw,
                                              const GenerationRequest& req);

// Provider contracts. Implementations must be deterministic per input
// (caching relies on it) and safe for concurrent calls.

class EmbedProvider {
 public:
  virtual ~EmbedProvider() = default;
  virtual std::string id() const = 0;
  virtual EmbeddingVector embed(const std::string& text) = 0;
};

class NliProvider {
 public:
  virtual ~NliProvider() = default;
  virtual std::string id() const = 0;
  virtual NliScores score(const std::string& premise,
                          const std::string& hypothesis) = 0;
};

class GenProvider {
 public:
  virtual ~GenProvider() = default;
  virtual std::string id() const = 0;
  virtual std::vector<std::string> generate(const GenerationRequest& req) = 0;
};

/// Text → PENMAN. Used only when an instance arrives without bundled graphs.
class AmrParseProvider {
 public:
  virtual ~AmrParseProvider() = default;
  virtual std::string id() const = 0;
  virtual std::string parse(const std::string& sentence) = 0;
};

}  // namespace argdecode

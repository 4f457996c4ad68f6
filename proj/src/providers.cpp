#include "argdecode/providers.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "argdecode/util.hpp"

namespace argdecode {

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("cosine_similarity: dimensions " +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0)
    throw ZeroVector("cosine_similarity: zero-norm vector");
  // rounding can push identical vectors a hair past 1
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::string nli_outcome_name(NliOutcome outcome) {
  switch (outcome) {
    case NliOutcome::Ent:
      return "Ent";
    case NliOutcome::Con:
      return "Con";
    case NliOutcome::Neu:
      return "Neu";
  }
  throw std::logic_error("unreachable outcome");
}

std::string chain_kind_name(ChainKind kind) {
  return kind == ChainKind::Helpful ? "Helpful" : "Unhelpful";
}

ChainKind parse_chain_kind(const std::string& name) {
  if (name == "Helpful") return ChainKind::Helpful;
  if (name == "Unhelpful") return ChainKind::Unhelpful;
  throw std::invalid_argument("unknown chain kind: " + name);
}

NliOutcome nli_label(const NliScores& scores, uint64_t seed) {
  const double values[3] = {scores.ent, scores.con, scores.neu};
  const NliOutcome outcomes[3] = {NliOutcome::Ent, NliOutcome::Con,
                                  NliOutcome::Neu};
  double best = values[0];
  for (double v : values) best = std::max(best, v);
  std::vector<NliOutcome> tied;
  for (int i = 0; i < 3; ++i)
    if (values[i] == best) tied.push_back(outcomes[i]);
  if (tied.size() == 1) return tied[0];
  // Tie: derive the choice from the scores and the run seed only, so the
  // label is reproducible across runs and thread schedules.
  uint64_t h = seed;
  for (double v : values) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    h = fnv1a64(std::string_view(reinterpret_cast<const char*>(&bits),
                                 sizeof bits),
                h);
  }
  std::mt19937_64 rng(h);
  std::uniform_int_distribution<size_t> pick(0, tied.size() - 1);
  return tied[pick(rng)];
}

namespace {

const char* kPromptTemplate =
    "Generate two distinct chains of reasoning based on the premise and claim "
    "provided below. Follow these instructions carefully.\n"
    "\n"
    "**Premise:** {premise}\n"
    "**Claim:** {claim}\n"
    "\n"
    "**Instructions:**\n"
    "- **Helpful Chain:** Give {count} statements that represent the steps of "
    "reasoning starting from the premises and finishing with the claim (split "
    "by full stop), avoid using pronoun and repeating claim (each statement "
    "under 10 words)\n"
    "\n"
    "- **Non-Helpful Chain:** Give {count} statements that represent the "
    "steps of reasoning starting from the premises and finishing with the "
    "neutral or contradictory of claim (split by full stop), avoid using "
    "pronoun and repeating claim (each statement under 10 words)\n"
    "\n"
    "**Output Format:**\n"
    "Your output must exactly match the following structure. Do not add any "
    "extra text, headers, or explanations.\n"
    "\n"
    "Premise: {premise}\n"
    "Claim: {claim}\n"
    "Helpful: [insert helpful reasoning chain here]\n"
    "Non-Helpful: [insert non-helpful reasoning chain here]\n"
    "\n"
    "Replace the bracketed parts with your responses, ensuring each chain is "
    "a continuous sentence or phrase.\n";

void replace_all(std::string& text, const std::string& from,
                 const std::string& to) {
  size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
}

std::string step_word(int steps) {
  switch (steps) {
    case 1:
      return "one";
    case 2:
      return "two";
    case 3:
      return "three";
    default:
      throw std::invalid_argument("steps must be 1, 2, or 3; got " +
                                  std::to_string(steps));
  }
}

}  // namespace

std::string render_generation_prompt(const GenerationRequest& req) {
  std::string prompt = kPromptTemplate;
  replace_all(prompt, "{count}", step_word(req.steps));
  replace_all(prompt, "{premise}", req.premise);
  replace_all(prompt, "{claim}", req.claim);
  return prompt;
}

std::vector<std::string> parse_chain_response(const std::string& raw,
                                              const GenerationRequest& req) {
  step_word(req.steps);  // validate
  std::string helpful, unhelpful;
  bool saw_helpful = false, saw_unhelpful = false;
  std::istringstream lines(raw);
  std::string line;
  while (std::getline(lines, line)) {
    std::string t = trim(line);
    // "Non-Helpful:" first — "Helpful:" is a substring of it.
    if (t.rfind("Non-Helpful:", 0) == 0) {
      unhelpful = trim(t.substr(12));
      saw_unhelpful = true;
    } else if (t.rfind("Helpful:", 0) == 0) {
      helpful = trim(t.substr(8));
      saw_helpful = true;
    }
  }
  if (!saw_helpful || !saw_unhelpful) {
    throw UnparseableResponse(
        "completion is missing a Helpful: or Non-Helpful: line");
  }
  const std::string& chain =
      req.kind == ChainKind::Helpful ? helpful : unhelpful;
  std::vector<std::string> sentences;
  for (const std::string& piece : split(chain, '.')) {
    std::string s = trim(piece);
    if (!s.empty()) sentences.push_back(s + ".");
  }
  if (static_cast<int>(sentences.size()) != req.steps) {
    throw UnparseableResponse(
        chain_kind_name(req.kind) + " chain has " +
        std::to_string(sentences.size()) + " sentences, expected " +
        std::to_string(req.steps));
  }
  return sentences;
}

}  // namespace argdecode

#include "argdecode/dataset.hpp"

#include <fstream>
#include <sstream>

#include "argdecode/util.hpp"
#include "json.hpp"

namespace argdecode {

using nlohmann::json;

std::string step_type_name(StepType t) {
  switch (t) {
    case StepType::None:
      return "none";
    case StepType::Original:
      return "original";
    case StepType::One:
      return "1";
    case StepType::Two:
      return "2";
    case StepType::Three:
      return "3";
  }
  throw std::logic_error("unreachable step type");
}

StepType parse_step_type(const std::string& name) {
  if (name == "none") return StepType::None;
  if (name == "original") return StepType::Original;
  if (name == "1") return StepType::One;
  if (name == "2") return StepType::Two;
  if (name == "3") return StepType::Three;
  throw std::invalid_argument("unknown step type: " + name +
                              " (expected none|original|1|2|3)");
}

int step_count(StepType t) {
  switch (t) {
    case StepType::One:
      return 1;
    case StepType::Two:
      return 2;
    case StepType::Three:
      return 3;
    default:
      return 0;
  }
}

namespace {

bool check_chain_map(const DatasetItem& item,
                     const std::map<int, std::vector<std::string>>& chains,
                     const char* side, std::vector<SchemaViolation>& out) {
  for (const auto& [steps, sentences] : chains) {
    if (steps < 1 || steps > 3) {
      out.push_back({item.id, std::string(side) + " step count " +
                                  std::to_string(steps) + " outside 1..3"});
      return false;
    }
    if (static_cast<int>(sentences.size()) != steps) {
      out.push_back({item.id, std::string(side) + "[" + std::to_string(steps) +
                                  "] has " + std::to_string(sentences.size()) +
                                  " sentences"});
      return false;
    }
    for (const std::string& s : sentences)
      if (trim(s).empty()) {
        out.push_back({item.id, std::string(side) + " contains an empty sentence"});
        return false;
      }
  }
  return true;
}

// Shared final validation; returns false (and records why) on rejects.
bool validate_item(const DatasetItem& item, std::vector<SchemaViolation>& out) {
  if (trim(item.premise).empty()) {
    out.push_back({item.id, "missing premise"});
    return false;
  }
  if (trim(item.claim).empty()) {
    out.push_back({item.id, "missing claim"});
    return false;
  }
  return check_chain_map(item, item.helpful, "helpful", out) &&
         check_chain_map(item, item.unhelpful, "unhelpful", out);
}

LoadResult load_arct(std::istream& in) {
  LoadResult result;
  std::string header;
  if (!std::getline(in, header)) throw DataError("arct: empty file");
  std::vector<std::string> columns = split(trim(header), '\t');
  auto column = [&](const std::string& name) {
    for (size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw DataError("arct: header lacks column \"" + name + "\"");
  };
  size_t c_id = column("#id"), c_w0 = column("warrant0"),
         c_w1 = column("warrant1"), c_label = column("correctLabelW0orW1"),
         c_reason = column("reason"), c_claim = column("claim");
  std::string line;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split(line, '\t');
    std::string fallback_id = "line " + std::to_string(lineno);
    if (fields.size() < columns.size()) {
      result.violations.push_back({fallback_id, "arct: too few columns"});
      continue;
    }
    DatasetItem item;
    item.source = "arct";
    item.id = trim(fields[c_id]).empty() ? fallback_id : trim(fields[c_id]);
    item.premise = trim(fields[c_reason]);
    item.claim = trim(fields[c_claim]);
    std::string label = trim(fields[c_label]);
    if (label != "0" && label != "1") {
      result.violations.push_back({item.id, "arct: bad correctLabelW0orW1 \"" +
                                                label + "\""});
      continue;
    }
    std::string w0 = trim(fields[c_w0]), w1 = trim(fields[c_w1]);
    item.original_helpful = label == "0" ? w0 : w1;
    item.original_unhelpful = label == "0" ? w1 : w0;
    if (validate_item(item, result.violations))
      result.items.push_back(std::move(item));
  }
  return result;
}

LoadResult load_anli(std::istream& in) {
  LoadResult result;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::string fallback_id = "line " + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      result.violations.push_back({fallback_id, std::string("anli: ") + e.what()});
      continue;
    }
    DatasetItem item;
    item.source = "anli";
    item.id = j.value("story_id", fallback_id);
    item.premise = trim(j.value("obs1", ""));
    item.claim = trim(j.value("obs2", ""));
    std::string label;
    if (j.contains("label")) {
      label = j.at("label").is_number()
                  ? std::to_string(j.at("label").get<int>())
                  : j.at("label").get<std::string>();
    }
    if (label != "1" && label != "2") {
      result.violations.push_back({item.id, "anli: bad label \"" + label + "\""});
      continue;
    }
    std::string h1 = trim(j.value("hyp1", "")), h2 = trim(j.value("hyp2", ""));
    item.original_helpful = label == "1" ? h1 : h2;
    item.original_unhelpful = label == "1" ? h2 : h1;
    if (validate_item(item, result.violations))
      result.items.push_back(std::move(item));
  }
  return result;
}

LoadResult load_native(std::istream& in) {
  LoadResult result;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::string fallback_id = "line " + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      result.violations.push_back({fallback_id, e.what()});
      continue;
    }
    DatasetItem item;
    item.source = "jsonl";
    item.id = j.value("id", fallback_id);
    try {
      if (j.contains("schema") && j.at("schema").get<int>() != 1) {
        result.violations.push_back(
            {item.id, "unsupported schema version " + j.at("schema").dump()});
        continue;
      }
      item.premise = j.value("premise", "");
      item.claim = j.value("claim", "");
      for (const char* side : {"helpful", "unhelpful"}) {
        if (!j.contains(side)) continue;
        auto& target = side == std::string("helpful") ? item.helpful
                                                      : item.unhelpful;
        for (const auto& [key, arr] : j.at(side).items())
          target[std::stoi(key)] = arr.get<std::vector<std::string>>();
      }
      if (j.contains("helpful_original"))
        item.original_helpful = j.at("helpful_original").get<std::string>();
      if (j.contains("unhelpful_original"))
        item.original_unhelpful = j.at("unhelpful_original").get<std::string>();
      if (j.contains("amr"))
        for (const auto& [sentence, penman] : j.at("amr").items())
          item.amr[sentence] = penman.get<std::string>();
      item.generation_failed = j.value("generation_failed", false);
    } catch (const std::exception& e) {
      result.violations.push_back({item.id, e.what()});
      continue;
    }
    if (validate_item(item, result.violations))
      result.items.push_back(std::move(item));
  }
  return result;
}

}  // namespace

LoadResult load_dataset(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset: " + path);
  if (format == "arct") return load_arct(in);
  if (format == "anli") return load_anli(in);
  if (format == "jsonl") return load_native(in);
  throw DataError("unknown dataset format: " + format +
                  " (expected arct|anli|jsonl)");
}

std::string write_jsonl(const std::vector<DatasetItem>& items) {
  std::ostringstream out;
  for (const DatasetItem& item : items) {
    json j;
    j["id"] = item.id;
    j["schema"] = 1;
    j["premise"] = item.premise;
    j["claim"] = item.claim;
    json helpful = json::object(), unhelpful = json::object();
    for (const auto& [steps, sentences] : item.helpful)
      helpful[std::to_string(steps)] = sentences;
    for (const auto& [steps, sentences] : item.unhelpful)
      unhelpful[std::to_string(steps)] = sentences;
    j["helpful"] = helpful;
    j["unhelpful"] = unhelpful;
    if (item.original_helpful) j["helpful_original"] = *item.original_helpful;
    if (item.original_unhelpful)
      j["unhelpful_original"] = *item.original_unhelpful;
    json amr = json::object();
    for (const auto& [sentence, penman] : item.amr) amr[sentence] = penman;
    j["amr"] = amr;
    if (item.generation_failed) j["generation_failed"] = true;
    out << j.dump() << '\n';
  }
  return out.str();
}

std::vector<BinaryInstance> binarize(const DatasetItem& item, StepType t) {
  BinaryInstance base;
  base.premise = item.premise;
  base.claim = item.claim;
  base.amr = item.amr;

  if (t == StepType::None) {
    BinaryInstance inst = base;
    inst.id = item.id + "#none";
    inst.gold_entailment = true;
    return {inst};
  }

  std::vector<std::string> helpful, unhelpful;
  if (t == StepType::Original) {
    if (!item.original_helpful || !item.original_unhelpful)
      throw MissingSteps("item " + item.id +
                         " has no original implicit premises");
    helpful = {*item.original_helpful};
    unhelpful = {*item.original_unhelpful};
  } else {
    int k = step_count(t);
    auto h = item.helpful.find(k), u = item.unhelpful.find(k);
    if (h == item.helpful.end() || u == item.unhelpful.end())
      throw MissingSteps("item " + item.id + " has no " + std::to_string(k) +
                         "-step chains; run augment first");
    helpful = h->second;
    unhelpful = u->second;
  }

  BinaryInstance pos = base, neg = base;
  pos.id = item.id + "#helpful";
  pos.implicit = std::move(helpful);
  pos.gold_entailment = true;
  neg.id = item.id + "#unhelpful";
  neg.implicit = std::move(unhelpful);
  neg.gold_entailment = false;
  return {pos, neg};
}

std::vector<SchemaViolation> augment(std::vector<DatasetItem>& items,
                                     GenProvider& gen, int steps) {
  std::vector<SchemaViolation> failures;
  for (DatasetItem& item : items) {
    for (ChainKind kind : {ChainKind::Helpful, ChainKind::Unhelpful}) {
      auto& target = kind == ChainKind::Helpful ? item.helpful : item.unhelpful;
      if (target.count(steps)) continue;
      try {
        target[steps] = gen.generate({item.premise, item.claim, steps, kind});
      } catch (const ProviderError& e) {
        item.generation_failed = true;
        failures.push_back({item.id, e.what()});
        target.erase(steps);
      }
    }
  }
  return failures;
}

}  // namespace argdecode

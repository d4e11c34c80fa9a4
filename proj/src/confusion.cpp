#include "sdpfeas/confusion.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sdpfeas {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string side_message(AssumptionViolation::Side side) {
  std::string which;
  switch (side) {
    case AssumptionViolation::Side::FalseNegatives: which = "fn = 0"; break;
    case AssumptionViolation::Side::TrueNegatives: which = "tn = 0"; break;
    case AssumptionViolation::Side::Both: which = "fn = 0 and tn = 0"; break;
  }
  return "false omission rate requires " +
         std::string(AssumptionViolation::kRequirement) + " (" + which + ")";
}

}  // namespace

std::string FailureProbability::fraction() const {
  return std::to_string(numerator) + "/" + std::to_string(denominator);
}

AssumptionViolation::AssumptionViolation(Side side)
    : Error(ErrorKind::AssumptionViolation, side_message(side)), side_(side) {}

LabelVocabulary::LabelVocabulary(const std::map<std::string, Label>& aliases) {
  for (const auto& [word, label] : aliases) add_alias(word, label);
}

void LabelVocabulary::add_alias(const std::string& word, Label label) {
  aliases_[lowercase(trim(word))] = label;
}

bool LabelVocabulary::lookup(const std::string& word, Label& out) const {
  const std::string key = lowercase(trim(word));
  if (key == "defective") {
    out = Label::Defective;
    return true;
  }
  if (key == "clean") {
    out = Label::Clean;
    return true;
  }
  if (auto it = aliases_.find(key); it != aliases_.end()) {
    out = it->second;
    return true;
  }
  return false;
}

ConfusionMatrix confusion_from_counts(std::int64_t tp, std::int64_t fn,
                                      std::int64_t fp, std::int64_t tn) {
  if (tp < 0 || fn < 0 || fp < 0 || tn < 0) {
    throw InvalidInput("confusion counts must be non-negative");
  }
  return ConfusionMatrix{static_cast<std::uint64_t>(tp), static_cast<std::uint64_t>(fn),
                         static_cast<std::uint64_t>(fp), static_cast<std::uint64_t>(tn)};
}

ConfusionMatrix confusion_from_records(std::span<const PredictionRecord> records) {
  ConfusionMatrix m;
  for (const auto& r : records) {
    if (r.actual == Label::Defective) {
      (r.predicted == Label::Defective ? m.tp : m.fn) += 1;
    } else {
      (r.predicted == Label::Defective ? m.fp : m.tn) += 1;
    }
  }
  return m;
}

std::vector<PredictionRecord> parse_records_csv(std::istream& in,
                                                const LabelVocabulary& vocabulary) {
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    have_header = true;
    break;
  }
  if (!have_header) throw ParseError(0, "missing header `actual,predicted`");
  {
    const std::string header = lowercase(trim(line));
    std::string a, b;
    std::istringstream hs(header);
    std::getline(hs, a, ',');
    std::getline(hs, b);
    if (trim(a) != "actual" || trim(b) != "predicted") {
      throw ParseError(0, "expected header `actual,predicted`, got `" + trim(line) + "`");
    }
  }

  std::vector<PredictionRecord> records;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ParseError(index, "expected exactly two fields");
    }
    PredictionRecord r{};
    const std::string actual = line.substr(0, comma);
    const std::string predicted = line.substr(comma + 1);
    if (!vocabulary.lookup(actual, r.actual)) {
      throw ParseError(index, "unknown label `" + trim(actual) + "`");
    }
    if (!vocabulary.lookup(predicted, r.predicted)) {
      throw ParseError(index, "unknown label `" + trim(predicted) + "`");
    }
    records.push_back(r);
    ++index;
  }
  return records;
}

FailureProbability false_omission_rate(const ConfusionMatrix& m) {
  if (m.fn == 0 && m.tn == 0) throw AssumptionViolation(AssumptionViolation::Side::Both);
  if (m.fn == 0) throw AssumptionViolation(AssumptionViolation::Side::FalseNegatives);
  if (m.tn == 0) throw AssumptionViolation(AssumptionViolation::Side::TrueNegatives);
  const std::uint64_t denominator = m.fn + m.tn;
  if (denominator < m.fn) throw InvalidInput("fn + tn overflows 64 bits");
  FailureProbability out;
  out.numerator = m.fn;
  out.denominator = denominator;
  out.p = static_cast<double>(m.fn) / static_cast<double>(denominator);
  // Rounding can land exactly on 1 for astronomically large counts.
  if (!(out.p > 0.0 && out.p < 1.0)) {
    throw InvalidInput("false omission rate rounds to a boundary value");
  }
  return out;
}

}  // namespace sdpfeas

#pragma once

// Classifier evaluation data and the failure probability derived from it.
//
// Cell convention: "positive" means defective. A defective module that the
// classifier labels clean is a false negative, the only kind of mistake that
// ships a dormant defect.

#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sdpfeas/errors.hpp"

namespace sdpfeas {

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fn = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Per-module misclassification probability, always strictly inside (0, 1).
// The exact ratio numerator/denominator is kept for audit output.
struct FailureProbability {
  double p = 0.0;
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;

  std::string fraction() const;
};

// Raised when the evaluation data has no false negatives or no true negatives,
// so the false omission rate would sit on the boundary {0, 1}.
class AssumptionViolation : public Error {
 public:
  enum class Side { FalseNegatives, TrueNegatives, Both };

  explicit AssumptionViolation(Side side);
  Side side() const noexcept { return side_; }

  static constexpr const char* kRequirement =
      "at least one false negative and one true negative";

 private:
  Side side_;
};

enum class Label { Defective, Clean };

struct PredictionRecord {
  Label actual;
  Label predicted;
};

// Case-insensitive label vocabulary. The canonical words "defective" and
// "clean" are always recognised; aliases ("1" -> defective, "bug" -> ...)
// may be added on top.
class LabelVocabulary {
 public:
  LabelVocabulary() = default;
  explicit LabelVocabulary(const std::map<std::string, Label>& aliases);

  void add_alias(const std::string& word, Label label);
  // Returns false when `word` is not a known label.
  bool lookup(const std::string& word, Label& out) const;

 private:
  std::map<std::string, Label> aliases_;
};

ConfusionMatrix confusion_from_counts(std::int64_t tp, std::int64_t fn,
                                      std::int64_t fp, std::int64_t tn);

ConfusionMatrix confusion_from_records(std::span<const PredictionRecord> records);

// Parses the `actual,predicted` CSV format. The header line is required.
// Blank lines are skipped; record indices in errors are zero-based and count
// data rows only.
std::vector<PredictionRecord> parse_records_csv(
    std::istream& in, const LabelVocabulary& vocabulary = {});

// fn / (fn + tn). Throws AssumptionViolation unless fn >= 1 and tn >= 1.
FailureProbability false_omission_rate(const ConfusionMatrix& m);

}  // namespace sdpfeas

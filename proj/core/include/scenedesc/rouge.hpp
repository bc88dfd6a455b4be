#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scenedesc/errors.hpp"

namespace scenedesc {

struct RougeScore {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;

  static RougeScore from_counts(double overlap, double ref_total,
                                double cand_total);
};

// ROUGE-N: clipped multiset n-gram overlap. Empty gram sets give zeros.
// Throws InvalidNError for n < 1.
RougeScore rouge_n(std::string_view candidate, std::string_view reference,
                   int n);

// ROUGE-S / ROUGE-SU: counting units are skip-bigrams (ordered token pairs
// (i, j) with i < j and j - i <= max_skip + 1), plus unigrams in the SU
// variant.
RougeScore rouge_su(std::string_view candidate, std::string_view reference,
                    int max_skip, bool include_unigrams = true);

struct Metric {
  enum class Kind { ngram, skip, skip_with_unigrams };
  Kind kind = Kind::ngram;
  int param = 1;  // n for ngram, max_skip otherwise

  std::string name() const;
  RougeScore score(std::string_view candidate, std::string_view reference) const;

  // "rouge1", "rouge2", "rougesu4", "rouges4", ... Throws Error on
  // unknown names.
  static Metric parse(std::string_view name);
  static std::vector<Metric> parse_list(std::string_view comma_separated);
};

// Per-metric arithmetic mean over candidate/reference pairs.
// Throws EmptyCorpusError on an empty list.
std::vector<std::pair<Metric, RougeScore>> evaluate_corpus(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const std::vector<Metric>& metrics);

// Multi-reference scoring: the reference with the best F is reported.
RougeScore score_multi(std::string_view candidate,
                       const std::vector<std::string>& references,
                       const Metric& metric);

}  // namespace scenedesc

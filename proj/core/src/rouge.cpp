#include "scenedesc/rouge.hpp"

#include <algorithm>
#include <map>

#include "scenedesc/tokenize.hpp"

namespace scenedesc {

namespace {

// Grams are keyed by joining tokens with an unprintable separator.
constexpr char kSep = '\x1e';

std::map<std::string, long> ngram_counts(const std::vector<std::string>& tokens,
                                         int n) {
  std::map<std::string, long> counts;
  if (static_cast<std::size_t>(n) > tokens.size()) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k > 0) key += kSep;
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::map<std::string, long> skip_bigram_counts(
    const std::vector<std::string>& tokens, int max_skip) {
  std::map<std::string, long> counts;
  std::size_t window = static_cast<std::size_t>(max_skip) + 1;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (std::size_t j = i + 1; j < tokens.size() && j - i <= window; ++j) {
      ++counts[tokens[i] + kSep + tokens[j]];
    }
  }
  return counts;
}

long clipped_overlap(const std::map<std::string, long>& a,
                     const std::map<std::string, long>& b) {
  long overlap = 0;
  for (const auto& [key, count] : a) {
    auto it = b.find(key);
    if (it != b.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

long total(const std::map<std::string, long>& counts) {
  long sum = 0;
  for (const auto& [key, count] : counts) sum += count;
  return sum;
}

}  // namespace

RougeScore RougeScore::from_counts(double overlap, double ref_total,
                                   double cand_total) {
  RougeScore score;
  score.recall = ref_total > 0.0 ? overlap / ref_total : 0.0;
  score.precision = cand_total > 0.0 ? overlap / cand_total : 0.0;
  double rp = score.recall + score.precision;
  score.f1 = rp > 0.0 ? 2.0 * score.recall * score.precision / rp : 0.0;
  return score;
}

RougeScore rouge_n(std::string_view candidate, std::string_view reference,
                   int n) {
  if (n < 1) throw InvalidNError("n must be >= 1");
  auto cand = ngram_counts(tokenize(candidate), n);
  auto ref = ngram_counts(tokenize(reference), n);
  return RougeScore::from_counts(
      static_cast<double>(clipped_overlap(cand, ref)),
      static_cast<double>(total(ref)), static_cast<double>(total(cand)));
}

RougeScore rouge_su(std::string_view candidate, std::string_view reference,
                    int max_skip, bool include_unigrams) {
  std::vector<std::string> cand_tokens = tokenize(candidate);
  std::vector<std::string> ref_tokens = tokenize(reference);

  auto cand_pairs = skip_bigram_counts(cand_tokens, max_skip);
  auto ref_pairs = skip_bigram_counts(ref_tokens, max_skip);
  long overlap = clipped_overlap(cand_pairs, ref_pairs);
  long cand_total = total(cand_pairs);
  long ref_total = total(ref_pairs);

  if (include_unigrams) {
    auto cand_uni = ngram_counts(cand_tokens, 1);
    auto ref_uni = ngram_counts(ref_tokens, 1);
    overlap += clipped_overlap(cand_uni, ref_uni);
    cand_total += total(cand_uni);
    ref_total += total(ref_uni);
  }
  return RougeScore::from_counts(static_cast<double>(overlap),
                                 static_cast<double>(ref_total),
                                 static_cast<double>(cand_total));
}

std::string Metric::name() const {
  switch (kind) {
    case Kind::ngram:
      return "rouge" + std::to_string(param);
    case Kind::skip:
      return "rouges" + std::to_string(param);
    case Kind::skip_with_unigrams:
      return "rougesu" + std::to_string(param);
  }
  return "rouge?";
}

RougeScore Metric::score(std::string_view candidate,
                         std::string_view reference) const {
  switch (kind) {
    case Kind::ngram:
      return rouge_n(candidate, reference, param);
    case Kind::skip:
      return rouge_su(candidate, reference, param, false);
    case Kind::skip_with_unigrams:
      return rouge_su(candidate, reference, param, true);
  }
  return {};
}

Metric Metric::parse(std::string_view name) {
  std::string lower = to_lower(name);
  if (lower.rfind("rouge", 0) != 0) {
    throw Error("unknown metric '" + lower + "'");
  }
  std::string rest = lower.substr(5);
  Metric metric;
  if (rest.rfind("su", 0) == 0) {
    metric.kind = Kind::skip_with_unigrams;
    rest = rest.substr(2);
  } else if (rest.rfind("s", 0) == 0) {
    metric.kind = Kind::skip;
    rest = rest.substr(1);
  } else {
    metric.kind = Kind::ngram;
  }
  if (rest.empty() ||
      !std::all_of(rest.begin(), rest.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error("unknown metric '" + lower + "'");
  }
  metric.param = std::stoi(rest);
  if (metric.kind == Kind::ngram && metric.param < 1) {
    throw Error("metric '" + lower + "': n must be >= 1");
  }
  return metric;
}

std::vector<Metric> Metric::parse_list(std::string_view comma_separated) {
  std::vector<Metric> metrics;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    std::size_t comma = comma_separated.find(',', start);
    std::string_view item = comma == std::string_view::npos
                                ? comma_separated.substr(start)
                                : comma_separated.substr(start, comma - start);
    if (!item.empty()) metrics.push_back(Metric::parse(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (metrics.empty()) throw Error("no metrics given");
  return metrics;
}

std::vector<std::pair<Metric, RougeScore>> evaluate_corpus(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const std::vector<Metric>& metrics) {
  if (pairs.empty()) throw EmptyCorpusError("no candidate/reference pairs");
  std::vector<std::pair<Metric, RougeScore>> table;
  for (const auto& metric : metrics) {
    RougeScore mean;
    for (const auto& [candidate, reference] : pairs) {
      RougeScore s = metric.score(candidate, reference);
      mean.recall += s.recall;
      mean.precision += s.precision;
      mean.f1 += s.f1;
    }
    double n = static_cast<double>(pairs.size());
    mean.recall /= n;
    mean.precision /= n;
    mean.f1 /= n;
    table.emplace_back(metric, mean);
  }
  return table;
}

RougeScore score_multi(std::string_view candidate,
                       const std::vector<std::string>& references,
                       const Metric& metric) {
  if (references.empty()) throw EmptyCorpusError("no references");
  RougeScore best = metric.score(candidate, references.front());
  for (std::size_t i = 1; i < references.size(); ++i) {
    RougeScore s = metric.score(candidate, references[i]);
    if (s.f1 > best.f1) best = s;
  }
  return best;
}

}  // namespace scenedesc

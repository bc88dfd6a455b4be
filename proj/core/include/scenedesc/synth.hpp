#pragma once

#include <map>
#include <string>
#include <vector>

#include "scenedesc/grammar.hpp"
#include "scenedesc/random.hpp"

namespace scenedesc {

// Sampler settings for synthetic corpora. The default vocabulary is chosen
// so that sampled sentences re-match unambiguously: nouns, attribute values
// and template literals are pairwise distinct, the two noun phrases of a
// relation never share a noun, and no word is vowel-initial (the realized
// article is always "a").
struct SynthConfig {
  std::vector<std::string> nouns;
  std::vector<std::string> scene_nouns;
  std::vector<std::string> relations;      // arity-2 relations over objects
  std::string scene_relation = "in";       // pairs an object with a scene noun
  double p_attribute = 0.45;               // one attribute on a noun phrase
  double p_second_attribute = 0.15;        // size over color
  double p_det = 0.25;                     // det instead of indet

  static SynthConfig defaults();
};

struct SynthesisResult {
  // Pre-aligned corpus records: sentence line, semantic-tree line, blank.
  std::string corpus_text;
  // "relation\tparts string" -> number of times that template was used.
  std::map<std::string, long> template_usage;
};

// Samples n semantic trees, realizes each with the grammar (template choice
// proportional to weight), and emits the pre-aligned corpus format while
// counting every template usage. The usage counts are the oracle for the
// grammar-learning round trip. Throws Error for n < 1 or when the grammar
// lacks a relation named by the config.
SynthesisResult synthesize_corpus(const Grammar& grammar,
                                  const SynthConfig& config, int n,
                                  RandomSource& rng);

}  // namespace scenedesc

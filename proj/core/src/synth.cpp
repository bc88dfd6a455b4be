#include "scenedesc/synth.hpp"

#include <cctype>

#include "scenedesc/semtree.hpp"

namespace scenedesc {

namespace {

const std::vector<std::string>& color_values() {
  static const std::vector<std::string> v = {"red",   "blue", "white",
                                             "black", "brown", "green"};
  return v;
}
const std::vector<std::string>& size_values() {
  static const std::vector<std::string> v = {"large", "small", "wide", "tall"};
  return v;
}
const std::vector<std::string>& material_values() {
  static const std::vector<std::string> v = {"wooden", "bright"};
  return v;
}

struct Sampler {
  const Grammar& grammar;
  const SynthConfig& config;
  RandomSource& rng;
  std::map<std::string, long>& usage;

  const std::string& pick(const std::vector<std::string>& items) {
    return items[rng.next_index(items.size())];
  }

  SemTree noun_phrase(const std::string& noun) {
    SemTree core = SemTree::terminal(noun);
    double roll = rng.next_double();
    if (roll < config.p_second_attribute) {
      core = SemTree::relation(
          "color", {std::move(core), SemTree::terminal(pick(color_values()))});
      core = SemTree::relation(
          "size", {std::move(core), SemTree::terminal(pick(size_values()))});
    } else if (roll < config.p_attribute) {
      double which = rng.next_double();
      if (which < 0.5) {
        core = SemTree::relation(
            "color", {std::move(core), SemTree::terminal(pick(color_values()))});
      } else if (which < 0.8) {
        core = SemTree::relation(
            "size", {std::move(core), SemTree::terminal(pick(size_values()))});
      } else {
        core = SemTree::relation(
            "material",
            {std::move(core), SemTree::terminal(pick(material_values()))});
      }
    }
    bool definite = rng.next_double() < config.p_det;
    return SemTree::relation(definite ? "det" : "indet", {std::move(core)});
  }

  SemTree sample_tree() {
    bool scene_sentence = rng.next_double() < 0.3;
    if (scene_sentence) {
      return SemTree::relation(
          config.scene_relation,
          {noun_phrase(pick(config.nouns)),
           SemTree::relation("det",
                             {SemTree::terminal(pick(config.scene_nouns))})});
    }
    const std::string& relation = pick(config.relations);
    const std::string& source = pick(config.nouns);
    std::string target = pick(config.nouns);
    while (target == source) target = pick(config.nouns);
    return SemTree::relation(relation,
                             {noun_phrase(source), noun_phrase(target)});
  }

  void expand(const SemTree& tree, std::vector<std::string>& words) {
    if (tree.is_terminal()) {
      words.push_back(tree.label());
      return;
    }
    const Grammar::Entry* entry = grammar.find(tree.label());
    if (!entry) {
      throw Error("synthesis grammar lacks relation '" + tree.label() + "'");
    }
    double total = 0.0;
    for (const auto& tmpl : entry->templates) total += tmpl.weight;
    double u = rng.next_double() * total;
    const Template* chosen = &entry->templates.back();
    double cum = 0.0;
    for (const auto& tmpl : entry->templates) {
      cum += tmpl.weight;
      if (u < cum) {
        chosen = &tmpl;
        break;
      }
    }
    ++usage[chosen->relation + '\t' + chosen->parts_string()];
    for (const auto& part : chosen->parts) {
      if (const int* k = std::get_if<int>(&part)) {
        expand(tree.children()[*k - 1], words);
      } else {
        words.push_back(std::get<std::string>(part));
      }
    }
  }
};

}  // namespace

SynthConfig SynthConfig::defaults() {
  SynthConfig config;
  config.nouns = {"table", "chair",  "box",   "sink", "window",
                  "cabinet", "lamp", "bed",   "shelf", "couch"};
  config.scene_nouns = {"kitchen", "bedroom", "office", "bathroom"};
  config.relations = {"near",        "on-top-of", "above",
                      "next-to",     "behind",    "in-front-of",
                      "to-left-of",  "to-right-of"};
  return config;
}

SynthesisResult synthesize_corpus(const Grammar& grammar,
                                  const SynthConfig& config, int n,
                                  RandomSource& rng) {
  if (n < 1) throw Error("synthesize_corpus requires n >= 1");
  if (config.nouns.size() < 2) throw Error("need at least two nouns");

  SynthesisResult result;
  Sampler sampler{grammar, config, rng, result.template_usage};

  for (int i = 0; i < n; ++i) {
    SemTree tree = sampler.sample_tree();
    std::vector<std::string> words;
    sampler.expand(tree, words);

    std::string sentence;
    for (const auto& word : words) {
      if (!sentence.empty()) sentence += ' ';
      sentence += word;
    }
    if (!sentence.empty()) {
      sentence[0] = static_cast<char>(
          std::toupper(static_cast<unsigned char>(sentence[0])));
      sentence += '.';
    }

    result.corpus_text += sentence;
    result.corpus_text += '\n';
    result.corpus_text += print_semtree(tree);
    result.corpus_text += "\n\n";
  }
  return result;
}

}  // namespace scenedesc

#include "scenedesc/realize.hpp"

#include <cctype>

namespace scenedesc {

namespace {

bool vowel_initial(const std::string& word) {
  if (word.empty()) return false;
  char c = static_cast<char>(std::tolower(static_cast<unsigned char>(word[0])));
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

const Template& choose_template(const Grammar::Entry& entry,
                                const RealizeConfig& config,
                                RandomSource& rng) {
  if (entry.templates.size() == 1) return entry.templates.front();
  if (config.mode == RealizeConfig::Mode::argmax) {
    const Template* best = &entry.templates.front();
    for (const auto& tmpl : entry.templates) {
      if (tmpl.weight > best->weight) best = &tmpl;
    }
    return *best;
  }
  double total = 0.0;
  for (const auto& tmpl : entry.templates) total += tmpl.weight;
  double u = rng.next_double() * total;
  double cum = 0.0;
  for (const auto& tmpl : entry.templates) {
    cum += tmpl.weight;
    if (u < cum) return tmpl;
  }
  return entry.templates.back();
}

void expand(const SemTree& tree, const Grammar& grammar,
            const RealizeConfig& config, RandomSource& rng,
            std::vector<std::string>& words) {
  if (tree.is_terminal()) {
    words.push_back(tree.label());
    return;
  }
  const Grammar::Entry* entry = grammar.find(tree.label());
  if (!entry) throw MissingTemplateError(tree.label());
  if (entry->arity != tree.arity()) {
    throw ArityMismatchError(tree.label(), entry->arity, tree.arity());
  }
  const Template& tmpl = choose_template(*entry, config, rng);
  for (const auto& part : tmpl.parts) {
    if (const int* k = std::get_if<int>(&part)) {
      expand(tree.children()[*k - 1], grammar, config, rng, words);
    } else {
      words.push_back(std::get<std::string>(part));
    }
  }
}

std::string post_process(std::vector<std::string> words,
                         const RealizeConfig& config) {
  // "a" agrees with a following vowel-initial word.
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    if (words[i] == "a" && vowel_initial(words[i + 1])) words[i] = "an";
  }
  std::string sentence;
  for (const auto& word : words) {
    if (word.empty()) continue;
    if (!sentence.empty()) sentence += ' ';
    sentence += word;
  }
  if (sentence.empty()) return sentence;
  if (config.capitalize) {
    sentence[0] = static_cast<char>(
        std::toupper(static_cast<unsigned char>(sentence[0])));
  }
  if (config.final_period) {
    char last = sentence.back();
    if (last != '.' && last != '!' && last != '?') sentence += '.';
  }
  return sentence;
}

}  // namespace

std::string realize(const SemTree& tree, const Grammar& grammar,
                    const RealizeConfig& config, RandomSource& rng) {
  std::vector<std::string> words;
  expand(tree, grammar, config, rng, words);
  return post_process(std::move(words), config);
}

std::string realize_paragraph(const std::vector<SentencePlan>& plans,
                              const Grammar& grammar,
                              const RealizeConfig& config, RandomSource& rng) {
  std::string paragraph;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    std::string sentence;
    try {
      sentence = realize(plans[i].tree, grammar, config, rng);
    } catch (const RealizeError& e) {
      throw RealizeError("sentence " + std::to_string(i + 1) + ": " + e.what());
    }
    if (!paragraph.empty()) paragraph += ' ';
    paragraph += sentence;
  }
  return paragraph;
}

std::string generate_paragraph(const SceneGraph& graph, const Grammar& grammar,
                               const GenConfig& gen_config,
                               const RealizeConfig& realize_config,
                               std::uint64_t seed) {
  RandomSource rng(seed);
  std::vector<SentencePlan> plans = generate_plans(graph, gen_config, rng);
  return realize_paragraph(plans, grammar, realize_config, rng);
}

}  // namespace scenedesc

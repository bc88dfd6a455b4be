#pragma once

#include <string>
#include <vector>

#include "scenedesc/grammar.hpp"
#include "scenedesc/random.hpp"
#include "scenedesc/semtree.hpp"
#include "scenedesc/treegen.hpp"

namespace scenedesc {

struct RealizeConfig {
  enum class Mode { sample, argmax };
  // sample: template chosen with probability proportional to weight;
  // argmax: highest weight, ties broken by grammar order.
  Mode mode = Mode::sample;
  bool capitalize = true;
  bool final_period = true;
};

// Renders a semantic tree as one sentence by top-down weighted template
// expansion, then applies surface post-processing (capitalize, final period,
// collapse spaces, a -> an before vowels). Throws MissingTemplateError /
// ArityMismatchError.
std::string realize(const SemTree& tree, const Grammar& grammar,
                    const RealizeConfig& config, RandomSource& rng);

// Realizes each plan in order and joins the sentences with single spaces.
// Errors are rethrown with the failing sentence index.
std::string realize_paragraph(const std::vector<SentencePlan>& plans,
                              const Grammar& grammar,
                              const RealizeConfig& config, RandomSource& rng);

// One full generation run from a fixed seed: plan, then realize. The CLI and
// the fixture regeneration share this path so goldens cannot drift.
std::string generate_paragraph(const SceneGraph& graph, const Grammar& grammar,
                               const GenConfig& gen_config,
                               const RealizeConfig& realize_config,
                               std::uint64_t seed);

}  // namespace scenedesc

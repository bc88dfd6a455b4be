#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scenedesc/random.hpp"
#include "scenedesc/scene_graph.hpp"
#include "scenedesc/semtree.hpp"

namespace scenedesc {

// The five generation features, in level order.
struct GenFlags {
  bool diversity = false;    // zero used weights to suppress repetition
  bool saliency = false;     // weight objects by saliency * confidence
  bool scene = false;        // leading sentence mentions the scene class
  bool attributes = false;   // describe first mentions with attributes
  bool coreference = false;  // pronoun for objects from the previous sentence
};

struct GenConfig {
  GenFlags flags;
  double tau = 1.0;           // termination mass
  double rho_default = 1.0;   // prior weight per relation
  int max_sentences = 10;     // corpus descriptions range 1..10 sentences
  // Opt-in: position edges become r(make_tree(i), det(region)) sentences
  // when no pairwise mass remains.
  bool use_position_edges = false;

  // Level-k enables the first k flags in the order
  // diversity, saliency, scene, attributes, coreference.
  static GenConfig at_level(int level);
};

// Mutable sampling weights driving multi-sentence planning.
struct GenWeights {
  std::map<int, double> w_source;        // per object id
  std::map<int, double> w_target;        // per object id
  std::map<std::string, double> rho;     // per relation name
  double tau = 1.0;
};

// Bookkeeping across the sentences of one generation run.
struct GenState {
  std::set<int> used_as_source;
  std::set<int> used_as_target;
  std::set<std::string> used_relations;
  std::set<int> last_sentence_objects;
  int sentences_emitted = 0;
};

// A planned sentence: the semantic tree plus provenance for testing.
struct SentencePlan {
  SemTree tree;
  std::optional<int> source_id;
  std::optional<int> target_id;
  std::optional<std::string> relation;
};

// Scene-graph edge names and semantic-tree relation names differ for one
// relation: the edge "top-of" realizes as tree relation "on-top-of".
std::string edge_to_tree_relation(const std::string& edge_name);

// w^s_i = w^t_i = saliency_i * confidence_i (confidence alone when the
// saliency flag is off); rho gets rho_default for every relation present in
// the graph's edges.
GenWeights init_weights(const SceneGraph& graph, const GenConfig& config);

// Samples the leading sentence's source with probability proportional to
// w^s and builds in(make_tree(i), det(scene_class)). Used when the scene
// flag is on; zeroes w^s_i under diversity. Throws NoViableObjectError when
// all source weights are zero.
SentencePlan plan_leading(const SceneGraph& graph, GenWeights& weights,
                          const GenConfig& config, RandomSource& rng);

// Samples the next sentence: outcome (i,j,r) per pairwise edge with mass
// w^s_i * w^t_j * rho_r, or termination with mass tau. Returns nothing on
// termination (deterministically so when no relation mass remains). Updates
// weights (diversity zeroing) and state.
std::optional<SentencePlan> plan_next(const SceneGraph& graph,
                                      GenWeights& weights, GenState& state,
                                      const GenConfig& config,
                                      RandomSource& rng);

// Full plan: leading sentence (scene flag) or plain first sentence, then
// plan_next until termination or max_sentences. Deterministic given the rng
// seed.
std::vector<SentencePlan> generate_plans(const SceneGraph& graph,
                                         const GenConfig& config,
                                         RandomSource& rng);

}  // namespace scenedesc

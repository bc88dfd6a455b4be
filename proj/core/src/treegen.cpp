#include "scenedesc/treegen.hpp"

#include <algorithm>

#include "scenedesc/errors.hpp"

namespace scenedesc {

namespace {

// Region noun for opt-in position-edge sentences: corner-of-room ->
// "room", front-of-camera -> "camera".
std::string region_noun(const std::string& position_name) {
  auto dash = position_name.rfind('-');
  if (dash == std::string::npos || dash + 1 >= position_name.size()) {
    return "room";
  }
  return position_name.substr(dash + 1);
}

SemTree object_subtree(const ObjectInstance& obj, const GenConfig& config,
                       const GenState& state, RandomSource& rng) {
  bool pronoun =
      config.flags.coreference && state.last_sentence_objects.count(obj.id) > 0;
  return make_tree(obj, config.flags.attributes, pronoun, rng);
}

}  // namespace

GenConfig GenConfig::at_level(int level) {
  GenConfig config;
  config.flags.diversity = level >= 1;
  config.flags.saliency = level >= 2;
  config.flags.scene = level >= 3;
  config.flags.attributes = level >= 4;
  config.flags.coreference = level >= 5;
  return config;
}

std::string edge_to_tree_relation(const std::string& edge_name) {
  return edge_name == "top-of" ? "on-top-of" : edge_name;
}

GenWeights init_weights(const SceneGraph& graph, const GenConfig& config) {
  GenWeights weights;
  for (const auto& obj : graph.objects) {
    double w = config.flags.saliency ? obj.saliency * obj.confidence
                                     : obj.confidence;
    weights.w_source[obj.id] = w;
    weights.w_target[obj.id] = w;
  }
  for (const auto& edge : graph.pairwise_edges) {
    weights.rho[edge.relation] = config.rho_default;
  }
  for (const auto& edge : graph.position_edges) {
    weights.rho[edge.relation] = config.rho_default;
  }
  weights.tau = config.tau;
  return weights;
}

SentencePlan plan_leading(const SceneGraph& graph, GenWeights& weights,
                          const GenConfig& config, RandomSource& rng) {
  double total = 0.0;
  for (const auto& [id, w] : weights.w_source) total += w;
  if (total <= 0.0) {
    throw NoViableObjectError("all source weights are zero");
  }

  double u = rng.next_double() * total;
  int chosen = weights.w_source.rbegin()->first;
  double cum = 0.0;
  for (const auto& [id, w] : weights.w_source) {
    cum += w;
    if (u < cum) {
      chosen = id;
      break;
    }
  }

  const ObjectInstance* obj = graph.find_object(chosen);
  SemTree subject = make_tree(*obj, config.flags.attributes, false, rng);
  SemTree tree = SemTree::relation(
      "in", {std::move(subject),
             SemTree::relation("det", {SemTree::terminal(graph.scene_class)})});

  if (config.flags.diversity) weights.w_source[chosen] = 0.0;

  SentencePlan plan{std::move(tree), chosen, std::nullopt, "in"};
  return plan;
}

std::optional<SentencePlan> plan_next(const SceneGraph& graph,
                                      GenWeights& weights, GenState& state,
                                      const GenConfig& config,
                                      RandomSource& rng) {
  struct Outcome {
    double mass = 0.0;
    const PairwiseEdge* pair = nullptr;
    const PositionEdge* position = nullptr;
  };
  std::vector<Outcome> outcomes;
  double relation_mass = 0.0;

  for (const auto& edge : graph.pairwise_edges) {
    if (edge.source_id == edge.target_id) continue;
    double mass = weights.w_source[edge.source_id] *
                  weights.w_target[edge.target_id] * weights.rho[edge.relation];
    if (mass > 0.0) {
      outcomes.push_back({mass, &edge, nullptr});
      relation_mass += mass;
    }
  }

  if (config.use_position_edges && relation_mass <= 0.0) {
    for (const auto& edge : graph.position_edges) {
      double mass =
          weights.w_source[edge.object_id] * weights.rho[edge.relation];
      if (mass > 0.0) {
        outcomes.push_back({mass, nullptr, &edge});
        relation_mass += mass;
      }
    }
  }

  if (relation_mass <= 0.0) return std::nullopt;

  double total = relation_mass + weights.tau;
  double u = rng.next_double() * total;
  const Outcome* selected = nullptr;
  double cum = 0.0;
  for (const auto& outcome : outcomes) {
    cum += outcome.mass;
    if (u < cum) {
      selected = &outcome;
      break;
    }
  }
  if (!selected) return std::nullopt;  // the tau tail: terminate

  if (selected->pair) {
    const PairwiseEdge& edge = *selected->pair;
    const ObjectInstance* source = graph.find_object(edge.source_id);
    const ObjectInstance* target = graph.find_object(edge.target_id);
    SemTree tree = SemTree::relation(
        edge_to_tree_relation(edge.relation),
        {object_subtree(*source, config, state, rng),
         object_subtree(*target, config, state, rng)});

    if (config.flags.diversity) {
      weights.w_source[edge.source_id] = 0.0;
      weights.w_target[edge.target_id] = 0.0;
      weights.rho[edge.relation] = 0.0;
    }
    state.used_as_source.insert(edge.source_id);
    state.used_as_target.insert(edge.target_id);
    state.used_relations.insert(edge.relation);
    state.last_sentence_objects = {edge.source_id, edge.target_id};
    ++state.sentences_emitted;

    return SentencePlan{std::move(tree), edge.source_id, edge.target_id,
                        edge.relation};
  }

  const PositionEdge& edge = *selected->position;
  const ObjectInstance* obj = graph.find_object(edge.object_id);
  SemTree tree = SemTree::relation(
      edge.relation,
      {object_subtree(*obj, config, state, rng),
       SemTree::relation("det", {SemTree::terminal(region_noun(edge.relation))})});

  if (config.flags.diversity) {
    weights.w_source[edge.object_id] = 0.0;
    weights.rho[edge.relation] = 0.0;
  }
  state.used_as_source.insert(edge.object_id);
  state.used_relations.insert(edge.relation);
  state.last_sentence_objects = {edge.object_id};
  ++state.sentences_emitted;

  return SentencePlan{std::move(tree), edge.object_id, std::nullopt,
                      edge.relation};
}

std::vector<SentencePlan> generate_plans(const SceneGraph& graph,
                                         const GenConfig& config,
                                         RandomSource& rng) {
  GenWeights weights = init_weights(graph, config);
  GenState state;
  std::vector<SentencePlan> plans;

  if (config.flags.scene) {
    SentencePlan leading = plan_leading(graph, weights, config, rng);
    state.used_as_source.insert(*leading.source_id);
    state.last_sentence_objects = {*leading.source_id};
    ++state.sentences_emitted;
    plans.push_back(std::move(leading));
  }

  while (state.sentences_emitted < config.max_sentences) {
    auto plan = plan_next(graph, weights, state, config, rng);
    if (!plan) break;
    plans.push_back(std::move(*plan));
  }
  return plans;
}

}  // namespace scenedesc

#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scenedesc/errors.hpp"
#include "scenedesc/geometry.hpp"

namespace scenedesc {

enum class RelationKind { position, pairwise };

struct RelationLabel {
  RelationKind kind = RelationKind::pairwise;
  std::string name;

  friend bool operator==(const RelationLabel&, const RelationLabel&) = default;
  friend bool operator<(const RelationLabel& a, const RelationLabel& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.name < b.name;
  }
};

// The six object positions relative to the scene.
const std::set<std::string>& position_relation_names();
// The eight pairwise relations between objects.
const std::set<std::string>& pairwise_relation_names();

// Attribute vocabulary: nine colors, two materials, four sizes.
const std::set<std::string>& color_attributes();
const std::set<std::string>& material_attributes();
const std::set<std::string>& size_attributes();
bool is_known_attribute(const std::string& token);
// "color", "size", or "material"; empty when unknown.
std::string attribute_category(const std::string& token);

struct ObjectInstance {
  int id = 0;
  std::string class_label;
  std::set<std::string> attributes;
  double saliency = 1.0;    // how likely a human mentions the object
  double confidence = 1.0;  // detector confidence in the class label
  std::optional<Cuboid> cuboid;

  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

struct PositionEdge {
  int object_id = 0;
  std::string relation;

  friend bool operator==(const PositionEdge&, const PositionEdge&) = default;
};

struct PairwiseEdge {
  int source_id = 0;
  int target_id = 0;
  std::string relation;

  friend bool operator==(const PairwiseEdge&, const PairwiseEdge&) = default;
};

struct SceneGraph {
  std::string scene_class;
  std::vector<ObjectInstance> objects;
  std::vector<PositionEdge> position_edges;
  std::vector<PairwiseEdge> pairwise_edges;

  const ObjectInstance* find_object(int id) const;

  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;
};

// Reference frame for the position rules; the paper leaves these unstated,
// so the frame is explicit input.
struct RoomFrame {
  double floor_z = 0.0;
  Rect room_bounds;
  Vec3 camera_position;

  friend bool operator==(const RoomFrame&, const RoomFrame&) = default;
};

// Parses and validates the scene-graph JSON interchange format
// (schema documented in the repository README). Throws SchemaError for
// structural problems and ValidationError for invariant violations.
SceneGraph load_scene_graph(std::string_view json_text);

// Canonical JSON serialization; load_scene_graph(serialize_scene_graph(g)) == g.
std::string serialize_scene_graph(const SceneGraph& graph);

std::string serialize_room_frame(const RoomFrame& frame);
RoomFrame load_room_frame(std::string_view json_text);

// Subset of the six position labels that hold for the object in the frame.
// Requires a cuboid (MissingCuboidError otherwise). Deterministic.
std::set<RelationLabel> extract_position_relations(
    const ObjectInstance& obj, const RoomFrame& frame,
    const PositionRuleConfig& config = {});

// Pairwise labels that hold from a (source) to b (target). Deterministic;
// left/right and front/behind are dual by construction.
std::set<RelationLabel> extract_pairwise_relations(
    const Cuboid& a, const Cuboid& b, const SpatialRuleConfig& config = {});

}  // namespace scenedesc

#include "scenedesc/scene_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "json.hpp"

namespace scenedesc {

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kPi = 3.14159265358979323846;

using ordered_json = nlohmann::ordered_json;

void require_keys(const ordered_json& obj, const std::set<std::string>& required,
                  const std::set<std::string>& optional,
                  const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!required.count(key) && !optional.count(key)) {
      throw SchemaError("unexpected field '" + key + "' in " + where);
    }
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) {
      throw SchemaError("missing field '" + key + "' in " + where);
    }
  }
}

Vec3 read_vec3(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() ||
      !j[1].is_number() || !j[2].is_number()) {
    throw SchemaError(where + " must be an array of 3 numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Cuboid read_cuboid(const ordered_json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + " must be an object");
  require_keys(j, {"center", "dims"}, {"yaw"}, where);
  Cuboid c;
  c.center = read_vec3(j["center"], where + ".center");
  c.dims = read_vec3(j["dims"], where + ".dims");
  if (j.contains("yaw")) {
    if (!j["yaw"].is_number()) throw SchemaError(where + ".yaw must be a number");
    c.yaw = normalize_yaw(j["yaw"].get<double>());
  }
  if (c.dims.x <= 0.0 || c.dims.y <= 0.0 || c.dims.z <= 0.0) {
    throw ValidationError(where + ": dims must be strictly positive");
  }
  return c;
}

void validate(const SceneGraph& g) {
  std::set<int> ids;
  for (const auto& obj : g.objects) {
    if (obj.id < 0) throw ValidationError("object id must be non-negative");
    if (!ids.insert(obj.id).second) {
      throw ValidationError("duplicate object id " + std::to_string(obj.id));
    }
    if (obj.class_label.empty()) {
      throw ValidationError("object " + std::to_string(obj.id) +
                            " has an empty class label");
    }
    if (obj.saliency < 0.0 || obj.saliency > 1.0) {
      throw ValidationError("object " + std::to_string(obj.id) +
                            ": saliency out of [0,1]");
    }
    if (obj.confidence < 0.0 || obj.confidence > 1.0) {
      throw ValidationError("object " + std::to_string(obj.id) +
                            ": confidence out of [0,1]");
    }
    for (const auto& attr : obj.attributes) {
      if (!is_known_attribute(attr)) {
        throw ValidationError("object " + std::to_string(obj.id) +
                              ": unknown attribute '" + attr + "'");
      }
    }
  }
  for (const auto& e : g.position_edges) {
    if (!ids.count(e.object_id)) {
      throw ValidationError("position edge references missing object id " +
                            std::to_string(e.object_id));
    }
    if (!position_relation_names().count(e.relation)) {
      throw ValidationError("unknown position relation '" + e.relation + "'");
    }
  }
  for (const auto& e : g.pairwise_edges) {
    if (!ids.count(e.source_id) || !ids.count(e.target_id)) {
      throw ValidationError("pairwise edge references missing object id");
    }
    if (e.source_id == e.target_id) {
      throw ValidationError("pairwise edge with identical endpoints " +
                            std::to_string(e.source_id));
    }
    if (!pairwise_relation_names().count(e.relation)) {
      throw ValidationError("unknown pairwise relation '" + e.relation + "'");
    }
  }
}

}  // namespace

const std::set<std::string>& position_relation_names() {
  static const std::set<std::string> names = {
      "corner-of-room", "front-of-camera", "far-away-from-camera",
      "center-of-room", "left-of-room",    "right-of-room"};
  return names;
}

const std::set<std::string>& pairwise_relation_names() {
  static const std::set<std::string> names = {
      "next-to", "near",   "top-of",     "above",
      "in-front-of", "behind", "to-left-of", "to-right-of"};
  return names;
}

const std::set<std::string>& color_attributes() {
  static const std::set<std::string> colors = {
      "white", "black", "brown", "red",  "green",
      "blue",  "yellow", "gray", "pink"};
  return colors;
}

const std::set<std::string>& material_attributes() {
  static const std::set<std::string> materials = {"wooden", "bright"};
  return materials;
}

const std::set<std::string>& size_attributes() {
  static const std::set<std::string> sizes = {"wide", "tall", "large", "small"};
  return sizes;
}

bool is_known_attribute(const std::string& token) {
  return !attribute_category(token).empty();
}

std::string attribute_category(const std::string& token) {
  if (color_attributes().count(token)) return "color";
  if (size_attributes().count(token)) return "size";
  if (material_attributes().count(token)) return "material";
  return "";
}

const ObjectInstance* SceneGraph::find_object(int id) const {
  for (const auto& obj : objects) {
    if (obj.id == id) return &obj;
  }
  return nullptr;
}

SceneGraph load_scene_graph(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("top level must be a JSON object");
  require_keys(doc, {"version", "scene_class", "objects"},
               {"position_edges", "pairwise_edges"}, "scene graph");
  if (!doc["version"].is_number_integer() ||
      doc["version"].get<int>() != kSchemaVersion) {
    throw SchemaError("unsupported schema version");
  }
  if (!doc["scene_class"].is_string()) {
    throw SchemaError("scene_class must be a string");
  }

  SceneGraph g;
  g.scene_class = doc["scene_class"].get<std::string>();

  if (!doc["objects"].is_array()) throw SchemaError("objects must be an array");
  for (const auto& jobj : doc["objects"]) {
    if (!jobj.is_object()) throw SchemaError("each object must be a JSON object");
    require_keys(jobj, {"id", "class"},
                 {"attributes", "saliency", "confidence", "cuboid"}, "object");
    ObjectInstance obj;
    if (!jobj["id"].is_number_integer()) throw SchemaError("object id must be an integer");
    obj.id = jobj["id"].get<int>();
    if (!jobj["class"].is_string()) throw SchemaError("object class must be a string");
    obj.class_label = jobj["class"].get<std::string>();
    if (jobj.contains("attributes")) {
      if (!jobj["attributes"].is_array()) {
        throw SchemaError("attributes must be an array of strings");
      }
      for (const auto& a : jobj["attributes"]) {
        if (!a.is_string()) throw SchemaError("attributes must be strings");
        obj.attributes.insert(a.get<std::string>());
      }
    }
    if (jobj.contains("saliency")) {
      if (!jobj["saliency"].is_number()) throw SchemaError("saliency must be a number");
      obj.saliency = jobj["saliency"].get<double>();
    }
    if (jobj.contains("confidence")) {
      if (!jobj["confidence"].is_number()) throw SchemaError("confidence must be a number");
      obj.confidence = jobj["confidence"].get<double>();
    }
    if (jobj.contains("cuboid")) {
      obj.cuboid = read_cuboid(jobj["cuboid"], "cuboid");
    }
    g.objects.push_back(std::move(obj));
  }

  if (doc.contains("position_edges")) {
    if (!doc["position_edges"].is_array()) {
      throw SchemaError("position_edges must be an array");
    }
    for (const auto& je : doc["position_edges"]) {
      if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() ||
          !je[1].is_string()) {
        throw SchemaError("position edge must be [id, name]");
      }
      g.position_edges.push_back({je[0].get<int>(), je[1].get<std::string>()});
    }
  }
  if (doc.contains("pairwise_edges")) {
    if (!doc["pairwise_edges"].is_array()) {
      throw SchemaError("pairwise_edges must be an array");
    }
    for (const auto& je : doc["pairwise_edges"]) {
      if (!je.is_array() || je.size() != 3 || !je[0].is_number_integer() ||
          !je[1].is_number_integer() || !je[2].is_string()) {
        throw SchemaError("pairwise edge must be [src, dst, name]");
      }
      g.pairwise_edges.push_back(
          {je[0].get<int>(), je[1].get<int>(), je[2].get<std::string>()});
    }
  }

  validate(g);
  return g;
}

std::string serialize_scene_graph(const SceneGraph& graph) {
  ordered_json doc;
  doc["version"] = kSchemaVersion;
  doc["scene_class"] = graph.scene_class;
  doc["objects"] = ordered_json::array();
  for (const auto& obj : graph.objects) {
    ordered_json jobj;
    jobj["id"] = obj.id;
    jobj["class"] = obj.class_label;
    jobj["attributes"] = obj.attributes;
    jobj["saliency"] = obj.saliency;
    jobj["confidence"] = obj.confidence;
    if (obj.cuboid) {
      jobj["cuboid"] = {
          {"center", {obj.cuboid->center.x, obj.cuboid->center.y, obj.cuboid->center.z}},
          {"dims", {obj.cuboid->dims.x, obj.cuboid->dims.y, obj.cuboid->dims.z}},
          {"yaw", obj.cuboid->yaw}};
    }
    doc["objects"].push_back(std::move(jobj));
  }
  doc["position_edges"] = ordered_json::array();
  for (const auto& e : graph.position_edges) {
    doc["position_edges"].push_back({e.object_id, e.relation});
  }
  doc["pairwise_edges"] = ordered_json::array();
  for (const auto& e : graph.pairwise_edges) {
    doc["pairwise_edges"].push_back({e.source_id, e.target_id, e.relation});
  }
  return doc.dump(2) + "\n";
}

std::string serialize_room_frame(const RoomFrame& frame) {
  ordered_json doc;
  doc["floor_z"] = frame.floor_z;
  doc["room_bounds"] = {frame.room_bounds.xmin, frame.room_bounds.ymin,
                        frame.room_bounds.xmax, frame.room_bounds.ymax};
  doc["camera"] = {frame.camera_position.x, frame.camera_position.y,
                   frame.camera_position.z};
  return doc.dump(2) + "\n";
}

RoomFrame load_room_frame(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("room frame must be a JSON object");
  require_keys(doc, {"room_bounds", "camera"}, {"floor_z"}, "room frame");
  RoomFrame frame;
  if (doc.contains("floor_z")) {
    if (!doc["floor_z"].is_number()) throw SchemaError("floor_z must be a number");
    frame.floor_z = doc["floor_z"].get<double>();
  }
  const auto& rb = doc["room_bounds"];
  if (!rb.is_array() || rb.size() != 4) {
    throw SchemaError("room_bounds must be [xmin, ymin, xmax, ymax]");
  }
  frame.room_bounds = {rb[0].get<double>(), rb[1].get<double>(),
                       rb[2].get<double>(), rb[3].get<double>()};
  if (frame.room_bounds.area() <= 0.0) {
    throw ValidationError("room_bounds must have positive area");
  }
  frame.camera_position = read_vec3(doc["camera"], "camera");
  return frame;
}

std::set<RelationLabel> extract_position_relations(
    const ObjectInstance& obj, const RoomFrame& frame,
    const PositionRuleConfig& config) {
  if (!obj.cuboid) {
    throw MissingCuboidError("object " + std::to_string(obj.id) +
                             " has no cuboid");
  }
  const Cuboid& c = *obj.cuboid;
  const Rect& room = frame.room_bounds;
  std::set<RelationLabel> labels;
  auto add = [&](const char* name) {
    labels.insert({RelationKind::position, name});
  };

  double margin_x = room.width() * (1.0 - config.center_band) / 2.0;
  double margin_y = room.height() * (1.0 - config.center_band) / 2.0;
  if (c.center.x >= room.xmin + margin_x && c.center.x <= room.xmax - margin_x &&
      c.center.y >= room.ymin + margin_y && c.center.y <= room.ymax - margin_y) {
    add("center-of-room");
  }

  if (c.center.x <= room.xmin + room.width() * config.side_band) {
    add("left-of-room");
  }
  if (c.center.x >= room.xmax - room.width() * config.side_band) {
    add("right-of-room");
  }

  Vec3 v = c.center - frame.camera_position;
  double camera_distance = norm(v);
  if (camera_distance <= config.front_distance && v.y > 0.0) {
    double angle = std::atan2(std::abs(v.x), v.y) * 180.0 / kPi;
    if (angle <= config.front_angle_deg) add("front-of-camera");
  }

  double diagonal = std::hypot(room.width(), room.height());
  if (camera_distance > config.far_fraction * diagonal) {
    add("far-away-from-camera");
  }

  auto fp = c.footprint();
  double fminx = fp[0].x, fmaxx = fp[0].x, fminy = fp[0].y, fmaxy = fp[0].y;
  for (const auto& p : fp) {
    fminx = std::min(fminx, p.x);
    fmaxx = std::max(fmaxx, p.x);
    fminy = std::min(fminy, p.y);
    fmaxy = std::max(fmaxy, p.y);
  }
  double dx = std::min(std::max(0.0, fminx - room.xmin),
                       std::max(0.0, room.xmax - fmaxx));
  double dy = std::min(std::max(0.0, fminy - room.ymin),
                       std::max(0.0, room.ymax - fmaxy));
  if (dx <= config.corner_distance && dy <= config.corner_distance) {
    add("corner-of-room");
  }

  return labels;
}

std::set<RelationLabel> extract_pairwise_relations(
    const Cuboid& a, const Cuboid& b, const SpatialRuleConfig& config) {
  std::set<RelationLabel> labels;
  auto add = [&](const char* name) {
    labels.insert({RelationKind::pairwise, name});
  };

  double overlap = horizontal_overlap_ratio(a, b);

  if (std::abs(a.z_min() - b.z_max()) <= config.contact_eps &&
      overlap >= config.top_overlap && a.center.z > b.center.z) {
    add("top-of");
  }
  if (a.z_min() >= b.z_max() && overlap >= config.above_overlap) {
    add("above");
  }

  double gap = surface_gap(a, b);
  if (gap < config.near_gap) add("near");
  // Strict z-interval overlap keeps stacked objects out of next-to.
  if (gap < config.next_to_gap && a.z_min() < b.z_max() && b.z_min() < a.z_max()) {
    add("next-to");
  }

  Vec3 d = a.center - b.center;
  double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
  if (ax > config.axis_dominance * ay && ax > config.axis_dominance * az) {
    add(d.x < 0.0 ? "to-left-of" : "to-right-of");
  }
  if (ay > config.axis_dominance * ax && ay > config.axis_dominance * az) {
    add(d.y < 0.0 ? "in-front-of" : "behind");
  }

  return labels;
}

}  // namespace scenedesc

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scenedesc/errors.hpp"
#include "scenedesc/random.hpp"
#include "scenedesc/scene_graph.hpp"

namespace scenedesc {

// Semantic tree: relation nodes over terminal words, one tree per sentence.
// A node is a terminal iff it has no children; relation nodes always carry
// at least one child. Labels contain no parentheses, commas, or whitespace.
class SemTree {
 public:
  static SemTree terminal(std::string word);
  static SemTree relation(std::string name, std::vector<SemTree> children);

  bool is_terminal() const { return children_.empty(); }
  // Terminal word or relation name, depending on node kind.
  const std::string& label() const { return label_; }
  const std::vector<SemTree>& children() const { return children_; }
  int arity() const { return static_cast<int>(children_.size()); }

  // All terminal words, left to right.
  std::vector<std::string> terminals() const;

  friend bool operator==(const SemTree& a, const SemTree& b) {
    return a.label_ == b.label_ && a.children_ == b.children_;
  }

 private:
  SemTree() = default;
  std::string label_;
  std::vector<SemTree> children_;
};

// Parses name(child, child, ...) with arbitrary whitespace between tokens;
// a bare token parses as a terminal. Throws ParseError with the offset of
// the offending character.
SemTree parse_semtree(std::string_view text);

// Canonical form: name(c1, c2) with a single space after each comma and no
// other whitespace. parse_semtree(print_semtree(t)) == t.
std::string print_semtree(const SemTree& tree);

// Builds the sub-tree describing an object. With as_pronoun the result is
// the bare terminal "it" and attributes are never emitted. Otherwise the
// class label is wrapped in indet(...), with at most one attribute per
// category (chosen uniformly from those present) when use_attributes is set;
// nesting order is size over color over material.
SemTree make_tree(const ObjectInstance& obj, bool use_attributes,
                  bool as_pronoun, RandomSource& rng);

}  // namespace scenedesc

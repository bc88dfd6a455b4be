#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scenedesc/corpus.hpp"
#include "scenedesc/errors.hpp"
#include "scenedesc/semtree.hpp"

namespace scenedesc {

// One template part: a literal word or a 1-based placeholder index.
using TemplatePart = std::variant<std::string, int>;

// Surface pattern for one relation, e.g. "{1} is on top of {2}".
// Every placeholder 1..arity appears exactly once; weight is the
// training-corpus frequency.
struct Template {
  std::string relation;
  std::vector<TemplatePart> parts;
  double weight = 1.0;

  int arity() const;
  // Parts joined by single spaces, placeholders as {k}.
  std::string parts_string() const;
  // Inverse of parts_string (whitespace-separated parts).
  static std::vector<TemplatePart> parse_parts(std::string_view text);

  friend bool operator==(const Template&, const Template&) = default;
};

// Weighted template grammar: relation name -> templates of one shared arity.
class Grammar {
 public:
  struct Entry {
    int arity = 0;
    std::vector<Template> templates;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  // Validates template invariants and the shared-arity rule.
  void add(Template tmpl);
  bool has(const std::string& relation) const;
  const Entry* find(const std::string& relation) const;
  const std::map<std::string, Entry>& entries() const { return entries_; }
  std::size_t relation_count() const { return entries_.size(); }
  std::size_t template_count() const;
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const Grammar&, const Grammar&) = default;

 private:
  std::map<std::string, Entry> entries_;
};

struct LearnConfig {
  int min_template_count = 5;   // templates occurring fewer times are dropped
  int min_relation_weight = 20; // relations with smaller total weight are dropped
};

// Half-open token range into the matched span.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

// Result of matching one relation node against a token span: the extracted
// template plus the realizing span of each child, in tree order.
struct NodeMatch {
  Template tmpl;
  std::vector<TokenSpan> child_spans;
};

// Matches a relation node against a sentence span: each child receives a
// contiguous realizing sub-span (a terminal child its word; a relation child
// a recursively matchable range), remaining words become literals, and child
// spans turn into placeholders. Children are assigned greedily left to
// right; for arity-2 nodes the swapped order is tried when the in-order
// assignment fails, which recovers "{2} {1}"-style templates. Returns
// nothing when some child has no realizing span.
std::optional<NodeMatch> match_node(const SemTree& tree,
                                    const std::vector<std::string>& tokens);

struct LearnReport {
  std::size_t examples_total = 0;
  std::size_t examples_matched = 0;
  std::size_t examples_failed = 0;
  std::size_t templates_learned = 0;    // after pruning
  std::size_t templates_discarded = 0;
  std::size_t relations_learned = 0;    // after pruning
  std::size_t relations_discarded = 0;

  std::string to_json() const;
};

// Runs recursive matching over every example, counts template frequencies,
// sets weight = frequency, and prunes by the config thresholds. Matching
// failures are counted, never thrown; nodes that matched still contribute
// when an ancestor failed.
Grammar learn_templates(const std::vector<AlignedExample>& examples,
                        const LearnConfig& config = {},
                        LearnReport* report = nullptr);

// Drops templates with weight < min_template_count, then relations whose
// remaining total weight < min_relation_weight (both strict).
Grammar prune(const Grammar& grammar, const LearnConfig& config);

// Plain-text persistence: a "relation/arity" header line per relation, then
// one "weight<TAB>parts" line per template. load_grammar(save_grammar(g)) == g.
std::string save_grammar(const Grammar& grammar);
Grammar load_grammar(std::string_view text);

}  // namespace scenedesc

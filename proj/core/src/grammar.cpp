#include "scenedesc/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace scenedesc {

namespace {

void check_template(const Template& tmpl) {
  if (tmpl.parts.empty()) {
    throw Error("template for '" + tmpl.relation + "' has no parts");
  }
  if (!(tmpl.weight > 0.0)) {
    throw Error("template for '" + tmpl.relation + "' has non-positive weight");
  }
  int max_index = 0;
  std::vector<int> seen;
  for (const auto& part : tmpl.parts) {
    if (const int* k = std::get_if<int>(&part)) {
      if (*k < 1) throw Error("placeholder index must be >= 1");
      if (std::find(seen.begin(), seen.end(), *k) != seen.end()) {
        throw Error("duplicate placeholder {" + std::to_string(*k) +
                    "} in template for '" + tmpl.relation + "'");
      }
      seen.push_back(*k);
      max_index = std::max(max_index, *k);
    }
  }
  if (static_cast<int>(seen.size()) != max_index) {
    throw Error("template for '" + tmpl.relation +
                "' must use every placeholder 1.." + std::to_string(max_index));
  }
  if (max_index == 0) {
    throw Error("template for '" + tmpl.relation + "' has no placeholders");
  }
}

// ---------------------------------------------------------------------------
// Recursive matching

struct Matcher {
  const std::vector<std::string>& tokens;

  // Child index -> span, for children that found a realizing span during the
  // in-order attempt of a failed node; used for partial contributions.
  struct Attempt {
    bool ok = false;
    std::vector<std::optional<TokenSpan>> child_spans;
  };

  bool matchable(const SemTree& node, std::size_t begin, std::size_t end) {
    if (node.is_terminal()) {
      // A terminal's realizing span is a single equal token.
      return end - begin == 1 && tokens[begin] == node.label();
    }
    return try_node(node, begin, end).ok;
  }

  // Shortest-then-leftmost recursively matchable span within [from, to).
  std::optional<TokenSpan> find_child_span(const SemTree& child,
                                           std::size_t from, std::size_t to) {
    if (child.is_terminal()) {
      for (std::size_t i = from; i < to; ++i) {
        if (tokens[i] == child.label()) return TokenSpan{i, i + 1};
      }
      return std::nullopt;
    }
    for (std::size_t len = 1; len <= to - from; ++len) {
      for (std::size_t start = from; start + len <= to; ++start) {
        if (matchable(child, start, start + len)) {
          return TokenSpan{start, start + len};
        }
      }
    }
    return std::nullopt;
  }

  // An indet/det child absorbs an immediately preceding unclaimed article,
  // which is how "a {1}" / "the {1}" templates end up on the determiner
  // relation rather than as stray literals of its parent.
  TokenSpan extend_article(const SemTree& child, TokenSpan span,
                           std::size_t from) {
    if (child.is_terminal() || span.begin <= from) return span;
    const std::string& prev = tokens[span.begin - 1];
    bool extend = false;
    if (child.label() == "indet") {
      extend = prev == "a" || prev == "an";
    } else if (child.label() == "det") {
      extend = prev == "the" || prev == "this" || prev == "that" ||
               prev == "these" || prev == "those";
    }
    if (extend) --span.begin;
    return span;
  }

  Attempt try_order(const SemTree& node, std::size_t begin, std::size_t end,
                    const std::vector<int>& order) {
    Attempt attempt;
    attempt.child_spans.resize(node.children().size());
    std::size_t cursor = begin;
    for (int idx : order) {
      const SemTree& child = node.children()[idx];
      auto span = find_child_span(child, cursor, end);
      if (!span) return attempt;
      *span = extend_article(child, *span, cursor);
      attempt.child_spans[idx] = *span;
      cursor = span->end;
    }
    attempt.ok = true;
    return attempt;
  }

  Attempt try_node(const SemTree& node, std::size_t begin, std::size_t end) {
    std::vector<int> order(node.children().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    Attempt in_order = try_order(node, begin, end, order);
    if (in_order.ok || node.children().size() != 2) return in_order;
    Attempt swapped = try_order(node, begin, end, {1, 0});
    return swapped.ok ? swapped : in_order;
  }

  NodeMatch build_match(const SemTree& node, std::size_t begin, std::size_t end,
                        const Attempt& attempt) {
    NodeMatch match;
    match.tmpl.relation = node.label();
    match.tmpl.weight = 1.0;
    for (const auto& span : attempt.child_spans) {
      match.child_spans.push_back(*span);
    }
    std::size_t pos = begin;
    while (pos < end) {
      bool at_child = false;
      for (std::size_t i = 0; i < match.child_spans.size(); ++i) {
        if (match.child_spans[i].begin == pos) {
          match.tmpl.parts.emplace_back(static_cast<int>(i + 1));
          pos = match.child_spans[i].end;
          at_child = true;
          break;
        }
      }
      if (!at_child) {
        match.tmpl.parts.emplace_back(tokens[pos]);
        ++pos;
      }
    }
    return match;
  }
};

// ---------------------------------------------------------------------------
// Learning

struct TemplateCounts {
  // (relation, arity) -> parts string -> (template, count).
  std::map<std::pair<std::string, int>, std::map<std::string, std::pair<Template, long>>>
      buckets;

  void record(const Template& tmpl) {
    auto& bucket = buckets[{tmpl.relation, tmpl.arity()}];
    auto [it, inserted] = bucket.try_emplace(tmpl.parts_string(),
                                             std::make_pair(tmpl, 0L));
    it->second.second += 1;
  }
};

// Matches `node` over a span, recording its template and recursing into the
// children. When the node fails, children that found realizing spans during
// the in-order attempt still contribute. Returns whether the node matched.
bool collect_templates(Matcher& matcher, const SemTree& node, std::size_t begin,
                       std::size_t end, TemplateCounts& counts) {
  if (node.is_terminal()) return true;
  Matcher::Attempt attempt = matcher.try_node(node, begin, end);
  if (attempt.ok) {
    NodeMatch match = matcher.build_match(node, begin, end, attempt);
    counts.record(match.tmpl);
    for (std::size_t i = 0; i < node.children().size(); ++i) {
      const SemTree& child = node.children()[i];
      if (!child.is_terminal()) {
        collect_templates(matcher, child, match.child_spans[i].begin,
                          match.child_spans[i].end, counts);
      }
    }
    return true;
  }
  for (std::size_t i = 0; i < node.children().size(); ++i) {
    const auto& span = attempt.child_spans[i];
    if (span && !node.children()[i].is_terminal()) {
      collect_templates(matcher, node.children()[i], span->begin, span->end,
                        counts);
    }
  }
  return false;
}

}  // namespace

int Template::arity() const {
  int max_index = 0;
  for (const auto& part : parts) {
    if (const int* k = std::get_if<int>(&part)) {
      max_index = std::max(max_index, *k);
    }
  }
  return max_index;
}

std::string Template::parts_string() const {
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out += ' ';
    if (const int* k = std::get_if<int>(&part)) {
      out += '{';
      out += std::to_string(*k);
      out += '}';
    } else {
      out += std::get<std::string>(part);
    }
  }
  return out;
}

std::vector<TemplatePart> Template::parse_parts(std::string_view text) {
  std::vector<TemplatePart> parts;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) {
    if (word.size() >= 3 && word.front() == '{' && word.back() == '}') {
      std::string digits = word.substr(1, word.size() - 2);
      bool numeric = !digits.empty() &&
                     std::all_of(digits.begin(), digits.end(), [](char c) {
                       return c >= '0' && c <= '9';
                     });
      if (numeric) {
        parts.emplace_back(std::stoi(digits));
        continue;
      }
    }
    parts.emplace_back(std::move(word));
  }
  return parts;
}

void Grammar::add(Template tmpl) {
  check_template(tmpl);
  auto [it, inserted] = entries_.try_emplace(tmpl.relation);
  Entry& entry = it->second;
  if (inserted) {
    entry.arity = tmpl.arity();
  } else if (entry.arity != tmpl.arity()) {
    throw Error("relation '" + tmpl.relation + "' mixes arities " +
                std::to_string(entry.arity) + " and " +
                std::to_string(tmpl.arity()));
  }
  entry.templates.push_back(std::move(tmpl));
}

bool Grammar::has(const std::string& relation) const {
  return entries_.count(relation) > 0;
}

const Grammar::Entry* Grammar::find(const std::string& relation) const {
  auto it = entries_.find(relation);
  return it == entries_.end() ? nullptr : &it->second;
}

std::size_t Grammar::template_count() const {
  std::size_t n = 0;
  for (const auto& [name, entry] : entries_) n += entry.templates.size();
  return n;
}

std::optional<NodeMatch> match_node(const SemTree& tree,
                                    const std::vector<std::string>& tokens) {
  if (tree.is_terminal()) return std::nullopt;
  Matcher matcher{tokens};
  Matcher::Attempt attempt = matcher.try_node(tree, 0, tokens.size());
  if (!attempt.ok) return std::nullopt;
  return matcher.build_match(tree, 0, tokens.size(), attempt);
}

Grammar learn_templates(const std::vector<AlignedExample>& examples,
                        const LearnConfig& config, LearnReport* report) {
  TemplateCounts counts;
  LearnReport local;
  local.examples_total = examples.size();

  for (const auto& example : examples) {
    if (example.tree.is_terminal()) {
      // A bare terminal has no relation nodes to learn from.
      ++local.examples_failed;
      continue;
    }
    Matcher matcher{example.tokens};
    if (collect_templates(matcher, example.tree, 0, example.tokens.size(),
                          counts)) {
      ++local.examples_matched;
    } else {
      ++local.examples_failed;
    }
  }

  // Relations observed with conflicting arities keep the dominant bucket
  // (largest total weight, ties to the smaller arity).
  std::map<std::string, std::pair<int, long>> best_bucket;
  for (const auto& [key, bucket] : counts.buckets) {
    long total = 0;
    for (const auto& [parts, entry] : bucket) total += entry.second;
    auto [it, inserted] = best_bucket.try_emplace(key.first,
                                                  std::make_pair(key.second, total));
    if (!inserted && total > it->second.second) {
      it->second = {key.second, total};
    }
  }

  Grammar unpruned;
  std::size_t templates_before = 0;
  for (const auto& [key, bucket] : counts.buckets) {
    bool dominant = best_bucket.at(key.first).first == key.second;
    // Deterministic order: weight descending, then parts string.
    std::vector<std::pair<Template, long>> templates;
    for (const auto& [parts, entry] : bucket) templates.push_back(entry);
    templates_before += templates.size();
    if (!dominant) continue;
    std::sort(templates.begin(), templates.end(),
              [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first.parts_string() < b.first.parts_string();
              });
    for (auto& [tmpl, count] : templates) {
      tmpl.weight = static_cast<double>(count);
      unpruned.add(std::move(tmpl));
    }
  }

  Grammar pruned = prune(unpruned, config);
  local.templates_learned = pruned.template_count();
  local.templates_discarded = templates_before - pruned.template_count();
  local.relations_learned = pruned.relation_count();
  local.relations_discarded = best_bucket.size() - pruned.relation_count();

  if (report) *report = local;
  return pruned;
}

Grammar prune(const Grammar& grammar, const LearnConfig& config) {
  Grammar out;
  for (const auto& [relation, entry] : grammar.entries()) {
    std::vector<Template> kept;
    double total = 0.0;
    for (const auto& tmpl : entry.templates) {
      if (tmpl.weight < static_cast<double>(config.min_template_count)) continue;
      kept.push_back(tmpl);
      total += tmpl.weight;
    }
    if (kept.empty() || total < static_cast<double>(config.min_relation_weight)) {
      continue;
    }
    for (auto& tmpl : kept) out.add(std::move(tmpl));
  }
  return out;
}

std::string LearnReport::to_json() const {
  nlohmann::ordered_json j;
  j["examples_total"] = examples_total;
  j["examples_matched"] = examples_matched;
  j["examples_failed"] = examples_failed;
  j["templates_learned"] = templates_learned;
  j["templates_discarded"] = templates_discarded;
  j["relations_learned"] = relations_learned;
  j["relations_discarded"] = relations_discarded;
  return j.dump(2);
}

std::string save_grammar(const Grammar& grammar) {
  std::ostringstream out;
  for (const auto& [relation, entry] : grammar.entries()) {
    out << relation << '/' << entry.arity << '\n';
    for (const auto& tmpl : entry.templates) {
      double w = tmpl.weight;
      if (w == std::floor(w) && std::abs(w) < 1e15) {
        out << static_cast<long long>(w);
      } else {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", w);
        out << buf;
      }
      out << '\t' << tmpl.parts_string() << '\n';
    }
  }
  return out.str();
}

Grammar load_grammar(std::string_view text) {
  Grammar grammar;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::string relation;
  int arity = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    if (line.find('\t') == std::string::npos) {
      auto slash = line.rfind('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 >= line.size()) {
        throw FormatError("expected 'relation/arity' header", lineno);
      }
      relation = line.substr(0, slash);
      try {
        arity = std::stoi(line.substr(slash + 1));
      } catch (const std::exception&) {
        throw FormatError("invalid arity in header", lineno);
      }
      if (arity < 1) throw FormatError("arity must be >= 1", lineno);
      continue;
    }

    if (relation.empty()) {
      throw FormatError("template line before any relation header", lineno);
    }
    auto tab = line.find('\t');
    Template tmpl;
    tmpl.relation = relation;
    try {
      tmpl.weight = std::stod(line.substr(0, tab));
    } catch (const std::exception&) {
      throw FormatError("invalid template weight", lineno);
    }
    tmpl.parts = Template::parse_parts(line.substr(tab + 1));
    if (tmpl.arity() != arity) {
      throw FormatError("template arity does not match header for '" +
                            relation + "'",
                        lineno);
    }
    try {
      grammar.add(std::move(tmpl));
    } catch (const Error& e) {
      throw FormatError(e.what(), lineno);
    }
  }
  return grammar;
}

}  // namespace scenedesc

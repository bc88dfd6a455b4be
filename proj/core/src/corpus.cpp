#include "scenedesc/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "scenedesc/tokenize.hpp"

namespace scenedesc {

namespace {

bool is_noun_tag(const std::string& tag) {
  return tag == "NN" || tag == "NNS" || tag == "NNP" || tag == "NNPS";
}

bool is_adjective_tag(const std::string& tag) {
  return tag == "JJ" || tag == "JJR" || tag == "JJS";
}

bool is_preposition_tag(const std::string& tag) {
  return tag == "IN" || tag == "TO";
}

bool is_verb_tag(const std::string& tag) {
  return tag.size() >= 2 && tag[0] == 'V' && tag[1] == 'B';
}

bool is_punct_label(const std::string& label) {
  return !label.empty() &&
         std::ispunct(static_cast<unsigned char>(label[0])) != 0;
}

// Preterminal: category node over a single leaf.
bool is_preterminal(const ParseTree& node) {
  return node.children.size() == 1 && node.children[0].is_leaf();
}

const std::string& leaf_word(const ParseTree& preterminal) {
  return preterminal.children[0].label;
}

void collect_yield(const ParseTree& node, std::vector<std::string>& out) {
  if (node.is_leaf()) {
    out.push_back(node.label);
    return;
  }
  for (const auto& child : node.children) collect_yield(child, out);
}

// ---------------------------------------------------------------------------
// Bracketed reader

class BracketedParser {
 public:
  explicit BracketedParser(std::string_view text) : text_(text) {}

  ParseTree parse() {
    skip_space();
    ParseTree tree = parse_node();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError("trailing input after parse tree", pos_);
    }
    return tree;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string read_token() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a token", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  ParseTree parse_node() {
    if (pos_ >= text_.size() || text_[pos_] != '(') {
      throw ParseError("expected '('", pos_);
    }
    ++pos_;
    skip_space();
    ParseTree node;
    node.label = read_token();
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unbalanced brackets", pos_);
    while (pos_ < text_.size() && text_[pos_] != ')') {
      if (text_[pos_] == '(') {
        node.children.push_back(parse_node());
      } else {
        ParseTree leaf;
        leaf.label = to_lower(read_token());
        node.children.push_back(std::move(leaf));
      }
      skip_space();
      if (pos_ >= text_.size()) throw ParseError("unbalanced brackets", pos_);
    }
    ++pos_;  // consume ')'
    if (node.children.empty()) {
      throw ParseError("empty constituent '" + node.label + "'", pos_);
    }
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Simplification

ParseTree merge_compounds(const ParseTree& node) {
  if (node.is_leaf()) return node;
  ParseTree out;
  out.label = node.label;
  for (const auto& child : node.children) {
    out.children.push_back(merge_compounds(child));
  }
  if (out.label != "NP") return out;

  // Merge maximal runs of adjacent noun preterminals into one leaf.
  std::vector<ParseTree> merged;
  std::size_t i = 0;
  while (i < out.children.size()) {
    std::size_t j = i;
    while (j < out.children.size() && is_preterminal(out.children[j]) &&
           is_noun_tag(out.children[j].label)) {
      ++j;
    }
    if (j - i >= 2) {
      std::string compound;
      for (std::size_t k = i; k < j; ++k) {
        if (!compound.empty()) compound += '-';
        compound += leaf_word(out.children[k]);
      }
      ParseTree noun;
      noun.label = "NN";
      ParseTree leaf;
      leaf.label = std::move(compound);
      noun.children.push_back(std::move(leaf));
      merged.push_back(std::move(noun));
      i = j;
    } else {
      merged.push_back(out.children[i]);
      ++i;
    }
  }
  out.children = std::move(merged);
  return out;
}

// Finds a descendant whose yield equals `target`, preferring the smallest
// such subtree.
const ParseTree* find_subtree_with_yield(const ParseTree& node,
                                         const std::vector<std::string>& target) {
  for (const auto& child : node.children) {
    if (const ParseTree* hit = find_subtree_with_yield(child, target)) {
      return hit;
    }
  }
  if (!node.is_leaf() && node.yield() == target) return &node;
  return nullptr;
}

ParseTree compress_prepositions(const ParseTree& node,
                                const PrepositionTable& table) {
  if (node.is_leaf()) return node;
  if (node.label == "PP") {
    std::vector<std::string> words = node.yield();
    auto [len, relation] = table.longest_prefix(words);
    if (len > 0 && len < words.size()) {
      std::vector<std::string> rest(words.begin() + len, words.end());
      if (const ParseTree* object = find_subtree_with_yield(node, rest)) {
        ParseTree out;
        out.label = "PP";
        ParseTree in;
        in.label = "IN";
        ParseTree leaf;
        leaf.label = relation;
        in.children.push_back(std::move(leaf));
        out.children.push_back(std::move(in));
        out.children.push_back(compress_prepositions(*object, table));
        return out;
      }
    }
  }
  ParseTree out;
  out.label = node.label;
  for (const auto& child : node.children) {
    out.children.push_back(compress_prepositions(child, table));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Translation to semantic trees

class Translator {
 public:
  explicit Translator(const AdjectiveLexicon& lexicon) : lexicon_(lexicon) {}

  SemTree translate(const ParseTree& node) {
    if (node.is_leaf()) return SemTree::terminal(node.label);
    if (node.label == "ROOT" || node.label == "TOP" || node.label == "S1") {
      auto kids = content_children(node);
      if (kids.size() == 1) return translate(*kids[0]);
      fail(node, "unexpected root shape");
    }
    if (node.label == "S" || node.label == "SINV") return translate_sentence(node);
    if (node.label == "NP") return translate_np(node);
    if (node.label == "PP") {
      fail(node, "prepositional phrase without an attachment");
    }
    if (is_preterminal(node)) return SemTree::terminal(leaf_word(node));
    auto kids = content_children(node);
    if (kids.size() == 1) return translate(*kids[0]);
    fail(node, "no translation rule for '" + node.label + "'");
  }

 private:
  [[noreturn]] void fail(const ParseTree& node, const std::string& why) {
    std::string words;
    for (const auto& w : node.yield()) {
      if (!words.empty()) words += ' ';
      words += w;
    }
    throw UntranslatableError(why + " over \"" + words + "\"");
  }

  std::vector<const ParseTree*> content_children(const ParseTree& node) {
    std::vector<const ParseTree*> out;
    for (const auto& child : node.children) {
      if (!child.is_leaf() && is_punct_label(child.label)) continue;
      out.push_back(&child);
    }
    return out;
  }

  bool is_existential(const ParseTree& node) {
    if (node.label == "EX") return true;
    if (node.label == "NP") {
      auto kids = content_children(node);
      return kids.size() == 1 && kids[0]->label == "EX";
    }
    return false;
  }

  // (PP (IN word) NP) -> relation name + translated object.
  std::pair<std::string, SemTree> translate_pp(const ParseTree& pp) {
    auto kids = content_children(pp);
    if (kids.size() != 2 || !is_preterminal(*kids[0]) ||
        !is_preposition_tag(kids[0]->label)) {
      fail(pp, "unsupported prepositional phrase");
    }
    return {leaf_word(*kids[0]), translate(*kids[1])};
  }

  SemTree translate_np(const ParseTree& np) {
    auto kids = content_children(np);
    if (kids.empty()) fail(np, "empty noun phrase");

    // NP with a trailing PP: relation(head, object).
    if (kids.size() == 2 && kids[1]->label == "PP") {
      auto [rel, object] = translate_pp(*kids[1]);
      return SemTree::relation(rel, {translate(*kids[0]), std::move(object)});
    }

    // Article peels off into det/indet.
    if (is_preterminal(*kids[0]) && kids[0]->label == "DT") {
      const std::string& article = leaf_word(*kids[0]);
      std::vector<const ParseTree*> rest(kids.begin() + 1, kids.end());
      if (rest.empty()) fail(np, "determiner without a head");
      SemTree core = translate_np_core(np, rest);
      if (article == "a" || article == "an") {
        return SemTree::relation("indet", {std::move(core)});
      }
      if (article == "the" || article == "this" || article == "that" ||
          article == "these" || article == "those") {
        return SemTree::relation("det", {std::move(core)});
      }
      fail(np, "unsupported determiner '" + article + "'");
    }

    if (kids.size() == 1 && kids[0]->label == "NP") return translate_np(*kids[0]);
    return translate_np_core(np, kids);
  }

  // Adjective sequence over a noun; adjectives fold outward from the noun,
  // rightmost first, so "large red wooden box" nests size over color over
  // material.
  SemTree translate_np_core(const ParseTree& np,
                            const std::vector<const ParseTree*>& kids) {
    if (kids.empty()) fail(np, "empty noun phrase");
    const ParseTree* head = kids.back();
    if (kids.size() == 1 && head->label == "NP") return translate_np(*head);
    if (!is_preterminal(*head) || !is_noun_tag(head->label)) {
      fail(np, "noun phrase without a noun head");
    }
    SemTree tree = SemTree::terminal(leaf_word(*head));
    for (std::size_t i = kids.size() - 1; i-- > 0;) {
      const ParseTree* mod = kids[i];
      if (!is_preterminal(*mod) || !is_adjective_tag(mod->label)) {
        fail(np, "unsupported noun-phrase modifier");
      }
      const std::string& adjective = leaf_word(*mod);
      tree = SemTree::relation(lexicon_.category(adjective),
                               {std::move(tree), SemTree::terminal(adjective)});
    }
    return tree;
  }

  SemTree translate_sentence(const ParseTree& s) {
    auto kids = content_children(s);
    if (kids.empty()) fail(s, "empty sentence");

    // Inverted: (S (PP ...) (VP (VBZ is) (NP ...))).
    if (kids.size() == 2 && kids[0]->label == "PP" && kids[1]->label == "VP") {
      auto vp = content_children(*kids[1]);
      if (vp.size() == 2 && is_preterminal(*vp[0]) && is_verb_tag(vp[0]->label) &&
          vp[1]->label == "NP") {
        auto [rel, object] = translate_pp(*kids[0]);
        return SemTree::relation(rel, {translate(*vp[1]), std::move(object)});
      }
      fail(s, "unsupported inverted sentence");
    }

    if (kids.size() != 2 || kids[1]->label != "VP") {
      fail(s, "unsupported sentence shape");
    }
    const ParseTree& subject = *kids[0];
    auto vp = content_children(*kids[1]);
    if (vp.empty() || !is_preterminal(*vp[0]) || !is_verb_tag(vp[0]->label)) {
      fail(s, "unsupported verb phrase");
    }

    if (is_existential(subject)) {
      // "There is a box (on a table)."
      if (vp.size() == 3 && vp[1]->label == "NP" && vp[2]->label == "PP") {
        auto [rel, object] = translate_pp(*vp[2]);
        return SemTree::relation(rel, {translate(*vp[1]), std::move(object)});
      }
      if (vp.size() == 2 && vp[1]->label == "NP") {
        return SemTree::relation("exists", {translate(*vp[1])});
      }
      fail(s, "unsupported existential sentence");
    }

    // "A box is on a table."
    if (vp.size() == 2 && vp[1]->label == "PP") {
      auto [rel, object] = translate_pp(*vp[1]);
      return SemTree::relation(rel, {translate(subject), std::move(object)});
    }
    // Predicative adjective: "the door is open".
    if (vp.size() == 2 && is_preterminal(*vp[1]) &&
        is_adjective_tag(vp[1]->label)) {
      const std::string& adjective = leaf_word(*vp[1]);
      return SemTree::relation(lexicon_.category(adjective),
                               {translate(subject), SemTree::terminal(adjective)});
    }
    // Post-verbal NP + PP: "a box sits next to the table" parses here too.
    if (vp.size() == 3 && vp[1]->label == "NP" && vp[2]->label == "PP") {
      auto [rel, object] = translate_pp(*vp[2]);
      return SemTree::relation(rel, {translate(*vp[1]), std::move(object)});
    }
    fail(s, "unsupported verb phrase shape");
  }

  const AdjectiveLexicon& lexicon_;
};

// Replaces each hyphen-merged terminal's source word sequence in the raw
// token list with the merged token, so terminals occur in the aligned tokens.
std::vector<std::string> apply_merges(const std::vector<std::string>& tokens,
                                      const SemTree& tree) {
  std::vector<std::string> out = tokens;
  for (const auto& terminal : tree.terminals()) {
    if (terminal.find('-') == std::string::npos) continue;
    std::vector<std::string> parts;
    std::stringstream ss(terminal);
    std::string part;
    while (std::getline(ss, part, '-')) parts.push_back(part);
    if (parts.size() < 2) continue;
    for (std::size_t i = 0; i + parts.size() <= out.size(); ++i) {
      if (std::equal(parts.begin(), parts.end(), out.begin() + i)) {
        out[i] = terminal;
        out.erase(out.begin() + i + 1, out.begin() + i + parts.size());
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> ParseTree::yield() const {
  std::vector<std::string> out;
  collect_yield(*this, out);
  return out;
}

void PrepositionTable::add(std::vector<std::string> words, std::string relation) {
  entries_.emplace_back(std::move(words), std::move(relation));
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.size() > b.first.size();
                   });
}

std::pair<std::size_t, std::string> PrepositionTable::longest_prefix(
    const std::vector<std::string>& words, std::size_t from) const {
  for (const auto& [phrase, relation] : entries_) {
    if (from + phrase.size() > words.size()) continue;
    if (std::equal(phrase.begin(), phrase.end(), words.begin() + from)) {
      return {phrase.size(), relation};
    }
  }
  return {0, ""};
}

PrepositionTable PrepositionTable::parse(std::string_view text) {
  PrepositionTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError("expected 'phrase<TAB>relation'", lineno);
    }
    std::vector<std::string> words = tokenize(line.substr(0, tab));
    std::string relation = line.substr(tab + 1);
    if (words.size() < 2 || relation.empty()) {
      throw FormatError("preposition entries need >=2 words and a relation",
                        lineno);
    }
    table.add(std::move(words), std::move(relation));
  }
  return table;
}

const PrepositionTable& default_preposition_table() {
  static const PrepositionTable table = [] {
    PrepositionTable t;
    auto add = [&](std::initializer_list<const char*> words, const char* rel) {
      std::vector<std::string> phrase;
      for (const char* w : words) phrase.emplace_back(w);
      t.add(std::move(phrase), rel);
    };
    add({"on", "top", "of"}, "on-top-of");
    add({"on", "the", "top", "of"}, "on-top-of");
    add({"in", "front", "of"}, "in-front-of");
    add({"to", "the", "left", "of"}, "to-left-of");
    add({"to", "the", "right", "of"}, "to-right-of");
    add({"on", "the", "left", "of"}, "to-left-of");
    add({"on", "the", "right", "of"}, "to-right-of");
    add({"in", "the", "left", "of"}, "to-left-of");
    add({"in", "the", "right", "of"}, "to-right-of");
    add({"at", "the", "left", "of"}, "to-left-of");
    add({"at", "the", "right", "of"}, "to-right-of");
    add({"next", "to"}, "next-to");
    add({"close", "to"}, "near");
    add({"in", "the", "center", "of"}, "center-of-room");
    add({"in", "the", "middle", "of"}, "center-of-room");
    add({"in", "the", "corner", "of"}, "corner-of-room");
    add({"at", "the", "corner", "of"}, "corner-of-room");
    add({"far", "away", "from"}, "far-away-from-camera");
    add({"far", "from"}, "far-away-from-camera");
    add({"in", "the", "back", "of"}, "behind");
    add({"at", "the", "back", "of"}, "behind");
    return t;
  }();
  return table;
}

void AdjectiveLexicon::add(const std::string& adjective,
                           const std::string& category) {
  categories_[adjective] = category;
}

std::string AdjectiveLexicon::category(const std::string& adjective) const {
  auto it = categories_.find(adjective);
  return it == categories_.end() ? "mod" : it->second;
}

AdjectiveLexicon AdjectiveLexicon::parse(std::string_view text) {
  AdjectiveLexicon lexicon;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError("expected 'adjective<TAB>category'", lineno);
    }
    std::string adjective = line.substr(0, tab);
    std::string category = line.substr(tab + 1);
    if (category != "color" && category != "size" && category != "material" &&
        category != "mod") {
      throw FormatError("unknown category '" + category + "'", lineno);
    }
    lexicon.add(adjective, category);
  }
  return lexicon;
}

const AdjectiveLexicon& default_adjective_lexicon() {
  static const AdjectiveLexicon lexicon = [] {
    AdjectiveLexicon l;
    for (const auto& c : color_attributes()) l.add(c, "color");
    for (const auto& s : size_attributes()) l.add(s, "size");
    for (const auto& m : material_attributes()) l.add(m, "material");
    // Common synonyms seen in indoor-scene descriptions.
    l.add("big", "size");
    l.add("huge", "size");
    l.add("tiny", "size");
    l.add("little", "size");
    l.add("long", "size");
    l.add("short", "size");
    l.add("grey", "color");
    l.add("dark", "color");
    l.add("metal", "material");
    l.add("plastic", "material");
    l.add("glass", "material");
    return l;
  }();
  return lexicon;
}

ParseTree parse_bracketed(std::string_view text) {
  return BracketedParser(text).parse();
}

ParseTree simplify(const ParseTree& tree, const PrepositionTable& prepositions) {
  return compress_prepositions(merge_compounds(tree), prepositions);
}

AlignedExample to_semtree(const ParseTree& simplified,
                          const std::vector<std::string>& tokens,
                          const AdjectiveLexicon& lexicon) {
  SemTree tree = Translator(lexicon).translate(simplified);
  std::vector<std::string> aligned = apply_merges(tokens, tree);
  for (const auto& terminal : tree.terminals()) {
    if (std::find(aligned.begin(), aligned.end(), terminal) == aligned.end()) {
      throw UntranslatableError("terminal '" + terminal +
                                "' does not occur in the sentence");
    }
  }
  return {std::move(aligned), std::move(tree)};
}

std::vector<AlignedExample> ingest_corpus(std::string_view text,
                                          IngestReport* report,
                                          const PrepositionTable& prepositions,
                                          const AdjectiveLexicon& lexicon) {
  std::vector<AlignedExample> examples;
  IngestReport local;

  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> record;
  std::size_t lineno = 0;
  std::size_t record_line = 0;

  auto flush = [&]() {
    if (record.empty()) return;
    if (record.size() != 2) {
      throw FormatError("corpus records are sentence + tree (2 lines)",
                        record_line);
    }
    ++local.records;
    const std::string& sentence = record[0];
    const std::string& tree_text = record[1];
    try {
      if (!tree_text.empty() && tree_text[0] == '(') {
        ParseTree parsed = parse_bracketed(tree_text);
        ParseTree simple = simplify(parsed, prepositions);
        examples.push_back(to_semtree(simple, tokenize(sentence), lexicon));
      } else {
        SemTree tree = parse_semtree(tree_text);
        std::vector<std::string> tokens = apply_merges(tokenize(sentence), tree);
        for (const auto& terminal : tree.terminals()) {
          if (std::find(tokens.begin(), tokens.end(), terminal) == tokens.end()) {
            throw UntranslatableError("terminal '" + terminal +
                                      "' does not occur in the sentence");
          }
        }
        examples.push_back({std::move(tokens), std::move(tree)});
      }
      ++local.translated;
    } catch (const UntranslatableError&) {
      ++local.untranslatable;
    }
    record.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
    } else {
      if (record.empty()) record_line = lineno;
      record.push_back(line);
    }
  }
  flush();

  if (report) *report += local;
  return examples;
}

}  // namespace scenedesc

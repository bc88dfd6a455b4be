#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "scenedesc/errors.hpp"
#include "scenedesc/semtree.hpp"

namespace scenedesc {

// Penn-style constituency tree. A leaf carries a (lowercased) word in
// `label` and has no children; internal nodes carry the syntactic category.
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;

  bool is_leaf() const { return children.empty(); }
  // Leaf words, left to right.
  std::vector<std::string> yield() const;

  friend bool operator==(const ParseTree&, const ParseTree&) = default;
};

// A sentence paired with the semantic tree constructed on it. Tokens are
// lowercased sentence words with noun-compound merges applied, so every
// terminal of the tree occurs in `tokens`.
struct AlignedExample {
  std::vector<std::string> tokens;
  SemTree tree;
};

// Multiword prepositions collapsed during simplification, mapping a word
// sequence to a relation name ("on top of" -> on-top-of). Longest match wins.
class PrepositionTable {
 public:
  void add(std::vector<std::string> words, std::string relation);
  // Longest entry matching a prefix of `words` starting at `from`;
  // returns the matched length and relation, or length 0.
  std::pair<std::size_t, std::string> longest_prefix(
      const std::vector<std::string>& words, std::size_t from = 0) const;
  std::size_t size() const { return entries_.size(); }

  // Lines of "phrase words<TAB>relation-name"; '#' comments and blank lines
  // are skipped. Throws FormatError.
  static PrepositionTable parse(std::string_view text);

 private:
  // Keyed by phrase, longest first.
  std::vector<std::pair<std::vector<std::string>, std::string>> entries_;
};

const PrepositionTable& default_preposition_table();

// Assigns adjectives to an attribute category (color/size/material);
// adjectives not in the lexicon translate to a generic mod relation.
class AdjectiveLexicon {
 public:
  void add(const std::string& adjective, const std::string& category);
  // "color", "size", "material", or "mod" for unknown adjectives.
  std::string category(const std::string& adjective) const;

  // Lines of "adjective<TAB>category". Throws FormatError.
  static AdjectiveLexicon parse(std::string_view text);

 private:
  std::map<std::string, std::string> categories_;
};

const AdjectiveLexicon& default_adjective_lexicon();

// Parses a bracketed s-expression like "(NP (DT a) (NN box))"; leaf words
// are lowercased. Throws ParseError on unbalanced brackets or empty
// constituents.
ParseTree parse_bracketed(std::string_view text);

// Merges multiword noun compounds under an NP into a single hyphen-joined
// leaf and collapses multiword prepositions from the table into a single
// preposition leaf: (PP (IN on) (NP (NP (NN top)) (PP (IN of) X))) becomes
// (PP (IN on-top-of) X). Idempotent.
ParseTree simplify(const ParseTree& tree,
                   const PrepositionTable& prepositions = default_preposition_table());

// Translates a simplified parse tree into a semantic tree and aligns it with
// the sentence tokens. Throws UntranslatableError when no rule covers a
// subtree; callers skip and count such examples.
AlignedExample to_semtree(const ParseTree& simplified,
                          const std::vector<std::string>& tokens,
                          const AdjectiveLexicon& lexicon = default_adjective_lexicon());

struct IngestReport {
  std::size_t records = 0;
  std::size_t translated = 0;
  std::size_t untranslatable = 0;

  IngestReport& operator+=(const IngestReport& other) {
    records += other.records;
    translated += other.translated;
    untranslatable += other.untranslatable;
    return *this;
  }
};

// Reads a corpus: blank-line separated records of two lines, the raw
// sentence followed by either a bracketed parse (line starts with '(') or a
// canonical semantic-tree serialization. Untranslatable records are skipped
// and counted; malformed records throw.
std::vector<AlignedExample> ingest_corpus(
    std::string_view text, IngestReport* report = nullptr,
    const PrepositionTable& prepositions = default_preposition_table(),
    const AdjectiveLexicon& lexicon = default_adjective_lexicon());

}  // namespace scenedesc

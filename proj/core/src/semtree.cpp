#include "scenedesc/semtree.hpp"

#include <cctype>

namespace scenedesc {

namespace {

bool valid_label(const std::string& label) {
  if (label.empty()) return false;
  for (char c : label) {
    if (c == '(' || c == ')' || c == ',' ||
        std::isspace(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

class SemTreeParser {
 public:
  explicit SemTreeParser(std::string_view text) : text_(text) {}

  SemTree parse() {
    SemTree tree = parse_tree();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError("trailing input after tree", pos_);
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
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' || c == ')' || c == ',' ||
          std::isspace(static_cast<unsigned char>(c))) {
        break;
      }
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a token", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  SemTree parse_tree() {
    std::string token = read_token();
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '(') {
      return SemTree::terminal(std::move(token));
    }
    ++pos_;  // consume '('
    std::vector<SemTree> children;
    while (true) {
      children.push_back(parse_tree());
      skip_space();
      if (pos_ >= text_.size()) {
        throw ParseError("unbalanced parenthesis", pos_);
      }
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      throw ParseError("expected ',' or ')'", pos_);
    }
    return SemTree::relation(std::move(token), std::move(children));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_terminals(const SemTree& tree, std::vector<std::string>& out) {
  if (tree.is_terminal()) {
    out.push_back(tree.label());
    return;
  }
  for (const auto& child : tree.children()) collect_terminals(child, out);
}

void print_to(const SemTree& tree, std::string& out) {
  out += tree.label();
  if (tree.is_terminal()) return;
  out += '(';
  bool first = true;
  for (const auto& child : tree.children()) {
    if (!first) out += ", ";
    first = false;
    print_to(child, out);
  }
  out += ')';
}

}  // namespace

SemTree SemTree::terminal(std::string word) {
  if (!valid_label(word)) {
    throw Error("invalid terminal word '" + word + "'");
  }
  SemTree t;
  t.label_ = std::move(word);
  return t;
}

SemTree SemTree::relation(std::string name, std::vector<SemTree> children) {
  if (!valid_label(name)) {
    throw Error("invalid relation name '" + name + "'");
  }
  if (children.empty()) {
    throw Error("relation node '" + name + "' needs at least one child");
  }
  SemTree t;
  t.label_ = std::move(name);
  t.children_ = std::move(children);
  return t;
}

std::vector<std::string> SemTree::terminals() const {
  std::vector<std::string> out;
  collect_terminals(*this, out);
  return out;
}

SemTree parse_semtree(std::string_view text) {
  return SemTreeParser(text).parse();
}

std::string print_semtree(const SemTree& tree) {
  std::string out;
  print_to(tree, out);
  return out;
}

SemTree make_tree(const ObjectInstance& obj, bool use_attributes,
                  bool as_pronoun, RandomSource& rng) {
  if (as_pronoun) return SemTree::terminal("it");

  SemTree core = SemTree::terminal(obj.class_label);
  if (use_attributes && !obj.attributes.empty()) {
    auto pick = [&](const std::set<std::string>& category) -> std::string {
      std::vector<std::string> present;
      for (const auto& attr : obj.attributes) {
        if (category.count(attr)) present.push_back(attr);
      }
      if (present.empty()) return "";
      return present[rng.next_index(present.size())];
    };
    // Innermost material, then color, then size: "large red wooden box".
    if (std::string m = pick(material_attributes()); !m.empty()) {
      core = SemTree::relation("material", {std::move(core), SemTree::terminal(m)});
    }
    if (std::string c = pick(color_attributes()); !c.empty()) {
      core = SemTree::relation("color", {std::move(core), SemTree::terminal(c)});
    }
    if (std::string s = pick(size_attributes()); !s.empty()) {
      core = SemTree::relation("size", {std::move(core), SemTree::terminal(s)});
    }
  }
  return SemTree::relation("indet", {std::move(core)});
}

}  // namespace scenedesc

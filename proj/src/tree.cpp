#include "typovec/tree.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "typovec/error.hpp"
#include "typovec/io.hpp"

namespace typovec {

TypologyTree::NodeId TypologyTree::add_node(std::string label, std::optional<NodeId> parent,
                                            std::optional<double> length) {
  if (nodes_.empty() && parent) throw Error(Errc::invalid_argument, "first node must be the root");
  if (!nodes_.empty() && !parent) throw Error(Errc::invalid_argument, "tree already has a root");
  if (parent && *parent >= nodes_.size()) throw Error(Errc::invalid_argument, "unknown parent node");
  const NodeId id = nodes_.size();
  nodes_.push_back(Node{std::move(label), {}, parent, length});
  if (parent) nodes_[*parent].children.push_back(id);
  return id;
}

std::vector<TypologyTree::NodeId> TypologyTree::leaves() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].children.empty()) out.push_back(i);
  }
  return out;
}

std::vector<std::string> TypologyTree::leaf_labels() const {
  if (nodes_.empty()) return {};
  return leaf_labels_under(root());
}

std::vector<std::string> TypologyTree::leaf_labels_under(NodeId id) const {
  std::vector<std::string> out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    const Node& n = nodes_.at(cur);
    if (n.children.empty()) out.push_back(n.label);
    stack.insert(stack.end(), n.children.begin(), n.children.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<TypologyTree::NodeId> TypologyTree::find_leaf(std::string_view label) const {
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].children.empty() && nodes_[i].label == label) return i;
  }
  return std::nullopt;
}

std::size_t TypologyTree::depth(NodeId id) const {
  std::size_t d = 0;
  for (auto p = nodes_.at(id).parent; p; p = nodes_[*p].parent) ++d;
  return d;
}

std::string TypologyTree::min_leaf(NodeId id) const {
  const Node& n = nodes_.at(id);
  if (n.children.empty()) return n.label;
  std::string best;
  bool first = true;
  for (NodeId c : n.children) {
    std::string m = min_leaf(c);
    if (first || m < best) best = std::move(m);
    first = false;
  }
  return best;
}

void TypologyTree::validate() const {
  if (nodes_.empty()) throw Error(Errc::invalid_argument, "tree is empty");
  std::set<std::string> seen;
  for (NodeId id : leaves()) {
    const std::string& label = nodes_[id].label;
    if (label.empty()) throw Error(Errc::invalid_argument, "tree has an unlabeled leaf");
    if (!seen.insert(label).second) throw Error(Errc::invalid_argument, "duplicate leaf label '" + label + "'");
  }
}

TypologyTree TypologyTree::subtree(NodeId id) const {
  TypologyTree out;
  std::function<void(NodeId, std::optional<NodeId>)> copy = [&](NodeId src, std::optional<NodeId> parent) {
    const Node& n = nodes_.at(src);
    const NodeId dst = out.add_node(n.label, parent, parent ? n.length : std::nullopt);
    for (NodeId c : n.children) copy(c, dst);
  };
  copy(id, std::nullopt);
  return out;
}

namespace {

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  TypologyTree parse() {
    skip();
    if (pos_ >= text_.size()) fail("empty input");
    parse_subtree(std::nullopt);
    skip();
    if (pos_ >= text_.size() || text_[pos_] != ';') {
      if (pos_ < text_.size() && text_[pos_] == ')') fail("unbalanced ')'");
      fail("expected ';'");
    }
    ++pos_;
    skip();
    if (pos_ != text_.size()) fail("trailing characters after ';'");
    tree_.validate();
    return std::move(tree_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::parse, "newick parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == '[') {
        const std::size_t close = text_.find(']', pos_);
        if (close == std::string_view::npos) fail("unterminated comment");
        pos_ = close + 1;
      } else {
        return;
      }
    }
  }

  static bool is_delimiter(char c) {
    return c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == '[' || c == ']' ||
           c == '\'' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }

  std::string parse_label() {
    skip();
    std::string label;
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      for (;;) {
        if (pos_ >= text_.size()) fail("unterminated quoted label");
        if (text_[pos_] == '\'') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
            label.push_back('\'');
            pos_ += 2;
            continue;
          }
          ++pos_;
          return label;
        }
        label.push_back(text_[pos_++]);
      }
    }
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) label.push_back(text_[pos_++]);
    return label;
  }

  std::optional<double> parse_length() {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != ':') return std::nullopt;
    ++pos_;
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (start == pos_ || res.ec != std::errc() || res.ptr != text_.data() + pos_) {
      pos_ = start;
      fail("bad branch length");
    }
    return value;
  }

  void parse_subtree(std::optional<TypologyTree::NodeId> parent) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      const auto id = tree_.add_node("", parent);
      for (;;) {
        parse_subtree(id);
        skip();
        if (pos_ >= text_.size()) fail("unbalanced '(': missing ')'");
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        if (text_[pos_] == ';') fail("unbalanced '(': missing ')'");
        fail(std::string("unexpected '") + text_[pos_] + "'");
      }
      set_label_and_length(id);
      return;
    }
    const std::size_t start = pos_;
    const auto id = tree_.add_node("", parent);
    set_label_and_length(id);
    if (tree_.node(id).label.empty()) {
      pos_ = start;
      fail("leaf without a label");
    }
  }

  void set_label_and_length(TypologyTree::NodeId id) {
    tree_.set_label(id, parse_label());
    tree_.set_length(id, parse_length());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  TypologyTree tree_;
};

bool needs_quotes(const std::string& label) {
  if (label.empty()) return false;
  return std::any_of(label.begin(), label.end(), [](char c) {
    return c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == '[' || c == ']' ||
           c == '\'' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

void write_label(std::string& out, const std::string& label) {
  if (!needs_quotes(label)) {
    out += label;
    return;
  }
  out.push_back('\'');
  for (char c : label) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
}

// Children of every node sorted by (min leaf, label) so output is canonical.
std::vector<std::vector<TypologyTree::NodeId>> canonical_children(const TypologyTree& tree) {
  std::vector<std::string> key(tree.size());
  // Post-order over the array: children always have larger ids than parents
  // for trees built top-down, but do not rely on it.
  std::function<const std::string&(TypologyTree::NodeId)> min_of = [&](TypologyTree::NodeId id) -> const std::string& {
    if (!key[id].empty() || tree.is_leaf(id)) {
      if (tree.is_leaf(id)) key[id] = tree.node(id).label;
      return key[id];
    }
    bool first = true;
    for (auto c : tree.node(id).children) {
      const std::string& m = min_of(c);
      if (first || m < key[id]) key[id] = m;
      first = false;
    }
    return key[id];
  };
  std::vector<std::vector<TypologyTree::NodeId>> out(tree.size());
  for (TypologyTree::NodeId id = 0; id < tree.size(); ++id) {
    out[id] = tree.node(id).children;
    for (auto c : out[id]) min_of(c);
    std::stable_sort(out[id].begin(), out[id].end(), [&](auto a, auto b) {
      if (key[a] != key[b]) return key[a] < key[b];
      return tree.node(a).label < tree.node(b).label;
    });
  }
  return out;
}

}  // namespace

TypologyTree parse_newick(std::string_view text) { return NewickParser(text).parse(); }

std::string write_newick(const TypologyTree& tree, std::string_view comment) {
  if (tree.empty()) throw Error(Errc::invalid_argument, "cannot write an empty tree");
  const auto order = canonical_children(tree);
  std::string out;
  if (!comment.empty()) out += "[" + std::string(comment) + "]";
  std::function<void(TypologyTree::NodeId)> emit = [&](TypologyTree::NodeId id) {
    const auto& node = tree.node(id);
    if (!order[id].empty()) {
      out.push_back('(');
      for (std::size_t i = 0; i < order[id].size(); ++i) {
        if (i) out.push_back(',');
        emit(order[id][i]);
      }
      out.push_back(')');
    }
    write_label(out, node.label);
    if (node.length) out += ":" + io::format_exact(*node.length);
  };
  emit(tree.root());
  out.push_back(';');
  return out;
}

TypologyTree canonicalize(const TypologyTree& tree) {
  if (tree.empty()) return {};
  const auto order = canonical_children(tree);
  TypologyTree out;
  std::function<void(TypologyTree::NodeId, std::optional<TypologyTree::NodeId>)> copy =
      [&](TypologyTree::NodeId src, std::optional<TypologyTree::NodeId> parent) {
        const auto& n = tree.node(src);
        const auto dst = out.add_node(n.label, parent, n.length);
        for (auto c : order[src]) copy(c, dst);
      };
  copy(tree.root(), std::nullopt);
  return out;
}

bool same_tree(const TypologyTree& a, const TypologyTree& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  const TypologyTree ca = canonicalize(a);
  const TypologyTree cb = canonicalize(b);
  if (ca.size() != cb.size()) return false;
  // Canonical copies are laid out in the same pre-order, so compare by id.
  for (TypologyTree::NodeId id = 0; id < ca.size(); ++id) {
    const auto& na = ca.node(id);
    const auto& nb = cb.node(id);
    if (na.label != nb.label || na.children != nb.children) return false;
  }
  return true;
}

TypologyTree prune_tree(const TypologyTree& tree, const std::set<std::string>& keep) {
  tree.validate();
  if (keep.empty()) throw Error(Errc::invalid_argument, "prune needs at least one leaf to keep");
  const auto labels = tree.leaf_labels();
  for (const auto& k : keep) {
    if (!std::binary_search(labels.begin(), labels.end(), k)) {
      throw Error(Errc::invalid_argument, "cannot keep unknown leaf '" + k + "'");
    }
  }
  // Surviving children per node (empty subtrees removed).
  std::vector<std::vector<TypologyTree::NodeId>> kept(tree.size());
  std::function<bool(TypologyTree::NodeId)> survives = [&](TypologyTree::NodeId id) {
    const auto& n = tree.node(id);
    if (n.children.empty()) return keep.count(n.label) > 0;
    for (auto c : n.children) {
      if (survives(c)) kept[id].push_back(c);
    }
    return !kept[id].empty();
  };
  survives(tree.root());

  // A node is spliced out when pruning left it with a single child.
  const auto spliced = [&](TypologyTree::NodeId id) {
    return kept[id].size() == 1 && tree.node(id).children.size() > 1;
  };
  TypologyTree out;
  std::function<void(TypologyTree::NodeId, std::optional<TypologyTree::NodeId>)> copy =
      [&](TypologyTree::NodeId src, std::optional<TypologyTree::NodeId> parent) {
        while (spliced(src)) src = kept[src].front();
        const auto& n = tree.node(src);
        const auto dst = out.add_node(n.label, parent, parent ? n.length : std::nullopt);
        for (auto c : kept[src]) copy(c, dst);
      };
  copy(tree.root(), std::nullopt);
  return out;
}

TypologyTree suppress_unary(const TypologyTree& tree) {
  if (tree.empty()) return {};
  TypologyTree out;
  std::function<void(TypologyTree::NodeId, std::optional<TypologyTree::NodeId>)> copy =
      [&](TypologyTree::NodeId src, std::optional<TypologyTree::NodeId> parent) {
        while (tree.node(src).children.size() == 1) src = tree.node(src).children.front();
        const auto& n = tree.node(src);
        const auto dst = out.add_node(n.label, parent, parent ? n.length : std::nullopt);
        for (auto c : n.children) copy(c, dst);
      };
  copy(tree.root(), std::nullopt);
  return out;
}

nlohmann::json tree_to_json(const TypologyTree& tree) {
  if (tree.empty()) return nullptr;
  const auto order = canonical_children(tree);
  std::function<nlohmann::json(TypologyTree::NodeId, std::size_t)> dump =
      [&](TypologyTree::NodeId id, std::size_t depth) {
        nlohmann::json j;
        j["label"] = tree.node(id).label;
        j["depth"] = depth;
        if (!order[id].empty()) {
          j["children"] = nlohmann::json::array();
          for (auto c : order[id]) j["children"].push_back(dump(c, depth + 1));
        }
        return j;
      };
  return dump(tree.root(), 0);
}

}  // namespace typovec

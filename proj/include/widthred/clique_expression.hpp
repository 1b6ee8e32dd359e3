#pragma once

// k-expressions: Create / Union / Join / Rename ASTs, a whitespace-insensitive
// text format, and a bottom-up evaluator producing the labeled graph.
//
//   v(i,name)     creation of vertex `name` with label i
//   union(E,E)    disjoint union (right side gets fresh vertex identifiers)
//   eta(i,j,E)    join every label-i vertex with every label-j vertex, i != j
//   rho(i,j,E)    rename label i to label j
//
// Labels are integers in [1..label_budget].

#include <cctype>

#include "widthred/core.hpp"

namespace widthred {

struct CweNode {
  enum class Kind { Create, Union, Join, Rename };
  Kind kind = Kind::Create;
  int label_i = 0;
  int label_j = 0;      // Join: second class; Rename: target label
  std::string name;     // Create only
  int left = -1;
  int right = -1;       // Union only
};

struct CliqueExpression {
  std::vector<CweNode> nodes;
  int root = -1;
  int label_budget = 0;

  int add(CweNode n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }
  int create(int label, std::string name) {
    return add({CweNode::Kind::Create, label, 0, std::move(name), -1, -1});
  }
  int unite(int l, int r) { return add({CweNode::Kind::Union, 0, 0, "", l, r}); }
  int join(int i, int j, int child) {
    if (i == j) fail("k-expression: eta requires two distinct labels");
    return add({CweNode::Kind::Join, i, j, "", child, -1});
  }
  int rename(int i, int j, int child) {
    return add({CweNode::Kind::Rename, i, j, "", child, -1});
  }
};

struct LabeledGraph {
  UGraph graph;                      // vertex ids in Create order (left-to-right)
  std::vector<int> labels;           // final label per vertex
  std::vector<std::string> names;
  int max_live_labels = 0;           // max distinct labels over all subexpression values
  int distinct_labels_used = 0;      // distinct label ids appearing in the expression
};

// Iterative post-order evaluation (synthesized expressions nest deeply).
inline LabeledGraph evaluate_kexpression(const CliqueExpression &expr) {
  if (expr.root < 0 || expr.root >= static_cast<int>(expr.nodes.size()))
    fail("evaluate: malformed expression (bad root)");
  LabeledGraph out;

  auto check_label = [&](int l) {
    if (l < 1 || l > expr.label_budget)
      fail("evaluate: label " + std::to_string(l) + " outside budget [1.." +
           std::to_string(expr.label_budget) + "]");
  };

  struct Value {
    std::map<int, std::vector<int>> classes;  // label -> vertices
  };
  std::vector<std::optional<Value>> values(expr.nodes.size());
  std::set<int> labels_seen;

  // explicit post-order: (node, stage)
  std::vector<std::pair<int, int>> stack{{expr.root, 0}};
  std::vector<char> visited(expr.nodes.size(), 0);
  while (!stack.empty()) {
    auto [i, stage] = stack.back();
    stack.pop_back();
    const CweNode &nd = expr.nodes[static_cast<size_t>(i)];
    if (stage == 0) {
      if (visited[static_cast<size_t>(i)]) fail("evaluate: expression is not a tree");
      visited[static_cast<size_t>(i)] = 1;
      stack.push_back({i, 1});
      if (nd.kind != CweNode::Kind::Create) {
        if (nd.left < 0) fail("evaluate: missing operand");
        stack.push_back({nd.left, 0});
        if (nd.kind == CweNode::Kind::Union) {
          if (nd.right < 0) fail("evaluate: union needs two operands");
          stack.push_back({nd.right, 0});
        }
      }
      continue;
    }
    Value val;
    switch (nd.kind) {
      case CweNode::Kind::Create: {
        check_label(nd.label_i);
        labels_seen.insert(nd.label_i);
        int v = out.graph.num_vertices++;
        out.labels.push_back(nd.label_i);
        out.names.push_back(nd.name);
        val.classes[nd.label_i] = {v};
        break;
      }
      case CweNode::Kind::Union: {
        val = std::move(*values[static_cast<size_t>(nd.left)]);
        Value &r = *values[static_cast<size_t>(nd.right)];
        for (auto &[l, vs] : r.classes) {
          auto &dst = val.classes[l];
          dst.insert(dst.end(), vs.begin(), vs.end());
        }
        values[static_cast<size_t>(nd.left)].reset();
        values[static_cast<size_t>(nd.right)].reset();
        break;
      }
      case CweNode::Kind::Join: {
        check_label(nd.label_i);
        check_label(nd.label_j);
        labels_seen.insert(nd.label_i);
        labels_seen.insert(nd.label_j);
        val = std::move(*values[static_cast<size_t>(nd.left)]);
        values[static_cast<size_t>(nd.left)].reset();
        auto a = val.classes.find(nd.label_i);
        auto b = val.classes.find(nd.label_j);
        if (a != val.classes.end() && b != val.classes.end())
          for (int u : a->second)
            for (int v : b->second) out.graph.edges.emplace_back(u, v);
        break;
      }
      case CweNode::Kind::Rename: {
        check_label(nd.label_i);
        check_label(nd.label_j);
        labels_seen.insert(nd.label_i);
        labels_seen.insert(nd.label_j);
        val = std::move(*values[static_cast<size_t>(nd.left)]);
        values[static_cast<size_t>(nd.left)].reset();
        auto it = val.classes.find(nd.label_i);
        if (it != val.classes.end()) {
          auto &dst = val.classes[nd.label_j];
          dst.insert(dst.end(), it->second.begin(), it->second.end());
          val.classes.erase(nd.label_i);
        }
        break;
      }
    }
    int live = 0;
    for (auto &[l, vs] : val.classes) live += vs.empty() ? 0 : 1;
    out.max_live_labels = std::max(out.max_live_labels, live);
    values[static_cast<size_t>(i)] = std::move(val);
  }

  Value &top = *values[static_cast<size_t>(expr.root)];
  for (auto &[l, vs] : top.classes)
    for (int v : vs) out.labels[static_cast<size_t>(v)] = l;
  out.graph.normalize();
  out.distinct_labels_used = static_cast<int>(labels_seen.size());
  check_valid(out.graph);
  return out;
}

// ---------------------------------------------------------------------------
// text format
// ---------------------------------------------------------------------------

inline void write_cwe(std::ostream &os, const CliqueExpression &expr) {
  os << "k " << expr.label_budget << "\n";
  // iterative print, (node, stage)
  std::string buf;
  std::vector<std::pair<int, int>> stack{{expr.root, 0}};
  while (!stack.empty()) {
    auto [i, stage] = stack.back();
    stack.pop_back();
    const CweNode &nd = expr.nodes[static_cast<size_t>(i)];
    switch (nd.kind) {
      case CweNode::Kind::Create:
        buf += "v(" + std::to_string(nd.label_i) + "," + nd.name + ")";
        break;
      case CweNode::Kind::Union:
        if (stage == 0) {
          buf += "union(";
          stack.push_back({i, 1});
          stack.push_back({nd.left, 0});
        } else if (stage == 1) {
          buf += ",";
          stack.push_back({i, 2});
          stack.push_back({nd.right, 0});
        } else {
          buf += ")";
        }
        break;
      case CweNode::Kind::Join:
      case CweNode::Kind::Rename:
        if (stage == 0) {
          buf += (nd.kind == CweNode::Kind::Join ? "eta(" : "rho(");
          buf += std::to_string(nd.label_i) + "," + std::to_string(nd.label_j) + ",";
          stack.push_back({i, 1});
          stack.push_back({nd.left, 0});
        } else {
          buf += ")";
        }
        break;
    }
  }
  os << buf << "\n";
}

inline CliqueExpression read_cwe(std::istream &is) {
  std::string text, line;
  int declared_budget = -1;
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] == 'c') continue;  // comment
    std::istringstream ls(line);
    std::string tok;
    if (ls >> tok && tok == "k") {
      ls >> declared_budget;
      continue;
    }
    text += line;
  }
  CliqueExpression expr;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail("cwe parse: expected '" + std::string(1, c) + "' at offset " + std::to_string(pos));
    ++pos;
  };
  auto parse_int = [&]() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("cwe parse: expected integer at offset " + std::to_string(start));
    return std::stoi(text.substr(start, pos - start));
  };
  auto parse_word = [&]() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '.' || text[pos] == '-' || text[pos] == '+'))
      ++pos;
    return text.substr(start, pos - start);
  };

  // recursive descent with an explicit continuation stack is overkill here:
  // input nesting is bounded by the expression depth, so plain recursion via
  // a lambda is fine for files; deep synthesized expressions stay in memory.
  std::function<int()> parse_expr = [&]() -> int {
    std::string head = parse_word();
    expect('(');
    int id;
    if (head == "v") {
      int label = parse_int();
      expect(',');
      std::string name = parse_word();
      id = expr.create(label, name);
    } else if (head == "union") {
      int l = parse_expr();
      expect(',');
      int r = parse_expr();
      id = expr.unite(l, r);
    } else if (head == "eta" || head == "rho") {
      int i = parse_int();
      expect(',');
      int j = parse_int();
      expect(',');
      int child = parse_expr();
      id = head == "eta" ? expr.join(i, j, child) : expr.rename(i, j, child);
    } else {
      fail("cwe parse: unknown operation '" + head + "'");
    }
    expect(')');
    return id;
  };
  expr.root = parse_expr();
  skip_ws();
  if (pos != text.size()) fail("cwe parse: trailing input at offset " + std::to_string(pos));
  int max_label = 0;
  for (const CweNode &nd : expr.nodes) max_label = std::max({max_label, nd.label_i, nd.label_j});
  expr.label_budget = declared_budget > 0 ? declared_budget : max_label;
  return expr;
}

// 2-label complete graph: eta(2,1, v2 + rho(2->1, ...)) chain.
inline CliqueExpression complete_graph_expression(int n) {
  CliqueExpression expr;
  expr.label_budget = n >= 2 ? 2 : 1;
  if (n <= 0) fail("complete_graph_expression: need at least one vertex");
  int acc = expr.create(1, "v1");
  for (int v = 2; v <= n; ++v) {
    int nv = expr.create(2, "v" + std::to_string(v));
    acc = expr.join(2, 1, expr.unite(acc, nv));
    if (v < n) acc = expr.rename(2, 1, acc);
  }
  expr.root = acc;
  return expr;
}

}  // namespace widthred

#include "spqo/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "pqtree_internal.hpp"
#include "spqo/errors.hpp"

namespace spqo {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InputError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field `") + key + "`");
  return j.at(key);
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Normal:
      return "normal";
    case Variant::Null:
      return "null";
    case Variant::Empty:
      return "empty";
  }
  return "normal";
}

Json number(double x) {
  if (std::floor(x) == x && std::fabs(x) < 9.0e15) return Json(static_cast<long long>(x));
  return Json(x);
}

}  // namespace

Json tree_to_json(const PQTree& t) {
  Json j;
  j["variant"] = variant_name(t.variant());
  Json nodes = Json::array();
  for (std::size_t v = 0; v < t.nodes().size(); ++v) {
    const auto& n = t.nodes()[v];
    Json node;
    node["id"] = v;
    node["kind"] = n.kind == NodeKind::P ? "P" : n.kind == NodeKind::Q ? "Q" : "leaf";
    if (n.kind == NodeKind::Leaf) node["label"] = t.labels()[static_cast<std::size_t>(n.leaf)];
    node["neighbors"] = n.nbrs;
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  if (t.variant() != Variant::Normal) j["labels"] = t.labels();
  return j;
}

PQTree tree_from_json(const Json& j) {
  try {
    const std::string variant = j.contains("variant") ? j.at("variant").get<std::string>() : "normal";
    if (variant == "null") return PQTree::null_tree(j.value("labels", std::vector<Label>{}));
    if (variant == "empty") return PQTree{};
    if (variant != "normal") bad("unknown tree variant " + variant);
    const auto& nodes = field(j, "nodes");
    if (!nodes.is_array() || nodes.empty()) bad("tree without nodes");
    std::map<long long, int> index;
    for (const auto& n : nodes) {
      long long id = field(n, "id").get<long long>();
      if (!index.emplace(id, static_cast<int>(index.size())).second) bad("duplicate node id " + std::to_string(id));
    }
    std::vector<Label> labels;
    for (const auto& n : nodes)
      if (field(n, "kind").get<std::string>() == "leaf") labels.push_back(field(n, "label").get<std::string>());
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) bad("duplicate leaf label");
    RawTree raw;
    std::size_t halfEdges = 0;
    for (const auto& n : nodes) {
      RawTree::Node node;
      const auto kind = field(n, "kind").get<std::string>();
      if (kind == "P") {
        node.kind = NodeKind::P;
      } else if (kind == "Q") {
        node.kind = NodeKind::Q;
      } else if (kind == "leaf") {
        node.kind = NodeKind::Leaf;
        const auto label = field(n, "label").get<std::string>();
        node.leaf = static_cast<int>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
      } else {
        bad("unknown node kind " + kind);
      }
      for (const auto& w : field(n, "neighbors")) {
        auto it = index.find(w.get<long long>());
        if (it == index.end()) bad("neighbor " + std::to_string(w.get<long long>()) + " is not a node");
        node.nbrs.push_back(it->second);
      }
      halfEdges += node.nbrs.size();
      if (node.kind == NodeKind::Leaf && node.nbrs.size() > 1) bad("leaf " + labels[static_cast<std::size_t>(node.leaf)] + " has several neighbors");
      raw.nodes.push_back(std::move(node));
    }
    // symmetric adjacency, n - 1 edges and connected means a tree
    for (std::size_t v = 0; v < raw.nodes.size(); ++v)
      for (int w : raw.nodes[v].nbrs) {
        const auto& back = raw.nodes[static_cast<std::size_t>(w)].nbrs;
        if (std::count(back.begin(), back.end(), static_cast<int>(v)) != 1) bad("asymmetric neighbor lists");
      }
    if (halfEdges != 2 * (raw.nodes.size() - 1)) bad("node graph is not a tree");
    std::vector<char> seen(raw.nodes.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : raw.nodes[static_cast<std::size_t>(v)].nbrs)
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached != raw.nodes.size()) bad("node graph is not connected");
    return canonicalize(raw, labels, nullptr).tree;
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed tree: ") + e.what());
  }
}

Json instance_to_json(const Instance& d) {
  Json j;
  j["trees"] = Json::array();
  for (const auto& t : d.trees) j["trees"].push_back(tree_to_json(t));
  j["arcs"] = Json::array();
  for (const auto& a : d.arcs) {
    Json arc;
    arc["source"] = a.source;
    arc["target"] = a.target;
    Json map = Json::object();
    for (const auto& [from, to] : a.map) map[from] = to;
    arc["map"] = std::move(map);
    arc["reversing"] = a.reversing;
    j["arcs"].push_back(std::move(arc));
  }
  return j;
}

Instance instance_from_json(const Json& j) {
  try {
    std::vector<PQTree> trees;
    for (const auto& t : field(j, "trees")) trees.push_back(tree_from_json(t));
    std::vector<Arc> arcs;
    for (const auto& a : field(j, "arcs")) {
      Arc arc;
      arc.source = field(a, "source").get<int>();
      arc.target = field(a, "target").get<int>();
      for (const auto& [from, to] : field(a, "map").items()) arc.map[from] = to.get<std::string>();
      arc.reversing = a.value("reversing", false);
      arcs.push_back(std::move(arc));
    }
    return build_instance(std::move(trees), std::move(arcs));
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed instance: ") + e.what());
  }
}

Json solve_result_to_json(const SolveResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  if (r.status == SolveStatus::Infeasible) j["reason"] = to_string(r.reason);
  if (r.status == SolveStatus::NotSupported) j["reason"] = r.message;
  Json orders = Json::object();
  Json q = Json::object();
  if (r.status == SolveStatus::Feasible) {
    for (const auto& [tree, order] : r.solution.orders) orders[std::to_string(tree)] = order.seq();
    for (const auto& [key, keep] : r.solution.qAssignment)
      q[std::to_string(key.first) + ":" + std::to_string(key.second)] = keep;
  }
  j["orders"] = std::move(orders);
  j["qAssignment"] = std::move(q);
  return j;
}

Json rotation_to_json(const Graph& g, const RotationSystem& rot) {
  Json j = Json::object();
  for (int v = 0; v < g.vertex_count(); ++v) j[g.names[static_cast<std::size_t>(v)]] = rot.at(static_cast<std::size_t>(v));
  return j;
}

Json interval_rep_to_json(const IntervalRep& rep) {
  Json j = Json::object();
  for (const auto& [name, iv] : rep) j[name] = Json::array({number(iv.left), number(iv.right)});
  return j;
}

IntervalRep interval_rep_from_json(const Json& j) {
  if (!j.is_object()) bad("interval representation must be an object");
  IntervalRep rep;
  try {
    for (const auto& [name, iv] : j.items()) {
      if (!iv.is_array() || iv.size() != 2) bad("interval of " + name + " must be [left, right]");
      Interval i{iv[0].get<double>(), iv[1].get<double>()};
      if (i.left > i.right) bad("interval of " + name + " has left > right");
      rep[name] = i;
    }
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed interval representation: ") + e.what());
  }
  return rep;
}

std::map<int, PQTree> constraints_from_json(const Json& j, const Graph& g) {
  if (!j.is_object()) bad("constraints must be an object keyed by vertex");
  std::map<int, PQTree> out;
  for (const auto& [name, tree] : j.items()) {
    int v = g.find(name);
    if (v < 0) bad("constraint for unknown vertex " + name);
    out[v] = tree_from_json(tree);
  }
  return out;
}

CyclicOrderingInput cyclic_ordering_from_json(const Json& j) {
  CyclicOrderingInput in;
  try {
    in.leaves = field(j, "leaves").get<std::vector<Label>>();
    for (const auto& t : field(j, "triples")) {
      auto v = t.get<std::vector<Label>>();
      if (v.size() != 3) bad("triples need three labels");
      in.triples.push_back({v[0], v[1], v[2]});
    }
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed cyclic ordering input: ") + e.what());
  }
  return in;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad(path + ": " + e.what());
  }
}

}  // namespace spqo

#include "spqo/expansion.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>

#include "pqtree_internal.hpp"
#include "spqo/errors.hpp"

namespace spqo {

namespace {

bool single_pnode(const PQTree& t) {
  return t.variant() == Variant::Normal && t.is_star() && t.node(1).kind == NodeKind::P;
}

std::vector<int> fixed_slots(const ArcInfo& info, int node) {
  std::vector<int> out;
  const auto& ef = info.fixedness.nodes[static_cast<std::size_t>(node)].edgeFixed;
  for (std::size_t s = 0; s < ef.size(); ++s)
    if (ef[s]) out.push_back(static_cast<int>(s));
  return out;
}

std::string tree_text(const PQTree& t) {
  std::ostringstream os;
  os << static_cast<int>(t.variant()) << '{';
  for (const auto& n : t.nodes()) {
    if (n.kind == NodeKind::Leaf) {
      os << t.labels()[static_cast<std::size_t>(n.leaf)];
    } else {
      os << (n.kind == NodeKind::P ? 'P' : 'Q');
    }
    os << '(';
    for (int x : n.nbrs) os << x << ',';
    os << ')';
  }
  os << '}';
  return os.str();
}

std::size_t tree_base_size(const Instance& d) {
  std::size_t s = 0;
  for (const auto& t : d.trees) s += t.size();
  return s;
}

std::size_t arc_base_size(const Instance& d) {
  std::size_t s = 0;
  for (const auto& a : d.arcs) s += d.trees[static_cast<std::size_t>(a.target)].leaf_count();
  return s;
}

class Builder {
 public:
  Builder(const NormalizedInstance& n, const ExpansionOptions& opts) : opts_(opts) {
    g_.instance = n.instance;
    g_.arcInfo = n.arcInfo;
    const auto& d = g_.instance;
    int pmax = 1;
    for (const auto& t : d.trees)
      for (std::size_t v = 0; v < t.nodes().size(); ++v)
        if (t.nodes()[v].kind == NodeKind::P) pmax = std::max(pmax, t.degree(static_cast<int>(v)));
    g_.stats.baseline = static_cast<std::size_t>(pmax) * tree_base_size(d) + arc_base_size(d);
    size_ = instance_size(d);
    for (std::size_t t = 0; t < d.trees.size(); ++t) {
      g_.provenance.push_back({false, -1, -1, "T" + std::to_string(t)});
      sizes_.push_back(subtree_sizes(d.trees[t]));
    }
    for (std::size_t a = 0; a < d.arcs.size(); ++a) g_.arcKeys.push_back("a" + std::to_string(a));
    outs_ = d.out_adjacency();
    if (opts.shuffleSeed) rng_.seed(*opts.shuffleSeed);
  }

  ExpansionGraph run() {
    for (std::size_t a = 0; a < g_.instance.arcs.size(); ++a) register_fixers(static_cast<int>(a));
    while (!work_.empty() && g_.nullTree < 0) {
      std::size_t pick = 0;
      if (opts_.shuffleSeed) pick = std::uniform_int_distribution<std::size_t>(0, work_.size() - 1)(rng_);
      CriticalTriple tr = work_[pick];
      work_.erase(work_.begin() + static_cast<std::ptrdiff_t>(pick));
      process(tr);
      check_budget();
    }
    final_checks();
    g_.stats.size = size_;
    g_.stats.ratio = g_.stats.baseline ? static_cast<double>(size_) / static_cast<double>(g_.stats.baseline) : 0.0;
    return std::move(g_);
  }

 private:
  const PQTree& tree(int t) const { return g_.instance.trees[static_cast<std::size_t>(t)]; }
  const Arc& arc(int a) const { return g_.instance.arcs[static_cast<std::size_t>(a)]; }

  // Neighbour slot of `node` leading to leaf node `leaf`.
  int direction(int t, int node, int leaf) const {
    const auto& sz = sizes_[static_cast<std::size_t>(t)];
    if (leaf < node || leaf >= node + sz[static_cast<std::size_t>(node)]) return 0;
    const auto& nb = tree(t).node(node).nbrs;
    auto it = std::upper_bound(nb.begin() + 1, nb.end(), leaf);
    return static_cast<int>(it - nb.begin()) - 1;
  }

  // Direction of every target leaf of arc `a` at P-node `node` of its source.
  std::map<Label, int> target_directions(int a, int node) const {
    const Arc& ar = arc(a);
    const PQTree& src = tree(ar.source);
    std::map<Label, int> out;
    for (const auto& [tl, sl] : ar.map) out[tl] = direction(ar.source, node, src.leaf_node(sl));
    return out;
  }

  void register_fixers(int a) {
    const Arc& ar = arc(a);
    const PQTree& src = tree(ar.source);
    const auto& rep = g_.arcInfo[static_cast<std::size_t>(a)].fixedness;
    for (std::size_t v = 0; v < rep.nodes.size(); ++v)
      if (rep.nodes[v].fixed && src.is_branching_pnode(static_cast<int>(v))) add_fixer(ar.source, static_cast<int>(v), a);
  }

  void add_fixer(int t, int node, int a) {
    auto& list = fixedBy_[{t, node}];
    list.push_back(a);
    if (list.size() == 2) {
      work_.push_back({t, node, list[0], list[1], arc(list[0]).reversing, arc(list[1]).reversing});
    } else if (list.size() > 2) {
      throw Error(ErrorCode::NotOneCritical, "P-node " + std::to_string(node) + " of tree " + std::to_string(t) +
                                                 " is fixed by " + std::to_string(list.size()) + " children");
    }
  }

  std::string triple_key(const CriticalTriple& tr) const {
    auto ka = g_.arcKeys[static_cast<std::size_t>(tr.arcA)], kb = g_.arcKeys[static_cast<std::size_t>(tr.arcB)];
    if (kb < ka) std::swap(ka, kb);
    return g_.provenance[static_cast<std::size_t>(tr.tree)].key + ":" + std::to_string(tr.pnode) + "[" + ka + "," + kb + "]";
  }

  // Fixed order of trees: input trees by id, then expansion trees by key.
  bool before(int x, int y) const {
    const auto& px = g_.provenance[static_cast<std::size_t>(x)];
    const auto& py = g_.provenance[static_cast<std::size_t>(y)];
    if (px.expansion != py.expansion) return !px.expansion;
    if (!px.expansion) return x < y;
    return px.key < py.key;
  }

  bool has_path(int from, int to) const {
    std::vector<char> seen(g_.instance.trees.size(), 0);
    std::vector<int> stack{from};
    seen[static_cast<std::size_t>(from)] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      for (int a : outs_[static_cast<std::size_t>(v)]) {
        int w = arc(a).target;
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    return false;
  }

  int add_arc(Arc a, std::string key) {
    g_.instance.arcs.push_back(std::move(a));
    g_.arcKeys.push_back(std::move(key));
    const int id = static_cast<int>(g_.instance.arcs.size()) - 1;
    outs_[static_cast<std::size_t>(g_.instance.arcs.back().source)].push_back(id);
    g_.arcInfo.push_back(analyze_arc(g_.instance, id));
    size_ += tree(g_.instance.arcs.back().target).leaf_count();
    return id;
  }

  void process(CriticalTriple tr) {
    // orient the pair by arc key so results do not depend on discovery order
    if (g_.arcKeys[static_cast<std::size_t>(tr.arcB)] < g_.arcKeys[static_cast<std::size_t>(tr.arcA)]) {
      std::swap(tr.arcA, tr.arcB);
      std::swap(tr.reversingA, tr.reversingB);
    }
    g_.triples.push_back(tr);
    const auto& infoA = g_.arcInfo[static_cast<std::size_t>(tr.arcA)];
    const auto& infoB = g_.arcInfo[static_cast<std::size_t>(tr.arcB)];
    auto e1 = fixed_slots(infoA, tr.pnode), e2 = fixed_slots(infoB, tr.pnode);
    const int t1 = arc(tr.arcA).target, t2 = arc(tr.arcB).target;
    const bool finalizable = e1 == e2 && single_pnode(tree(t1)) && single_pnode(tree(t2)) &&
                             tree(t1).leaf_count() == e1.size() && tree(t2).leaf_count() == e2.size();
    if (finalizable && t1 != t2) {
      finalize(tr, e1);
    } else if (finalizable && !g_.provenance[static_cast<std::size_t>(t1)].expansion) {
      expand(tr, e1);  // clones the double arc onto an expansion tree
    } else if (finalizable) {
      record_double_arc(tr);
    } else {
      std::vector<int> common;
      std::set_intersection(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(common));
      if (common.size() >= 2) expand(tr, common);
    }
  }

  void expand(const CriticalTriple& tr, const std::vector<int>& common) {
    const PQTree& t = tree(tr.tree);
    // expansion leaves: smallest T-leaf label in each common direction
    std::map<int, Label> dirLabel;
    {
      const int mu = tr.pnode;
      const auto& sz = sizes_[static_cast<std::size_t>(tr.tree)];
      for (int s : common) {
        Label best;
        if (s == 0) {
          best = t.labels()[0];
        } else {
          int c = t.node(mu).nbrs[static_cast<std::size_t>(s)];
          bool first = true;
          for (int v = c; v < c + sz[static_cast<std::size_t>(c)]; ++v)
            if (t.node(v).kind == NodeKind::Leaf) {
              const Label& l = t.labels()[static_cast<std::size_t>(t.node(v).leaf)];
              if (first || l < best) best = l;
              first = false;
            }
        }
        dirLabel[s] = best;
      }
    }
    const std::string key = "X" + triple_key(tr);
    Arc out[2];
    PQTree part[2];
    const int arcs[2] = {tr.arcA, tr.arcB};
    for (int i = 0; i < 2; ++i) {
      const Arc& ar = arc(arcs[i]);
      std::map<int, Label> rep;  // direction -> smallest child label in it
      for (const auto& [tl, dir] : target_directions(arcs[i], tr.pnode)) {
        if (!dirLabel.count(dir)) continue;
        auto it = rep.find(dir);
        if (it == rep.end() || tl < it->second) rep[dir] = tl;
      }
      std::vector<Label> reps;
      LabelMap back;
      for (const auto& [dir, l] : rep) {
        reps.push_back(l);
        back[l] = dirLabel[dir];
        out[i].map[dirLabel[dir]] = l;
      }
      std::sort(reps.begin(), reps.end());
      part[i] = relabel(project(tree(ar.target), reps), back);
      out[i].source = ar.target;
      out[i].reversing = ar.reversing;
    }
    PQTree tex = intersect(part[0], part[1]);
    check_degree_laws(tr, tex);
    g_.instance.trees.push_back(tex);
    const int id = static_cast<int>(g_.instance.trees.size()) - 1;
    g_.provenance.push_back({true, tr.tree, tr.pnode, key});
    sizes_.push_back(subtree_sizes(tex));
    outs_.emplace_back();
    size_ += tex.size();
    ++g_.stats.expansionSteps;
    count_responsibility(tr.tree, tr.pnode);
    if (tex.is_null()) {
      g_.nullTree = id;
      return;
    }
    for (int i = 0; i < 2; ++i) {
      out[i].target = id;
      int a = add_arc(out[i], key + "<" + std::to_string(i));
      register_fixers(a);
    }
  }

  void finalize(const CriticalTriple& tr, const std::vector<int>& /*edges*/) {
    int a1 = tr.arcA, a2 = tr.arcB;
    int t1 = arc(a1).target, t2 = arc(a2).target;
    bool swap = false;
    if (has_path(t2, t1)) swap = true;
    else if (!has_path(t1, t2)) swap = before(t2, t1);
    if (swap) {
      std::swap(a1, a2);
      std::swap(t1, t2);
    }
    // map each leaf of t2 to the leaf of t1 in the same direction at mu
    auto d1 = target_directions(a1, tr.pnode), d2 = target_directions(a2, tr.pnode);
    std::map<int, Label> byDir;
    for (const auto& [l, dir] : d1) byDir[dir] = l;
    Arc f;
    f.source = t1;
    f.target = t2;
    f.reversing = arc(a1).reversing != arc(a2).reversing;
    for (const auto& [l, dir] : d2) f.map[l] = byDir.at(dir);
    int id = add_arc(f, "F" + triple_key(tr));
    g_.finalizingArcs.push_back(id);
    ++g_.stats.finalizingSteps;
    register_fixers(id);
  }

  void record_double_arc(const CriticalTriple& tr) {
    auto d1 = target_directions(tr.arcA, tr.pnode), d2 = target_directions(tr.arcB, tr.pnode);
    std::map<int, Label> byDir2;
    for (const auto& [l, dir] : d2) byDir2[dir] = l;
    LabelMap perm;
    for (const auto& [l, dir] : d1) perm[l] = byDir2.at(dir);
    DoubleArc da;
    da.arcA = tr.arcA;
    da.arcB = tr.arcB;
    da.sink = arc(tr.arcA).target;
    da.perm = Permutation(perm);
    da.mixed = tr.reversingA != tr.reversingB;
    g_.doubleArcs.push_back(std::move(da));
    ++g_.stats.doubleArcs;
  }

  void check_degree_laws(const CriticalTriple& tr, const PQTree& tex) const {
    const int degMu = tree(tr.tree).degree(tr.pnode);
    int k = 0, sum = 0, sameDeg = 0;
    for (std::size_t v = 0; v < tex.nodes().size(); ++v)
      if (tex.nodes()[v].kind == NodeKind::P) {
        ++k;
        sum += tex.degree(static_cast<int>(v));
        if (tex.degree(static_cast<int>(v)) == degMu) ++sameDeg;
      }
    if (sum > degMu + 2 * k - 2)
      throw Error(ErrorCode::InternalInconsistency, "expansion tree violates the P-node degree inequality");
    const auto& prov = g_.provenance[static_cast<std::size_t>(tr.tree)];
    if (sameDeg > 0 && prov.expansion && tree(prov.respTree).degree(prov.respNode) == degMu)
      throw Error(ErrorCode::InternalInconsistency, "three responsible P-nodes of equal degree in a row");
  }

  void count_responsibility(int t, int node) {
    while (g_.provenance[static_cast<std::size_t>(t)].expansion) {
      const auto& p = g_.provenance[static_cast<std::size_t>(t)];
      node = p.respNode;
      t = p.respTree;
    }
    ++g_.resp[{t, node}];
  }

  void check_budget() const {
    if (static_cast<double>(size_) > opts_.budgetConstant * static_cast<double>(g_.stats.baseline))
      throw Error(ErrorCode::BudgetExceeded, "expansion graph outgrew " + std::to_string(opts_.budgetConstant) +
                                                 " * (p_max |N| + |A|)");
  }

  void final_checks() const {
    if (g_.nullTree >= 0) return;
    for (const auto& da : g_.doubleArcs)
      if (!outs_[static_cast<std::size_t>(da.sink)].empty())
          throw Error(ErrorCode::InternalInconsistency, "double arc target " + std::to_string(da.sink) + " is no sink");
    for (const auto& [pn, count] : g_.resp) {
      int deg = tree(pn.first).degree(pn.second);
      if (deg >= 3 && count > 3 * deg - 8)
        throw Error(ErrorCode::InternalInconsistency, "P-node responsible for too many expansion trees");
    }
  }

  ExpansionGraph g_;
  ExpansionOptions opts_;
  std::vector<std::vector<int>> sizes_;
  std::vector<std::vector<int>> outs_;
  std::map<std::pair<int, int>, std::vector<int>> fixedBy_;
  std::deque<CriticalTriple> work_;
  std::mt19937_64 rng_;
  std::size_t size_ = 0;
};

}  // namespace

std::vector<CriticalTriple> find_critical_triples(const Instance& d, const std::vector<ArcInfo>& arcInfo, int tree) {
  std::vector<CriticalTriple> out;
  const PQTree& t = d.trees.at(static_cast<std::size_t>(tree));
  auto outs = d.out_arcs(tree);
  for (std::size_t v = 0; v < t.nodes().size(); ++v) {
    if (!t.is_branching_pnode(static_cast<int>(v))) continue;
    std::vector<int> fixers;
    for (int a : outs)
      if (arcInfo[static_cast<std::size_t>(a)].fixedness.nodes[v].fixed) fixers.push_back(a);
    for (std::size_t i = 0; i < fixers.size(); ++i)
      for (std::size_t j = i + 1; j < fixers.size(); ++j) {
        const Arc& x = d.arcs[static_cast<std::size_t>(fixers[i])];
        const Arc& y = d.arcs[static_cast<std::size_t>(fixers[j])];
        out.push_back({tree, static_cast<int>(v), fixers[i], fixers[j], x.reversing, y.reversing});
      }
  }
  return out;
}

ExpansionGraph build_expansion_graph(const NormalizedInstance& n, const ExpansionOptions& opts) {
  return Builder(n, opts).run();
}

std::string expansion_signature(const ExpansionGraph& g) {
  std::vector<std::string> lines;
  const auto& d = g.instance;
  for (std::size_t t = 0; t < d.trees.size(); ++t)
    lines.push_back("tree " + g.provenance[t].key + " " + tree_text(d.trees[t]));
  std::set<int> finals(g.finalizingArcs.begin(), g.finalizingArcs.end());
  for (std::size_t a = 0; a < d.arcs.size(); ++a) {
    const Arc& ar = d.arcs[a];
    std::string line = "arc " + g.arcKeys[a] + " " + g.provenance[static_cast<std::size_t>(ar.source)].key + "->" +
                       g.provenance[static_cast<std::size_t>(ar.target)].key + (ar.reversing ? " rev" : "") +
                       (finals.count(static_cast<int>(a)) ? " fin" : "");
    for (const auto& [x, y] : ar.map) line += " " + x + ":" + y;
    lines.push_back(line);
  }
  for (const auto& da : g.doubleArcs) {
    std::string line = "double " + g.arcKeys[static_cast<std::size_t>(da.arcA)] + "," +
                       g.arcKeys[static_cast<std::size_t>(da.arcB)] + (da.mixed ? " mixed" : "");
    for (const auto& [x, y] : da.perm.map()) line += " " + x + ":" + y;
    lines.push_back(line);
  }
  if (g.nullTree >= 0) lines.push_back("null");
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace spqo

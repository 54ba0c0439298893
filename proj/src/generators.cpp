#include "spqo/generators.hpp"

#include <algorithm>
#include <string>

#include "spqo/errors.hpp"

namespace spqo {

namespace {

std::vector<Label> letters(int n) {
  std::vector<Label> out;
  for (int i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('a' + i));
  return out;
}

// Tree containing `hidden` (unless noisy), built from random arcs of it.
PQTree planted_tree(std::mt19937_64& rng, const std::vector<Label>& hidden, double noiseProb) {
  const std::size_t n = hidden.size();
  std::vector<Label> leaves = hidden;
  std::sort(leaves.begin(), leaves.end());
  if (n < 4) return PQTree::universal(leaves);
  std::uniform_int_distribution<int> count(0, 3);
  std::uniform_int_distribution<std::size_t> pos(0, n - 1), len(2, n - 2);
  std::bernoulli_distribution noise(noiseProb);
  std::vector<std::vector<Label>> fam;
  for (int i = count(rng); i > 0; --i) {
    std::vector<Label> s;
    if (noise(rng)) {
      auto v = leaves;
      std::shuffle(v.begin(), v.end(), rng);
      v.resize(len(rng));
      s = v;
    } else {
      std::size_t p = pos(rng), l = len(rng);
      for (std::size_t k = 0; k < l; ++k) s.push_back(hidden[(p + k) % n]);
    }
    std::sort(s.begin(), s.end());
    fam.push_back(s);
  }
  PQTree t = from_consecutive_sets(leaves, fam);
  return t.is_null() ? PQTree::universal(leaves) : t;
}

}  // namespace

Instance random_instance(std::mt19937_64& rng, const RandomInstanceParams& p) {
  std::uniform_int_distribution<int> treeCount(2, std::max(2, p.maxTrees));
  std::uniform_int_distribution<int> leafCount(3, std::max(3, p.maxLeaves));
  std::bernoulli_distribution reversing(p.reversingProb), second(p.secondParentProb);
  const int n = treeCount(rng);
  std::vector<PQTree> trees;
  std::vector<std::vector<Label>> hidden;  // planted order per tree
  std::vector<Arc> arcs;
  std::bernoulli_distribution twin(p.starTwinProb), parallel(p.parallelProb);
  std::vector<int> starArcs;  // arcs into star children
  for (int t = 0; t < n; ++t) {
    if (t > 0 && !starArcs.empty() && twin(rng)) {
      // a second star over the same image as an earlier star child
      const Arc& base = arcs[static_cast<std::size_t>(starArcs[rng() % starArcs.size()])];
      std::vector<Label> img;
      for (const auto& [from, to] : base.map) img.push_back(to);
      std::shuffle(img.begin(), img.end(), rng);
      auto own = letters(static_cast<int>(img.size()));
      Arc a{base.source, t, {}, reversing(rng)};
      for (std::size_t i = 0; i < img.size(); ++i) a.map[own[i]] = img[i];
      starArcs.push_back(static_cast<int>(arcs.size()));
      arcs.push_back(a);
      trees.push_back(PQTree::universal(own));
      hidden.push_back(own);
      continue;
    }
    if (t == 0) {
      auto h = letters(leafCount(rng));
      std::shuffle(h.begin(), h.end(), rng);
      trees.push_back(planted_tree(rng, h, p.noiseProb));
      hidden.push_back(h);
      continue;
    }
    std::uniform_int_distribution<int> pick(0, t - 1);
    const int parent = pick(rng);
    const auto& ph = hidden[static_cast<std::size_t>(parent)];
    std::uniform_int_distribution<std::size_t> size(3, ph.size());
    std::size_t k = size(rng);
    // the child's leaves are k parent leaves, kept in planted order
    std::vector<std::size_t> idx(ph.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    auto own = letters(static_cast<int>(k));
    std::shuffle(own.begin(), own.end(), rng);
    Arc a{parent, t, {}, reversing(rng)};
    std::vector<Label> h;
    for (std::size_t i = 0; i < k; ++i) {
      a.map[own[i]] = ph[idx[i]];
      h.push_back(own[i]);
    }
    if (a.reversing) std::reverse(h.begin(), h.end());
    const bool star = k < ph.size() && parallel(rng);
    if (star) {
      // parallel arcs with permuted maps form a double arc on a star sink
      starArcs.push_back(static_cast<int>(arcs.size()));
      arcs.push_back(a);
      Arc b = a;
      b.reversing = reversing(rng);
      std::vector<Label> img;
      for (const auto& [from, to] : a.map) img.push_back(to);
      std::shuffle(img.begin(), img.end(), rng);
      std::size_t i = 0;
      for (auto& [from, to] : b.map) to = img[i++];
      arcs.push_back(b);
      trees.push_back(PQTree::universal(own));
      hidden.push_back(h);
      continue;
    }
    if (k < ph.size() && twin(rng)) starArcs.push_back(static_cast<int>(arcs.size()));
    arcs.push_back(a);
    if (t >= 2 && second(rng)) {
      int other = pick(rng);
      const auto& oh = hidden[static_cast<std::size_t>(other)];
      if (other != parent && oh.size() >= k) {
        auto img = oh;
        std::shuffle(img.begin(), img.end(), rng);
        Arc b{other, t, {}, reversing(rng)};
        for (std::size_t i = 0; i < k; ++i) b.map[own[i]] = img[i];
        arcs.push_back(b);
      }
    }
    trees.push_back(planted_tree(rng, h, p.noiseProb));
    hidden.push_back(h);
  }
  return build_instance(std::move(trees), std::move(arcs));
}

std::optional<Instance> random_two_fixed_instance(std::mt19937_64& rng, const RandomInstanceParams& p,
                                                  int attempts) {
  for (int i = 0; i < attempts; ++i) {
    Instance d = random_instance(rng, p);
    if (fixedness(normalize(d)).twoFixed) return d;
  }
  return std::nullopt;
}

std::vector<std::array<Label, 3>> random_triples(std::mt19937_64& rng, const std::vector<Label>& leaves, int count) {
  if (leaves.size() < 3) throw Error(ErrorCode::InvalidTriple, "need at least three labels");
  std::vector<std::array<Label, 3>> out;
  for (int i = 0; i < count; ++i) {
    auto v = leaves;
    std::shuffle(v.begin(), v.end(), rng);
    out.push_back({v[0], v[1], v[2]});
  }
  return out;
}

Instance scaling_instance(int gadgets) {
  if (gadgets < 1) throw Error(ErrorCode::InputError, "need at least one gadget");
  const auto six = letters(6);
  const std::vector<Label> four{"w", "x", "y", "z"};
  std::vector<PQTree> trees;
  std::vector<Arc> arcs;
  // tree 2i: six-leaf tree with {e,f} consecutive; tree 2i+1: sink over w..z
  for (int i = 0; i < gadgets; ++i) {
    trees.push_back(i % 2 ? PQTree::universal(six) : from_consecutive_sets(six, {{"e", "f"}}));
    trees.push_back(PQTree::universal(four));
  }
  for (int i = 0; i < gadgets; ++i) {
    const int s = 2 * i, sink = 2 * i + 1;
    arcs.push_back({s, sink, {{"w", "a"}, {"x", "b"}, {"y", "c"}, {"z", "d"}}, false});
    if (i + 1 < gadgets)
      arcs.push_back({s + 2, sink, {{"w", "e"}, {"x", "d"}, {"y", "c"}, {"z", "b"}}, i % 3 == 0});
  }
  return build_instance(std::move(trees), std::move(arcs));
}

}  // namespace spqo

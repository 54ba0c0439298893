#include <algorithm>
#include <numeric>
#include <map>
#include <set>

#include "spqo/generators.hpp"

namespace spqo {

namespace {

using Adjacency = std::vector<std::vector<char>>;

// Canonical adjacency string: the smallest over all vertex orders that
// respect a colour refinement, which is invariant under isomorphism.
std::string canonical_form(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<long> color(n);
  for (std::size_t v = 0; v < n; ++v) color[v] = std::count(adj[v].begin(), adj[v].end(), 1);
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::pair<long, std::vector<long>>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first = color[v];
      for (std::size_t w = 0; w < n; ++w)
        if (adj[v][w]) sig[v].second.push_back(color[w]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<long> next(n);
    for (std::size_t v = 0; v < n; ++v)
      next[v] = std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin();
    if (next == color) break;
    color = next;
  }
  // vertices grouped by colour; permute within each group
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return color[a] < color[b]; });
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && color[order[j]] == color[order[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  std::string best;
  auto encode = [&]() {
    std::string s;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s.push_back(adj[order[i]][order[j]] ? '1' : '0');
    if (best.empty() || s < best) best = s;
  };
  auto go = [&](auto&& self, std::size_t cell) -> void {
    if (cell == cells.size()) {
      encode();
      return;
    }
    auto [a, b] = cells[cell];
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(a), order.begin() + static_cast<std::ptrdiff_t>(b));
    do {
      self(self, cell + 1);
    } while (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(a), order.begin() + static_cast<std::ptrdiff_t>(b)));
  };
  go(go, 0);
  return std::to_string(n) + ":" + best;
}

Graph to_graph(const Adjacency& adj) {
  Graph g;
  for (std::size_t v = 0; v < adj.size(); ++v) g.add_vertex(std::to_string(v));
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (std::size_t w = v + 1; w < adj.size(); ++w)
      if (adj[v][w]) g.add_edge(static_cast<int>(v), static_cast<int>(w));
  return g;
}

Adjacency cycle(std::size_t k) {
  Adjacency adj(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i) adj[i][(i + 1) % k] = adj[(i + 1) % k][i] = 1;
  return adj;
}

// Adds a path of `len` edges between a and b through fresh vertices.
Adjacency add_ear(Adjacency adj, std::size_t a, std::size_t b, std::size_t len) {
  std::size_t prev = a;
  for (std::size_t k = 1; k < len; ++k) {
    const std::size_t v = adj.size();
    for (auto& row : adj) row.push_back(0);
    adj.emplace_back(v + 1, 0);
    adj[prev][v] = adj[v][prev] = 1;
    prev = v;
  }
  adj[prev][b] = adj[b][prev] = 1;
  return adj;
}

std::size_t edge_count(const Adjacency& adj) {
  std::size_t m = 0;
  for (const auto& row : adj) m += static_cast<std::size_t>(std::count(row.begin(), row.end(), 1));
  return m / 2;
}

}  // namespace

std::vector<Graph> biconnected_graphs(int maxEdges) {
  std::map<std::string, Adjacency> seen;
  std::vector<Adjacency> frontier;
  for (int k = 3; k <= maxEdges; ++k) {
    auto c = cycle(static_cast<std::size_t>(k));
    if (seen.emplace(canonical_form(c), c).second) frontier.push_back(c);
  }
  while (!frontier.empty()) {
    std::vector<Adjacency> next;
    for (const auto& adj : frontier) {
      const std::size_t m = edge_count(adj), n = adj.size();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          for (std::size_t len = adj[a][b] ? 2 : 1; m + len <= static_cast<std::size_t>(maxEdges); ++len) {
            auto grown = add_ear(adj, a, b, len);
            if (seen.emplace(canonical_form(grown), grown).second) next.push_back(std::move(grown));
          }
    }
    frontier = std::move(next);
  }
  std::vector<Graph> out;
  for (const auto& [key, adj] : seen) out.push_back(to_graph(adj));
  return out;
}

Graph random_biconnected_graph(std::mt19937_64& rng, int maxEdges) {
  std::uniform_int_distribution<int> cyc(3, std::max(3, std::min(6, maxEdges)));
  Adjacency adj = cycle(static_cast<std::size_t>(cyc(rng)));
  std::uniform_int_distribution<int> target(static_cast<int>(edge_count(adj)), std::max(static_cast<int>(edge_count(adj)), maxEdges));
  const auto goal = static_cast<std::size_t>(target(rng));
  for (int guard = 0; guard < 200 && edge_count(adj) < goal; ++guard) {
    std::uniform_int_distribution<std::size_t> pick(0, adj.size() - 1);
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    std::uniform_int_distribution<std::size_t> len(adj[a][b] ? 2 : 1, 3);
    std::size_t l = len(rng);
    if (edge_count(adj) + l > static_cast<std::size_t>(maxEdges)) continue;
    adj = add_ear(adj, a, b, l);
  }
  return to_graph(adj);
}

std::uint64_t rotation_system_count(const Graph& g) {
  std::uint64_t total = 1;
  for (const auto& inc : g.incidence())
    for (std::size_t k = 2; k < inc.size(); ++k) {
      if (total > UINT64_MAX / k) return UINT64_MAX;
      total *= k;
    }
  return total;
}

Graph graph_from_edge_mask(int n, std::uint64_t mask) {
  Graph g;
  for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1U) g.add_edge(u, v);
  return g;
}

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  Graph g;
  for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

IntervalRep random_intervals(std::mt19937_64& rng, const std::vector<std::string>& names, int maxGap) {
  std::vector<std::pair<std::string, bool>> ends;
  for (const auto& n : names) {
    ends.emplace_back(n, false);
    ends.emplace_back(n, true);
  }
  std::shuffle(ends.begin(), ends.end(), rng);
  std::uniform_int_distribution<int> gap(1, maxGap);
  // coordinates in shuffled order; swap so every left precedes its right
  std::map<std::string, std::vector<double>> coords;
  double x = 0;
  for (const auto& e : ends) {
    x += gap(rng);
    coords[e.first].push_back(x);
  }
  IntervalRep rep;
  for (const auto& [n, c] : coords) rep[n] = {std::min(c[0], c[1]), std::max(c[0], c[1])};
  return rep;
}

}  // namespace spqo

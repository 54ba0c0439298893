#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spqo/instance.hpp"
#include "spqo/solver.hpp"

namespace spqo {

/// Simple undirected graph with named vertices. Edge ids are indices into
/// `edges`; as PQ-tree leaves an edge is labelled by its decimal id.
struct Graph {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;

  int vertex_count() const { return static_cast<int>(names.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  /// Index of a named vertex, or -1.
  int find(const std::string& name) const;
  /// Adds the vertex if missing and returns its index.
  int add_vertex(const std::string& name);
  /// Adds an edge; throws InputError on self loops and parallel edges.
  int add_edge(int u, int v);
  int other(int edge, int v) const;
  /// Incident edge ids per vertex, ascending.
  std::vector<std::vector<int>> incidence() const;

 private:
  std::map<std::string, int> index_;
  std::map<std::pair<int, int>, int> edgeIndex_;
};

Label edge_label(int edge);

/// Edge list, one `u v` pair per line, `#` starts a comment.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_file(const std::string& path);

/// Circular order of incident edge ids per vertex.
using RotationSystem = std::vector<std::vector<int>>;

/// Blocks as edge sets, each sorted; bridges are one-edge blocks.
std::vector<std::vector<int>> biconnected_components(const Graph& g);
bool is_biconnected(const Graph& g);
bool is_connected(const Graph& g);

/// Faces traced by following the rotation system; each face lists darts as
/// (vertex, edge) pairs.
std::vector<std::vector<std::pair<int, int>>> trace_faces(const Graph& g, const RotationSystem& rot);

/// Euler's formula per connected component with at least one edge.
bool is_planar_rotation(const Graph& g, const RotationSystem& rot);

/// Planar rotation system of a biconnected graph by path addition, or
/// nothing when the graph is not planar.
std::optional<RotationSystem> planar_embedding(const Graph& g);

enum class SpqrKind { S, P, R };

/// Skeleton edge: a real graph edge or a virtual edge with a twin.
struct SkeletonEdge {
  int u = -1, v = -1;  // graph vertex ids
  int real = -1;       // graph edge id, -1 for virtual edges
  int twinNode = -1;
  int twinEdge = -1;
};

/// Real edges play the role of Q-nodes and are kept inside the skeletons.
struct SpqrNode {
  SpqrKind kind = SpqrKind::S;
  std::vector<int> vertices;  // ascending graph vertex ids
  std::vector<SkeletonEdge> edges;
  /// R-nodes: per skeleton vertex (same index as `vertices`) the circular
  /// order of skeleton edge indices in a planar embedding of the skeleton.
  std::vector<std::vector<int>> rotation;
};

struct SpqrTree {
  std::vector<SpqrNode> nodes;
};

/// SPQR-tree of a biconnected planar graph with at least three vertices, by
/// recursive split-pair decomposition. Throws NotBiconnected or NotPlanar.
SpqrTree spqr_tree(const Graph& g);

/// Per vertex the PQ-tree of its possible rotations; leaves are edge labels.
std::vector<PQTree> embedding_trees(const Graph& g, const SpqrTree& spqr);

/// Instance whose solutions correspond to planar embeddings.
struct EmbeddingRepresentation {
  Instance instance;
  /// Tree holding all incident edges of a vertex; -1 for degree below 3.
  std::vector<int> vertexTree;
  std::vector<int> consistencyTrees;
};

/// Representation of a biconnected planar graph. Throws NotBiconnected or NotPlanar.
EmbeddingRepresentation pq_embedding_representation(const Graph& g);

/// Representation for graphs whose cutvertices lie in at most two blocks
/// that are not bridges. Equals pq_embedding_representation on biconnected
/// graphs. Throws NotSupported naming the offending cutvertex, or NotPlanar.
EmbeddingRepresentation generalize_cutvertices(const Graph& g);

/// Rotation system read off a solution. Throws PlanarityCheckFailed when it
/// fails the face count check.
RotationSystem rotation_from_solution(const Graph& g, const EmbeddingRepresentation& rep, const Solution& s);

struct PlanarityResult {
  SolveStatus status = SolveStatus::Feasible;
  std::string reason;  // failing guard when not feasible
  RotationSystem rotation;
  bool twoFixed = true;
};

/// Planar embedding whose rotation at every constrained vertex induces an
/// order represented by its constraint tree (leaves: incident edge labels).
PlanarityResult solve_partially_pq_constrained(const Graph& g, const std::map<int, PQTree>& constraints);

struct SefeResult {
  SolveStatus status = SolveStatus::Feasible;
  std::string reason;
  RotationSystem first, second;
  bool twoFixed = true;
};

/// Simultaneous embedding with fixed edges of two graphs that share vertices
/// and edges by name. The common graph must be connected.
SefeResult solve_sefe(const Graph& g1, const Graph& g2);

/// Common edges as (edge of g1, edge of g2) pairs, by endpoint names.
std::vector<std::pair<int, int>> common_edges(const Graph& g1, const Graph& g2);

/// True iff both rotations are planar and order common edges alike at
/// every common vertex.
bool verify_sefe(const Graph& g1, const Graph& g2, const RotationSystem& r1, const RotationSystem& r2);

}  // namespace spqo

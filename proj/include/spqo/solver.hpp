#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spqo/expansion.hpp"
#include "spqo/instance.hpp"

namespace spqo {

/// 2-SAT over variables 0..n-1. Literal 2v is v, 2v+1 its negation.
class TwoSat {
 public:
  explicit TwoSat(int n = 0) : n_(n) {}
  int add_variable() { return n_++; }
  int variables() const { return n_; }
  static int pos(int v) { return 2 * v; }
  static int neg(int v) { return 2 * v + 1; }
  void add_clause(int litA, int litB) { clauses_.emplace_back(litA, litB); }
  /// x XOR y == differ
  void add_xor(int x, int y, bool differ);
  /// Satisfying assignment, or nothing when unsatisfiable. Deterministic;
  /// unconstrained variables come out true.
  std::optional<std::vector<bool>> solve() const;
  const std::vector<std::pair<int, int>>& clauses() const { return clauses_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> clauses_;
};

/// One variable per orientation node (Q-node or degree-3 P-node) of every
/// tree of the expansion graph; x = true keeps the stored neighbour order.
struct QConstraintSystem {
  std::vector<std::pair<int, int>> vars;      // variable -> (tree, node)
  std::map<std::pair<int, int>, int> index;   // (tree, node) -> variable
  struct Relation {
    int x, y;
    bool differ;
  };
  std::vector<Relation> relations;
  TwoSat sat;
};

QConstraintSystem collect_q_constraints(const ExpansionGraph& g);

/// Per double arc a sink order satisfying its permutation, or nothing.
std::vector<std::optional<CircularOrder>> check_double_arcs(const ExpansionGraph& g);

struct Solution {
  std::map<int, CircularOrder> orders;             // tree id -> order
  std::map<std::pair<int, int>, bool> qAssignment;  // (tree, node) -> keeps stored orientation
};

/// Orders for every tree of `g`, chosen bottom-up. Throws
/// InternalInconsistency when a merge is impossible.
Solution extend_orders_bottom_up(const ExpansionGraph& g, const std::vector<bool>& assignment,
                                 const QConstraintSystem& sys,
                                 const std::map<int, CircularOrder>& sinkOrders);

enum class SolveStatus { Feasible, Infeasible, NotSupported };
enum class InfeasibleReason { None, NullTree, QConstraints, DoubleArc };

std::string to_string(SolveStatus s);
std::string to_string(InfeasibleReason r);

struct SolveResult {
  SolveStatus status = SolveStatus::Feasible;
  InfeasibleReason reason = InfeasibleReason::None;
  std::string message;
  Solution solution;  // original trees only
  bool twoFixed = true;
  ExpansionStats stats;
};

struct SolveOptions {
  ExpansionOptions expansion;
};

SolveResult solve(const Instance& d, const SolveOptions& opts = {});

/// Independent check: every order is represented by its tree and every arc's
/// (reversed) suborder relation holds.
bool verify_solution(const Instance& d, const Solution& s);

}  // namespace spqo

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spqo {

using Label = std::string;
using LabelMap = std::map<Label, Label>;

/// Circular sequence of distinct labels, stored rotated so that the
/// smallest label comes first. Two orders compare equal iff they are
/// rotations of each other.
class CircularOrder {
 public:
  CircularOrder() = default;
  explicit CircularOrder(std::vector<Label> seq);

  const std::vector<Label>& seq() const noexcept { return seq_; }
  std::size_t size() const noexcept { return seq_.size(); }
  bool empty() const noexcept { return seq_.empty(); }

  CircularOrder reversed() const;

  friend bool operator==(const CircularOrder&, const CircularOrder&) = default;
  friend auto operator<=>(const CircularOrder&, const CircularOrder&) = default;

 private:
  std::vector<Label> seq_;
};

class LinearOrder {
 public:
  LinearOrder() = default;
  explicit LinearOrder(std::vector<Label> seq);

  const std::vector<Label>& seq() const noexcept { return seq_; }
  std::size_t size() const noexcept { return seq_.size(); }

  friend bool operator==(const LinearOrder&, const LinearOrder&) = default;
  friend auto operator<=>(const LinearOrder&, const LinearOrder&) = default;

 private:
  std::vector<Label> seq_;
};

/// Bijection of a finite label set onto itself.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(LabelMap map);

  static Permutation identity(const std::vector<Label>& domain);

  const LabelMap& map() const noexcept { return map_; }
  const Label& operator()(const Label& x) const;
  std::vector<Label> domain() const;
  Permutation inverse() const;

 private:
  LabelMap map_;
};

/// Image of an order under a permutation, position by position.
CircularOrder apply(const Permutation& p, const CircularOrder& order);

/// True iff the child, mapped into the parent's labels (and reversed when
/// `reversed` is set), equals the order the parent induces on those labels.
/// Throws InvalidMap when the map is not injective or misses a child label.
bool is_suborder(const CircularOrder& parent, const CircularOrder& child, const LabelMap& map,
                 bool reversed);

/// Restriction of `order` to the labels in `keep`.
CircularOrder restrict_order(const CircularOrder& order, const std::vector<Label>& keep);

/// Cycles ordered by their smallest label; each cycle starts at its
/// smallest label and follows the permutation.
std::vector<std::vector<Label>> cycle_decomposition(const Permutation& p);

/// An order O with p(O) = O, or nothing when the cycle lengths differ.
std::optional<CircularOrder> order_preserving_witness(const Permutation& p);

/// An order O with p(O) = reverse(O), or nothing when some cycle is longer
/// than two or there are more than two fixpoints.
std::optional<CircularOrder> order_reversing_witness(const Permutation& p);

/// All (n-1)! circular orders of the given labels (n! / n rotations).
std::vector<CircularOrder> all_circular_orders(std::vector<Label> labels);

}  // namespace spqo

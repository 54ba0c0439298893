#include "spqo/orders.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "spqo/errors.hpp"

namespace spqo {

namespace {

std::vector<Label> rotate_to_min(std::vector<Label> seq) {
  if (seq.empty()) return seq;
  auto it = std::min_element(seq.begin(), seq.end());
  std::rotate(seq.begin(), it, seq.end());
  return seq;
}

void require_distinct(const std::vector<Label>& seq) {
  std::set<Label> seen(seq.begin(), seq.end());
  if (seen.size() != seq.size()) throw Error(ErrorCode::InputError, "order repeats a label");
}

}  // namespace

CircularOrder::CircularOrder(std::vector<Label> seq) : seq_(rotate_to_min(std::move(seq))) {
  require_distinct(seq_);
}

CircularOrder CircularOrder::reversed() const {
  std::vector<Label> r(seq_.rbegin(), seq_.rend());
  return CircularOrder(std::move(r));
}

LinearOrder::LinearOrder(std::vector<Label> seq) : seq_(std::move(seq)) { require_distinct(seq_); }

Permutation::Permutation(LabelMap map) : map_(std::move(map)) {
  std::set<Label> image;
  for (const auto& [k, v] : map_) {
    if (!map_.count(v)) throw Error(ErrorCode::InvalidMap, "permutation image " + v + " outside domain");
    image.insert(v);
  }
  if (image.size() != map_.size()) throw Error(ErrorCode::InvalidMap, "permutation is not injective");
}

Permutation Permutation::identity(const std::vector<Label>& domain) {
  LabelMap m;
  for (const auto& x : domain) m[x] = x;
  return Permutation(std::move(m));
}

const Label& Permutation::operator()(const Label& x) const {
  auto it = map_.find(x);
  if (it == map_.end()) throw Error(ErrorCode::InvalidMap, "label " + x + " outside permutation domain");
  return it->second;
}

std::vector<Label> Permutation::domain() const {
  std::vector<Label> d;
  d.reserve(map_.size());
  for (const auto& kv : map_) d.push_back(kv.first);
  return d;
}

Permutation Permutation::inverse() const {
  LabelMap inv;
  for (const auto& [k, v] : map_) inv[v] = k;
  return Permutation(std::move(inv));
}

CircularOrder apply(const Permutation& p, const CircularOrder& order) {
  std::vector<Label> out;
  out.reserve(order.size());
  for (const auto& x : order.seq()) out.push_back(p(x));
  return CircularOrder(std::move(out));
}

CircularOrder restrict_order(const CircularOrder& order, const std::vector<Label>& keep) {
  std::set<Label> k(keep.begin(), keep.end());
  std::vector<Label> out;
  for (const auto& x : order.seq())
    if (k.count(x)) out.push_back(x);
  return CircularOrder(std::move(out));
}

bool is_suborder(const CircularOrder& parent, const CircularOrder& child, const LabelMap& map,
                 bool reversed) {
  std::vector<Label> image;
  image.reserve(child.size());
  std::set<Label> seen;
  std::unordered_map<Label, bool> inParent;
  for (const auto& x : parent.seq()) inParent[x] = true;
  for (const auto& x : child.seq()) {
    auto it = map.find(x);
    if (it == map.end()) throw Error(ErrorCode::InvalidMap, "child label " + x + " missing from map");
    if (!seen.insert(it->second).second) throw Error(ErrorCode::InvalidMap, "map is not injective");
    if (!inParent.count(it->second))
      throw Error(ErrorCode::InvalidMap, "image " + it->second + " is not a parent label");
    image.push_back(it->second);
  }
  if (reversed) std::reverse(image.begin(), image.end());
  CircularOrder mapped(std::move(image));
  return restrict_order(parent, mapped.seq()) == mapped;
}

std::vector<std::vector<Label>> cycle_decomposition(const Permutation& p) {
  std::vector<std::vector<Label>> cycles;
  std::set<Label> done;
  for (const auto& [start, _] : p.map()) {  // map iterates in label order
    if (done.count(start)) continue;
    std::vector<Label> cyc;
    Label x = start;
    do {
      cyc.push_back(x);
      done.insert(x);
      x = p(x);
    } while (x != start);
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

std::optional<CircularOrder> order_preserving_witness(const Permutation& p) {
  auto cycles = cycle_decomposition(p);
  if (cycles.empty()) return CircularOrder{};
  std::size_t k = cycles.front().size();
  for (const auto& c : cycles)
    if (c.size() != k) return std::nullopt;
  // Round j lists the j-th image of every cycle's first label; the
  // permutation then rotates the order by one round.
  std::vector<Label> seq;
  for (std::size_t j = 0; j < k; ++j)
    for (const auto& c : cycles) seq.push_back(c[j]);
  return CircularOrder(std::move(seq));
}

std::optional<CircularOrder> order_reversing_witness(const Permutation& p) {
  auto cycles = cycle_decomposition(p);
  std::vector<Label> fix;
  std::vector<std::pair<Label, Label>> pairs;
  for (const auto& c : cycles) {
    if (c.size() == 1)
      fix.push_back(c[0]);
    else if (c.size() == 2)
      pairs.emplace_back(c[0], c[1]);
    else
      return std::nullopt;
  }
  if (fix.size() > 2) return std::nullopt;
  std::vector<Label> seq;
  for (const auto& pr : pairs) seq.push_back(pr.first);
  if (!fix.empty()) seq.push_back(fix[0]);
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) seq.push_back(it->second);
  if (fix.size() == 2) seq.push_back(fix[1]);
  return CircularOrder(std::move(seq));
}

std::vector<CircularOrder> all_circular_orders(std::vector<Label> labels) {
  std::vector<CircularOrder> out;
  if (labels.empty()) {
    out.emplace_back();
    return out;
  }
  std::sort(labels.begin(), labels.end());
  Label first = labels.front();
  std::vector<Label> rest(labels.begin() + 1, labels.end());
  do {
    std::vector<Label> seq{first};
    seq.insert(seq.end(), rest.begin(), rest.end());
    out.emplace_back(std::move(seq));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

}  // namespace spqo

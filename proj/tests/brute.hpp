#pragma once
// Brute-force helpers shared by the unit tests.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "spqo/orders.hpp"

namespace spqo::brute {

inline std::vector<Label> letters(int n) {
  std::vector<Label> out;
  for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

/// True iff the labels in `s` form one contiguous arc of `o`.
inline bool consecutive(const CircularOrder& o, const std::vector<Label>& s) {
  const auto& q = o.seq();
  std::set<Label> in(s.begin(), s.end());
  if (in.size() <= 1 || in.size() >= q.size()) return true;
  int boundaries = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    bool a = in.count(q[i]) > 0, b = in.count(q[(i + 1) % q.size()]) > 0;
    if (a != b) ++boundaries;
  }
  return boundaries == 2;
}

inline std::vector<CircularOrder> filter(const std::vector<CircularOrder>& all,
                                         const std::vector<std::vector<Label>>& family) {
  std::vector<CircularOrder> out;
  for (const auto& o : all) {
    bool ok = true;
    for (const auto& s : family) ok = ok && consecutive(o, s);
    if (ok) out.push_back(o);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<CircularOrder> restrict_all(const std::vector<CircularOrder>& all,
                                               const std::vector<Label>& keep) {
  std::set<CircularOrder> out;
  for (const auto& o : all) out.insert(restrict_order(o, keep));
  return {out.begin(), out.end()};
}

inline std::vector<Label> random_subset(std::mt19937& rng, const std::vector<Label>& from, std::size_t lo,
                                        std::size_t hi) {
  std::uniform_int_distribution<std::size_t> d(lo, std::min(hi, from.size()));
  auto v = from;
  std::shuffle(v.begin(), v.end(), rng);
  v.resize(d(rng));
  std::sort(v.begin(), v.end());
  return v;
}

/// Random family of arcs of a hidden random order, plus occasional noise.
inline std::vector<std::vector<Label>> random_family(std::mt19937& rng, const std::vector<Label>& leaves,
                                                     int count, bool noisy) {
  auto hidden = leaves;
  std::shuffle(hidden.begin(), hidden.end(), rng);
  std::vector<std::vector<Label>> fam;
  std::uniform_int_distribution<std::size_t> pos(0, hidden.size() - 1), len(2, hidden.size() - 1);
  std::uniform_int_distribution<int> coin(0, 5);
  for (int i = 0; i < count; ++i) {
    if (noisy && coin(rng) == 0) {
      fam.push_back(random_subset(rng, leaves, 2, leaves.size() - 1));
      continue;
    }
    std::size_t p = pos(rng), l = len(rng);
    std::vector<Label> s;
    for (std::size_t k = 0; k < l; ++k) s.push_back(hidden[(p + k) % hidden.size()]);
    std::sort(s.begin(), s.end());
    fam.push_back(s);
  }
  return fam;
}

}  // namespace spqo::brute

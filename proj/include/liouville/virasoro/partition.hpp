#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "liouville/numerics/errors.hpp"

namespace liouville {

// Young diagram nu = (nu_1 >= nu_2 >= ... >= nu_s >= 1). The descendant it
// labels is L_{-nu_s} ... L_{-nu_1} |Delta>, so the smallest part is the
// leftmost operator.
struct Partition {
  std::vector<int> parts;

  int size() const {
    int n = 0;
    for (int p : parts) n += p;
    return n;
  }
  int length() const { return static_cast<int>(parts.size()); }
  bool empty() const { return parts.empty(); }
  int smallest() const { return parts.back(); }

  Partition without_smallest() const {
    Partition r{parts};
    r.parts.pop_back();
    return r;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
    return s + ")";
  }

  auto operator<=>(const Partition&) const = default;
};

// All partitions of n, reverse-lexicographic: (3), (2,1), (1,1,1).
inline std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw DomainError("partitions_of: n must be >= 0");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.push_back({cur});
      return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

// Partitions of every level 0..max_level with a reverse index.
class PartitionTable {
 public:
  explicit PartitionTable(int max_level) : levels_(max_level + 1), index_(max_level + 1) {
    if (max_level < 0) throw DomainError("PartitionTable: max_level must be >= 0");
    for (int n = 0; n <= max_level; ++n) {
      levels_[n] = partitions_of(n);
      for (int i = 0; i < static_cast<int>(levels_[n].size()); ++i) index_[n][levels_[n][i].parts] = i;
    }
  }

  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<Partition>& level(int n) const { return levels_.at(n); }
  int dimension(int n) const { return static_cast<int>(levels_.at(n).size()); }

  int index_of(const std::vector<int>& parts, int n) const { return index_.at(n).at(parts); }
  int index_of(const Partition& p) const { return index_of(p.parts, p.size()); }

 private:
  std::vector<std::vector<Partition>> levels_;
  std::vector<std::map<std::vector<int>, int>> index_;
};

}  // namespace liouville

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockunits {

// Isomorphism class of a module of a cyclic p-group: weakly decreasing
// positive parts, canonical form (sorted, no zeros). Equality is structural.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p < 0) throw std::invalid_argument("negative partition part");
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }

  // a parts equal to m (the module I_m^a); empty when a == 0 or m == 0.
  static Partition rectangle(int a, int m) {
    if (a < 0 || m < 0) throw std::invalid_argument("negative rectangle");
    if (m == 0) return Partition{};
    return Partition(std::vector<int>(a, m));
  }

  int rows() const { return (int)parts_.size(); }
  bool empty() const { return parts_.empty(); }
  const std::vector<int>& parts() const { return parts_; }

  // 0-based row length; zero beyond the last row.
  int part(int i) const { return i < (int)parts_.size() ? parts_[i] : 0; }

  int boxes() const {
    int n = 0;
    for (int p : parts_) n += p;
    return n;
  }

  // number of parts >= j (the gamma_j statistic)
  int gamma(int j) const {
    if (j < 1) throw std::invalid_argument("gamma index must be >= 1");
    int n = 0;
    for (int p : parts_) n += (p >= j) ? 1 : 0;
    return n;
  }

  int max_part() const { return parts_.empty() ? 0 : parts_[0]; }

  bool contains(const Partition& mu) const {
    if (mu.rows() > rows()) return false;
    for (int i = 0; i < mu.rows(); ++i)
      if (mu.parts_[i] > parts_[i]) return false;
    return true;
  }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }
  // Total order used for canonical witnesses: fewer boxes first, then
  // descending-lexicographic on parts.
  bool operator<(const Partition& o) const {
    if (boxes() != o.boxes()) return boxes() < o.boxes();
    return parts_ > o.parts_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + "]";
  }

 private:
  std::vector<int> parts_;
};

// All partitions of n with parts <= max_part, descending lexicographic.
std::vector<Partition> partitions_of(int n, int max_part);

// All mu contained in outer with |mu| = n, descending lexicographic.
std::vector<Partition> subpartitions_of_size(const Partition& outer, int n);

}  // namespace blockunits

#ifndef GCUT_DEMAND_LATTICE_H_
#define GCUT_DEMAND_LATTICE_H_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace gcut::internal {

inline constexpr int64_t kNegInf = std::numeric_limits<int64_t>::min() / 4;

// Mixed-radix indexing of residual demand vectors 0 <= d <= caps.
class DemandLattice {
 public:
  explicit DemandLattice(std::vector<int64_t> caps) : caps_(std::move(caps)) {
    stride_.resize(caps_.size());
    size_ = 1;
    for (std::size_t g = 0; g < caps_.size(); ++g) {
      stride_[g] = size_;
      size_ *= caps_[g] + 1;
    }
  }

  int64_t size() const { return size_; }
  int64_t top() const { return size_ - 1; }
  int64_t stride(int g) const { return stride_[g]; }
  int64_t digit(int64_t index, int g) const {
    return (index / stride_[g]) % (caps_[g] + 1);
  }

  // out[d] = max over d1 <= d of a[d1] + b[d - d1].
  std::vector<int64_t> max_plus(const std::vector<int64_t>& a,
                                const std::vector<int64_t>& b) const {
    std::vector<int64_t> out(size_, kNegInf);
    const int groups = static_cast<int>(caps_.size());
    std::vector<int64_t> sub(groups);
    for (int64_t d = 0; d < size_; ++d) {
      // Walk every d1 <= d in mixed radix.
      std::fill(sub.begin(), sub.end(), 0);
      int64_t d1 = 0;
      int64_t best = kNegInf;
      while (true) {
        if (a[d1] > kNegInf && b[d - d1] > kNegInf)
          best = std::max(best, a[d1] + b[d - d1]);
        int g = 0;
        for (; g < groups; ++g) {
          if (sub[g] < digit(d, g)) {
            ++sub[g];
            d1 += stride_[g];
            break;
          }
          d1 -= sub[g] * stride_[g];
          sub[g] = 0;
        }
        if (g == groups) break;
      }
      out[d] = best;
    }
    return out;
  }

  // Split d into d1 + d2 with a[d1] + b[d2] == target; returns d1 or -1.
  int64_t find_split(const std::vector<int64_t>& a,
                     const std::vector<int64_t>& b, int64_t d,
                     int64_t target) const {
    const int groups = static_cast<int>(caps_.size());
    std::vector<int64_t> sub(groups, 0);
    int64_t d1 = 0;
    while (true) {
      if (a[d1] > kNegInf && b[d - d1] > kNegInf && a[d1] + b[d - d1] == target)
        return d1;
      int g = 0;
      for (; g < groups; ++g) {
        if (sub[g] < digit(d, g)) {
          ++sub[g];
          d1 += stride_[g];
          break;
        }
        d1 -= sub[g] * stride_[g];
        sub[g] = 0;
      }
      if (g == groups) return -1;
    }
  }

 private:
  std::vector<int64_t> caps_;
  std::vector<int64_t> stride_;
  int64_t size_ = 1;
};

}  // namespace gcut::internal

#endif  // GCUT_DEMAND_LATTICE_H_

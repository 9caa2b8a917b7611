#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace sigeq {

/// One realisation of the common noise on [0, T]: Poisson jump times with their common
/// marks, and the W0 increments over [0, t_1], [t_1, t_2], ..., [t_n, T].
struct CommonNoisePath {
  double horizon = 0.0;
  std::vector<double> jump_times;
  std::vector<double> common_marks;
  std::vector<double> w0_increments;
  std::uint64_t seed = 0;

  std::size_t jump_count() const { return jump_times.size(); }
  double w0_terminal() const {
    return std::accumulate(w0_increments.begin(), w0_increments.end(), 0.0);
  }
};

}  // namespace sigeq

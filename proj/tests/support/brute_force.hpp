#pragma once

// Literal-enumeration reference for one SafeOpt/LoSBO iteration: every set is
// computed by looping over the defining inequalities pair by pair, with no
// shared code or precomputed distances. Used to cross-check GridSafeBo::step.

#include <limits>
#include <vector>

#include "losbo/kernel.hpp"
#include "losbo/safe_grid.hpp"

namespace losbo::testing {

struct BruteForceStep {
  Vector c_lower, c_upper;
  std::vector<char> safe;
  std::vector<char> expanders, maximizers;
  int chosen = -1;
};

inline BruteForceStep brute_force_step(const std::vector<Vector>& grid,
                                       const Vector& prev_c_lower,
                                       const Vector& prev_c_upper,
                                       const Vector& prev_q_lower,
                                       const Vector& prev_q_upper,
                                       const std::vector<char>& prev_safe, int t,
                                       GridVariant variant, double h, double lipschitz,
                                       double noise_margin, int last_index, double last_y) {
  const int n = static_cast<int>(grid.size());
  BruteForceStep out;

  out.c_lower.resize(n);
  out.c_upper.resize(n);
  for (int i = 0; i < n; ++i) {
    out.c_lower[i] = std::max(prev_c_lower[i], prev_q_lower[i]);
    out.c_upper[i] = std::min(prev_c_upper[i], prev_q_upper[i]);
  }

  out.safe = prev_safe;
  if (t > 1) {
    if (variant == GridVariant::SafeOpt) {
      for (int x = 0; x < n; ++x)
        for (int s = 0; s < n; ++s)
          if (prev_safe[s] && out.c_lower[s] - lipschitz * metric(grid[s], grid[x]) >= h)
            out.safe[x] = 1;
    } else {
      for (int x = 0; x < n; ++x)
        if (last_y - noise_margin - lipschitz * metric(grid[last_index], grid[x]) >= h)
          out.safe[x] = 1;
    }
  }

  out.expanders.assign(n, 0);
  for (int s = 0; s < n; ++s) {
    if (!out.safe[s]) continue;
    for (int x = 0; x < n; ++x) {
      if (out.safe[x]) continue;
      if (out.c_upper[s] - lipschitz * metric(grid[s], grid[x]) >= h) {
        out.expanders[s] = 1;
        break;
      }
    }
  }

  double max_lower = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n; ++s)
    if (out.safe[s]) max_lower = std::max(max_lower, out.c_lower[s]);
  out.maximizers.assign(n, 0);
  for (int s = 0; s < n; ++s)
    if (out.safe[s] && out.c_upper[s] >= max_lower) out.maximizers[s] = 1;

  double best_width = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (!out.expanders[i] && !out.maximizers[i]) continue;
    const double width = out.c_upper[i] - out.c_lower[i];
    if (width > best_width) {
      best_width = width;
      out.chosen = i;
    }
  }
  return out;
}

}  // namespace losbo::testing

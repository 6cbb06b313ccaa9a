#include "support/fit_scan.hpp"

#include <vector>

namespace wicketsim::testing {

std::size_t fit_scan_index(double average, int highest, double cap, const BetaGrid& grid,
                           bool* unsatisfiable) {
  std::vector<bool> ok(grid.count);
  for (std::size_t k = 0; k < grid.count; ++k) {
    const double b = grid.candidate(k);
    ok[k] = gamma_tail(highest, GammaParams{average / b, b}) <= cap;
  }
  *unsatisfiable = false;
  if (ok[0]) {
    std::size_t k = 0;
    while (k + 1 < grid.count && ok[k + 1]) ++k;
    return k;
  }
  for (std::size_t k = 0; k < grid.count; ++k) {
    if (ok[k]) return k;
  }
  *unsatisfiable = true;
  return 0;
}

}  // namespace wicketsim::testing

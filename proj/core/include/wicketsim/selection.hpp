#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wicketsim/rng.hpp"
#include "wicketsim/roster.hpp"

namespace wicketsim {

inline constexpr int kTeamSize = 11;

/// Venue adjustment: move `spin_shift` quota slots from fast bowlers to spinners.
struct ConditionsProfile {
  int spin_shift = 0;
  std::string description;

  friend bool operator==(const ConditionsProfile&, const ConditionsProfile&) = default;
};

/// Per-role quotas for drawing an XI.
///
/// With `overseas_count` set, overseas players form their own stratum from
/// which exactly that many are drawn, and `quotas` covers the remaining
/// slots using domestic players only. Quotas must sum to 11 minus the
/// overseas count.
struct SelectionScheme {
  std::array<int, kRoleCount> quotas{3, 2, 1, 1, 3, 1};
  std::optional<int> overseas_count;
  ConditionsProfile conditions;

  int quota(Role r) const noexcept { return quotas[static_cast<std::size_t>(r)]; }
  int& quota(Role r) noexcept { return quotas[static_cast<std::size_t>(r)]; }

  /// Throws ValidationError when the quota arithmetic is wrong.
  void validate() const;

  static SelectionScheme odi_default();
  static SelectionScheme ipl_default();

  friend bool operator==(const SelectionScheme&, const SelectionScheme&) = default;
};

/// Folds the conditions shift into the quotas and resets the shift to 0,
/// so applying twice is the same as applying once.
SelectionScheme apply_conditions(const SelectionScheme& scheme);

struct LineupConstraint {
  std::set<std::string> locked;
  std::set<std::string> excluded;

  bool empty() const noexcept { return locked.empty() && excluded.empty(); }

  friend bool operator==(const LineupConstraint&, const LineupConstraint&) = default;
};

/// Roster indices of the selected players, ascending.
using Lineup = std::vector<std::size_t>;

/// Precomputed strata for one (team, scheme, constraint). Construction
/// performs every feasibility check, so sampling itself cannot fail.
class StratifiedSampler {
 public:
  /// Throws InfeasibleError naming the failing stratum ("fast", ..., "overseas"),
  /// or ValidationError for malformed constraints.
  StratifiedSampler(const Team& team, const SelectionScheme& scheme,
                    const LineupConstraint& constraint = {});

  /// Draws one uniform key per roster player, in roster order, then keeps the
  /// smallest keys within each stratum. Equivalent to independent simple
  /// random sampling per stratum.
  Lineup sample(RngStream& rng) const;

  /// Same selection rule with caller-supplied keys (one per roster player).
  /// Used for common-random-numbers comparisons where a player's key must not
  /// depend on who else is on the roster.
  Lineup select(std::span<const double> keys) const;

  const Team& team() const noexcept { return *team_; }

 private:
  struct Stratum {
    std::string name;
    std::vector<std::size_t> locked;
    std::vector<std::size_t> candidates;
    std::size_t open_slots = 0;
  };

  const Team* team_;
  std::vector<Stratum> strata_;
};

/// Convenience wrapper over StratifiedSampler.
Lineup sample_xi(const Team& team, const SelectionScheme& scheme,
                 const LineupConstraint& constraint, RngStream& rng);

/// Throws exactly what StratifiedSampler's constructor would.
void check_feasible(const Team& team, const SelectionScheme& scheme,
                    const LineupConstraint& constraint = {});

}  // namespace wicketsim

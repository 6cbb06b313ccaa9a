#include "wicketsim/selection.hpp"

#include <algorithm>
#include <numeric>

#include "wicketsim/error.hpp"

namespace wicketsim {

void SelectionScheme::validate() const {
  int total = 0;
  for (Role r : kAllRoles) {
    if (quota(r) < 0) {
      throw ValidationError("quota for '" + std::string(role_code(r)) + "' is negative");
    }
    total += quota(r);
  }
  int expected = kTeamSize;
  if (overseas_count) {
    if (*overseas_count < 0 || *overseas_count > kTeamSize) {
      throw ValidationError("overseas count must lie in [0, 11]");
    }
    expected -= *overseas_count;
  }
  if (total != expected) {
    throw ValidationError("role quotas sum to " + std::to_string(total) + ", expected " +
                          std::to_string(expected));
  }
  if (conditions.spin_shift < 0) throw ValidationError("spin shift must be nonnegative");
}

SelectionScheme SelectionScheme::odi_default() { return SelectionScheme{}; }

SelectionScheme SelectionScheme::ipl_default() {
  SelectionScheme s;
  s.quotas = {2, 1, 1, 1, 1, 1};
  s.overseas_count = 4;
  return s;
}

SelectionScheme apply_conditions(const SelectionScheme& scheme) {
  const int shift = scheme.conditions.spin_shift;
  if (shift < 0) throw ValidationError("spin shift must be nonnegative");
  if (shift > scheme.quota(Role::FastBowler)) {
    throw ValidationError("spin shift " + std::to_string(shift) + " exceeds the fast bowler quota " +
                          std::to_string(scheme.quota(Role::FastBowler)));
  }
  SelectionScheme out = scheme;
  out.quota(Role::FastBowler) -= shift;
  out.quota(Role::Spinner) += shift;
  out.conditions.spin_shift = 0;
  return out;
}

StratifiedSampler::StratifiedSampler(const Team& team, const SelectionScheme& raw_scheme,
                                     const LineupConstraint& constraint)
    : team_(&team) {
  raw_scheme.validate();
  const SelectionScheme scheme = apply_conditions(raw_scheme);

  for (const auto& id : constraint.locked) {
    if (constraint.excluded.contains(id)) {
      throw ValidationError("player '" + id + "' is both locked and excluded");
    }
  }
  auto on_roster = [&](const std::string& id) {
    return std::any_of(team.roster.begin(), team.roster.end(),
                       [&](const Player& p) { return p.id == id; });
  };
  for (const auto* set : {&constraint.locked, &constraint.excluded}) {
    for (const auto& id : *set) {
      if (!on_roster(id)) {
        throw ValidationError("player '" + id + "' is not on the roster of '" + team.id + "'");
      }
    }
  }

  const bool overseas_mode = scheme.overseas_count.has_value();
  // Role strata first, then the overseas stratum.
  strata_.resize(kRoleCount + (overseas_mode ? 1 : 0));
  std::vector<std::size_t> quota(strata_.size());
  for (Role r : kAllRoles) {
    strata_[static_cast<std::size_t>(r)].name = std::string(role_code(r));
    quota[static_cast<std::size_t>(r)] = static_cast<std::size_t>(scheme.quota(r));
  }
  if (overseas_mode) {
    strata_.back().name = "overseas";
    quota.back() = static_cast<std::size_t>(*scheme.overseas_count);
  }

  for (std::size_t i = 0; i < team.roster.size(); ++i) {
    const Player& p = team.roster[i];
    Stratum& s = (overseas_mode && p.overseas) ? strata_.back()
                                               : strata_[static_cast<std::size_t>(p.role)];
    if (constraint.locked.contains(p.id)) {
      s.locked.push_back(i);
    } else if (!constraint.excluded.contains(p.id)) {
      s.candidates.push_back(i);
    }
  }

  for (std::size_t k = 0; k < strata_.size(); ++k) {
    Stratum& s = strata_[k];
    if (s.locked.size() > quota[k]) {
      throw InfeasibleError(s.name, "stratum '" + s.name + "': " + std::to_string(s.locked.size()) +
                                        " locked players exceed the quota of " +
                                        std::to_string(quota[k]));
    }
    s.open_slots = quota[k] - s.locked.size();
    if (s.candidates.size() < s.open_slots) {
      throw InfeasibleError(s.name, "stratum '" + s.name + "': quota " + std::to_string(quota[k]) +
                                        " but only " +
                                        std::to_string(s.locked.size() + s.candidates.size()) +
                                        " eligible players on '" + team.id + "'");
    }
  }
}

Lineup StratifiedSampler::select(std::span<const double> keys) const {
  if (keys.size() != team_->roster.size()) {
    throw ValidationError("selection keys must cover the whole roster");
  }
  Lineup out;
  out.reserve(kTeamSize);
  std::vector<std::size_t> order;
  for (const Stratum& s : strata_) {
    out.insert(out.end(), s.locked.begin(), s.locked.end());
    if (s.open_slots == 0) continue;
    order = s.candidates;
    // Ties are broken by roster index so the result is a function of the keys alone.
    auto less = [&](std::size_t a, std::size_t b) {
      return keys[a] < keys[b] || (keys[a] == keys[b] && a < b);
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s.open_slots),
                      order.end(), less);
    out.insert(out.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s.open_slots));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Lineup StratifiedSampler::sample(RngStream& rng) const {
  std::vector<double> keys(team_->roster.size());
  for (double& k : keys) k = rng.uniform();
  return select(keys);
}

Lineup sample_xi(const Team& team, const SelectionScheme& scheme,
                 const LineupConstraint& constraint, RngStream& rng) {
  return StratifiedSampler(team, scheme, constraint).sample(rng);
}

void check_feasible(const Team& team, const SelectionScheme& scheme,
                    const LineupConstraint& constraint) {
  StratifiedSampler sampler(team, scheme, constraint);
  (void)sampler;
}

}  // namespace wicketsim

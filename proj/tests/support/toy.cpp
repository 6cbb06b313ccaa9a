#include "support/toy.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace wicketsim::testing {

namespace {
constexpr std::array<Role, 6> kOverseasRoles = {Role::Batsman, Role::FastBowler,
                                                Role::Spinner, Role::AllRounderFast,
                                                Role::WicketKeeper, Role::AllRounderSpinner};
}

std::string toy_player(const std::string& team, Role role, int k) {
  return team + "." + std::string(role_code(role)) + "." + std::to_string(k);
}

Dataset toy_dataset(const std::vector<ToyTeam>& specs) {
  std::vector<Team> teams;
  std::vector<MatchupRecord> records;
  for (const auto& spec : specs) {
    Team t{spec.id, "Team " + spec.id, {}};
    for (std::size_t r = 0; r < kRoleCount; ++r) {
      for (int k = 0; k < spec.counts[r]; ++k) {
        const Role role = kAllRoles[r];
        t.roster.push_back({toy_player(spec.id, role, k), "", spec.id, role, false});
      }
    }
    for (int k = 0; k < spec.overseas; ++k) {
      const Role role = kOverseasRoles[static_cast<std::size_t>(k) % kOverseasRoles.size()];
      t.roster.push_back({spec.id + ".os." + std::to_string(k), "", spec.id, role, true});
    }
    for (const auto& p : t.roster) {
      records.push_back({p.id, std::string(kAllOpponents), spec.average, spec.highest, 20,
                         SourceTier::International});
    }
    teams.push_back(std::move(t));
  }
  LeagueDefaults defaults;
  for (Role r : kAllRoles) defaults[r] = RoleDefault{25.0, 80};
  return Dataset::build(std::move(teams), std::move(records), std::move(defaults));
}

GammaParams with_mean_sd(double mean, double sd) {
  const double beta = sd * sd / mean;
  return GammaParams{mean / beta, beta};
}

void set_team_prior(PriorTable& priors, const std::string& team, const GammaParams& params) {
  for (const auto& p : priors.dataset().team(team).roster) priors.override_params(p.id, "", params);
}

namespace {
std::vector<ToyTeam> toy_specs(const std::vector<std::string>& ids) {
  std::vector<ToyTeam> specs;
  for (const auto& id : ids) specs.push_back(ToyTeam{id});
  return specs;
}
}  // namespace

SwingLeague::SwingLeague(const std::vector<std::string>& ids,
                         const std::vector<GammaParams>& swings)
    : dataset_(toy_dataset(toy_specs(ids))), priors_(dataset_) {
  for (std::size_t t = 0; t < ids.size(); ++t) {
    set_team_prior(priors_, ids[t], point_mass(10));
    priors_.override_params(toy_player(ids[t], Role::Batsman, 0), "", swings[t]);
  }
}

std::filesystem::path data_dir() { return WICKETSIM_DATA_DIR; }

Dataset load_fixture_dataset(const std::string& name) {
  const auto dir = data_dir() / name;
  return load_dataset(dir / "stats.csv", dir / "teams.json", dir / "defaults.json");
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("wicketsim-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << text;
}

}  // namespace wicketsim::testing

#include "wicketsim/matchsim.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "parallel.hpp"
#include "wicketsim/error.hpp"

namespace wicketsim {

namespace {

// Substream tags; distinct so that differently-purposed streams never collide.
constexpr std::uint64_t kReplicateTag = 0x5245504cULL;  // "REPL"
constexpr std::uint64_t kFixedXiTag = 0x46495849ULL;    // "FIXI"
constexpr std::uint64_t kCrnTag = 0x43524e30ULL;        // "CRN0"
constexpr std::uint64_t kSelectTag = 0x53454c43ULL;     // "SELC"
constexpr std::uint64_t kScoreTag = 0x53434f52ULL;      // "SCOR"
constexpr std::uint64_t kPairTag = 0x50414952ULL;       // "PAIR"

}  // namespace

// ---------------------------------------------------------------------------
// PriorTable

PriorTable::PriorTable(const Dataset& dataset, const FitOptions& options)
    : dataset_(&dataset), options_(options), team_count_(dataset.teams().size()) {
  std::map<std::pair<double, int>, FitResult> cache;
  entries_.resize(team_count_);
  for (std::size_t t = 0; t < team_count_; ++t) {
    const Team& team = dataset.teams()[t];
    auto& row = entries_[t];
    row.resize(team.roster.size() * team_count_);
    for (std::size_t p = 0; p < team.roster.size(); ++p) {
      for (std::size_t o = 0; o < team_count_; ++o) {
        MatchupRecord rec = resolve_matchup(team.roster[p].id, dataset.teams()[o].id, dataset);
        const auto key = std::pair{rec.average, rec.highest};
        auto it = cache.find(key);
        if (it == cache.end()) {
          it = cache.emplace(key, fit_gamma(rec.average, rec.highest, options_)).first;
        }
        row[p * team_count_ + o] = PriorEntry{it->second.params, std::move(rec), it->second.flags};
      }
    }
  }
}

PriorEntry& PriorTable::slot(std::string_view player_id, std::size_t opponent) {
  for (std::size_t t = 0; t < team_count_; ++t) {
    const auto& roster = dataset_->teams()[t].roster;
    for (std::size_t p = 0; p < roster.size(); ++p) {
      if (roster[p].id == player_id) return entries_[t][p * team_count_ + opponent];
    }
  }
  throw ValidationError("unknown player '" + std::string(player_id) + "'");
}

const PriorEntry& PriorTable::get(std::string_view player_id, std::string_view opponent_id) const {
  const auto opp = dataset_->team_index(opponent_id);
  if (!opp) throw ValidationError("unknown team '" + std::string(opponent_id) + "'");
  return const_cast<PriorTable*>(this)->slot(player_id, *opp);
}

void PriorTable::override_params(std::string_view player_id, std::string_view opponent_id,
                                 const GammaParams& params) {
  require_valid(params);
  if (opponent_id.empty()) {
    for (std::size_t o = 0; o < team_count_; ++o) slot(player_id, o).params = params;
    return;
  }
  const auto opp = dataset_->team_index(opponent_id);
  if (!opp) throw ValidationError("unknown team '" + std::string(opponent_id) + "'");
  slot(player_id, *opp).params = params;
}

// ---------------------------------------------------------------------------
// Match engine

Outcome decide(int score_a, int score_b) noexcept {
  if (score_a > score_b) return Outcome::AWins;
  if (score_b > score_a) return Outcome::BWins;
  return Outcome::Draw;
}

int round_score(double x) noexcept { return static_cast<int>(std::llround(x)); }

MatchEngine::MatchEngine(const PriorTable& priors, const std::vector<SideSetup>& sides)
    : priors_(&priors) {
  const Dataset& ds = priors.dataset();
  sides_.reserve(sides.size());
  for (const auto& s : sides) {
    const auto idx = ds.team_index(s.team_id);
    if (!idx) throw ValidationError("unknown team '" + s.team_id + "'");
    const Team& team = ds.teams()[*idx];
    sides_.push_back(Side{&team, *idx, StratifiedSampler(team, s.scheme, s.constraint)});
  }
}

const PriorEntry& MatchEngine::prior(std::size_t side, std::size_t roster_index,
                                     std::size_t opponent_side) const {
  return priors_->get(sides_[side].team_index, roster_index, sides_[opponent_side].team_index);
}

int MatchEngine::team_score(std::size_t side, const Lineup& xi, std::size_t opponent_side,
                            RngStream& rng) const {
  int total = 0;
  for (std::size_t idx : xi) {
    total += round_score(gamma_sample(prior(side, idx, opponent_side).params, rng));
  }
  return total;
}

MatchResult MatchEngine::play(std::size_t side_a, std::size_t side_b, RngStream& rng) const {
  const Lineup xi_a = sides_[side_a].sampler.sample(rng);
  const Lineup xi_b = sides_[side_b].sampler.sample(rng);
  MatchResult r;
  r.score_a = team_score(side_a, xi_a, side_b, rng);
  r.score_b = team_score(side_b, xi_b, side_a, rng);
  r.outcome = decide(r.score_a, r.score_b);
  return r;
}

Lineup MatchEngine::crn_lineup(std::size_t side, std::uint64_t key_seed) const {
  const auto& roster = sides_[side].team->roster;
  std::vector<double> keys(roster.size());
  for (std::size_t i = 0; i < roster.size(); ++i) {
    keys[i] = bits_to_open_unit(derive_key(key_seed, {kSelectTag, hash_id(roster[i].id)}));
  }
  return sides_[side].sampler.select(keys);
}

int MatchEngine::crn_team_score(std::size_t side, const Lineup& xi, std::size_t opponent_side,
                                std::uint64_t key_seed) const {
  const auto& roster = sides_[side].team->roster;
  const std::uint64_t opp = hash_id(sides_[opponent_side].team->id);
  int total = 0;
  for (std::size_t idx : xi) {
    const double u = bits_to_open_unit(derive_key(key_seed, {kScoreTag, hash_id(roster[idx].id), opp}));
    total += round_score(gamma_quantile(u, prior(side, idx, opponent_side).params));
  }
  return total;
}

MatchResult MatchEngine::play_crn(std::size_t side_a, std::size_t side_b, std::uint64_t key_seed,
                                  const Lineup* fixed_a, const Lineup* fixed_b) const {
  const Lineup xi_a = fixed_a ? *fixed_a : crn_lineup(side_a, key_seed);
  const Lineup xi_b = fixed_b ? *fixed_b : crn_lineup(side_b, key_seed);
  MatchResult r;
  r.score_a = crn_team_score(side_a, xi_a, side_b, key_seed);
  r.score_b = crn_team_score(side_b, xi_b, side_a, key_seed);
  r.outcome = decide(r.score_a, r.score_b);
  return r;
}

MatchResult simulate_match(const PriorTable& priors, const SideSetup& a, const SideSetup& b,
                           RngStream& rng) {
  const MatchEngine engine(priors, {a, b});
  return engine.play(0, 1, rng);
}

// ---------------------------------------------------------------------------
// Estimates

MatchEstimate estimate_matchup(const PriorTable& priors, const SideSetup& a, const SideSetup& b,
                               std::uint64_t n, std::uint64_t seed,
                               const MatchSettings& settings) {
  if (n == 0) throw ValidationError("replicate count must be at least 1");
  const MatchEngine engine(priors, {a, b});
  const bool crn = settings.common_random_numbers;

  Lineup fixed_a, fixed_b;
  if (settings.fixed_xi) {
    if (crn) {
      const std::uint64_t k = derive_key(seed, {kFixedXiTag});
      fixed_a = engine.crn_lineup(0, k);
      fixed_b = engine.crn_lineup(1, k);
    } else {
      RngStream rng = RngStream::substream(seed, {kFixedXiTag});
      fixed_a = engine.sampler(0).sample(rng);
      fixed_b = engine.sampler(1).sample(rng);
    }
  }

  struct Tally {
    std::uint64_t wins_a = 0, wins_b = 0, draws = 0;
    std::int64_t runs_a = 0, runs_b = 0;
  };
  const unsigned workers = resolve_workers(settings.workers);
  std::vector<Tally> tallies(workers);

  parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    Tally& t = tallies[w];
    for (std::size_t r = begin; r < end; ++r) {
      MatchResult m;
      if (crn) {
        const std::uint64_t k = derive_key(seed, {kCrnTag, r});
        m = settings.fixed_xi ? engine.play_crn(0, 1, k, &fixed_a, &fixed_b)
                              : engine.play_crn(0, 1, k);
      } else {
        RngStream rng = RngStream::substream(seed, {kReplicateTag, r});
        if (settings.fixed_xi) {
          m.score_a = engine.team_score(0, fixed_a, 1, rng);
          m.score_b = engine.team_score(1, fixed_b, 0, rng);
          m.outcome = decide(m.score_a, m.score_b);
        } else {
          m = engine.play(0, 1, rng);
        }
      }
      switch (m.outcome) {
        case Outcome::AWins: ++t.wins_a; break;
        case Outcome::BWins: ++t.wins_b; break;
        case Outcome::Draw: ++t.draws; break;
      }
      t.runs_a += m.score_a;
      t.runs_b += m.score_b;
    }
  });

  Tally total;
  for (const auto& t : tallies) {
    total.wins_a += t.wins_a;
    total.wins_b += t.wins_b;
    total.draws += t.draws;
    total.runs_a += t.runs_a;
    total.runs_b += t.runs_b;
  }
  MatchEstimate e;
  e.team_a = a.team_id;
  e.team_b = b.team_id;
  e.n = n;
  e.seed = seed;
  e.wins_a = total.wins_a;
  e.wins_b = total.wins_b;
  e.draws = total.draws;
  const double dn = static_cast<double>(n);
  e.p_a = static_cast<double>(total.wins_a) / dn;
  e.p_b = static_cast<double>(total.wins_b) / dn;
  e.p_draw = static_cast<double>(total.draws) / dn;
  e.mean_score_a = static_cast<double>(total.runs_a) / dn;
  e.mean_score_b = static_cast<double>(total.runs_b) / dn;
  return e;
}

const MatchEstimate& HeadToHead::at(std::string_view a, std::string_view b) const {
  for (const auto& e : entries) {
    if (e.team_a == a && e.team_b == b) return e;
  }
  throw ValidationError("no head-to-head entry for (" + std::string(a) + ", " + std::string(b) +
                        ")");
}

std::uint64_t pair_seed(std::uint64_t seed, std::string_view a, std::string_view b) noexcept {
  return derive_key(seed, {kPairTag, hash_id(a), hash_id(b)});
}

HeadToHead head_to_head_matrix(const PriorTable& priors, const std::vector<std::string>& team_ids,
                               const SelectionScheme& scheme, std::uint64_t n, std::uint64_t seed,
                               const MatchSettings& settings) {
  if (team_ids.size() < 2) throw ValidationError("head-to-head needs at least two teams");
  HeadToHead out;
  out.teams = team_ids;
  out.seed = seed;
  for (const auto& a : team_ids) {
    for (const auto& b : team_ids) {
      if (a == b) continue;
      out.entries.push_back(estimate_matchup(priors, SideSetup{a, scheme, {}},
                                             SideSetup{b, scheme, {}}, n, pair_seed(seed, a, b),
                                             settings));
    }
  }
  return out;
}

}  // namespace wicketsim

#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>
#include <vector>

#include "wicketsim/config.hpp"
#include "wicketsim/matchsim.hpp"
#include "wicketsim/priors.hpp"
#include "wicketsim/tournament.hpp"

namespace ws = wicketsim;

namespace {

const std::filesystem::path kData = WICKETSIM_DATA_DIR;

struct Fixture {
  ws::SimulationConfig config;
  ws::Dataset dataset;
  ws::PriorTable priors;

  explicit Fixture(const std::string& name)
      : config(ws::load_simulation_config(kData / name / "tournament.json")),
        dataset(ws::load_dataset(config.dataset)),
        priors(dataset, config.fit) {
    ws::resolve_teams(config, dataset);
  }
};

const Fixture& cwc() {
  static const Fixture f("cwc12");
  return f;
}

void BM_FitGamma(benchmark::State& state) {
  const ws::BetaGrid grid;
  double avg = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ws::fit_gamma(ws::FitInput{avg, 3 * static_cast<int>(avg), 0.05}, grid));
    avg = avg >= 60.0 ? 10.0 : avg + 0.37;
  }
}
BENCHMARK(BM_FitGamma);

void BM_GammaSample(benchmark::State& state) {
  const ws::GammaParams p{static_cast<double>(state.range(0)) / 10.0, 20.0};
  ws::RngStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(ws::gamma_sample(p, rng));
}
BENCHMARK(BM_GammaSample)->Arg(5)->Arg(27)->Arg(866);

void BM_SimulateMatch(benchmark::State& state) {
  const Fixture& f = cwc();
  const ws::MatchEngine engine(f.priors, {{"ALD", f.config.tournament.scheme, {}},
                                          {"BRK", f.config.tournament.scheme, {}}});
  ws::RngStream rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(engine.play(0, 1, rng));
}
BENCHMARK(BM_SimulateMatch);

void BM_Tournament(benchmark::State& state) {
  const Fixture& f = cwc();
  ws::TournamentConfig cfg = f.config.tournament;
  cfg.sims = static_cast<std::uint64_t>(state.range(0));
  cfg.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ws::simulate_tournament(cfg, f.priors));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Tournament)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

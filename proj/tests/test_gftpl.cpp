#include <cmath>

#include "mmo/gftpl.hpp"
#include "mmo/harness.hpp"
#include "test_util.hpp"

using namespace mmo;

namespace {

GftplConfig small_config(std::uint32_t n) {
  GftplConfig cfg;
  cfg.N = n;
  cfg.G_f = 1;
  cfg.F_M = 1;
  return cfg;
}

} // namespace

TEST_SUITE("gftpl") {

TEST_CASE("draw_perturbation examples") {
  GftplConfig cfg = small_config(3);
  SeededRng r0(1);
  CHECK(draw_perturbation(cfg, r0) == std::vector<double>{0, 0, 0});

  cfg.eta = 1.0;
  SeededRng a(8), b(8);
  CHECK(draw_perturbation(cfg, a) == draw_perturbation(cfg, b));

  cfg.N = 10000;
  SeededRng s(3);
  const auto big = draw_perturbation(cfg, s);
  double sum = 0.0;
  for (double v : big) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    sum += v;
  }
  CHECK(std::abs(sum / 10000.0 - 0.5) <= 0.02);
}

TEST_CASE("epsilon_prime examples") {
  GftplConfig cfg = small_config(2);
  cfg.F_M = 1;
  cfg.eta = 1;
  cfg.Gamma_M = 1;
  CHECK(epsilon_prime(0.1, 100, cfg) == doctest::Approx(0.1 / 102));
  CHECK(epsilon_prime(0.1, 100, cfg) == doctest::Approx(9.804e-4).epsilon(1e-4));
  CHECK(epsilon_prime(0.0, 100, cfg) == 0.0);

  GftplConfig one = small_config(1);
  one.F_M = 1;
  one.eta = 0;
  CHECK(epsilon_prime(1.0 / std::sqrt(1e4), 10000, one) == doctest::Approx(1e-6));

  GftplConfig zero = small_config(1);
  zero.F_M = 0;
  zero.eta = 0;
  CHECK(expect_error([&] { epsilon_prime(0.1, 10, zero); }).code() ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("theorem3_bound examples") {
  GftplConfig cfg;
  cfg.N = 2;
  cfg.kappa = 2;
  cfg.G_f = 1;
  cfg.G_gamma = 1;
  cfg.delta = 1;
  CHECK(theorem3_bound(cfg, 0.1, 100) == doctest::Approx(2 * std::sqrt(240.0) + 10));
  CHECK(theorem3_bound(cfg, 0.1, 100) == doctest::Approx(40.98).epsilon(1e-3));
  CHECK(theorem3_bound(cfg, 0.1, 0) == 0.0);

  GftplConfig unit;
  unit.N = 1;
  unit.kappa = 1;
  unit.G_f = 1;
  unit.G_gamma = 1;
  unit.delta = 1;
  CHECK(theorem3_bound(unit, 0.0, 4) == doctest::Approx(2.0));
}

TEST_CASE("config validation") {
  GftplConfig cfg = small_config(2);
  cfg.eta = -1;
  CHECK(expect_error([&] { cfg.validate(); }).code() == ErrorCode::InvalidArgument);
  cfg = small_config(2);
  cfg.kappa = 0.5;
  CHECK(expect_error([&] { cfg.validate(); }).code() == ErrorCode::InvalidArgument);
  cfg = small_config(2);
  cfg.delta = 0;
  CHECK(expect_error([&] { cfg.validate(); }).code() == ErrorCode::InvalidArgument);
}

TEST_CASE("default eta and payoff range") {
  CHECK(default_eta(2, 1, 1, 1, 0.1, 100) == doctest::Approx(std::sqrt(2 * 1 * 1.2 * 100)));
  // Items w = (1, 2), c = 1, one round with p = (3, 1), B = 1: the largest
  // profit sum is 4 and the deepest penalty is 1 * (3 - 1) = 2.
  const GkpStatic s{{1, 2}, 1.0};
  const std::vector<GkpRound> rounds{{{3, 1}, 1}};
  const auto range = gkp_payoff_range(s, rounds);
  CHECK(range.F_M == 4.0);
  CHECK(range.G_f == 6.0);
  const auto cfg = default_gkp_config(s, rounds, EpsSchedule::Additive);
  CHECK(cfg.N == 2);
  CHECK(cfg.eps == 1.0);
  CHECK(cfg.eta == doctest::Approx(default_eta(2, 6, 1, 1, 1, 1)));
}

TEST_CASE("gftpl_run on an empty stream") {
  const GkpStatic s{{1, 2}, 1.0};
  SeededRng rng(1);
  const auto trace = gftpl_run(s, {}, brute_gkp_oracle(), small_config(2), rng);
  CHECK(trace.rows.empty());
  CHECK(compute_regret(trace, 1.0) == 0.0);
}

TEST_CASE("zero perturbation with a constant adversary plays the static optimum") {
  SeededRng gen(12);
  const auto base = gen_random_gkp(6, 1, 1.0, gen);
  const std::vector<GkpRound> stream(40, base.rounds[0]);
  GftplConfig cfg = default_gkp_config(base.statics, stream, EpsSchedule::Additive);
  cfg.eta = 0.0;
  SeededRng rng(3);
  const auto trace = gftpl_run(base.statics, stream, brute_gkp_oracle(), cfg, rng);
  const auto best = brute_oracle(base.statics, stream);
  for (std::size_t t = 1; t < trace.rows.size(); ++t) CHECK(trace.rows[t].action == best.items);
  CHECK(compute_regret(trace, 1.0) <= cfg.G_f);
}

TEST_CASE("zero perturbation with the exact oracle is follow-the-leader") {
  SeededRng gen(99);
  for (int k = 0; k < 5; ++k) {
    const auto set = gen_random_gkp(2 + static_cast<std::uint32_t>(gen.below(9)), 25, 1.0, gen);
    GftplConfig cfg = default_gkp_config(set.statics, set.rounds, EpsSchedule::Additive);
    cfg.eta = 0.0;
    SeededRng rng(k);
    const auto trace = gftpl_run(set.statics, set.rounds, brute_gkp_oracle(), cfg, rng);
    for (std::size_t t = 0; t < set.rounds.size(); ++t) {
      const std::span<const GkpRound> history(set.rounds.data(), t);
      const auto leader = brute_oracle(set.statics, history);
      CHECK(multi_gkp_profit(trace.rows[t].action, set.statics, history) ==
            doctest::Approx(leader.profit).epsilon(1e-12));
    }
  }
}

TEST_CASE("oracle audit against sampled actions") {
  SeededRng gen(5);
  const auto set = gen_random_gkp(8, 30, 1.0, gen);
  for (auto schedule : {EpsSchedule::Additive, EpsSchedule::Fptas}) {
    const auto cfg = default_gkp_config(set.statics, set.rounds, schedule);
    const auto oracle = schedule == EpsSchedule::Fptas ? fptas_gkp_oracle() : brute_gkp_oracle();
    SeededRng rng(17);
    const auto trace = gftpl_run(set.statics, set.rounds, oracle, cfg, rng);
    REQUIRE(trace.perturbation.size() == cfg.N);
    const double eps_prime = epsilon_prime(cfg.eps, set.rounds.size(), cfg);

    // Rebuild each round's perturbed objective from the recorded draw.
    const auto markers = distinguisher_set(set.statics, cfg.marker_profit);
    SeededRng sampler(1);
    for (std::size_t t = 0; t < set.rounds.size(); ++t) {
      auto perturbed_value = [&](const ItemSet& a) {
        double v = 0.0;
        for (std::size_t s = 0; s < t; ++s) v += gkp_profit(a, set.statics, set.rounds[s]);
        for (std::size_t j = 0; j < markers.size(); ++j)
          v += trace.perturbation[j] * gkp_profit(a, set.statics, markers[j]);
        return v;
      };
      const double played = perturbed_value(trace.rows[t].action);
      CHECK(played == doctest::Approx(trace.extra(t, "perturbed_value")).epsilon(1e-9));
      for (int k = 0; k < 100; ++k) {
        ItemSet x;
        for (std::uint32_t i = 0; i < 8; ++i)
          if (sampler.bernoulli(0.5)) x.push_back(i);
        const double other = perturbed_value(x);
        if (schedule == EpsSchedule::Fptas)
          CHECK(played >= (1.0 - eps_prime) * other - 1e-9);
        else
          CHECK(played >= other - cfg.eps - 1e-9);
      }
    }
  }
}

TEST_CASE("trace layout and exact regret recomputation") {
  SeededRng gen(8);
  const auto set = gen_random_gkp(5, 50, 1.0, gen);
  const auto cfg = default_gkp_config(set.statics, set.rounds, EpsSchedule::Additive);
  SeededRng rng(4);
  const auto trace = gftpl_run(set.statics, set.rounds, brute_gkp_oracle(), cfg, rng);
  CHECK(trace.csv_columns == std::vector<std::string>{"t", "played_set", "payoff", "cum_payoff",
                                                      "best_static_cum", "regret",
                                                      "theorem3_bound"});
  CHECK(prefix_sums_consistent(trace));

  const auto best = brute_oracle(set.statics, set.rounds);
  double best_cum = 0.0, cum = 0.0;
  for (std::size_t t = 0; t < set.rounds.size(); ++t) {
    best_cum += gkp_profit(best.items, set.statics, set.rounds[t]);
    cum += gkp_profit(trace.rows[t].action, set.statics, set.rounds[t]);
    CHECK(trace.rows[t].value == gkp_profit(trace.rows[t].action, set.statics, set.rounds[t]));
    CHECK(trace.extra(t, "best_static_cum") == best_cum);
  }
  CHECK(trace.total() == cum);
  CHECK(compute_regret(trace, 1.0) == best_cum - cum);
}

TEST_CASE("gftpl_run errors") {
  SeededRng gen(2);
  const auto set = gen_random_gkp(4, 6, 1.0, gen);
  auto cfg = default_gkp_config(set.statics, set.rounds, EpsSchedule::Additive);

  int calls = 0;
  const GkpOracle flaky = [&](const MultiGkp& inst, double) {
    if (++calls == 3) throw Error(ErrorCode::GridOverflow, "boom");
    return brute_oracle(inst);
  };
  SeededRng r1(1);
  auto e = expect_error([&] { gftpl_run(set.statics, set.rounds, flaky, cfg, r1); });
  CHECK(e.code() == ErrorCode::GridOverflow);
  CHECK(contains(e.what(), "round 3"));

  // Heavy items with a harsh penalty make the full set negative.
  const GkpStatic heavy{{5, 5}, 10.0};
  const std::vector<GkpRound> rounds(3, GkpRound{{1, 1}, 1});
  auto fcfg = default_gkp_config(heavy, rounds, EpsSchedule::Fptas);
  fcfg.eta = 0.0;
  const GkpOracle greedy = [](const MultiGkp&, double) {
    GkpSolution s;
    s.items = {0, 1};
    return s;
  };
  SeededRng r2(1);
  auto neg = expect_error([&] { gftpl_run(heavy, rounds, greedy, fcfg, r2); });
  CHECK(neg.code() == ErrorCode::OracleFailure);
  CHECK(contains(neg.what(), "negative"));

  cfg.N = 3;
  SeededRng r3(1);
  CHECK(expect_error([&] { gftpl_run(set.statics, set.rounds, brute_gkp_oracle(), cfg, r3); })
            .code() == ErrorCode::InvalidArgument);
}

TEST_CASE("regret per round shrinks with the horizon") {
  // n = 4 items, 10 seeds per horizon.
  auto mean_regret_per_T = [](std::size_t T) {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SeededRng rng(seed);
      const auto set = gen_random_gkp(4, T, 1.0, rng);
      const auto cfg = default_gkp_config(set.statics, set.rounds, EpsSchedule::Additive);
      const auto trace = gftpl_run(set.statics, set.rounds, brute_gkp_oracle(), cfg, rng);
      total += compute_regret(trace, 1.0);
    }
    return total / 10.0 / static_cast<double>(T);
  };
  CHECK(mean_regret_per_T(4096) < mean_regret_per_T(256));
}

}

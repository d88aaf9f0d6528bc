#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mmo/reductions.hpp"
#include "test_util.hpp"

using namespace mmo;

namespace {

Graph complete(std::uint32_t n) {
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

Graph star(std::uint32_t leaves) {
  std::vector<Edge> e;
  for (std::uint32_t i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph(leaves + 1, e);
}

// Smallest vertex cover by subset enumeration.
std::size_t min_cover_size(const Graph& g) {
  const auto n = g.vertex_count();
  std::size_t best = n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (auto [i, j] : g.edges())
      if (!((mask >> i) & 1) && !((mask >> j) & 1)) ok = false;
    if (ok) best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
  }
  return best;
}

// Proper 3-coloring exists, by base-3 enumeration.
bool colorable(const Graph& g) {
  const auto n = g.vertex_count();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < n; ++i) total *= 3;
  std::vector<int> c(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (std::uint32_t i = 0; i < n; ++i) {
      c[i] = static_cast<int>(x % 3);
      x /= 3;
    }
    bool ok = true;
    for (auto [i, j] : g.edges()) ok = ok && c[i] != c[j];
    if (ok) return true;
  }
  return false;
}

std::size_t max_satisfied(const Dnf3Formula& f) {
  const auto n = f.variable_count();
  std::size_t best = 0;
  std::vector<bool> sigma(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::uint32_t i = 0; i < n; ++i) sigma[i] = (mask >> i) & 1;
    std::size_t sat = 0;
    for (const auto& cl : f.clauses()) {
      bool all = true;
      for (const auto& lit : cl) all = all && (sigma[lit.var] != lit.negated);
      sat += all;
    }
    best = std::max(best, sat);
  }
  return best;
}

class FixedLearner final : public VcLearner {
public:
  explicit FixedLearner(Subset s) : s_(std::move(s)) {}
  Subset play() override { return s_; }
  void feedback(std::span<const double>, double) override {}

private:
  Subset s_;
};

} // namespace

TEST_SUITE("reductions") {

TEST_CASE("gap_horizon examples") {
  GapConfig cfg;
  cfg.A = 0.25;
  cfg.B = 0.5;
  cfg.p_coeff = 1.0;
  cfg.c_exp = 0.5;
  CHECK(gap_horizon(cfg, 1.0, 1) == 16);

  // (A eps / (2 p B))^{-2}: doubling eps quarters the horizon.
  const auto t1 = gap_horizon(cfg, 0.1, 1);
  const auto t2 = gap_horizon(cfg, 0.2, 1);
  CHECK(t1 > t2);
  CHECK(std::abs(static_cast<double>(t1) - 1600.0) <= 1.0);
  CHECK(std::abs(static_cast<double>(t2) - 400.0) <= 1.0);

  GapConfig unit;
  unit.A = 0.5;
  unit.B = 1.0;
  unit.p_coeff = 1.0;
  unit.c_exp = 0.5;
  CHECK(gap_horizon(unit, 4.0, 1) == 1);

  cfg.c_exp = 1.0;
  CHECK(expect_error([&] { gap_horizon(cfg, 1.0, 1); }).code() == ErrorCode::InvalidArgument);
}

TEST_CASE("gap config validation") {
  GapConfig cfg;
  cfg.A = 0.6;
  cfg.B = 0.5;
  CHECK(expect_error([&] { cfg.validate(); }).code() == ErrorCode::InvalidArgument);
  cfg.A = 0.1;
  cfg.c_exp = 1.5;
  CHECK(expect_error([&] { cfg.validate(); }).code() == ErrorCode::InvalidArgument);
}

TEST_CASE("gap_solver answers No on K4 with B = 3/4") {
  GapConfig cfg;
  cfg.A = 0.5;
  cfg.B = 0.75;
  const Graph k4 = complete(4);
  FollowTheLeaderVc ftl(k4);
  SeededRng rng(1);
  const auto out = gap_solver(k4, cfg, 1.0, ftl, rng);
  CHECK(out.answer == GapAnswer::No);
  CHECK(out.rounds == out.horizon);
  CHECK(out.horizon == gap_horizon(cfg, 1.0, 4));
  for (auto s : out.played_sizes) CHECK(s >= 3);
}

TEST_CASE("gap_solver answers Yes on a star") {
  GapConfig cfg;
  cfg.A = 1.0 / 6.0;
  cfg.B = 0.5;
  const Graph g = star(5);
  int yes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    FollowTheLeaderVc ftl(g);
    SeededRng rng(seed);
    yes += gap_solver(g, cfg, 1.0, ftl, rng).answer == GapAnswer::Yes;
  }
  CHECK(yes >= 50);
}

TEST_CASE("gap_solver with a zero horizon answers No") {
  GapConfig cfg;
  cfg.A = 1.0 / 6.0;
  cfg.B = 0.5;
  cfg.T_override = 0;
  const Graph g = star(5);
  FollowTheLeaderVc ftl(g);
  SeededRng rng(1);
  const auto out = gap_solver(g, cfg, 1.0, ftl, rng);
  CHECK(out.answer == GapAnswer::No);
  CHECK(out.rounds == 0);
}

TEST_CASE("gap_solver rejects a non-cover") {
  GapConfig cfg;
  cfg.A = 0.1;
  cfg.B = 0.5;
  const Graph g(3, {{0, 1}, {1, 2}});
  FixedLearner bad(Subset{0});
  SeededRng rng(1);
  CHECK(expect_error([&] { gap_solver(g, cfg, 1.0, bad, rng); }).code() == ErrorCode::NonCover);
}

TEST_CASE("gap_solver adversary is oblivious") {
  GapConfig cfg;
  cfg.A = 0.5;
  cfg.B = 0.75;
  cfg.T_override = 50;
  const Graph k4 = complete(4);
  FollowTheLeaderVc ftl(k4);
  OgdVcAdapter ogd(k4, OgdConfig{});
  SeededRng r1(9), r2(9);
  const auto a = gap_solver(k4, cfg, 1.0, ftl, r1);
  const auto b = gap_solver(k4, cfg, 1.0, ogd, r2);
  REQUIRE(a.rounds == 50);
  REQUIRE(b.rounds == 50);
  CHECK(a.weights == b.weights);
  for (const auto& row : a.weights.rows()) {
    double sum = 0.0;
    for (double v : row) sum += v;
    CHECK(sum == 1.0);
  }
}

TEST_CASE("dnf_to_matching example") {
  // x1 and not-x2 and x3.
  const auto f = parse_dnf("1 -2 3");
  const auto g = dnf_to_matching(f);
  CHECK(g.graph.vertex_count() == 12);
  CHECK(g.graph.edge_count() == 12);
  REQUIRE(g.weight_rows.length() == 1);
  const auto row = g.weight_rows.row(0);
  std::vector<std::uint32_t> ones;
  for (std::uint32_t e = 0; e < row.size(); ++e)
    if (row[e] == 1.0) ones.push_back(e);
  std::vector<std::uint32_t> expected{MatchingGadget::edge_false_u(0),
                                      MatchingGadget::edge_u_true(1),
                                      MatchingGadget::edge_false_u(2)};
  std::sort(expected.begin(), expected.end());
  CHECK(ones == expected);

  const auto tft = g.matching_for({true, false, true});
  CHECK(multi_minmax_cost(tft, g.weight_rows) == 0.0);
  CHECK(g.assignment_for(tft) == std::vector<bool>{true, false, true});
  CHECK(multi_minmax_cost(g.matching_for({true, true, true}), g.weight_rows) == 1.0);
}

TEST_CASE("dnf_to_path example") {
  // x1 and x2 and not-x3.
  const auto f = parse_dnf("1 2 -3");
  const auto p = dnf_to_path(f);
  CHECK(p.chain.stages == 3);
  REQUIRE(p.weight_rows.length() == 1);
  const auto row = p.weight_rows.row(0);
  for (std::uint32_t a = 0; a < row.size(); ++a) {
    const bool marked = a == ArcChain::false_arc(0) || a == ArcChain::false_arc(1) ||
                        a == ArcChain::true_arc(2);
    CHECK(row[a] == (marked ? 1.0 : 0.0));
  }
  CHECK(multi_minmax_cost(p.chain.path_arcs({true, true, false}), p.weight_rows) == 0.0);
  CHECK(multi_minmax_cost(p.chain.path_arcs({false, true, false}), p.weight_rows) == 1.0);
}

TEST_CASE("gadget rows are built literal by literal") {
  SeededRng rng(31);
  for (int k = 0; k < 30; ++k) {
    const auto f = gen_random_dnf(3 + static_cast<std::uint32_t>(rng.below(5)), rng.below(8), rng);
    const auto mg = dnf_to_matching(f);
    const auto pg = dnf_to_path(f);
    for (std::size_t j = 0; j < f.clause_count(); ++j) {
      std::vector<double> mrow(4 * f.variable_count(), 0.0), prow(2 * f.variable_count(), 0.0);
      for (const auto& lit : f.clauses()[j]) {
        if (lit.negated) {
          mrow[4 * lit.var] = 1.0;
          prow[2 * lit.var] = 1.0;
        } else {
          mrow[4 * lit.var + 3] = 1.0;
          prow[2 * lit.var + 1] = 1.0;
        }
      }
      const auto mr = mg.weight_rows.row(j);
      const auto pr = pg.weight_rows.row(j);
      CHECK(std::vector<double>(mr.begin(), mr.end()) == mrow);
      CHECK(std::vector<double>(pr.begin(), pr.end()) == prow);
    }
  }
}

TEST_CASE("gadget optima equal m minus max satisfied") {
  SeededRng rng(5);
  for (int k = 0; k < 25; ++k) {
    const auto n = 3 + static_cast<std::uint32_t>(rng.below(2));  // matching needs 4n <= 16
    const auto f = gen_random_dnf(n, 1 + rng.below(6), rng);
    const double target = static_cast<double>(f.clause_count() - max_satisfied(f));
    const auto mg = dnf_to_matching(f);
    CHECK(brute_force_multi_matching(mg.graph, mg.weight_rows).cost == target);
    const auto pg = dnf_to_path(f);
    CHECK(brute_force_multi_path(pg.chain, pg.weight_rows).cost == target);
  }
}

TEST_CASE("validate_correspondence") {
  SeededRng rng(77);
  for (int k = 0; k < 20; ++k) {
    const auto f = gen_random_dnf(3 + static_cast<std::uint32_t>(rng.below(6)), rng.below(10), rng);
    const auto rep = validate_correspondence(f, "r" + std::to_string(k));
    CHECK(rep.violations.empty());
    CHECK(rep.assignments_checked == (std::size_t{1} << f.variable_count()));
  }
  const auto empty = validate_correspondence(Dnf3Formula(3, {}));
  CHECK(empty.violations.empty());
  CHECK(empty.assignments_checked == 8);
  CHECK(validate_correspondence(parse_dnf("1 2 3")).violations.empty());
  CHECK(expect_error([] { validate_correspondence(Dnf3Formula(13, {})); }).code() ==
        ErrorCode::TooLarge);
}

TEST_CASE("correspondence report json") {
  CorrespondenceReport r;
  r.formula_id = "f1";
  r.assignments_checked = 8;
  r.violations.push_back({"path", {true, false, true}, 2, 1.0});
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["formula_id"] == "f1");
  CHECK(j["assignments_checked"] == 8);
  REQUIRE(j["violations"].size() == 1);
  CHECK(j["violations"][0]["gadget"] == "path");
  CHECK(j["violations"][0]["assignment"] == "TFT");
  CHECK(j["violations"][0]["satisfied"] == 2);
}

TEST_CASE("vc_to_multi_vc preserves cover size") {
  SeededRng rng(12);
  for (int k = 0; k < 30; ++k) {
    const auto n = 1 + static_cast<std::uint32_t>(rng.below(12));
    const Graph g = gen_random_graph(n, rng.uniform01(), rng);
    const auto rows = vc_to_multi_vc(g);
    CHECK(rows.length() == n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); mask += 1 + rng.below(7)) {
      Subset s;
      for (std::uint32_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) s.push_back(i);
      CHECK(multi_minmax_cost(s, rows) == static_cast<double>(s.size()));
    }
    CHECK(best_static_vc_hindsight(g, rows).cost == static_cast<double>(min_cover_size(g)));
  }
}

TEST_CASE("threecolor_to_p3 matches colorability") {
  CHECK(colorable(complete(3)));
  CHECK_FALSE(colorable(complete(4)));
  SeededRng rng(3);
  for (int k = 0; k < 30; ++k) {
    const auto n = 1 + static_cast<std::uint32_t>(rng.below(9));
    const Graph g = gen_random_graph(n, rng.uniform(0.2, 0.9), rng);
    const auto jobs = threecolor_to_p3(g);
    CHECK(jobs.length() == g.edge_count());
    const bool c = colorable(g);
    CHECK(brute_force_3coloring(g).has_value() == c);
    const double m = static_cast<double>(g.edge_count());
    const double opt = brute_force_multi_p3cmax(jobs).total_makespan;
    CHECK((opt == m) == c);
    if (!c) CHECK(opt > m);
  }
}

}

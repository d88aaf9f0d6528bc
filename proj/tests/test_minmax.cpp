#include <algorithm>
#include <limits>

#include "mmo/minmax.hpp"
#include "mmo/reductions.hpp"
#include "mmo/rng.hpp"
#include "test_util.hpp"

using namespace mmo;

namespace {

Subset from_mask(std::uint64_t mask, std::uint32_t n) {
  Subset s;
  for (std::uint32_t i = 0; i < n; ++i)
    if ((mask >> i) & 1) s.push_back(i);
  return s;
}

bool covers(const Graph& g, std::uint64_t mask) {
  for (auto [u, v] : g.edges())
    if (!((mask >> u) & 1) && !((mask >> v) & 1)) return false;
  return true;
}

double row_max(std::uint64_t mask, const std::vector<double>& w) {
  double m = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if ((mask >> i) & 1) m = std::max(m, w[i]);
  return m;
}

// Minimum over all 2^n subsets that cover g.
double enum_min_total(const Graph& g, const WeightSequence& seq) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.vertex_count()); ++mask) {
    if (!covers(g, mask)) continue;
    double total = 0.0;
    for (const auto& row : seq.rows()) total += row_max(mask, row);
    best = std::min(best, total);
  }
  return best;
}

const Graph kPath = Graph(3, {{0, 1}, {1, 2}});
const Graph kTriangle = Graph(3, {{0, 1}, {0, 2}, {1, 2}});

} // namespace

TEST_SUITE("minmax") {

TEST_CASE("minmax_value examples") {
  const std::vector<double> w{5, 1, 7};
  CHECK(minmax_value({1}, w) == 1.0);
  CHECK(minmax_value({}, w) == 0.0);
  CHECK(minmax_value({0, 2}, w) == 7.0);
  CHECK(expect_error([&] { minmax_value({3}, w); }).code() == ErrorCode::DimensionMismatch);
}

TEST_CASE("is_vertex_cover examples") {
  CHECK(is_vertex_cover(kPath, {1}));
  CHECK_FALSE(is_vertex_cover(kPath, {0}));
  CHECK(is_vertex_cover(Graph(4, {}), {}));
}

TEST_CASE("static_minmax_vc examples") {
  const auto a = static_minmax_vc(kPath, std::vector<double>{5, 1, 7});
  CHECK(a.cover == Subset{1});
  CHECK(a.cost == 1.0);

  const auto b = static_minmax_vc(Graph(3, {}), std::vector<double>{4, 2, 9});
  CHECK(b.cover.empty());
  CHECK(b.cost == 0.0);

  const auto c = static_minmax_vc(kTriangle, std::vector<double>{1, 2, 3});
  CHECK(c.cost == 2.0);
  CHECK(std::includes(Subset{0, 1}.begin(), Subset{0, 1}.end(), c.cover.begin(), c.cover.end()));
  CHECK(is_vertex_cover(kTriangle, c.cover));
}

TEST_CASE("static_minmax_vc matches subset enumeration") {
  SeededRng rng(31);
  for (std::uint32_t n = 1; n <= 12; ++n) {
    const Graph g = gen_random_graph(n, 0.35, rng);
    for (int k = 0; k < 100; ++k) {
      const auto seq = gen_uniform_weights(n, 1, 10.0, rng);
      const auto sol = static_minmax_vc(g, seq.row(0));
      CHECK(is_vertex_cover(g, sol.cover));
      CHECK(minmax_value(sol.cover, seq.row(0)) == sol.cost);
      CHECK(sol.cost == enum_min_total(g, seq));
    }
  }
}

TEST_CASE("best_static_vc_hindsight examples") {
  const WeightSequence rows(3, {{5, 1, 7}, {0, 9, 0}});
  const auto a = best_static_vc_hindsight(kPath, rows);
  CHECK(a.cover == Subset{0, 2});
  CHECK(a.cost == 7.0);
  CHECK(multi_minmax_cost({1}, rows) == 10.0);

  const auto empty = best_static_vc_hindsight(kPath, WeightSequence(3));
  CHECK(empty.cost == 0.0);
  CHECK(is_vertex_cover(kPath, empty.cover));
  for (std::uint32_t v : empty.cover) {
    Subset smaller = empty.cover;
    smaller.erase(std::find(smaller.begin(), smaller.end(), v));
    CHECK_FALSE(is_vertex_cover(kPath, smaller));
  }

  const Graph edge(2, {{0, 1}});
  const auto c = best_static_vc_hindsight(edge, WeightSequence(2, {{1, 0}, {1, 0}, {1, 0}}));
  CHECK(c.cover == Subset{1});
  CHECK(c.cost == 0.0);

  const Graph big(26, {});
  CHECK(expect_error([&] { best_static_vc_hindsight(big, WeightSequence(26)); }).code() ==
        ErrorCode::TooLarge);
}

TEST_CASE("hindsight equals enumeration over all covers") {
  SeededRng rng(77);
  for (int k = 0; k < 60; ++k) {
    const auto n = 1 + static_cast<std::uint32_t>(rng.below(11));
    const Graph g = gen_random_graph(n, 0.4, rng);
    const auto seq = rng.bernoulli(0.5) ? gen_uniform_weights(n, 1 + rng.below(20), 1.0, rng)
                                        : gen_onehot_weights(n, 1 + rng.below(20), rng);
    const auto sol = best_static_vc_hindsight(g, seq);
    CHECK(is_vertex_cover(g, sol.cover));
    CHECK(multi_minmax_cost(sol.cover, seq) == doctest::Approx(sol.cost).epsilon(1e-12));
    CHECK(sol.cost == doctest::Approx(enum_min_total(g, seq)).epsilon(1e-12));
  }
}

TEST_CASE("minimal vertex covers are exactly the inclusion-minimal covers") {
  SeededRng rng(5);
  for (int k = 0; k < 30; ++k) {
    const auto n = 1 + static_cast<std::uint32_t>(rng.below(9));
    const Graph g = gen_random_graph(n, 0.5, rng);
    std::vector<Subset> expected;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (!covers(g, mask)) continue;
      bool minimal = true;
      for (std::uint32_t i = 0; i < n; ++i)
        if (((mask >> i) & 1) && covers(g, mask & ~(std::uint64_t{1} << i))) minimal = false;
      if (minimal) expected.push_back(from_mask(mask, n));
    }
    auto got = minimal_vertex_covers(g);
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
  }
}

TEST_CASE("multi_minmax_cost examples and monotonicity") {
  const WeightSequence rows(3, {{5, 1, 7}, {0, 9, 0}});
  CHECK(multi_minmax_cost({1}, rows) == 10.0);
  CHECK(multi_minmax_cost({1}, WeightSequence(3)) == 0.0);
  CHECK(multi_minmax_cost({}, rows) == 0.0);
  CHECK(expect_error([&] { multi_minmax_cost({4}, rows); }).code() ==
        ErrorCode::DimensionMismatch);

  SeededRng rng(8);
  for (int k = 0; k < 200; ++k) {
    const auto seq = gen_uniform_weights(8, 5, 1.0, rng);
    const Subset s = from_mask(rng.below(256), 8);
    Subset bigger = s;
    const auto extra = static_cast<std::uint32_t>(rng.below(8));
    if (!std::binary_search(bigger.begin(), bigger.end(), extra)) {
      bigger.insert(std::lower_bound(bigger.begin(), bigger.end(), extra), extra);
    }
    CHECK(multi_minmax_cost(bigger, seq) >= multi_minmax_cost(s, seq));
  }
}

TEST_CASE("brute_force_multi_matching") {
  // n = 3 formula with clause (x1 x2 x3): the all-true gadget matching avoids every
  // weighted edge, so cost 0.
  const Dnf3Formula f = parse_dnf("1 2 3");
  const auto gadget = dnf_to_matching(f);
  const auto sol = brute_force_multi_matching(gadget.graph, gadget.weight_rows);
  CHECK(sol.cost == 0.0);
  CHECK(multi_minmax_cost(gadget.matching_for({true, true, true}), gadget.weight_rows) == 0.0);

  const Graph square(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto empty = brute_force_multi_matching(square, WeightSequence(4));
  CHECK(empty.cost == 0.0);
  CHECK(empty.edges.size() == 2);

  CHECK(expect_error([] { brute_force_multi_matching(kTriangle, WeightSequence(3)); }).code() ==
        ErrorCode::OddVertexCount);
  const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(expect_error([&] { brute_force_multi_matching(star, WeightSequence(3)); }).code() ==
        ErrorCode::NoPerfectMatching);
  CHECK(expect_error([&] { brute_force_multi_matching(Graph(18, {}), WeightSequence(0)); })
            .code() == ErrorCode::TooLarge);
}

TEST_CASE("brute_force_multi_matching picks the cheaper square matching") {
  // Square 0-1-2-3-0: matchings {01,23} and {12,03}. Edge indices follow
  // input order: 01, 12, 23, 03.
  const Graph square(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const WeightSequence rows(4, {{5, 0, 1, 0}, {2, 0, 0, 0}});
  const auto sol = brute_force_multi_matching(square, rows);
  CHECK(sol.cost == 0.0);
  CHECK(sol.edges == Subset{1, 3});
  CHECK(multi_minmax_cost({0, 2}, rows) == 7.0);
}

TEST_CASE("brute_force_multi_path examples") {
  ArcChain chain{3};
  std::vector<double> row(6, 0.0);
  row[ArcChain::false_arc(0)] = 1;
  row[ArcChain::false_arc(1)] = 1;
  row[ArcChain::true_arc(2)] = 1;
  const auto sol = brute_force_multi_path(chain, WeightSequence(6, {row}));
  CHECK(sol.choice == std::vector<bool>{true, true, false});
  CHECK(sol.cost == 0.0);

  CHECK(brute_force_multi_path(chain, WeightSequence(6)).cost == 0.0);
  CHECK(brute_force_multi_path(chain, WeightSequence(6, {std::vector<double>(6, 1.0)})).cost ==
        1.0);
  CHECK(expect_error([] { brute_force_multi_path(ArcChain{21}, WeightSequence(42)); }).code() ==
        ErrorCode::TooLarge);
}

TEST_CASE("brute_force_multi_p3cmax examples") {
  CHECK(brute_force_multi_p3cmax(threecolor_to_p3(kTriangle)).total_makespan == 3.0);
  const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto k4sol = brute_force_multi_p3cmax(threecolor_to_p3(k4));
  CHECK(k4sol.total_makespan == 7.0);
  CHECK(multi_makespan(k4sol.machine, threecolor_to_p3(k4)) == 7.0);
  CHECK(brute_force_multi_p3cmax(ProcTimeMatrix(4)).total_makespan == 0.0);
  CHECK(expect_error([] { brute_force_multi_p3cmax(ProcTimeMatrix(13)); }).code() ==
        ErrorCode::TooLarge);
}

TEST_CASE("p3 brute force matches enumeration of all assignments") {
  SeededRng rng(12);
  for (int k = 0; k < 20; ++k) {
    const auto n = 1 + static_cast<std::uint32_t>(rng.below(6));
    const auto jobs = gen_uniform_weights(n, 1 + rng.below(4), 3.0, rng);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> m(n, 0);
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < n; ++i) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < n; ++i, c /= 3) m[i] = static_cast<std::uint8_t>(c % 3);
      double sum = 0.0;
      for (const auto& row : jobs.rows()) {
        double load[3] = {0, 0, 0};
        for (std::uint32_t i = 0; i < n; ++i) load[m[i]] += row[i];
        sum += std::max({load[0], load[1], load[2]});
      }
      best = std::min(best, sum);
    }
    CHECK(brute_force_multi_p3cmax(jobs).total_makespan == doctest::Approx(best).epsilon(1e-12));
  }
}

}

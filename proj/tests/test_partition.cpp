#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "owl/partition.hpp"
#include "owl/rng.hpp"
#include "support/generators.hpp"

using namespace owl;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// All interval partitions of {0..n-1} as boundary bitmasks (bit i set: a cut
// after index i).
std::vector<IntervalPartition> all_partitions(std::size_t n) {
  std::vector<IntervalPartition> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
    std::vector<IndexInterval> groups;
    std::size_t first = 0;
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (mask & (std::size_t{1} << i)) {
        groups.push_back({first, i});
        first = i + 1;
      }
    groups.push_back({first, n - 1});
    out.emplace_back(std::move(groups), n);
  }
  return out;
}

std::size_t boundary_mask(const IntervalPartition& p) {
  std::size_t mask = 0;
  for (const IndexInterval& g : p.groups())
    if (g.last + 1 < p.n()) mask |= std::size_t{1} << g.last;
  return mask;
}

}  // namespace

TEST_SUITE_BEGIN("partition");

TEST_CASE("interval partitions must tile the index range") {
  CHECK_NOTHROW(IntervalPartition({{0, 2}, {3, 4}}, 5));
  CHECK_THROWS_AS(IntervalPartition({{0, 2}, {4, 4}}, 5), InvalidPartition);  // gap
  CHECK_THROWS_AS(IntervalPartition({{0, 2}, {2, 4}}, 5), InvalidPartition);  // overlap
  CHECK_THROWS_AS(IntervalPartition({{0, 2}}, 5), InvalidPartition);          // short
  CHECK_THROWS_AS(IntervalPartition({{1, 4}}, 5), InvalidPartition);          // late start
  CHECK_THROWS_AS(IntervalPartition({}, 0), Empty);

  const IntervalPartition s = IntervalPartition::singletons(3);
  CHECK(s.group_count() == 3);
  CHECK(s.groups()[1] == IndexInterval{1, 1});
}

TEST_CASE("grouping splits at strict descents") {
  CHECK(grouping(std::vector<double>{1, 4, 5, 1, 3}) ==
        IntervalPartition({{0, 2}, {3, 4}}, 5));
  CHECK(grouping(std::vector<double>{3, 2, 2, 1, 1}) ==
        IntervalPartition({{0, 0}, {1, 2}, {3, 4}}, 5));
  CHECK(grouping(std::vector<double>{2, 2, 2}) == IntervalPartition({{0, 2}}, 3));
  CHECK(grouping(std::vector<double>{7}) == IntervalPartition::singletons(1));
  CHECK(grouping(std::vector<double>{3, 2, 1}) == IntervalPartition::singletons(3));
}

TEST_CASE("averaged vector replaces groups by their means") {
  const IntervalPartition p({{0, 2}, {3, 4}}, 5);
  const std::vector<double> z{1, 4, 5, 1, 3};
  const std::vector<double> avg = averaged_vector(z, p);
  CHECK(avg == std::vector<double>{10.0 / 3, 10.0 / 3, 10.0 / 3, 2, 2});
  CHECK(averaged_vector(avg, p) == avg);  // idempotent
  CHECK_THROWS_AS(averaged_vector(std::vector<double>{1, 2}, p), SizeMismatch);
}

TEST_CASE("averaging never refines the grouping") {
  Rng rng(201);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng.below(9);
    const auto z = test::random_dense(rng, n, -3.0, 3.0);
    const auto parts = all_partitions(n);
    const IntervalPartition& p = parts[rng.below(parts.size())];
    CHECK(refines(p, grouping(averaged_vector(z, p))));
  }
}

TEST_CASE("refinement agrees with the set definition") {
  // a refines b  <=>  every cut of b is a cut of a.
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto parts = all_partitions(n);
    for (const auto& a : parts)
      for (const auto& b : parts) {
        const bool expect = (boundary_mask(b) & ~boundary_mask(a)) == 0;
        CHECK(refines(a, b) == expect);
      }
  }
  CHECK_THROWS_AS(
      refines(IntervalPartition::singletons(2), IntervalPartition::singletons(3)),
      SizeMismatch);
}

TEST_CASE("group partition build on the worked instance") {
  const std::vector<double> z{3, 2, 2, 1, 1};
  const std::vector<double> w{5, 4, 3, 1, 1};
  const GroupPartition part = GroupPartition::build(z, w);

  CHECK(part.n() == 5);
  CHECK(part.group_count() == 3);
  CHECK(part.inner_product() == doctest::Approx(31.0).epsilon(1e-15));
  CHECK(part.weight_norm_sq() == doctest::Approx(51.5).epsilon(1e-15));

  const auto groups = part.groups();
  REQUIRE(groups.size() == 3);
  CHECK(groups[0].first == 0);
  CHECK(groups[0].last == 0);
  CHECK(groups[0].sum_z == 3.0);
  CHECK(groups[0].sum_w == 5.0);
  CHECK(groups[1].mean_z() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(groups[1].mean_w() == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(groups[2].mean_w() == doctest::Approx(1.0).epsilon(1e-15));

  // Boundary ratios: (3-2)/(5-3.5) = 2/3 and (2-1)/(3.5-1) = 2/5; the last
  // group reports +inf.
  CHECK(groups[0].ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(groups[1].ratio == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(groups[2].ratio == kInf);

  const auto [r, first] = part.min_ratio();
  CHECK(r == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(first == 1);

  CHECK(part.first_group().first == 0);
  CHECK(part.last_group().first == 3);
  CHECK(part.group_starting_at(3).has_value());
  CHECK(!part.group_starting_at(2).has_value());

  CHECK(part.expand_z() == std::vector<double>{3, 2, 2, 1, 1});
  CHECK(part.expand_w() == std::vector<double>{5, 3.5, 3.5, 1, 1});
  CHECK(part.intervals() == IntervalPartition({{0, 0}, {1, 2}, {3, 4}}, 5));
}

TEST_CASE("group partition build rejects bad inputs") {
  CHECK_THROWS_AS(GroupPartition::build(std::vector<double>{1, 2}, std::vector<double>{1, 1}),
                  NotMonotone);
  CHECK_THROWS_AS(GroupPartition::build(std::vector<double>{1, -1}, std::vector<double>{1, 1}),
                  Negative);
  CHECK_THROWS_AS(GroupPartition::build(std::vector<double>{1}, std::vector<double>{1, 1}),
                  DimensionMismatch);
  CHECK_THROWS_AS(GroupPartition::build(std::vector<double>{}, std::vector<double>{}), Empty);
}

TEST_CASE("merge below a multiplier uses stored ratios, one pass") {
  const std::vector<double> z{3, 2, 2, 1, 1};
  const std::vector<double> w{5, 4, 3, 1, 1};

  GroupPartition part = GroupPartition::build(z, w);
  const double lambda1 = 30.0 / 51.5;  // first loop of the worked instance
  CHECK(part.merge_below_lambda(lambda1) == 1);
  CHECK(part.group_count() == 2);
  CHECK(part.inner_product() == doctest::Approx(28.5).epsilon(1e-14));
  CHECK(part.weight_norm_sq() == doctest::Approx(45.25).epsilon(1e-14));

  const auto groups = part.groups();
  CHECK(groups[0].ratio == doctest::Approx(6.0 / 11.0).epsilon(1e-14));  // refreshed
  CHECK(groups[1].first == 1);
  CHECK(groups[1].last == 4);
  CHECK(groups[1].mean_z() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(groups[1].mean_w() == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(groups[1].ratio == kInf);

  // The refreshed left ratio 6/11 dipped below lambda1, but a second merge
  // needs a second call: the pass consumes stored ratios only.
  CHECK(part.group_count() == 2);

  CHECK_THROWS_AS(part.merge_below_lambda(0.5), NoMergeOccurred);
  CHECK(part.merge_below_lambda(6.0 / 11.0) == 1);  // boundary value merges
  CHECK(part.group_count() == 1);
  CHECK(part.min_ratio().first == kInf);
}

TEST_CASE("chains of qualifying boundaries collapse in one call") {
  // All three boundary ratios equal 0.5.
  const std::vector<double> z{5, 4, 3, 2};
  const std::vector<double> w{9, 7, 5, 3};
  GroupPartition part = GroupPartition::build(z, w);
  CHECK(part.merge_below_lambda(0.5) == 3);
  CHECK(part.group_count() == 1);
  CHECK(part.inner_product() == doctest::Approx(14.0 * 24.0 / 4.0).epsilon(1e-14));
  CHECK(part.weight_norm_sq() == doctest::Approx(24.0 * 24.0 / 4.0).epsilon(1e-14));
}

TEST_CASE("one merge pass equals regrouping the shifted means") {
  // After merge_below_lambda(lambda), the partition must coincide with the
  // grouping of the per-coordinate means of z - lambda w, computed on the
  // pre-merge partition. (Stored-ratio semantics: refreshed ratios that dip
  // below lambda stay unmerged until the next call.)
  Rng rng(202);
  int merges_seen = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.below(10);
    const auto z = test::random_monotone_z(rng, n);
    const auto w = test::random_weights(rng, n);
    GroupPartition part = GroupPartition::build(z, w);

    double max_finite = 0.0;
    for (const auto& g : part.groups())
      if (std::isfinite(g.ratio)) max_finite = std::max(max_finite, g.ratio);
    const double lambda = rng.uniform(0.0, max_finite * 1.2 + 0.1);

    const std::vector<double> shifted = part.materialize(lambda, false);
    const IntervalPartition expect = grouping(shifted);

    try {
      part.merge_below_lambda(lambda);
      ++merges_seen;
    } catch (const NoMergeOccurred&) {
    }
    CHECK(part.intervals() == expect);
  }
  CHECK(merges_seen > 100);
}

TEST_CASE("suffix merges") {
  const std::vector<double> z{3, 2, 2, 1, 1};
  const std::vector<double> w{5, 4, 3, 1, 1};

  GroupPartition part = GroupPartition::build(z, w);
  CHECK_THROWS_AS(part.merge_suffix(2), InvalidCut);        // not a group start
  CHECK_THROWS_AS(part.merge_suffix(3), NoMergeOccurred);   // last group alone
  CHECK(part.merge_suffix(1) == 1);
  CHECK(part.group_count() == 2);
  CHECK(part.last_group().first == 1);
  CHECK(part.last_group().last == 4);
  CHECK(part.last_group().ratio == kInf);
  CHECK(part.groups()[0].ratio == doctest::Approx(6.0 / 11.0).epsilon(1e-14));

  GroupPartition whole = GroupPartition::build(z, w);
  CHECK(whole.merge_suffix(0) == 2);
  CHECK(whole.group_count() == 1);
  CHECK(whole.inner_product() == doctest::Approx(9.0 * 14.0 / 5.0).epsilon(1e-14));
}

TEST_CASE("suffix scan finds the trailing negative run") {
  const GroupPartition part =
      GroupPartition::build(std::vector<double>{3, 2, 2, 1, 1}, std::vector<double>{5, 4, 3, 1, 1});

  // Worked-instance loop 1: all group means stay nonnegative.
  CHECK(part.suffix_scan(28.0 / 49.5) == 5);
  // Large multiplier: every group qualifies.
  CHECK(part.suffix_scan(2.0) == 0);
  // Negative multiplier: z stays nonnegative, nothing qualifies.
  CHECK(part.suffix_scan(-1.0) == 5);

  // Two singleton groups: only the trailing one can go negative.
  const GroupPartition two =
      GroupPartition::build(std::vector<double>{5, 1}, std::vector<double>{1, 1});
  CHECK(two.suffix_scan(2.0) == 1);
  CHECK(two.suffix_scan(0.5) == 2);
  CHECK(two.suffix_scan(6.0) == 0);

  // lambda = 0.9 makes groups 0 and 1 qualify but not the trailing group:
  // the plain scan reports "no trailing run"; verification flags the
  // violated suffix property.
  CHECK(part.suffix_scan(0.9) == 5);
  CHECK_THROWS_AS(part.suffix_scan(0.9, true), RuntimeFailure);
  CHECK_NOTHROW(part.suffix_scan(28.0 / 49.5, true));
  CHECK_NOTHROW(part.suffix_scan(2.0, true));
}

TEST_CASE("aggregates stay consistent under random operation sequences") {
  Rng rng(203);
  for (int t = 0; t < 120; ++t) {
    const std::size_t n = 2 + rng.below(40);
    const auto z = test::random_monotone_z(rng, n);
    const auto w = test::random_weights(rng, n);
    GroupPartition part = GroupPartition::build(z, w);

    for (int op = 0; op < 12 && part.group_count() > 1; ++op) {
      if (rng.uniform01() < 0.5) {
        try {
          part.merge_below_lambda(rng.uniform(0.0, 3.0));
        } catch (const NoMergeOccurred&) {
        }
      } else {
        const auto groups = part.groups();
        try {
          part.merge_suffix(groups[rng.below(groups.size())].first);
        } catch (const NoMergeOccurred&) {
        }
      }

      // Recompute I, N and every ratio from scratch and compare.
      const auto groups = part.groups();
      double inner = 0.0, normsq = 0.0;
      for (const auto& g : groups) {
        inner += g.sum_z * g.sum_w / static_cast<double>(g.size());
        normsq += g.sum_w * g.sum_w / static_cast<double>(g.size());
      }
      CHECK(part.inner_product() == doctest::Approx(inner).epsilon(1e-9));
      CHECK(part.weight_norm_sq() == doctest::Approx(normsq).epsilon(1e-9));

      std::size_t covered = 0;
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        CHECK(groups[gi].first == covered);
        covered = groups[gi].last + 1;
        if (gi + 1 == groups.size()) {
          CHECK(groups[gi].ratio == kInf);
          continue;
        }
        const double dz = groups[gi].mean_z() - groups[gi + 1].mean_z();
        const double dw = groups[gi].mean_w() - groups[gi + 1].mean_w();
        if (dw <= 0.0) {
          CHECK(groups[gi].ratio == kInf);
        } else {
          CHECK(groups[gi].ratio == doctest::Approx(dz / dw).epsilon(1e-12));
        }
      }
      CHECK(covered == part.n());

      // Group sums must match the original coordinates.
      const auto zs = part.expand_z();
      double sz = 0.0;
      for (double v : z) sz += v;
      double szs = 0.0;
      for (double v : zs) szs += v;
      CHECK(szs == doctest::Approx(sz).epsilon(1e-10));
    }
  }
}

TEST_SUITE_END();

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "owl/errors.hpp"

namespace owl {

// Contiguous, ordered interval partitions of {0, ..., n-1}.

struct IndexInterval {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
  std::size_t size() const noexcept { return last - first + 1; }
  friend bool operator==(const IndexInterval&, const IndexInterval&) = default;
};

class IntervalPartition {
 public:
  // Groups must tile {0..n-1} left to right with no gaps or overlaps.
  IntervalPartition(std::vector<IndexInterval> groups, std::size_t n);

  static IntervalPartition singletons(std::size_t n);

  const std::vector<IndexInterval>& groups() const noexcept { return groups_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t group_count() const noexcept { return groups_.size(); }

  friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;

 private:
  std::vector<IndexInterval> groups_;
  std::size_t n_;
};

// Maximal groups of nondecreasing components: a boundary sits after index i
// exactly where z[i] > z[i+1]. For a nonincreasing z these are the maximal
// runs of equal values.
IntervalPartition grouping(std::span<const double> z);

// Replaces each component by the mean of its group.
std::vector<double> averaged_vector(std::span<const double> z, const IntervalPartition& part);

// Whether a is a refinement of b (every group of b is a union of groups of
// a). Uses the adjacent-pair criterion: it suffices that any i, i+1 grouped
// together in a stay together in b.
bool refines(const IntervalPartition& a, const IntervalPartition& b);

// Group structure of a nonincreasing nonnegative vector z together with the
// running aggregates the projection loop consumes.
//
// Each live group carries (first, last, sum_z, sum_w) plus the boundary ratio
// toward its right neighbour,
//
//   r = (mean_z(G) - mean_z(G')) / (mean_w(G) - mean_w(G')),
//
// taken as +inf when the weight means do not decrease (covers the 0/0
// convention; across live boundaries the numerator is positive). The last
// group's ratio is +inf. Groups live in a slab indexed by a stable id,
// doubly linked in index order for neighbour navigation, and exposed through
// a lazy-deletion binary min-heap keyed by (ratio, id): equal ratios resolve
// to the leftmost group, and entries whose stamp no longer matches their
// record are skipped on contact. Heap mutations are array-local, so a merge
// costs O(log n) with a small constant instead of a tree rebalance.
//
// The following are maintained incrementally and never recomputed from the
// coordinates: I = <z_G, w_G>, N = ||w_G||^2, both over the group-averaged
// vectors. Merging is structural: after construction, group membership only
// changes through merge_below_lambda / merge_suffix, never by re-comparing
// floating-point coordinates for equality.
class GroupPartition {
 public:
  struct GroupInfo {
    std::size_t first = 0;
    std::size_t last = 0;
    double sum_z = 0.0;
    double sum_w = 0.0;
    double ratio = std::numeric_limits<double>::infinity();

    std::size_t size() const noexcept { return last - first + 1; }
    double mean_z() const noexcept { return sum_z / static_cast<double>(size()); }
    double mean_w() const noexcept { return sum_w / static_cast<double>(size()); }
  };

  // z must be nonincreasing and nonnegative (throws NotMonotone / Negative);
  // w is the raw weight sequence of equal length (DimensionMismatch
  // otherwise). Weight averaging over the groups of z is implicit in the
  // stored sums. O(n log n).
  static GroupPartition build(std::span<const double> z, std::span<const double> w);

  std::size_t n() const noexcept { return n_; }
  std::size_t group_count() const noexcept { return live_; }

  double inner_product() const noexcept { return inner_; }     // I
  double weight_norm_sq() const noexcept { return normsq_; }   // N

  // Smallest boundary ratio and the first index of the group owning it.
  // A single group reports +inf.
  std::pair<double, std::size_t> min_ratio() const;

  GroupInfo first_group() const;
  GroupInfo last_group() const;
  std::optional<GroupInfo> group_starting_at(std::size_t first) const;

  // Coalesces every adjacent pair whose stored boundary ratio is <= lambda;
  // chains collapse into a single group. Ratios that the merges invalidate
  // (the merged group's own and its left neighbour's) are recomputed from
  // the new sums. Returns the number of groups removed; throws
  // NoMergeOccurred when no boundary qualifies. O(k log g) for k removals.
  std::size_t merge_below_lambda(double lambda);

  // Coalesces all groups covering {n_prime .. n-1} into one. n_prime must be
  // the first index of a live group (InvalidCut otherwise) and must not name
  // the last group alone (NoMergeOccurred). Returns the number of groups
  // removed.
  std::size_t merge_suffix(std::size_t n_prime);

  // First index of the trailing run of groups whose means satisfy
  // mean_z - lambda0 * mean_w < 0; n() when no trailing group qualifies.
  // With verify set, additionally scans the remaining groups and throws
  // RuntimeFailure if the qualifying set is not a suffix (the scan's
  // correctness rests on that property; see suffix discussion in
  // solve_reduced).
  std::size_t suffix_scan(double lambda0, bool verify = false) const;

  // Snapshots in index order.
  std::vector<GroupInfo> groups() const;
  IntervalPartition intervals() const;
  std::vector<double> expand_z() const;
  std::vector<double> expand_w() const;
  // Per-coordinate mean_z - lambda * mean_w, optionally clamped at zero.
  std::vector<double> materialize(double lambda, bool clamp_at_zero) const;

 private:
  static constexpr std::uint32_t kNoId = 0xffffffffu;

  struct Record {
    double ratio = std::numeric_limits<double>::infinity();
    double sum_z = 0.0;
    double sum_w = 0.0;
    std::size_t first = 0;
    std::size_t last = 0;
    std::uint32_t prev = kNoId;
    std::uint32_t next = kNoId;
    std::uint32_t stamp = 0;
    bool alive = false;
  };

  // A heap entry speaks for its group only while the stamps match and the
  // record is alive; anything else is litter that pruning discards.
  struct HeapEntry {
    double ratio = 0.0;
    std::uint32_t id = 0;
    std::uint32_t stamp = 0;
  };

  GroupPartition() = default;

  double contribution_inner(const Record& r) const;
  double contribution_normsq(const Record& r) const;
  static double boundary_ratio(const Record& left, const Record& right);
  static bool heap_after(const HeapEntry& a, const HeapEntry& b);
  GroupInfo info(const Record& r) const;
  // Stores rec's new ratio, invalidating any previous heap entry; finite
  // ratios get a fresh entry (infinite ones never qualify for anything).
  void push_ratio(std::uint32_t id, double new_ratio);
  // Absorbs the right neighbour of `id` into `id`, maintaining I and N.
  // Leaves the stored ratio of `id` stale; callers fix it afterwards.
  std::uint32_t absorb_successor(std::uint32_t id);
  // Pops stale heap tops; afterwards the top (if any) is live and current.
  void prune() const;

  std::vector<Record> slab_;
  mutable std::vector<HeapEntry> heap_;
  std::vector<std::uint32_t> start_ids_;  // first index -> id, fixed at build
  std::uint32_t head_ = kNoId;
  std::uint32_t tail_ = kNoId;
  std::size_t live_ = 0;
  double inner_ = 0.0;
  double normsq_ = 0.0;
  std::size_t n_ = 0;
};

}  // namespace owl

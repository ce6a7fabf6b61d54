#include "owl/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace owl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

IntervalPartition::IntervalPartition(std::vector<IndexInterval> groups, std::size_t n)
    : groups_(std::move(groups)), n_(n) {
  if (n_ == 0) throw Empty("interval partition: n must be positive");
  if (groups_.empty()) throw InvalidPartition("interval partition: no groups");
  std::size_t expected = 0;
  for (const IndexInterval& g : groups_) {
    if (g.first != expected || g.last < g.first)
      throw InvalidPartition("interval partition: groups do not tile {0.." +
                             std::to_string(n_ - 1) + "} at index " +
                             std::to_string(expected));
    expected = g.last + 1;
  }
  if (expected != n_)
    throw InvalidPartition("interval partition: groups cover " + std::to_string(expected) +
                           " of " + std::to_string(n_) + " indices");
}

IntervalPartition IntervalPartition::singletons(std::size_t n) {
  std::vector<IndexInterval> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[i] = {i, i};
  return IntervalPartition(std::move(groups), n);
}

IntervalPartition grouping(std::span<const double> z) {
  if (z.empty()) throw Empty("grouping: empty vector");
  std::vector<IndexInterval> groups;
  std::size_t start = 0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    if (z[i] > z[i + 1]) {
      groups.push_back({start, i});
      start = i + 1;
    }
  }
  groups.push_back({start, z.size() - 1});
  return IntervalPartition(std::move(groups), z.size());
}

std::vector<double> averaged_vector(std::span<const double> z, const IntervalPartition& part) {
  if (z.size() != part.n())
    throw SizeMismatch("averaged_vector: vector length " + std::to_string(z.size()) +
                       " vs partition over " + std::to_string(part.n()));
  std::vector<double> out(z.size());
  for (const IndexInterval& g : part.groups()) {
    double sum = 0.0;
    for (std::size_t i = g.first; i <= g.last; ++i) sum += z[i];
    const double mean = sum / static_cast<double>(g.size());
    for (std::size_t i = g.first; i <= g.last; ++i) out[i] = mean;
  }
  return out;
}

bool refines(const IntervalPartition& a, const IntervalPartition& b) {
  if (a.n() != b.n())
    throw SizeMismatch("refines: partitions over " + std::to_string(a.n()) + " and " +
                       std::to_string(b.n()) + " indices");
  // Group id per index, then the adjacent-pair criterion.
  const auto labels = [](const IntervalPartition& p) {
    std::vector<std::size_t> lab(p.n());
    std::size_t id = 0;
    for (const IndexInterval& g : p.groups()) {
      for (std::size_t i = g.first; i <= g.last; ++i) lab[i] = id;
      ++id;
    }
    return lab;
  };
  const std::vector<std::size_t> la = labels(a), lb = labels(b);
  for (std::size_t i = 0; i + 1 < a.n(); ++i)
    if (la[i] == la[i + 1] && lb[i] != lb[i + 1]) return false;
  return true;
}

double GroupPartition::contribution_inner(const Record& r) const {
  return r.sum_z * r.sum_w / static_cast<double>(r.last - r.first + 1);
}

double GroupPartition::contribution_normsq(const Record& r) const {
  return r.sum_w * r.sum_w / static_cast<double>(r.last - r.first + 1);
}

double GroupPartition::boundary_ratio(const Record& a, const Record& b) {
  const double sa = static_cast<double>(a.last - a.first + 1);
  const double sb = static_cast<double>(b.last - b.first + 1);
  const double num = a.sum_z / sa - b.sum_z / sb;
  const double den = a.sum_w / sa - b.sum_w / sb;
  // den <= 0 covers both the exact w-tie (0/0 convention) and rounding that
  // pushes a nonnegative difference below zero.
  return den > 0.0 ? num / den : kInf;
}

GroupPartition::GroupInfo GroupPartition::info(const Record& r) const {
  return GroupInfo{r.first, r.last, r.sum_z, r.sum_w, r.ratio};
}

bool GroupPartition::heap_after(const HeapEntry& a, const HeapEntry& b) {
  // Min-heap on (ratio, id); the id tiebreak keeps equal ratios leftmost,
  // because merges always keep the left id alive.
  if (a.ratio != b.ratio) return a.ratio > b.ratio;
  return a.id > b.id;
}

GroupPartition GroupPartition::build(std::span<const double> z, std::span<const double> w) {
  if (z.size() != w.size())
    throw DimensionMismatch("group partition: vector length " + std::to_string(z.size()) +
                            " vs weight length " + std::to_string(w.size()));
  if (z.empty()) throw Empty("group partition: empty vector");
  for (std::size_t i = 1; i < z.size(); ++i)
    if (!(z[i] <= z[i - 1]))
      throw NotMonotone("group partition: z increases at position " + std::to_string(i));
  if (!(z.back() >= 0.0))
    throw Negative("group partition: z has a negative tail entry");

  GroupPartition p;
  p.n_ = z.size();

  // Maximal runs of equal values; the only place coordinates are compared.
  std::size_t start = 0;
  while (start < p.n_) {
    std::size_t stop = start;
    while (stop + 1 < p.n_ && z[stop + 1] == z[stop]) ++stop;
    Record rec;
    rec.first = start;
    rec.last = stop;
    for (std::size_t i = start; i <= stop; ++i) {
      rec.sum_z += z[i];
      rec.sum_w += w[i];
    }
    p.slab_.push_back(rec);
    start = stop + 1;
  }

  const std::size_t g = p.slab_.size();
  p.start_ids_.assign(p.n_, kNoId);
  p.heap_.reserve(g);
  for (std::size_t id = 0; id < g; ++id) {
    Record& rec = p.slab_[id];
    rec.alive = true;
    rec.prev = (id == 0) ? kNoId : static_cast<std::uint32_t>(id - 1);
    rec.next = (id + 1 < g) ? static_cast<std::uint32_t>(id + 1) : kNoId;
    rec.ratio = (id + 1 < g) ? boundary_ratio(rec, p.slab_[id + 1]) : kInf;
    p.start_ids_[rec.first] = static_cast<std::uint32_t>(id);
    if (std::isfinite(rec.ratio))
      p.heap_.push_back({rec.ratio, static_cast<std::uint32_t>(id), 0});
    p.inner_ += p.contribution_inner(rec);
    p.normsq_ += p.contribution_normsq(rec);
  }
  p.head_ = 0;
  p.tail_ = static_cast<std::uint32_t>(g - 1);
  p.live_ = g;
  std::make_heap(p.heap_.begin(), p.heap_.end(), heap_after);
  return p;
}

void GroupPartition::prune() const {
  while (!heap_.empty()) {
    const HeapEntry& top = heap_.front();
    const Record& rec = slab_[top.id];
    if (rec.alive && rec.stamp == top.stamp) return;
    std::pop_heap(heap_.begin(), heap_.end(), heap_after);
    heap_.pop_back();
  }
}

std::pair<double, std::size_t> GroupPartition::min_ratio() const {
  prune();
  // An empty heap means every live boundary ratio is infinite; report the
  // leftmost group, matching the (ratio, id) ordering.
  if (heap_.empty()) return {kInf, slab_[head_].first};
  return {heap_.front().ratio, slab_[heap_.front().id].first};
}

GroupPartition::GroupInfo GroupPartition::first_group() const { return info(slab_[head_]); }

GroupPartition::GroupInfo GroupPartition::last_group() const { return info(slab_[tail_]); }

std::optional<GroupPartition::GroupInfo> GroupPartition::group_starting_at(std::size_t first) const {
  if (first >= n_) return std::nullopt;
  const std::uint32_t id = start_ids_[first];
  if (id == kNoId || !slab_[id].alive) return std::nullopt;
  return info(slab_[id]);
}

void GroupPartition::push_ratio(std::uint32_t id, double new_ratio) {
  Record& rec = slab_[id];
  ++rec.stamp;
  rec.ratio = new_ratio;
  if (std::isfinite(new_ratio)) {
    heap_.push_back({new_ratio, id, rec.stamp});
    std::push_heap(heap_.begin(), heap_.end(), heap_after);
  }
}

std::uint32_t GroupPartition::absorb_successor(std::uint32_t id) {
  Record& rec = slab_[id];
  if (rec.next == kNoId)
    throw RuntimeFailure("group partition: absorb called on the last group");
  const std::uint32_t sid = rec.next;
  Record& succ = slab_[sid];

  inner_ -= contribution_inner(rec) + contribution_inner(succ);
  normsq_ -= contribution_normsq(rec) + contribution_normsq(succ);
  rec.last = succ.last;
  rec.sum_z += succ.sum_z;
  rec.sum_w += succ.sum_w;
  inner_ += contribution_inner(rec);
  normsq_ += contribution_normsq(rec);

  rec.next = succ.next;
  if (succ.next != kNoId) slab_[succ.next].prev = id;
  else tail_ = id;
  succ.alive = false;
  --live_;
  return sid;
}

std::size_t GroupPartition::merge_below_lambda(double lambda) {
  // Pop every boundary whose stored ratio qualifies. Stored ratios only:
  // values recomputed during the merges below never extend the merge set
  // (the coalesced structure must match regrouping by z - lambda * w, which
  // is decided by the pre-merge ratios).
  prune();
  if (heap_.empty() || heap_.front().ratio > lambda)
    throw NoMergeOccurred("merge_below_lambda: no boundary ratio <= " + std::to_string(lambda));

  std::vector<std::uint32_t> marked;
  while (!heap_.empty() && heap_.front().ratio <= lambda) {
    const HeapEntry top = heap_.front();
    std::pop_heap(heap_.begin(), heap_.end(), heap_after);
    heap_.pop_back();
    if (slab_[top.id].alive && slab_[top.id].stamp == top.stamp) marked.push_back(top.id);
  }

  std::sort(marked.begin(), marked.end(),
            [&](std::uint32_t a, std::uint32_t b) { return slab_[a].first < slab_[b].first; });
  std::vector<char> is_marked(slab_.size(), 0);
  for (const std::uint32_t id : marked) is_marked[id] = 1;

  std::size_t removed = 0;
  for (const std::uint32_t id : marked) {
    if (!slab_[id].alive) continue;  // already absorbed by the chain to its left
    bool chain = true;
    while (chain) {
      const std::uint32_t absorbed = absorb_successor(id);
      ++removed;
      chain = is_marked[absorbed] != 0;
    }
    Record& rec = slab_[id];
    push_ratio(id, rec.next == kNoId ? kInf : boundary_ratio(rec, slab_[rec.next]));
    if (rec.prev != kNoId)
      push_ratio(rec.prev, boundary_ratio(slab_[rec.prev], rec));
  }
  return removed;
}

std::size_t GroupPartition::merge_suffix(std::size_t n_prime) {
  const std::uint32_t id = (n_prime < n_) ? start_ids_[n_prime] : kNoId;
  if (id == kNoId || !slab_[id].alive)
    throw InvalidCut("merge_suffix: " + std::to_string(n_prime) +
                     " is not the first index of a live group");
  if (slab_[id].last == n_ - 1)
    throw NoMergeOccurred("merge_suffix: cut names the last group alone");

  std::size_t removed = 0;
  while (slab_[id].last != n_ - 1) {
    absorb_successor(id);
    ++removed;
  }
  push_ratio(id, kInf);
  const Record& rec = slab_[id];
  if (rec.prev != kNoId) push_ratio(rec.prev, boundary_ratio(slab_[rec.prev], rec));
  return removed;
}

std::size_t GroupPartition::suffix_scan(double lambda0, bool verify) const {
  const auto qualifies = [&](const Record& r) {
    const double size = static_cast<double>(r.last - r.first + 1);
    return r.sum_z / size - lambda0 * (r.sum_w / size) < 0.0;
  };
  std::size_t cut = n_;
  std::uint32_t cur = tail_;
  while (cur != kNoId) {
    const Record& rec = slab_[cur];
    if (!qualifies(rec)) {
      if (verify) {
        for (std::uint32_t back = rec.prev; back != kNoId; back = slab_[back].prev)
          if (qualifies(slab_[back]))
            throw RuntimeFailure(
                "suffix_scan: group starting at " + std::to_string(slab_[back].first) +
                " qualifies ahead of a non-qualifying group; the negativity "
                "set is not a suffix");
      }
      return cut;
    }
    cut = rec.first;
    cur = rec.prev;
  }
  return cut;
}

std::vector<GroupPartition::GroupInfo> GroupPartition::groups() const {
  std::vector<GroupInfo> out;
  out.reserve(live_);
  for (std::uint32_t id = head_; id != kNoId; id = slab_[id].next) out.push_back(info(slab_[id]));
  return out;
}

IntervalPartition GroupPartition::intervals() const {
  std::vector<IndexInterval> groups;
  groups.reserve(live_);
  for (std::uint32_t id = head_; id != kNoId; id = slab_[id].next)
    groups.push_back({slab_[id].first, slab_[id].last});
  return IntervalPartition(std::move(groups), n_);
}

std::vector<double> GroupPartition::expand_z() const { return materialize(0.0, false); }

std::vector<double> GroupPartition::expand_w() const {
  std::vector<double> out(n_);
  for (std::uint32_t id = head_; id != kNoId; id = slab_[id].next) {
    const Record& rec = slab_[id];
    const double mean = rec.sum_w / static_cast<double>(rec.last - rec.first + 1);
    for (std::size_t i = rec.first; i <= rec.last; ++i) out[i] = mean;
  }
  return out;
}

std::vector<double> GroupPartition::materialize(double lambda, bool clamp_at_zero) const {
  std::vector<double> out(n_);
  for (std::uint32_t id = head_; id != kNoId; id = slab_[id].next) {
    const Record& rec = slab_[id];
    const double size = static_cast<double>(rec.last - rec.first + 1);
    double value = rec.sum_z / size - lambda * (rec.sum_w / size);
    if (clamp_at_zero && value < 0.0) value = 0.0;
    for (std::size_t i = rec.first; i <= rec.last; ++i) out[i] = value;
  }
  return out;
}

}  // namespace owl

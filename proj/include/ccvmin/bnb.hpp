#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <queue>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ccvmin/bounds.hpp"
#include "ccvmin/problem.hpp"

namespace ccvmin {

/// Splits the widest coordinate at its midpoint; ties go to the lowest index.
/// Throws DegenerateSplitError when every width is at most kDegenerateWidth
/// (such a node is a leaf).
inline std::pair<Rectangle, Rectangle> bisect(const Rectangle& rect) {
  Index split = 0;
  double best = -1;
  for (Index i = 0; i < rect.dim(); ++i) {
    const double w = rect.hi[i] - rect.lo[i];
    if (w > best) {
      best = w;
      split = i;
    }
  }
  if (best <= kDegenerateWidth)
    throw DegenerateSplitError("bisect: all coordinates are degenerate");
  const double mid = rect.lo[split] + 0.5 * best;
  Rectangle left = rect;
  Rectangle right = rect;
  left.hi[split] = mid;
  right.lo[split] = mid;
  return {std::move(left), std::move(right)};
}

struct BnbNode {
  Rectangle rect;
  double bound = 0;
  Permutation witness;
  std::size_t depth = 0;
};

enum class SolveStatus { kOptimal, kNodeLimit, kTimeLimit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kNodeLimit: return "node-limit";
    case SolveStatus::kTimeLimit: return "time-limit";
  }
  return "unknown";
}

/// Search trace event, consumed by tests asserting bound validity, pruning
/// safety and incumbent monotonicity.
struct SearchEvent {
  enum class Kind { kRoot, kPop, kChild, kLeaf };
  Kind kind;
  Rectangle rect;
  double bound = 0;
  double incumbent = 0;  // q_u at the time of the event
  bool pruned = false;
};

struct BnbConfig {
  double delta = 1e-6;  // absolute optimality tolerance on f
  std::size_t max_nodes = 10'000'000;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  bool am_on_improvement_only = true;
  BoundBackend bound_backend = BoundBackend::kRankOneSort;
  bool parallel_children = false;
  double rank_tol = 1e-10;
  int am_max_iters = 100;
  double am_rel_tol = 1e-9;
  std::function<void(const SearchEvent&)> observer;  // optional trace hook
};

struct SearchStats {
  std::size_t nodes_explored = 0;
  std::size_t nodes_pruned = 0;
  std::size_t am_calls = 0;
  double wall_time = 0;  // seconds
};

struct Solution {
  Permutation pi_hat;
  Vectord x_hat;
  double f_value = 0;
  double residual = 0;  // |P y - a x_hat|
  double gap = 0;       // q_u minus the certified lower bound, >= 0
  SolveStatus status = SolveStatus::kOptimal;
  SearchStats stats;
};

namespace detail {

struct PermHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Min-heap keyed by (bound, insertion order): best-first, FIFO on ties.
struct HeapEntry {
  double bound;
  std::uint64_t seq;
  std::size_t slot;
};
struct HeapCompare {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

}  // namespace detail

/// Certified branch-and-bound minimization of f over permutations: best-first
/// expansion of sub-rectangles of the initial box, envelope lower bounds,
/// incumbent upper bounds refined by alternating minimization. A node is
/// pruned when its bound is at least q_u - delta; on termination with status
/// optimal the incumbent is within delta of the global minimum.
inline Solution solve(const ProblemInstance& inst, const BnbConfig& config = {}) {
  if (!(config.delta > 0)) throw InvalidInput("solve: delta must be positive");
  const auto t_start = std::chrono::steady_clock::now();
  const auto elapsed = [&t_start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  const Preprocessed prep = preprocess(inst, config.rank_tol);

  Solution sol;
  auto finalize = [&](double proven_lb, SolveStatus status) {
    sol.status = status;
    sol.gap = std::max(0.0, sol.f_value - proven_lb);
    sol.x_hat = recover_signal(sol.pi_hat, inst, prep);
    sol.residual = (sol.pi_hat.apply(inst.y) - inst.a * sol.x_hat).norm();
    sol.stats.wall_time = elapsed();
    return sol;
  };

  // Incumbent bookkeeping; q_u is non-increasing over the run.
  sol.f_value = std::numeric_limits<double>::infinity();
  auto consider = [&](const Permutation& pi, double f) {
    if (f < sol.f_value) {
      sol.f_value = f;
      sol.pi_hat = pi;
    }
  };
  std::unordered_set<std::vector<int>, detail::PermHash> am_seen;
  auto refine_with_am = [&](const Permutation& pi) {
    if (!am_seen.insert(pi.map()).second) return;
    const UpperBound ub =
        alternating_minimization(pi, inst, prep, config.am_max_iters, config.am_rel_tol);
    ++sol.stats.am_calls;
    consider(ub.pi, ub.value);
  };
  auto notify = [&](SearchEvent::Kind kind, const Rectangle& rect, double bound, bool pruned) {
    if (config.observer) config.observer({kind, rect, bound, sol.f_value, pruned});
  };

  if (inst.m() == 1) {  // single permutation; nothing to search
    consider(Permutation::identity(1), objective_f(Permutation::identity(1), prep));
    return finalize(sol.f_value, SolveStatus::kOptimal);
  }

  const Rectangle root_rect = initial_rectangle(prep);
  LowerBound root_lb = lower_bound(root_rect, prep, config.bound_backend);
  consider(root_lb.witness, objective_f(root_lb.witness, prep));
  refine_with_am(root_lb.witness);
  notify(SearchEvent::Kind::kRoot, root_rect, root_lb.bound, false);

  std::vector<BnbNode> nodes;
  std::vector<std::size_t> free_slots;
  std::priority_queue<detail::HeapEntry, std::vector<detail::HeapEntry>, detail::HeapCompare> open;
  std::uint64_t seq = 0;
  auto push_node = [&](BnbNode&& node) {
    std::size_t slot;
    if (!free_slots.empty()) {
      slot = free_slots.back();
      free_slots.pop_back();
      nodes[slot] = std::move(node);
    } else {
      slot = nodes.size();
      nodes.push_back(std::move(node));
    }
    open.push({nodes[slot].bound, seq++, slot});
  };
  push_node({root_rect, root_lb.bound, std::move(root_lb.witness), 0});

  double min_closed_bound = std::numeric_limits<double>::infinity();

  while (!open.empty()) {
    const detail::HeapEntry top = open.top();
    open.pop();
    BnbNode node = std::move(nodes[top.slot]);
    free_slots.push_back(top.slot);

    // All open bounds are >= this one: the exclusion rule proves optimality.
    if (node.bound >= sol.f_value - config.delta)
      return finalize(std::min(node.bound, min_closed_bound), SolveStatus::kOptimal);
    if (sol.stats.nodes_explored >= config.max_nodes)
      return finalize(std::min(node.bound, min_closed_bound), SolveStatus::kNodeLimit);
    if (elapsed() > config.time_limit)
      return finalize(std::min(node.bound, min_closed_bound), SolveStatus::kTimeLimit);

    ++sol.stats.nodes_explored;
    notify(SearchEvent::Kind::kPop, node.rect, node.bound, false);

    if ((node.rect.widths().array() <= kDegenerateWidth).all()) {
      // Point region; its bound is final. The witness has already been seen
      // by the incumbent, but alternating minimization may still refine it.
      refine_with_am(node.witness);
      min_closed_bound = std::min(min_closed_bound, node.bound);
      notify(SearchEvent::Kind::kLeaf, node.rect, node.bound, false);
      continue;
    }

    auto [left, right] = bisect(node.rect);
    LowerBound lbs[2];
    if (config.parallel_children) {
      auto rhs = std::async(std::launch::async, [&] {
        return lower_bound(right, prep, config.bound_backend);
      });
      lbs[0] = lower_bound(left, prep, config.bound_backend);
      lbs[1] = rhs.get();
    } else {
      lbs[0] = lower_bound(left, prep, config.bound_backend);
      lbs[1] = lower_bound(right, prep, config.bound_backend);
    }

    Rectangle* rects[2] = {&left, &right};
    for (int k = 0; k < 2; ++k) {
      const double f_witness = objective_f(lbs[k].witness, prep);
      const bool improved = f_witness < sol.f_value;
      consider(lbs[k].witness, f_witness);
      if (improved || !config.am_on_improvement_only) refine_with_am(lbs[k].witness);
      if (lbs[k].bound >= sol.f_value - config.delta) {
        ++sol.stats.nodes_pruned;
        min_closed_bound = std::min(min_closed_bound, lbs[k].bound);
        notify(SearchEvent::Kind::kChild, *rects[k], lbs[k].bound, true);
      } else {
        notify(SearchEvent::Kind::kChild, *rects[k], lbs[k].bound, false);
        push_node({std::move(*rects[k]), lbs[k].bound, std::move(lbs[k].witness), node.depth + 1});
      }
    }
  }

  // Every sub-region was closed with a bound at least q_u - delta.
  return finalize(min_closed_bound, SolveStatus::kOptimal);
}

}  // namespace ccvmin

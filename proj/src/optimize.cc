// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "datasumm/optimize.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <thread>

#include "datasumm/error.h"

namespace datasumm {
namespace {

constexpr double kCoverTolerance = 1e-9;
constexpr double kBruteForceLimit = 1e6;

struct GreedyRule {
  int max_items = 0;
  std::span<const double> costs;  // empty: cardinality constraint
  double budget = std::numeric_limits<double>::infinity();
  bool lazy = false;
  bool stop_at_zero = false;
  std::span<const char> eligible;  // empty: every item
  int threads = 1;
  std::function<bool(const Memo&)> done;
};

struct Candidate {
  double score;
  int index;
};

// Higher score wins; equal scores go to the lower index.
bool Better(double score, int index, double best_score, int best_index) {
  return score > best_score || (score == best_score && index < best_index);
}

class GreedyRunner {
 public:
  GreedyRunner(Memo& memo, const GreedyRule& rule, Selection& out)
      : memo_(memo), rule_(rule), out_(out) {}

  void Run() {
    if (rule_.lazy) {
      RunLazy();
    } else {
      RunNaive();
    }
  }

 private:
  bool Eligible(int j) const {
    return !memo_.contains(j) && (rule_.eligible.empty() || rule_.eligible[j]);
  }
  bool Fits(int j) const {
    return rule_.costs.empty() || spent_ + rule_.costs[j] <= rule_.budget;
  }
  double Score(int j) const {
    const double gain = memo_.GainUnchecked(j);
    return rule_.costs.empty() ? gain : gain / rule_.costs[j];
  }
  bool Finished() const {
    return added_ >= rule_.max_items || (rule_.done && rule_.done(memo_));
  }
  void Take(int j) {
    memo_.Commit(j);
    if (!rule_.costs.empty()) spent_ += rule_.costs[j];
    ++added_;
    out_.indices.push_back(j);
    out_.objective_trace.push_back(memo_.value());
  }

  Candidate ScanRange(std::span<const int> items) const {
    Candidate best{-std::numeric_limits<double>::infinity(), -1};
    for (int j : items) {
      const double s = Score(j);
      if (best.index < 0 || Better(s, j, best.score, best.index)) {
        best = {s, j};
      }
    }
    return best;
  }

  Candidate Scan(const std::vector<int>& items) const {
    const int threads = std::max(1, rule_.threads);
    if (threads == 1 || items.size() < 2 * static_cast<size_t>(threads)) {
      return ScanRange(items);
    }
    std::vector<Candidate> partial(threads, Candidate{0.0, -1});
    std::vector<std::thread> workers;
    const size_t chunk = (items.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const size_t begin = std::min(items.size(), t * chunk);
      const size_t end = std::min(items.size(), begin + chunk);
      workers.emplace_back([&, t, begin, end] {
        partial[t] = ScanRange(std::span<const int>(items).subspan(
            begin, end - begin));
      });
    }
    for (auto& w : workers) w.join();
    Candidate best{0.0, -1};
    for (const Candidate& c : partial) {
      if (c.index >= 0 &&
          (best.index < 0 || Better(c.score, c.index, best.score, best.index))) {
        best = c;
      }
    }
    return best;
  }

  void RunNaive() {
    std::vector<int> items;
    while (!Finished()) {
      items.clear();
      for (int j = 0; j < memo_.size(); ++j) {
        if (Eligible(j) && Fits(j)) items.push_back(j);
      }
      if (items.empty()) return;
      const Candidate best = Scan(items);
      out_.stats.gain_evaluations += static_cast<int64_t>(items.size());
      if (rule_.stop_at_zero && best.score <= 0.0) {
        out_.stats.stopped_at_zero = true;
        return;
      }
      Take(best.index);
    }
  }

  struct Entry {
    double bound;
    int index;
    int round;
  };
  struct EntryLess {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.bound != b.bound ? a.bound < b.bound : a.index > b.index;
    }
  };

  void RunLazy() {
    std::vector<Entry> init;
    for (int j = 0; j < memo_.size(); ++j) {
      if (Eligible(j)) init.push_back({Score(j), j, 0});
    }
    out_.stats.gain_evaluations += static_cast<int64_t>(init.size());
    std::priority_queue<Entry, std::vector<Entry>, EntryLess> heap(
        EntryLess{}, std::move(init));
    int round = 0;
    while (!Finished()) {
      out_.stats.resorts.push_back(0);
      std::optional<Entry> chosen;
      while (!heap.empty()) {
        Entry top = heap.top();
        heap.pop();
        // Budgets only shrink, so an item that no longer fits never will.
        if (!Fits(top.index)) continue;
        if (top.round == round) {
          chosen = top;
          break;
        }
        top.bound = Score(top.index);
        top.round = round;
        ++out_.stats.gain_evaluations;
        ++out_.stats.resorts.back();
        heap.push(top);
      }
      if (!chosen) return;
      if (rule_.stop_at_zero && chosen->bound <= 0.0) {
        out_.stats.stopped_at_zero = true;
        return;
      }
      Take(chosen->index);
      ++round;
    }
  }

  Memo& memo_;
  const GreedyRule& rule_;
  Selection& out_;
  double spent_ = 0.0;
  int added_ = 0;
};

void RequireMatchingSize(const Objective& f, const GroundSet& gs) {
  if (f.size() != gs.size()) {
    throw Error(ErrorCode::kInvalidSelection,
                "objective covers " + std::to_string(f.size()) +
                    " items but the ground set has " +
                    std::to_string(gs.size()));
  }
}

void RequireCardinality(int k, int n) {
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidParam,
                "k must satisfy 1 <= k <= n (k=" + std::to_string(k) +
                    ", n=" + std::to_string(n) + ")");
  }
}

std::unique_ptr<Memo> MakeMemo(const Objective& f, const SolverConfig& config) {
  if (config.memoize) return f.NewMemo();
  return std::make_unique<ScratchMemo>(f);
}

Selection RunRule(Memo& memo, GreedyRule rule, const ModelInfo& info,
                  const SolverConfig& config) {
  Selection out;
  if (rule.lazy && !info.submodular) {
    rule.lazy = false;
    out.stats.lazy_fallback = true;
  }
  rule.threads = config.threads;
  GreedyRunner(memo, rule, out).Run();
  return out;
}

}  // namespace

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "greedy") return Algorithm::kGreedy;
  if (name == "lazy") return Algorithm::kLazy;
  if (name == "budgeted") return Algorithm::kBudgeted;
  if (name == "cover") return Algorithm::kCover;
  if (name == "stream") return Algorithm::kStream;
  throw Error(ErrorCode::kInvalidParam,
              "unknown algorithm '" + std::string(name) +
                  "' (expected greedy, lazy, budgeted, cover or stream)");
}

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kLazy: return "lazy";
    case Algorithm::kBudgeted: return "budgeted";
    case Algorithm::kCover: return "cover";
    case Algorithm::kStream: return "stream";
  }
  return "greedy";
}

void CheckCompatibility(const ModelInfo& info, Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kGreedy:
    case Algorithm::kLazy:
    case Algorithm::kBudgeted:
      return;
    case Algorithm::kCover:
      if (!info.monotone || info.family == Family::kDistance) {
        throw Error(ErrorCode::kUnsupported,
                    "cover greedy needs a monotone similarity-, coverage- or "
                    "modular model; '" + info.name + "' is " +
                        std::string(FamilyName(info.family)) +
                        (info.monotone ? "-based" : "-based and non-monotone"));
      }
      return;
    case Algorithm::kStream:
      if (info.family != Family::kSimilarity &&
          info.family != Family::kDistance) {
        throw Error(ErrorCode::kUnsupported,
                    "stream greedy is only available for similarity- and "
                    "distance-based models; '" + info.name + "' is " +
                        std::string(FamilyName(info.family)) + "-based");
      }
      return;
  }
}

Selection NaiveGreedy(const Objective& f, const GroundSet& gs, int k,
                      const SolverConfig& config) {
  RequireMatchingSize(f, gs);
  RequireCardinality(k, gs.size());
  const ModelInfo info = f.Describe();
  auto memo = MakeMemo(f, config);
  GreedyRule rule;
  rule.max_items = k;
  rule.stop_at_zero = config.stop_at_zero.value_or(!info.monotone);
  return RunRule(*memo, rule, info, config);
}

Selection LazyGreedy(const Objective& f, const GroundSet& gs, int k,
                     const SolverConfig& config) {
  RequireMatchingSize(f, gs);
  RequireCardinality(k, gs.size());
  const ModelInfo info = f.Describe();
  auto memo = MakeMemo(f, config);
  GreedyRule rule;
  rule.max_items = k;
  rule.lazy = true;
  rule.stop_at_zero = config.stop_at_zero.value_or(!info.monotone);
  return RunRule(*memo, rule, info, config);
}

Selection BudgetedGreedy(const Objective& f, const GroundSet& gs,
                         double budget, const SolverConfig& config) {
  RequireMatchingSize(f, gs);
  if (!(budget > 0.0) || std::isnan(budget)) {
    throw Error(ErrorCode::kInvalidParam,
                "budget must be positive, got " + std::to_string(budget));
  }
  for (int j = 0; j < gs.size(); ++j) {
    if (!(gs.cost(j) > 0.0)) {
      throw Error(ErrorCode::kInvalidCost,
                  "budgeted greedy divides by cost; item '" + gs.id(j) +
                      "' has zero cost");
    }
  }
  const ModelInfo info = f.Describe();
  auto memo = MakeMemo(f, config);
  GreedyRule rule;
  rule.max_items = gs.size();
  rule.costs = gs.costs();
  rule.budget = budget;
  rule.lazy = config.lazy;
  rule.stop_at_zero = config.stop_at_zero.value_or(!info.monotone);
  Selection out = RunRule(*memo, rule, info, config);

  // The ratio rule alone can lose to one expensive item; keep the best
  // affordable singleton when it is strictly better.
  auto fresh = MakeMemo(f, config);
  int best = -1;
  double best_value = out.value();
  for (int j = 0; j < gs.size(); ++j) {
    if (gs.cost(j) > budget) continue;
    const double v = fresh->GainUnchecked(j);
    ++out.stats.gain_evaluations;
    if (v > best_value) {
      best_value = v;
      best = j;
    }
  }
  if (best >= 0) {
    out.indices = {best};
    out.objective_trace = {best_value};
    out.stats.stopped_at_zero = false;
  }
  return out;
}

Selection CoverGreedy(const Objective& f, const GroundSet& gs,
                      double fraction, const SolverConfig& config) {
  RequireMatchingSize(f, gs);
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidParam,
                "cover fraction must lie in (0, 1], got " +
                    std::to_string(fraction));
  }
  const ModelInfo info = f.Describe();
  CheckCompatibility(info, Algorithm::kCover);
  std::vector<int> all(gs.size());
  std::iota(all.begin(), all.end(), 0);
  const double target = fraction * f.EvaluateUnchecked(all) - kCoverTolerance;
  auto memo = MakeMemo(f, config);
  GreedyRule rule;
  rule.max_items = gs.size();
  rule.lazy = config.lazy;
  // With a monotone submodular model a zero best gain means f(X) == f(V).
  rule.stop_at_zero = true;
  rule.done = [target](const Memo& m) { return m.value() >= target; };
  return RunRule(*memo, rule, info, config);
}

Selection StreamGreedy(const Objective& f, const GroundSet& gs, double tau,
                       std::optional<uint64_t> seed,
                       const SolverConfig& config) {
  RequireMatchingSize(f, gs);
  if (std::isnan(tau) || tau == std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::kInvalidParam, "stream threshold must be < +inf");
  }
  CheckCompatibility(f.Describe(), Algorithm::kStream);
  std::vector<int> order(gs.size());
  std::iota(order.begin(), order.end(), 0);
  if (seed.has_value()) {
    std::mt19937_64 rng(*seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  auto memo = MakeMemo(f, config);
  Selection out;
  for (int j : order) {
    const double gain = memo->GainUnchecked(j);
    ++out.stats.gain_evaluations;
    if (gain >= tau) {
      memo->Commit(j);
      out.indices.push_back(j);
      out.objective_trace.push_back(memo->value());
    }
  }
  return out;
}

std::vector<int> FarthestPointExtend(const DistanceMatrix& d,
                                     std::span<const int> base, int count,
                                     std::span<const char> eligible) {
  const int n = d.size();
  std::vector<char> taken(n, 0);
  for (int b : base) taken[b] = 1;
  auto available = [&](int j) {
    return !taken[j] && (eligible.empty() || eligible[j]);
  };
  std::vector<int> added;
  // nearest[j] = min distance from j to base + added.
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  auto absorb = [&](int s) {
    taken[s] = 1;
    for (int j = 0; j < n; ++j) nearest[j] = std::min(nearest[j], d(j, s));
  };
  for (int b : base) absorb(b);
  if (base.empty() && count > 0) {
    int bi = -1, bj = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      if (!available(i)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (available(j) && d(i, j) > best) {
          best = d(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) {
      // A single eligible item: take it alone.
      for (int j = 0; j < n; ++j) {
        if (available(j)) {
          added.push_back(j);
          absorb(j);
          break;
        }
      }
      return added;
    }
    added.push_back(bi);
    absorb(bi);
    if (count >= 2) {
      added.push_back(bj);
      absorb(bj);
    }
  }
  while (static_cast<int>(added.size()) < count) {
    int pick = -1;
    for (int j = 0; j < n; ++j) {
      if (available(j) && (pick < 0 || nearest[j] > nearest[pick])) pick = j;
    }
    if (pick < 0) break;
    added.push_back(pick);
    absorb(pick);
  }
  return added;
}

Selection DisparityMinGreedy(const DisparityMin& f, const GroundSet& gs,
                             int k) {
  RequireMatchingSize(f, gs);
  if (k < 2 || k > gs.size()) {
    throw Error(ErrorCode::kInvalidParam,
                "disparity-min greedy needs 2 <= k <= n (k=" +
                    std::to_string(k) + ", n=" + std::to_string(gs.size()) +
                    ")");
  }
  Selection out;
  auto memo = f.NewMemo();
  for (int j : FarthestPointExtend(f.distances(), {}, k)) {
    memo->Commit(j);
    out.indices.push_back(j);
    out.objective_trace.push_back(memo->value());
  }
  out.stats.gain_evaluations = 0;
  return out;
}

Selection GreedyExtend(const Objective& f, Memo& memo, int count,
                       std::span<const char> eligible,
                       const SolverConfig& config) {
  if (memo.size() != f.size()) {
    throw Error(ErrorCode::kInvalidSelection, "memo does not match objective");
  }
  if (!eligible.empty() && eligible.size() != static_cast<size_t>(f.size())) {
    throw Error(ErrorCode::kInvalidParam, "eligibility mask size mismatch");
  }
  const ModelInfo info = f.Describe();
  GreedyRule rule;
  rule.max_items = count;
  rule.lazy = config.lazy;
  rule.stop_at_zero = config.stop_at_zero.value_or(!info.monotone);
  rule.eligible = eligible;
  return RunRule(memo, rule, info, config);
}

BruteForceResult BruteForceOpt(const Objective& f, const GroundSet& gs,
                               int k) {
  RequireMatchingSize(f, gs);
  const int n = gs.size();
  RequireCardinality(k, n);
  double combos = 1.0;
  for (int t = 0; t < k; ++t) {
    combos = combos * (n - t) / (t + 1);
    if (combos > kBruteForceLimit) {
      throw Error(ErrorCode::kTooLarge,
                  "C(" + std::to_string(n) + ", " + std::to_string(k) +
                      ") exceeds the brute-force limit of 10^6 subsets");
    }
  }
  std::vector<int> current(k);
  std::iota(current.begin(), current.end(), 0);
  BruteForceResult best;
  best.value = -std::numeric_limits<double>::infinity();
  while (true) {
    const double v = f.EvaluateUnchecked(current);
    if (v > best.value) {
      best.value = v;
      best.indices = current;
    }
    int pos = k - 1;
    while (pos >= 0 && current[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++current[pos];
    for (int t = pos + 1; t < k; ++t) current[t] = current[t - 1] + 1;
  }
  return best;
}

Selection Solve(const Objective& f, const GroundSet& gs,
                const Constraint& constraint, const SolverConfig& config) {
  const ModelInfo info = f.Describe();
  CheckCompatibility(info, constraint.algorithm);
  const auto* disparity_min = dynamic_cast<const DisparityMin*>(&f);
  switch (constraint.algorithm) {
    case Algorithm::kGreedy:
    case Algorithm::kLazy: {
      if (disparity_min != nullptr) {
        return DisparityMinGreedy(*disparity_min, gs, constraint.k);
      }
      if (constraint.algorithm == Algorithm::kGreedy) {
        return NaiveGreedy(f, gs, constraint.k, config);
      }
      return LazyGreedy(f, gs, constraint.k, config);
    }
    case Algorithm::kBudgeted:
      return BudgetedGreedy(f, gs, constraint.budget, config);
    case Algorithm::kCover:
      return CoverGreedy(f, gs, constraint.rho, config);
    case Algorithm::kStream:
      return StreamGreedy(f, gs, constraint.tau, constraint.seed, config);
  }
  return {};
}

}  // namespace datasumm

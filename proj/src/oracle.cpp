// Copyright 2026 The mrfs Authors
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

#include "mrfs/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <optional>
#include <utility>

#include "mrfs/shuffle.hpp"

namespace mrfs {
namespace {

using Lists = std::vector<std::vector<std::size_t>>;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since)
      .count();
}

class Budget {
 public:
  explicit Budget(std::uint64_t cap) : cap_(cap) {}
  void spend() {
    if (++used_ > cap_) throw CapExceeded(cap_);
  }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t cap_;
  std::uint64_t used_ = 0;
};

// Weights scaled to a common denominator so leaves are compared in integer
// arithmetic.
class Weights {
 public:
  explicit Weights(const Instance& instance) {
    boost::multiprecision::cpp_int scale = 1;
    for (const auto& job : instance.jobs) {
      scale = boost::multiprecision::lcm(
          scale, boost::multiprecision::denominator(job.weight));
    }
    for (const auto& job : instance.jobs) {
      const boost::multiprecision::cpp_int w =
          boost::multiprecision::numerator(job.weight) * scale /
          boost::multiprecision::denominator(job.weight);
      if (w > std::numeric_limits<std::int32_t>::max()) {
        throw std::invalid_argument("oracle: weights too fine-grained");
      }
      scaled_.push_back(static_cast<std::int64_t>(w));
    }
  }

  __int128 objective(const std::vector<Time>& completion) const {
    __int128 total = 0;
    for (std::size_t j = 0; j < completion.size(); ++j) {
      total += static_cast<__int128>(scaled_[j]) * completion[j];
    }
    return total;
  }

 private:
  std::vector<std::int64_t> scaled_;
};

// Visits every arrangement of n tasks on m processors: each processor's list
// gives the tasks it runs, in order.
void for_each_arrangement(std::size_t n, std::size_t m,
                          const std::function<void(const Lists&)>& visit) {
  Lists lists(m);
  std::function<void(std::size_t)> place = [&](std::size_t t) {
    if (t == n) {
      visit(lists);
      return;
    }
    for (auto& list : lists) {
      for (std::size_t pos = 0; pos <= list.size(); ++pos) {
        list.insert(list.begin() + static_cast<std::ptrdiff_t>(pos), t);
        place(t + 1);
        list.erase(list.begin() + static_cast<std::ptrdiff_t>(pos));
      }
    }
  };
  place(0);
}

bool dominates(const std::vector<Time>& lhs, const std::vector<Time>& rhs) {
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] > rhs[i]) return false;
  }
  return true;
}

// Non-dominated keys (componentwise <=) with one payload each.
template <class Payload>
class ParetoFront {
 public:
  void add(std::vector<Time> key, Payload payload) {
    for (const auto& item : items_) {
      if (dominates(item.first, key)) return;
    }
    std::erase_if(items_,
                  [&](const auto& item) { return dominates(key, item.first); });
    items_.emplace_back(std::move(key), std::move(payload));
  }
  const std::vector<std::pair<std::vector<Time>, Payload>>& items() const {
    return items_;
  }

 private:
  std::vector<std::pair<std::vector<Time>, Payload>> items_;
};

// Back-to-back timing of one phase arrangement; completion per task.
std::vector<Time> back_to_back(const PhaseTasks& tasks, const Lists& lists) {
  std::vector<Time> completion(tasks.tasks.size(), 0);
  for (std::size_t i = 0; i < lists.size(); ++i) {
    Time clock = 0;
    for (const std::size_t t : lists[i]) {
      clock += tasks.tasks[t].proc_times[i];
      completion[t] = clock;
    }
  }
  return completion;
}

std::vector<Placement> phase_placements(const PhaseTasks& tasks,
                                        const Lists& lists) {
  std::vector<Placement> out;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    Time clock = 0;
    for (const std::size_t t : lists[i]) {
      const Time p = tasks.tasks[t].proc_times[i];
      out.push_back({tasks.tasks[t].ref, tasks.processors[i], clock, clock + p});
      clock += p;
    }
  }
  return out;
}

std::vector<Time> job_max(const PhaseTasks& tasks,
                          const std::vector<Time>& completion) {
  std::vector<Time> out(tasks.job_count, 0);
  for (std::size_t t = 0; t < tasks.tasks.size(); ++t) {
    const std::size_t j = tasks.tasks[t].ref.job;
    out[j] = std::max(out[j], completion[t]);
  }
  return out;
}

// Map-side arrangements kept after dominance on `key_of(completion)`.
ParetoFront<Lists> map_front(const PhaseTasks& maps, Budget& budget,
                             bool per_task) {
  ParetoFront<Lists> front;
  for_each_arrangement(maps.tasks.size(), maps.processors.size(),
                       [&](const Lists& lists) {
                         budget.spend();
                         auto completion = back_to_back(maps, lists);
                         front.add(per_task ? std::move(completion)
                                            : job_max(maps, completion),
                                   lists);
                       });
  return front;
}

void require_disjoint(const Instance& instance) {
  if (!instance.pools_disjoint()) {
    throw std::invalid_argument(
        "oracle does not support overlapping Map and Reduce pools");
  }
}

// Transfers of one input processor, sequenced exactly.
struct Transfer {
  std::size_t local_reduce;  // position in the paired reduce processor's list
  TaskRef ref;
  Time release;
  Time length;
};

struct SequenceState {
  std::vector<std::size_t> order;  // indices into the transfer list
};

// Non-dominated completion vectors of the reduce blocks (per local reduce)
// over all sequences of the given positive-length transfers.
ParetoFront<SequenceState> sequence_transfers(
    const std::vector<Transfer>& transfers, std::size_t reduces,
    Budget& budget) {
  const std::size_t k = transfers.size();
  std::vector<std::uint32_t> block_mask(reduces, 0);
  for (std::size_t x = 0; x < k; ++x) {
    block_mask[transfers[x].local_reduce] |= 1u << x;
  }
  // Key: clock followed by per-reduce block completion (0 until complete).
  std::vector<ParetoFront<SequenceState>> states(std::size_t{1} << k);
  states[0].add(std::vector<Time>(reduces + 1, 0), {});
  for (std::uint32_t mask = 0; mask + 1 < (1u << k); ++mask) {
    for (const auto& [key, state] : states[mask].items()) {
      for (std::size_t x = 0; x < k; ++x) {
        if (mask & (1u << x)) continue;
        budget.spend();
        const Transfer& tr = transfers[x];
        const std::uint32_t next = mask | (1u << x);
        std::vector<Time> next_key = key;
        const Time end = std::max(key[0], tr.release) + tr.length;
        next_key[0] = end;
        const std::uint32_t block = block_mask[tr.local_reduce];
        if ((next & block) == block) next_key[1 + tr.local_reduce] = end;
        SequenceState next_state = state;
        next_state.order.push_back(x);
        states[next].add(std::move(next_key), std::move(next_state));
      }
    }
  }
  ParetoFront<SequenceState> out;
  for (const auto& [key, state] : states.back().items()) {
    out.add(std::vector<Time>(key.begin() + 1, key.end()), state);
  }
  return out;
}

}  // namespace

PhaseOracleResult brute_force_phase(const Instance& instance, Phase phase,
                                    const OracleOptions& options) {
  const auto started = Clock::now();
  const PhaseTasks tasks = phase_tasks(instance, phase);
  const Weights weights(instance);
  Budget budget(options.max_leaves);
  std::optional<__int128> best;
  Lists best_lists;
  for_each_arrangement(tasks.tasks.size(), tasks.processors.size(),
                       [&](const Lists& lists) {
                         budget.spend();
                         const auto value = weights.objective(
                             job_max(tasks, back_to_back(tasks, lists)));
                         if (!best || value < *best) {
                           best = value;
                           best_lists = lists;
                         }
                       });
  PhaseOracleResult result;
  result.witness = make_phase_schedule(instance, phase,
                                       phase_placements(tasks, best_lists));
  result.optimum = weighted_sum(instance, result.witness.job_completion);
  result.leaves = budget.used();
  result.elapsed_ms = elapsed_ms(started);
  return result;
}

OracleResult brute_force_mr(const Instance& instance,
                            const OracleOptions& options) {
  require_disjoint(instance);
  const auto started = Clock::now();
  const PhaseTasks maps = phase_tasks(instance, Phase::kMap);
  const PhaseTasks reduces = phase_tasks(instance, Phase::kReduce);
  const Weights weights(instance);
  Budget budget(options.max_leaves);
  const auto front = map_front(maps, budget, false);

  std::optional<__int128> best;
  std::vector<Placement> best_placements;
  std::vector<Time> completion(instance.jobs.size());
  for_each_arrangement(
      reduces.tasks.size(), reduces.processors.size(), [&](const Lists& lists) {
        for (const auto& [release, map_lists] : front.items()) {
          budget.spend();
          std::fill(completion.begin(), completion.end(), 0);
          for (std::size_t i = 0; i < lists.size(); ++i) {
            Time clock = 0;
            for (const std::size_t t : lists[i]) {
              const std::size_t j = reduces.tasks[t].ref.job;
              clock = std::max(clock, release[j]) +
                      reduces.tasks[t].proc_times[i];
              completion[j] = std::max(completion[j], clock);
            }
          }
          const auto value = weights.objective(completion);
          if (best && value >= *best) continue;
          best = value;
          best_placements = phase_placements(maps, map_lists);
          for (std::size_t i = 0; i < lists.size(); ++i) {
            Time clock = 0;
            for (const std::size_t t : lists[i]) {
              const Time start =
                  std::max(clock, release[reduces.tasks[t].ref.job]);
              clock = start + reduces.tasks[t].proc_times[i];
              best_placements.push_back(
                  {reduces.tasks[t].ref, reduces.processors[i], start, clock});
            }
          }
        }
      });
  OracleResult result;
  result.witness = make_merged_schedule(instance, std::move(best_placements));
  result.optimum = result.witness.objective;
  result.leaves = budget.used();
  result.elapsed_ms = elapsed_ms(started);
  return result;
}

namespace {

OracleResult brute_force_separate(const Instance& instance,
                                  const OracleOptions& options) {
  require_disjoint(instance);
  if (!instance.input_processors) {
    throw std::invalid_argument(
        "separate-shuffle variant requires input processors");
  }
  if (!instance.has_shuffle()) {
    throw std::invalid_argument(
        "shuffle problems need shuffle_times on every job");
  }
  const auto started = Clock::now();
  const PhaseTasks maps = phase_tasks(instance, Phase::kMap);
  const PhaseTasks reduces = phase_tasks(instance, Phase::kReduce);
  const auto& inputs = *instance.input_processors;
  const Weights weights(instance);
  Budget budget(options.max_leaves);
  const auto front = map_front(maps, budget, true);

  // Index of map task (job, k) in `maps`.
  std::vector<std::vector<std::size_t>> map_index(instance.jobs.size());
  for (std::size_t t = 0; t < maps.tasks.size(); ++t) {
    map_index[maps.tasks[t].ref.job].push_back(t);
  }
  const std::size_t jobs = instance.jobs.size();
  const std::size_t procs = reduces.processors.size();

  // One processor pair's candidate: per-job completion of its reduces, and
  // how it was obtained.
  struct PairChoice {
    std::vector<Transfer> transfers;   // positive-length, sequenced below
    std::vector<std::size_t> order;    // into `transfers`
  };

  std::optional<__int128> best;
  std::vector<Placement> best_placements;

  for_each_arrangement(reduces.tasks.size(), procs, [&](const Lists& lists) {
    for (const auto& [map_completion, map_lists] : front.items()) {
      std::vector<Time> maps_done(jobs, 0);
      for (std::size_t t = 0; t < maps.tasks.size(); ++t) {
        const std::size_t j = maps.tasks[t].ref.job;
        maps_done[j] = std::max(maps_done[j], map_completion[t]);
      }
      // Per processor pair, the non-dominated per-job completion vectors.
      std::vector<ParetoFront<PairChoice>> pair_fronts(procs);
      for (std::size_t i = 0; i < procs; ++i) {
        std::vector<Transfer> transfers;
        std::vector<Time> ready(lists[i].size(), 0);
        for (std::size_t rho = 0; rho < lists[i].size(); ++rho) {
          const TaskRef ref = reduces.tasks[lists[i][rho]].ref;
          const auto& matrix = *instance.jobs[ref.job].shuffle_times;
          ready[rho] = maps_done[ref.job];
          for (std::size_t k = 0; k < matrix.size(); ++k) {
            const Time length = matrix[k][ref.task];
            if (length == 0) continue;
            transfers.push_back({rho,
                                 {Phase::kShuffle, ref.job, ref.task, k},
                                 map_completion[map_index[ref.job][k]],
                                 length});
          }
        }
        if (transfers.size() > 31) {
          throw CapExceeded(options.max_leaves);
        }
        const auto sequences =
            sequence_transfers(transfers, lists[i].size(), budget);
        for (const auto& [blocks, state] : sequences.items()) {
          std::vector<Time> completion(jobs, 0);
          Time clock = 0;
          for (std::size_t rho = 0; rho < lists[i].size(); ++rho) {
            const PhaseTask& task = reduces.tasks[lists[i][rho]];
            clock = std::max({clock, ready[rho], blocks[rho]}) +
                    task.proc_times[i];
            completion[task.ref.job] =
                std::max(completion[task.ref.job], clock);
          }
          pair_fronts[i].add(std::move(completion),
                             PairChoice{transfers, state.order});
        }
      }

      // Combine one choice per pair.
      std::vector<std::size_t> pick(procs, 0);
      std::function<void(std::size_t, const std::vector<Time>&)> combine =
          [&](std::size_t i, const std::vector<Time>& completion) {
            if (i == procs) {
              budget.spend();
              const auto value = weights.objective(completion);
              if (best && value >= *best) return;
              best = value;
              best_placements = phase_placements(maps, map_lists);
              for (std::size_t q = 0; q < procs; ++q) {
                const PairChoice& choice = pair_fronts[q].items()[pick[q]].second;
                std::vector<Time> blocks(lists[q].size(), 0);
                Time clock = 0;
                for (const std::size_t x : choice.order) {
                  const Transfer& tr = choice.transfers[x];
                  const Time start = std::max(clock, tr.release);
                  clock = start + tr.length;
                  blocks[tr.local_reduce] =
                      std::max(blocks[tr.local_reduce], clock);
                  best_placements.push_back({tr.ref, inputs[q], start, clock});
                }
                clock = 0;
                for (std::size_t rho = 0; rho < lists[q].size(); ++rho) {
                  const PhaseTask& task = reduces.tasks[lists[q][rho]];
                  const auto& matrix = *instance.jobs[task.ref.job].shuffle_times;
                  for (std::size_t k = 0; k < matrix.size(); ++k) {
                    if (matrix[k][task.ref.task] != 0) continue;
                    const Time at =
                        map_completion[map_index[task.ref.job][k]];
                    best_placements.push_back(
                        {{Phase::kShuffle, task.ref.job, task.ref.task, k},
                         inputs[q], at, at});
                  }
                  const Time start = std::max(
                      {clock, maps_done[task.ref.job], blocks[rho]});
                  clock = start + task.proc_times[q];
                  best_placements.push_back(
                      {task.ref, reduces.processors[q], start, clock});
                }
              }
              return;
            }
            const auto& items = pair_fronts[i].items();
            for (std::size_t c = 0; c < items.size(); ++c) {
              pick[i] = c;
              std::vector<Time> merged = completion;
              for (std::size_t j = 0; j < jobs; ++j) {
                merged[j] = std::max(merged[j], items[c].first[j]);
              }
              combine(i + 1, merged);
            }
          };
      combine(0, std::vector<Time>(jobs, 0));
    }
  });

  OracleResult result;
  result.witness = make_merged_schedule(instance, std::move(best_placements));
  result.optimum = result.witness.objective;
  result.leaves = budget.used();
  result.elapsed_ms = elapsed_ms(started);
  return result;
}

}  // namespace

OracleResult brute_force_msr(const Instance& instance, ShuffleModel model,
                             const OracleOptions& options) {
  if (model == ShuffleModel::kSeparate) {
    return brute_force_separate(instance, options);
  }
  const auto started = Clock::now();
  OracleResult result = brute_force_mr(fold_shuffle(instance), options);
  result.witness = expand_schedule(instance, result.witness);
  result.optimum = result.witness.objective;
  result.elapsed_ms = elapsed_ms(started);
  return result;
}

}  // namespace mrfs

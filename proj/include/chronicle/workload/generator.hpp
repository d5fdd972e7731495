#pragma once

#include "chronicle/sched/rng.hpp"
#include "chronicle/workload/task.hpp"

namespace chronicle::workload {

struct GenerationParams {
  double margin = 10.0;
  double positive_rate = 0.5;
  double lo = 0.0;    // summary value range
  double hi = 100.0;
  int points = 5;     // series length per facet
  int first_x = 2008; // x of the first point
  double noise = 4.0; // per-point jitter amplitude around the summary
};

// Draws facet data whose per-facet summaries (series means) unambiguously
// determine the answer:
//   Threshold: with probability positive_rate exactly one summary is at least
//              cutoff + margin, all others at most cutoff - margin.
//   Maximum:   a unique argmax, at least margin above every other summary.
//   Trend:     summaries strictly monotone (up or down) or alternating with
//              every step at least margin.
Assignment generate_assignment(const TaskSpec& task, sched::Rng& rng,
                               const GenerationParams& params = {});

// Answer recovered from the data alone.
Answer oracle_answer(const Assignment& assignment);

}  // namespace chronicle::workload

#ifndef TORSION_SWEEP_HPP
#define TORSION_SWEEP_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include <omp.h>

#include "torsion/report.hpp"

namespace torsion {

/// How a batch of independent trials is evaluated. `serial` is the reference
/// path the parallel kernel is tested against.
struct Execution {
  enum class Mode { serial, parallel };
  Mode mode = Mode::parallel;
  int jobs = 0;  // 0: OpenMP default

  static Execution serial() { return {Mode::serial, 1}; }
  static Execution parallel(int jobs = 0) { return {Mode::parallel, jobs}; }
};

/// Runs trial(i, seed + i) for i in [0, count) and returns the records in index order.
/// Trials must be pure functions of their arguments, so both modes produce identical output.
template <class Trial>
std::vector<TrialRecord> run_trials(std::size_t count, std::uint64_t seed, Execution exec, Trial&& trial) {
  std::vector<TrialRecord> out(count);
  // exceptions may not cross the parallel region; they become failing records
  auto evaluate = [&](std::size_t i) {
    const std::uint64_t trial_seed = seed + i;
    try {
      out[i] = trial(i, trial_seed);
    } catch (const std::exception& e) {
      out[i] = TrialRecord{};
      out[i].seed = trial_seed;
      out[i].status = Status::fail;
      out[i].note = std::string("exception: ") + e.what();
    }
  };
  if (exec.mode == Execution::Mode::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) evaluate(i);
    return out;
  }
  const int threads = exec.jobs > 0 ? exec.jobs : omp_get_max_threads();
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) evaluate(static_cast<std::size_t>(i));
  return out;
}

/// Sweep wrapper: builds a finalized report named `check` and records wall time.
template <class Trial>
VerificationReport sweep(std::string check, std::size_t count, std::uint64_t seed, Execution exec,
                         Trial&& trial) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.check = std::move(check);
  report.trials = run_trials(count, seed, exec, std::forward<Trial>(trial));
  report.finalize();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace torsion

#endif  // TORSION_SWEEP_HPP

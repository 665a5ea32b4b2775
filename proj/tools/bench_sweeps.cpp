// Compares the serial reference sweeps against the OpenMP kernels on the
// three heavy drivers. Verifies that both modes agree before reporting.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stitkit/parser.hpp"
#include "stitkit/sweep.hpp"

using namespace stitkit;

namespace {

using Clock = std::chrono::steady_clock;

double run_ms(void (*work)(ExecMode), ExecMode mode) {
  auto t0 = Clock::now();
  work(mode);
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool g_agree = true;

void bench_fuzz(ExecMode mode) {
  FuzzConfig config;
  config.models = 8000;
  config.bounds.max_states = 5;
  config.bounds.agent_count = 3;
  config.seed = 7;
  FuzzReport rep = soundness_fuzz(config, mode);
  g_agree = g_agree && rep.report.holds;
}

void bench_validity(ExecMode mode) {
  SearchBounds bounds;
  bounds.max_states = 4;
  bounds.agent_count = 2;
  ValidityResult r =
      validity_search(parse("[a] p & [b] q -> dia (p & q) | r"), bounds, mode);
  g_agree = g_agree && r.verdict == ValidityResult::Verdict::ValidUpToBound;
}

void bench_translation(ExecMode mode) {
  TranslationFuzzConfig config;
  config.models = 3000;
  config.formulas_per_model = 30;
  config.seed = 7;
  TranslationFuzzReport rep = translation_fuzz(config, mode);
  g_agree = g_agree && rep.report.holds;
}

struct Row {
  const char* name;
  void (*work)(ExecMode);
};

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serially\n");
#endif
  std::printf("%-22s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");

  const Row rows[] = {
      {"soundness-fuzz", bench_fuzz},
      {"validity-search", bench_validity},
      {"translation-fuzz", bench_translation},
  };
  for (const Row& row : rows) {
    double serial = run_ms(row.work, ExecMode::Serial);
    double parallel = run_ms(row.work, ExecMode::Parallel);
    std::printf("%-22s %12.1f %12.1f %8.2fx\n", row.name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
  }
  if (!g_agree) {
    std::printf("FAIL: a kernel reported an unexpected verdict\n");
    return 1;
  }
  return 0;
}

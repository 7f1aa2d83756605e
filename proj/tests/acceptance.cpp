#include <chrono>
#include <cstdio>

#include "ppx/verify.hpp"

int main() {
  const ppx::VerifyOptions opt = ppx::default_verify_options();
  int failed = 0;
  for (int id = 1; id <= ppx::criterion_count; ++id) {
    const auto t0 = std::chrono::steady_clock::now();
    const ppx::CheckResult r = ppx::run_criterion(id, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %2d  %-48s %7ld instances  %6.2fs%s%s\n", r.pass ? "PASS" : "FAIL", id, r.name.c_str(),
                r.instances, secs, r.detail.empty() ? "" : "  ", r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%d/%d criteria passed\n", ppx::criterion_count - failed, ppx::criterion_count);
  return failed ? 1 : 0;
}

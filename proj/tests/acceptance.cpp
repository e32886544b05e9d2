// Runs every acceptance criterion with the pinned default configuration and
// prints one line per criterion.
//
// Criterion 12 is an expected failure: on the neck waist r ~ |u|^a and
// rho ~ |u|, so r^{tau-2} rho^{delta-tau} ~ |u|^{delta - 2a + tau (a - 1)},
// whose exponent vanishes at delta = 2a + 0.1, tau = -0.1. The weight does
// not decay in A there. It is still run and reported, and a pass would be
// flagged as unexpected.

#include <algorithm>
#include <cstdio>
#include <set>

#include "slcyl/verify.hpp"

int main() {
  const std::set<int> expected_red{12};
  const slcyl::Report rep = slcyl::run_suite(slcyl::SuiteConfig{});
  int unexpected = 0;
  for (const auto& c : rep.checks) {
    const bool xfail = expected_red.count(c.id) > 0;
    std::printf("criterion %2d %-24s %s  measured %.6g  %s %.6g  (%.1fs)%s\n", c.id, c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.measured, c.comparison.c_str(), c.tolerance, c.seconds,
                xfail ? (c.pass ? "  [expected FAIL, passed]" : "  [expected FAIL]") : "");
    if (!c.detail.empty()) std::printf("             %s\n", c.detail.c_str());
    if (c.pass == xfail) ++unexpected;
  }
  if (rep.checks.size() != 14) {
    std::printf("expected 14 criteria, got %zu\n", rep.checks.size());
    return 1;
  }
  std::printf("%s: %d unexpected result(s)\n", unexpected == 0 ? "OK" : "NOT OK", unexpected);
  return unexpected == 0 ? 0 : 1;
}

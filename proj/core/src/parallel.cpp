#include "drinfeld/parallel.hpp"

namespace drinfeld {

namespace {
std::atomic<unsigned> g_jobs{0};
}

void set_default_jobs(unsigned jobs) { g_jobs = jobs; }

unsigned default_jobs() {
  const unsigned j = g_jobs.load();
  if (j != 0) return j;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace drinfeld

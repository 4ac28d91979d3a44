// Times the lambda(T) counting kernel: OpenMP version against the serial
// reference on one block orbit.  Usage: bench_count [q] [k] [repeats]
// (default: an S4 orbit of length 24 in PSL(2,233)).

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "psl4/dickson.hpp"
#include "psl4/verify.hpp"

using namespace psl4;

int main(int argc, char** argv) {
  const auto q = static_cast<std::uint32_t>(argc > 1 ? std::atoi(argv[1]) : 233);
  const auto k = static_cast<std::size_t>(argc > 2 ? std::atoi(argv[2]) : 24);
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 5;
  using clock = std::chrono::steady_clock;
  auto secs = [](clock::time_point t) { return std::chrono::duration<double>(clock::now() - t).count(); };

  auto G = psl_group(q);
  std::optional<SubgroupHandle> H;
  std::vector<Point> B;
  for (const auto& cand : classes_of_order(G, 24)) {
    for (const auto& o : orbit_partition(cand))
      if (o.size() == k) {
        H = cand;
        B = o;
        break;
      }
    if (H) break;
  }
  if (!H) {
    std::cerr << "no subgroup of order 24 with an orbit of length " << k << " in PSL(2," << q << ")\n";
    return 2;
  }
  auto t0 = clock::now();
  auto sys = block_orbit(G, B, H);
  std::cout << "PSL(2," << q << "), " << H->family.to_string() << ", b = " << sys.b() << ", block orbit " << secs(t0)
            << " s\n";
  FourSubsetOrbits fo(G);
  std::cout << "4-subset orbit representatives: " << fo.count() << "\n";

  double serial = 1e300, parallel = 1e300;
  std::vector<std::uint64_t> a, b;
  for (int r = 0; r < repeats; ++r) {
    t0 = clock::now();
    a = count_lambda_serial(sys.blocks, fo.reps());
    serial = std::min(serial, secs(t0));
    t0 = clock::now();
    b = count_lambda(sys.blocks, fo.reps());
    parallel = std::min(parallel, secs(t0));
  }
  std::cout << "serial   " << serial << " s\n"
            << "parallel " << parallel << " s (" << omp_get_max_threads() << " threads), speedup "
            << serial / parallel << "\n"
            << "results " << (a == b ? "identical" : "DIFFER") << "\n";
  return a == b ? 0 : 1;
}

#include "kfs/oracle.hpp"

#include <omp.h>

#include <bit>
#include <string>
#include <vector>

#include "kfs/error.hpp"

namespace kfs {

namespace {

struct Scored {
  double fitness;
  std::uint64_t mask;
};

// Strict "a ranks above b": higher gc, then fewer features, then smaller value.
bool ranks_above(const Scored& a, const Scored& b) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  const int pa = std::popcount(a.mask);
  const int pb = std::popcount(b.mask);
  if (pa != pb) return pa < pb;
  return a.mask < b.mask;
}

// Keeps the two highest-ranked entries seen.
struct TopTwo {
  std::optional<Scored> first;
  std::optional<Scored> second;

  void offer(const Scored& s) {
    if (!first || ranks_above(s, *first)) {
      second = first;
      first = s;
    } else if (!second || ranks_above(s, *second)) {
      second = s;
    }
  }
};

void check_size(const Dataset& ds, std::size_t max_n) {
  const std::size_t n = ds.n_features();
  if (n > max_n || n > 63) {
    throw ConfigError("feature count " + std::to_string(n) + " exceeds max_n " +
                      std::to_string(std::min<std::size_t>(max_n, 63)));
  }
}

OracleResult to_result(const TopTwo& top, std::size_t n) {
  OracleResult r;
  r.best_mask = FeatureMask::from_integer(top.first->mask, n);
  r.best_fitness = top.first->fitness;
  r.evaluated = (std::uint64_t{1} << n) - 1;
  if (top.second) r.runner_up_fitness = top.second->fitness;
  return r;
}

}  // namespace

OracleResult exhaustive_best(const Dataset& ds, const KernelConfig& kcfg,
                             std::size_t max_n, int threads) {
  check_size(ds, max_n);
  kcfg.validate();
  const std::size_t n = ds.n_features();
  const auto last = static_cast<std::int64_t>((std::uint64_t{1} << n) - 1);
  const int team = threads > 0 ? threads : omp_get_max_threads();

  std::vector<TopTwo> partial(static_cast<std::size_t>(team));
#pragma omp parallel num_threads(team)
  {
    TopTwo& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t v = 1; v <= last; ++v) {
      const auto mask = FeatureMask::from_integer(static_cast<std::uint64_t>(v), n);
      local.offer({gc(ds, mask, kcfg, 1).gc, static_cast<std::uint64_t>(v)});
    }
  }
  TopTwo top;
  for (const auto& p : partial) {
    if (p.first) top.offer(*p.first);
    if (p.second) top.offer(*p.second);
  }
  return to_result(top, n);
}

namespace reference {

OracleResult exhaustive_best(const Dataset& ds, const KernelConfig& kcfg,
                             std::size_t max_n) {
  check_size(ds, max_n);
  kcfg.validate();
  const std::size_t n = ds.n_features();
  const std::uint64_t last = (std::uint64_t{1} << n) - 1;
  TopTwo top;
  for (std::uint64_t v = 1; v <= last; ++v) {
    const auto mask = FeatureMask::from_integer(v, n);
    top.offer({kfs::reference::gc(ds, mask, kcfg).gc, v});
  }
  return to_result(top, n);
}

}  // namespace reference

}  // namespace kfs

#pragma once

// Seeded corpus runners shared by the command line tool and the acceptance
// binary. Instances are drawn sequentially from one generator (so a seed fixes
// the corpus) and verified concurrently; results keep the drawing order.

#include "galjac/iwasawa.hpp"
#include "galjac/theorems.hpp"
#include "galjac/zeta.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace galjac {

/// out[i] = f(i) for i < n on a small worker pool.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  const std::size_t k = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < k; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

/// `per_group` covers for each group, in group order.
inline std::vector<VoltageGraph> cover_corpus(const std::vector<GroupPtr>& groups, std::size_t per_group,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<VoltageGraph> out;
  for (const auto& g : groups)
    for (std::size_t t = 0; t < per_group; ++t) out.push_back(random_voltage_graph(g, rng));
  return out;
}

struct CoverCorpusResult {
  std::vector<VoltageGraph> instances;
  std::vector<VerificationReport> main, duality, norm;
};

inline CoverCorpusResult run_cover_corpus(const std::vector<GroupPtr>& groups, std::size_t per_group, std::uint64_t seed) {
  CoverCorpusResult r;
  r.instances = cover_corpus(groups, per_group, seed);
  struct Triple {
    VerificationReport main, duality, norm;
  };
  const auto res = parallel_map<Triple>(r.instances.size(), [&](std::size_t i) {
    return Triple{verify_main_theorem(r.instances[i]), verify_duality(r.instances[i]),
                  verify_norm_identities(r.instances[i])};
  });
  for (const auto& t : res) {
    r.main.push_back(t.main);
    r.duality.push_back(t.duality);
    r.norm.push_back(t.norm);
  }
  return r;
}

/// Random connected multigraph with |V| <= max_v and #E <= max_e.
inline Graph random_multigraph(std::mt19937_64& rng, std::size_t max_v, std::size_t max_e) {
  for (;;) {
    const std::size_t nv = 1 + rng() % max_v;
    const std::size_t min_e = nv - 1;
    if (min_e > max_e) continue;
    const std::size_t ne = min_e + rng() % (max_e - min_e + 1);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < ne; ++i) edges.emplace_back(rng() % nv, rng() % nv);
    Graph g = Graph::from_edges(nv, edges);
    if (g.is_connected()) return g;
  }
}

/// Jacobian order from the Smith form against spanning trees counted by enumeration.
inline Report kirchhoff_corpus(std::size_t cases, std::uint64_t seed, std::size_t max_v = 6, std::size_t max_e = 10) {
  Report r;
  r.claim = "#Jac(X) equals the number of spanning trees";
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < cases; ++t) {
    const Graph g = random_multigraph(rng, max_v, max_e);
    ++r.cases;
    const Int a = jacobian(g).order(), b = spanning_tree_count_enumeration(g);
    if (a != b) r.fail("case " + std::to_string(t) + ": " + a.get_str() + " vs " + b.get_str());
  }
  return r;
}

/// Every tuple of factor orders >= 2 with product <= max_order and at most max_factors entries.
inline std::vector<std::vector<long>> small_group_orders(long max_order, std::size_t max_factors) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  auto rec = [&](auto&& self, long prod) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_factors) return;
    for (long n = 2; prod * n <= max_order; ++n) {
      cur.push_back(n);
      self(self, prod * n);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

/// The shift ideal via the presentation against the closed form.
inline Report shift_corpus(long max_order, std::size_t max_factors) {
  Report r;
  r.claim = "Fitt^[1](Z/#G) by presentation equals the closed form";
  const auto all = small_group_orders(max_order, max_factors);
  const auto ok = parallel_map<int>(all.size(), [&](std::size_t i) {
    const auto g = make_group(all[i]);
    return shift1_via_presentation(g) == closed_form_shift1(g) ? 1 : 0;
  });
  for (std::size_t i = 0; i < all.size(); ++i) {
    ++r.cases;
    if (!ok[i]) r.fail(make_group(all[i])->describe());
  }
  return r;
}

/// Three-term zeta identity on covers of the listed groups (the trivial group
/// gets a random connected base with zero voltages).
inline std::vector<Report> zeta_corpus(const std::vector<GroupPtr>& groups, std::size_t cases, std::size_t L,
                                       std::uint64_t seed, std::vector<VoltageGraph>* instances = nullptr) {
  std::mt19937_64 rng(seed);
  std::vector<VoltageGraph> vgs;
  const auto c2 = make_group({2});
  for (std::size_t t = 0; t < cases; ++t) {
    const auto& g = groups[t % groups.size()];
    if (g->size() == 1) {
      const auto b = random_voltage_graph(c2, rng);
      vgs.emplace_back(b.base(), g, std::vector<std::size_t>(b.base().edge_count(), 0));
    } else {
      vgs.push_back(random_voltage_graph(g, rng));
    }
  }
  auto out = parallel_map<Report>(vgs.size(), [&](std::size_t i) { return verify_three_term(vgs[i], L); });
  if (instances) *instances = std::move(vgs);
  return out;
}

inline std::vector<ZpVoltageGraph> tower_corpus(unsigned long p, std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ZpVoltageGraph> out;
  for (std::size_t t = 0; t < cases; ++t) out.push_back(random_tower(p, rng));
  return out;
}

/// Kida cases with mu = 0 on the base tower; draws until `cases` are found.
inline std::vector<KidaReport> kida_corpus(const GroupPtr& g, unsigned long p, std::size_t cases, unsigned n_max,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<KidaReport> out;
  for (int draws = 0; out.size() < cases && draws < 1000; ++draws) {
    const ZpVoltageGraph z = random_kida_tower(g, p, rng);
    if (weierstrass_invariants(divide_by_t(z_power_series(z))).mu != 0) continue;
    out.push_back(verify_kida(z, n_max));
  }
  return out;
}

}  // namespace galjac

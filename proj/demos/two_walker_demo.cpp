// Minimal library usage: evolve the perturbed singlet on an 11-site ring a
// short way under SEA dynamics and print a few observables.

#include <cstdio>

#include "seawalk/seawalk.hpp"

int main() {
  using namespace seawalk;
  const int n = 11;
  const RingGraph g = ring_graph(n);
  const Matrix pa = antisym_projector(n);
  const Regime regime{RegimeKind::FI, 10.0, 0.1};
  const Matrix h_a = project_antisym(total_hamiltonian(regime_alphas(regime, n), g), pa);
  const Matrix rho0 = perturbed_initial_state({5, 6, 0.95}, n);

  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 1.0;
  cfg.stride = 200;

  std::printf("%8s %10s %10s %10s\n", "t/tau", "msd", "entropy", "loschmidt");
  const TrajectoryRecord rec =
      evolve(rho0, EvolutionKind::Sea, h_a, pa, SeaParams{}, cfg);
  for (const auto& row : rec.rows)
    std::printf("%8.3f %10.5f %10.5f %10.5f\n", row.t_over_tau, row.msd,
                row.entropy_total, row.loschmidt);
  return 0;
}

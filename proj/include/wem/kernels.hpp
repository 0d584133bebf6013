#pragma once

// Data-parallel batch kernels. Each has a serial reference implementation
// (kernels_serial.cpp) and an OpenMP version (kernels_omp.cpp) that must
// return identical results for any thread count.

#include "wem/geometry.hpp"
#include "wem/menu.hpp"
#include "wem/simulator.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace wem::kernels {

std::vector<TrialLog> run_trials_serial(std::span<const TrialJob> jobs);
std::vector<TrialLog> run_trials_parallel(std::span<const TrialJob> jobs, int threads = 0);

/// 1 where the outline (flattened at `tolerance`) contains the point.
std::vector<std::uint8_t> contains_batch_serial(const ItemOutline& outline,
                                                std::span<const Point> points,
                                                double tolerance = default_flatten_tolerance);
std::vector<std::uint8_t> contains_batch_parallel(const ItemOutline& outline,
                                                  std::span<const Point> points,
                                                  double tolerance = default_flatten_tolerance,
                                                  int threads = 0);

/// Outline areas over an (eta, alpha, epsilon) lattice with the remaining
/// fields taken from `base`. Index = (i_eta * n_alpha + i_alpha) * n_eps + i_eps.
std::vector<double> area_lattice_serial(const ShapeParams& base, std::span<const double> etas,
                                        std::span<const double> alphas,
                                        std::span<const double> epsilons, FormulaMode mode);
std::vector<double> area_lattice_parallel(const ShapeParams& base, std::span<const double> etas,
                                          std::span<const double> alphas,
                                          std::span<const double> epsilons, FormulaMode mode,
                                          int threads = 0);

/// Index of difficulty of the tunnel to each target.
std::vector<double> difficulty_serial(const MenuTree& tree, const MenuConfig& config,
                                      std::span<const NodeIndex> targets, double eta_profile = 1.0,
                                      double step = 1.0);
std::vector<double> difficulty_parallel(const MenuTree& tree, const MenuConfig& config,
                                        std::span<const NodeIndex> targets,
                                        double eta_profile = 1.0, double step = 1.0,
                                        int threads = 0);

} // namespace wem::kernels

#include "wem/kernels.hpp"

#include "wem/steering.hpp"

namespace wem::kernels {

std::vector<TrialLog> run_trials_serial(std::span<const TrialJob> jobs) {
    std::vector<TrialLog> out;
    out.reserve(jobs.size());
    for (const auto& job : jobs) {
        out.push_back(run_trial(job.task, job.config, job.cursor));
    }
    return out;
}

std::vector<std::uint8_t> contains_batch_serial(const ItemOutline& outline,
                                                std::span<const Point> points, double tolerance) {
    const FlatOutline flat = flatten_outline(outline, tolerance);
    std::vector<std::uint8_t> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        out[i] = contains_point(flat.vertices, points[i]) ? 1 : 0;
    }
    return out;
}

std::vector<double> area_lattice_serial(const ShapeParams& base, std::span<const double> etas,
                                        std::span<const double> alphas,
                                        std::span<const double> epsilons, FormulaMode mode) {
    std::vector<double> out(etas.size() * alphas.size() * epsilons.size());
    std::size_t idx = 0;
    for (double eta : etas) {
        for (double alpha : alphas) {
            for (double eps : epsilons) {
                ShapeParams p = base;
                p.eta = eta;
                p.alpha = alpha;
                p.epsilon = eps;
                out[idx++] = outline_area(compute_item_outline(p, mode));
            }
        }
    }
    return out;
}

std::vector<double> difficulty_serial(const MenuTree& tree, const MenuConfig& config,
                                      std::span<const NodeIndex> targets, double eta_profile,
                                      double step) {
    std::vector<double> out(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        out[i] = index_of_difficulty(tunnel_for_target(tree, config, targets[i], eta_profile, step));
    }
    return out;
}

} // namespace wem::kernels

#include "wem/kernels.hpp"

#include "wem/steering.hpp"

#include <omp.h>

#include <exception>
#include <mutex>

namespace wem::kernels {

namespace {

int team_size(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

// Exceptions must not escape an OpenMP region; the first one is kept and
// rethrown after the loop.
class ErrorSlot {
public:
    template <typename F>
    void run(F&& f) {
        try {
            f();
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!error_) {
                error_ = std::current_exception();
            }
        }
    }
    void rethrow() const {
        if (error_) {
            std::rethrow_exception(error_);
        }
    }

private:
    std::mutex mutex_;
    std::exception_ptr error_;
};

} // namespace

std::vector<TrialLog> run_trials_parallel(std::span<const TrialJob> jobs, int threads) {
    std::vector<TrialLog> out(jobs.size());
    const auto n = static_cast<std::ptrdiff_t>(jobs.size());
    ErrorSlot errors;
#pragma omp parallel for schedule(dynamic, 4) num_threads(team_size(threads))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        errors.run([&] {
            const auto& job = jobs[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i)] = run_trial(job.task, job.config, job.cursor);
        });
    }
    errors.rethrow();
    return out;
}

std::vector<std::uint8_t> contains_batch_parallel(const ItemOutline& outline,
                                                  std::span<const Point> points, double tolerance,
                                                  int threads) {
    const FlatOutline flat = flatten_outline(outline, tolerance);
    std::vector<std::uint8_t> out(points.size());
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static) num_threads(team_size(threads))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            contains_point(flat.vertices, points[static_cast<std::size_t>(i)]) ? 1 : 0;
    }
    return out;
}

std::vector<double> area_lattice_parallel(const ShapeParams& base, std::span<const double> etas,
                                          std::span<const double> alphas,
                                          std::span<const double> epsilons, FormulaMode mode,
                                          int threads) {
    validate(base);
    const std::size_t na = alphas.size();
    const std::size_t ne = epsilons.size();
    std::vector<double> out(etas.size() * na * ne);
    const auto n = static_cast<std::ptrdiff_t>(out.size());
    ErrorSlot errors;
#pragma omp parallel for schedule(static) num_threads(team_size(threads))
    for (std::ptrdiff_t idx = 0; idx < n; ++idx) {
        errors.run([&] {
            const auto u = static_cast<std::size_t>(idx);
            ShapeParams p = base;
            p.eta = etas[u / (na * ne)];
            p.alpha = alphas[(u / ne) % na];
            p.epsilon = epsilons[u % ne];
            out[u] = outline_area(compute_item_outline(p, mode));
        });
    }
    errors.rethrow();
    return out;
}

std::vector<double> difficulty_parallel(const MenuTree& tree, const MenuConfig& config,
                                        std::span<const NodeIndex> targets, double eta_profile,
                                        double step, int threads) {
    std::vector<double> out(targets.size());
    const auto n = static_cast<std::ptrdiff_t>(targets.size());
    ErrorSlot errors;
#pragma omp parallel for schedule(dynamic, 8) num_threads(team_size(threads))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        errors.run([&] {
            const auto u = static_cast<std::size_t>(i);
            out[u] = index_of_difficulty(
                tunnel_for_target(tree, config, targets[u], eta_profile, step));
        });
    }
    errors.rethrow();
    return out;
}

} // namespace wem::kernels

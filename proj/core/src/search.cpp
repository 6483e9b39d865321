#include "qsearch/search.hpp"

#include <stdexcept>
#include <string>

#include "qsearch/reflections.hpp"

namespace qsearch {
namespace {

class PeakTracker {
  public:
    PeakTracker(bool record, int total_steps) : record_(record) {
        if (record_) {
            trajectory_.populations.reserve(static_cast<std::size_t>(total_steps) + 1);
        }
    }

    void push(int step, double p) {
        if (record_ || step == 0) {
            trajectory_.populations.push_back(p);
        }
        last_ = p;
        if (step == 0 || p > trajectory_.peak_population) {
            trajectory_.peak_population = p;
            trajectory_.peak_step = step;
        }
    }

    Trajectory finish(int total_steps) && {
        if (!record_ && total_steps > 0) {
            trajectory_.populations.push_back(last_);
        }
        return std::move(trajectory_);
    }

  private:
    bool record_;
    double last_ = 0.0;
    Trajectory trajectory_;
};

}  // namespace

std::string_view to_string(DiffusionPath path) {
    return path == DiffusionPath::direct ? "direct" : "gates";
}

void ExperimentConfig::validate() const {
    if (marked.flat >= shape.N()) {
        throw std::out_of_range("marked index " + std::to_string(marked.flat) + " outside [0, " +
                                std::to_string(shape.N()) + ")");
    }
    if (f.dim() != shape.d()) {
        throw std::invalid_argument("F gate is " + std::to_string(f.dim()) + "x" + std::to_string(f.dim()) +
                                    " but the register has d=" + std::to_string(shape.d()));
    }
    if (schedule.N != shape.N()) {
        throw std::invalid_argument("schedule was built for N=" + std::to_string(schedule.N) +
                                    " but the register has N=" + std::to_string(shape.N()));
    }
    if (schedule.steps < 0) {
        throw std::invalid_argument("schedule has a negative step count");
    }
}

Trajectory run_extended(const ExperimentConfig& cfg, int extra_steps) {
    cfg.validate();
    if (extra_steps < 0) {
        throw std::invalid_argument("extra_steps must be >= 0, got " + std::to_string(extra_steps));
    }
    const int total = cfg.schedule.steps + extra_steps;
    const LocalGate f = cfg.f.gate();
    const double phi = cfg.schedule.phi;

    StateVector axis = prepare_uniform(cfg.shape, f);
    StateVector s = axis;
    PeakTracker tracker(cfg.record, total);
    tracker.push(0, population(s, cfg.marked));
    for (int step = 1; step <= total; ++step) {
        if (cfg.diffusion == DiffusionPath::direct) {
            grover_step(s, cfg.marked, phi, phi, axis);
        } else {
            grover_step_via_gates(s, cfg.marked, phi, phi, f);
        }
        tracker.push(step, population(s, cfg.marked));
    }
    return std::move(tracker).finish(total);
}

Trajectory run_search(const ExperimentConfig& cfg) {
    return run_extended(cfg, 0);
}

Eigen::MatrixXcd dense_grover_matrix(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.shape.N();
    if (n > kMaxDenseStates) {
        throw std::invalid_argument("dense Grover matrix limited to N <= " + std::to_string(kMaxDenseStates) +
                                    ", got N=" + std::to_string(n));
    }
    const LocalGate f = cfg.f.gate();
    const StateVector axis = prepare_uniform(cfg.shape, f);
    const double phi = cfg.schedule.phi;
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd g(dim, dim);
    for (std::size_t col = 0; col < n; ++col) {
        StateVector e = basis_state(cfg.shape, BasisIndex::from_flat(cfg.shape, col));
        grover_step(e, cfg.marked, phi, phi, axis);
        for (std::size_t row = 0; row < n; ++row) {
            g(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = e[row];
        }
    }
    return g;
}

Trajectory run_dense(const ExperimentConfig& cfg, const Eigen::MatrixXcd& grover, int steps) {
    cfg.validate();
    const auto dim = static_cast<Eigen::Index>(cfg.shape.N());
    if (grover.rows() != dim || grover.cols() != dim) {
        throw std::invalid_argument("dense Grover matrix does not match the register size");
    }
    const StateVector init = prepare_uniform(cfg.shape, cfg.f.gate());
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = init[static_cast<std::size_t>(i)];
    }
    const auto m = static_cast<Eigen::Index>(cfg.marked.flat);
    PeakTracker tracker(true, steps);
    tracker.push(0, std::norm(v(m)));
    for (int step = 1; step <= steps; ++step) {
        v = grover * v;
        tracker.push(step, std::norm(v(m)));
    }
    return std::move(tracker).finish(steps);
}

}  // namespace qsearch

#pragma once

/// Trajectory propagation for coupled and switched linear systems, with
/// cone-invariance and Lyapunov-decrease monitors.
///
/// Propagation is by exact per-segment matrix exponentials, not ODE
/// stepping: linear dynamics admit closed-form flow, which removes
/// integrator tuning from the trust base. Within a segment the sampled
/// step reuses one exponential; the final partial step is included and
/// state is continuous across switches.

#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "conelyap/cones.hpp"
#include "conelyap/lyapunov.hpp"
#include "conelyap/spectral.hpp"

namespace conelyap {

struct ScheduleSegment {
    std::size_t mode = 0; ///< index into the mode family
    double duration = 0.0;
};

struct SwitchingSchedule {
    std::vector<ScheduleSegment> segments;

    double total_duration() const {
        double t = 0.0;
        for (const auto& s : segments) t += s.duration;
        return t;
    }

    double min_duration() const {
        double t = std::numeric_limits<double>::infinity();
        for (const auto& s : segments) t = std::min(t, s.duration);
        return t;
    }
};

struct Trajectory {
    std::vector<double> times; ///< strictly increasing, starting at 0
    std::vector<RealVector> states;
    std::string system_id;
    RealVector x0;
    double dt = 0.0;
};

/// e^{tA} x0; accuracy inherited from mat_exp.
inline RealVector propagate(const RationalMatrix& a, const RealVector& x0, double t) {
    if (t < 0.0) throw RangeError("propagate requires t >= 0");
    return mat_exp(a, t) * x0;
}

/// Samples the switched flow at steps of dt within each segment. A
/// nonpositive dt requests the default of min(segment duration) / 20.
inline Trajectory simulate_switched(const std::vector<RationalMatrix>& modes,
                                    const SwitchingSchedule& schedule,
                                    const RealVector& x0,
                                    double dt = 0.0,
                                    std::string system_id = "") {
    if (modes.empty()) throw ContractError("simulate_switched needs at least one mode");
    const std::size_t n = modes.front().rows();
    for (const auto& m : modes) {
        m.require_square("simulate_switched");
        if (m.rows() != n) throw DimensionError("simulate_switched: mode dimensions differ");
    }
    if (x0.size() != n) throw DimensionError("simulate_switched: initial state dimension mismatch");
    for (const auto& seg : schedule.segments) {
        if (seg.mode >= modes.size()) throw ContractError("schedule references mode " + std::to_string(seg.mode + 1) +
                                                          " of " + std::to_string(modes.size()));
        if (!(seg.duration > 0.0)) throw ContractError("schedule durations must be positive");
    }
    if (dt <= 0.0) dt = schedule.min_duration() / 20.0;

    Trajectory traj;
    traj.system_id = std::move(system_id);
    traj.x0 = x0;
    traj.dt = dt;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    RealVector x = x0;
    double t0 = 0.0;
    for (const auto& seg : schedule.segments) {
        const RealMatrix step = mat_exp(modes[seg.mode], dt);
        const auto whole = static_cast<std::size_t>(seg.duration / dt);
        double local = 0.0;
        for (std::size_t k = 0; k < whole; ++k) {
            x = step * x;
            local = static_cast<double>(k + 1) * dt;
            traj.times.push_back(t0 + local);
            traj.states.push_back(x);
        }
        const double rest = seg.duration - local;
        if (rest > 1e-12) {
            x = mat_exp(modes[seg.mode], rest) * x;
            traj.times.push_back(t0 + seg.duration);
            traj.states.push_back(x);
        }
        t0 += seg.duration;
    }
    return traj;
}

struct InvarianceViolation {
    std::size_t sample = 0;
    double time = 0.0;
    RealVector state;
};

/// Classifies every sample against the cone; samples outside beyond the
/// tolerance band are reported.
inline std::vector<InvarianceViolation> monitor_invariance(const Trajectory& traj, const ConeSpec& c,
                                                           double tol) {
    std::vector<InvarianceViolation> out;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        if (contains(c, traj.states[k], tol) == Containment::Outside) {
            out.push_back({k, traj.times[k], traj.states[k]});
        }
    }
    return out;
}

struct LyapunovMonitor {
    std::vector<double> values;    ///< v . x(t_k)
    double max_increase = 0.0;     ///< largest consecutive increase (0 for <= 1 sample)
    bool nonincreasing = true;     ///< within the relative slack 1e-9 (1 + |value|)
    bool strictly_decreasing = true;
};

inline LyapunovMonitor monitor_lyapunov(const Trajectory& traj, const LinearFunctional& lf) {
    LyapunovMonitor m;
    const RealVector v = to_real(lf.v);
    for (const auto& x : traj.states) {
        if (x.size() != v.size()) throw DimensionError("monitor_lyapunov: functional dimension mismatch");
        m.values.push_back(dot(v, x));
    }
    for (std::size_t k = 0; k + 1 < m.values.size(); ++k) {
        const double inc = m.values[k + 1] - m.values[k];
        m.max_increase = std::max(m.max_increase, inc);
        if (inc > 1e-9 * (1.0 + std::abs(m.values[k]))) m.nonincreasing = false;
        if (!(m.values[k + 1] < m.values[k])) m.strictly_decreasing = false;
    }
    return m;
}

/// CSV export: header t,x1,...,xn, 17 significant digits.
inline void write_csv(std::ostream& os, const Trajectory& traj) {
    os << "t";
    const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    for (std::size_t i = 1; i <= n; ++i) os << ",x" << i;
    os << "\n";
    char buf[64];
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", traj.times[k]);
        os << buf;
        for (const double x : traj.states[k]) {
            std::snprintf(buf, sizeof(buf), "%.17g", x);
            os << "," << buf;
        }
        os << "\n";
    }
}

} // namespace conelyap

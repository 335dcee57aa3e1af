#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "wigsmooth/errors.hpp"
#include "wigsmooth/pulse.hpp"

namespace wigsmooth {

/// Electron returning to the nucleus: birth and return times, kinetic energy
/// at return, 1-based return index.
struct TrajectoryEvent {
    double birth_time = 0.0;
    double return_time = 0.0;
    double return_kinetic_energy = 0.0;
    int return_index = 1;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                            a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    static constexpr double er1 = 71.0 / 57600, er3 = -71.0 / 16695, er4 = 71.0 / 1920,
                            er5 = -17253.0 / 339200, er6 = 22.0 / 525, er7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432.0;
    static constexpr double d3 = 87487479700.0 / 32700410799.0;
    static constexpr double d4 = -10690763975.0 / 1880347072.0;
    static constexpr double d5 = 701980252875.0 / 199316789632.0;
    static constexpr double d6 = -1453857185.0 / 822651844.0;
    static constexpr double d7 = 69997945.0 / 29380423.0;
};

}  // namespace detail

/// Field-driven trajectory x'' = -E(t), x(birth) = v(birth) = 0, integrated
/// with adaptive Dormand-Prince 5(4) and a quartic dense output for
/// continuous (x, v) evaluation.
class Trajectory {
  public:
    Trajectory(double birth_time, const PulseSpec& pulse, double t_max)
        : birth_(birth_time), t_max_(t_max) {
        if (!(t_max > birth_time))
            throw config_error("integrate_trajectory: t_max must exceed the birth time");
        integrate(pulse);
    }

    double birth_time() const { return birth_; }
    double end_time() const { return t_max_; }
    std::size_t step_count() const { return steps_.size(); }

    struct State {
        double x, v;
    };

    State eval(double t) const {
        if (t <= birth_) return {0.0, 0.0};
        // binary search for the step containing t
        std::size_t lo = 0, hi = steps_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (steps_[mid].t0 + steps_[mid].h < t)
                lo = mid + 1;
            else
                hi = mid;
        }
        return steps_[lo].eval(t);
    }

    struct Step {
        double t0, h;
        // dense output u(th) = r1 + th (r2 + (1-th)(r3 + th (r4 + (1-th) r5)))
        std::array<double, 5> rx, rv;

        State eval(double t) const {
            const double th = std::min(std::max((t - t0) / h, 0.0), 1.0);
            const double om = 1.0 - th;
            auto horner = [th, om](const std::array<double, 5>& r) {
                return r[0] + th * (r[1] + om * (r[2] + th * (r[3] + om * r[4])));
            };
            return {horner(rx), horner(rv)};
        }
    };

    const std::vector<Step>& steps() const { return steps_; }

  private:
    void integrate(const PulseSpec& pulse) {
        using D = detail::Dopri5;
        const double atol = 1e-10, rtol = 1e-10;
        double t = birth_, x = 0.0, v = 0.0;
        double h = std::min(0.05 * pulse.period(), t_max_ - t);
        double k1x = v, k1v = -pulse.field(t);

        while (t < t_max_) {
            h = std::min(h, t_max_ - t);
            // stages (x' = v, v' = -E); the stage-2 x slope never enters
            // since a72 = 0 and the force is x-independent
            const double k2v = -pulse.field(t + D::c2 * h);
            const double k3v = -pulse.field(t + D::c3 * h);
            const double k3x = v + h * (D::a31 * k1v + D::a32 * k2v);
            const double k4v = -pulse.field(t + D::c4 * h);
            const double k4x = v + h * (D::a41 * k1v + D::a42 * k2v + D::a43 * k3v);
            const double k5v = -pulse.field(t + D::c5 * h);
            const double k5x = v + h * (D::a51 * k1v + D::a52 * k2v + D::a53 * k3v + D::a54 * k4v);
            const double k6v = -pulse.field(t + h);
            const double k6x =
                v + h * (D::a61 * k1v + D::a62 * k2v + D::a63 * k3v + D::a64 * k4v + D::a65 * k5v);

            const double x1 = x + h * (D::a71 * k1x + D::a73 * k3x + D::a74 * k4x +
                                       D::a75 * k5x + D::a76 * k6x);
            const double v1 = v + h * (D::a71 * k1v + D::a73 * k3v + D::a74 * k4v +
                                       D::a75 * k5v + D::a76 * k6v);
            const double k7v = -pulse.field(t + h);
            const double k7x = v1;

            const double ex = h * (D::er1 * k1x + D::er3 * k3x + D::er4 * k4x + D::er5 * k5x +
                                   D::er6 * k6x + D::er7 * k7x);
            const double ev = h * (D::er1 * k1v + D::er3 * k3v + D::er4 * k4v + D::er5 * k5v +
                                   D::er6 * k6v + D::er7 * k7v);
            const double scx = atol + rtol * std::max(std::fabs(x), std::fabs(x1));
            const double scv = atol + rtol * std::max(std::fabs(v), std::fabs(v1));
            const double err = std::sqrt(0.5 * ((ex / scx) * (ex / scx) + (ev / scv) * (ev / scv)));

            if (err <= 1.0) {
                Step s;
                s.t0 = t;
                s.h = h;
                auto dense = [&](double y0, double y1, double K1, double K3, double K4, double K5,
                                 double K6, double K7, std::array<double, 5>& r) {
                    const double ydiff = y1 - y0;
                    const double bspl = h * K1 - ydiff;
                    r[0] = y0;
                    r[1] = ydiff;
                    r[2] = bspl;
                    r[3] = ydiff - h * K7 - bspl;
                    r[4] = h * (D::d1 * K1 + D::d3 * K3 + D::d4 * K4 + D::d5 * K5 + D::d6 * K6 +
                                D::d7 * K7);
                };
                dense(x, x1, k1x, k3x, k4x, k5x, k6x, k7x, s.rx);
                dense(v, v1, k1v, k3v, k4v, k5v, k6v, k7v, s.rv);
                steps_.push_back(s);
                t += h;
                x = x1;
                v = v1;
                k1x = k7x;
                k1v = k7v;
            }
            const double factor =
                err > 0.0 ? std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2))) : 5.0;
            h *= factor;
        }
    }

    double birth_, t_max_;
    std::vector<Step> steps_;
};

/// Convenience wrapper matching the operation signature.
inline Trajectory integrate_trajectory(double birth_time, const PulseSpec& pulse, double t_max) {
    return Trajectory(birth_time, pulse, t_max);
}

/// All nucleus passages of a trajectory, in time order: strict sign changes
/// of x located by bisection to 1e-8 in time, plus grazing extrema with
/// |x| < 1e-10. At most max_returns events.
inline std::vector<TrajectoryEvent> find_returns(const Trajectory& traj, int max_returns) {
    std::vector<TrajectoryEvent> events;
    if (max_returns <= 0) return events;
    constexpr int kSamples = 24;
    constexpr double kTimeTol = 1e-8;
    constexpr double kGrazeTol = 1e-10;

    auto push_event = [&](double t_root) {
        if (t_root <= traj.birth_time()) return;
        const auto st = traj.eval(t_root);
        if (!events.empty() && t_root - events.back().return_time < 10.0 * kTimeTol) return;
        TrajectoryEvent ev;
        ev.birth_time = traj.birth_time();
        ev.return_time = t_root;
        ev.return_kinetic_energy = 0.5 * st.v * st.v;
        ev.return_index = static_cast<int>(events.size()) + 1;
        events.push_back(ev);
    };

    for (const auto& step : traj.steps()) {
        if (static_cast<int>(events.size()) >= max_returns) break;
        double ts[kSamples + 1], xs[kSamples + 1];
        for (int m = 0; m <= kSamples; ++m) {
            ts[m] = step.t0 + step.h * static_cast<double>(m) / kSamples;
            xs[m] = step.eval(ts[m]).x;
        }
        for (int m = 0; m < kSamples && static_cast<int>(events.size()) < max_returns; ++m) {
            if (xs[m] * xs[m + 1] < 0.0) {
                double lo = ts[m], hi = ts[m + 1];
                double flo = xs[m];
                while (hi - lo > kTimeTol) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = traj.eval(mid).x;
                    if (flo * fm <= 0.0)
                        hi = mid;
                    else {
                        lo = mid;
                        flo = fm;
                    }
                }
                push_event(0.5 * (lo + hi));
            } else if (m > 0 && std::fabs(xs[m]) < std::fabs(xs[m - 1]) &&
                       std::fabs(xs[m]) <= std::fabs(xs[m + 1])) {
                // candidate grazing extremum: refine on v (= x') if it flips
                double lo = ts[m - 1], hi = ts[m + 1];
                double vlo = step.eval(lo).v;
                if (vlo * step.eval(hi).v < 0.0) {
                    while (hi - lo > kTimeTol) {
                        const double mid = 0.5 * (lo + hi);
                        const double vm = traj.eval(mid).v;
                        if (vlo * vm <= 0.0)
                            hi = mid;
                        else {
                            lo = mid;
                            vlo = vm;
                        }
                    }
                    const double t_ext = 0.5 * (lo + hi);
                    if (std::fabs(traj.eval(t_ext).x) < kGrazeTol) push_event(t_ext);
                }
            }
        }
    }
    return events;
}

}  // namespace wigsmooth

#pragma once

#include <vector>

#include "wigsmooth/axis.hpp"
#include "wigsmooth/errors.hpp"
#include "wigsmooth/trajectory.hpp"

namespace wigsmooth {

/// One classical emission event: photon of angular frequency
/// omega = I_p + K_return emitted at the return time.
struct EmissionPoint {
    double t_emit = 0.0;  // a.u.
    double omega = 0.0;   // a.u., always >= ip
    int return_index = 1;
};

/// Classical time-frequency map: for every birth time in the grid, integrate
/// the field-driven trajectory, collect up to max_returns nucleus passages
/// and convert each to an emission point. Trajectories run to
/// (max_returns + 1) optical cycles past birth, capped one cycle past the
/// pulse window.
inline std::vector<EmissionPoint> emission_map(const PulseSpec& pulse, double ip,
                                               const Axis& birth_grid, int max_returns) {
    if (!(ip > 0.0)) throw config_error("emission_map: ionization potential must be positive");
    if (max_returns < 1) throw config_error("emission_map: max_returns must be at least 1");

    std::vector<EmissionPoint> points;
    const double horizon = (static_cast<double>(max_returns) + 1.0) * pulse.period();
    const double hard_cap = pulse.window_end() + pulse.period();
    for (std::size_t b = 0; b < birth_grid.n; ++b) {
        const double birth = birth_grid[b];
        const double t_max = std::min(birth + horizon, hard_cap);
        if (t_max <= birth) continue;
        Trajectory traj(birth, pulse, t_max);
        for (const auto& ev : find_returns(traj, max_returns)) {
            EmissionPoint p;
            p.t_emit = ev.return_time;
            p.omega = ip + ev.return_kinetic_energy;
            p.return_index = ev.return_index;
            points.push_back(p);
        }
    }
    return points;
}

/// Same map rescaled to plotting units: time in optical cycles of the pulse,
/// frequency in harmonic orders.
inline std::vector<EmissionPoint> to_scaled_units(const std::vector<EmissionPoint>& points,
                                                  const PulseSpec& pulse) {
    std::vector<EmissionPoint> out = points;
    for (auto& p : out) {
        p.t_emit = (p.t_emit - pulse.window_start()) / pulse.period();
        p.omega = p.omega / pulse.omega_l;
    }
    return out;
}

}  // namespace wigsmooth

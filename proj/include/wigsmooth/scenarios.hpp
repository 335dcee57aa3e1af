#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "wigsmooth/analysis.hpp"
#include "wigsmooth/contour.hpp"
#include "wigsmooth/emission.hpp"
#include "wigsmooth/io.hpp"
#include "wigsmooth/runconfig.hpp"
#include "wigsmooth/spectrum.hpp"
#include "wigsmooth/stationary.hpp"
#include "wigsmooth/tdse.hpp"
#include "wigsmooth/timefreq.hpp"
#include "wigsmooth/units.hpp"
#include "wigsmooth/wigner.hpp"

namespace wigsmooth::scenarios {

using nlohmann::json;

struct RunOutcome {
    int exit_code = 0;
    std::string error;
    std::vector<std::string> warnings;
    std::string out_dir;
};

namespace detail {

inline unsigned thread_cap() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WIGSMOOTH_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

struct Formats {
    bool csv = true;
    bool binary = false;
    bool svg = true;

    static Formats parse(const std::string& spec) {
        Formats f{false, false, false};
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "csv") f.csv = true;
            else if (item == "bin" || item == "binary") f.binary = true;
            else if (item == "svg") f.svg = true;
            else throw config_error("output.formats: unknown format '" + item + "'");
        }
        if (!f.csv && !f.binary && !f.svg)
            throw config_error("output.formats: no formats selected");
        return f;
    }
};

inline Axis extend_axis(const Axis& ax, double extra_lo, double extra_hi, std::size_t* pad_lo) {
    const double d = ax.spacing();
    const auto nlo = static_cast<std::size_t>(std::ceil(std::max(0.0, extra_lo) / d));
    const auto nhi = static_cast<std::size_t>(std::ceil(std::max(0.0, extra_hi) / d));
    if (pad_lo) *pad_lo = nlo;
    return Axis(ax.min - static_cast<double>(nlo) * d, ax.max + static_cast<double>(nhi) * d,
                ax.n + nlo + nhi);
}

inline DistributionField crop(const DistributionField& f, std::size_t pad1, std::size_t n1,
                              std::size_t pad2, std::size_t n2, const Axis& a1, const Axis& a2) {
    DistributionField out(a1, a2);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) out(i, j) = f(i + pad1, j + pad2);
    return out;
}

inline void write_field_outputs(const std::string& dir, const std::string& stem,
                                const DistributionField& f, const Formats& fmt,
                                const std::vector<double>& levels_cfg) {
    namespace fs = std::filesystem;
    if (fmt.csv)
        io::save_with((fs::path(dir) / (stem + ".csv")).string(),
                      [&](std::ostream& os) { io::write_field_csv(os, f); });
    if (fmt.binary)
        io::save_with((fs::path(dir) / (stem + ".bin")).string(),
                      [&](std::ostream& os) { io::write_field_binary(os, f); }, true);
    const std::vector<double> levels = levels_cfg.empty() ? default_levels(f) : levels_cfg;
    const ContourSet cs = contour_extract(f, levels);
    if (fmt.csv)
        io::save_with((fs::path(dir) / (stem + "_contours.csv")).string(),
                      [&](std::ostream& os) { io::write_contours_csv(os, cs); });
    if (fmt.svg)
        io::save_with((fs::path(dir) / (stem + "_contours.svg")).string(), [&](std::ostream& os) {
            io::write_contours_svg(os, cs, f.axis1(), f.axis2());
        });
}

inline void write_manifest(const std::string& dir, const json& manifest) {
    io::save_text((std::filesystem::path(dir) / "manifest.json").string(),
                  manifest.dump(2) + "\n");
}

inline void write_run_info(const std::string& dir) {
    // timestamps live outside the manifest so identical configs produce
    // byte-identical manifests
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    io::save_text((std::filesystem::path(dir) / "run_info.txt").string(),
                  std::string("completed_utc ") + buf + "\n");
}

inline json config_echo(const RunConfig& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg.entries()) j[k] = v;
    return j;
}

struct PairSummary {
    double sigma1 = 0.0, sigma2 = 0.0;
    Regime regime = Regime::physical;
    double min_value = 0.0, mass = 0.0;
    std::size_t island_count = 0;
    std::string route;
};

inline json pair_json(const PairSummary& s) {
    return json{{"sigma1", s.sigma1},
                {"sigma2", s.sigma2},
                {"regime", to_string(s.regime)},
                {"min_value", s.min_value},
                {"mass", s.mass},
                {"island_count", s.island_count},
                {"route", s.route}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// square well scenario
// ---------------------------------------------------------------------------

struct WellContext {
    SquareWellSpec spec;
    Axis q_axis, p_axis;        // requested output grids
    Axis q_internal, p_internal;
    std::size_t q_pad = 0, p_pad = 0;
    WavefunctionGrid wf;
    DistributionField wigner_internal;
    double sigma_q_max = 0.0;
};

inline WellContext make_well_context(const RunConfig& cfg) {
    WellContext ctx;
    const double a = cfg.get_double("well.a", 10.0);
    const double mass = cfg.get_double("well.mass", 1.0);
    const double hbar = cfg.get_double("well.hbar", 1.0);
    const int n = static_cast<int>(cfg.get_int("well.n", 5));
    ctx.spec = SquareWellSpec(a, mass, hbar, n);

    ctx.q_axis = Axis(cfg.get_double("grid.q_min", -15.0), cfg.get_double("grid.q_max", 15.0),
                      static_cast<std::size_t>(cfg.get_int("grid.q_n", 601)));
    ctx.p_axis = Axis(cfg.get_double("grid.p_min", -2.0), cfg.get_double("grid.p_max", 2.0),
                      static_cast<std::size_t>(cfg.get_int("grid.p_n", 161)));

    bool dedup = false;
    double sq_max = 0.0, sp_max = 0.0;
    for (const auto& w : cfg.smoothing_pairs(hbar, &dedup)) {
        sq_max = std::max(sq_max, w.sigma1);
        sp_max = std::max(sp_max, w.sigma2);
    }
    ctx.sigma_q_max = sq_max;

    // internal grid: cover the well plus the widest kernel reach, and extend
    // p toward (but inside) the lag-Nyquist bound
    const double q_need = a + 7.5 * sq_max + 1.0;
    ctx.q_internal = detail::extend_axis(ctx.q_axis, std::max(0.0, q_need - std::fabs(ctx.q_axis.min)),
                                         std::max(0.0, q_need - ctx.q_axis.max), &ctx.q_pad);
    if (ctx.q_internal.min > -a || ctx.q_internal.max < a)
        throw config_error("well: q grid must span the well [-a, a]");

    const double dx = ctx.q_internal.spacing();
    const double p_cap = 0.98 * M_PI * hbar / (2.0 * dx);
    const double p_need = 7.5 * sp_max;
    const double lo = std::min(p_need, p_cap - std::fabs(ctx.p_axis.min));
    const double hi = std::min(p_need, p_cap - ctx.p_axis.max);
    ctx.p_internal = detail::extend_axis(ctx.p_axis, lo, hi, &ctx.p_pad);

    ctx.wf = square_well_wavefunction(ctx.spec, ctx.q_internal);
    ctx.wigner_internal = wigner_transform(ctx.wf, ctx.p_internal, hbar);
    return ctx;
}

/// Smoothed field on the internal grid: nonnegative Husimi route for
/// physical width pairs, plain separable convolution in the unphysical
/// regime (where no nonnegative representation exists).
inline DistributionField smoothed_well_field(const WellContext& ctx, const SmoothingWidths& w,
                                             std::string* route) {
    if (classify_regime(w) == Regime::physical) {
        if (route) *route = "husimi";
        return smoothed_wigner_via_husimi(ctx.wf, w, ctx.q_internal, ctx.p_internal,
                                          ctx.spec.hbar);
    }
    if (route) *route = "plain";
    return gaussian_smooth(ctx.wigner_internal, w);
}

// ---------------------------------------------------------------------------
// potential step scenario
// ---------------------------------------------------------------------------

struct StepContext {
    StepPotentialSpec spec;
    Axis wf_axis;
    Axis q_axis, p_axis;  // display grids (q snapped onto the wf grid)
    WavefunctionGrid wf;
    DistributionField wigner_display;
};

inline StepContext make_step_context(const RunConfig& cfg) {
    StepContext ctx;
    const double v0 = cfg.get_double("step.v0", 1.0);
    const double e = cfg.get_double("step.energy", 0.5);
    const double mass = cfg.get_double("step.mass", 1.0);
    const double hbar = cfg.get_double("step.hbar", 1.0);
    ctx.spec = StepPotentialSpec(v0, e, mass, hbar);
    if (e >= v0) throw config_error("step: scenario covers E < V0 only");

    const double k = ctx.spec.incident_wavenumber();
    const double kappa_e = ctx.spec.evanescent_rate();
    // 21 wavelengths of oscillatory region; evanescent side truncated where
    // the tail reaches ~1e-11 so the reported tunneling window stays clean
    const double dx = 0.05;
    const double lo = -std::ceil(21.0 * 2.0 * M_PI / k);
    const double hi = std::ceil(26.0 / kappa_e);
    const auto n = static_cast<std::size_t>(std::llround((hi - lo) / dx)) + 1;
    ctx.wf_axis = Axis(lo, hi, n);
    ctx.wf = step_wavefunction(ctx.spec, ctx.wf_axis);

    const double q_min = cfg.get_double("grid.q_min", -15.0);
    const double q_max = cfg.get_double("grid.q_max", 10.0);
    const auto q_n = static_cast<std::size_t>(cfg.get_int("grid.q_n", 251));
    // snap display q onto the wave-function grid
    const double dxa = ctx.wf_axis.spacing();
    const std::size_t i0 = ctx.wf_axis.nearest(q_min);
    const std::size_t i1 = ctx.wf_axis.nearest(q_max);
    if (i1 <= i0) throw config_error("step: empty display q range");
    const std::size_t stride = std::max<std::size_t>(1, (i1 - i0) / (q_n - 1));
    const std::size_t count = (i1 - i0) / stride + 1;
    ctx.q_axis = Axis(ctx.wf_axis[i0], ctx.wf_axis[i0 + (count - 1) * stride], count);
    (void)dxa;

    ctx.p_axis = Axis(cfg.get_double("grid.p_min", -3.0), cfg.get_double("grid.p_max", 3.0),
                      static_cast<std::size_t>(cfg.get_int("grid.p_n", 241)));
    ctx.wigner_display =
        wigner_transform_on(ctx.wf, ctx.q_axis, ctx.p_axis, hbar, LagWindow::truncated);
    return ctx;
}

inline DistributionField smoothed_step_field(const StepContext& ctx, const SmoothingWidths& w,
                                             std::string* route) {
    if (classify_regime(w) == Regime::physical) {
        if (route) *route = "husimi";
        return smoothed_wigner_via_husimi(ctx.wf, w, ctx.q_axis, ctx.p_axis, ctx.spec.hbar);
    }
    if (route) *route = "plain";
    return gaussian_smooth(ctx.wigner_display, w);
}

// ---------------------------------------------------------------------------
// pulse assembly shared by the HHG scenarios
// ---------------------------------------------------------------------------

struct PulseSetup {
    PulseSpec pulse;
    json manifest;
};

inline PulseSetup make_pulse(const RunConfig& cfg) {
    PulseSetup out;
    json& m = out.manifest;
    double omega, e0;
    if (cfg.has("pulse.omega")) {
        omega = cfg.get_double("pulse.omega", 0.0);
        m["omega_au"] = omega;
    } else {
        const double nm = cfg.get_double("pulse.wavelength_nm", 800.0);
        omega = units::omega_au_from_wavelength_nm(nm);
        m["wavelength_nm"] = nm;
        m["omega_au"] = omega;
    }
    if (cfg.has("pulse.e0")) {
        e0 = cfg.get_double("pulse.e0", 0.0);
        m["e0_au"] = e0;
    } else {
        const double intensity = cfg.get_double("pulse.intensity_wcm2", 3e14);
        e0 = units::field_au_from_intensity_Wcm2(intensity);
        m["intensity_wcm2"] = intensity;
        m["e0_au"] = e0;
    }

    const std::string envelope = cfg.get_string("pulse.envelope", "flat_top");
    const double cycles = cfg.get_double("pulse.cycles", 8.0);
    const double ramp = cfg.get_double("pulse.ramp_cycles", 1.0);
    const double period = 2.0 * M_PI / omega;
    if (envelope == "flat_top") {
        const double duration = cycles * period;
        out.pulse = PulseSpec(e0, omega, duration, 0.5 * duration,
                              PulseSpec::Envelope::flat_top, ramp);
        m["envelope"] = "flat_top";
        m["cycles"] = cycles;
        m["ramp_cycles"] = ramp;
    } else if (envelope == "gaussian") {
        const double fwhm_fs = cfg.get_double("pulse.fwhm_fs", 160.0);
        const double fwhm = units::time_au_from_fs(fwhm_fs);
        out.pulse = PulseSpec(e0, omega, fwhm, 0.0, PulseSpec::Envelope::gaussian);
        m["envelope"] = "gaussian";
        m["fwhm_fs"] = fwhm_fs;
        m["fwhm_au"] = fwhm;
    } else {
        throw config_error("pulse.envelope: expected flat_top or gaussian");
    }
    m["period_au"] = period;
    m["ponderomotive_energy_au"] = out.pulse.ponderomotive_energy();
    return out;
}

// ---------------------------------------------------------------------------
// scenario runners
// ---------------------------------------------------------------------------

inline RunOutcome run_well(const RunConfig& cfg, const std::string& out_dir,
                           const detail::Formats& fmt) {
    WellContext ctx = make_well_context(cfg);
    json manifest;
    manifest["config"] = detail::config_echo(cfg);
    manifest["scenario"] = "well";
    manifest["well"] = {{"a", ctx.spec.half_width}, {"mass", ctx.spec.mass},
                        {"hbar", ctx.spec.hbar},    {"n", ctx.spec.n},
                        {"energy", ctx.spec.energy()}};
    manifest["grids"] = {
        {"q", {{"min", ctx.q_axis.min}, {"max", ctx.q_axis.max}, {"n", ctx.q_axis.n}}},
        {"p", {{"min", ctx.p_axis.min}, {"max", ctx.p_axis.max}, {"n", ctx.p_axis.n}}},
        {"q_internal",
         {{"min", ctx.q_internal.min}, {"max", ctx.q_internal.max}, {"n", ctx.q_internal.n}}},
        {"p_internal",
         {{"min", ctx.p_internal.min}, {"max", ctx.p_internal.max}, {"n", ctx.p_internal.n}}}};

    auto raw = detail::crop(ctx.wigner_internal, ctx.q_pad, ctx.q_axis.n, ctx.p_pad,
                            ctx.p_axis.n, ctx.q_axis, ctx.p_axis);
    detail::write_field_outputs(out_dir, "wigner", raw, fmt, cfg.levels());
    const auto mom = moments(ctx.wigner_internal);
    manifest["wigner"] = {{"min", raw.min_value()},
                          {"max", raw.max_value()},
                          {"delta_q", mom.delta1},
                          {"delta_p", mom.delta2},
                          {"mass", mom.total_mass},
                          {"island_count",
                           count_closed_contours(ctx.wigner_internal,
                                                 0.1 * ctx.wigner_internal.max_value())}};

    bool dedup = false;
    auto pairs = cfg.smoothing_pairs(ctx.spec.hbar, &dedup);
    manifest["smoothing_deduplicated"] = dedup;
    json jpairs = json::array();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        detail::PairSummary s;
        s.sigma1 = pairs[k].sigma1;
        s.sigma2 = pairs[k].sigma2;
        s.regime = classify_regime(pairs[k]);
        auto g = smoothed_well_field(ctx, pairs[k], &s.route);
        s.min_value = g.min_value();
        s.mass = total_mass(g);
        s.island_count = count_closed_contours(g, 0.1 * g.max_value());
        auto out = detail::crop(g, ctx.q_pad, ctx.q_axis.n, ctx.p_pad, ctx.p_axis.n, ctx.q_axis,
                                ctx.p_axis);
        detail::write_field_outputs(out_dir, "smoothed_" + std::to_string(k), out, fmt,
                                    cfg.levels());
        jpairs.push_back(detail::pair_json(s));
    }
    manifest["smoothed"] = jpairs;
    detail::write_manifest(out_dir, manifest);
    detail::write_run_info(out_dir);
    return {0, "", {}, out_dir};
}

inline RunOutcome run_step(const RunConfig& cfg, const std::string& out_dir,
                           const detail::Formats& fmt) {
    StepContext ctx = make_step_context(cfg);
    json manifest;
    manifest["config"] = detail::config_echo(cfg);
    manifest["scenario"] = "step";
    manifest["step"] = {{"v0", ctx.spec.v0},
                        {"energy", ctx.spec.energy},
                        {"mass", ctx.spec.mass},
                        {"hbar", ctx.spec.hbar},
                        {"incident_wavenumber", ctx.spec.incident_wavenumber()},
                        {"evanescent_rate", ctx.spec.evanescent_rate()},
                        {"reflection_magnitude", std::abs(step_reflection_amplitude(ctx.spec))},
                        {"transmission_density", std::norm(step_transmission_amplitude(ctx.spec))}};
    manifest["grids"] = {
        {"wf", {{"min", ctx.wf_axis.min}, {"max", ctx.wf_axis.max}, {"n", ctx.wf_axis.n}}},
        {"q", {{"min", ctx.q_axis.min}, {"max", ctx.q_axis.max}, {"n", ctx.q_axis.n}}},
        {"p", {{"min", ctx.p_axis.min}, {"max", ctx.p_axis.max}, {"n", ctx.p_axis.n}}}};

    detail::write_field_outputs(out_dir, "wigner", ctx.wigner_display, fmt, cfg.levels());
    manifest["wigner"] = {{"min", ctx.wigner_display.min_value()},
                          {"max", ctx.wigner_display.max_value()},
                          {"window", "truncated overlap (scattering state)"}};

    bool dedup = false;
    auto pairs = cfg.smoothing_pairs(ctx.spec.hbar, &dedup);
    manifest["smoothing_deduplicated"] = dedup;
    json jpairs = json::array();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        detail::PairSummary s;
        s.sigma1 = pairs[k].sigma1;
        s.sigma2 = pairs[k].sigma2;
        s.regime = classify_regime(pairs[k]);
        auto g = smoothed_step_field(ctx, pairs[k], &s.route);
        s.min_value = g.min_value();
        s.mass = total_mass(g);
        s.island_count = count_closed_contours(g, 0.1 * g.max_value());
        detail::write_field_outputs(out_dir, "smoothed_" + std::to_string(k), g, fmt,
                                    cfg.levels());
        json jp = detail::pair_json(s);
        // how much of the smoothed distribution tunnels past the step
        double barrier_mass = 0.0, mass_all = 0.0;
        auto mq = marginal(g, FieldAxis::axis1);
        for (std::size_t i = 0; i < ctx.q_axis.n; ++i) {
            mass_all += mq[i];
            if (ctx.q_axis[i] > 0.0) barrier_mass += mq[i];
        }
        jp["mass_fraction_beyond_step"] = mass_all != 0.0 ? barrier_mass / mass_all : 0.0;
        jpairs.push_back(jp);
    }
    manifest["smoothed"] = jpairs;
    detail::write_manifest(out_dir, manifest);
    detail::write_run_info(out_dir);
    return {0, "", {}, out_dir};
}

inline RunOutcome run_hhg_classical(const RunConfig& cfg, const std::string& out_dir,
                                    const detail::Formats& fmt) {
    auto setup = make_pulse(cfg);
    const PulseSpec& pulse = setup.pulse;
    json manifest;
    manifest["config"] = detail::config_echo(cfg);
    manifest["scenario"] = "hhg_classical";
    manifest["pulse"] = setup.manifest;

    double ip;
    if (cfg.has("classical.ip")) {
        ip = cfg.get_double("classical.ip", 0.0);
    } else {
        const double beta = cfg.get_double("tdse.beta", std::sqrt(0.67));
        ip = -ground_state(SoftCoreSpec(beta), Axis(-100.0, 100.0, 2001)).energy;
        manifest["classical"]["beta"] = beta;
    }
    manifest["classical"]["ip_au"] = ip;

    const double period = pulse.period();
    const double ramp = cfg.get_double("pulse.ramp_cycles", 1.0);
    const double cycles = cfg.get_double("pulse.cycles", 8.0);
    const double birth_lo_cyc = cfg.get_double("classical.birth_cycles", -1.0) >= 0.0
                                    ? cfg.get_double("classical.birth_cycles", 0.0)
                                    : ramp + 0.5;
    const double birth_hi_cyc = std::max(birth_lo_cyc + 1.0, cycles - ramp - 0.5);
    const auto per_cycle = static_cast<std::size_t>(cfg.get_int("classical.births_per_cycle", 2000));
    const int max_returns = static_cast<int>(cfg.get_int("classical.max_returns", 3));

    const double t0 = pulse.window_start();
    const auto n_birth =
        static_cast<std::size_t>((birth_hi_cyc - birth_lo_cyc) * static_cast<double>(per_cycle));
    Axis births(t0 + birth_lo_cyc * period, t0 + birth_hi_cyc * period, std::max<std::size_t>(n_birth, 2));
    manifest["classical"]["births_per_cycle"] = per_cycle;
    manifest["classical"]["birth_window_cycles"] = {birth_lo_cyc, birth_hi_cyc};
    manifest["classical"]["max_returns"] = max_returns;

    auto points = emission_map(pulse, ip, births, max_returns);
    auto scaled = to_scaled_units(points, pulse);

    const double up = pulse.ponderomotive_energy();
    double max_first = 0.0;
    std::size_t multi = 0;
    for (const auto& p : points) {
        if (p.return_index == 1)
            max_first = std::max(max_first, p.omega - ip);
        else
            ++multi;
    }
    manifest["classical"]["points"] = points.size();
    manifest["classical"]["multiple_recollision_points"] = multi;
    manifest["classical"]["max_first_return_over_up"] = up > 0.0 ? max_first / up : 0.0;
    manifest["classical"]["cutoff_prediction_au"] = ip + 3.17 * up;
    manifest["classical"]["cutoff_prediction_orders"] = (ip + 3.17 * up) / pulse.omega_l;

    namespace fs = std::filesystem;
    if (fmt.csv) {
        io::save_with((fs::path(out_dir) / "emission_au.csv").string(),
                      [&](std::ostream& os) { io::write_emission_csv(os, points); });
        io::save_with((fs::path(out_dir) / "emission_scaled.csv").string(),
                      [&](std::ostream& os) { io::write_emission_csv(os, scaled); });
    }
    if (fmt.svg) {
        const double w_hi = (ip + 3.6 * up) / pulse.omega_l;
        io::save_with((fs::path(out_dir) / "emission_map.svg").string(), [&](std::ostream& os) {
            io::write_emission_svg(os, scaled, 0.0, cycles, ip / pulse.omega_l * 0.9, w_hi);
        });
    }
    detail::write_manifest(out_dir, manifest);
    detail::write_run_info(out_dir);
    return {0, "", {}, out_dir};
}

inline RunOutcome run_hhg_quantum(const RunConfig& cfg, const std::string& out_dir,
                                  const detail::Formats& fmt) {
    auto setup = make_pulse(cfg);
    const PulseSpec& pulse = setup.pulse;
    json manifest;
    manifest["config"] = detail::config_echo(cfg);
    manifest["scenario"] = "hhg_quantum";
    manifest["pulse"] = setup.manifest;

    const double beta = cfg.get_double("tdse.beta", std::sqrt(0.67));
    const double span = cfg.get_double("tdse.span", 400.0);
    const auto n = static_cast<std::size_t>(cfg.get_int("tdse.n", 2048));
    const double dt = cfg.get_double("tdse.dt", 0.05);
    const double absorber = cfg.get_double("tdse.absorber", 0.1 * span);
    const auto stride = static_cast<std::size_t>(cfg.get_int("tdse.record_stride", 2));

    Axis axis(-0.5 * span, 0.5 * span, n);
    SoftCoreSpec core(beta);
    auto gs = ground_state(core, axis);
    const double ip = -gs.energy;
    manifest["tdse"] = {{"beta", beta},
                        {"ground_energy_au", gs.energy},
                        {"ip_au", ip},
                        {"span", span},
                        {"n", n},
                        {"dx", axis.spacing()},
                        {"dt", dt},
                        {"absorber_width", absorber},
                        {"record_stride", stride}};

    double t_start, t_end;
    if (pulse.envelope == PulseSpec::Envelope::flat_top) {
        t_start = pulse.window_start();
        t_end = pulse.window_end();
    } else {
        t_start = pulse.t_center - 1.5 * pulse.fwhm;
        t_end = pulse.t_center + 1.5 * pulse.fwhm;
    }
    PropagationConfig pcfg(axis, dt, t_start, t_end, absorber, stride);
    RunOutcome outcome{0, "", pcfg.warnings(), out_dir};
    manifest["warnings"] = outcome.warnings;

    auto rec = propagate(gs.psi, SampledPotential::from(core, axis), pulse, pcfg);
    manifest["propagation"] = {{"t_start", t_start},
                               {"t_end", t_end},
                               {"steps", static_cast<std::size_t>(std::llround((t_end - t_start) / dt))},
                               {"final_norm", rec.norm_history.back()},
                               {"records", rec.times.size()}};

    namespace fs = std::filesystem;
    if (fmt.csv)
        io::save_with((fs::path(out_dir) / "dipole.csv").string(),
                      [&](std::ostream& os) { io::write_series_csv(os, rec.times, rec.ddot_d); });
    if (fmt.binary)
        io::save_with((fs::path(out_dir) / "dipole.bin").string(),
                      [&](std::ostream& os) { io::write_series_binary(os, rec.times, rec.ddot_d); },
                      true);

    // emission spectrum and cutoff
    Signal sig = Signal::from_dipole(rec);
    auto spec = harmonic_spectrum(sig.values, sig.stride());
    const double up = pulse.ponderomotive_energy();
    const double predicted = (ip + 3.17 * up) / pulse.omega_l;
    const double detected = detect_cutoff_order(spec, pulse.omega_l);
    manifest["spectrum"] = {{"up_au", up},
                            {"cutoff_predicted_orders", predicted},
                            {"cutoff_detected_orders", detected}};
    if (fmt.csv)
        io::save_with((fs::path(out_dir) / "spectrum.csv").string(), [&](std::ostream& os) {
            os << "omega,power,order\n";
            for (std::size_t k = 0; k < spec.omega.size(); ++k)
                os << io::detail::fmt_double(spec.omega[k]) << ','
                   << io::detail::fmt_double(spec.power[k]) << ','
                   << io::detail::fmt_double(spec.omega[k] / pulse.omega_l) << '\n';
        });

    // time-frequency grids: columns snapped onto the record
    const auto t_columns = static_cast<std::size_t>(cfg.get_int("tf.t_columns", 257));
    const std::size_t col_stride = std::max<std::size_t>(1, sig.times.size() / t_columns);
    std::vector<double> cols;
    for (std::size_t i = 0; i < sig.times.size(); i += col_stride) cols.push_back(sig.times[i]);
    Axis t_axis(cols.front(), cols.back(), cols.size());
    const double w_orders = cfg.get_double("tf.omega_max_orders", 65.0);
    const auto w_n = static_cast<std::size_t>(cfg.get_int("tf.omega_n", 384));
    Axis w_axis(pulse.omega_l, w_orders * pulse.omega_l, w_n);
    manifest["tf_grids"] = {
        {"t", {{"min", t_axis.min}, {"max", t_axis.max}, {"n", t_axis.n}}},
        {"omega", {{"min", w_axis.min}, {"max", w_axis.max}, {"n", w_axis.n}}}};

    if (cfg.get_bool("tf.raw_wv", false)) {
        auto wv = wigner_ville(sig, t_axis, w_axis);
        detail::write_field_outputs(out_dir, "wigner_ville_raw", wv, fmt, cfg.levels());
        manifest["raw_wigner_ville"] = {{"min", wv.min_value()}, {"max", wv.max_value()}};
    }

    bool dedup = false;
    auto pairs = cfg.smoothing_pairs(1.0, &dedup);
    if (pairs.empty()) pairs.emplace_back(2.236, 0.224, 1.0);
    manifest["smoothing_deduplicated"] = dedup;
    json jpairs = json::array();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        detail::PairSummary s;
        s.sigma1 = pairs[k].sigma1;
        s.sigma2 = pairs[k].sigma2;
        s.regime = classify_regime(pairs[k]);
        DistributionField g = classify_regime(pairs[k]) == Regime::physical
                                  ? smoothed_wv_via_husimi(sig, pairs[k], t_axis, w_axis)
                                  : gaussian_smooth(wigner_ville(sig, t_axis, w_axis), pairs[k]);
        s.route = classify_regime(pairs[k]) == Regime::physical ? "husimi" : "plain";
        s.min_value = g.min_value();
        s.mass = total_mass(g);
        s.island_count = count_closed_contours(g, 0.1 * g.max_value());
        detail::write_field_outputs(out_dir, "tf_smoothed_" + std::to_string(k), g, fmt,
                                    cfg.levels());
        // same values with plot-convention axes: optical cycles vs harmonic
        // orders
        const Axis t_cycles((t_axis.min - pulse.window_start()) / pulse.period(),
                            (t_axis.max - pulse.window_start()) / pulse.period(), t_axis.n);
        const Axis w_orders_axis(w_axis.min / pulse.omega_l, w_axis.max / pulse.omega_l,
                                 w_axis.n);
        detail::write_field_outputs(out_dir, "tf_smoothed_" + std::to_string(k) + "_scaled",
                                    DistributionField(t_cycles, w_orders_axis, g.values()), fmt,
                                    cfg.levels());
        json jp = detail::pair_json(s);

        // low-order emission-time profile: band average over orders 2..10
        std::vector<double> profile(t_axis.n, 0.0);
        for (std::size_t i = 0; i < t_axis.n; ++i) {
            int cnt = 0;
            for (std::size_t j = 0; j < w_axis.n; ++j)
                if (w_axis[j] >= 2.0 * pulse.omega_l && w_axis[j] <= 10.0 * pulse.omega_l) {
                    profile[i] += g(i, j);
                    ++cnt;
                }
            if (cnt) profile[i] /= cnt;
        }
        json peaks = json::array();
        for (std::size_t i = 1; i + 1 < t_axis.n; ++i)
            if (profile[i] > profile[i - 1] && profile[i] > profile[i + 1])
                peaks.push_back((t_axis[i] - pulse.window_start()) / pulse.period());
        jp["low_order_peak_times_cycles"] = peaks;
        jpairs.push_back(jp);
    }
    manifest["tf_smoothed"] = jpairs;
    detail::write_manifest(out_dir, manifest);
    detail::write_run_info(out_dir);
    return outcome;
}

// ---------------------------------------------------------------------------
// stored-field operations
// ---------------------------------------------------------------------------

inline DistributionField load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("cannot open field file: " + path);
    char magic[16] = {};
    is.read(magic, 16);
    is.seekg(0);
    if (std::memcmp(magic, io::kFieldMagic, 16) == 0) return io::read_field_binary(is);
    return io::read_field_csv(is);
}

inline RunOutcome run_smooth_file(const std::string& in_path, double sigma1, double sigma2,
                                  double planck, const std::string& out_dir,
                                  const detail::Formats& fmt) {
    std::filesystem::create_directories(out_dir);
    auto field = load_field(in_path);
    SmoothingWidths w(sigma1, sigma2, planck);
    auto g = gaussian_smooth(field, w);
    json manifest;
    manifest["scenario"] = "smooth";
    manifest["input"] = in_path;
    manifest["sigma1"] = sigma1;
    manifest["sigma2"] = sigma2;
    manifest["planck_scale"] = planck;
    manifest["regime"] = to_string(classify_regime(w));
    manifest["min_value"] = g.min_value();
    manifest["mass"] = total_mass(g);
    detail::write_field_outputs(out_dir, "smoothed", g, fmt, {});
    detail::write_manifest(out_dir, manifest);
    detail::write_run_info(out_dir);
    return {0, "", {}, out_dir};
}

inline RunOutcome run_contour_file(const std::string& in_path, std::vector<double> levels,
                                   const std::string& out_dir, const detail::Formats& fmt) {
    std::filesystem::create_directories(out_dir);
    auto field = load_field(in_path);
    if (levels.empty()) levels = default_levels(field);
    auto cs = contour_extract(field, levels);
    json manifest;
    manifest["scenario"] = "contour";
    manifest["input"] = in_path;
    manifest["levels"] = levels;
    std::size_t closed = 0, open = 0;
    for (const auto& per_level : cs.polylines)
        for (const auto& line : per_level) (polyline_closed(line) ? closed : open) += 1;
    manifest["closed_polylines"] = closed;
    manifest["open_polylines"] = open;
    namespace fs = std::filesystem;
    if (fmt.csv)
        io::save_with((fs::path(out_dir) / "contours.csv").string(),
                      [&](std::ostream& os) { io::write_contours_csv(os, cs); });
    if (fmt.svg)
        io::save_with((fs::path(out_dir) / "contours.svg").string(), [&](std::ostream& os) {
            io::write_contours_svg(os, cs, field.axis1(), field.axis2());
        });
    detail::write_manifest(out_dir, manifest);
    detail::write_run_info(out_dir);
    return {0, "", {}, out_dir};
}

// ---------------------------------------------------------------------------
// dispatch and sweep
// ---------------------------------------------------------------------------

inline RunOutcome run(const RunConfig& cfg) {
    try {
        const std::string scenario = cfg.get_string("run.scenario", "");
        if (scenario.empty()) throw config_error("run.scenario is required");
        const std::string out_dir = cfg.get_string("output.dir", "wigsmooth_out");
        std::filesystem::create_directories(out_dir);
        const auto fmt = detail::Formats::parse(cfg.get_string("output.formats", "csv,svg"));
        if (scenario == "well") return run_well(cfg, out_dir, fmt);
        if (scenario == "step") return run_step(cfg, out_dir, fmt);
        if (scenario == "hhg_classical") return run_hhg_classical(cfg, out_dir, fmt);
        if (scenario == "hhg_quantum") return run_hhg_quantum(cfg, out_dir, fmt);
        throw config_error("unknown scenario: " + scenario);
    } catch (const config_error& e) {
        return {2, e.what(), {}, ""};
    } catch (const numerical_error& e) {
        return {3, e.what(), {}, ""};
    } catch (const std::exception& e) {
        return {3, e.what(), {}, ""};
    }
}

/// One output set per width pair, computed as parallel jobs over at most
/// WIGSMOOTH_THREADS workers, plus a summary CSV.
inline RunOutcome sweep(const RunConfig& cfg) {
    try {
        const std::string scenario = cfg.get_string("run.scenario", "");
        const std::string out_dir = cfg.get_string("output.dir", "wigsmooth_sweep");
        std::filesystem::create_directories(out_dir);
        const auto fmt = detail::Formats::parse(cfg.get_string("output.formats", "csv,svg"));

        const double hbar = scenario == "well"   ? cfg.get_double("well.hbar", 1.0)
                            : scenario == "step" ? cfg.get_double("step.hbar", 1.0)
                                                 : 1.0;
        bool dedup = false;
        auto pairs = cfg.smoothing_pairs(hbar, &dedup);
        if (pairs.empty()) throw config_error("sweep: at least one smoothing pair is required");

        std::vector<detail::PairSummary> summaries(pairs.size());
        auto run_pair_jobs = [&](auto&& job) {
            const unsigned workers =
                std::min<unsigned>(detail::thread_cap(), static_cast<unsigned>(pairs.size()));
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> threads;
            std::vector<std::string> errors(pairs.size());
            for (unsigned w = 0; w < workers; ++w)
                threads.emplace_back([&]() {
                    for (;;) {
                        const std::size_t k = next.fetch_add(1);
                        if (k >= pairs.size()) return;
                        try {
                            job(k);
                        } catch (const std::exception& e) {
                            errors[k] = e.what();
                        }
                    }
                });
            for (auto& t : threads) t.join();
            for (const auto& e : errors)
                if (!e.empty()) throw numerical_error("sweep job failed: " + e);
        };

        if (scenario == "well") {
            WellContext ctx = make_well_context(cfg);
            run_pair_jobs([&](std::size_t k) {
                char sub[32];
                std::snprintf(sub, sizeof sub, "pair_%03zu", k);
                const std::string dir = (std::filesystem::path(out_dir) / sub).string();
                std::filesystem::create_directories(dir);
                detail::PairSummary s;
                s.sigma1 = pairs[k].sigma1;
                s.sigma2 = pairs[k].sigma2;
                s.regime = classify_regime(pairs[k]);
                auto g = smoothed_well_field(ctx, pairs[k], &s.route);
                s.min_value = g.min_value();
                s.mass = total_mass(g);
                s.island_count = count_closed_contours(g, 0.1 * g.max_value());
                auto out = detail::crop(g, ctx.q_pad, ctx.q_axis.n, ctx.p_pad, ctx.p_axis.n,
                                        ctx.q_axis, ctx.p_axis);
                detail::write_field_outputs(dir, "smoothed", out, fmt, cfg.levels());
                summaries[k] = s;
            });
        } else if (scenario == "step") {
            StepContext ctx = make_step_context(cfg);
            run_pair_jobs([&](std::size_t k) {
                char sub[32];
                std::snprintf(sub, sizeof sub, "pair_%03zu", k);
                const std::string dir = (std::filesystem::path(out_dir) / sub).string();
                std::filesystem::create_directories(dir);
                detail::PairSummary s;
                s.sigma1 = pairs[k].sigma1;
                s.sigma2 = pairs[k].sigma2;
                s.regime = classify_regime(pairs[k]);
                auto g = smoothed_step_field(ctx, pairs[k], &s.route);
                s.min_value = g.min_value();
                s.mass = total_mass(g);
                s.island_count = count_closed_contours(g, 0.1 * g.max_value());
                detail::write_field_outputs(dir, "smoothed", g, fmt, cfg.levels());
                summaries[k] = s;
            });
        } else {
            throw config_error("sweep: supported scenarios are well and step");
        }

        std::ostringstream summary;
        summary << "sigma1,sigma2,regime,min_value,island_count,mass\n";
        for (const auto& s : summaries)
            summary << io::detail::fmt_double(s.sigma1) << ',' << io::detail::fmt_double(s.sigma2)
                    << ',' << to_string(s.regime) << ',' << io::detail::fmt_double(s.min_value)
                    << ',' << s.island_count << ',' << io::detail::fmt_double(s.mass) << '\n';
        io::save_text((std::filesystem::path(out_dir) / "summary.csv").string(), summary.str());

        json manifest;
        manifest["config"] = detail::config_echo(cfg);
        manifest["scenario"] = "sweep:" + scenario;
        manifest["smoothing_deduplicated"] = dedup;
        json jpairs = json::array();
        for (const auto& s : summaries) jpairs.push_back(detail::pair_json(s));
        manifest["pairs"] = jpairs;
        detail::write_manifest(out_dir, manifest);
        detail::write_run_info(out_dir);
        return {0, "", {}, out_dir};
    } catch (const config_error& e) {
        return {2, e.what(), {}, ""};
    } catch (const numerical_error& e) {
        return {3, e.what(), {}, ""};
    }
}

}  // namespace wigsmooth::scenarios

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wigsmooth/scenarios.hpp"

namespace {

using wigsmooth::RunConfig;

// Collects flag -> config-key assignments; file values load first, flags
// override them afterwards.
struct FlagMap {
    CLI::App* sub;
    std::vector<std::pair<std::string, std::shared_ptr<std::string>>> entries;
    std::shared_ptr<std::string> config_path = std::make_shared<std::string>();
    std::shared_ptr<std::string> sigma1 = std::make_shared<std::string>();
    std::shared_ptr<std::string> sigma2 = std::make_shared<std::string>();

    explicit FlagMap(CLI::App* s) : sub(s) {
        sub->add_option("--config", *config_path, "key=value config file with [section] headers");
    }

    void add(const std::string& flag, const std::string& key, const std::string& desc) {
        auto holder = std::make_shared<std::string>();
        sub->add_option(flag, *holder, desc);
        entries.emplace_back(key, holder);
    }

    void add_sigma_pair(const std::string& flag1, const std::string& flag2) {
        sub->add_option(flag1, *sigma1, "smoothing width along axis 1");
        sub->add_option(flag2, *sigma2, "smoothing width along axis 2");
    }

    RunConfig build(const std::string& scenario) const {
        RunConfig cfg;
        if (!config_path->empty()) cfg = RunConfig::from_file(*config_path);
        if (!scenario.empty()) cfg.set("run.scenario", scenario);
        for (const auto& [key, holder] : entries)
            if (!holder->empty()) cfg.set(key, *holder);
        if (!sigma1->empty() || !sigma2->empty()) {
            if (sigma1->empty() || sigma2->empty())
                throw wigsmooth::config_error("both smoothing widths are required");
            std::string pairs = *sigma1 + ":" + *sigma2;
            if (cfg.has("smoothing.pairs"))
                pairs = cfg.get_string("smoothing.pairs", "") + "," + pairs;
            cfg.set("smoothing.pairs", pairs);
        }
        return cfg;
    }
};

void add_grid_flags(FlagMap& fm) {
    fm.add("--qmin", "grid.q_min", "output grid: axis1 minimum");
    fm.add("--qmax", "grid.q_max", "output grid: axis1 maximum");
    fm.add("--qn", "grid.q_n", "output grid: axis1 sample count");
    fm.add("--pmin", "grid.p_min", "output grid: axis2 minimum");
    fm.add("--pmax", "grid.p_max", "output grid: axis2 maximum");
    fm.add("--pn", "grid.p_n", "output grid: axis2 sample count");
}

void add_output_flags(FlagMap& fm) {
    fm.add("--out", "output.dir", "output directory");
    fm.add("--formats", "output.formats", "comma list of csv,bin,svg");
    fm.add("--levels", "output.levels", "comma list of contour levels");
    fm.add("--widths", "smoothing.pairs", "smoothing pairs sigma1:sigma2[,sigma1:sigma2...]");
}

void add_pulse_flags(FlagMap& fm) {
    fm.add("--wavelength-nm", "pulse.wavelength_nm", "carrier wavelength in nm");
    fm.add("--intensity", "pulse.intensity_wcm2", "peak intensity in W/cm^2");
    fm.add("--e0", "pulse.e0", "peak field in a.u. (overrides intensity)");
    fm.add("--omega", "pulse.omega", "carrier frequency in a.u. (overrides wavelength)");
    fm.add("--cycles", "pulse.cycles", "flat-top duration in optical cycles");
    fm.add("--ramp-cycles", "pulse.ramp_cycles", "sin^2 ramp length in cycles");
    fm.add("--envelope", "pulse.envelope", "flat_top or gaussian");
    fm.add("--fwhm-fs", "pulse.fwhm_fs", "gaussian intensity FWHM in fs (full-scale run)");
}

int report(const wigsmooth::scenarios::RunOutcome& outcome) {
    for (const auto& w : outcome.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    if (outcome.exit_code != 0)
        std::fprintf(stderr, "error: %s\n", outcome.error.c_str());
    else
        std::fprintf(stderr, "artifacts written to %s\n", outcome.out_dir.c_str());
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phase-space and time-frequency distributions with Gaussian smoothing"};
    app.require_subcommand(1);

    auto* well = app.add_subcommand("well", "infinite square well eigenstate");
    FlagMap well_flags(well);
    well_flags.add("--n", "well.n", "eigenstate index (1-based)");
    well_flags.add("--a", "well.a", "half width of the well");
    well_flags.add("--mass", "well.mass", "particle mass");
    well_flags.add("--hbar", "well.hbar", "hbar");
    well_flags.add_sigma_pair("--sigma-q", "--sigma-p");
    add_grid_flags(well_flags);
    add_output_flags(well_flags);

    auto* step = app.add_subcommand("step", "potential step scattering state");
    FlagMap step_flags(step);
    step_flags.add("--v0", "step.v0", "step height");
    step_flags.add("--energy", "step.energy", "incident energy (E < V0)");
    step_flags.add("--mass", "step.mass", "particle mass");
    step_flags.add("--hbar", "step.hbar", "hbar");
    step_flags.add_sigma_pair("--sigma-q", "--sigma-p");
    add_grid_flags(step_flags);
    add_output_flags(step_flags);

    auto* hhgc = app.add_subcommand("hhg-classical", "three-step model emission map");
    FlagMap hhgc_flags(hhgc);
    add_pulse_flags(hhgc_flags);
    hhgc_flags.add("--ip", "classical.ip", "ionization potential in a.u.");
    hhgc_flags.add("--beta", "tdse.beta", "soft-core beta (sets ip when --ip absent)");
    hhgc_flags.add("--births-per-cycle", "classical.births_per_cycle", "birth-time density");
    hhgc_flags.add("--max-returns", "classical.max_returns", "recollision count per electron");
    hhgc_flags.add("--birth-cycles", "classical.birth_cycles", "first birth time in cycles");
    add_output_flags(hhgc_flags);

    auto* hhgq = app.add_subcommand("hhg-quantum", "TDSE dipole record and t-omega analysis");
    FlagMap hhgq_flags(hhgq);
    add_pulse_flags(hhgq_flags);
    hhgq_flags.add("--beta", "tdse.beta", "soft-core beta");
    hhgq_flags.add("--span", "tdse.span", "grid span in a.u.");
    hhgq_flags.add("--grid-n", "tdse.n", "grid point count");
    hhgq_flags.add("--dt", "tdse.dt", "time step in a.u.");
    hhgq_flags.add("--absorber", "tdse.absorber", "absorber width per side");
    hhgq_flags.add("--stride", "tdse.record_stride", "dipole record stride");
    hhgq_flags.add("--t-columns", "tf.t_columns", "time columns of the t-omega fields");
    hhgq_flags.add("--omega-orders", "tf.omega_max_orders", "top of the omega axis in orders");
    hhgq_flags.add("--omega-n", "tf.omega_n", "omega sample count");
    hhgq_flags.add("--raw-wv", "tf.raw_wv", "also export the raw Wigner-Ville field (true/false)");
    hhgq_flags.add_sigma_pair("--sigma-t", "--sigma-omega");
    add_output_flags(hhgq_flags);

    auto* smooth = app.add_subcommand("smooth", "apply widths to a stored field");
    std::string sm_in, sm_out = "wigsmooth_out", sm_formats = "csv,svg";
    double sm_s1 = 0.0, sm_s2 = 0.0, sm_planck = 1.0;
    smooth->add_option("--in", sm_in, "field file (csv or binary)")->required();
    smooth->add_option("--sigma-1", sm_s1, "width along axis1")->required();
    smooth->add_option("--sigma-2", sm_s2, "width along axis2")->required();
    smooth->add_option("--planck", sm_planck, "conjugate scale (hbar or 1)");
    smooth->add_option("--out", sm_out, "output directory");
    smooth->add_option("--formats", sm_formats, "comma list of csv,bin,svg");

    auto* contour = app.add_subcommand("contour", "extract contours from a stored field");
    std::string ct_in, ct_out = "wigsmooth_out", ct_formats = "csv,svg", ct_levels;
    contour->add_option("--in", ct_in, "field file (csv or binary)")->required();
    contour->add_option("--levels", ct_levels, "comma list of levels (default 10%..90%)");
    contour->add_option("--out", ct_out, "output directory");
    contour->add_option("--formats", ct_formats, "comma list of csv,bin,svg");

    auto* sweep = app.add_subcommand("sweep", "one output set per smoothing pair");
    FlagMap sweep_flags(sweep);
    sweep_flags.add("--scenario", "run.scenario", "well or step");
    sweep_flags.add("--n", "well.n", "eigenstate index");
    sweep_flags.add("--a", "well.a", "well half width");
    sweep_flags.add("--v0", "step.v0", "step height");
    sweep_flags.add("--energy", "step.energy", "incident energy");
    add_grid_flags(sweep_flags);
    add_output_flags(sweep_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (well->parsed()) return report(wigsmooth::scenarios::run(well_flags.build("well")));
        if (step->parsed()) return report(wigsmooth::scenarios::run(step_flags.build("step")));
        if (hhgc->parsed())
            return report(wigsmooth::scenarios::run(hhgc_flags.build("hhg_classical")));
        if (hhgq->parsed())
            return report(wigsmooth::scenarios::run(hhgq_flags.build("hhg_quantum")));
        if (smooth->parsed()) {
            std::filesystem::create_directories(sm_out);
            return report(wigsmooth::scenarios::run_smooth_file(
                sm_in, sm_s1, sm_s2, sm_planck, sm_out,
                wigsmooth::scenarios::detail::Formats::parse(sm_formats)));
        }
        if (contour->parsed()) {
            std::filesystem::create_directories(ct_out);
            std::vector<double> levels;
            if (!ct_levels.empty()) {
                std::stringstream ss(ct_levels);
                std::string item;
                while (std::getline(ss, item, ',')) levels.push_back(std::stod(item));
            }
            return report(wigsmooth::scenarios::run_contour_file(
                ct_in, levels, ct_out,
                wigsmooth::scenarios::detail::Formats::parse(ct_formats)));
        }
        if (sweep->parsed()) return report(wigsmooth::scenarios::sweep(sweep_flags.build("")));
    } catch (const wigsmooth::config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const wigsmooth::numerical_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}

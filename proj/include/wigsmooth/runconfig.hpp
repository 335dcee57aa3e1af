#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wigsmooth/errors.hpp"
#include "wigsmooth/smoothing.hpp"

namespace wigsmooth {

/// Flat key=value configuration with [section] headers. Keys are stored as
/// "section.key"; unknown keys are rejected against the scenario whitelists.
/// CLI flags land in the same store and override file values.
class RunConfig {
  public:
    static const std::set<std::string>& known_keys() {
        static const std::set<std::string> keys = {
            "run.scenario",
            // square well
            "well.n", "well.a", "well.mass", "well.hbar",
            // potential step
            "step.v0", "step.energy", "step.mass", "step.hbar",
            // phase-space grids
            "grid.q_min", "grid.q_max", "grid.q_n", "grid.p_min", "grid.p_max", "grid.p_n",
            // pulse
            "pulse.wavelength_nm", "pulse.intensity_wcm2", "pulse.e0", "pulse.omega",
            "pulse.cycles", "pulse.ramp_cycles", "pulse.envelope", "pulse.fwhm_fs",
            // tdse
            "tdse.beta", "tdse.span", "tdse.n", "tdse.dt", "tdse.absorber",
            "tdse.record_stride",
            // classical three-step model
            "classical.ip", "classical.births_per_cycle", "classical.max_returns",
            "classical.birth_cycles",
            // time-frequency grids
            "tf.t_columns", "tf.omega_max_orders", "tf.omega_n", "tf.raw_wv",
            // smoothing widths
            "smoothing.pairs",
            // output
            "output.dir", "output.formats", "output.levels",
        };
        return keys;
    }

    void set(const std::string& key, const std::string& value) {
        if (known_keys().count(key) == 0)
            throw config_error("unknown configuration key: " + key);
        values_[key] = value;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw config_error("key " + key + ": expected a number, got '" + it->second + "'");
        }
    }

    long get_int(const std::string& key, long fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            std::size_t pos = 0;
            const long v = std::stol(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw config_error("key " + key + ": expected an integer, got '" + it->second + "'");
        }
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        if (it->second == "true" || it->second == "1") return true;
        if (it->second == "false" || it->second == "0") return false;
        throw config_error("key " + key + ": expected true/false");
    }

    /// Smoothing pairs "s1:s2[,s1:s2...]"; duplicates are dropped and
    /// reported through dedup_note.
    std::vector<SmoothingWidths> smoothing_pairs(double planck_scale, bool* deduped) const {
        if (deduped) *deduped = false;
        auto it = values_.find("smoothing.pairs");
        std::vector<SmoothingWidths> out;
        if (it == values_.end()) return out;
        std::stringstream ss(it->second);
        std::string item;
        std::vector<std::pair<double, double>> seen;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw config_error("smoothing.pairs: expected sigma1:sigma2, got '" + item + "'");
            double s1, s2;
            try {
                s1 = std::stod(item.substr(0, colon));
                s2 = std::stod(item.substr(colon + 1));
            } catch (const std::exception&) {
                throw config_error("smoothing.pairs: bad number in '" + item + "'");
            }
            bool dup = false;
            for (const auto& [a, b] : seen)
                if (a == s1 && b == s2) dup = true;
            if (dup) {
                if (deduped) *deduped = true;
                continue;
            }
            seen.emplace_back(s1, s2);
            out.emplace_back(s1, s2, planck_scale);
        }
        return out;
    }

    std::vector<double> levels() const {
        auto it = values_.find("output.levels");
        std::vector<double> out;
        if (it == values_.end()) return out;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
        return out;
    }

    const std::map<std::string, std::string>& entries() const { return values_; }

    static RunConfig from_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw config_error("cannot open config file: " + path);
        return from_stream(is);
    }

    static RunConfig from_stream(std::istream& is) {
        RunConfig cfg;
        std::string line, section;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw config_error("config line " + std::to_string(lineno) +
                                       ": unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error("config line " + std::to_string(lineno) +
                                   ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (section.empty())
                throw config_error("config line " + std::to_string(lineno) +
                                   ": key outside any [section]");
            cfg.set(section + "." + key, value);
        }
        return cfg;
    }

  private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    std::map<std::string, std::string> values_;
};

}  // namespace wigsmooth

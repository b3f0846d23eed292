#ifndef GSCR_CONFIG_HPP
#define GSCR_CONFIG_HPP

// Flat key-value experiment configuration with [section] headers. alpha and
// rho accept equal-length lists and are zipped into one noise configuration
// per entry; everything else is scalar.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gscr/noise.hpp"
#include "gscr/pla.hpp"

namespace gscr {

struct ExperimentConfig {
    std::vector<NoiseParams> noise_configs{{1.2, 1.0, 1.0, 0.2}, {1.8, 1.0, 1.0, 0.8}};
    std::optional<FilterSpec> filter;  // optional passband description
    std::vector<double> gsnr_grid_db{-10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    std::string layout = "qam16";  // qpsk | qam16 | custom-file
    std::string custom_layout_path;
    PlaConfig pla_s2{};
    PlaConfig pla_s3{};
    double shaping_mu = 0.0;
    int shaping_i_max = 500;
    double shaping_eps_stop = 1e-4;
    double shaping_eps_w = 1e-3;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    bool emit_svg = true;

    std::size_t modulation_order() const {
        if (layout == "qpsk") return 4;
        if (layout == "qam16") return 16;
        if (layout == "custom-file") return 0;  // determined by the file
        throw std::invalid_argument("config: unknown layout tag: " + layout);
    }

    void validate() const {
        if (noise_configs.empty()) throw std::invalid_argument("config: no noise configuration");
        for (const auto& p : noise_configs) p.validate();
        if (filter) filter->validate();
        if (gsnr_grid_db.empty()) throw std::invalid_argument("config: empty gsnr grid");
        for (double g : gsnr_grid_db)
            if (!std::isfinite(g)) throw std::invalid_argument("config: non-finite gsnr value");
        if (layout != "qpsk" && layout != "qam16" && layout != "custom-file")
            throw std::invalid_argument("config: unknown layout tag: " + layout);
        if (layout == "custom-file" && custom_layout_path.empty())
            throw std::invalid_argument("config: custom-file layout needs layout_file");
    }
};

namespace detail {

inline std::vector<double> parse_number_list(const std::string& text, const std::string& key,
                                             int line_no) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(text);
    while (is >> item) {
        // allow comma separated lists as well
        for (char& ch : item)
            if (ch == ',') ch = ' ';
        std::istringstream inner(item);
        double v;
        while (inner >> v) out.push_back(v);
    }
    if (out.empty())
        throw std::invalid_argument("config line " + std::to_string(line_no) + ": key '" + key +
                                    "' has no numeric values");
    return out;
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    cfg.noise_configs.clear();
    std::vector<double> alphas, rhos, gamma_gs, gamma_ss;
    std::string line, section;
    int line_no = 0;
    bool saw_grid = false;

    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": malformed section header");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            s = (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        trim(key);
        trim(value);
        const std::string full = section.empty() ? key : section + "." + key;

        auto num = [&]() { return detail::parse_number_list(value, full, line_no).front(); };
        auto nums = [&]() { return detail::parse_number_list(value, full, line_no); };

        if (full == "noise.alpha") alphas = nums();
        else if (full == "noise.rho") rhos = nums();
        else if (full == "noise.gamma_g") gamma_gs = nums();
        else if (full == "noise.gamma_s") gamma_ss = nums();
        else if (full == "filter.coeffs") {
            if (!cfg.filter) cfg.filter.emplace();
            cfg.filter->coeffs = nums();
        } else if (full == "filter.f_c") {
            if (!cfg.filter) cfg.filter.emplace();
            cfg.filter->f_c = static_cast<long>(num());
        } else if (full == "filter.f_s") {
            if (!cfg.filter) cfg.filter.emplace();
            cfg.filter->f_s = static_cast<long>(num());
        } else if (full == "filter.passband_b") {
            if (!cfg.filter) cfg.filter.emplace();
            cfg.filter->passband_B = num();
        }
        else if (full == "experiment.gsnr_db") { cfg.gsnr_grid_db = nums(); saw_grid = true; }
        else if (full == "experiment.modulation") cfg.layout = value;
        else if (full == "experiment.layout_file") cfg.custom_layout_path = value;
        else if (full == "pla.k_main_s2") cfg.pla_s2.k_main = static_cast<int>(num());
        else if (full == "pla.k_tail_s2") cfg.pla_s2.k_tail = static_cast<int>(num());
        else if (full == "pla.k_main_s3") cfg.pla_s3.k_main = static_cast<int>(num());
        else if (full == "pla.k_tail_s3") cfg.pla_s3.k_tail = static_cast<int>(num());
        else if (full == "pla.range_mult") {
            cfg.pla_s2.range_mult = cfg.pla_s3.range_mult = num();
        } else if (full == "pla.tail_ratio") {
            cfg.pla_s2.tail_ratio = cfg.pla_s3.tail_ratio = num();
        } else if (full == "shaping.mu") cfg.shaping_mu = num();
        else if (full == "shaping.i_max") cfg.shaping_i_max = static_cast<int>(num());
        else if (full == "shaping.eps_stop") cfg.shaping_eps_stop = num();
        else if (full == "shaping.eps_w") cfg.shaping_eps_w = num();
        else if (full == "shaping.seed") cfg.seed = static_cast<std::uint64_t>(num());
        else if (full == "output.dir") cfg.output_dir = value;
        else if (full == "output.svg") cfg.emit_svg = (value == "true" || value == "1");
        else
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + full + "'");
    }

    if (alphas.empty()) {
        cfg.noise_configs = {{1.2, 1.0, 1.0, 0.2}, {1.8, 1.0, 1.0, 0.8}};
    } else {
        if (rhos.size() != alphas.size())
            throw std::invalid_argument("config: alpha and rho lists must have equal length");
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            NoiseParams p;
            p.alpha = alphas[i];
            p.rho = rhos[i];
            p.gamma_g = gamma_gs.empty() ? 1.0 : gamma_gs[std::min(i, gamma_gs.size() - 1)];
            p.gamma_s = gamma_ss.empty() ? 1.0 : gamma_ss[std::min(i, gamma_ss.size() - 1)];
            cfg.noise_configs.push_back(p);
        }
    }
    (void)saw_grid;
    cfg.validate();
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open: " + path);
    return parse_config(in);
}

}  // namespace gscr

#endif  // GSCR_CONFIG_HPP

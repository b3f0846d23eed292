#ifndef GSCR_FIXTURES_HPP
#define GSCR_FIXTURES_HPP

// Plain-text fixture tables holding oracle values for the S-term integrals
// and the Bhattacharyya parameter. Rows are formatted with a fixed
// 12-significant-digit scientific format so regeneration is byte-identical;
// an FNV-1a checksum line guards against accidental edits.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gscr {

struct FixtureRow {
    double alpha = 0, rho = 0, gamma_g = 0, gamma_s = 0, ds_norm = 0;
    double i1 = 0, i2 = 0, i3 = 0, z = 0, err_est = 0;
};

inline std::string format_sig12(double v) {
    if (v == 0.0) v = 0.0;  // normalize negative zero
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

namespace detail {

inline std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fixture_row_text(const FixtureRow& r) {
    std::ostringstream os;
    os << format_sig12(r.alpha) << ' ' << format_sig12(r.rho) << ' ' << format_sig12(r.gamma_g)
       << ' ' << format_sig12(r.gamma_s) << ' ' << format_sig12(r.ds_norm) << ' '
       << format_sig12(r.i1) << ' ' << format_sig12(r.i2) << ' ' << format_sig12(r.i3) << ' '
       << format_sig12(r.z) << ' ' << format_sig12(r.err_est);
    return os.str();
}

}  // namespace detail

inline void write_fixture_table(const std::string& path, const std::vector<FixtureRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("fixtures: cannot open for writing: " + path);
    out << "# gscr s-integral fixture table\n";
    out << "# columns: alpha rho gamma_g gamma_s ds_norm i1 i2 i3 z err_est\n";
    std::string body;
    for (const auto& r : rows) {
        const std::string line = detail::fixture_row_text(r);
        out << line << '\n';
        body += line;
        body += '\n';
    }
    char csum[32];
    std::snprintf(csum, sizeof(csum), "%016llx",
                  static_cast<unsigned long long>(detail::fnv1a(body)));
    out << "# fnv1a " << csum << '\n';
}

inline std::vector<FixtureRow> load_fixture_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("fixtures: cannot open: " + path);
    std::vector<FixtureRow> rows;
    std::string line, body, stored_sum;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# fnv1a ", 0) == 0) {
            stored_sum = line.substr(8);
            continue;
        }
        if (line[0] == '#') continue;
        std::istringstream is(line);
        FixtureRow r;
        if (!(is >> r.alpha >> r.rho >> r.gamma_g >> r.gamma_s >> r.ds_norm >> r.i1 >> r.i2 >>
              r.i3 >> r.z >> r.err_est))
            throw std::runtime_error("fixtures: malformed row in " + path);
        rows.push_back(r);
        // checksum is over the canonical re-rendered row text
        body += detail::fixture_row_text(r);
        body += '\n';
    }
    if (stored_sum.empty()) throw std::runtime_error("fixtures: missing checksum in " + path);
    char csum[32];
    std::snprintf(csum, sizeof(csum), "%016llx",
                  static_cast<unsigned long long>(detail::fnv1a(body)));
    if (stored_sum != csum)
        throw std::runtime_error("fixtures: checksum mismatch in " + path +
                                 " (file edited or corrupted)");
    return rows;
}

}  // namespace gscr

#endif  // GSCR_FIXTURES_HPP

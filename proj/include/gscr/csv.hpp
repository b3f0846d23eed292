#ifndef GSCR_CSV_HPP
#define GSCR_CSV_HPP

// Schema-stable CSV output: fixed column order, header row, and the same
// 12-significant-digit formatting as the fixture tables so reruns are
// byte-identical.

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gscr/fixtures.hpp"

namespace gscr {

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns)
        : out_(path), n_cols_(columns.size()) {
        if (!out_) throw std::runtime_error("csv: cannot open for writing: " + path);
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        if (values.size() != n_cols_) throw std::runtime_error("csv: column count mismatch");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << format_sig12(values[i]);
        }
        out_ << '\n';
    }

    // mixed cells for tag columns; numeric cells should already be formatted
    void row_text(const std::vector<std::string>& cells) {
        if (cells.size() != n_cols_) throw std::runtime_error("csv: column count mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
    std::size_t n_cols_;
};

}  // namespace gscr

#endif  // GSCR_CSV_HPP

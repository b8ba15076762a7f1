#pragma once

#include <cstdio>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace majorana::io {

/// Deterministic numeric formatting shared by every CSV emitter:
/// C locale, '.' decimal point, shortest round-trippable %.12g.
inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string num(int v) { return std::to_string(v); }

/// Comma-separated writer with a header row and '\n' line ends.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
        row(header);
    }

    void row(std::span<const std::string> cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<std::string>& cells) {
        row(std::span<const std::string>(cells));
    }

    void close() { out_.close(); }

  private:
    std::ofstream out_;
};

}  // namespace majorana::io

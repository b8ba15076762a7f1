#pragma once

#include "majorana/topology.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace majorana::cli {

/// One scan cell may emit any number of CSV rows (a plain invariant emits
/// one, a spectrum sweep emits one per eigenvalue).
using CellFn = std::function<std::vector<std::vector<std::string>>(
    std::size_t index, std::span<const double> axis_values)>;

struct ScanOptions {
    int threads = 0;                  // 0: hardware concurrency
    std::string partial_path;         // flush/resume file; empty disables
    std::size_t cell_budget = static_cast<std::size_t>(-1);   // new cells this run
    std::function<bool(std::span<const double>)> skip;        // flagged cells
};

struct ScanTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::vector<std::string>>> cells;   // per cell, ordered
    std::vector<std::string> errors;                            // per cell
    std::vector<uint8_t> flagged;                               // per cell
    bool complete = true;

    std::size_t cell_count() const { return cells.size(); }
};

/// Evaluates fn over the row-major product grid of axes on a work queue
/// of threads. Per-cell failures land in the error column and never
/// abort the scan. With a partial path, finished cells are flushed as
/// they complete and a rerun resumes from them; outputs are ordered by
/// cell index, so an interrupted-then-resumed scan matches a clean one.
ScanTable run_scan(std::span<const topology::AxisSpec> axes,
                   const std::vector<std::string>& value_header, const CellFn& fn,
                   const ScanOptions& opt);

/// Writes the table as axes columns + value columns + flagged + error.
void write_scan_csv(const std::string& path, std::span<const topology::AxisSpec> axes,
                    const ScanTable& table);

}  // namespace majorana::cli

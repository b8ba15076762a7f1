#include "majorana/scan.hpp"

#include "majorana/csvio.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace majorana::cli {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string join_csv(std::span<const std::string> cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    return out;
}

struct CellRecord {
    std::vector<std::vector<std::string>> rows;
    std::string error;
    bool flagged = false;
    bool done = false;
};

// Partial-file line formats:
//   <idx>,row,<cells...>
//   <idx>,error,<message>
//   <idx>,flagged
//   <idx>,done
void load_partial(const std::string& path, std::vector<CellRecord>& cells) {
    std::ifstream in(path);
    if (!in) return;
    std::vector<CellRecord> staged(cells.size());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < 2) continue;
        std::size_t idx = 0;
        try {
            idx = std::stoull(fields[0]);
        } catch (...) {
            continue;
        }
        if (idx >= cells.size()) continue;
        const std::string& kind = fields[1];
        if (kind == "row") {
            staged[idx].rows.emplace_back(fields.begin() + 2, fields.end());
        } else if (kind == "error") {
            staged[idx].error = fields.size() > 2 ? fields[2] : "error";
        } else if (kind == "flagged") {
            staged[idx].flagged = true;
        } else if (kind == "done") {
            staged[idx].done = true;
        }
    }
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (staged[i].done) cells[i] = std::move(staged[i]);   // only complete cells survive
}

}  // namespace

ScanTable run_scan(std::span<const topology::AxisSpec> axes,
                   const std::vector<std::string>& value_header, const CellFn& fn,
                   const ScanOptions& opt) {
    std::size_t total = 1;
    for (const auto& ax : axes) total *= static_cast<std::size_t>(ax.steps);

    std::vector<CellRecord> cells(total);
    if (!opt.partial_path.empty()) load_partial(opt.partial_path, cells);

    std::ofstream partial;
    std::mutex partial_mutex;
    if (!opt.partial_path.empty())
        partial.open(opt.partial_path, std::ios::app);

    const auto axis_values = [&](std::size_t idx) {
        std::vector<double> vals(axes.size());
        std::size_t rest = idx;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const auto steps = static_cast<std::size_t>(axes[a].steps);
            vals[a] = axes[a].value(static_cast<int>(rest % steps));
            rest /= steps;
        }
        return vals;
    };

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> budget_left{opt.cell_budget};
    const int nthreads =
        opt.threads > 0 ? opt.threads
                        : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    const auto flush_cell = [&](std::size_t idx, const CellRecord& rec) {
        if (!partial.is_open()) return;
        std::ostringstream buf;
        for (const auto& r : rec.rows) buf << idx << ",row," << join_csv(r) << '\n';
        if (!rec.error.empty()) buf << idx << ",error," << rec.error << '\n';
        if (rec.flagged) buf << idx << ",flagged\n";
        buf << idx << ",done\n";
        const std::lock_guard<std::mutex> lock(partial_mutex);
        partial << buf.str();
        partial.flush();
    };

    bool budget_hit = false;
    const auto worker = [&] {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            CellRecord& rec = cells[idx];
            if (rec.done) continue;
            // spend one unit of budget per fresh cell
            std::size_t left = budget_left.load();
            do {
                if (left == 0) {
                    budget_hit = true;
                    return;
                }
            } while (!budget_left.compare_exchange_weak(left, left - 1));

            const auto vals = axis_values(idx);
            if (opt.skip && opt.skip(vals)) {
                rec.flagged = true;
            } else {
                try {
                    rec.rows = fn(idx, vals);
                } catch (const std::exception& e) {
                    rec.rows.clear();
                    rec.error = e.what();
                }
            }
            rec.done = true;
            flush_cell(idx, rec);
        }
    };

    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    ScanTable table;
    table.header = value_header;
    table.complete = true;
    table.cells.reserve(total);
    for (auto& rec : cells) {
        if (!rec.done) table.complete = false;
        table.cells.push_back(std::move(rec.rows));
        table.errors.push_back(rec.error);
        table.flagged.push_back(rec.flagged ? 1 : 0);
    }
    (void)budget_hit;
    if (table.complete && !opt.partial_path.empty()) {
        partial.close();
        std::error_code ec;
        std::filesystem::remove(opt.partial_path, ec);
    }
    return table;
}

void write_scan_csv(const std::string& path, std::span<const topology::AxisSpec> axes,
                    const ScanTable& table) {
    std::vector<std::string> header;
    for (const auto& ax : axes) header.push_back(ax.name);
    header.insert(header.end(), table.header.begin(), table.header.end());
    header.push_back("flagged");
    header.push_back("error");
    io::CsvWriter csv(path, header);

    for (std::size_t idx = 0; idx < table.cell_count(); ++idx) {
        std::vector<double> vals(axes.size());
        std::size_t rest = idx;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const auto steps = static_cast<std::size_t>(axes[a].steps);
            vals[a] = axes[a].value(static_cast<int>(rest % steps));
            rest /= steps;
        }
        std::vector<std::string> prefix;
        for (const double v : vals) prefix.push_back(io::num(v));

        const auto& rows = table.cells[idx];
        if (rows.empty()) {
            std::vector<std::string> line = prefix;
            for (std::size_t i = 0; i < table.header.size(); ++i) line.push_back("");
            line.push_back(table.flagged[idx] ? "1" : "0");
            line.push_back(table.errors[idx]);
            csv.row(line);
            continue;
        }
        for (const auto& row : rows) {
            std::vector<std::string> line = prefix;
            line.insert(line.end(), row.begin(), row.end());
            line.push_back("0");
            line.push_back("");
            csv.row(line);
        }
    }
}

}  // namespace majorana::cli

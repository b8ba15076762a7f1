#include "majorana/config.hpp"

#include <fstream>
#include <set>

namespace majorana::cli {

namespace {

const std::set<std::string> known_tasks = {
    "spectrum",          "winding",           "dipole",
    "boundary",          "phase-diagram",     "floquet-spectrum",
    "floquet-invariants", "floquet-boundaries", "oracle-check",
    "couplings"};

topology::AxisSpec parse_axis(const nlohmann::json& j) {
    topology::AxisSpec ax;
    ax.name = j.at("name").get<std::string>();
    ax.lo = j.at("min").get<double>();
    ax.hi = j.at("max").get<double>();
    ax.steps = j.at("steps").get<int>();
    if (ax.steps < 1) throw config_error("axis steps must be at least 1");
    if (ax.steps > 1 && !(ax.hi > ax.lo)) throw config_error("axis range is empty");
    return ax;
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig cfg;
    cfg.raw = j;
    try {
        cfg.task = j.at("task").get<std::string>();
        if (!known_tasks.count(cfg.task)) throw config_error("unknown task: " + cfg.task);

        if (j.contains("model")) {
            model::ChainSpec s;
            const auto& m = j.at("model");
            s.n = m.value("n", 200);
            if (m.contains("j")) {
                s.j1 = s.j2 = m.at("j").get<double>();
            } else {
                s.j1 = m.value("j1", 1.0);
                s.j2 = m.value("j2", 1.0);
            }
            s.b = m.value("b", 0.0);
            const auto bc = m.value("boundary", std::string("open"));
            if (bc == "open") s.boundary = model::Boundary::open;
            else if (bc == "periodic") s.boundary = model::Boundary::periodic;
            else throw config_error("boundary must be 'open' or 'periodic'");
            s.validate();
            cfg.chain = s;
        }

        if (j.contains("drive")) {
            const auto& d = j.at("drive");
            const auto type = d.at("type").get<std::string>();
            if (type == "step") {
                cfg.drive.type = DriveConfig::Type::step;
                cfg.drive.step = {d.at("u1").get<double>(), d.at("u2").get<double>(),
                                  d.at("t1").get<double>(), d.at("t2").get<double>()};
                cfg.drive.step.validate();
            } else if (type == "sine") {
                cfg.drive.type = DriveConfig::Type::sine;
                cfg.drive.sine = {d.at("b0").get<double>(), d.at("omega").get<double>()};
                cfg.drive.sine.validate();
            } else {
                throw config_error("drive type must be 'step' or 'sine'");
            }
        }

        if (j.contains("scan")) {
            for (const auto& ja : j.at("scan").at("axes")) cfg.axes.push_back(parse_axis(ja));
            if (cfg.axes.size() > 2) throw config_error("at most two scan axes");
        }

        cfg.out_dir = j.value("out", std::string("."));
        cfg.kgrid = j.value("kgrid", 1001);
        if (cfg.kgrid < 16) throw config_error("kgrid too small");
        cfg.threads = j.value("threads", 0);
        cfg.options = j.value("options", nlohmann::json::object());
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error(std::string("invalid config: ") + e.what());
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

std::string config_hash(const nlohmann::json& j) {
    const std::string dump = j.dump();
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace majorana::cli

#include "vcfem/config.hpp"

#include <cmath>
#include <fstream>

namespace vcfem {

void SimConfig::validate() const {
    if (!(width > 0.0 && height > 0.0)) throw ConfigError("domain extents must be positive");
    grid().validate();
    material.validate();
    friction.validate();
    tol.validate();
    if (boundary.segments.empty()) throw ConfigError("boundary specification is empty");
    if (snapshots.policy == SnapshotSpec::Policy::EveryM && snapshots.every < 1)
        throw ConfigError("snapshot stride must be >= 1");
}

namespace {

BoundarySegment seg_h(double y, double lo, double hi, BoundaryTag tag) {
    return {true, y, lo, hi, tag};
}
BoundarySegment seg_v(double x, double lo, double hi, BoundaryTag tag) {
    return {false, x, lo, hi, tag};
}

}  // namespace

SimConfig experiment_config(int id, double h, double k) {
    SimConfig cfg;
    cfg.width = 2.0;
    cfg.height = 1.0;
    cfg.h = h;
    cfg.N = static_cast<int>(std::round(cfg.T / k));
    cfg.experiment = id;

    // clamped left edge in all three experiments
    const auto gamma1 = seg_v(0.0, 0.0, 1.0, BoundaryTag::Gamma1);
    const auto top = seg_h(1.0, 0.0, 2.0, BoundaryTag::Gamma2);
    const auto right = seg_v(2.0, 0.0, 1.0, BoundaryTag::Gamma2);

    switch (id) {
        case 1:
            cfg.boundary.segments = {gamma1, top, right,
                                     seg_h(0.0, 0.0, 2.0, BoundaryTag::Gamma2)};
            cfg.load.f0 = {0.0, -0.2};
            cfg.load.f2 = {0.0, 0.0};
            break;
        case 2:
            cfg.boundary.segments = {gamma1, top, right,
                                     seg_h(0.0, 0.0, 1.0, BoundaryTag::Gamma3),
                                     seg_h(0.0, 1.0, 2.0, BoundaryTag::Gamma2)};
            cfg.load.f0 = {0.0, -0.8};
            cfg.load.f2 = {0.0, 0.0};
            break;
        case 3:
            cfg.boundary.segments = {gamma1, top, right,
                                     seg_h(0.0, 0.0, 2.0, BoundaryTag::Gamma3)};
            cfg.load.f0 = {0.0, 0.0};
            cfg.load.f2 = {-1.0, -1.0};
            break;
        default:
            throw ConfigError("experiment id must be 1, 2 or 3; got " + std::to_string(id));
    }
    return cfg;
}

SimConfig benchmark_config(double h, double k) {
    SimConfig cfg;
    cfg.width = 1.0;
    cfg.height = 1.0;
    cfg.h = h;
    cfg.N = static_cast<int>(std::round(cfg.T / k));
    cfg.experiment = 0;
    cfg.boundary.segments = {seg_v(0.0, 0.0, 1.0, BoundaryTag::Gamma1),
                             seg_h(1.0, 0.0, 1.0, BoundaryTag::Gamma2),
                             seg_v(1.0, 0.0, 1.0, BoundaryTag::Gamma2),
                             seg_h(0.0, 0.0, 1.0, BoundaryTag::Gamma3)};
    cfg.load.f0 = {0.0, 0.0};
    cfg.load.f2 = {-1.4, -0.2};
    return cfg;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not 'key = value': " + stripped);
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
        out.emplace_back(key, value);
    }
    return out;
}

double parse_resolution(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            const double v = std::stod(text);
            if (!(v > 0.0)) throw ConfigError("resolution must be positive: " + text);
            return v;
        }
        const double num = std::stod(text.substr(0, slash));
        const double den = std::stod(text.substr(slash + 1));
        if (!(num > 0.0) || !(den > 0.0))
            throw ConfigError("resolution must be a positive fraction: " + text);
        return num / den;
    } catch (const std::invalid_argument&) {
        throw ConfigError("cannot parse resolution: " + text);
    } catch (const std::out_of_range&) {
        throw ConfigError("resolution out of range: " + text);
    }
}

}  // namespace vcfem

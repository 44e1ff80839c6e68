#include "detval/spec_parse.hpp"

#include <cmath>
#include <cstdlib>

#include "detval/errors.hpp"

namespace detval {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_number(const std::string& s, const std::string& what) {
    if (s.empty()) throw ConfigError("empty " + what + " value");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw ConfigError("cannot parse " + what + " '" + s + "'");
    }
    return v;
}

std::string trim_float(double v) {
    std::string s = std::to_string(v);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

CriterionSpec parse_criterion(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    CriterionSpec spec;
    const auto kind = kind_from_name(parts[0]);
    if (!kind) throw ConfigError("unknown criterion kind '" + parts[0] + "'");
    spec.kind = *kind;
    std::size_t i = 1;
    if (i < parts.size() && is_point_kind(spec.kind)) {
        throw ConfigError("point criteria take no threshold: '" + text + "'");
    }
    if (i < parts.size()) {
        spec.tau = parse_number(parts[i], "threshold");
        ++i;
    }
    for (; i < parts.size(); ++i) {
        if (parts[i] == "strict") {
            spec.strict_positive = true;
        } else if (parts[i] == "px") {
            spec.tau_unit = TauUnit::pixels;
        } else if (parts[i] == "diag") {
            spec.tau_unit = TauUnit::diagonal_fraction;
        } else {
            throw ConfigError("unknown criterion modifier '" + parts[i] + "'");
        }
    }
    if (spec.strict_positive && !is_overlap_kind(spec.kind)) {
        throw ConfigError("'strict' applies to overlap criteria only");
    }
    if (spec.tau_unit == TauUnit::diagonal_fraction && spec.kind != CriterionKind::center_distance) {
        throw ConfigError("'diag' applies to center_distance only");
    }
    spec.validate();
    return spec;
}

std::vector<CriterionSpec> parse_criteria(const std::string& text) {
    std::vector<CriterionSpec> specs;
    for (const std::string& item : split(text, ',')) {
        if (item.empty()) throw ConfigError("empty criterion in list '" + text + "'");
        specs.push_back(parse_criterion(item));
    }
    return specs;
}

std::vector<double> parse_tau_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        const std::vector<std::string> parts = split(text, ':');
        if (parts.size() != 3) throw ConfigError("range must be start:step:stop");
        const double start = parse_number(parts[0], "range start");
        const double step = parse_number(parts[1], "range step");
        const double stop = parse_number(parts[2], "range stop");
        if (step <= 0.0 || stop < start) throw ConfigError("invalid range '" + text + "'");
        // Round to the step lattice so 0.05 increments stay exact-ish.
        const int count = static_cast<int>(std::round((stop - start) / step));
        for (int k = 0; k <= count; ++k) {
            const double v = start + k * step;
            if (v <= stop + 1e-9) grid.push_back(std::round(v * 1e9) / 1e9);
        }
    } else {
        for (const std::string& item : split(text, ',')) {
            grid.push_back(parse_number(item, "threshold"));
        }
    }
    if (grid.empty()) throw ConfigError("empty threshold grid '" + text + "'");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] <= grid[i - 1]) throw ConfigError("thresholds must be strictly increasing");
    }
    return grid;
}

std::string tau_grid_label(const std::vector<double>& grid) {
    if (grid.size() == 1) return trim_float(grid.front());
    return "[" + trim_float(grid.front()) + ":" + trim_float(grid.back()) + "]";
}

}  // namespace detval

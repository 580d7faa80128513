#include "factplan/gain_grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace factplan {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

double to_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("gain grid: bad number '" + std::string(s) + "'");
    }
    return v;
}

std::vector<double> parse_values(std::string_view text) {
    const auto range = split(text, ':');
    if (range.size() == 3) {
        const double lo = to_double(range[0]);
        const double hi = to_double(range[1]);
        const double step = to_double(range[2]);
        if (!(step > 0.0) || hi < lo) {
            throw std::invalid_argument("gain grid: range needs lo <= hi and step > 0");
        }
        // Index-based so the endpoint survives rounding.
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        std::vector<double> v;
        v.reserve(count);
        for (std::size_t k = 0; k < count; ++k) {
            v.push_back(std::min(hi, lo + static_cast<double>(k) * step));
        }
        return v;
    }
    if (range.size() != 1) {
        throw std::invalid_argument("gain grid: range must be lo:hi:step");
    }
    std::vector<double> v;
    for (auto item : split(text, ',')) {
        v.push_back(to_double(item));
    }
    return v;
}

std::vector<std::size_t> to_counts(const std::vector<double>& v, const char* key) {
    std::vector<std::size_t> out;
    for (double x : v) {
        if (!(x >= 1.0) || x != std::floor(x)) {
            throw std::invalid_argument(std::string("gain grid: ") + key + " must be positive integers");
        }
        out.push_back(static_cast<std::size_t>(x));
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

GainGrid parse_gain_grid(std::string_view spec) {
    GainGrid g;
    for (auto clause : split(spec, ';')) {
        if (clause.empty()) {
            continue;
        }
        const auto eq = clause.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("gain grid: clause '" + std::string(clause) + "' lacks '='");
        }
        const auto key = trim(clause.substr(0, eq));
        const auto values = parse_values(trim(clause.substr(eq + 1)));
        if (key == "f") {
            g.f = values;
        } else if (key == "agents") {
            g.agents = to_counts(values, "agents");
        } else if (key == "disp") {
            g.disp = values;
        } else if (key == "p") {
            g.p = values;
        } else if (key == "di") {
            g.d_i = to_counts(values, "di");
        } else if (key == "mu") {
            g.mu = values;
        } else {
            throw std::invalid_argument("gain grid: unknown key '" + std::string(key) + "'");
        }
    }
    return g;
}

std::size_t write_gain_csv(const GainGrid& grid, std::ostream& out) {
    out << kGainHeader << '\n';
    std::size_t rows = 0;
    for (auto agents : grid.agents) {
        for (double disp : grid.disp) {
            for (double p : grid.p) {
                for (auto di : grid.d_i) {
                    for (double mu : grid.mu) {
                        for (double f : grid.f) {
                            GainInputs in;
                            in.mu = mu;
                            in.disp_bar = disp;
                            in.p_bar = p;
                            in.d_i = di;
                            in.n_agents = agents;
                            in.f = f;
                            const GainReport r = factorization_gain(in);
                            out << fmt(f) << ',' << agents << ',' << fmt(disp) << ',' << fmt(p) << ','
                                << fmt(r.n_joint) << ',' << fmt(r.n_fact) << ',' << fmt(r.gain_exact) << ','
                                << fmt(r.gain_asymptotic) << '\n';
                            ++rows;
                        }
                    }
                }
            }
        }
    }
    return rows;
}

}  // namespace factplan

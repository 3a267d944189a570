#include "adqs/io.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"

namespace adqs {

namespace {

using json = nlohmann::ordered_json;

// JSON has no NaN/inf; they become null.
json real(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_real(const std::string& text, std::string_view column, std::size_t line_no) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw std::invalid_argument(
            fmt::format("sweep CSV line {}: column '{}' is not a number: '{}'", line_no, column, text));
    }
    return value;
}

}  // namespace

std::string format_real(double x) {
    return fmt::format("{:.17g}", x);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << kTrajectoryHeader << '\n';
    for (const auto& sample : trajectory.samples) {
        out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", sample.s, sample.v.x(), sample.v.y(),
                           sample.v.z(), sample.p, sample.y);
    }
}

void write_trajectory_json(std::ostream& out, const Trajectory& trajectory) {
    json samples = json::array();
    for (const auto& sample : trajectory.samples) {
        samples.push_back({{"s", sample.s},
                           {"vx", sample.v.x()},
                           {"vy", sample.v.y()},
                           {"vz", sample.v.z()},
                           {"p", sample.p},
                           {"y", sample.y}});
    }
    const ModelParams& p = trajectory.params;
    json doc = {{"N", p.n_items},
                {"sigma", p.sigma},
                {"A", p.coeff_a},
                {"B", p.coeff_b},
                {"omega", p.omega()},
                {"schedule", std::string(to_string(p.schedule))},
                {"T", trajectory.run_time},
                {"samples", std::move(samples)}};
    out << doc.dump() << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
    out << kSweepHeader << '\n';
    for (const auto& row : table.rows) {
        const double n = static_cast<double>(row.n_items);
        std::string log2t;
        std::string t;
        if (row.ok() && std::isfinite(row.run_time)) {
            log2t = format_real(std::log2(row.run_time));
            t = format_real(row.run_time);
        }
        out << fmt::format("{},{},{},{},{},{},{},{}\n", format_real(std::log2(n)), log2t, row.n_items, t,
                           format_real(row.p_target), format_real(row.omega), format_real(row.sigma),
                           to_string(row.schedule));
    }
}

void write_sweep_json(std::ostream& out, const SweepTable& table) {
    for (const auto& row : table.rows) {
        json doc = {{"N", row.n_items},
                    {"T", row.ok() ? real(row.run_time) : json(nullptr)},
                    {"p", row.p_target},
                    {"omega", row.omega},
                    {"sigma", row.sigma},
                    {"schedule", std::string(to_string(row.schedule))}};
        if (!row.ok()) doc["error"] = row.error;
        out << doc.dump() << '\n';
    }
}

SweepTable read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("sweep CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSweepHeader) {
        const auto got = split_fields(line);
        const auto want = split_fields(std::string(kSweepHeader));
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (i >= got.size() || got[i] != want[i]) {
                throw std::invalid_argument(fmt::format("sweep CSV header: expected column '{}' at position {}, got '{}'",
                                                        want[i], i + 1, i < got.size() ? got[i] : ""));
            }
        }
        throw std::invalid_argument(fmt::format("sweep CSV header has extra columns: '{}'", line));
    }

    SweepTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 8) {
            throw std::invalid_argument(fmt::format("sweep CSV line {}: expected 8 columns, got {}", line_no, f.size()));
        }
        SweepRow row;
        const double n = parse_real(f[2], "N", line_no);
        if (n < 2 || n != std::floor(n)) {
            throw std::invalid_argument(fmt::format("sweep CSV line {}: column 'N' must be an integer >= 2", line_no));
        }
        row.n_items = static_cast<std::int64_t>(n);
        if (f[3].empty()) {
            row.run_time = std::numeric_limits<double>::quiet_NaN();
            row.error = "failed";
        } else {
            row.run_time = parse_real(f[3], "T", line_no);
        }
        row.p_target = parse_real(f[4], "p", line_no);
        row.omega = parse_real(f[5], "omega", line_no);
        row.sigma = parse_real(f[6], "sigma", line_no);
        try {
            row.schedule = parse_schedule(f[7]);
        } catch (const std::exception&) {
            throw std::invalid_argument(
                fmt::format("sweep CSV line {}: column 'schedule' must be global or local, got '{}'", line_no, f[7]));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string to_json(const BoundReport& report) {
    json doc = {{"name", std::string(to_string(report.name))},
                {"value", real(report.value)},
                {"observed", real(report.observed)},
                {"holds", report.holds},
                {"margin", real(report.margin)}};
    return doc.dump();
}

std::string to_json(const RuntimeSandwich& sandwich, std::int64_t n, double p) {
    json doc = {{"N", n},
                {"p", p},
                {"T_low", sandwich.t_low ? real(*sandwich.t_low) : json(nullptr)},
                {"T_high", real(sandwich.t_high)},
                {"lower_vacuous", sandwich.lower_vacuous}};
    return doc.dump();
}

std::string to_json(const RuntimeResult& result) {
    json doc = {{"N", result.n_items},
                {"T", result.run_time},
                {"p_achieved", result.p_achieved},
                {"bracket", {result.bracket.first, result.bracket.second}},
                {"evaluations", result.evaluations}};
    return doc.dump();
}

std::string to_json(const SlopeFit& fit) {
    json doc = {{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"window", {fit.window.first, fit.window.second}},
                {"residual", fit.residual},
                {"points", fit.points}};
    return doc.dump();
}

}  // namespace adqs

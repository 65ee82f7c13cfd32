#include "kinhom/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kinhom/core/errors.hpp"

namespace kinhom {

double richardson1(double eps_coarse, double v_coarse, double eps_fine, double v_fine) {
    const double de = eps_coarse - eps_fine;
    if (de <= 0.0) throw Error("richardson1: ladder must be strictly decreasing");
    return v_fine + (v_fine - v_coarse) * eps_fine / de;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ConvergenceReport::push(double eps, double value, double reference) {
    ReportRow r;
    r.epsilon = eps;
    r.value = value;
    r.reference = reference;
    rows.push_back(r);
}

void ConvergenceReport::finalize() {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].epsilon < rows[i - 1].epsilon))
            throw Error("ConvergenceReport: rows must have strictly decreasing epsilon");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& r = rows[i];
        r.extrapolated = i == 0 ? r.value
                                : richardson1(rows[i - 1].epsilon, rows[i - 1].value,
                                              r.epsilon, r.value);
        r.abs_error = std::abs(r.value - r.reference);
        const double denom = std::max(std::abs(r.reference), 1e-300);
        r.rel_error = r.abs_error / denom;
    }
    if (!rows.empty()) extrapolated = rows.back().extrapolated;
}

std::string ConvergenceReport::to_csv() const {
    std::string out = "epsilon,value,extrapolated,reference,abs_error,rel_error\n";
    for (const auto& r : rows) {
        out += format_g17(r.epsilon) + "," + format_g17(r.value) + "," +
               format_g17(r.extrapolated) + "," + format_g17(r.reference) + "," +
               format_g17(r.abs_error) + "," + format_g17(r.rel_error) + "\n";
    }
    return out;
}

ConvergenceReport ConvergenceReport::from_csv(const std::string& text) {
    ConvergenceReport rep;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty report CSV");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ReportRow r;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &r.epsilon, &r.value,
                        &r.extrapolated, &r.reference, &r.abs_error,
                        &r.rel_error) != 6)
            throw IoError("malformed report row: " + line);
        rep.rows.push_back(r);
    }
    if (!rep.rows.empty()) rep.extrapolated = rep.rows.back().extrapolated;
    return rep;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("rename failed for " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace kinhom

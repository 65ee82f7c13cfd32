#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kinhom {

/// One ladder entry of a convergence study.
struct ReportRow {
    double epsilon = 0.0;
    double value = 0.0;        // measured quantity at this epsilon
    double extrapolated = 0.0; // running first-order Richardson extrapolant
    double reference = 0.0;    // analytic / oracle reference when available
    double abs_error = 0.0;
    double rel_error = 0.0;
};

/// Result of an epsilon sweep: rows sorted by descending epsilon plus the
/// final extrapolant and free-form metadata for the manifest.
struct ConvergenceReport {
    std::string scenario;
    std::vector<ReportRow> rows;
    double extrapolated = 0.0;
    bool hypothesis_violated = false;
    std::map<std::string, std::string> metadata;

    void push(double eps, double value, double reference);
    /// Recompute running extrapolants, final extrapolant and error columns;
    /// enforces descending epsilon ordering.
    void finalize();

    /// CSV body: header + one row per ladder entry, 17 significant digits,
    /// byte-stable for a given build.
    std::string to_csv() const;

    static ConvergenceReport from_csv(const std::string& text);
};

/// First-order Richardson extrapolation from the two finest ladder points:
/// assuming v(eps) = L + C*eps, returns the L estimate.
double richardson1(double eps_coarse, double v_coarse, double eps_fine, double v_fine);

/// Format a double with 17 significant digits (round-trip exact).
std::string format_g17(double v);

/// Write a file atomically (temp file + rename, same directory).
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace kinhom

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wmlg {

/// Which CSV columns hold id, time and value (0-based). Default matches the
/// canonical `id,time,value` long format.
struct ColumnMapping {
    int id = 0;
    int time = 1;
    int value = 2;
    char delimiter = ',';
    bool header = true;
};

/// A balanced panel: n individuals observed at every time of a strictly
/// increasing grid, outcomes finite and nonnegative. Construction validates
/// all of that; instances are immutable afterwards.
class PanelDataset {
public:
    /// Build from pre-assembled rows: values[i][k] is individual i at times[k].
    static PanelDataset from_rows(std::vector<std::string> ids, std::vector<double> times,
                                  std::vector<std::vector<double>> values);

    std::size_t n() const { return ids_.size(); }   ///< individuals
    std::size_t m() const { return times_.size(); } ///< grid times

    const std::vector<std::string>& ids() const { return ids_; }
    const std::vector<double>& times() const { return times_; }

    double value(std::size_t i, std::size_t time_idx) const {
        return values_[i * times_.size() + time_idx];
    }
    /// Index of a grid time; throws UnknownTime (message lists the grid).
    std::size_t time_index(double t) const;

private:
    PanelDataset() = default;
    std::vector<std::string> ids_;
    std::vector<double> times_;
    std::vector<double> values_; // n x m row-major
};

/// Long-format CSV loader (`id,time,value` by default, UTF-8, '.' decimal
/// separator). Duplicate or missing cells -> UnbalancedPanel; negative or
/// non-finite outcomes -> InvalidOutcome; anything unparsable -> ParseError
/// with the 1-based row number.
PanelDataset load_panel(const std::string& path, const ColumnMapping& mapping = {});
PanelDataset parse_panel_csv(const std::string& text, const ColumnMapping& mapping = {},
                             const std::string& origin = "panel");

/// One time slice: values in individual order plus the sorted order statistics
/// and the 1-based ranks linking the two (ties broken by individual order, so
/// rank is a stable permutation).
struct CrossSection {
    double time = 0.0;
    std::vector<double> values; ///< individual order
    std::vector<double> sorted; ///< ascending
    std::vector<std::int64_t> ranks; ///< ranks[i] in 1..n, position of values[i] in sorted
};

CrossSection cross_section(const PanelDataset& panel, double t);
/// Assemble a cross-section directly from outcomes (validates them).
CrossSection make_cross_section(std::vector<double> values, double time = 0.0);

/// Number of outcomes <= z (boundary counts as marked). z must be positive.
std::int64_t headcount(const CrossSection& s, double z);

/// Right-continuous empirical CDF value #{Y_j <= y}/n, O(log n).
double empirical_cdf(const CrossSection& s, double y);

/// Threshold path Z(t) with envelope bounds 0 < Z1 <= Z(t) <= Z2 < inf.
class ThresholdSchedule {
public:
    static ThresholdSchedule constant(double z);
    /// Per-time thresholds; bounds default to the min/max over the table.
    static ThresholdSchedule from_pairs(std::vector<std::pair<double, double>> tz,
                                        std::optional<std::pair<double, double>> bounds = {});
    /// CSV with header `time,z`.
    static ThresholdSchedule load_csv(const std::string& path);

    double at(double t) const; ///< UnknownTime for per-time schedules off the table
    double z1() const { return z1_; }
    double z2() const { return z2_; }
    bool constant_schedule() const { return constant_; }

private:
    ThresholdSchedule() = default;
    bool constant_ = true;
    double zconst_ = 0.0;
    std::vector<std::pair<double, double>> table_; // sorted by time
    double z1_ = 0.0, z2_ = 0.0;
};

} // namespace wmlg

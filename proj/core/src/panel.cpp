#include "wmlg/panel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "wmlg/errors.hpp"
#include "wmlg/util.hpp"

namespace wmlg {

namespace {

void check_outcome(double v, const std::string& where) {
    if (!std::isfinite(v))
        throw InvalidOutcome(where + ": outcome is not finite");
    if (v < 0.0)
        throw InvalidOutcome(where + ": negative outcome " + std::to_string(v));
}

double parse_number(const std::string& field, std::size_t row, const char* what) {
    const std::string t = trim(field);
    if (t.empty())
        throw ParseError("row " + std::to_string(row) + ": empty " + what + " field");
    const char* begin = t.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + t.size())
        throw ParseError("row " + std::to_string(row) + ": cannot parse " + what + " \"" + t + "\"");
    return v;
}

std::string grid_to_string(const std::vector<double>& times) {
    std::ostringstream os;
    for (std::size_t k = 0; k < times.size(); ++k) os << (k ? ", " : "") << times[k];
    return os.str();
}

} // namespace

PanelDataset PanelDataset::from_rows(std::vector<std::string> ids, std::vector<double> times,
                                     std::vector<std::vector<double>> values) {
    if (ids.empty() || times.empty())
        throw UnbalancedPanel("panel must have at least one individual and one time");
    if (values.size() != ids.size())
        throw UnbalancedPanel("panel has " + std::to_string(ids.size()) + " ids but " +
                              std::to_string(values.size()) + " value rows");
    for (std::size_t k = 0; k + 1 < times.size(); ++k)
        if (!(times[k] < times[k + 1]))
            throw UnbalancedPanel("time grid must be strictly increasing");
    std::set<std::string> seen(ids.begin(), ids.end());
    if (seen.size() != ids.size())
        throw UnbalancedPanel("duplicate individual id in panel");

    PanelDataset p;
    p.ids_ = std::move(ids);
    p.times_ = std::move(times);
    p.values_.reserve(p.ids_.size() * p.times_.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].size() != p.times_.size())
            throw UnbalancedPanel("id \"" + p.ids_[i] + "\" has " +
                                  std::to_string(values[i].size()) + " observations, grid has " +
                                  std::to_string(p.times_.size()));
        for (std::size_t k = 0; k < values[i].size(); ++k) {
            check_outcome(values[i][k], "id \"" + p.ids_[i] + "\" at t=" + std::to_string(p.times_[k]));
            p.values_.push_back(values[i][k]);
        }
    }
    return p;
}

std::size_t PanelDataset::time_index(double t) const {
    for (std::size_t k = 0; k < times_.size(); ++k)
        if (times_[k] == t) return k;
    throw UnknownTime("time " + std::to_string(t) + " not on the panel grid {" +
                      grid_to_string(times_) + "}");
}

PanelDataset parse_panel_csv(const std::string& text, const ColumnMapping& mapping,
                             const std::string& origin) {
    const int maxcol = std::max({mapping.id, mapping.time, mapping.value});
    std::istringstream in(text);
    std::string line;
    std::size_t row = 0;

    std::vector<std::string> ids;                    // first-seen order
    std::map<std::string, std::size_t> id_index;
    std::set<double> time_set;
    // (id, time) -> value, duplicates rejected as they arrive
    std::map<std::pair<std::size_t, double>, double> cells;

    while (std::getline(in, line)) {
        ++row;
        if (row == 1 && line.size() >= 3 && (unsigned char)line[0] == 0xEF) line = line.substr(3); // BOM
        if (trim(line).empty()) continue;
        if (row == 1 && mapping.header) continue;
        auto fields = split(line, mapping.delimiter);
        if ((int)fields.size() <= maxcol)
            throw ParseError(origin + " row " + std::to_string(row) + ": expected at least " +
                             std::to_string(maxcol + 1) + " columns, got " +
                             std::to_string(fields.size()));
        std::string id = trim(fields[mapping.id]);
        if (id.empty()) throw ParseError(origin + " row " + std::to_string(row) + ": empty id");
        double t = parse_number(fields[mapping.time], row, "time");
        double v = parse_number(fields[mapping.value], row, "value");
        if (!std::isfinite(t))
            throw ParseError(origin + " row " + std::to_string(row) + ": non-finite time");
        check_outcome(v, origin + " row " + std::to_string(row));

        auto [it, fresh] = id_index.try_emplace(id, ids.size());
        if (fresh) ids.push_back(id);
        if (!cells.emplace(std::make_pair(it->second, t), v).second)
            throw UnbalancedPanel(origin + " row " + std::to_string(row) + ": duplicate cell (id \"" +
                                  id + "\", t=" + std::to_string(t) + ")");
        time_set.insert(t);
    }
    if (ids.empty()) throw ParseError(origin + ": no data rows");

    std::vector<double> times(time_set.begin(), time_set.end());
    std::vector<std::vector<double>> values(ids.size(), std::vector<double>(times.size()));
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t k = 0; k < times.size(); ++k) {
            auto it = cells.find({i, times[k]});
            if (it == cells.end())
                throw UnbalancedPanel(origin + ": id \"" + ids[i] + "\" missing at t=" +
                                      std::to_string(times[k]));
            values[i][k] = it->second;
        }
    return PanelDataset::from_rows(std::move(ids), std::move(times), std::move(values));
}

PanelDataset load_panel(const std::string& path, const ColumnMapping& mapping) {
    return parse_panel_csv(read_file(path), mapping, path);
}

CrossSection make_cross_section(std::vector<double> values, double time) {
    if (values.empty()) throw InvalidOutcome("cross-section must be nonempty");
    for (double v : values) check_outcome(v, "cross-section at t=" + std::to_string(time));
    CrossSection s;
    s.time = time;
    s.values = std::move(values);
    const std::size_t n = s.values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
    s.sorted.resize(n);
    s.ranks.resize(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        s.sorted[pos] = s.values[order[pos]];
        s.ranks[order[pos]] = (std::int64_t)pos + 1;
    }
    return s;
}

CrossSection cross_section(const PanelDataset& panel, double t) {
    const std::size_t k = panel.time_index(t);
    std::vector<double> v(panel.n());
    for (std::size_t i = 0; i < panel.n(); ++i) v[i] = panel.value(i, k);
    return make_cross_section(std::move(v), t);
}

std::int64_t headcount(const CrossSection& s, double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::invalid_argument("headcount: threshold must be positive and finite");
    auto it = std::upper_bound(s.sorted.begin(), s.sorted.end(), z);
    return (std::int64_t)(it - s.sorted.begin());
}

double empirical_cdf(const CrossSection& s, double y) {
    auto it = std::upper_bound(s.sorted.begin(), s.sorted.end(), y);
    return (double)(it - s.sorted.begin()) / (double)s.sorted.size();
}

ThresholdSchedule ThresholdSchedule::constant(double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::invalid_argument("threshold must satisfy 0 < z < inf");
    ThresholdSchedule s;
    s.constant_ = true;
    s.zconst_ = z;
    s.z1_ = s.z2_ = z;
    return s;
}

ThresholdSchedule ThresholdSchedule::from_pairs(std::vector<std::pair<double, double>> tz,
                                                std::optional<std::pair<double, double>> bounds) {
    if (tz.empty()) throw std::invalid_argument("threshold table must be nonempty");
    std::sort(tz.begin(), tz.end());
    double lo = tz[0].second, hi = tz[0].second;
    for (std::size_t k = 0; k < tz.size(); ++k) {
        if (k && tz[k].first == tz[k - 1].first)
            throw std::invalid_argument("duplicate time in threshold table");
        double z = tz[k].second;
        if (!(z > 0.0) || !std::isfinite(z))
            throw std::invalid_argument("threshold at t=" + std::to_string(tz[k].first) +
                                        " must satisfy 0 < z < inf");
        lo = std::min(lo, z);
        hi = std::max(hi, z);
    }
    ThresholdSchedule s;
    s.constant_ = false;
    s.table_ = std::move(tz);
    if (bounds) {
        auto [z1, z2] = *bounds;
        if (!(z1 > 0.0 && z1 <= lo && hi <= z2 && std::isfinite(z2)))
            throw std::invalid_argument("threshold bounds must satisfy 0 < Z1 <= Z(t) <= Z2 < inf");
        s.z1_ = z1;
        s.z2_ = z2;
    } else {
        s.z1_ = lo;
        s.z2_ = hi;
    }
    return s;
}

ThresholdSchedule ThresholdSchedule::load_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t row = 0;
    std::vector<std::pair<double, double>> tz;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        if (row == 1) continue; // header `time,z`
        auto fields = split(line, ',');
        if (fields.size() < 2)
            throw ParseError(path + " row " + std::to_string(row) + ": expected time,z");
        tz.emplace_back(parse_number(fields[0], row, "time"), parse_number(fields[1], row, "z"));
    }
    if (tz.empty()) throw ParseError(path + ": no threshold rows");
    return from_pairs(std::move(tz));
}

double ThresholdSchedule::at(double t) const {
    if (constant_) return zconst_;
    for (const auto& [tt, z] : table_)
        if (tt == t) return z;
    throw UnknownTime("no threshold for t=" + std::to_string(t));
}

} // namespace wmlg

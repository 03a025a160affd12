#include "megsched/harness/traces.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "megsched/core/error.hpp"
#include "megsched/core/format.hpp"

namespace megsched {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double bump(int hour, double center, double width) {
    const double d = hour - center;
    return std::exp(-d * d / (2.0 * width * width));
}

} // namespace

std::vector<std::string> TraceSchema::header(bool with_alpha) const {
    std::vector<std::string> h{"t", "p_e", "p_o", "p_g"};
    for (std::size_t k = 1; k <= megps; ++k) h.push_back("R_" + std::to_string(k));
    for (std::size_t i = 1; i <= users; ++i) h.push_back("X_" + std::to_string(i));
    if (with_alpha)
        for (std::size_t q = 1; q <= elastic; ++q) h.push_back("A_" + std::to_string(q));
    return h;
}

std::vector<std::string> validate(const TraceSet& traces, const ParkParams& park) {
    std::vector<std::string> out;
    if (traces.slots.empty()) out.emplace_back("traces: no slots");
    for (std::size_t t = 0; t < traces.slots.size(); ++t) {
        auto v = validate(traces.slots[t], park, "slot " + std::to_string(t + 1));
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

TraceSet parse_traces(std::istream& in, const TraceSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("trace file is empty", 1, 0);

    auto header = split_csv(line);
    for (auto& h : header) h = trim(h);
    const auto plain = schema.header(false);
    const auto full = schema.header(true);
    bool with_alpha = false;
    if (header == full && schema.elastic > 0) {
        with_alpha = true;
    } else if (header != plain) {
        for (std::size_t c = 0; c < std::max(header.size(), plain.size()); ++c) {
            if (c >= header.size() || c >= plain.size() || header[c] != plain[c]) {
                const std::string expected = c < plain.size() ? plain[c] : "end of row";
                throw ParseError("trace header mismatch: expected '" + expected + "'", 1, c + 1);
            }
        }
    }
    const std::size_t columns = with_alpha ? full.size() : plain.size();

    TraceSet traces;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != columns)
            throw ParseError("expected " + std::to_string(columns) + " fields, found " + std::to_string(fields.size()),
                             row, std::min(fields.size(), columns) + 1);
        std::vector<double> v(columns);
        for (std::size_t c = 0; c < columns; ++c) {
            const auto x = parse_number(fields[c]);
            if (!x || !std::isfinite(*x))
                throw ParseError("column '" + full[c] + "' is not a finite number: '" + trim(fields[c]) + "'", row,
                                 c + 1);
            v[c] = *x;
        }
        const double expected_t = static_cast<double>(traces.slots.size() + 1);
        if (v[0] != expected_t)
            throw ParseError("slot index must count up from 1; expected " + format_number(expected_t), row, 1);

        const std::string where = "row " + std::to_string(row) + ": ";
        for (std::size_t c = 1; c < columns; ++c)
            if (v[c] < 0.0) throw ValidationError(where + full[c] + " must be >= 0");
        if (v[2] > v[1]) throw ValidationError(where + "sale price exceeds purchase price (p_o > p_e)");

        SlotExogenous exo;
        exo.price_e = v[1];
        exo.price_o = v[2];
        exo.price_g = v[3];
        std::size_t c = 4;
        exo.renewable.assign(v.begin() + c, v.begin() + c + schema.megps);
        c += schema.megps;
        exo.load.assign(v.begin() + c, v.begin() + c + schema.users);
        c += schema.users;
        if (with_alpha) exo.elastic_alpha.assign(v.begin() + c, v.end());
        traces.slots.push_back(std::move(exo));
    }
    if (traces.slots.empty()) throw ParseError("trace file has no data rows", row, 0);
    return traces;
}

TraceSet load_traces(const std::filesystem::path& path, const TraceSchema& schema) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trace file: " + path.string());
    return parse_traces(in, schema);
}

void write_traces(std::ostream& out, const TraceSet& traces) {
    if (traces.slots.empty()) return;
    const auto& first = traces.slots.front();
    TraceSchema schema{first.renewable.size(), first.load.size(), first.elastic_alpha.size()};
    const bool with_alpha = !first.elastic_alpha.empty();
    const auto header = schema.header(with_alpha);
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    for (std::size_t t = 0; t < traces.slots.size(); ++t) {
        const auto& s = traces.slots[t];
        out << t + 1 << ',' << format_number(s.price_e) << ',' << format_number(s.price_o) << ','
            << format_number(s.price_g);
        for (double r : s.renewable) out << ',' << format_number(r);
        for (double x : s.load) out << ',' << format_number(x);
        if (with_alpha)
            for (double a : s.elastic_alpha) out << ',' << format_number(a);
        out << '\n';
    }
}

bool is_daylight(const SynthProfile& profile, int hour) noexcept {
    return hour >= profile.daylight_start && hour < profile.daylight_end;
}

bool is_peak_hour(int hour) noexcept { return (hour >= 8 && hour < 12) || (hour >= 17 && hour < 21); }

bool is_valley_hour(int hour) noexcept { return hour >= 23 || hour < 8; }

TraceSet synth_traces(std::uint64_t seed, std::size_t slots, const SynthProfile& profile) {
    if (profile.solar_peak.size() != profile.megps)
        throw ValidationError("synthetic profile: solar_peak needs one entry per MEGP");
    if (profile.load_base.size() != profile.users)
        throw ValidationError("synthetic profile: load_base needs one entry per user");
    if (profile.daylight_end <= profile.daylight_start)
        throw ValidationError("synthetic profile: daylight window is empty");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> cloud(profile.cloud_min, 1.0);

    TraceSet traces;
    traces.slots.reserve(slots);
    std::vector<double> clear(profile.megps, 1.0);
    const double day_len = profile.daylight_end - profile.daylight_start;
    for (std::size_t t = 0; t < slots; ++t) {
        const int hour = static_cast<int>(t % 24);
        if (hour == 0)
            for (auto& c : clear) c = cloud(rng);

        SlotExogenous s;
        const double base = is_peak_hour(hour) ? profile.price_peak
                            : is_valley_hour(hour) ? profile.price_valley
                                                   : profile.price_flat;
        s.price_e = std::max(0.0, base * (1.0 + profile.price_noise * unit(rng)));
        s.price_o = std::min(profile.price_sale, s.price_e);
        s.price_g = profile.price_gas;

        s.renewable.resize(profile.megps, 0.0);
        if (is_daylight(profile, hour)) {
            const double shape = std::sin(std::numbers::pi * (hour - profile.daylight_start + 0.5) / day_len);
            for (std::size_t k = 0; k < profile.megps; ++k) s.renewable[k] = profile.solar_peak[k] * shape * clear[k];
        }

        const double shape = 1.0 + profile.load_morning * bump(hour, 10.0, 1.5) +
                             profile.load_evening * bump(hour, 19.0, 1.5);
        s.load.resize(profile.users);
        for (std::size_t i = 0; i < profile.users; ++i)
            s.load[i] = std::max(0.0, profile.load_base[i] * shape * (1.0 + profile.load_noise * unit(rng)));
        traces.slots.push_back(std::move(s));
    }
    return traces;
}

} // namespace megsched

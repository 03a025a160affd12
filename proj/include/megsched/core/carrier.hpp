#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace megsched {

enum class Carrier : std::uint8_t { Electricity = 0, Heat = 1, Gas = 2 };

inline constexpr std::size_t kCarrierCount = 3;
inline constexpr std::array<Carrier, kCarrierCount> kCarriers{
    Carrier::Electricity, Carrier::Heat, Carrier::Gas};

constexpr std::size_t index_of(Carrier c) noexcept { return static_cast<std::size_t>(c); }

constexpr std::string_view to_string(Carrier c) noexcept {
    switch (c) {
    case Carrier::Electricity: return "electricity";
    case Carrier::Heat: return "heat";
    case Carrier::Gas: return "gas";
    }
    return "?";
}

inline std::optional<Carrier> parse_carrier(std::string_view s) noexcept {
    for (auto c : kCarriers) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

/// One quantity per energy carrier, iterated in Electricity < Heat < Gas order.
struct CarrierVector {
    std::array<double, kCarrierCount> values{};

    constexpr double& operator[](Carrier c) noexcept { return values[index_of(c)]; }
    constexpr double operator[](Carrier c) const noexcept { return values[index_of(c)]; }

    constexpr CarrierVector& operator+=(const CarrierVector& o) noexcept {
        for (std::size_t i = 0; i < kCarrierCount; ++i) values[i] += o.values[i];
        return *this;
    }
    constexpr CarrierVector& operator-=(const CarrierVector& o) noexcept {
        for (std::size_t i = 0; i < kCarrierCount; ++i) values[i] -= o.values[i];
        return *this;
    }
    constexpr CarrierVector& operator*=(double s) noexcept {
        for (auto& v : values) v *= s;
        return *this;
    }

    friend constexpr CarrierVector operator+(CarrierVector a, const CarrierVector& b) noexcept { return a += b; }
    friend constexpr CarrierVector operator-(CarrierVector a, const CarrierVector& b) noexcept { return a -= b; }
    friend constexpr CarrierVector operator*(double s, CarrierVector a) noexcept { return a *= s; }
    friend constexpr bool operator==(const CarrierVector&, const CarrierVector&) = default;

    double max_abs() const noexcept {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

} // namespace megsched

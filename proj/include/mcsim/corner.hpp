#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace mcsim {

enum class Corner : std::size_t { FL = 0, FR = 1, RL = 2, RR = 3 };

inline constexpr std::array<Corner, 4> kCorners{Corner::FL, Corner::FR, Corner::RL, Corner::RR};

/// Per-corner quantity, always ordered FL, FR, RL, RR.
using CornerArray = std::array<double, 4>;

constexpr std::size_t index(Corner c) { return static_cast<std::size_t>(c); }

constexpr bool is_left(Corner c) { return c == Corner::FL || c == Corner::RL; }
constexpr bool is_front(Corner c) { return c == Corner::FL || c == Corner::FR; }

/// +1 for left corners, -1 for right corners.
constexpr double lateral_sign(Corner c) { return is_left(c) ? 1.0 : -1.0; }
/// +1 for front corners, -1 for rear corners.
constexpr double longitudinal_sign(Corner c) { return is_front(c) ? 1.0 : -1.0; }

/// Left/right counterpart (FL <-> FR, RL <-> RR).
constexpr Corner mirrored(Corner c) {
    switch (c) {
    case Corner::FL: return Corner::FR;
    case Corner::FR: return Corner::FL;
    case Corner::RL: return Corner::RR;
    case Corner::RR: return Corner::RL;
    }
    return c;
}

constexpr std::string_view corner_name(Corner c) {
    switch (c) {
    case Corner::FL: return "fl";
    case Corner::FR: return "fr";
    case Corner::RL: return "rl";
    case Corner::RR: return "rr";
    }
    return "?";
}

}  // namespace mcsim

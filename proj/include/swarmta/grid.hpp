#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace swarmta {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Cell {
    int x = 0;
    int y = 0;

    friend constexpr bool operator==(Cell, Cell) = default;
    friend constexpr auto operator<=>(Cell, Cell) = default;
};

inline constexpr int chebyshev(Cell a, Cell b) noexcept {
    const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx > dy ? dx : dy;
}

inline constexpr int manhattan(Cell a, Cell b) noexcept {
    return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

inline constexpr long squared_distance(Cell a, Cell b) noexcept {
    const long dx = a.x - b.x;
    const long dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// R = +x, L = -x, U = +y, D = -y, S = stay.
enum class Direction : std::uint8_t { R, L, U, D, S };

inline constexpr Cell offset(Cell c, Direction d) noexcept {
    switch (d) {
        case Direction::R: return {c.x + 1, c.y};
        case Direction::L: return {c.x - 1, c.y};
        case Direction::U: return {c.x, c.y + 1};
        case Direction::D: return {c.x, c.y - 1};
        case Direction::S: break;
    }
    return c;
}

inline constexpr char to_char(Direction d) noexcept {
    constexpr char names[] = {'R', 'L', 'U', 'D', 'S'};
    return names[static_cast<int>(d)];
}

/// Inclusive rectangle [x0, x1] x [y0, y1].
struct Rect {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    constexpr bool contains(Cell c) const noexcept {
        return c.x >= x0 && c.x <= x1 && c.y >= y0 && c.y <= y1;
    }
    constexpr int width() const noexcept { return x1 - x0 + 1; }
    constexpr int height() const noexcept { return y1 - y0 + 1; }
    constexpr int area() const noexcept { return width() * height(); }
    constexpr bool empty() const noexcept { return x1 < x0 || y1 < y0; }

    /// Nearest cell of the rectangle; unique under Chebyshev, Manhattan and
    /// Euclidean distance alike.
    constexpr Cell clamp(Cell c) const noexcept {
        return {c.x < x0 ? x0 : (c.x > x1 ? x1 : c.x), c.y < y0 ? y0 : (c.y > y1 ? y1 : c.y)};
    }

    friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

struct GridDims {
    int width = 0;   // M
    int height = 0;  // N

    constexpr bool contains(Cell c) const noexcept {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    constexpr int size() const noexcept { return width * height; }
    constexpr int index(Cell c) const noexcept { return c.y * width + c.x; }
    constexpr Cell cell(int index) const noexcept { return {index % width, index / width}; }

    friend constexpr bool operator==(GridDims, GridDims) = default;
};

struct VertexState {
    bool is_task = false;
    bool is_home = false;
    int demand = 0;
    int residual_demand = 0;
    Cell task_location{};  // meaningful only when is_task

    friend constexpr bool operator==(const VertexState&, const VertexState&) = default;
};

std::string to_string(Cell c);

}  // namespace swarmta

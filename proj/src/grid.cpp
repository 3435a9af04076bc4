#include "swarmta/grid.hpp"

namespace swarmta {

std::string to_string(Cell c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace swarmta

#include "lumenbell/angles.hpp"

#include <cmath>

namespace lumenbell {

Degrees Degrees::reduced_half_turn() const {
    double r = std::fmod(value_, 180.0);
    if (r < 0.0) r += 180.0;
    // fmod of e.g. -1e-18 gives 180 after the shift
    if (r >= 180.0) r = 0.0;
    return Degrees(r);
}

}  // namespace lumenbell

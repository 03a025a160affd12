#pragma once

#include "megsched/core/params.hpp"

namespace megsched {

/// Two plants with default devices and three factories: user 1 served by
/// plant 1, users 2 and 3 by plant 2. Each plant owns one elastic electricity
/// load and one elastic heat load.
ParkParams benchmark_park();

} // namespace megsched

#include "megsched/harness/benchmark.hpp"

namespace megsched {

ParkParams benchmark_park() {
    ParkParams park;
    park.megps.resize(2);
    park.users.resize(3);
    park.users[0].suppliers = {0};
    park.users[1].suppliers = {1};
    park.users[2].suppliers = {1};
    for (std::size_t k = 0; k < 2; ++k) {
        park.elastic_loads.push_back({Carrier::Electricity, 1.0, 0.5, 1.0, k});
        park.elastic_loads.push_back({Carrier::Heat, 1.0, 0.5, 1.0, k});
    }
    return park;
}

} // namespace megsched

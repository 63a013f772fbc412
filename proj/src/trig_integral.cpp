#include "ringspin/trig_integral.hpp"

#include <algorithm>
#include <cmath>

namespace ringspin {

std::vector<Mode> merge_modes(std::vector<Mode> modes, double tolerance) {
    std::sort(modes.begin(), modes.end(),
              [](const Mode& x, const Mode& y) { return x.frequency < y.frequency; });
    std::vector<Mode> merged;
    merged.reserve(modes.size());
    for (const Mode& mode : modes) {
        if (!merged.empty() && mode.frequency - merged.back().frequency < tolerance) {
            merged.back().weight += mode.weight;
        } else {
            merged.push_back(mode);
        }
    }
    std::erase_if(merged, [](const Mode& x) { return x.weight == 0.0; });
    return merged;
}

double integrate_power(std::span<const Mode> modes, double t_max, double tolerance) {
    double diagonal = 0.0;
    double cross = 0.0;
    for (std::size_t a = 0; a < modes.size(); ++a) {
        diagonal += modes[a].weight * modes[a].weight;
        for (std::size_t b = a + 1; b < modes.size(); ++b) {
            const double delta = modes[a].frequency - modes[b].frequency;
            const double kernel =
                std::abs(delta) < tolerance ? t_max : std::sin(delta * t_max) / delta;
            cross += modes[a].weight * modes[b].weight * kernel;
        }
    }
    return diagonal * t_max + 2.0 * cross;
}

}  // namespace ringspin

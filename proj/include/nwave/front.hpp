#ifndef NWAVE_FRONT_HPP
#define NWAVE_FRONT_HPP

#include <span>
#include <string_view>
#include <vector>

#include "nwave/model.hpp"

namespace nwave::pde {
struct SpacetimeRecord;
}

namespace nwave::front {

using model::ModelParams;

/// First crossing of `level` scanning from the left, linearly interpolated.
/// Throws NoCrossing.
double front_position(std::span<const double> x, std::span<const double> u, double level);

struct SpeedEstimate {
    double speed = 0;   // |slope|
    double stderr_ = 0;
    int direction = 0;  // -1 leftward, +1 rightward
    std::size_t points = 0;
};

/// Least-squares slope of X(t) over the last half of the time span.
/// Throws InsufficientPoints below 5 samples in that window.
SpeedEstimate estimate_speed(std::span<const double> t, std::span<const double> X);

enum class Shape { Monotone, NonMonotoneNonOscillating, Oscillating, Inconclusive };
std::string_view to_string(Shape s);

struct ProfileStats {
    Shape shape = Shape::Inconclusive;
    double overshoot = 0;        // max u - kappa
    int kappa_crossings = 0;
    std::vector<double> crossing_xi;
    bool tail_monotone = false;  // last quarter
    bool gaps_ok = true;         // crossings separated by more than delay_length
    bool leading_edge_increasing = false;  // up to the first kappa crossing
};

/// Shape of a profile that connects 0 to kappa; a profile running from kappa
/// down to 0 is reversed first. Differences within 1e-9 max|u| count as flat.
/// delay_length is the delay measured in xi (tau c for a wave of speed c).
ProfileStats classify_profile(std::span<const double> xi, std::span<const double> u,
                              const ModelParams& params, double delay_length);

struct FrontDiagnostics {
    SpeedEstimate speed;
    double level = 0;
    double t = 0;  // time of the profile snapshot
    std::vector<double> xi, u;
    ProfileStats stats;
};

/// Speed from the front track, comoving profile from the final state.
FrontDiagnostics diagnose(const pde::SpacetimeRecord& record);

}  // namespace nwave::front

#endif

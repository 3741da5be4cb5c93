#ifndef NWAVE_CHARACTERISTIC_HPP
#define NWAVE_CHARACTERISTIC_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "nwave/model.hpp"

namespace nwave::characteristic {

using model::ModelParams;

/// Linearisations of the delay equation and of the wave-profile equation.
///
///   AtZeroDDE          z + 1 - p e^{-z tau}
///   AtKappaDDE         z + 1 + P e^{-z tau}
///   AtZeroProfile      eps z^2 - z - 1 + p e^{-z tau}      (speed = eps)
///   AtKappaProfileEps  eps z^2 - z - 1 - P e^{-z tau}      (speed = eps)
///   AtKappaProfileC    z^2 - c z - 1 - P e^{-z c tau}      (speed = c)
enum class CharKind { AtZeroDDE, AtKappaDDE, AtZeroProfile, AtKappaProfileEps, AtKappaProfileC };

std::string_view to_string(CharKind kind);

/// g(z) = a z^2 + b z + c + d e^{-k z} with k >= 0. Every characteristic
/// function above has this form; g'' is monotone in z, so g' has at most two
/// zeros and g at most three real roots.
struct ExpQuadratic {
    double a = 0, b = 0, c = 0, d = 0, k = 0;

    double value(double z) const;
    double slope(double z) const;
    double curvature(double z) const;
    /// Zero of g'' if one exists.
    std::optional<double> inflection() const;
};

ExpQuadratic characteristic(CharKind kind, const ModelParams& params,
                            std::optional<double> speed = std::nullopt);

/// Throws DomainError when a profile kind is given no speed.
double char_value(CharKind kind, double z, const ModelParams& params,
                  std::optional<double> speed = std::nullopt);

struct RealRoot {
    double z;
    int multiplicity;  // 1, or 2 at a tangency
};

struct RootReport {
    CharKind kind;
    std::vector<RealRoot> roots;  // ascending
    double z_lo = 0, z_hi = 0;    // search window

    bool empty() const { return roots.empty(); }
    /// Number of roots counted with multiplicity.
    int count() const;
};

/// All real roots of g in [lo, hi]. A critical point with
/// |g| <= 1e-9 (1 + z^2) is reported as a double root.
std::vector<RealRoot> roots_in_window(const ExpQuadratic& g, double lo, double hi);

/// Moves lo leftwards until no root of g can lie below it.
double certified_lower(const ExpQuadratic& g, double lo);
/// Moves hi rightwards until no root of g can lie above it.
double certified_upper(const ExpQuadratic& g, double hi);

/// Every real root of the chosen characteristic function.
RootReport real_roots(CharKind kind, const ModelParams& params,
                      std::optional<double> speed = std::nullopt);

/// The unique positive root mu of z + 1 - p e^{-z tau}.
double mu_root(const ModelParams& params);

/// Negative roots of z^2 - c z - 1 - P e^{-z c tau}. Requires c > 0.
RootReport negative_roots_at_kappa(const ModelParams& params, double c);

/// Whether z^2 - c z - 1 + p e^{-z c tau} = 0 has a positive root (tangency counts).
bool has_positive_root_at_zero(const ModelParams& params, double c);

/// Smallest c for which the linearisation at zero has a positive real root.
double minimal_speed(const ModelParams& params);

enum class TailClass { EventuallyMonotone, OscillatoryTail };
std::string_view to_string(TailClass tail);

/// EventuallyMonotone iff negative_roots_at_kappa(params, c) is non-empty.
TailClass classify_tail(const ModelParams& params, double c);

/// The c > 0 solving beta^2 - c beta - 1 + p e^{-beta c tau} = 0.
double linear_spreading_speed(const ModelParams& params, double beta);

}  // namespace nwave::characteristic

#endif

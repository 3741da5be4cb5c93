#ifndef NWAVE_MODEL_HPP
#define NWAVE_MODEL_HPP

namespace nwave::model {

/// Blowflies birth amplitude p (> 1) and delay tau (>= 0).
class ModelParams {
public:
    /// Throws DomainError unless p > 1 and tau >= 0 (both finite).
    ModelParams(double p, double tau);

    double p() const { return p_; }
    double tau() const { return tau_; }

    /// Positive equilibrium ln p, the nonzero fixed point of f.
    double kappa() const { return kappa_; }
    /// ln p - 1; also -f'(kappa).
    double P() const { return kappa_ - 1.0; }
    /// Location of the unique maximum of f.
    static constexpr double x_max() { return 1.0; }
    double f_max() const;

private:
    double p_, tau_, kappa_;
};

/// f(u) = p u e^{-u} and its first three derivatives (order 0..3).
/// Negative u is evaluated by the same closed form.
double birth(double u, int order, const ModelParams& params);

/// Schwarz derivative f'''/f' - 1.5 (f''/f')^2. Undefined at u = 1 (DomainError).
double schwarz(double u, const ModelParams& params);

/// (f(x) - kappa)(x - kappa) < 0 on (f(f(x_M)), f(x_M)) minus {kappa}.
/// Dense grid combined with the monotone-piece analysis of f.
bool feedback_holds(const ModelParams& params);

/// e^{-tau} > P ln((P^2 + P)/(P^2 + 1)); true whenever p <= e^2.
bool gsc_holds(const ModelParams& params);

}  // namespace nwave::model

#endif

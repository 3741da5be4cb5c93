#ifndef NWAVE_KERNELS_HPP
#define NWAVE_KERNELS_HPP

#include <span>
#include <vector>

#include "nwave/exec.hpp"
#include "nwave/model.hpp"

// Spatial kernels of the delay reaction-diffusion solver. Every kernel has a
// plain serial loop and an OpenMP loop with identical arithmetic per element,
// so both paths agree bit for bit.
namespace nwave::kernels {

using model::ModelParams;

/// out[i] = p u[i] e^{-u[i]}.
void birth_map(std::span<const double> u, std::span<double> out, const ModelParams& params,
               Exec exec);

/// Interior nodes: out[i] = (u[i-1] - 2u[i] + u[i+1]) / dx^2 - u[i] + wa fa[i] + wb fb[i].
/// Boundary entries of out are set to 0.
void mol_rhs(std::span<const double> u, std::span<const double> fa, std::span<const double> fb,
             double wa, double wb, double dx, std::span<double> out, Exec exec);

/// Interior nodes: out[i] = u[i] + h k[i]; boundary nodes copied from u.
void axpy_interior(std::span<const double> u, std::span<const double> k, double h,
                   std::span<double> out, Exec exec);

/// Right-hand side of the trapezoidal step for interior node i = 1..n-2, stored at
/// rhs[i-1]: u (1 - dt/2) + r/2 (u[i-1] - 2u[i] + u[i+1]) + dt/2 (fa + fb), plus the
/// Dirichlet contributions r/2 u_lo and r/2 u_hi at the ends. r = dt / dx^2.
void cn_rhs(std::span<const double> u, std::span<const double> fa, std::span<const double> fb,
            double r, double dt, double u_lo, double u_hi, std::span<double> rhs, Exec exec);

/// LU factors of the constant tridiagonal matrix with sub/super diagonal `off`
/// and diagonal `diag`, for the Thomas algorithm.
class TridiagonalFactor {
public:
    TridiagonalFactor(std::size_t n, double diag, double off);
    std::size_t size() const { return inv_pivot_.size(); }
    /// Solves in place. The sweep is sequential by nature.
    void solve(std::span<double> d) const;

private:
    double off_;
    std::vector<double> cprime_, inv_pivot_;
};

/// max |a[i] - b[i]|.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace nwave::kernels

#endif

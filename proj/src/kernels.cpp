#include "nwave/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "nwave/errors.hpp"

namespace nwave::kernels {

namespace {

template <class Body>
void for_each_index(std::size_t begin, std::size_t end, Exec exec, Body body) {
    if (exec == Exec::Serial) {
        for (std::size_t i = begin; i < end; ++i) body(i);
        return;
    }
    const long b = static_cast<long>(begin), e = static_cast<long>(end);
#pragma omp parallel for schedule(static)
    for (long i = b; i < e; ++i) body(static_cast<std::size_t>(i));
}

void require_same(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw DomainError(std::string(what) + ": size mismatch");
}

}  // namespace

void birth_map(std::span<const double> u, std::span<double> out, const ModelParams& params,
               Exec exec) {
    require_same(u.size(), out.size(), "birth_map");
    const double p = params.p();
    for_each_index(0, u.size(), exec, [&](std::size_t i) { out[i] = p * u[i] * std::exp(-u[i]); });
}

void mol_rhs(std::span<const double> u, std::span<const double> fa, std::span<const double> fb,
             double wa, double wb, double dx, std::span<double> out, Exec exec) {
    const std::size_t n = u.size();
    require_same(n, out.size(), "mol_rhs");
    require_same(n, fa.size(), "mol_rhs");
    require_same(n, fb.size(), "mol_rhs");
    if (n < 3) throw DomainError("mol_rhs: need at least 3 nodes");
    const double inv_dx2 = 1.0 / (dx * dx);
    out[0] = out[n - 1] = 0.0;
    for_each_index(1, n - 1, exec, [&](std::size_t i) {
        out[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_dx2 - u[i] + wa * fa[i] + wb * fb[i];
    });
}

void axpy_interior(std::span<const double> u, std::span<const double> k, double h,
                   std::span<double> out, Exec exec) {
    const std::size_t n = u.size();
    require_same(n, out.size(), "axpy_interior");
    require_same(n, k.size(), "axpy_interior");
    out[0] = u[0];
    out[n - 1] = u[n - 1];
    for_each_index(1, n - 1, exec, [&](std::size_t i) { out[i] = u[i] + h * k[i]; });
}

void cn_rhs(std::span<const double> u, std::span<const double> fa, std::span<const double> fb,
            double r, double dt, double u_lo, double u_hi, std::span<double> rhs, Exec exec) {
    const std::size_t n = u.size();
    if (n < 3) throw DomainError("cn_rhs: need at least 3 nodes");
    require_same(n - 2, rhs.size(), "cn_rhs");
    require_same(n, fa.size(), "cn_rhs");
    require_same(n, fb.size(), "cn_rhs");
    const double keep = 1.0 - 0.5 * dt, half_r = 0.5 * r, half_dt = 0.5 * dt;
    for_each_index(1, n - 1, exec, [&](std::size_t i) {
        rhs[i - 1] = u[i] * keep + half_r * (u[i - 1] - 2.0 * u[i] + u[i + 1]) +
                     half_dt * (fa[i] + fb[i]);
    });
    rhs[0] += half_r * u_lo;
    rhs[n - 3] += half_r * u_hi;
}

TridiagonalFactor::TridiagonalFactor(std::size_t n, double diag, double off)
    : off_(off), cprime_(n), inv_pivot_(n) {
    if (n == 0) throw DomainError("tridiagonal: empty system");
    double pivot = diag;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) pivot = diag - off * cprime_[i - 1];
        if (pivot == 0.0) throw DomainError("tridiagonal: zero pivot");
        inv_pivot_[i] = 1.0 / pivot;
        cprime_[i] = off * inv_pivot_[i];
    }
}

void TridiagonalFactor::solve(std::span<double> d) const {
    const std::size_t n = size();
    require_same(n, d.size(), "tridiagonal solve");
    d[0] *= inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i) d[i] = (d[i] - off_ * d[i - 1]) * inv_pivot_[i];
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= cprime_[i] * d[i + 1];
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    require_same(a.size(), b.size(), "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace nwave::kernels

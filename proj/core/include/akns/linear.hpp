#pragma once

#include <vector>

#include "akns/algebra.hpp"
#include "akns/jet.hpp"

namespace akns {

// ForwardDnls: d/dt x_n = sum_k (-1)^(a-k) C(a,k) x_{n+k}, modes decay as (xi-1)^a.
// SymmetricAl: d/dt x_n = x_{n+1} - 2 x_n + x_{n-1}, only the first flow.
enum class LinearScheme { ForwardDnls, SymmetricAl };

struct LinearMode {
    cplx amplitude;
    cplx base;
};

cplx ipow(cplx base, long exponent);
cplx dispersion(cplx base, int alpha, LinearScheme scheme);

// x_n(t) = sum_s c_s xi_s^(n-1) exp(Lambda_s t)
class LinearSolution {
public:
    LinearSolution(std::vector<LinearMode> modes, int flowAlpha, LinearScheme scheme);

    const std::vector<LinearMode>& modes() const noexcept { return modes_; }
    const std::vector<cplx>& rates() const noexcept { return rates_; }
    int flowAlpha() const noexcept { return alpha_; }
    LinearScheme scheme() const noexcept { return scheme_; }

    Jet at(long n, double t) const;
    // |d/dt x_n - (lattice operator) x_n| at one point
    double residual(long n, double t) const;

private:
    std::vector<LinearMode> modes_;
    std::vector<cplx> rates_;
    int alpha_;
    LinearScheme scheme_;
};

// Throws DegenerateMode for a zero base, FlowUnsupported for symmetric alpha != 1.
LinearSolution buildLinearSolution(std::vector<LinearMode> modes, int flowAlpha, LinearScheme scheme);

}  // namespace akns

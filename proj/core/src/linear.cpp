#include "akns/linear.hpp"

#include <string>
#include <utility>

#include "akns/errors.hpp"

namespace akns {

cplx ipow(cplx base, long exponent) {
    if (exponent < 0) return 1.0 / ipow(base, -exponent);
    cplx result = 1.0;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

cplx dispersion(cplx base, int alpha, LinearScheme scheme) {
    if (base == cplx{}) throw DegenerateMode("zero base");
    if (scheme == LinearScheme::ForwardDnls) {
        if (alpha < 1) throw FlowUnsupported("flow index must be positive");
        return ipow(base - 1.0, alpha);
    }
    if (alpha != 1) throw FlowUnsupported("symmetric scheme only carries the first flow");
    const cplx s = std::sqrt(base);
    return (s - 1.0 / s) * (s - 1.0 / s);
}

LinearSolution::LinearSolution(std::vector<LinearMode> modes, int flowAlpha, LinearScheme scheme)
    : modes_(std::move(modes)), alpha_(flowAlpha), scheme_(scheme) {
    rates_.reserve(modes_.size());
    for (const auto& m : modes_) rates_.push_back(dispersion(m.base, alpha_, scheme_));
}

Jet LinearSolution::at(long n, double t) const {
    Jet sum;
    for (std::size_t s = 0; s < modes_.size(); ++s)
        sum += Jet(modes_[s].amplitude * ipow(modes_[s].base, n - 1)) * expRate(rates_[s], t);
    return sum;
}

double LinearSolution::residual(long n, double t) const {
    cplx rhs = 0.0;
    if (scheme_ == LinearScheme::SymmetricAl) {
        rhs = at(n + 1, t).v - 2.0 * at(n, t).v + at(n - 1, t).v;
    } else {
        double binom = 1.0;
        for (int k = 0; k <= alpha_; ++k) {
            const double sign = ((alpha_ - k) % 2 == 0) ? 1.0 : -1.0;
            rhs += sign * binom * at(n + k, t).v;
            binom = binom * (alpha_ - k) / (k + 1);
        }
    }
    return std::abs(at(n, t).d - rhs);
}

LinearSolution buildLinearSolution(std::vector<LinearMode> modes, int flowAlpha, LinearScheme scheme) {
    return LinearSolution(std::move(modes), flowAlpha, scheme);
}

}  // namespace akns

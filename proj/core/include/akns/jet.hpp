#pragma once

#include <complex>

namespace akns {

// First-order forward-mode dual number: value and d/dt. Closed-form solutions are
// evaluated on Jets so their time derivatives come out exactly, not by differencing.
struct Jet {
    std::complex<double> v{};
    std::complex<double> d{};

    Jet() = default;
    Jet(std::complex<double> value) : v(value) {}  // NOLINT: constants promote implicitly
    Jet(double value) : v(value) {}                 // NOLINT
    Jet(std::complex<double> value, std::complex<double> deriv) : v(value), d(deriv) {}

    Jet& operator+=(const Jet& o) { v += o.v; d += o.d; return *this; }
    Jet& operator-=(const Jet& o) { v -= o.v; d -= o.d; return *this; }
    Jet& operator*=(const Jet& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    Jet& operator/=(const Jet& o) {
        const auto q = v / o.v;
        d = (d - q * o.d) / o.v;
        v = q;
        return *this;
    }
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator-(const Jet& a) { return {-a.v, -a.d}; }

// e^{rate * t} with its derivative
inline Jet expRate(std::complex<double> rate, double t) {
    const auto e = std::exp(rate * t);
    return {e, rate * e};
}

inline Jet exp(const Jet& a) {
    const auto e = std::exp(a.v);
    return {e, e * a.d};
}

inline Jet log(const Jet& a) { return {std::log(a.v), a.d / a.v}; }

}  // namespace akns

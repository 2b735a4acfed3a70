#include "akns/conserved.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "akns/errors.hpp"

namespace akns {

SpectralMatrixPoly transferMatrix(const DnlsState& s) {
    s.validate();
    SpectralMatrixPoly t = laxPoly(s, 0);
    for (long n = 1; n < static_cast<long>(s.nSites()); ++n) t = polyMul(laxPoly(s, n), t);
    return t;
}

SpectralMatrixPoly transferMatrix(const AlState& s) {
    s.validate();
    SpectralMatrixPoly t = alLaxPoly(s, 0);
    for (long n = 1; n < static_cast<long>(s.nSites()); ++n) t = polyMul(alLaxPoly(s, n), t);
    return t;
}

cplx traceAt(const DnlsState& s, cplx lambda) {
    s.validate();
    CMatrix t = laxL(s, 0, lambda);
    for (long n = 1; n < static_cast<long>(s.nSites()); ++n) t = laxL(s, n, lambda) * t;
    return t.trace();
}

cplx traceAt(const AlState& s, cplx z) {
    s.validate();
    CMatrix t = alLax(s, 0, z);
    for (long n = 1; n < static_cast<long>(s.nSites()); ++n) t = alLax(s, n, z) * t;
    return t.trace();
}

std::vector<cplx> normalizedTraceCoefficients(const DnlsState& s, int upTo) {
    if (s.nDim != 1)
        throw NotNormalized("leading trace coefficient is " + std::to_string(s.nDim) + ", not 1");
    const SpectralMatrixPoly t = transferMatrix(s);
    const int top = static_cast<int>(s.nSites());
    std::vector<cplx> tau;
    for (int k = 0; k <= upTo; ++k) tau.push_back(t.coefficient(top - k).trace());
    return tau;
}

ChargeReport localCharges(const DnlsState& s, const std::vector<cplx>& samples) {
    s.validate();
    const long len = static_cast<long>(s.nSites());
    cplx h1 = 0.0, h2 = 0.0, h3 = 0.0, h4 = 0.0;
    for (long n = 0; n < len; ++n) {
        const CMatrix nn = s.bigN(n);
        const CMatrix nm = s.bigN(n - 1);
        const CMatrix nmm = s.bigN(n - 2);
        const CMatrix nn2 = nn * nn;
        const CMatrix nm2 = nm * nm;
        const CMatrix x = s.xAt(n);
        const CMatrix xy1 = x * s.yAt(n - 1);
        const CMatrix xy2 = x * s.yAt(n - 2);
        const CMatrix xy3 = x * s.yAt(n - 3);
        h1 += nn.trace();
        h2 += xy1.trace() - 0.5 * nn2.trace();
        h3 += xy2.trace() - ((nn + nm) * xy1).trace() + (nn2 * nn).trace() / 3.0;
        h4 += xy3.trace() - ((nmm + nm + nn) * xy2).trace() + (nm * nn * xy1).trace() + ((nm2 + nn2) * xy1).trace() -
              0.5 * (xy1 * xy1).trace() - (xy1 * s.xAt(n - 1) * s.yAt(n - 2)).trace() - 0.25 * (nn2 * nn2).trace();
    }
    ChargeReport r;
    r.h = {h1, h2, h3, h4};
    if (s.nDim == 1) r.tau = normalizedTraceCoefficients(s, 4);
    for (const cplx l : samples) r.traceSamples.emplace_back(l, traceAt(s, l));
    return r;
}

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// sum over j_1 + 2 j_2 + ... + (k-1) j_{k-1} = k of w(j) prod H_i^{j_i}
cplx partitionSum(const std::vector<cplx>& h, int k, ChargeWeight weight) {
    std::vector<int> j(static_cast<std::size_t>(k), 0);
    cplx total = 0.0;
    std::function<void(int, int)> walk = [&](int part, int remaining) {
        if (remaining == 0) {
            cplx term = 1.0;
            double prod = 1.0, biggest = 1.0;
            for (int i = 1; i < k; ++i) {
                if (j[i] == 0) continue;
                term *= std::pow(h[i], j[i]);
                prod *= factorial(j[i]);
                biggest = std::max(biggest, factorial(j[i]));
            }
            total += term / (weight == ChargeWeight::Multinomial ? prod : biggest);
            return;
        }
        if (part == 0) return;
        for (int m = 0; m * part <= remaining; ++m) {
            j[part] = m;
            walk(part - 1, remaining - m * part);
        }
        j[part] = 0;
    };
    walk(k - 1, k);
    return total;
}

}  // namespace

std::vector<cplx> chargeRecursion(const std::vector<cplx>& tau, int upTo, ChargeMode mode, ChargeWeight weight) {
    if (upTo < 1) throw UnvalidatedOrder("order must be at least 1");
    if (mode == ChargeMode::Validated && upTo > 4)
        throw UnvalidatedOrder("explicit relations stop at H_4, asked for H_" + std::to_string(upTo));
    if (static_cast<int>(tau.size()) <= upTo)
        throw DimensionError("need tau_0..tau_" + std::to_string(upTo));
    // h[0] unused so h[k] is H_k
    std::vector<cplx> h(static_cast<std::size_t>(upTo) + 1, 0.0);
    h[1] = tau[1];
    for (int k = 2; k <= upTo; ++k) {
        if (mode == ChargeMode::Experimental) {
            h[k] = tau[k] - partitionSum(h, k, weight);
            continue;
        }
        const cplx h1 = h[1], h2 = h[2], h3 = h[3];
        switch (k) {
            case 2: h[k] = tau[2] - 0.5 * h1 * h1; break;
            case 3: h[k] = tau[3] - h1 * h2 - h1 * h1 * h1 / 6.0; break;
            default:
                h[k] = tau[4] - h1 * h3 - 0.5 * h2 * h2 - 0.5 * h1 * h1 * h2 - h1 * h1 * h1 * h1 / 24.0;
        }
    }
    return {h.begin() + 1, h.end()};
}

}  // namespace akns

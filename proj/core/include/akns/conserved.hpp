#pragma once

#include <utility>
#include <vector>

#include "akns/al.hpp"
#include "akns/algebra.hpp"
#include "akns/dnls.hpp"

namespace akns {

// T = L_N ... L_1 as a polynomial in the spectral parameter
SpectralMatrixPoly transferMatrix(const DnlsState& s);
SpectralMatrixPoly transferMatrix(const AlState& s);

// tr T at one spectral value, from numeric Lax matrices
cplx traceAt(const DnlsState& s, cplx lambda);
cplx traceAt(const AlState& s, cplx z);

struct ChargeReport {
    std::vector<cplx> h;    // H_1..H_4
    std::vector<cplx> tau;  // tau_0..tau_4; empty when the block width exceeds 1
    std::vector<std::pair<cplx, cplx>> traceSamples;
};

// tau_k = coefficient of lambda^(N-k) in tr T, so that tau_0 = 1 for scalar X
// blocks. Throws NotNormalized when nDim > 1.
std::vector<cplx> normalizedTraceCoefficients(const DnlsState& s, int upTo = 4);

// Closed-form H_1..H_4. tau is filled only when nDim = 1. The closed forms match the
// log-expansion of tau only on lattices longer than k sites (shorter ones alias
// the shifted terms).
ChargeReport localCharges(const DnlsState& s, const std::vector<cplx>& samples = {});

enum class ChargeMode { Validated, Experimental };
enum class ChargeWeight { Multinomial, MaxFactorial };

// H_1..H_upTo from tau (tau[0] ignored). Validated mode uses the explicit k <= 4
// relations and throws UnvalidatedOrder above that; experimental mode runs the
// partition sum with the chosen weight.
std::vector<cplx> chargeRecursion(const std::vector<cplx>& tau, int upTo, ChargeMode mode = ChargeMode::Validated,
                                  ChargeWeight weight = ChargeWeight::Multinomial);

}  // namespace akns

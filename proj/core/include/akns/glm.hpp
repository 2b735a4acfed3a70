#pragma once

#include <cstddef>
#include <vector>

#include "akns/algebra.hpp"
#include "akns/darboux.hpp"

namespace akns {

// Exact integer matrix, used for the difference operators and their powers.
class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    long long& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    long long operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    bool operator==(const IntMatrix& o) const = default;

    CMatrix toComplex() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<long long> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix power(const IntMatrix& a, int alpha);

// D = sum_j (e_{j,j+1} - e_{jj}), D* = sum_j (e_{j+1,j} - e_{jj}) on 2N+1 indices.
struct DifferenceOps {
    long windowN;
    IntMatrix d;
    IntMatrix dStar;
};

DifferenceOps buildDifferenceOps(long windowN);
// sum_k (-1)^(alpha-k) C(alpha,k) e_{j,j+k} (or e_{j+k,j} for the star operator)
IntMatrix binomialPower(long windowN, int alpha, bool star);

enum class GlmScheme { ForwardBackward, Symmetric };

// One discrete mode: f_m = b e^{-lambda m + Lambda t}, fhat_m = bHat e^{-lambdaHat m + LambdaHat t}.
struct GlmMode {
    cplx lambda;
    cplx lambdaHat;
    CMatrix b;     // M x N
    CMatrix bHat;  // N x M
};

struct GlmConfig {
    GlmScheme scheme = GlmScheme::ForwardBackward;
    cplx w = 1.0;
    int alpha = 1;
    long windowN = 8;
    long firstIndex = 0;  // window is firstIndex .. firstIndex + 2 windowN
    double time = 0.0;
};

// (Lambda, LambdaHat) for one mode; symmetric scheme only has alpha = 1 (FlowUnsupported).
struct ModeRates {
    cplx rate;
    cplx rateHat;
};
ModeRates glmDispersion(cplx lambda, cplx lambdaHat, const GlmConfig& cfg);

// Hankel data f_{i+j}, fhat_{i+j} on the window; storage is by i + j.
class GlmSystem {
public:
    GlmSystem(std::vector<GlmMode> modes, GlmConfig cfg);

    const GlmConfig& config() const noexcept { return cfg_; }
    const std::vector<GlmMode>& modes() const noexcept { return modes_; }
    const std::vector<ModeRates>& rates() const noexcept { return rates_; }
    std::size_t nDim() const noexcept { return nDim_; }
    std::size_t mDim() const noexcept { return mDim_; }
    long firstIndex() const noexcept { return cfg_.firstIndex; }
    long lastIndex() const noexcept { return cfg_.firstIndex + 2 * cfg_.windowN; }
    std::size_t windowSize() const noexcept { return static_cast<std::size_t>(2 * cfg_.windowN + 1); }

    // stored values at the system time, m = i + j over the window
    const CMatrix& f(long m) const;
    const CMatrix& fHat(long m) const;
    // values and exact time derivatives at any (m, t)
    CMatrix fAt(long m, double t) const;
    CMatrix fHatAt(long m, double t) const;
    CMatrix fDot(long m, double t) const;
    CMatrix fHatDot(long m, double t) const;

    // largest |f| at the far corner of the window relative to the largest |f| anywhere
    double edgeDecay() const;

private:
    std::vector<GlmMode> modes_;
    GlmConfig cfg_;
    std::vector<ModeRates> rates_;
    std::size_t nDim_ = 0;
    std::size_t mDim_ = 0;
    std::vector<CMatrix> f_;
    std::vector<CMatrix> fHat_;
};

// Throws ModeOverflow when a mode is not finite on the window.
GlmSystem buildHankelData(std::vector<GlmMode> modes, const GlmConfig& cfg);

// max |d/dt f - stencil f| (and the same for fhat) at the given m and t
double linearResidual(const GlmSystem& sys, const std::vector<long>& ms, double t);

class GlmSolution {
public:
    GlmSolution(const GlmSystem& sys, CMatrix kPlus, CMatrix kMinus, double dglmResidual,
                double factorizationResidual);

    long firstIndex() const noexcept { return first_; }
    std::size_t windowSize() const noexcept { return count_; }

    // blocks of K+ (j >= i) by lattice index
    CMatrix a(long i, long j) const;
    CMatrix b(long i, long j) const;
    CMatrix c(long i, long j) const;
    CMatrix d(long i, long j) const;
    // full (N+M) square block of K- (j <= i)
    CMatrix kMinusBlock(long i, long j) const;

    const CMatrix& kPlus() const noexcept { return kPlus_; }
    const CMatrix& kMinus() const noexcept { return kMinus_; }
    // |K_ij + F_ij + sum_l K_il F_lj| over j >= i
    double dglmResidual() const noexcept { return dglm_; }
    // |(I + K+)(I + F) - (I + K-)|
    double factorizationResidual() const noexcept { return factor_; }

private:
    CMatrix plusBlock(long i, long j, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    long first_;
    std::size_t count_;
    std::size_t nDim_;
    std::size_t mDim_;
    CMatrix kPlus_;
    CMatrix kMinus_;
    double dglm_;
    double factor_;
};

// Row-window solves of B (I - f.fhat) = -fhat and C (I - fhat.f) = -f, then
// A = -B.f and D = -C.fhat. Throws SingularGlm.
GlmSolution solveGlm(const GlmSystem& sys);

// Dense (I + F) over the window, blocks [[0, fhat], [f, 0]].
CMatrix glmDenseF(const GlmSystem& sys);

struct GlmBlockGrid {
    long firstIndex;
    std::size_t count;
    std::vector<CMatrix> blocks;  // row-major over (k, j)
    const CMatrix& at(long k, long j) const;
};

struct GlmClosedForm {
    GlmBlockGrid b;
    GlmBlockGrid c;
};

// Single-mode closed form with bHat b bHat = kappa bHat taken from the pair.
// Throws DegenerateMode when lambda + lambdaHat = 0.
GlmClosedForm oneSolitonClosedForm(cplx lambda, cplx lambdaHat, const RankOnePair& pair, const GlmConfig& cfg);

struct LocalFields {
    long firstIndex;
    std::vector<CMatrix> x;  // B_nn
    std::vector<CMatrix> y;  // C_nn
};
LocalFields extractLocalFields(const GlmSolution& sol);

// Type2 parameters whose (x_n, y_{n-1}) at t = 0 are proportional to (B_nn, C_nn) of the
// single-mode GLM solution at cfg.time. Needs e^{-2 lambdaHat} + e^{2 lambda} = 2.
SolitonParams matchType2Parameters(cplx lambda, cplx lambdaHat, const RankOnePair& pair, const GlmConfig& cfg);

struct ProportionalFit {
    cplx constant;
    double relativeError;  // max |u - c v| / max |u|
};
// least-squares c in u ~ c v
ProportionalFit fitProportionality(const std::vector<cplx>& u, const std::vector<cplx>& v);

}  // namespace akns

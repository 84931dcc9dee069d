#pragma once

#include "shimorin/diskquad.hpp"
#include "shimorin/numeric.hpp"

#include <span>
#include <vector>

namespace shimorin {

/// Analytic function on the disk given by coefficients a_0..a_N.
struct TaylorFunction {
    std::vector<cplx> coeffs;

    std::size_t truncation() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    cplx operator()(cplx z) const;
    cplx derivative(cplx z) const;
    TaylorFunction derivative() const;
    SampledFunction sampled() const;
};

/// Settings for norms computed circle by circle with FFTs.
struct CircleOptions {
    /// Radial rule; only the radial fields are used.
    DiskRuleParams radial{};
    /// Angular nodes per circle are at least oversample * (effective degree + 1).
    int oversample = 4;
    std::size_t min_nodes = 64;
    /// Terms with |a_n| rho^n below cutoff * max_n |a_n| rho^n are dropped.
    double cutoff = 1e-17;
    /// Log-width of the weak-norm histogram bins.
    double weak_bin = 1e-3;
};

/// Smallest degree keeping every term above the cutoff at radius rho.
std::size_t effective_degree(std::span<const cplx> c, double rho, double cutoff);

/// Values of sum c_n rho^n e^{i n theta_j} at theta_j = 2 pi j / M.
void circle_values(std::span<const cplx> c, double rho, std::size_t M, std::size_t degree, std::vector<cplx>& out);

struct CircleNorms {
    double lp = 0.0;
    double weak = 0.0;
};

/// L^p norm and weak L^{p,infinity} quasi-norm of f over the disk. The weak
/// value is a histogram estimate, low by at most a factor exp(weak_bin).
CircleNorms taylor_norms(const TaylorFunction& f, double p, const CircleOptions& opt = {}, bool want_weak = false);

double taylor_lp_norm(const TaylorFunction& f, double p, const CircleOptions& opt = {});

/// |f(0)| + max over radii 1 - 2^{-j}, j <= depth, of (1-|z|^2)|f'(z)|.
double taylor_bloch(const TaylorFunction& f, int depth = 30, int oversample = 8);

}  // namespace shimorin

#include "shimorin/taylor.hpp"

#include "shimorin/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace shimorin {

namespace {

fftw_plan plan_for(std::size_t M) {
    static std::mutex mu;
    static std::map<std::size_t, fftw_plan> plans;
    std::lock_guard lock(mu);
    auto it = plans.find(M);
    if (it != plans.end()) return it->second;
    auto* in = fftw_alloc_complex(M);
    auto* out = fftw_alloc_complex(M);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(M), in, out, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans.emplace(M, p);
    return p;
}

std::size_t pow2_at_least(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

}  // namespace

cplx TaylorFunction::operator()(cplx z) const {
    cplx s = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * z + *it;
    return s;
}

cplx TaylorFunction::derivative(cplx z) const {
    cplx s = 0.0;
    for (std::size_t n = coeffs.size(); n-- > 1;) s = s * z + static_cast<double>(n) * coeffs[n];
    return s;
}

TaylorFunction TaylorFunction::derivative() const {
    TaylorFunction d;
    for (std::size_t n = 1; n < coeffs.size(); ++n) d.coeffs.push_back(static_cast<double>(n) * coeffs[n]);
    if (d.coeffs.empty()) d.coeffs.push_back(0.0);
    return d;
}

SampledFunction TaylorFunction::sampled() const {
    SampledFunction s;
    auto self = std::make_shared<TaylorFunction>(*this);
    s.f = [self](cplx z) { return (*self)(z); };
    s.df = [self](cplx z) { return self->derivative(z); };
    return s;
}

std::size_t effective_degree(std::span<const cplx> c, double rho, double cutoff) {
    if (c.empty()) return 0;
    double peak = 0.0;
    double lr = std::log(rho);
    std::vector<double> mag(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) {
        double a = std::abs(c[n]);
        mag[n] = a > 0.0 ? std::exp(std::log(a) + n * lr) : 0.0;
        peak = std::max(peak, mag[n]);
    }
    std::size_t last = 0;
    for (std::size_t n = 0; n < c.size(); ++n)
        if (mag[n] > cutoff * peak) last = n;
    return last;
}

void circle_values(std::span<const cplx> c, double rho, std::size_t M, std::size_t degree, std::vector<cplx>& out) {
    std::vector<cplx> in(M, 0.0);
    double p = 1.0;
    for (std::size_t n = 0; n <= degree && n < c.size(); ++n) {
        in[n % M] += c[n] * p;
        p *= rho;
    }
    out.assign(M, 0.0);
    fftw_execute_dft(plan_for(M), reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

CircleNorms taylor_norms(const TaylorFunction& f, double p, const CircleOptions& opt, bool want_weak) {
    if (!(p >= 1.0)) throw DomainError("taylor_norms: p must be >= 1");
    std::vector<double> rho, w;
    radial_rule(opt.radial, rho, w);
    const auto& c = f.coeffs;
    double bound = 0.0;
    for (const cplx& a : c) bound += std::abs(a);
    want_weak = want_weak && bound > 0.0;
    const double top = want_weak ? std::log(bound) : 0.0;
    const std::size_t bins = want_weak ? static_cast<std::size_t>(40.0 / opt.weak_bin) + 1 : 0;
    std::vector<double> hist(bins, 0.0);
    std::vector<double> lp_slot(rho.size(), 0.0);
    // Radii are processed in batches; per-batch histograms merge in radius order.
    const std::size_t batch = worker_count();
    for (std::size_t b0 = 0; b0 < rho.size(); b0 += batch) {
        std::size_t nb = std::min(batch, rho.size() - b0);
        std::vector<std::vector<double>> local(want_weak ? nb : 0);
        parallel_for(nb, [&](std::size_t k) {
            std::size_t i = b0 + k;
            std::size_t deg = effective_degree(c, rho[i], opt.cutoff);
            std::size_t M =
                pow2_at_least(std::max(opt.min_nodes, static_cast<std::size_t>(opt.oversample) * (deg + 1)));
            std::vector<cplx> vals;
            circle_values(c, rho[i], M, deg, vals);
            std::vector<double> terms(M);
            for (std::size_t j = 0; j < M; ++j) terms[j] = std::pow(std::abs(vals[j]), p);
            lp_slot[i] = w[i] * pairwise_sum(terms) / static_cast<double>(M);
            if (!want_weak) return;
            auto& h = local[k];
            h.assign(bins, 0.0);
            for (const cplx& v : vals) {
                double a = std::abs(v);
                if (a <= 0.0) continue;
                double idx = std::max(0.0, std::floor((top - std::log(a)) / opt.weak_bin));
                if (idx < static_cast<double>(bins)) h[static_cast<std::size_t>(idx)] += w[i] / static_cast<double>(M);
            }
        });
        for (const auto& h : local)
            for (std::size_t k = 0; k < bins; ++k) hist[k] += h[k];
    }
    CircleNorms out;
    out.lp = std::pow(pairwise_sum(lp_slot), 1.0 / p);
    double cum = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
        cum += hist[k];
        if (cum > 0.0) out.weak = std::max(out.weak, std::exp(top - (k + 1.0) * opt.weak_bin) * std::pow(cum, 1.0 / p));
    }
    return out;
}

double taylor_lp_norm(const TaylorFunction& f, double p, const CircleOptions& opt) {
    return taylor_norms(f, p, opt, false).lp;
}

double taylor_bloch(const TaylorFunction& f, int depth, int oversample) {
    TaylorFunction d = f.derivative();
    std::vector<double> radii;
    for (int j = 1; j <= depth; ++j) radii.push_back(1.0 - std::exp2(-j));
    std::vector<double> slot(radii.size(), 0.0);
    parallel_for(radii.size(), [&](std::size_t i) {
        std::size_t deg = effective_degree(d.coeffs, radii[i], 1e-17);
        std::size_t M = pow2_at_least(std::max<std::size_t>(64, static_cast<std::size_t>(oversample) * (deg + 1)));
        std::vector<cplx> vals;
        circle_values(d.coeffs, radii[i], M, deg, vals);
        double m = 0.0;
        for (const cplx& v : vals) m = std::max(m, std::abs(v));
        slot[i] = (1.0 - radii[i]) * (1.0 + radii[i]) * m;
    });
    double best = std::abs(d.coeffs[0]);
    for (double v : slot) best = std::max(best, v);
    return std::abs(f.coeffs.empty() ? cplx(0.0) : f.coeffs[0]) + best;
}

}  // namespace shimorin

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shimorin/errors.hpp"
#include "shimorin/measure.hpp"

#include <cmath>

using namespace shimorin;

namespace {

// Simpson's rule; the oracles below never touch the library's quadrature.
template <class F>
double simpson(F f, double a, double b, int n = 4000) {
    double h = (b - a) / n, s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double nu_alpha_norm(double a) { return std::tgamma(a - 1.0) * std::tgamma(2.0 - a); }

// nu_alpha([1-t, 1)) with u = v^{1/(2-alpha)} removing the endpoint power.
double nu_alpha_tail_oracle(double a, double t) {
    double e = 2.0 - a;
    double v = simpson([&](double v) {
        double u = std::pow(v, 1.0 / e);
        return std::pow(1.0 - u, a - 2.0);
    }, 0.0, std::pow(t, e));
    return v / e / nu_alpha_norm(a);
}

}  // namespace

TEST_CASE("total mass of catalog measures") {
    CHECK(total_mass(RadialMeasure::lebesgue()) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(total_mass(RadialMeasure::delta(0.3, 2.5)) == 2.5);
    CHECK(total_mass(RadialMeasure::power(3.0, -0.5)) == doctest::Approx(6.0).epsilon(1e-14));
    for (double a : {1.25, 1.5, 1.75}) CHECK(total_mass(RadialMeasure::nu_alpha(a)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tail mass against closed forms and an independent Simpson oracle") {
    CHECK(tail_mass(RadialMeasure::lebesgue(), 0.25) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(tail_mass(RadialMeasure::power(1.0, -0.5), 0.01) == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(tail_mass(RadialMeasure::delta(1.0), 0.5) == 0.0);
    CHECK(tail_mass(RadialMeasure::delta(0.8), 0.5) == 1.0);
    for (double a : {1.25, 1.5, 1.75})
        for (double t : {0.5, 0.1, 1e-3})
            CHECK(tail_mass(RadialMeasure::nu_alpha(a), t) == doctest::Approx(nu_alpha_tail_oracle(a, t)).epsilon(1e-8));
    CHECK_THROWS_AS(tail_mass(RadialMeasure::lebesgue(), 0.0), DomainError);
    CHECK_THROWS_AS(tail_mass(RadialMeasure::lebesgue(), 1.5), DomainError);
}

TEST_CASE("singular moments") {
    auto leb = singular_moment(RadialMeasure::lebesgue(), 0.5);
    REQUIRE(leb.finite);
    CHECK(leb.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(singular_moment(RadialMeasure::lebesgue(), 1.0), DomainError);
    CHECK(singular_moment(RadialMeasure::delta(0.75), 0.5).value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_FALSE(singular_moment(RadialMeasure::delta(1.0), 0.1).finite);
    // nu_alpha: Beta-function value B(alpha-1, 2-alpha-s) / (Gamma(alpha-1) Gamma(2-alpha)).
    for (double a : {1.25, 1.5, 1.75}) {
        double s = 0.5 * (2.0 - a);
        double oracle = std::tgamma(2.0 - a - s) / (std::tgamma(1.0 - s) * std::tgamma(2.0 - a));
        auto v = singular_moment(RadialMeasure::nu_alpha(a), s);
        REQUIRE(v.finite);
        CHECK(v.value == doctest::Approx(oracle).epsilon(1e-9));
        CHECK_FALSE(singular_moment(RadialMeasure::nu_alpha(a), 2.0 - a + 0.01).finite);
    }
    // (1-r^2)^{-s} against Simpson after u = v^2 for Lebesgue.
    double s = 0.5;
    double oracle = simpson([&](double v) { return 2.0 * v * std::pow(v * v * (2.0 - v * v), -s); }, 1e-12, 1.0, 20000);
    CHECK(singular_moment_sq(RadialMeasure::lebesgue(), s).value == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("truncation probe separates finite, logarithmic and power growth") {
    auto fin = probe_truncation([](double e) { return 1.0 - e; });
    CHECK(fin.finite);
    CHECK(fin.value == doctest::Approx(1.0).epsilon(1e-9));
    auto lg = probe_truncation([](double e) { return std::log(1.0 / e); });
    CHECK_FALSE(lg.finite);
    CHECK(lg.growth_exponent == doctest::Approx(0.0));
    auto pw = probe_truncation([](double e) { return std::pow(e, -0.5); });
    CHECK_FALSE(pw.finite);
    CHECK(pw.growth_exponent == doctest::Approx(0.5).epsilon(1e-6));
    // The quadrature-truncated moment agrees with the probe at a divergent s.
    CHECK_FALSE(probe_truncation([](double e) { return truncated_singular_moment(RadialMeasure::lebesgue(), 1.0, e); }).finite);
}

TEST_CASE("critical index catalog and bisection route") {
    CHECK(critical_index(RadialMeasure::delta(1.0)).c == 1.0);
    CHECK(critical_index(RadialMeasure::delta(0.0)).c == 2.0);
    CHECK(critical_index(RadialMeasure::lebesgue()).c == 2.0);
    for (double a : {1.25, 1.5, 1.75})
        CHECK(critical_index(RadialMeasure::nu_alpha(a)).c == doctest::Approx(2.0 / a).epsilon(1e-12));
    for (double b : {-0.75, -0.5, -0.25}) {
        RadialMeasure mu = RadialMeasure::power(1.0, b);
        double expect = 2.0 / (2.0 - (b + 1.0));
        CHECK(critical_index(mu).c == doctest::Approx(expect).epsilon(1e-12));
        CriticalIndex bis = critical_index_bisect(mu);
        CHECK_FALSE(bis.closed_form);
        CHECK(std::abs(bis.c - expect) <= 1e-3);
    }
    CHECK(std::abs(critical_index_bisect(RadialMeasure::nu_alpha(1.5)).c - 4.0 / 3.0) <= 1e-3);
}

TEST_CASE("Carleson constants use the closed tail") {
    auto p = carleson_constant(RadialMeasure::power(1.0, -0.5), 0.5);
    REQUIRE(p.finite);
    CHECK(p.value == doctest::Approx(2.0).epsilon(1e-9));
    auto leb = carleson_constant(RadialMeasure::lebesgue(), 1.0);
    REQUIRE(leb.finite);
    CHECK(leb.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(carleson_constant(RadialMeasure::lebesgue(), 1.5).finite);
    CHECK_FALSE(carleson_constant(RadialMeasure::delta(1.0), 0.5).finite);
    // Atom at 0.9 with mass 1: sup of 1/t^a over t >= 0.1 is 0.1^{-a}.
    auto d = carleson_constant(RadialMeasure::delta(0.9), 0.5);
    REQUIRE(d.finite);
    CHECK(d.value == doctest::Approx(std::pow(0.1, -0.5)).epsilon(1e-9));
}

TEST_CASE("hyperbolic integral") {
    CHECK(hyperbolic_integral(RadialMeasure::delta(0.0)).value == doctest::Approx(1.0));
    CHECK_FALSE(hyperbolic_integral(RadialMeasure::lebesgue()).finite);
    // The integral runs over [0,1), so an atom at 1 contributes nothing.
    CHECK(hyperbolic_integral(RadialMeasure::delta(1.0)).value == 0.0);
    // power beta = 0.5: int u^{1/2} / (u (2-u)) du with u = v^2.
    double oracle = simpson([](double v) { return 2.0 / (2.0 - v * v); }, 0.0, 1.0);
    auto h = hyperbolic_integral(RadialMeasure::power(1.0, 0.5));
    REQUIRE(h.finite);
    CHECK(h.value == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("measure specs parse and round-trip") {
    CHECK(RadialMeasure::parse("nu_alpha:1.5").densities().at(0).alpha == 1.5);
    CHECK(RadialMeasure::parse("power:2,-0.5").densities().at(0).kappa == 2.0);
    CHECK(RadialMeasure::parse("delta:0.5,3").atoms().at(0).mass == 3.0);
    RadialMeasure mu = RadialMeasure::parse(R"({"atoms":[{"x":1,"mass":0.5}],"densities":[{"kind":"power","beta":0.5}]})");
    CHECK(mu.has_atom_at_one());
    CHECK(RadialMeasure::parse(mu.id()).id() == mu.id());
    CHECK_THROWS_AS(RadialMeasure::parse("nonsense"), ConfigError);
    CHECK_THROWS_AS(RadialMeasure::parse("{\"atoms\":[{\"x\":2,\"mass\":1}]}"), ConfigError);
    CHECK_THROWS_AS(RadialMeasure::parse("{\"densities\":[{\"kind\":\"power\",\"beta\":-1.5}]}"), ConfigError);
    CHECK_THROWS_AS(RadialMeasure::parse("{bad json"), ConfigError);
    auto tab = RadialMeasure::parse(R"({"densities":[{"kind":"tabulated","r":[0,0.5,1],"density":[1,1,1]}]})");
    CHECK(total_mass(tab) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(critical_index(tab).c == 2.0);
}

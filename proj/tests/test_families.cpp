#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "sip/families.hpp"

using Catch::Approx;
using sip::FamilyId;

namespace {

constexpr double pi = std::numbers::pi;

sip::ConstructionData one_coupling(std::vector<double> m, const std::string& src, double beta, double d) {
    const auto n = m.size();
    return {sip::ParamVector(std::move(m)), {{sip::require_invariant(src, n), beta, d}}, std::nullopt};
}

// sin^2(2 pi m) + cos(2 pi m) + 1 in long double
long double periodic_i1(long double m) {
    const long double s = std::sin(2 * std::numbers::pi_v<long double> * m);
    return s * s + std::cos(2 * std::numbers::pi_v<long double> * m) + 1;
}

// Expanded partner potentials exactly as displayed per family: {V, Vtilde}.
std::pair<double, double> displayed_partners(const sip::FamilyParams& fp, double x) {
    const double e = fp.eps, r = fp.rho;
    switch (fp.id) {
        case FamilyId::Scarf2: {
            const double t = std::tanh(x), s = 1 / std::cosh(x);
            return {e * e * t * t + r * (2 * e + 1) * t * s + (r * r - e) * s * s,
                    e * e * t * t + r * (2 * e - 1) * t * s + (r * r + e) * s * s};
        }
        case FamilyId::PoschlTeller: {
            const double c = 1 / std::tanh(x), s = 1 / std::sinh(x);
            return {e * e * c * c - r * (2 * e + 1) * c * s + (r * r + e) * s * s,
                    e * e * c * c - r * (2 * e - 1) * c * s + (r * r - e) * s * s};
        }
        case FamilyId::Morse: {
            const double q = std::exp(-x);
            return {r * r * q * q - r * (2 * e + 1) * q + e * e, r * r * q * q - r * (2 * e - 1) * q + e * e};
        }
        case FamilyId::MorseMirror: {
            const double q = std::exp(x);
            return {r * r * q * q + r * (2 * e + 1) * q + e * e, r * r * q * q + r * (2 * e - 1) * q + e * e};
        }
        case FamilyId::RadialOsc:
            return {r * r * x * x + r * (2 * e - 1) + e * (e + 1) / (x * x),
                    r * r * x * x + r * (2 * e + 1) + e * (e - 1) / (x * x)};
        case FamilyId::HarmOsc: {
            const double b = fp.beta;
            return {r * r + 2 * r * b * x + b * (b * x * x - 1), r * r + 2 * r * b * x + b * (b * x * x + 1)};
        }
        case FamilyId::Scarf1: {
            const double t = std::tan(x), s = 1 / std::cos(x);
            return {e * e * t * t + r * (2 * e + 1) * t * s + (r * r + e) * s * s,
                    e * e * t * t + r * (2 * e - 1) * t * s + (r * r - e) * s * s};
        }
        case FamilyId::Scarf1Cot: {
            const double c = 1 / std::tan(x), s = 1 / std::sin(x);
            return {e * e * c * c + r * (2 * e + 1) * c * s + (r * r + e) * s * s,
                    e * e * c * c + r * (2 * e - 1) * c * s + (r * r - e) * s * s};
        }
        case FamilyId::RosenMorse2: {
            const double t = std::tanh(x), s = 1 / std::cosh(x);
            return {e * e * t * t + 2 * r * t - e * s * s + r * r / (e * e),
                    e * e * t * t + 2 * r * t + e * s * s + r * r / (e * e)};
        }
        case FamilyId::Eckart: {
            const double c = 1 / std::tanh(x), s = 1 / std::sinh(x);
            return {e * e * c * c + 2 * r * c + e * s * s + r * r / (e * e),
                    e * e * c * c + 2 * r * c - e * s * s + r * r / (e * e)};
        }
        case FamilyId::Coulomb:
            return {2 * r / x + e * (e + 1) / (x * x) + r * r / (e * e), 2 * r / x + e * (e - 1) / (x * x) + r * r / (e * e)};
        case FamilyId::RosenMorse1: {
            const double t = std::tan(x), s = 1 / std::cos(x);
            return {e * e * t * t - 2 * r * t + e * s * s + r * r / (e * e),
                    e * e * t * t - 2 * r * t - e * s * s + r * r / (e * e)};
        }
        case FamilyId::RosenMorse1Cot: {
            const double c = 1 / std::tan(x), s = 1 / std::sin(x);
            return {e * e * c * c + 2 * r * c + e * s * s + r * r / (e * e),
                    e * e * c * c + 2 * r * c - e * s * s + r * r / (e * e)};
        }
    }
    return {0, 0};
}

// One valid (first, rho) pair per family.
sip::FamilyParams sample(FamilyId id) {
    switch (id) {
        case FamilyId::Scarf2: return sip::effective_family(id, 3.2, 0.4);
        case FamilyId::PoschlTeller: return sip::effective_family(id, 3.2, 5.5);
        case FamilyId::Morse: return sip::effective_family(id, 2.5, 1.0);
        case FamilyId::MorseMirror: return sip::effective_family(id, 2.5, -1.0);
        case FamilyId::RadialOsc: return sip::effective_family(id, -0.5, 1.0);
        case FamilyId::HarmOsc: return sip::effective_family(id, 1.0, 0.3);
        case FamilyId::Scarf1:
        case FamilyId::Scarf1Cot: return sip::effective_family(id, -1.3, 0.4);
        case FamilyId::RosenMorse2: return sip::effective_family(id, 4.0, 1.0);
        case FamilyId::Eckart: return sip::effective_family(id, -2.0, -12.0);
        case FamilyId::Coulomb: return sip::effective_family(id, -1.5, -0.75);
        case FamilyId::RosenMorse1:
        case FamilyId::RosenMorse1Cot: return sip::effective_family(id, -1.2, 0.8);
    }
    return {};
}

}  // namespace

TEST_CASE("family table", "[families]") {
    REQUIRE(sip::kFamilies.size() == 13);
    CHECK(sip::family_key(FamilyId::Scarf2) == "scarf2");
    CHECK(sip::family_key(FamilyId::RosenMorse1Cot) == "rosen-morse1-cot");
    for (const auto& f : sip::kFamilies) CHECK(sip::parse_family_id(f.key) == f.id);
    CHECK_THROWS_AS(sip::parse_family_id("scarf3"), sip::ConfigError);
    int generalized = 0;
    for (const auto& f : sip::kFamilies) generalized += f.generalized;
    CHECK(generalized == 5);
    CHECK(sip::family_info(FamilyId::Morse).alpha == 1.0);
    CHECK(sip::family_info(FamilyId::HarmOsc).alpha == 0.0);
    CHECK(sip::family_info(FamilyId::Coulomb).alpha == 0.0);
    CHECK(sip::family_info(FamilyId::RosenMorse1).alpha == -1.0);
}

TEST_CASE("domains and windows", "[families]") {
    const auto d = sip::family_domain(FamilyId::Scarf1);
    CHECK(d.lo == -pi / 2);
    CHECK(d.hi == pi / 2);
    CHECK(d.delta == Approx(1e-3 * pi));
    CHECK(sip::family_domain(FamilyId::RosenMorse2).lo == -INFINITY);
    CHECK(sip::family_domain(FamilyId::Eckart).lo == 0.0);
    CHECK(sip::family_domain(FamilyId::Scarf1Cot).hi == pi);
    const auto w = sip::default_window(FamilyId::RadialOsc);
    CHECK(w.a == 1e-3);
    CHECK(w.b == 8.0);
    CHECK(sip::default_window(FamilyId::Coulomb).b == 20.0);
}

TEST_CASE("one-parameter periodic invariant folds into Scarf1", "[families]") {
    const auto fp = sip::build_family(FamilyId::Scarf1, one_coupling({0.2}, "sin(2*pi*m1)^2+cos(2*pi*m1)+1", 0.05, 0.1));
    const long double i1 = periodic_i1(0.2L);
    CHECK(fp.eps == Approx(double(0.2L - 0.05L * i1)).epsilon(1e-14));
    CHECK(fp.rho == Approx(double(0.1L * i1)).epsilon(1e-14));
    CHECK(fp.eps == Approx(0.089324).margin(1e-6));
    CHECK(fp.rho == Approx(0.221352).margin(1e-6));
    CHECK(fp.alpha == -1.0);
}

TEST_CASE("three-parameter invariant folds into Scarf1", "[families]") {
    const std::string src = "sin(2*pi*M)+sin(M-m1)^2+sin(M-m2)^2+cos(M-m3)^2";
    const auto fp = sip::build_family(FamilyId::Scarf1, one_coupling({0.1, 0.2, 0.3}, src, 0.05, 0.1));
    const double M = 0.2;
    const double i1 = std::sin(2 * pi * M) + std::pow(std::sin(M - 0.1), 2) + std::pow(std::sin(M - 0.2), 2) +
                      std::pow(std::cos(M - 0.3), 2);
    CHECK(fp.eps == Approx(M - 0.05 * i1).epsilon(1e-13));
    CHECK(fp.rho == Approx(0.1 * i1).epsilon(1e-13));
}

TEST_CASE("vanishing couplings leave eps = M", "[families]") {
    for (auto id : {FamilyId::Scarf2, FamilyId::PoschlTeller, FamilyId::Morse, FamilyId::MorseMirror}) {
        const auto fp = sip::detail::fold(id, one_coupling({1.0, 2.0, 3.0}, "1", 0.0, 0.0));
        CHECK(fp.eps == 2.0);
        CHECK(fp.rho == 0.0);
    }
    CHECK(sip::build_family(FamilyId::Scarf2, one_coupling({1.0, 2.0, 3.0}, "1", 0.0, 0.0)).eps == 2.0);
    // rho = 0 sits outside the Poschl-Teller and Morse ranges
    CHECK_THROWS_AS(sip::build_family(FamilyId::PoschlTeller, one_coupling({1.0, 2.0, 3.0}, "1", 0.0, 0.0)),
                    sip::RangeError);
    CHECK_THROWS_AS(sip::build_family(FamilyId::Morse, one_coupling({1.0, 2.0, 3.0}, "1", 0.0, 0.0)),
                    sip::RangeError);
}

TEST_CASE("folding conventions per family", "[families]") {
    // m = (1.2), I = 1, beta = 0.5, d = 0.25
    auto build = [](FamilyId id, std::optional<std::string> rho_src = std::nullopt) {
        auto data = one_coupling({1.2}, "1", 0.5, 0.25);
        if (rho_src) data.rho_invariant = sip::require_invariant(*rho_src, 1);
        return sip::detail::fold(id, data);
    };
    CHECK(build(FamilyId::Morse).eps == Approx(1.7));
    CHECK(build(FamilyId::Morse).rho == Approx(0.25));
    CHECK(build(FamilyId::RadialOsc).eps == Approx(1.45));
    CHECK(build(FamilyId::RadialOsc).rho == Approx(0.25));
    CHECK(build(FamilyId::HarmOsc).beta == Approx(0.5));
    CHECK(build(FamilyId::HarmOsc).rho == Approx(0.25));
    CHECK(build(FamilyId::Scarf1).eps == Approx(0.7));
    CHECK(build(FamilyId::Coulomb, "cos(2*pi*m1) + 2").eps == Approx(1.45));
    CHECK(build(FamilyId::Coulomb, "cos(2*pi*m1) + 2").rho == Approx(std::cos(2 * pi * 1.2) + 2).epsilon(1e-14));
}

TEST_CASE("construction errors", "[families]") {
    sip::ConstructionData data{sip::ParamVector{0.2}, {}, std::nullopt};
    CHECK_THROWS_AS(sip::build_family(FamilyId::Scarf2, data), sip::ConfigError);

    // parsed but never verified
    data.couplings.push_back({sip::parse_invariant("1"), 0.0, 0.0});
    CHECK_THROWS_AS(sip::build_family(FamilyId::Scarf2, data), sip::ConfigError);

    auto ok = one_coupling({3.0}, "1", 0.0, 0.0);
    CHECK_THROWS_AS(sip::build_family(FamilyId::Coulomb, ok), sip::ConfigError);
    ok.rho_invariant = sip::require_invariant("1", 1);
    CHECK_THROWS_AS(sip::build_family(FamilyId::Scarf2, ok), sip::ConfigError);

    // m2 referenced with one parameter
    auto two = one_coupling({1.0, 2.0}, "(m2 - m1)/2", 0.0, 0.0);
    two.p = sip::ParamVector{1.0};
    CHECK_THROWS_AS(sip::build_family(FamilyId::Scarf2, two), sip::RangeError);
}

TEST_CASE("range violations name the inequality", "[families]") {
    try {
        sip::effective_family(FamilyId::PoschlTeller, 3.0, 1.0);
        FAIL("expected a range error");
    } catch (const sip::RangeError& e) {
        CHECK(std::string(e.what()).find("eps - rho < 1/2") != std::string::npos);
    }
    CHECK_THROWS_AS(sip::effective_family(FamilyId::Scarf2, -1.0, 0.0), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::Morse, 1.0, -1.0), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::MorseMirror, 1.0, 1.0), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::RadialOsc, 0.6, 1.0), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::HarmOsc, 0.0, 1.0), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::Scarf1, 0.0, 0.6), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::RosenMorse2, 1.0, 2.0), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::Coulomb, -1.0, 1.0), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::Coulomb, 0.0, 1.0), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::RosenMorse1, 0.7, 1.0), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::Scarf2, NAN, 0.0), sip::RangeError);
}

TEST_CASE("superpotential examples", "[families]") {
    const auto s = sip::superpotential(sip::effective_family(FamilyId::Scarf2, 2.0, 0.0), 1.0);
    CHECK(s.value == Approx(2 * std::tanh(1.0)).epsilon(1e-15));
    CHECK(s.value == Approx(1.5232).margin(1e-4));
    CHECK(s.derivative == Approx(2 / std::pow(std::cosh(1.0), 2)).epsilon(1e-15));
    CHECK(s.derivative == Approx(0.8399).margin(1e-4));

    const auto h = sip::superpotential(sip::effective_family(FamilyId::HarmOsc, 1.0, 0.0), 0.7);
    CHECK(h.value == Approx(0.7));
    CHECK(h.derivative == 1.0);

    CHECK_THROWS_AS(sip::effective_family(FamilyId::Eckart, 0.6, 0.0), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::Eckart, 0.4, -0.2), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::Eckart, -2.0, 5.0), sip::RangeError);
    CHECK_THROWS_AS(sip::effective_family(FamilyId::Eckart, -3.0, -6.0), sip::RangeError);
    const auto e = sip::superpotential(sip::effective_family(FamilyId::Eckart, 0.3, 0.06), 1.0);
    CHECK(e.value == Approx(0.3 / std::tanh(1.0) + 0.2).epsilon(1e-15));
    CHECK(e.value == Approx(0.593911).margin(1e-6));

    CHECK_THROWS_AS(sip::superpotential(sample(FamilyId::Coulomb), 0.0), sip::DomainError);
    CHECK_THROWS_AS(sip::superpotential(sample(FamilyId::Scarf1), pi / 2), sip::DomainError);
}

TEST_CASE("closed-form derivative matches finite differences", "[families]") {
    const double h = 1e-4;
    for (const auto& f : sip::kFamilies) {
        const auto fp = sample(f.id);
        const auto w = sip::default_window(f.id);
        for (int i = 1; i < 20; ++i) {
            const double x = w.a + (w.b - w.a) * i / 20.0;
            auto k = [&](double t) { return sip::superpotential(fp, t).value; };
            const double fd = (-k(x + 2 * h) + 8 * k(x + h) - 8 * k(x - h) + k(x - 2 * h)) / (12 * h);
            const double d = sip::superpotential(fp, x).derivative;
            INFO(f.key << " x=" << x);
            CHECK(std::abs(fd - d) <= 1e-7 * std::max(1.0, std::abs(d)));
        }
    }
}

TEST_CASE("partner potentials agree with the displayed expansions", "[families]") {
    for (const auto& f : sip::kFamilies) {
        const auto fp = sample(f.id);
        const auto w = sip::default_window(f.id);
        for (int i = 0; i <= 40; ++i) {
            const double x = w.a + (w.b - w.a) * i / 40.0;
            const auto p = sip::partner_potentials(fp, x);
            const auto [v, vt] = displayed_partners(fp, x);
            INFO(f.key << " x=" << x);
            CHECK(std::abs(p.V - v) <= 1e-12 * std::max(1.0, std::abs(v)));
            CHECK(std::abs(p.Vtilde - vt) <= 1e-12 * std::max(1.0, std::abs(vt)));
        }
    }
}

TEST_CASE("partner potential examples", "[families]") {
    const auto h = sip::partner_potentials(sip::effective_family(FamilyId::HarmOsc, 1.0, 0.0), 0.5);
    CHECK(h.V == Approx(-0.75));
    CHECK(h.Vtilde == Approx(1.25));
    CHECK(sip::partner_potentials(sip::effective_family(FamilyId::Morse, 2.5, 1.0), 0.0).V == Approx(1.25));
    CHECK(sip::partner_potentials(sip::effective_family(FamilyId::Scarf2, 1.0, 0.0), 0.0).V == Approx(-1.0));
}

TEST_CASE("remainder examples", "[families]") {
    CHECK(sip::remainder(sip::effective_family(FamilyId::Scarf2, 2.0, 0.0)) == 5.0);
    CHECK(sip::remainder(sip::effective_family(FamilyId::RadialOsc, 0.0, 0.5)) == 2.0);
    CHECK(sip::remainder(sip::effective_family(FamilyId::RosenMorse2, 3.0, 1.0)) == Approx(7.0 - 7.0 / 144.0));
    CHECK(sip::remainder(sip::effective_family(FamilyId::RosenMorse2, 3.0, 1.0)) == Approx(6.951389).margin(1e-6));
    CHECK(sip::remainder(sip::effective_family(FamilyId::HarmOsc, 1.5, 0.0)) == 3.0);
    CHECK(sip::remainder(sip::effective_family(FamilyId::Scarf1, 0.1, 0.0)) == Approx(-1.2));
}

TEST_CASE("remainder equals the construction formula", "[families]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    const FamilyId base[] = {FamilyId::Scarf2, FamilyId::PoschlTeller, FamilyId::Morse,  FamilyId::MorseMirror,
                             FamilyId::RadialOsc, FamilyId::HarmOsc, FamilyId::Scarf1, FamilyId::Scarf1Cot};
    for (auto id : base) {
        for (int trial = 0; trial < 8; ++trial) {
            auto data = one_coupling({u(rng), u(rng)}, "sin(2*pi*m1)^2 + (m2 - m1)^2", u(rng), u(rng));
            data.couplings.push_back({sip::require_invariant("cos(2*pi*m2)", 2), u(rng), u(rng)});
            const auto fp = sip::detail::fold(id, data);
            double sum_beta = 0.0;
            for (const auto& c : data.couplings) sum_beta += c.beta * c.invariant(data.p);
            const double want = (2 * data.p.mean() + 1) * fp.alpha + 2 * sum_beta;
            INFO(sip::family_key(id));
            CHECK(std::abs(sip::remainder_from_construction(fp) - want) <= 1e-12);
            CHECK(std::abs(sip::remainder(fp) - want) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(sip::remainder_from_construction(sample(FamilyId::Scarf2)), sip::ConfigError);
}

TEST_CASE("translation", "[families]") {
    const auto s = sip::translate_family(sip::effective_family(FamilyId::Scarf2, 3.2, 0.4), 1);
    CHECK(s.eps == Approx(2.2));
    CHECK(s.rho == 0.4);
    const auto h0 = sip::effective_family(FamilyId::HarmOsc, 1.3, 0.2);
    const auto h2 = sip::translate_family(h0, 2);
    CHECK(h2.beta == h0.beta);
    CHECK(h2.rho == h0.rho);

    const auto fp = sip::build_family(FamilyId::Scarf1, one_coupling({0.2}, "sin(2*pi*m1)^2+cos(2*pi*m1)+1", 0.05, 0.1));
    const auto down = sip::translate_family(fp, 1);
    CHECK(std::abs(down.eps - (fp.eps - 1)) <= 1e-14);
    CHECK(std::abs(down.rho - fp.rho) <= 1e-14);
    CHECK(down.provenance->p[0] == Approx(-0.8));

    CHECK_THROWS_AS(sip::translate_family(sip::effective_family(FamilyId::Scarf2, 0.4, 0.0), 1), sip::RangeError);
    CHECK_THROWS_AS(sip::translate_family(fp, 0), sip::RangeError);
}

TEST_CASE("Riccati and linear equations for G and v", "[families]") {
    for (const auto& f : sip::kFamilies) {
        const auto w = sip::default_window(f.id);
        for (int i = 0; i <= 50; ++i) {
            const double x = w.a + (w.b - w.a) * i / 50.0;
            const auto r = sip::riccati_basis(f.id, x);
            INFO(f.key << " x=" << x);
            const double scale = 1.0 + r.G * r.G;
            CHECK(std::abs(r.dG + r.G * r.G - r.alpha) <= 1e-10 * scale);
            if (f.generalized) continue;
            // v_beta carries beta_j = 1, v_d carries beta_j = 0
            CHECK(std::abs(r.dvb + r.vb * r.G - 1.0) <= 1e-10 * scale);
            CHECK(std::abs(r.dvd + r.vd * r.G) <= 1e-10 * scale * (1.0 + std::abs(r.vd)));
        }
    }
}

TEST_CASE("superpotential equals the Riccati assembly", "[families]") {
    auto data = one_coupling({0.3, 0.1}, "cos(2*pi*m1) + 2", 0.07, 0.2);
    for (auto id : {FamilyId::Scarf2, FamilyId::PoschlTeller, FamilyId::Morse, FamilyId::MorseMirror,
                    FamilyId::HarmOsc, FamilyId::Scarf1, FamilyId::Scarf1Cot}) {
        const auto fp = sip::detail::fold(id, data);
        const double I = data.couplings[0].invariant(data.p);
        const double M = data.p.mean();
        const auto w = sip::default_window(id);
        for (int i = 0; i <= 10; ++i) {
            const double x = w.a + (w.b - w.a) * i / 10.0;
            const auto r = sip::riccati_basis(id, x);
            const double k = I * (0.07 * r.vb + 0.2 * r.vd) + M * r.G;
            INFO(sip::family_key(id) << " x=" << x);
            CHECK(sip::superpotential(fp, x).value == Approx(k).epsilon(1e-12).margin(1e-12));
        }
    }
}

TEST_CASE("classic two-parameter reconstructions", "[families]") {
    const auto pt2 = sip::classic_reconstruction(sip::Classic::PT2, 1.5, 2.5, 1.0);
    CHECK(pt2.lhs == Approx(1.5 * std::tanh(1.0) + 2.5 / std::tanh(1.0)).epsilon(1e-14));
    CHECK(pt2.rhs == Approx(4.424979).margin(1e-6));
    CHECK(std::abs(pt2.lhs - pt2.rhs) <= 1e-12);

    const auto pt1 = sip::classic_reconstruction(sip::Classic::PT1, 1.0, 1.0, pi / 4);
    CHECK(std::abs(pt1.lhs) <= 1e-15);
    CHECK(std::abs(pt1.rhs) <= 1e-15);

    for (double a : {-1.0, 0.3, 2.0}) {
        for (double x : {0.2, 1.0, 3.0}) {
            const auto r = sip::classic_reconstruction(sip::Classic::PT2, a, a, x);
            CHECK(r.lhs == Approx(2 * a / std::tanh(2 * x)).epsilon(1e-14));
            CHECK(r.lhs == Approx(a * (std::tanh(x) + 1 / std::tanh(x))).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(sip::classic_reconstruction(sip::Classic::PT1, 1, 2, 2.0), sip::DomainError);
    CHECK_THROWS_AS(sip::classic_reconstruction(sip::Classic::PT2, 1, 2, -1.0), sip::DomainError);
}

TEST_CASE("swapping a value-matched invariant keeps the parameters", "[families]") {
    // both invariants equal 2 at m1 = 0.25 (sin^2 = 1, cos = 0, +1 = 2)
    const auto a = sip::build_family(FamilyId::Scarf1, one_coupling({0.25}, "sin(2*pi*m1)^2+cos(2*pi*m1)+1", 0.05, 0.1));
    const auto b = sip::build_family(FamilyId::Scarf1, one_coupling({0.25}, "2 - cos(2*pi*m1)", 0.05, 0.1));
    CHECK(a.eps == Approx(b.eps).epsilon(1e-15));
    CHECK(a.rho == Approx(b.rho).epsilon(1e-15));
}

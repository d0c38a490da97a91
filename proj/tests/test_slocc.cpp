/*
 * Copyright 2026 The fgs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <random>

#include "fgs/glu_standard.hpp"
#include "fgs/slocc.hpp"

using namespace fgs;

TEST_SUITE_BEGIN("slocc");

namespace {

FockVector three_mode(double a1, double a2, double a3, double a4) {
    std::vector<cplx> v(8, 0.0);
    double n = std::sqrt(a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4);
    v[0] = a1 / n;
    v[3] = a2 / n;
    v[5] = a3 / n;
    v[6] = a4 / n;
    return FockVector(3, std::move(v));
}

FockVector w3() { return three_mode(0, 1, 1, 1); }

/// Random invertible positive diagonal local operator on one site.
CMat random_pos_diag(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> uni(0.35, 1.8);
    CMat d(2, 2);
    d(0, 0) = uni(rng);
    d(1, 1) = uni(rng);
    return d;
}

FockVector deform(const FockVector &psi, std::mt19937_64 &rng, bool with_x) {
    FockVector cur = psi;
    std::uniform_int_distribution<int> bit(0, 1);
    int xcount = 0;
    std::vector<int> flips(psi.modes(), 0);
    if (with_x) {
        for (std::size_t k = 0; k < psi.modes(); ++k) flips[k] = bit(rng);
        if (std::accumulate(flips.begin(), flips.end(), 0) % 2 != 0)
            flips[0] ^= 1;  // keep the total parity definite
    }
    for (std::size_t k = 1; k <= psi.modes(); ++k) {
        CMat op = random_pos_diag(rng);
        if (flips[k - 1]) {
            CMat x(2, 2);
            x(0, 1) = 1;
            x(1, 0) = 1;
            op = x * op;
            ++xcount;
        }
        cur = apply_site_op(cur, k, op, true);
    }
    (void)xcount;
    return cur;
}

}  // namespace

TEST_CASE("GHZ3 is critical and a fixed point of the iteration") {
    FockVector ghz = ghz_hadamard_state(3);
    CHECK(is_critical(ghz));
    NormalFormTrace tr = normal_form_iterate(ghz);
    CHECK(tr.verdict == NormalFormTrace::Verdict::CriticalReached);
    CHECK(tr.iterations == 0);
    REQUIRE(tr.final_state.has_value());
}

TEST_CASE("W3 decays into the null cone") {
    NormalFormTrace tr = normal_form_iterate(w3(), 200);
    CHECK(tr.verdict == NormalFormTrace::Verdict::NullCone);
    CHECK_FALSE(tr.final_state.has_value());
    REQUIRE(!tr.norm_history.empty());
    CHECK(tr.norm_history.back() < 1e-10);
    // Cumulative squared norm is non-increasing.
    for (std::size_t i = 1; i < tr.norm_history.size(); ++i)
        CHECK(tr.norm_history[i] <= tr.norm_history[i - 1] + 1e-15);
}

TEST_CASE("diagonal deformations of GHZ3 recover a GLU-equivalent critical state") {
    std::mt19937_64 rng(3);
    FockVector ghz = ghz_hadamard_state(3);
    StandardFormResult ghz_form = standard_form(cm_from_state(ghz));
    for (int rep = 0; rep < 25; ++rep) {
        FockVector deformed = deform(ghz, rng, false);
        // Iterate well below the flip-branch threshold so the recovered
        // state's lambda noise reads as exactly zero.
        NormalFormTrace tr = normal_form_iterate(deformed, 400, 1e-11);
        REQUIRE(tr.verdict == NormalFormTrace::Verdict::CriticalReached);
        REQUIRE(tr.final_state.has_value());
        StandardFormResult back = standard_form(cm_from_state(*tr.final_state));
        CHECK(frobenius_norm(back.s_gamma.gamma() - ghz_form.s_gamma.gamma()) < 1e-7);
    }
}

TEST_CASE("iteration is GLU covariant") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    FockVector psi = deform(ghz_hadamard_state(3), rng, false);
    NormalFormTrace t1 = normal_form_iterate(psi, 400, 1e-11);

    // Local unitary: diagonal phases per site.
    FockVector moved = psi;
    for (std::size_t k = 1; k <= 3; ++k) {
        CMat u(2, 2);
        double th = ang(rng);
        u(0, 0) = std::exp(cplx(0, th / 2));
        u(1, 1) = std::exp(cplx(0, -th / 2));
        moved = apply_site_op(moved, k, u, true);
    }
    NormalFormTrace t2 = normal_form_iterate(moved, 400, 1e-11);
    REQUIRE(t1.final_state.has_value());
    REQUIRE(t2.final_state.has_value());
    StandardFormResult f1 = standard_form(cm_from_state(*t1.final_state));
    StandardFormResult f2 = standard_form(cm_from_state(*t2.final_state));
    CHECK(frobenius_norm(f1.s_gamma.gamma() - f2.s_gamma.gamma()) < 1e-7);
}

TEST_CASE("is_critical fixtures") {
    CHECK(is_critical(ghz_hadamard_state(4)));

    std::vector<cplx> bell(4, 0.0);
    bell[0] = bell[3] = 1 / std::sqrt(2.0);
    CHECK(is_critical(FockVector(2, std::move(bell))));

    std::vector<cplx> tilted(4, 0.0);
    tilted[0] = 0.9;
    tilted[3] = std::sqrt(1 - 0.81);
    CHECK_FALSE(is_critical(FockVector(2, std::move(tilted))));
}

TEST_CASE("3-mode classification by zero pattern") {
    CHECK(classify_3mode(ghz_hadamard_state(3)).kind == SloccLabel::Kind::GHZ3);
    CHECK(classify_3mode(w3()).kind == SloccLabel::Kind::W3);

    SloccLabel bisep = classify_3mode(three_mode(1, 1, 0, 0));
    CHECK(bisep.kind == SloccLabel::Kind::Biseparable);
    CHECK(bisep.partition == "1|23");

    SloccLabel bisep2 = classify_3mode(three_mode(0, 1, 1, 0));
    CHECK(bisep2.kind == SloccLabel::Kind::Biseparable);
    CHECK(bisep2.partition == "3|12");

    CHECK(classify_3mode(three_mode(1, 0, 0, 0)).kind == SloccLabel::Kind::Separable);

    // Odd-parity states are classified through X^{(x)3}.
    FockVector odd = apply_site_op(
        apply_site_op(apply_site_op(w3(), 1,
                                    [] {
                                        CMat x(2, 2);
                                        x(0, 1) = 1;
                                        x(1, 0) = 1;
                                        return x;
                                    }(),
                                    true),
                      2,
                      [] {
                          CMat x(2, 2);
                          x(0, 1) = 1;
                          x(1, 0) = 1;
                          return x;
                      }(),
                      true),
        3,
        [] {
            CMat x(2, 2);
            x(0, 1) = 1;
            x(1, 0) = 1;
            return x;
        }(),
        true);
    CHECK(classify_3mode(odd).kind == SloccLabel::Kind::W3);
}

TEST_CASE("labels are invariant along GSLOCC orbits") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 40; ++rep) {
        FockVector ghz_orbit = deform(ghz_hadamard_state(3), rng, true);
        CHECK(classify_3mode(ghz_orbit).kind == SloccLabel::Kind::GHZ3);
        FockVector w_orbit = deform(w3(), rng, true);
        CHECK(classify_3mode(w_orbit).kind == SloccLabel::Kind::W3);
    }
}

TEST_CASE("every even 3-mode pure state is Gaussian") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int rep = 0; rep < 300; ++rep) {
        std::vector<cplx> v(8, 0.0);
        for (std::size_t b : {0u, 3u, 5u, 6u}) v[b] = cplx(uni(rng), uni(rng));
        double n = std::sqrt(frobenius_sq(v.data(), v.size()));
        for (auto &a : v) a /= n;
        FockVector psi(3, std::move(v));
        CHECK(is_gaussian_pure(psi));
    }
}

TEST_CASE("Gaussianity is decided by the seed (Corollary of the normal form)") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 100; ++rep) {
        FockVector ghz_def = deform(ghz_hadamard_state(3), rng, false);
        CHECK(is_gaussian_pure(ghz_def) == is_gaussian_pure(ghz_hadamard_state(3)));
        FockVector w_def = deform(w3(), rng, false);
        CHECK(is_gaussian_pure(w_def) == is_gaussian_pure(w3()));
    }
}

TEST_CASE("G_abcd seeds: criticality and the ab + cd condition") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    FockVector bisep = seed_4mode_gabcd(1, 0, 0, 0);
    CHECK(is_critical(bisep));

    FockVector gauss = seed_4mode_gabcd(0.5, 0.5, 0.5, -0.5);
    CHECK(is_gaussian_pure(gauss));
    CHECK(is_critical(gauss));

    for (int rep = 0; rep < 40; ++rep) {
        cplx a(uni(rng), uni(rng)), b(uni(rng), uni(rng)), c(uni(rng), uni(rng));
        // Pick d so that the family is Gaussian ... or not.
        bool make_gaussian = rep % 2 == 0;
        cplx d = make_gaussian ? -a * b / (std::abs(c) < 0.1 ? cplx(0.5) : c)
                               : cplx(uni(rng), uni(rng));
        if (make_gaussian && std::abs(c) < 0.1) c = 0.5;
        FockVector seed = seed_4mode_gabcd(a, b, c, d);
        CHECK(is_critical(seed));
        bool algebraic = std::abs(a * b + c * d) < 1e-12;
        CHECK(is_gaussian_pure(seed) == algebraic);
        CHECK(is_gaussian_four_mode_pure(seed) == algebraic);
    }

    CHECK_THROWS_AS(seed_4mode_gabcd(0, 0, 0, 0), invalid_input);
}

TEST_CASE("semi-stable seeds: Gaussian conditions and non-criticality") {
    FockVector labc = seed_4mode_labc2(1, -1, 1);  // ab = -c^2
    CHECK(is_gaussian_pure(labc));
    CHECK_FALSE(is_critical(labc));

    FockVector labc_bad = seed_4mode_labc2(1, 1, 1);  // ab = 1 != -1
    CHECK_FALSE(is_gaussian_pure(labc_bad));

    FockVector la2b2 = seed_4mode_la2b2(1, cplx(0, 1));  // a^2 + b^2 = 0
    CHECK(is_gaussian_pure(la2b2));
    CHECK_FALSE(is_critical(la2b2));

    FockVector la2b2_bad = seed_4mode_la2b2(1, 1);
    CHECK_FALSE(is_gaussian_pure(la2b2_bad));
}

TEST_CASE("null-cone representative") {
    FockVector nc = nullcone_4mode_state();
    CHECK(is_gaussian_pure(nc));
    NormalFormTrace tr = normal_form_iterate(nc, 300);
    CHECK(tr.verdict == NormalFormTrace::Verdict::NullCone);

    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        FockVector deformed = deform(nc, rng, false);
        NormalFormTrace dt = normal_form_iterate(deformed, 300);
        CHECK(dt.verdict == NormalFormTrace::Verdict::NullCone);
    }
}

TEST_CASE("a fermionic swap moves the 4-mode critical state to another class") {
    // Both states are critical, but they are not locally equivalent:
    // there is only one critical state per class, so the swapped state
    // must sit in a different one, and the standard forms distinguish
    // them.
    FockVector g4 = ghz_hadamard_state(4);
    FockVector swapped = fermionic_swap(g4, 1);
    CHECK(is_critical(g4));
    CHECK(is_critical(swapped));
    CHECK(is_gaussian_pure(swapped));
    CovarianceMatrix a = cm_from_state(g4);
    CovarianceMatrix b = cm_from_state(swapped);
    CHECK_FALSE(glu_equivalent(a, b));
}

TEST_CASE("factorized modes stagnate instead of diverging") {
    // |0> (x) |Phi+>: mode 1 has a singular reduction, which the
    // iteration skips; the sweep plateaus without ever reaching
    // criticality or the null cone.
    std::vector<cplx> v(8, 0.0);
    v[0] = 1 / std::sqrt(2.0);  // |000>
    v[3] = 1 / std::sqrt(2.0);  // |011>
    FockVector bisep(3, std::move(v));
    NormalFormTrace tr = normal_form_iterate(bisep, 50);
    CHECK(tr.verdict == NormalFormTrace::Verdict::MaxIterPlateau);
    REQUIRE(tr.final_state.has_value());
    CHECK(tr.norm_history.back() > 0.9);  // nothing decays
}

TEST_CASE("semi-stable states keep a nonvanishing norm") {
    // The Gaussian L_abc2 representative is not stable, but its normal
    // form does not vanish either: the cumulative norm stays bounded
    // away from zero however long the sweep runs.
    FockVector seed = seed_4mode_labc2(1, -1, 1);
    NormalFormTrace tr = normal_form_iterate(seed, 300);
    CHECK(tr.verdict != NormalFormTrace::Verdict::NullCone);
    CHECK(tr.norm_history.back() > 1e-3);
}

TEST_CASE("classify_4mode_seed labels") {
    SloccLabel g = classify_4mode_seed(SeedFamily::Gabcd, {1, 1, 1, -1});
    CHECK(g.kind == SloccLabel::Kind::Gabcd);
    CHECK(g.gaussian);

    SloccLabel l = classify_4mode_seed(SeedFamily::Labc2, {1, 1, 1});
    CHECK(l.kind == SloccLabel::Kind::NonGaussian);

    SloccLabel l2 = classify_4mode_seed(SeedFamily::La2b2, {1, cplx(0, 1)});
    CHECK(l2.kind == SloccLabel::Kind::La2b2);

    SloccLabel nc = classify_4mode_seed(SeedFamily::NullCone4, {});
    CHECK(nc.kind == SloccLabel::Kind::NullCone4);
    CHECK(nc.gaussian);

    CHECK_THROWS_AS(classify_4mode_seed(SeedFamily::Gabcd, {1, 2}), invalid_input);
}

TEST_CASE("classification errors") {
    std::vector<cplx> v(4, 0.0);
    v[0] = 1.0;
    CHECK_THROWS_AS(classify_3mode(FockVector(2, std::move(v))), invalid_input);
}

TEST_SUITE_END();

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

#include <algorithm>
#include <cmath>
#include <random>

#include "fgs/channels.hpp"
#include "fgs/glu_standard.hpp"
#include "fgs/jw_fock.hpp"
#include "oracles.hpp"

using namespace fgs;

TEST_SUITE_BEGIN("glu_standard");

namespace {

/// Even-parity pure 3-mode state a1|000> + a2|011> + a3|101> + a4|110>.
FockVector three_mode(double a1, double a2, double a3, double a4) {
    std::vector<cplx> v(8, 0.0);
    double n = std::sqrt(a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4);
    v[0] = a1 / n;
    v[3] = a2 / n;
    v[5] = a3 / n;
    v[6] = a4 / n;
    return FockVector(3, std::move(v));
}

/// The closed-form standard form of that family (strict-inequality
/// case), entered literally.
RMat sgamma_reference(double a1, double a2, double a3, double a4) {
    double l1 = 0.5 * (a3 * a3 + a4 * a4 - a1 * a1 - a2 * a2);
    double l2 = 0.5 * (a2 * a2 + a4 * a4 - a1 * a1 - a3 * a3);
    double l3 = 0.5 * (a2 * a2 - a4 * a4 - a1 * a1 + a3 * a3);
    RMat s(6, 6);
    auto set = [&](std::size_t i, std::size_t j, double v) {
        s(i, j) = 2 * v;
        s(j, i) = -2 * v;
    };
    set(0, 1, l1);
    set(2, 3, l2);
    set(4, 5, l3);
    set(0, 2, a1 * a4 + a2 * a3);
    set(1, 3, -a1 * a4 + a2 * a3);
    set(0, 5, -a1 * a3 + a2 * a4);
    set(1, 4, -(a1 * a3 + a2 * a4));
    set(2, 4, a3 * a4 - a1 * a2);
    set(3, 5, a3 * a4 + a1 * a2);
    return s;
}

CovarianceMatrix reproject_physical(const RMat &raw) {
    // Clip Williamson couplings into [-1, 1] to get a physical CM.
    BlockDiagonalForm f = antisymmetric_normal_form(raw);
    std::vector<RMat> blocks;
    for (double b : f.couplings)
        blocks.push_back(std::clamp(b, -0.999, 0.999) * j2());
    RMat core = direct_sum(blocks);
    return CovarianceMatrix(raw.rows() / 2,
                            f.rotation.transpose() * core * f.rotation);
}

}  // namespace

TEST_CASE("pure 2-mode standard forms live on lambda^2 + d^2 = 1") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(0.05, M_PI / 2 - 0.05);
    for (int rep = 0; rep < 50; ++rep) {
        double theta = ang(rng);
        std::vector<cplx> v(4, 0.0);
        v[0] = std::cos(theta);
        v[3] = std::sin(theta);
        FockVector psi(2, std::move(v));
        StandardFormResult sf = standard_form(cm_from_state(psi));
        const RMat &s = sf.s_gamma.gamma();
        double lam = s(0, 1), d = s(0, 2), dp = s(1, 3);
        CHECK(lam == doctest::Approx(s(2, 3)).epsilon(1e-9));
        CHECK(lam == doctest::Approx(std::abs(std::cos(2 * theta))).epsilon(1e-9));
        CHECK(d == doctest::Approx(-dp).epsilon(1e-9));
        CHECK(lam * lam + d * d == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(lam > 0);
        CHECK(d >= std::abs(dp) - 1e-12);

        Pure2ModeParams params = pure_2mode_params(sf.s_gamma);
        CHECK(params.lambda == doctest::Approx(lam));
        CHECK(params.d == doctest::Approx(d));
        CHECK_FALSE(params.maximally_entangled);
    }
}

TEST_CASE("maximally entangled 2-mode standard form") {
    std::vector<cplx> v(4, 0.0);
    v[0] = v[3] = 1 / std::sqrt(2.0);
    FockVector phi(2, std::move(v));
    StandardFormResult sf = standard_form(cm_from_state(phi));
    const RMat &s = sf.s_gamma.gamma();
    CHECK(std::abs(s(0, 1)) < 1e-10);
    CHECK(std::abs(s(2, 3)) < 1e-10);
    CHECK(s(0, 2) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s(1, 3) == doctest::Approx(1.0).epsilon(1e-9));

    Pure2ModeParams p = pure_2mode_params(sf.s_gamma);
    CHECK(p.maximally_entangled);
    CHECK(p.d == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("product |00> gives lambda = 1, d = 0 without a purity error") {
    std::vector<cplx> v(4, 0.0);
    v[0] = 1.0;
    FockVector psi(2, std::move(v));
    StandardFormResult sf = standard_form(cm_from_state(psi));
    Pure2ModeParams p = pure_2mode_params(sf.s_gamma);
    CHECK(p.lambda == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(p.d) < 1e-12);
    CHECK_FALSE(p.maximally_entangled);
}

TEST_CASE("pure_2mode_params rejections") {
    CovarianceMatrix mixed(2, RMat(4, 4));
    CHECK_THROWS_AS(pure_2mode_params(mixed), invalid_input);

    std::vector<cplx> v(4, 0.0);
    v[0] = 0.8;
    v[3] = 0.6;
    FockVector psi(2, std::move(v));
    CovarianceMatrix s = standard_form(cm_from_state(psi)).s_gamma;
    LocalOrthogonalSet ops{{0.7, 0}, {0.0, 0}};
    CovarianceMatrix rotated = apply_local_orthogonal(s, ops);
    CHECK_THROWS_AS(pure_2mode_params(rotated), invalid_input);
}

TEST_CASE("the (1,3,3,2)/sqrt(23) state reproduces its closed-form standard form") {
    double r23 = 1 / std::sqrt(23.0);
    FockVector psi = three_mode(1, 3, 3, 2);
    CovarianceMatrix g = cm_from_state(psi);
    StandardFormResult sf = standard_form(g);
    RMat want = sgamma_reference(1 * r23, 3 * r23, 3 * r23, 2 * r23);
    CHECK(frobenius_norm(sf.s_gamma.gamma() - want) < 1e-9);

    CHECK(sf.s_gamma.gamma()(0, 1) == doctest::Approx(3.0 / 23).epsilon(1e-9));
    CHECK(sf.s_gamma.gamma()(4, 5) == doctest::Approx(13.0 / 23).epsilon(1e-9));
    CHECK(sf.s_gamma.gamma()(0, 2) == doctest::Approx(22.0 / 23).epsilon(1e-9));
    CHECK(sf.s_gamma.gamma()(1, 3) == doctest::Approx(14.0 / 23).epsilon(1e-9));
    CHECK(sf.s_gamma.gamma()(0, 5) == doctest::Approx(6.0 / 23).epsilon(1e-9));
    CHECK(sf.s_gamma.gamma()(1, 4) == doctest::Approx(-18.0 / 23).epsilon(1e-9));
    CHECK(sf.s_gamma.gamma()(2, 4) == doctest::Approx(6.0 / 23).epsilon(1e-9));
    CHECK(sf.s_gamma.gamma()(3, 5) == doctest::Approx(18.0 / 23).epsilon(1e-9));
}

TEST_CASE("generic pure 3-mode states match the closed form") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0.05, 1.0);
    int built = 0;
    while (built < 25) {
        double a1 = uni(rng), a2 = uni(rng), a3 = uni(rng), a4 = uni(rng);
        double n = std::sqrt(a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4);
        a1 /= n;
        a2 /= n;
        a3 /= n;
        a4 /= n;
        double l1 = 0.5 * (a3 * a3 + a4 * a4 - a1 * a1 - a2 * a2);
        double l2 = 0.5 * (a2 * a2 + a4 * a4 - a1 * a1 - a3 * a3);
        double l3 = 0.5 * (a2 * a2 - a4 * a4 - a1 * a1 + a3 * a3);
        if (l1 < 0.02 || l2 < 0.02 || l3 < 0.02) continue;  // strict case only
        ++built;
        FockVector psi = three_mode(a1, a2, a3, a4);
        StandardFormResult sf = standard_form(cm_from_state(psi));
        RMat want = sgamma_reference(a1, a2, a3, a4);
        CHECK(frobenius_norm(sf.s_gamma.gamma() - want) < 1e-9);
    }
}

TEST_CASE("standard form is idempotent") {
    std::mt19937_64 rng(7);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int rep = 0; rep < 334; ++rep) {
            CovarianceMatrix g = random_cm(n, rng, rep % 3 == 0);
            StandardFormResult s1 = standard_form(g);
            StandardFormResult s2 = standard_form(s1.s_gamma);
            CHECK(frobenius_norm(s1.s_gamma.gamma() - s2.s_gamma.gamma()) < 1e-9);
        }
    }
    for (const FockVector &psi :
         {ghz_hadamard_state(3),
          three_mode(0, 1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)),
          three_mode(1, 3, 3, 2)}) {
        StandardFormResult s1 = standard_form(cm_from_state(psi));
        StandardFormResult s2 = standard_form(s1.s_gamma);
        CHECK(frobenius_norm(s1.s_gamma.gamma() - s2.s_gamma.gamma()) < 1e-9);
    }
}

TEST_CASE("the returned operations reproduce the standard form") {
    std::mt19937_64 rng(9);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int rep = 0; rep < 40; ++rep) {
            CovarianceMatrix g = random_cm(n, rng, false);
            StandardFormResult sf = standard_form(g);
            CovarianceMatrix redo = apply_local_orthogonal(g, sf.ops);
            CHECK(frobenius_norm(redo.gamma() - sf.s_gamma.gamma()) < 1e-9);
        }
    }
}

TEST_CASE("standard form is a GLU invariant") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int rep = 0; rep < 60; ++rep) {
            CovarianceMatrix g = random_cm(n, rng, rep % 2 == 0);
            LocalOrthogonalSet ops = test::random_local_ops(n, rng);
            CovarianceMatrix moved = apply_local_orthogonal(g, ops);
            StandardFormResult s1 = standard_form(g);
            StandardFormResult s2 = standard_form(moved);
            CHECK(frobenius_norm(s1.s_gamma.gamma() - s2.s_gamma.gamma()) < 1e-7);
        }
    }
    FockVector w3 =
        three_mode(0, 1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0));
    for (const FockVector &psi : {ghz_hadamard_state(3), w3}) {
        CovarianceMatrix g = cm_from_state(psi);
        for (int rep = 0; rep < 20; ++rep) {
            LocalOrthogonalSet ops = test::random_local_ops(3, rng);
            CovarianceMatrix moved = apply_local_orthogonal(g, ops);
            StandardFormResult s1 = standard_form(g);
            StandardFormResult s2 = standard_form(moved);
            CHECK(frobenius_norm(s1.s_gamma.gamma() - s2.s_gamma.gamma()) < 1e-7);
        }
    }
}

TEST_CASE("glu_equivalent on orbits and across classes") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 30; ++rep) {
        CovarianceMatrix g = random_cm(3, rng, false);
        LocalOrthogonalSet ops = test::random_local_ops(3, rng);
        CHECK(glu_equivalent(g, apply_local_orthogonal(g, ops)));
    }

    FockVector w3 =
        three_mode(0, 1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0));
    CovarianceMatrix ghz = cm_from_state(ghz_hadamard_state(3));
    CovarianceMatrix w = cm_from_state(w3);
    CHECK_FALSE(glu_equivalent(ghz, w));
    CHECK(std::abs(standard_form(ghz).s_gamma.gamma()(0, 1) -
                   standard_form(w).s_gamma.gamma()(0, 1)) > 0.1);

    CHECK_THROWS_AS(glu_equivalent(ghz, fixture_gamma_p(0.1)), invalid_input);
}

TEST_CASE("independent draws are inequivalent and the brute-force oracle agrees") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 6; ++rep) {
        CovarianceMatrix g1 = random_cm(2, rng, false);
        CovarianceMatrix g2 = random_cm(2, rng, false);
        bool eq = glu_equivalent(g1, g2);
        double dist = test::glu_distance_bruteforce(g1, g2, 24);
        CHECK_FALSE(eq);
        CHECK(dist > 1e-7);
    }

    CovarianceMatrix g = random_cm(2, rng, false);
    RMat pert = test::random_antisymmetric(4, rng, 0.05);
    CovarianceMatrix g2 = reproject_physical(g.gamma() + pert);
    CHECK_FALSE(glu_equivalent(g, g2));
    CHECK(test::glu_distance_bruteforce(g, g2, 24) > 1e-7);
}

TEST_CASE("equivalence is an equivalence relation on sampled orbits") {
    std::mt19937_64 rng(19);
    CovarianceMatrix g = random_cm(3, rng, false);
    CovarianceMatrix a = apply_local_orthogonal(g, test::random_local_ops(3, rng));
    CovarianceMatrix b = apply_local_orthogonal(g, test::random_local_ops(3, rng));
    CovarianceMatrix c = apply_local_orthogonal(b, test::random_local_ops(3, rng));
    CHECK(glu_equivalent(a, a));
    CHECK(glu_equivalent(a, b));
    CHECK(glu_equivalent(b, a));
    CHECK(glu_equivalent(a, c));
}

TEST_CASE("3-mode pure states built from the same amplitudes are equivalent") {
    std::mt19937_64 rng(23);
    FockVector psi = three_mode(0.3, 0.5, 0.6, 0.4);
    CovarianceMatrix g = cm_from_state(psi);
    for (int rep = 0; rep < 10; ++rep) {
        CovarianceMatrix moved =
            apply_local_orthogonal(g, test::random_local_ops(3, rng));
        CHECK(glu_equivalent(g, moved));
    }
}

TEST_CASE("three-mode validator accepts random standard forms") {
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 200; ++rep) {
        CovarianceMatrix g = random_cm(3, rng, false);
        StandardFormResult sf = standard_form(g);
        ThreeModeValidation v = validate_3mode_standard_form(sf.s_gamma);
        CHECK(v.valid);
        if (!v.valid) {
            CAPTURE(v.matched_case);
        }
    }
}

TEST_CASE("three-mode validator rejects ordering violations") {
    RMat s(6, 6);
    auto set = [&](std::size_t i, std::size_t j, double v) {
        s(i, j) = v;
        s(j, i) = -v;
    };
    set(0, 1, 0.3);
    set(2, 3, 0.3);
    set(4, 5, 0.3);
    set(0, 2, 0.1);
    set(1, 3, 0.2);  // d12 = 0.1 < |d12'| = 0.2
    set(0, 4, 0.2);  // keep mode 3 coupled so the full case list applies
    set(1, 5, 0.1);
    ThreeModeValidation v = validate_3mode_standard_form(CovarianceMatrix(3, s));
    CHECK_FALSE(v.valid);
}

TEST_CASE("W state standard form matches the degenerate rotation case") {
    FockVector w3 =
        three_mode(0, 1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0));
    StandardFormResult sf = standard_form(cm_from_state(w3));
    const RMat &s = sf.s_gamma.gamma();
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(s(2 * i, 2 * i + 1) == doctest::Approx(1.0 / 3).epsilon(1e-9));
    CHECK(s(0, 2) == doctest::Approx(2.0 / 3).epsilon(1e-9));
    CHECK(s(1, 3) == doctest::Approx(2.0 / 3).epsilon(1e-9));
    CHECK(std::abs(s(0, 3)) < 1e-9);
    CHECK(std::abs(s(1, 2)) < 1e-9);
    RMat b23 = sf.s_gamma.block(1, 2);
    auto sv = singular_values(b23);
    CHECK(sv[0] == doctest::Approx(2.0 / 3).epsilon(1e-9));
    CHECK(sv[1] == doctest::Approx(2.0 / 3).epsilon(1e-9));

    ThreeModeValidation v = validate_3mode_standard_form(sf.s_gamma);
    CHECK(v.valid);
    CHECK(v.matched_case.find("orthogonal") != std::string::npos);
}

TEST_CASE("GHZ standard form flags the lambda-zero regime") {
    StandardFormResult sf = standard_form(cm_from_state(ghz_hadamard_state(3)));
    ThreeModeValidation v = validate_3mode_standard_form(sf.s_gamma);
    CHECK(v.valid);
    CHECK(v.matched_case.find("unvalidated") != std::string::npos);
}

namespace {

/// Builds a physical 3-mode CM with prescribed 2x2 blocks (diagonal
/// coupling lambdas and off-diagonal blocks), rescaled into the
/// physical region. Rescaling preserves proportionality structure, so
/// degenerate-branch fixtures stay degenerate.
CovarianceMatrix structured_cm(double l1, double l2, double l3, const RMat &b12,
                               const RMat &b13, const RMat &b23) {
    RMat g(6, 6);
    auto put = [&](std::size_t i, std::size_t j, const RMat &b) {
        g.set_block(2 * i, 2 * j, b);
        RMat bt = b.transpose();
        bt *= -1.0;
        g.set_block(2 * j, 2 * i, bt);
    };
    g.set_block(0, 0, l1 * j2());
    g.set_block(2, 2, l2 * j2());
    g.set_block(4, 4, l3 * j2());
    put(0, 1, b12);
    put(0, 2, b13);
    put(1, 2, b23);
    auto sv = singular_values(g);
    double scale = sv[0] > 0.9 ? 0.9 / sv[0] : 1.0;
    g *= scale;
    return CovarianceMatrix(3, g);
}

void check_canonical(const CovarianceMatrix &g, std::mt19937_64 &rng,
                     const char *what) {
    INFO(what);
    StandardFormResult s1 = standard_form(g);
    // Idempotent.
    StandardFormResult s2 = standard_form(s1.s_gamma);
    CHECK(frobenius_norm(s1.s_gamma.gamma() - s2.s_gamma.gamma()) < 1e-9);
    // The returned operations reproduce it.
    CovarianceMatrix redo = apply_local_orthogonal(g, s1.ops);
    CHECK(frobenius_norm(redo.gamma() - s1.s_gamma.gamma()) < 1e-9);
    // Invariant along the GLU orbit.
    for (int rep = 0; rep < 12; ++rep) {
        LocalOrthogonalSet ops = test::random_local_ops(g.modes(), rng);
        StandardFormResult s3 = standard_form(apply_local_orthogonal(g, ops));
        CHECK(frobenius_norm(s1.s_gamma.gamma() - s3.s_gamma.gamma()) < 1e-7);
    }
    // The Williamson couplings are untouched.
    auto w1 = williamson_abs(g);
    auto w2 = williamson_abs(s1.s_gamma);
    for (std::size_t k = 0; k < w1.size(); ++k)
        CHECK(w1[k] == doctest::Approx(w2[k]).epsilon(1e-8));
}

}  // namespace

TEST_CASE("degenerate-branch fixtures stay canonical") {
    std::mt19937_64 rng(41);
    RMat zero2(2, 2);

    // Rotation-proportional first block, generic third-row coupling:
    // the linked angle is resolved through a later SVD.
    check_canonical(
        structured_cm(0.3, 0.25, 0.2, 0.4 * rot2(0.8),
                      RMat::from_rows({{0.3, 0.05}, {-0.1, 0.2}}), zero2),
        rng, "link then svd resolution");

    // Reflection-proportional first block (negative determinant).
    RMat zrot = rot2(1.1);
    zrot(1, 0) = -zrot(1, 0);
    zrot(1, 1) = -zrot(1, 1);  // Z R(1.1)
    check_canonical(structured_cm(0.3, 0.25, 0.2, 0.4 * zrot,
                                  RMat::from_rows({{0.3, 0.0}, {0.0, 0.15}}), zero2),
                    rng, "reflection link then svd resolution");

    // All three blocks proportional to rotations: the cluster defers and
    // anchors at alpha_1 = 0 (the W-state pattern, with mixed lambdas).
    check_canonical(structured_cm(0.35, 0.3, 0.25, 0.3 * rot2(0.5), 0.3 * rot2(-0.4),
                                  0.3 * rot2(1.3)),
                    rng, "fully rotational cluster");

    // Rotation links plus a reflection block inside the cluster: the
    // shared angle is pinned by the 2-alpha condition.
    check_canonical(structured_cm(0.35, 0.3, 0.25, 0.3 * rot2(0.5), 0.3 * rot2(-0.4),
                                  0.3 * zrot),
                    rng, "cluster solved through a reflection block");

    // Two reflection links: opposite orientation chain.
    RMat zrot2m = rot2(-0.7);
    zrot2m(1, 0) = -zrot2m(1, 0);
    zrot2m(1, 1) = -zrot2m(1, 1);
    check_canonical(structured_cm(0.35, 0.3, 0.25, 0.4 * zrot, 0.35 * zrot2m,
                                  RMat::from_rows({{0.2, 0.03}, {-0.08, 0.25}})),
                    rng, "two reflection links");

    // Cluster with a non-degenerate same-variable block.
    check_canonical(structured_cm(0.35, 0.3, 0.25, 0.3 * rot2(0.5), 0.3 * rot2(-0.4),
                                  RMat::from_rows({{0.3, 0.02}, {-0.04, 0.1}})),
                    rng, "same-variable block solved by column orthogonality");

    // Zero lambdas with degenerate blocks (maximally-entangled flavor).
    check_canonical(structured_cm(0.0, 0.0, 0.0, 0.45 * rot2(0.9), 0.4 * zrot,
                                  0.35 * rot2(0.2)),
                    rng, "zero lambdas with mixed links");

    // Zero lambdas with two reflection links and a deferred rotation
    // block: the cluster keeps a joint-flip symmetry that only the
    // orientation anchor can canonicalize.
    check_canonical(structured_cm(0.0, 0.0, 0.0, 0.4 * zrot, 0.35 * zrot2m,
                                  0.3 * rot2(0.45)),
                    rng, "zero lambdas, reflection links, joint-flip symmetry");

    // A decoupled mode plus a degenerate pair.
    check_canonical(structured_cm(0.0, 0.3, 0.2, zero2, zero2, 0.4 * rot2(0.6)), rng,
                    "decoupled first mode");

    // Late pair determines an earlier free mode (case with j fixed
    // before i): zero (1,2) block, generic (1,3) and (2,3).
    check_canonical(structured_cm(0.3, 0.25, 0.2, zero2,
                                  RMat::from_rows({{0.3, 0.05}, {-0.1, 0.2}}),
                                  RMat::from_rows({{0.25, -0.04}, {0.07, 0.18}})),
                    rng, "left resolution after right fixed");

    // Degenerate block against an already-fixed mode (right and left).
    check_canonical(structured_cm(0.3, 0.25, 0.2,
                                  RMat::from_rows({{0.3, 0.05}, {-0.1, 0.2}}), zero2,
                                  0.35 * rot2(0.7)),
                    rng, "orthogonal block resolved on the right");
    check_canonical(structured_cm(0.3, 0.25, 0.2, zero2,
                                  RMat::from_rows({{0.3, 0.05}, {-0.1, 0.2}}),
                                  0.35 * zrot),
                    rng, "orthogonal block resolved on the left");

    // A linked mode meets a free mode at a later block: the base is
    // back-solved through the pair SVD.
    check_canonical(structured_cm(0.3, 0.25, 0.2, 0.4 * rot2(0.8), zero2,
                                  RMat::from_rows({{0.28, -0.03}, {0.06, 0.17}})),
                    rng, "linked base back-solved at a later block");
}

TEST_CASE("random rotation-structured mixed CMs stay canonical") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    std::uniform_real_distribution<double> mag(0.15, 0.45);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int rep = 0; rep < 25; ++rep) {
        auto block = [&]() -> RMat {
            int k = kind(rng);
            if (k == 0) return RMat(2, 2);
            RMat r = mag(rng) * rot2(ang(rng));
            if (k == 2) {
                r(1, 0) = -r(1, 0);
                r(1, 1) = -r(1, 1);
            }
            return r;
        };
        CovarianceMatrix g = structured_cm(mag(rng) - 0.3, mag(rng) - 0.3,
                                           mag(rng) - 0.3, block(), block(), block());
        check_canonical(g, rng, "random structured fixture");
    }
}

TEST_CASE("selection-rule mode never uses flips") {
    std::mt19937_64 rng(31);
    StandardFormOptions noflip;
    noflip.allow_z_flips = false;
    for (int rep = 0; rep < 20; ++rep) {
        CovarianceMatrix g = random_cm(3, rng, false);
        StandardFormResult sf = standard_form(g, noflip);
        for (const auto &o : sf.ops) CHECK(o.flip == 0);
        LocalOrthogonalSet rots = test::random_local_ops(3, rng, false);
        StandardFormResult sf2 = standard_form(apply_local_orthogonal(g, rots), noflip);
        CHECK(frobenius_norm(sf.s_gamma.gamma() - sf2.s_gamma.gamma()) < 1e-7);
    }
}

TEST_CASE("standard form requires a physical CM") {
    CHECK_THROWS_AS(standard_form(CovarianceMatrix(1, 1.5 * j2())), invalid_input);
}

TEST_SUITE_END();

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

#include <random>

#include "fgs/channels.hpp"
#include "oracles.hpp"

using namespace fgs;

TEST_SUITE_BEGIN("channels");

namespace {
GaussianChannel identity_channel(std::size_t n) {
    GaussianChannel ch;
    ch.in_modes = ch.out_modes = n;
    ch.a = RMat(2 * n, 2 * n);
    ch.d = RMat(2 * n, 2 * n);
    ch.b = RMat::identity(2 * n);
    return ch;
}

GaussianChannel random_channel(std::size_t in, std::size_t out,
                               std::mt19937_64 &rng) {
    CovarianceMatrix e = random_cm(in + out, rng, false);
    return channel_from_cj(e, out);
}
}  // namespace

TEST_CASE("cj_cm assembles the block matrix") {
    GaussianChannel id = identity_channel(2);
    CovarianceMatrix e = cj_cm(id);
    CHECK(e.modes() == 4);
    // [[0, 1], [-1, 0]]: the maximally entangled pairing form.
    CHECK(e.gamma()(0, 4) == 1.0);
    CHECK(e.gamma()(4, 0) == -1.0);
    CHECK(e.is_physical());

    std::mt19937_64 rng(3);
    RMat o = random_special_orthogonal(4, rng);
    GaussianChannel glu = glu_channel(o);
    CovarianceMatrix ecm = cj_cm(glu);
    CHECK(frobenius_norm(ecm.gamma().block(0, 4, 4, 4) - o) < 1e-14);

    // Fully depolarizing to the vacuum: A = -J2 (+) -J2, B = D = 0.
    GaussianChannel depol;
    depol.in_modes = depol.out_modes = 2;
    depol.a = direct_sum({-1.0 * j2(), -1.0 * j2()});
    depol.b = RMat(4, 4);
    depol.d = RMat(4, 4);
    CovarianceMatrix ed = cj_cm(depol);
    CHECK(ed.is_physical());
    CHECK(is_s2pi_separable_cm(ed, Bipartition::ab(4, {0, 1})));
}

TEST_CASE("cj round trip recovers blocks exactly") {
    std::mt19937_64 rng(5);
    GaussianChannel ch = random_channel(2, 3, rng);
    GaussianChannel back = channel_from_cj(cj_cm(ch), ch.out_modes);
    CHECK(frobenius_norm(back.a - ch.a) == 0.0);
    CHECK(frobenius_norm(back.b - ch.b) == 0.0);
    CHECK(frobenius_norm(back.d - ch.d) == 0.0);
}

TEST_CASE("identity channel is the identity") {
    std::mt19937_64 rng(7);
    GaussianChannel id = identity_channel(3);
    for (int rep = 0; rep < 30; ++rep) {
        CovarianceMatrix g = random_cm(3, rng, rep % 2 == 0);
        CovarianceMatrix out = apply_channel_cm(id, g);
        CHECK(frobenius_norm(out.gamma() - g.gamma()) < 1e-12);
    }
}

TEST_CASE("glu channels act by conjugation") {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 30; ++rep) {
        RMat o = random_special_orthogonal(6, rng);
        GaussianChannel ch = glu_channel(o);
        CovarianceMatrix g = random_cm(3, rng, false);
        CovarianceMatrix out = apply_channel_cm(ch, g);
        RMat want = o * g.gamma() * o.transpose();
        CHECK(frobenius_norm(out.gamma() - want) < 1e-10);
    }

    // Local orthogonals agree with apply_local_orthogonal.
    LocalOrthogonalSet ops = test::random_local_ops(2, rng);
    std::vector<RMat> blocks;
    for (const auto &o : ops) blocks.push_back(o.matrix());
    GaussianChannel local = glu_channel(direct_sum(blocks));
    CovarianceMatrix g = random_cm(2, rng, false);
    CHECK(frobenius_norm(apply_channel_cm(local, g).gamma() -
                         apply_local_orthogonal(g, ops).gamma()) < 1e-12);

    CHECK_THROWS_AS(glu_channel(2.0 * RMat::identity(4)), invalid_input);
}

TEST_CASE("maximally mixed input returns the A block") {
    std::mt19937_64 rng(11);
    GaussianChannel ch = random_channel(2, 2, rng);
    CovarianceMatrix mm(2, RMat(4, 4));
    CovarianceMatrix out = apply_channel_cm(ch, mm);
    CHECK(frobenius_norm(out.gamma() - ch.a) < 1e-14);
}

TEST_CASE("outputs of valid channels stay physical") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 1000; ++rep) {
        std::size_t n = 1 + rep % 3;
        GaussianChannel ch = random_channel(n, n, rng);
        CovarianceMatrix g = random_cm(n, rng, rep % 2 == 0);
        CovarianceMatrix out = apply_channel_cm(ch, g);
        CHECK(out.max_singular_value() <= 1.0 + 1e-8);
    }
}

TEST_CASE("composition through the CJ contraction is consistent") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        GaussianChannel c1 = random_channel(2, 2, rng);
        GaussianChannel c2 = random_channel(2, 2, rng);
        GaussianChannel c21 = compose(c2, c1);
        CovarianceMatrix g = random_cm(2, rng, false);
        CovarianceMatrix seq = apply_channel_cm(c2, apply_channel_cm(c1, g));
        CovarianceMatrix direct = apply_channel_cm(c21, g);
        CHECK(frobenius_norm(seq.gamma() - direct.gamma()) < 1e-8);
    }

    // glu_channel(O1) after glu_channel(O2) = glu_channel(O1 O2).
    RMat o1 = random_special_orthogonal(4, rng);
    RMat o2 = random_special_orthogonal(4, rng);
    GaussianChannel composed = compose(glu_channel(o1), glu_channel(o2));
    CHECK(frobenius_norm(composed.b - o1 * o2) < 1e-10);
    CHECK(frobenius_norm(composed.a) < 1e-10);
    CHECK(frobenius_norm(composed.d) < 1e-10);
}

TEST_CASE("is_product_channel") {
    std::mt19937_64 rng(19);
    // Tensor of two single-mode channels.
    GaussianChannel f1 = random_channel(1, 1, rng);
    GaussianChannel f2 = random_channel(1, 1, rng);
    GaussianChannel prod;
    prod.in_modes = prod.out_modes = 2;
    prod.a = direct_sum({f1.a, f2.a});
    prod.b = direct_sum({f1.b, f2.b});
    prod.d = direct_sum({f1.d, f2.d});
    CHECK(is_product_channel(prod, Bipartition::ab(2, {0})));

    GaussianChannel id = identity_channel(2);
    CHECK(is_product_channel(id, Bipartition::ab(2, {0})));

    // A 2-party channel whose CJ CM carries the gamma_0 correlation
    // pattern across the parties is not a product.
    GaussianChannel corr;
    corr.in_modes = corr.out_modes = 2;
    corr.a = fixture_gamma_p(0.0).gamma();  // couples out-mode 1 and out-mode 2
    corr.d = RMat(4, 4);
    corr.b = RMat(4, 4);
    CHECK_FALSE(is_product_channel(corr, Bipartition::ab(2, {0})));
}

TEST_CASE("gsep probe on orthogonal products keeps purity") {
    std::mt19937_64 rng(23);
    std::vector<RMat> blocks;
    for (int i = 0; i < 3; ++i) {
        LocalOrthogonalSet ops = test::random_local_ops(1, rng);
        blocks.push_back(ops[0].matrix());
    }
    GaussianChannel ch = glu_channel(direct_sum(blocks));
    GsepProbeReport rep = gsep_triviality_probe(ch, 60, 99);
    CHECK(rep.all_outputs_pure);
    CHECK(rep.pure_entangled_hits == 60);
    for (double r : rep.fit_residuals) CHECK(r < 1e-8);
}

TEST_CASE("gsep probe flags a noisy local factor") {
    std::mt19937_64 rng(29);
    GaussianChannel noisy;
    noisy.in_modes = noisy.out_modes = 2;
    // Mode 1: orthogonal conjugation; mode 2: contraction toward the
    // maximally mixed state (A = 0, B = s 1, valid for s < 1).
    RMat b(4, 4);
    RMat o = rot2(0.4);
    b.set_block(0, 0, o);
    b(2, 2) = 0.5;
    b(3, 3) = 0.5;
    noisy.a = RMat(4, 4);
    noisy.d = RMat(4, 4);
    noisy.b = b;
    validate_channel(noisy);
    GsepProbeReport rep = gsep_triviality_probe(noisy, 100, 7);
    CHECK(rep.pure_entangled_hits == 0);
    CHECK_FALSE(rep.all_outputs_pure);
    CHECK(rep.fit_residuals[0] < 1e-9);
    CHECK(rep.fit_residuals[1] > 1e-3);
}

TEST_CASE("probe rejects non-separable channels") {
    GaussianChannel id = identity_channel(2);
    // Entangle the CJ CM by conjugating with a non-local orthogonal.
    std::mt19937_64 rng(31);
    RMat o = random_special_orthogonal(4, rng);
    GaussianChannel rotated = glu_channel(o);
    // Generic O makes the B block non-local.
    bool threw = false;
    try {
        gsep_triviality_probe(rotated, 5, 1);
    } catch (const invalid_input &) {
        threw = true;
    }
    CHECK(threw);
    (void)id;
}

TEST_CASE("channel validation catches unphysical blocks") {
    GaussianChannel bad;
    bad.in_modes = bad.out_modes = 1;
    bad.a = RMat(2, 2);
    bad.d = RMat(2, 2);
    bad.b = 2.0 * RMat::identity(2);
    CHECK_THROWS_AS(validate_channel(bad), invalid_input);
}

TEST_SUITE_END();

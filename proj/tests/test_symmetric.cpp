#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobrauer/symmetric.hpp"

using namespace frobrauer;

TEST_CASE("elementary family base cases") {
    const auto alg = FrobeniusAlgebra::named("trunc(2)");
    SymRing ring(alg);
    CHECK(ring.elementary(-1, alg->unit()).is_zero());
    CHECK(ring.elementary(0, alg->basis_element(1)) == ring.scalar(1));  // tr(t) = 1
    CHECK(ring.elementary(0, alg->unit()) == ring.scalar(0));            // tr(1) = 0
    CHECK(ring.elementary(2, alg->unit()) == ring.generator(0, 2));
    // Linearity.
    const auto a = alg->element({Rat(2), Rat(-3)});
    CHECK(ring.elementary(1, a) ==
          Rat(2) * ring.generator(0, 1) + Rat(-3) * ring.generator(1, 1));
}

TEST_CASE("complete family: low degrees over the ground field") {
    const auto k = FrobeniusAlgebra::named("k");
    SymRing ring(k);
    const auto one = k->unit();
    const SymPoly z1 = ring.generator(0, 1);
    const SymPoly z2 = ring.generator(0, 2);
    const SymPoly z3 = ring.generator(0, 3);
    CHECK(ring.complete(0, one) == ring.scalar(1));
    CHECK(ring.complete(1, one) == z1);
    CHECK(ring.complete(2, one) == z1 * z1 - z2);
    CHECK(ring.complete(3, one) == z1 * z1 * z1 - Rat(2) * (z1 * z2) + z3);
}

TEST_CASE("complete equals elementary in degree one") {
    for (const char* name : {"k", "trunc(3)", "grass2", "mat2"}) {
        const auto alg = FrobeniusAlgebra::named(name);
        SymRing ring(alg);
        for (int i = 0; i < alg->dim(); ++i)
            CHECK(ring.complete(1, alg->basis_element(i)) ==
                  ring.elementary(1, alg->basis_element(i)));
    }
}

TEST_CASE("parity preservation of both families") {
    const auto g = FrobeniusAlgebra::named("grass2");
    SymRing ring(g);
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i < g->dim(); ++i) {
            const auto e = ring.elementary(n, g->basis_element(i));
            const auto h = ring.complete(n, g->basis_element(i));
            if (!e.is_zero()) CHECK(e.parity() == g->parity(i));
            if (!h.is_zero()) CHECK(h.parity() == g->parity(i));
        }
}

TEST_CASE("pairing identity between the two families") {
    // Sum over r+s = n and the basis c of (-1)^r e_r(a c) h_s(c-dual b)
    // collapses to the trace pairing in degree zero and to nothing above it.
    for (const char* name : {"k", "trunc(2)", "trunc(3)", "grass2", "mat2"}) {
        const auto alg = FrobeniusAlgebra::named(name);
        SymRing ring(alg);
        for (int n = 0; n <= 4; ++n)
            for (int ia = 0; ia < alg->dim(); ++ia)
                for (int ib = 0; ib < alg->dim(); ++ib) {
                    const auto a = alg->basis_element(ia);
                    const auto b = alg->basis_element(ib);
                    SymPoly total;
                    for (int r = 0; r <= n; ++r) {
                        const int s = n - r;
                        for (int c = 0; c < alg->dim(); ++c) {
                            const SymPoly e = ring.elementary(r, a * alg->basis_element(c));
                            if (e.is_zero()) continue;
                            const SymPoly h = ring.complete(s, alg->dual_element(c) * b);
                            if (h.is_zero()) continue;
                            total += Rat(r % 2 == 0 ? 1 : -1) * (e * h);
                        }
                    }
                    const SymPoly expected =
                        (n == 0) ? ring.scalar(a.trace_with(b)) : ring.zero();
                    INFO(name << " n=" << n << " a=" << alg->label(ia) << " b=" << alg->label(ib)
                              << " got " << ring.to_string(total));
                    CHECK(total == expected);
                }
    }
}

TEST_CASE("loop values by orientation and dot count") {
    const auto alg = FrobeniusAlgebra::named("trunc(2)");
    SymRing ring(alg);
    const auto t = alg->basis_element(1);
    CHECK(ring.bubble_value(LoopOrientation::clockwise, t, -1) == ring.scalar(1));
    CHECK(ring.bubble_value(LoopOrientation::counterclockwise, t, -1) == ring.scalar(-1));
    CHECK(ring.bubble_value(LoopOrientation::clockwise, t, -2).is_zero());
    CHECK(ring.bubble_value(LoopOrientation::counterclockwise, t, -3).is_zero());
    // Zero dots: the two orientations agree.
    for (int i = 0; i < alg->dim(); ++i) {
        const auto a = alg->basis_element(i);
        CHECK(ring.bubble_value(LoopOrientation::clockwise, a, 0) ==
              ring.bubble_value(LoopOrientation::counterclockwise, a, 0));
    }
    // One dot: opposite orientations differ already over the ground field.
    const auto k = FrobeniusAlgebra::named("k");
    SymRing kring(k);
    CHECK(kring.bubble_value(LoopOrientation::clockwise, k->unit(), 1) !=
          kring.bubble_value(LoopOrientation::counterclockwise, k->unit(), 1));
}

TEST_CASE("loop values pair to the negated trace") {
    // Sum over r+s = n and c of ccw(a c, r-1) cw(c-dual b, s-1) equals
    // -tr(ab) in degree zero and vanishes in higher degree.
    for (const char* name : {"k", "trunc(2)", "grass2"}) {
        const auto alg = FrobeniusAlgebra::named(name);
        SymRing ring(alg);
        for (int n = 0; n <= 4; ++n)
            for (int ia = 0; ia < alg->dim(); ++ia)
                for (int ib = 0; ib < alg->dim(); ++ib) {
                    const auto a = alg->basis_element(ia);
                    const auto b = alg->basis_element(ib);
                    SymPoly total;
                    for (int r = 0; r <= n; ++r)
                        for (int c = 0; c < alg->dim(); ++c) {
                            const SymPoly left = ring.bubble_value(
                                LoopOrientation::counterclockwise, a * alg->basis_element(c),
                                r - 1);
                            if (left.is_zero()) continue;
                            const SymPoly right = ring.bubble_value(
                                LoopOrientation::clockwise, alg->dual_element(c) * b, n - r - 1);
                            if (right.is_zero()) continue;
                            total += left * right;
                        }
                    const SymPoly expected =
                        (n == 0) ? ring.scalar(-a.trace_with(b)) : ring.zero();
                    INFO(name << " n=" << n << " a=" << alg->label(ia) << " b=" << alg->label(ib)
                              << " got " << ring.to_string(total));
                    CHECK(total == expected);
                }
    }
}

TEST_CASE("supercommutativity with odd generators") {
    const auto g = FrobeniusAlgebra::named("grass2");
    SymRing ring(g);
    // Cocenter classes are the four basis labels; classes 1 and 2 are odd.
    const SymPoly zo1 = ring.generator(1, 1);
    const SymPoly zo2 = ring.generator(2, 1);
    const SymPoly ze = ring.generator(0, 1);
    CHECK(zo1 * zo2 == Rat(-1) * (zo2 * zo1));
    CHECK((zo1 * zo1).is_zero());
    CHECK(zo1 * ze == ze * zo1);
    CHECK((zo1 * zo2) * zo1 == zo1 * (zo2 * zo1));

    const SymPoly mixed = ze + zo1;
    CHECK(!mixed.is_homogeneous());
    CHECK_THROWS_AS(mixed.parity(), InputError);
    CHECK(mixed.parity_part(Parity::odd) == zo1);
    CHECK(mixed.parity_part(Parity::even) == ze);
    CHECK((zo1 * zo2).parity() == Parity::even);
}

TEST_CASE("specialization kills higher-degree generators") {
    const auto k = FrobeniusAlgebra::named("k");
    SymRing ring(k);
    const SymPoly h2 = ring.complete(2, k->unit());  // z1^2 - z2
    CHECK(ring.specialize(h2, {Rat(5)}) == Rat(25));
    CHECK(ring.specialize(ring.generator(0, 3), {Rat(7)}) == Rat(0));
    CHECK(ring.specialize(ring.scalar(Rat(1, 3)), {Rat(0)}) == Rat(1, 3));
    CHECK_THROWS_AS(ring.specialize(h2, {Rat(1), Rat(2)}), InputError);

    const auto g = FrobeniusAlgebra::named("grass2");
    SymRing gring(g);
    const SymPoly p = gring.generator(0, 1) * gring.generator(3, 1);
    CHECK(gring.specialize(p, {Rat(2), Rat(0), Rat(0), Rat(3)}) == Rat(6));
}

TEST_CASE("rendering") {
    const auto k = FrobeniusAlgebra::named("k");
    SymRing ring(k);
    CHECK(ring.to_string(ring.zero()) == "0");
    CHECK(ring.to_string(ring.scalar(Rat(-1, 2))) == "-1/2");
    const SymPoly p = ring.generator(0, 1) * ring.generator(0, 1);
    CHECK(ring.to_string(p) == "z[1,1]^2");
    const auto j = ring.to_json(p);
    REQUIRE(j.size() == 1);
    CHECK(j[0].at("value") == "1");
    CHECK(j[0].at("monomial")[0][0] == "1");
    CHECK(j[0].at("monomial")[0][1] == 1);
    CHECK(j[0].at("monomial")[0][2] == 2);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobrauer/algebra.hpp"

#include <random>

using namespace frobrauer;

namespace {

AlgebraElement random_element(const AlgebraPtr& alg, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(-3, 3);
    std::vector<Rat> c(static_cast<std::size_t>(alg->dim()));
    for (auto& x : c) x = dist(rng);
    return alg->element(std::move(c));
}

// Re-expresses an algebra in a new homogeneous basis.  Row i of `p` gives the
// new basis vector b'_i in the old coordinates; `p` must be invertible and
// parity-preserving for the result to make sense.
FrobeniusAlgebra::Tables rebase(const AlgebraPtr& alg, const QMat& p) {
    const std::size_t n = static_cast<std::size_t>(alg->dim());
    const QMat pinv = *inverse(p);
    FrobeniusAlgebra::Tables t;
    t.name = alg->name() + "-rebased";
    for (std::size_t i = 0; i < n; ++i) {
        t.labels.push_back("c" + std::to_string(i));
        // Parity of the first old basis vector the row touches.
        for (std::size_t k = 0; k < n; ++k)
            if (p.at(i, k) != 0) {
                t.parity.push_back(alg->parity(static_cast<int>(k)));
                break;
            }
    }
    t.mult.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (p.at(i, k) == 0) continue;
                for (std::size_t l = 0; l < n; ++l) {
                    if (p.at(j, l) == 0) continue;
                    const auto& row = alg->mult_row(static_cast<int>(k), static_cast<int>(l));
                    for (std::size_t s = 0; s < n; ++s) {
                        if (row[s] == 0) continue;
                        for (std::size_t m = 0; m < n; ++m)
                            t.mult[i][j][m] += p.at(i, k) * p.at(j, l) * row[s] * pinv.at(s, m);
                    }
                }
            }
    t.trace.assign(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            t.trace[i] += p.at(i, k) * alg->trace_coeff(static_cast<int>(k));
    return t;
}

std::vector<Rat> to_new_coords(const std::vector<Rat>& v, const QMat& pinv) {
    const std::size_t n = v.size();
    std::vector<Rat> w(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) w[i] += v[k] * pinv.at(k, i);
    return w;
}

std::vector<Rat> to_old_coords(const std::vector<Rat>& w, const QMat& p) {
    const std::size_t n = w.size();
    std::vector<Rat> v(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) v[k] += w[i] * p.at(i, k);
    return v;
}

}  // namespace

TEST_CASE("dual basis pairs to the identity under the trace") {
    for (const char* name : {"k", "trunc(2)", "trunc(3)", "grass2", "mat2"}) {
        const auto alg = FrobeniusAlgebra::named(name);
        for (int i = 0; i < alg->dim(); ++i)
            for (int j = 0; j < alg->dim(); ++j) {
                const Rat expected = (i == j) ? 1 : 0;
                CHECK(alg->dual_element(i).trace_with(alg->basis_element(j)) == expected);
                // Flipped order picks up the sign of the dualised element.
                const Rat flipped =
                    (i == j) ? Rat(parity_sign(alg->parity(i))) : Rat(0);
                CHECK(alg->basis_element(j).trace_with(alg->dual_element(i)) == flipped);
            }
    }
}

TEST_CASE("explicit dual bases of the built-ins") {
    const auto trunc2 = FrobeniusAlgebra::named("trunc(2)");
    CHECK(trunc2->dual_element(0) == trunc2->basis_element(1));  // dual of 1 is t
    CHECK(trunc2->dual_element(1) == trunc2->basis_element(0));  // dual of t is 1

    const auto g = FrobeniusAlgebra::named("grass2");
    const int i1 = g->label_index("1"), ith1 = g->label_index("th1"),
              ith2 = g->label_index("th2"), ith12 = g->label_index("th12");
    CHECK(g->dual_element(i1) == g->basis_element(ith12));
    CHECK(g->dual_element(ith1) == Rat(-1) * g->basis_element(ith2));
    CHECK(g->dual_element(ith2) == g->basis_element(ith1));
    CHECK(g->dual_element(ith12) == g->basis_element(i1));
}

TEST_CASE("trace decompositions recover the element") {
    std::mt19937_64 rng(2024);
    for (const char* name : {"trunc(3)", "grass2", "mat2"}) {
        const auto alg = FrobeniusAlgebra::named(name);
        for (int trial = 0; trial < 8; ++trial) {
            const AlgebraElement a = random_element(alg, rng);
            AlgebraElement via_duals = alg->zero();
            AlgebraElement via_basis = alg->zero();
            for (int b = 0; b < alg->dim(); ++b) {
                via_basis += alg->dual_element(b).trace_with(a) * alg->basis_element(b);
                via_duals += a.trace_with(alg->basis_element(b)) * alg->dual_element(b);
            }
            CHECK(via_basis == a);
            CHECK(via_duals == a);
        }
        // The unit decomposes as the trace-weighted sum of duals.
        AlgebraElement one = alg->zero();
        for (int b = 0; b < alg->dim(); ++b)
            one += alg->basis_element(b).trace() * alg->dual_element(b);
        CHECK(one == alg->unit());
    }
}

TEST_CASE("invariant tensor and twist do not depend on the basis") {
    struct Case {
        const char* name;
        QMat p;
    };
    QMat p3(3, 3);
    p3.at(0, 0) = 1;
    p3.at(1, 0) = 1;
    p3.at(1, 1) = 1;
    p3.at(2, 1) = 2;
    p3.at(2, 2) = 1;
    QMat pg(4, 4);
    pg.at(0, 0) = 1;
    pg.at(0, 3) = 2;  // even: 1 + 2 th12
    pg.at(1, 1) = 2;
    pg.at(1, 2) = 1;  // odd: 2 th1 + th2
    pg.at(2, 1) = 1;
    pg.at(2, 2) = 1;  // odd: th1 + th2
    pg.at(3, 3) = 1;
    for (const auto& c : {Case{"trunc(3)", p3}, Case{"grass2", pg}}) {
        const auto alg = FrobeniusAlgebra::named(c.name);
        const auto rebased = FrobeniusAlgebra::make(rebase(alg, c.p));
        const QMat pinv = *inverse(c.p);
        const std::size_t n = static_cast<std::size_t>(alg->dim());

        const QMat t_old = alg->invariant_tensor();
        const QMat t_new = rebased->invariant_tensor();
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) {
                Rat mapped = 0;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        mapped += t_new.at(i, j) * c.p.at(i, k) * c.p.at(j, l);
                CHECK(mapped == t_old.at(k, l));
            }

        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 4; ++trial) {
            const AlgebraElement a = random_element(alg, rng);
            const AlgebraElement d_old = a.dagger();
            const AlgebraElement a_new = rebased->element(to_new_coords(a.coeffs(), pinv));
            const std::vector<Rat> d_mapped = to_old_coords(a_new.dagger().coeffs(), c.p);
            CHECK(alg->element(d_mapped) == d_old);
        }
    }
}

TEST_CASE("twist of the unit") {
    const auto k = FrobeniusAlgebra::named("k");
    CHECK(k->unit().dagger() == k->unit());

    const auto trunc2 = FrobeniusAlgebra::named("trunc(2)");
    CHECK(trunc2->unit().dagger() == Rat(2) * trunc2->basis_element(1));  // 2t

    const auto g = FrobeniusAlgebra::named("grass2");
    CHECK(g->unit().dagger().is_zero());
}

TEST_CASE("bend identity holds for every built-in") {
    for (const char* name : {"k", "trunc(2)", "trunc(3)", "grass2", "mat2"}) {
        const auto report = FrobeniusAlgebra::named(name)->verify_beam();
        INFO(name << ": " << report.witness);
        CHECK(report.ok);
    }
}

TEST_CASE("cocenter dimensions and coordinates") {
    const auto mat2 = FrobeniusAlgebra::named("mat2");
    REQUIRE(mat2->cocenter_dim() == 1);
    CHECK(mat2->label(mat2->cocenter_reps()[0]) == "E11");
    const auto e22 = mat2->basis_element(mat2->label_index("E22"));
    const auto e12 = mat2->basis_element(mat2->label_index("E12"));
    CHECK(mat2->cocenter_coords(e22) == std::vector<Rat>{Rat(1)});
    CHECK(mat2->cocenter_coords(e12) == std::vector<Rat>{Rat(0)});

    CHECK(FrobeniusAlgebra::named("k")->cocenter_dim() == 1);
    CHECK(FrobeniusAlgebra::named("trunc(3)")->cocenter_dim() == 3);
    CHECK(FrobeniusAlgebra::named("trunc(5)")->cocenter_dim() == 5);

    // The exterior algebra is supercommutative, so nothing is quotiented away.
    const auto g = FrobeniusAlgebra::named("grass2");
    CHECK(g->cocenter_dim() == 4);
    CHECK(is_odd(g->cocenter_parity(1)));

    // Coordinates are linear and vanish on supercommutators.
    const auto e21 = mat2->basis_element(mat2->label_index("E21"));
    const auto comm = e12 * e21 - e21 * e12;
    CHECK(mat2->cocenter_coords(comm) == std::vector<Rat>{Rat(0)});
}

TEST_CASE("element arithmetic and parity bookkeeping") {
    const auto g = FrobeniusAlgebra::named("grass2");
    const auto th1 = g->basis_element(1), th2 = g->basis_element(2);
    CHECK(th1 * th2 == g->basis_element(3));
    CHECK(th2 * th1 == Rat(-1) * g->basis_element(3));
    CHECK((th1 * th1).is_zero());
    CHECK(th1.parity() == Parity::odd);
    CHECK((th1 * th2).parity() == Parity::even);
    CHECK(g->zero().parity() == Parity::even);

    const auto mixed = g->unit() + th1;
    CHECK(!mixed.is_homogeneous());
    CHECK_THROWS_AS(mixed.parity(), InputError);
    CHECK(mixed.parity_part(Parity::odd) == th1);
    CHECK(mixed.parity_part(Parity::even) == g->unit());

    CHECK(th1.to_string() == "th1");
    CHECK((Rat(1, 2) * th1 + th2).to_string() == "1/2 th1 + th2");
}

TEST_CASE("table validation reports each failure kind with a witness") {
    using Kind = AlgebraError::Kind;
    auto expect_kind = [](FrobeniusAlgebra::Tables t, Kind kind, const char* fragment) {
        try {
            FrobeniusAlgebra::make(std::move(t));
            FAIL_CHECK("expected a validation failure");
        } catch (const AlgebraError& e) {
            CHECK(e.kind == kind);
            INFO("witness: " << e.witness);
            CHECK(e.witness.find(fragment) != std::string::npos);
        }
    };

    const auto base3 = FrobeniusAlgebra::named("trunc(3)");
    auto tables_of = [](const AlgebraPtr& a) {
        FrobeniusAlgebra::Tables t;
        t.name = a->name();
        for (int i = 0; i < a->dim(); ++i) {
            t.labels.push_back(a->label(i));
            t.parity.push_back(a->parity(i));
            t.trace.push_back(a->trace_coeff(i));
        }
        t.mult.assign(static_cast<std::size_t>(a->dim()),
                      std::vector<std::vector<Rat>>(static_cast<std::size_t>(a->dim())));
        for (int i = 0; i < a->dim(); ++i)
            for (int j = 0; j < a->dim(); ++j)
                t.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    a->mult_row(i, j);
        return t;
    };

    {
        auto t = tables_of(base3);
        t.parity.pop_back();
        expect_kind(std::move(t), Kind::BadTable, "sizes");
    }
    {
        auto t = tables_of(FrobeniusAlgebra::named("grass2"));
        t.mult[1][1] = {Rat(0), Rat(0), Rat(1), Rat(0)};  // th1 th1 := th2 (odd)
        expect_kind(std::move(t), Kind::ParityViolation, "th1 * th1");
    }
    {
        auto t = tables_of(FrobeniusAlgebra::named("grass2"));
        t.trace[1] = 1;  // trace must vanish on odd elements
        expect_kind(std::move(t), Kind::ParityViolation, "th1");
    }
    {
        FrobeniusAlgebra::Tables t;
        t.name = "corrupt";
        t.labels = {"1", "t"};
        t.parity = {Parity::even, Parity::even};
        t.mult = {{{Rat(1), Rat(0)}, {Rat(1), Rat(0)}},   // 1*1 = 1, 1*t := 1
                  {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}}};  // t*1 = t, t*t = 0
        t.trace = {Rat(0), Rat(1)};
        expect_kind(std::move(t), Kind::NotUnital, "unit");
    }
    {
        auto t = tables_of(base3);
        t.mult[1][2] = {Rat(0), Rat(1), Rat(0)};  // t * t^2 := t
        expect_kind(std::move(t), Kind::NotAssociative, "*");
    }
    {
        auto t = tables_of(FrobeniusAlgebra::named("mat2"));
        t.trace[1] = 1;  // trace(E12) := 1 breaks symmetry
        expect_kind(std::move(t), Kind::TraceNotSymmetric, "E12");
    }
    {
        auto t = tables_of(FrobeniusAlgebra::named("trunc(2)"));
        t.trace = {Rat(1), Rat(0)};  // kernel contains t
        expect_kind(std::move(t), Kind::TraceDegenerate, "t");
    }
}

TEST_CASE("JSON round trip and named lookup") {
    const auto g = FrobeniusAlgebra::named("grass2");
    const auto back = FrobeniusAlgebra::from_json(g->to_json());
    CHECK(back->dim() == g->dim());
    CHECK(back->label(3) == "th12");
    CHECK(back->basis_element(1) * back->basis_element(2) == back->basis_element(3));
    CHECK(back->to_json().at("cocenter_representatives").size() == 4);

    CHECK(FrobeniusAlgebra::named("trunc(4)")->dim() == 4);
    CHECK_THROWS_AS(FrobeniusAlgebra::named("nonsense"), InputError);
    CHECK_THROWS_AS(FrobeniusAlgebra::named("trunc(x)"), InputError);
    CHECK_THROWS_AS(FrobeniusAlgebra::named("trunc(0)"), InputError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobrauer/eval.hpp"
#include "frobrauer/normal.hpp"
#include "frobrauer/relations.hpp"

#include <set>

using namespace frobrauer;

namespace {

std::vector<AlgebraPtr> catalogue_algebras() {
    return {FrobeniusAlgebra::ground(), FrobeniusAlgebra::truncated_polynomial(2),
            FrobeniusAlgebra::truncated_polynomial(3), FrobeniusAlgebra::grassmann_pair(),
            FrobeniusAlgebra::matrix_algebra2()};
}

}  // namespace

TEST_CASE("relation names are unique and grouped") {
    const auto alg = FrobeniusAlgebra::truncated_polynomial(2);
    std::set<std::string> names;
    for (const RelationPair& rel : relation_registry(alg)) {
        CAPTURE(rel.name);
        CHECK(names.insert(rel.name).second);
        CHECK((rel.group == "defining" || rel.group == "derived" || rel.group == "theorem"));
        CHECK(rel.lhs->domain() == rel.rhs->domain());
        CHECK(rel.lhs->codomain() == rel.rhs->codomain());
    }
    CHECK(names.size() > 40);
}

TEST_CASE("every catalogued relation normalizes to equal sides") {
    for (const auto& alg : catalogue_algebras()) {
        const Normalizer nz(alg);
        for (const RelationPair& rel : relation_registry(alg)) {
            CAPTURE(alg->name());
            CAPTURE(rel.name);
            CHECK(nz.normalize(rel.lhs) == nz.normalize(rel.rhs));
        }
    }
}

TEST_CASE("bubble slides hold for dot counts beyond the catalogue") {
    for (const auto& alg :
         {FrobeniusAlgebra::truncated_polynomial(3), FrobeniusAlgebra::grassmann_pair(),
          FrobeniusAlgebra::matrix_algebra2()}) {
        const Normalizer nz(alg);
        for (int b = 0; b < alg->dim(); ++b) {
            for (int r = 0; r <= 3; ++r) {
                const RelationPair left = bubble_slide_ccw(alg, alg->basis_element(b), r);
                CAPTURE(alg->name());
                CAPTURE(left.name);
                CHECK(nz.normalize(left.lhs) == nz.normalize(left.rhs));
                const RelationPair right = bubble_slide_cw(alg, alg->basis_element(b), r);
                CAPTURE(right.name);
                CHECK(nz.normalize(right.lhs) == nz.normalize(right.rhs));
            }
        }
    }
}

TEST_CASE("catalogued relations evaluate equally on a small module") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const auto gl = GlContext::make(trunc, 1, 1);
    const Evaluator ev(gl, {Dir::up});
    for (const RelationPair& rel : relation_registry(trunc)) {
        CAPTURE(rel.name);
        const CheckResult result = ev.check_relation(rel.lhs, rel.rhs);
        CAPTURE(result.witness);
        CHECK(result.ok);
    }
}

TEST_CASE("a wrong-signed dot slide is rejected") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);
    CHECK(nz.normalize("x_uu . (dot * id(up))") !=
          nz.normalize("(id(up) * dot) . x_uu - teleport(1,2) @ (up,up)"));
    const auto gl = GlContext::make(trunc, 1, 1);
    const Evaluator ev(gl, {});
    const CheckResult result = ev.check_relation(
        "x_uu . (dot * id(up))", "(id(up) * dot) . x_uu - teleport(1,2) @ (up,up)");
    CHECK_FALSE(result.ok);
    CHECK_FALSE(result.witness.empty());
}

TEST_CASE("braid relations cover every orientation word") {
    std::set<std::string> seen;
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    for (const RelationPair& rel : relation_registry(trunc)) {
        if (rel.name.rfind("braid-", 0) == 0) seen.insert(rel.name);
    }
    CHECK(seen.size() == 8);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobrauer/eval.hpp"
#include "frobrauer/normal.hpp"

#include <string>
#include <vector>

using namespace frobrauer;

namespace {

MatchPoint pt(const std::string& s) {
    return MatchPoint{s.front() == 'c', std::stoi(s.substr(1))};
}

NormalString str_of(const std::string& in, const std::string& out, int token, int dots) {
    return NormalString{pt(in), pt(out), dots, token};
}

DecoratedMatching key_of(std::vector<NormalString> strings) {
    return DecoratedMatching{std::move(strings)};
}

const ObjectWord kUp = {Dir::up};
const ObjectWord kDown = {Dir::down};
const ObjectWord kUpUp = {Dir::up, Dir::up};

}  // namespace

TEST_CASE("identities normalize to unit-token matchings") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);

    NormalMorphism expected(kUp, kUp);
    expected.add_term(key_of({str_of("d1", "c1", 0, 0)}), SymPoly::scalar(1));
    CHECK(nz.normalize("id(up)") == expected);

    NormalMorphism expected_down(kDown, kDown);
    expected_down.add_term(key_of({str_of("c1", "d1", 0, 0)}), SymPoly::scalar(1));
    CHECK(nz.normalize("id(down)") == expected_down);
}

TEST_CASE("strings without tokens expand over the decomposition of the unit") {
    const auto mat = FrobeniusAlgebra::matrix_algebra2();
    const Normalizer nz(mat);

    NormalMorphism expected(kUp, kUp);
    expected.add_term(key_of({str_of("d1", "c1", mat->label_index("E11"), 0)}),
                      SymPoly::scalar(1));
    expected.add_term(key_of({str_of("d1", "c1", mat->label_index("E22"), 0)}),
                      SymPoly::scalar(1));
    CHECK(nz.normalize("id(up)") == expected);
}

TEST_CASE("dots pile up on one string") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);

    NormalMorphism expected(kUp, kUp);
    expected.add_term(key_of({str_of("d1", "c1", 0, 2)}), SymPoly::scalar(1));
    CHECK(nz.normalize("dot . dot") == expected);
}

TEST_CASE("upward tokens compose top-to-bottom in the algebra") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);
    CHECK(nz.normalize("tok[t] . tok[t]").is_zero());

    NormalMorphism expected(kUp, kUp);
    expected.add_term(key_of({str_of("d1", "c1", trunc->label_index("t"), 0)}),
                      SymPoly::scalar(1));
    CHECK(nz.normalize("tok[1 + t] . tok[t]") == expected);

    const auto grass = FrobeniusAlgebra::grassmann_pair();
    const Normalizer gz(grass);
    const int th12 = grass->label_index("th12");
    NormalMorphism plus(kUp, kUp), minus(kUp, kUp);
    plus.add_term(key_of({str_of("d1", "c1", th12, 0)}), SymPoly::scalar(1));
    minus.add_term(key_of({str_of("d1", "c1", th12, 0)}), SymPoly::scalar(-1));
    CHECK(gz.normalize("tok[th1] . tok[th2]") == plus);
    CHECK(gz.normalize("tok[th2] . tok[th1]") == minus);
}

TEST_CASE("downward tokens compose with the super twist") {
    const auto grass = FrobeniusAlgebra::grassmann_pair();
    const Normalizer gz(grass);
    const int th12 = grass->label_index("th12");
    NormalMorphism plus(kDown, kDown), minus(kDown, kDown);
    plus.add_term(key_of({str_of("c1", "d1", th12, 0)}), SymPoly::scalar(1));
    minus.add_term(key_of({str_of("c1", "d1", th12, 0)}), SymPoly::scalar(-1));
    CHECK(gz.normalize("tok_d[th1] . tok_d[th2]") == plus);
    CHECK(gz.normalize("tok_d[th2] . tok_d[th1]") == minus);

    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);
    CHECK(nz.normalize("tok_d[t] . tok_d[t]").is_zero());
}

TEST_CASE("decorations slide across arcs unchanged") {
    const auto grass = FrobeniusAlgebra::grassmann_pair();
    const Normalizer gz(grass);
    CHECK(gz.normalize("cap_l . (tok_d[th1] * id(up))") ==
          gz.normalize("cap_l . (id(down) * tok[th1])"));
    CHECK(gz.normalize("(tok[th2] * id(down)) . cup_l") ==
          gz.normalize("(id(up) * tok_d[th2]) . cup_l"));

    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);
    CHECK(nz.normalize("cap_r . (dot * id(down))") ==
          nz.normalize("cap_r . (id(up) * dot_d)"));
    CHECK(nz.normalize("(id(down) * dot) . cup_r") ==
          nz.normalize("(dot_d * id(up)) . cup_r"));
}

TEST_CASE("snake compositions normalize to identities") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);
    CHECK(nz.normalize("(cap_r * id(up)) . (id(up) * cup_r)") == nz.normalize("id(up)"));
    CHECK(nz.normalize("(id(down) * cap_r) . (cup_r * id(down))") == nz.normalize("id(down)"));
    CHECK(nz.normalize("(cap_l * id(down)) . (id(down) * cup_l)") == nz.normalize("id(down)"));
    CHECK(nz.normalize("(id(up) * cap_l) . (cup_l * id(up))") == nz.normalize("id(up)"));
}

TEST_CASE("crossings satisfy the symmetric-group and sideways relations") {
    for (const auto& alg :
         {FrobeniusAlgebra::ground(), FrobeniusAlgebra::truncated_polynomial(2),
          FrobeniusAlgebra::grassmann_pair()}) {
        const Normalizer nz(alg);
        CHECK(nz.normalize("x_uu . x_uu") == nz.normalize("id(up,up)"));
        CHECK(nz.normalize("(x_uu * id(up)) . (id(up) * x_uu) . (x_uu * id(up))") ==
              nz.normalize("(id(up) * x_uu) . (x_uu * id(up)) . (id(up) * x_uu)"));
        CHECK(nz.normalize("x_du . x_ud") == nz.normalize("id(up,down)"));
        CHECK(nz.normalize("x_ud . x_du") == nz.normalize("id(down,up)"));
        CHECK(nz.normalize("(cap_l * id(up)) . (id(down) * x_uu) . (cup_r * id(up))") ==
              nz.normalize("id(up)"));
        CHECK(nz.normalize("(id(up) * cap_r) . (x_uu * id(down)) . (id(up) * cup_l)") ==
              nz.normalize("id(up)"));
    }
}

TEST_CASE("tokens slide over crossings; dots slide with a teleporter correction") {
    for (const auto& alg :
         {FrobeniusAlgebra::truncated_polynomial(2), FrobeniusAlgebra::grassmann_pair(),
          FrobeniusAlgebra::matrix_algebra2()}) {
        const Normalizer nz(alg);
        const std::string a = alg->label(alg->dim() - 1);
        CHECK(nz.normalize("x_uu . (tok[" + a + "] * id(up))") ==
              nz.normalize("(id(up) * tok[" + a + "]) . x_uu"));
        CHECK(nz.normalize("x_uu . (dot * id(up))") ==
              nz.normalize("(id(up) * dot) . x_uu + teleport(1,2) @ (up,up)"));
        CHECK(nz.normalize("x_uu . (id(up) * dot)") ==
              nz.normalize("(dot * id(up)) . x_uu - teleport(1,2) @ (up,up)"));
        CHECK(nz.normalize("dot . tok[" + a + "]") == nz.normalize("tok[" + a + "] . dot"));
    }
}

TEST_CASE("left and right mates of downward decorations agree") {
    const auto grass = FrobeniusAlgebra::grassmann_pair();
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    for (const auto& [alg, label] :
         {std::pair<AlgebraPtr, std::string>{trunc, "t"}, {grass, "th1"}, {grass, "th12"}}) {
        const Normalizer nz(alg);
        CHECK(nz.normalize("(cap_l * id(down)) . (id(down) * tok[" + label +
                           "] * id(down)) . (id(down) * cup_l)") ==
              nz.normalize("tok_d[" + label + "]"));
    }
    const Normalizer nz(trunc);
    CHECK(nz.normalize(
              "(cap_l * id(down)) . (id(down) * dot * id(down)) . (id(down) * cup_l)") ==
          nz.normalize("dot_d"));
    CHECK(nz.normalize("(cap_l * id(down,down)) . (id(down) * cap_l * id(up,down,down)) . "
                       "(id(down,down) * x_uu * id(down,down)) . "
                       "(id(down,down,up) * cup_l * id(down)) . (id(down,down) * cup_l)") ==
          nz.normalize("x_dd"));
}

TEST_CASE("closed loops extract exactly the ring value of the bubble") {
    for (const auto& alg :
         {FrobeniusAlgebra::truncated_polynomial(3), FrobeniusAlgebra::grassmann_pair(),
          FrobeniusAlgebra::matrix_algebra2()}) {
        const Normalizer nz(alg);
        const SymRing& ring = nz.ring();
        for (const LoopOrientation orient :
             {LoopOrientation::clockwise, LoopOrientation::counterclockwise}) {
            for (int b = 0; b < alg->dim(); ++b) {
                for (int r = 0; r <= 2; ++r) {
                    const NormalMorphism got =
                        nz.normalize(bubble_term(orient, alg->basis_element(b), r));
                    NormalMorphism expected({}, {});
                    expected.add_term(DecoratedMatching{},
                                      ring.bubble_value(orient, alg->basis_element(b), r));
                    CHECK(got == expected);
                }
            }
        }
    }

    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);
    NormalMorphism expected({}, {});
    expected.add_term(DecoratedMatching{},
                      nz.ring().bubble_value(LoopOrientation::counterclockwise,
                                             trunc->basis_element(1), 2));
    CHECK(nz.normalize("bub_ccw(t, 2)") == expected);
}

TEST_CASE("odd circles multiply left to right regardless of closing order") {
    const auto grass = FrobeniusAlgebra::grassmann_pair();
    const Normalizer nz(grass);
    const SymRing& ring = nz.ring();
    const AlgebraElement th1 = grass->basis_element(grass->label_index("th1"));
    const AlgebraElement th2 = grass->basis_element(grass->label_index("th2"));

    const ObjectWord du = {Dir::down, Dir::up};
    const TermPtr l1 = DiagramTerm::generator(GenKind::cup_right);
    const TermPtr l2 = DiagramTerm::hcomp(DiagramTerm::identity(kDown), DiagramTerm::token_up(th1));
    const TermPtr l3 = DiagramTerm::hcomp(DiagramTerm::generator(GenKind::cup_right),
                                          DiagramTerm::identity(du));
    const TermPtr l4 = DiagramTerm::hcomp(
        DiagramTerm::hcomp(DiagramTerm::identity(kDown), DiagramTerm::token_up(th2)),
        DiagramTerm::identity(du));
    const TermPtr close_right =
        DiagramTerm::hcomp(DiagramTerm::identity(du), DiagramTerm::generator(GenKind::cap_left));
    const TermPtr close_left =
        DiagramTerm::hcomp(DiagramTerm::generator(GenKind::cap_left), DiagramTerm::identity(du));
    const auto chain = [](std::vector<TermPtr> ls) {
        TermPtr acc = ls.front();
        for (std::size_t i = 1; i < ls.size(); ++i) acc = DiagramTerm::vcomp(ls[i], acc);
        return acc;
    };
    // Both terms draw the circle with th2 to the left of the circle with
    // th1; they differ only in which circle is closed first.
    const TermPtr t_a =
        chain({l1, l2, l3, l4, close_right, DiagramTerm::generator(GenKind::cap_left)});
    const TermPtr t_b =
        chain({l1, l2, l3, l4, close_left, DiagramTerm::generator(GenKind::cap_left)});

    NormalMorphism expected({}, {});
    expected.add_term(DecoratedMatching{}, ring.elementary(1, th2) * ring.elementary(1, th1));
    CHECK(nz.normalize(t_a) == expected);
    CHECK(nz.normalize(t_b) == expected);
}

TEST_CASE("teleporters normalize to paired-token matchings") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);
    NormalMorphism expected(kUpUp, kUpUp);
    expected.add_term(key_of({str_of("d1", "c1", 0, 0), str_of("d2", "c2", 1, 0)}),
                      SymPoly::scalar(1));
    expected.add_term(key_of({str_of("d1", "c1", 1, 0), str_of("d2", "c2", 0, 0)}),
                      SymPoly::scalar(1));
    CHECK(nz.normalize("teleport(1,2) @ (up,up)") == expected);
}

TEST_CASE("odd decorations at different heights anticommute") {
    const auto grass = FrobeniusAlgebra::grassmann_pair();
    const Normalizer gz(grass);
    const int th1 = grass->label_index("th1");
    const int th2 = grass->label_index("th2");
    const DecoratedMatching key =
        key_of({str_of("d1", "c1", th1, 0), str_of("d2", "c2", th2, 0)});

    NormalMorphism plus(kUpUp, kUpUp), minus(kUpUp, kUpUp);
    plus.add_term(key, SymPoly::scalar(1));
    minus.add_term(key, SymPoly::scalar(-1));
    CHECK(gz.normalize("(id(up) * tok[th2]) . (tok[th1] * id(up))") == plus);
    CHECK(gz.normalize("(tok[th1] * id(up)) . (id(up) * tok[th2])") == minus);
}

TEST_CASE("every basis matching is the normal form of its own realization") {
    struct Case {
        AlgebraPtr algebra;
        ObjectWord domain, codomain;
        int max_dots;
    };
    const std::vector<Case> cases = {
        {FrobeniusAlgebra::truncated_polynomial(2), kUpUp, kUpUp, 2},
        {FrobeniusAlgebra::grassmann_pair(),
         {Dir::up, Dir::down},
         {Dir::down, Dir::up},
         1},
        {FrobeniusAlgebra::grassmann_pair(), {Dir::up, Dir::up, Dir::down}, kUp, 1},
        {FrobeniusAlgebra::matrix_algebra2(), kUp, kUp, 1},
    };
    for (const Case& c : cases) {
        const Normalizer nz(c.algebra);
        const auto keys =
            enumerate_decorated_matchings(c.algebra, c.domain, c.codomain, c.max_dots);
        CHECK(!keys.empty());
        for (const DecoratedMatching& key : keys) {
            NormalMorphism expected(c.domain, c.codomain);
            expected.add_term(key, SymPoly::scalar(1));
            const NormalMorphism got = nz.normalize(nz.realize(key, c.domain, c.codomain));
            CHECK(got == expected);
        }
    }
}

TEST_CASE("the basis for two ascending strands has the expected size") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    CHECK(enumerate_decorated_matchings(trunc, kUpUp, kUpUp, 2).size() == 48);
    const auto mat = FrobeniusAlgebra::matrix_algebra2();
    CHECK(enumerate_decorated_matchings(mat, kUp, kUp, 1).size() == 8);
    const auto ground = FrobeniusAlgebra::ground();
    CHECK(enumerate_decorated_matchings(ground, {Dir::up, Dir::down}, {Dir::down, Dir::up}, 0)
              .size() == 2);
}

TEST_CASE("normalize then expand preserves the normal form") {
    struct Case {
        AlgebraPtr algebra;
        std::string decorated;
    };
    const std::vector<Case> cases = {
        {FrobeniusAlgebra::truncated_polynomial(2), "t"},
        {FrobeniusAlgebra::grassmann_pair(), "th1"},
        {FrobeniusAlgebra::matrix_algebra2(), "E12"},
    };
    for (const Case& c : cases) {
        const Normalizer nz(c.algebra);
        const std::string& a = c.decorated;
        const std::vector<std::string> sources = {
            "x_uu . (dot * tok[" + a + "])",
            "cap_r . (dot * id(down))",
            "(id(up) * cap_l) . (cup_l * tok[" + a + "]) . dot",
            "x_ud . (tok[" + a + "] * dot_d)",
            "teleport(1,3) @ (up,down,up)",
            "bub_ccw(" + a + ", 1) * dot",
            "x_dd . (dot_d * tok_d[" + a + "])",
            "x_uu + 2 (tok[" + a + "] * dot) - x_uu . x_uu . x_uu",
        };
        for (const std::string& src : sources) {
            const NormalMorphism once = nz.normalize(src);
            CHECK(nz.normalize(nz.expand(once)) == once);
        }
    }
}

TEST_CASE("evaluation agrees before and after normalization") {
    struct Config {
        AlgebraPtr algebra;
        int m, n;
        std::string decorated;
    };
    const std::vector<Config> configs = {
        {FrobeniusAlgebra::truncated_polynomial(2), 1, 1, "t"},
        {FrobeniusAlgebra::grassmann_pair(), 2, 1, "th1"},
        {FrobeniusAlgebra::matrix_algebra2(), 1, 0, "E21"},
    };
    for (const Config& c : configs) {
        const Normalizer nz(c.algebra);
        const Evaluator ev(GlContext::make(c.algebra, c.m, c.n), {});
        const std::string& a = c.decorated;
        const std::vector<std::string> sources = {
            "x_uu . (dot * id(up))",
            "cap_r . (dot * id(down))",
            "x_ud",
            "teleport(1,2) @ (up,up)",
            "bub_ccw(" + a + ", 1) * id(up)",
            "x_dd . (tok_d[" + a + "] * id(down))",
        };
        for (const std::string& src : sources) {
            const TermPtr term = parse(src, c.algebra);
            const CheckResult r = ev.check_relation(nz.expand(nz.normalize(term)), term);
            INFO(src << ": " << r.witness);
            CHECK(static_cast<bool>(r));
        }
    }
}

TEST_CASE("composition and tensor act through normal forms") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);
    CHECK(nz.compose(nz.normalize("x_uu"), nz.normalize("x_uu")) == nz.normalize("id(up,up)"));
    CHECK(nz.tensor(nz.normalize("dot"), nz.normalize("tok[t]")) ==
          nz.normalize("dot * tok[t]"));
    CHECK_THROWS_AS(nz.compose(nz.normalize("x_uu"), nz.normalize("cup_r")), TypeMismatch);
}

TEST_CASE("specialization keeps degree-one classes and kills higher ones") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);
    const std::vector<Rat> theta = {3, 5};

    CHECK(nz.specialize(nz.normalize("bub_ccw(t, 1)"), theta).is_zero());

    NormalMorphism five({}, {});
    five.add_term(DecoratedMatching{}, SymPoly::scalar(5));
    CHECK(nz.specialize(nz.normalize("bub_ccw(t, 0)"), theta) == five);

    NormalMorphism three({}, {});
    three.add_term(DecoratedMatching{}, SymPoly::scalar(3));
    CHECK(nz.specialize(nz.normalize("bub_cw(1, 0)"), theta) == three);
}

TEST_CASE("the work bound aborts runaway rewrites") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer tight(trunc, 2);
    CHECK_THROWS_AS(tight.normalize("dot . dot"), DepthError);
    const Normalizer roomy(trunc, 100000);
    CHECK_NOTHROW(roomy.normalize("dot . dot"));
}

TEST_CASE("normal forms serialize with matchings, decorations, and coefficients") {
    const auto trunc = FrobeniusAlgebra::truncated_polynomial(2);
    const Normalizer nz(trunc);
    const nlohmann::json j = nz.normalize("tok[t] . dot").to_json(nz.ring());
    CHECK(j["domain"] == "up");
    CHECK(j["codomain"] == "up");
    REQUIRE(j["terms"].size() == 1);
    const auto& term = j["terms"][0];
    CHECK(term["matching"] == nlohmann::json::array({{"d1", "c1"}}));
    CHECK(term["tokens"] == nlohmann::json::array({"t"}));
    CHECK(term["dots"] == nlohmann::json::array({1}));
    CHECK(term["coeff"] == nz.ring().to_json(SymPoly::scalar(1)));
}

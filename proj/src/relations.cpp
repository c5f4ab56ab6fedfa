//
// relations.cpp — the relation catalogue.  Fixed-shape identities are
// written in the diagram DSL; entries parameterized by algebra elements
// are assembled programmatically so they work for every label set.
//
#include "frobrauer/relations.hpp"

#include "frobrauer/symmetric.hpp"

#include <utility>

namespace frobrauer {

namespace {

TermPtr dsl(const AlgebraPtr& algebra, const std::string& text) { return parse(text, algebra); }

std::string word_letters(const ObjectWord& word) {
    std::string s;
    for (const Dir d : word) s += d == Dir::up ? 'u' : 'd';
    return s;
}

ObjectWord word_from_letters(const std::string& letters) {
    ObjectWord w;
    for (const char c : letters) w.push_back(c == 'u' ? Dir::up : Dir::down);
    return w;
}

// A single upward strand carrying, bottom to top: `dots` dots, the token
// `lower`, then the token `upper`.
TermPtr dotted_token_strand(const AlgebraElement& upper, const AlgebraElement& lower, int dots) {
    TermPtr t = DiagramTerm::identity({Dir::up});
    for (int i = 0; i < dots; ++i) t = DiagramTerm::vcomp(DiagramTerm::generator(GenKind::dot), t);
    t = DiagramTerm::vcomp(DiagramTerm::token_up(lower), t);
    t = DiagramTerm::vcomp(DiagramTerm::token_up(upper), t);
    return t;
}

// The crossing of strands i, i+1 (1-based) of `word`, padded with
// identities; returns the padded term and the word above it.
std::pair<TermPtr, ObjectWord> cross_at(const ObjectWord& word, int i) {
    TermPtr t = cross_term(word[static_cast<std::size_t>(i - 1)], word[static_cast<std::size_t>(i)]);
    const ObjectWord before(word.begin(), word.begin() + (i - 1));
    const ObjectWord after(word.begin() + (i + 1), word.end());
    if (!before.empty()) t = DiagramTerm::hcomp(DiagramTerm::identity(before), t);
    if (!after.empty()) t = DiagramTerm::hcomp(t, DiagramTerm::identity(after));
    ObjectWord above = word;
    std::swap(above[static_cast<std::size_t>(i - 1)], above[static_cast<std::size_t>(i)]);
    return {t, above};
}

TermPtr staged_crossings(const ObjectWord& word, const std::vector<int>& positions) {
    TermPtr t = DiagramTerm::identity(word);
    ObjectWord current = word;
    for (const int i : positions) {
        auto [layer, above] = cross_at(current, i);
        t = DiagramTerm::vcomp(layer, t);
        current = std::move(above);
    }
    return t;
}

// Shared body of the two bubble-slide builders.  The loop keeps its
// orientation on both sides; `loop_left_of_strand` says on which side of
// the strand the loop sits on the *left-hand* side of the identity.
RelationPair bubble_slide_impl(const AlgebraPtr& algebra, const AlgebraElement& a, int r,
                               LoopOrientation orientation, bool starts_right) {
    const SymRing ring(algebra);
    const TermPtr strand = DiagramTerm::identity({Dir::up});
    const TermPtr loop = bubble_term(orientation, a, r);
    const AlgebraElement twist = a.dagger();

    const TermPtr lhs = starts_right ? DiagramTerm::hcomp(strand, loop)
                                     : DiagramTerm::hcomp(loop, strand);
    std::vector<TermPtr> rhs;
    rhs.push_back(starts_right ? DiagramTerm::hcomp(loop, strand)
                               : DiagramTerm::hcomp(strand, loop));

    // Correction terms: sliding each dot past the strand couples the two
    // by a teleporter.  For s + t dots moved to the strand the loop keeps
    // r - s - t - 2 of them, so the multiplicity of "D dots moved" is the
    // number of splits, D + 1.  The teleporter puts a basis element on the
    // left of the pair and its dual on the right.
    for (int moved = 0; moved + 1 <= r; ++moved) {
        const int kept = r - moved - 2;
        for (int b = 0; b < algebra->dim(); ++b) {
            const AlgebraElement on_loop = algebra->basis_element(b);
            const AlgebraElement on_strand = algebra->dual_element(b);
            Rat weight = -Rat(moved + 1);
            // The coupling keeps the loop token above its dual; in the
            // mirror the loop is lowered first, so exchanging the heights
            // of an odd pair costs a sign.
            if (!starts_right && on_loop.parity() == Parity::odd) weight = -weight;
            const TermPtr strand_part = dotted_token_strand(twist, on_strand, moved);
            if (kept >= 0) {
                const TermPtr loop_part = bubble_term(orientation, on_loop, kept);
                rhs.push_back(DiagramTerm::scale(
                    weight, starts_right ? DiagramTerm::hcomp(loop_part, strand_part)
                                         : DiagramTerm::hcomp(strand_part, loop_part)));
            } else {
                const SymPoly value = ring.bubble_value(orientation, on_loop, kept);
                if (!value.is_zero()) {
                    rhs.push_back(DiagramTerm::scale(weight * value.scalar_part(), strand_part));
                }
            }
        }
    }

    const std::string tag = orientation == LoopOrientation::counterclockwise ? "ccw" : "cw";
    return {"bubble-slide-" + tag + "-r" + std::to_string(r) + "-" + a.to_string(), "theorem",
            lhs, DiagramTerm::sum(std::move(rhs))};
}

}  // namespace

RelationPair braid_relation(const AlgebraPtr& algebra, const ObjectWord& word) {
    (void)algebra;
    return {"braid-" + word_letters(word), word == ObjectWord{Dir::up, Dir::up, Dir::up}
                                               ? std::string("defining")
                                               : std::string("derived"),
            staged_crossings(word, {1, 2, 1}), staged_crossings(word, {2, 1, 2})};
}

RelationPair bubble_slide_ccw(const AlgebraPtr& algebra, const AlgebraElement& a, int r) {
    return bubble_slide_impl(algebra, a, r, LoopOrientation::counterclockwise, true);
}

RelationPair bubble_slide_cw(const AlgebraPtr& algebra, const AlgebraElement& a, int r) {
    return bubble_slide_impl(algebra, a, r, LoopOrientation::clockwise, false);
}

std::vector<RelationPair> relation_registry(const AlgebraPtr& algebra) {
    std::vector<RelationPair> out;
    const int dim = algebra->dim();
    const auto add = [&out](std::string name, std::string group, TermPtr lhs, TermPtr rhs) {
        out.push_back({std::move(name), std::move(group), std::move(lhs), std::move(rhs)});
    };
    const auto add_dsl = [&](std::string name, std::string group, const std::string& lhs,
                             const std::string& rhs) {
        add(std::move(name), std::move(group), dsl(algebra, lhs), dsl(algebra, rhs));
    };

    // -- defining: token algebra ------------------------------------------
    add("token-unit", "defining", DiagramTerm::token_up(algebra->unit()),
        DiagramTerm::identity({Dir::up}));
    {
        const AlgebraElement first = algebra->basis_element(0);
        const AlgebraElement last = algebra->basis_element(dim - 1);
        add("token-linearity", "defining",
            DiagramTerm::token_up(Rat(2) * first + Rat(3) * last),
            DiagramTerm::sum({DiagramTerm::scale(2, DiagramTerm::token_up(first)),
                              DiagramTerm::scale(3, DiagramTerm::token_up(last))}));
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const AlgebraElement top = algebra->basis_element(i);
            const AlgebraElement bottom = algebra->basis_element(j);
            add("token-product-" + algebra->label(i) + "-" + algebra->label(j), "defining",
                DiagramTerm::vcomp(DiagramTerm::token_up(top), DiagramTerm::token_up(bottom)),
                DiagramTerm::token_up(top * bottom));
        }
    }

    // -- defining: wreath product of the symmetric group -------------------
    add_dsl("crossing-involution", "defining", "x_uu . x_uu", "id(up,up)");
    out.push_back(braid_relation(algebra, {Dir::up, Dir::up, Dir::up}));
    for (int i = 0; i < dim; ++i) {
        const TermPtr tok = DiagramTerm::token_up(algebra->basis_element(i));
        const TermPtr up = DiagramTerm::identity({Dir::up});
        const TermPtr x = dsl(algebra, "x_uu");
        add("token-slide-left-" + algebra->label(i), "defining",
            DiagramTerm::vcomp(x, DiagramTerm::hcomp(tok, up)),
            DiagramTerm::vcomp(DiagramTerm::hcomp(up, tok), x));
        add("token-slide-right-" + algebra->label(i), "defining",
            DiagramTerm::vcomp(x, DiagramTerm::hcomp(up, tok)),
            DiagramTerm::vcomp(DiagramTerm::hcomp(tok, up), x));
    }

    // -- defining: sideways crossings are inverse pairs --------------------
    add_dsl("sideways-inversion-a", "defining", "x_du . x_ud", "id(up,down)");
    add_dsl("sideways-inversion-b", "defining", "x_ud . x_du", "id(down,up)");

    // -- defining: right adjunction ----------------------------------------
    add_dsl("zigzag-right-up", "defining", "(cap_r * id(up)) . (id(up) * cup_r)", "id(up)");
    add_dsl("zigzag-right-down", "defining", "(id(down) * cap_r) . (cup_r * id(down))",
            "id(down)");

    // -- derived: left adjunction, curls, dotted crossings ------------------
    add_dsl("zigzag-left-up", "derived", "(id(up) * cap_l) . (cup_l * id(up))", "id(up)");
    add_dsl("zigzag-left-down", "derived", "(cap_l * id(down)) . (id(down) * cup_l)",
            "id(down)");
    add_dsl("left-curl", "derived", "(cap_l * id(up)) . (id(down) * x_uu) . (cup_r * id(up))",
            "id(up)");
    add_dsl("right-curl", "derived", "(id(up) * cap_r) . (x_uu * id(down)) . (id(up) * cup_l)",
            "id(up)");
    add_dsl("dot-slide-left", "derived", "x_uu . (dot * id(up))",
            "(id(up) * dot) . x_uu + teleport(1,2) @ (up,up)");
    add_dsl("dot-slide-right", "derived", "x_uu . (id(up) * dot)",
            "(dot * id(up)) . x_uu - teleport(1,2) @ (up,up)");
    for (const std::string letters : {"uud", "udu", "duu", "udd", "dud", "ddu", "ddd"}) {
        out.push_back(braid_relation(algebra, word_from_letters(letters)));
    }

    // -- derived: mates of downward decorations ----------------------------
    for (int i = 0; i < dim; ++i) {
        add("mate-token-" + algebra->label(i), "derived",
            DiagramTerm::vcomp(
                dsl(algebra, "cap_l * id(down)"),
                DiagramTerm::vcomp(
                    DiagramTerm::hcomp(
                        DiagramTerm::identity({Dir::down}),
                        DiagramTerm::hcomp(DiagramTerm::token_up(algebra->basis_element(i)),
                                           DiagramTerm::identity({Dir::down}))),
                    dsl(algebra, "id(down) * cup_l"))),
            token_down(algebra->basis_element(i)));
    }
    add_dsl("mate-dot", "derived",
            "(cap_l * id(down)) . (id(down) * dot * id(down)) . (id(down) * cup_l)", "dot_d");
    add_dsl("mate-crossing", "derived",
            "(cap_l * id(down,down)) . (id(down) * cap_l * id(up,down,down)) . "
            "(id(down,down) * x_uu * id(down,down)) . "
            "(id(down,down,up) * cup_l * id(down)) . (id(down,down) * cup_l)",
            "x_dd");
    for (int i = 0; i < dim; ++i) {
        const TermPtr tok = DiagramTerm::token_up(algebra->basis_element(i));
        add("dot-token-exchange-" + algebra->label(i), "derived",
            DiagramTerm::vcomp(dsl(algebra, "dot"), tok),
            DiagramTerm::vcomp(tok, dsl(algebra, "dot")));
    }

    // -- theorem: decorations slide around arcs -----------------------------
    for (int i = 0; i < dim; ++i) {
        const std::string la = algebra->label(i);
        const TermPtr tok = DiagramTerm::token_up(algebra->basis_element(i));
        const TermPtr tok_d = token_down(algebra->basis_element(i));
        const TermPtr up = DiagramTerm::identity({Dir::up});
        const TermPtr down = DiagramTerm::identity({Dir::down});
        add("arc-slide-cap-right-token-" + la, "theorem",
            DiagramTerm::vcomp(dsl(algebra, "cap_r"), DiagramTerm::hcomp(tok, down)),
            DiagramTerm::vcomp(dsl(algebra, "cap_r"), DiagramTerm::hcomp(up, tok_d)));
        add("arc-slide-cap-left-token-" + la, "theorem",
            DiagramTerm::vcomp(dsl(algebra, "cap_l"), DiagramTerm::hcomp(tok_d, up)),
            DiagramTerm::vcomp(dsl(algebra, "cap_l"), DiagramTerm::hcomp(down, tok)));
    }
    add_dsl("arc-slide-cup-right-dot", "theorem", "(id(down) * dot) . cup_r",
            "(dot_d * id(up)) . cup_r");
    add_dsl("arc-slide-cup-left-dot", "theorem", "(dot * id(down)) . cup_l",
            "(id(up) * dot_d) . cup_l");
    add_dsl("strand-under-cup", "theorem", "(x_uu * id(down)) . (id(up) * cup_l)",
            "(id(up) * x_du) . (cup_l * id(up))");

    // -- theorem: trace circles and bubble slides ---------------------------
    for (int i = 0; i < dim; ++i) {
        add("trace-circle-match-" + algebra->label(i), "theorem",
            bubble_term(LoopOrientation::clockwise, algebra->basis_element(i), 0),
            bubble_term(LoopOrientation::counterclockwise, algebra->basis_element(i), 0));
    }
    for (int r = 0; r <= 2; ++r) {
        for (int i = 0; i < dim; ++i) {
            out.push_back(bubble_slide_ccw(algebra, algebra->basis_element(i), r));
            out.push_back(bubble_slide_cw(algebra, algebra->basis_element(i), r));
        }
    }

    return out;
}

}  // namespace frobrauer

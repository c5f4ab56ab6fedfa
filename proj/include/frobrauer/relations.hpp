#pragma once
//
// relations.hpp — a catalogue of identities holding in the diagram
// category: the defining relations of the presentation, standard
// consequences of them, and theorem-level identities (arc slides,
// bubble slides, matching trace circles).  Each entry is a pair of
// diagram terms with a stable name, suitable both for normal-form
// comparison and for module-level evaluation.
//
#include "frobrauer/algebra.hpp"
#include "frobrauer/diagram.hpp"

#include <string>
#include <vector>

namespace frobrauer {

struct RelationPair {
    std::string name;   // stable identifier, e.g. "braid-uud"
    std::string group;  // "defining" | "derived" | "theorem"
    TermPtr lhs;
    TermPtr rhs;
};

// Every catalogued relation instantiated over the given algebra.  Entries
// parameterized by an algebra element are instantiated at each basis
// element (or basis pair), so the catalogue grows with the dimension.
std::vector<RelationPair> relation_registry(const AlgebraPtr& algebra);

// The braid relation on three strands whose bottom orientations are
// `word` (length 3); crossings are staged 1,2,1 on the left side and
// 2,1,2 on the right.
RelationPair braid_relation(const AlgebraPtr& algebra, const ObjectWord& word);

// Slide of a dotted counterclockwise loop (token a, r dots) from the
// right side of an upward strand to the left side, together with its
// correction terms: for every split s + t of the dots transferred to the
// strand, a loop of the same orientation keeping r - s - t - 2 dots is
// coupled to the strand by a teleporter, the strand carrying the s + t
// dots below the coupling and the twist of a above it.  Loops with -1
// dots contribute their trace scalar; fewer vanish.
RelationPair bubble_slide_ccw(const AlgebraPtr& algebra, const AlgebraElement& a, int r);
// Mirror image: a clockwise loop slides from the left side to the right.
RelationPair bubble_slide_cw(const AlgebraPtr& algebra, const AlgebraElement& a, int r);

}  // namespace frobrauer

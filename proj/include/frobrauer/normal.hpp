#pragma once
//
// normal.hpp — the normal-form engine.  Every morphism of the affine
// diagram category is a finitely supported combination of decorated
// matchings: oriented pairings of boundary points in which each string
// carries a dot count and a single basis token recorded near its terminus,
// with coefficients in the supercommutative bubble ring of the algebra.
//
// The engine normalizes an arbitrary term by sweeping its slices bottom to
// top through a decorated-state machine, realizes a decorated matching back
// as a canonical term, expands a whole normal form into a term, and builds
// composition, tensor product, and scalar specialization on top of those.
//
#include "frobrauer/diagram.hpp"
#include "frobrauer/symmetric.hpp"

#include <json.hpp>

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace frobrauer {

// One endpoint of a string: bottom ("d") or top ("c") boundary, 1-based
// position.  Bottom endpoints order before top ones.
struct MatchPoint {
    bool cod = false;
    int pos = 0;

    friend bool operator==(const MatchPoint&, const MatchPoint&) = default;
    friend auto operator<=>(const MatchPoint&, const MatchPoint&) = default;
};

std::string point_to_string(const MatchPoint& p);  // "d3" / "c1"

// A single string: it enters the diagram at `in` (a bottom point on an
// upward letter or a top point on a downward letter), leaves at `out`, and
// carries `dots` dots and the basis token `token` (always a basis index in
// a finished normal form).
struct NormalString {
    MatchPoint in;
    MatchPoint out;
    int dots = 0;
    int token = -1;

    friend bool operator==(const NormalString&, const NormalString&) = default;
    friend auto operator<=>(const NormalString&, const NormalString&) = default;
};

// Strings sorted by in-point; used as the key of a normal form.
struct DecoratedMatching {
    std::vector<NormalString> strings;

    friend bool operator==(const DecoratedMatching&, const DecoratedMatching&) = default;
    friend auto operator<=>(const DecoratedMatching&, const DecoratedMatching&) = default;
};

// A finitely supported map from decorated matchings to bubble-ring
// coefficients; zero coefficients are pruned eagerly.
class NormalMorphism {
public:
    NormalMorphism(ObjectWord domain, ObjectWord codomain);

    const ObjectWord& domain() const { return domain_; }
    const ObjectWord& codomain() const { return codomain_; }
    const std::map<DecoratedMatching, SymPoly>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    void add_term(const DecoratedMatching& key, SymPoly coeff);

    friend bool operator==(const NormalMorphism& a, const NormalMorphism& b);

    std::string to_string(const SymRing& ring) const;
    nlohmann::json to_json(const SymRing& ring) const;

private:
    ObjectWord domain_;
    ObjectWord codomain_;
    std::map<DecoratedMatching, SymPoly> terms_;
};

class Normalizer {
public:
    // `work_bound` caps the number of engine steps (state absorptions) a
    // single normalize call may take; exceeding it throws DepthError.
    explicit Normalizer(AlgebraPtr algebra, long work_bound = 100000);

    const AlgebraPtr& algebra() const { return algebra_; }
    const SymRing& ring() const { return ring_; }
    long work_bound() const { return work_bound_; }
    void set_work_bound(long bound) { work_bound_ = bound; }

    // Rewrite a term into its normal form.
    NormalMorphism normalize(const TermPtr& term) const;
    NormalMorphism normalize(const std::string& source) const;

    // Canonical term presenting one decorated matching with coefficient 1:
    // decorations of cap-strings at the bottom, then caps, then the
    // crossings sorting the through-strands, then cups, then decorations of
    // the remaining strings, every block in a fixed deterministic order.
    TermPtr realize(const DecoratedMatching& key, const ObjectWord& domain,
                    const ObjectWord& codomain) const;

    // Term presenting a whole normal form: realized matchings with their
    // coefficient monomials rendered as closed bubbles to the right.
    TermPtr expand(const NormalMorphism& nf) const;

    // Normal form of the composition top-after-bottom / the side-by-side
    // product of two normal forms.
    NormalMorphism compose(const NormalMorphism& top, const NormalMorphism& bottom) const;
    NormalMorphism tensor(const NormalMorphism& left, const NormalMorphism& right) const;

    // Apply the ring specialization (one value per cocenter class) to every
    // coefficient, keeping the matchings.
    NormalMorphism specialize(const NormalMorphism& nf, const std::vector<Rat>& theta) const;

private:
    AlgebraPtr algebra_;
    SymRing ring_;
    long work_bound_;
};

// All decorated matchings between the two words whose dot counts sum to at
// most `max_total_dots`, tokens running over the whole basis; sorted.
std::vector<DecoratedMatching> enumerate_decorated_matchings(const AlgebraPtr& algebra,
                                                             const ObjectWord& domain,
                                                             const ObjectWord& codomain,
                                                             int max_total_dots);

}  // namespace frobrauer

#pragma once
//
// diagram.hpp — morphism expressions for the oriented diagram category and
// its affine extension: object words over {up, down}, an AST of generators
// closed under horizontal/vertical composition, rational scaling and sums,
// a linear DSL parser/printer, and a lowering into one-generator slices
// consumed by the evaluator and the normal-form engine.
//
// Derived generators (mixed-orientation crossings, decorations on downward
// strands, teleporters, closed bubbles) are expanded at construction time,
// so every stored term uses only the seven primitive generators.
//
#include "frobrauer/algebra.hpp"
#include "frobrauer/symmetric.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace frobrauer {

enum class Dir : unsigned char { up, down };

using ObjectWord = std::vector<Dir>;

std::string word_to_string(const ObjectWord& word);  // "up,down"; empty -> ""

class SyntaxError : public InputError {
public:
    SyntaxError(const std::string& what, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class TypeMismatch : public InputError {
public:
    TypeMismatch(const ObjectWord& expected, const ObjectWord& found, const std::string& where);
};

class UnknownToken : public InputError {
public:
    explicit UnknownToken(const std::string& label);
};

// The primitive generators; everything else is sugar over these.
enum class GenKind { cross_uu, cup_right, cap_right, cup_left, cap_left, token, dot };

enum class ParityInfo { even, odd, mixed };

class DiagramTerm;
using TermPtr = std::shared_ptr<const DiagramTerm>;

class DiagramTerm {
public:
    enum class Node { identity, generator, hcomp, vcomp, scale, sum };

    static TermPtr identity(ObjectWord word);
    static TermPtr generator(GenKind kind);  // any primitive except token
    static TermPtr token_up(AlgebraElement label);
    static TermPtr hcomp(TermPtr left, TermPtr right);
    // Vertical composition reads top-after-bottom: top applied second.
    static TermPtr vcomp(TermPtr top, TermPtr bottom);
    static TermPtr scale(Rat scalar, TermPtr inner);
    static TermPtr sum(std::vector<TermPtr> summands);  // singleton collapses

    Node node() const { return node_; }
    GenKind gen() const { return gen_; }
    const AlgebraElement& token() const { return *token_; }
    const TermPtr& left() const { return left_; }    // hcomp left / vcomp top
    const TermPtr& right() const { return right_; }  // hcomp right / vcomp bottom
    const TermPtr& inner() const { return left_; }   // scale
    const Rat& scalar() const { return scalar_; }
    const std::vector<TermPtr>& summands() const { return summands_; }

    const ObjectWord& domain() const { return domain_; }
    const ObjectWord& codomain() const { return codomain_; }
    ParityInfo parity() const { return parity_; }

    std::string to_string() const;
    nlohmann::json to_json() const;

    friend bool operator==(const DiagramTerm& a, const DiagramTerm& b);

private:
    DiagramTerm() = default;

    Node node_ = Node::identity;
    GenKind gen_ = GenKind::dot;
    std::optional<AlgebraElement> token_;
    TermPtr left_;
    TermPtr right_;
    Rat scalar_ = 0;
    std::vector<TermPtr> summands_;

    ObjectWord domain_;
    ObjectWord codomain_;
    ParityInfo parity_ = ParityInfo::even;
};

bool equal_terms(const TermPtr& a, const TermPtr& b);

struct TypeFacts {
    ObjectWord domain;
    ObjectWord codomain;
    ParityInfo parity;
};

TypeFacts typecheck(const TermPtr& term);

// ---------------------------------------------------------------------------
// Derived builders (expansions over the primitives)
// ---------------------------------------------------------------------------

// Crossing whose bottom-left strand has direction `a` and bottom-right `b`;
// maps (a, b) to (b, a).
TermPtr cross_term(Dir a, Dir b);
// Decorations on a downward strand, written via the right adjunction.
TermPtr token_down(AlgebraElement label);
TermPtr dot_down();
TermPtr token_on(Dir dir, AlgebraElement label);
TermPtr dot_on(Dir dir);
// The two-endpoint decoration sum over the basis: label b on strand i, its
// dual on strand j (1-based, i < j), identities elsewhere in the span.
TermPtr teleporter_term(const AlgebraPtr& algebra, const ObjectWord& span, int i, int j);
// Closed loop with a token and a nonnegative number of dots.
TermPtr bubble_term(LoopOrientation orientation, const AlgebraElement& token, int dots);

// ---------------------------------------------------------------------------
// DSL
// ---------------------------------------------------------------------------

// Grammar:
//   term   := scaled (('+'|'-') scaled)*
//   scaled := (RATIONAL)? vcomp
//   vcomp  := hcomp ('.' hcomp)*            -- top-after-bottom
//   hcomp  := atom ('*' atom)*
//   atom   := 'x_uu' | 'x_ud' | 'x_du' | 'x_dd'
//           | 'cup_r' | 'cap_r' | 'cup_l' | 'cap_l'
//           | 'dot' | 'dot_d' | 'tok[' ALG ']' | 'tok_d[' ALG ']'
//           | 'id(' WORD? ')'
//           | 'teleport(' INT ',' INT ')' ('@' '(' WORD ')')?
//           | 'bub_cw(' ALG ',' INT ')' | 'bub_ccw(' ALG ',' INT ')'
//           | '(' term ')'
//   WORD   := ('up'|'down') (',' ('up'|'down'))*
//   ALG    := signed sum of (RATIONAL)? (LABEL)? products, e.g. "1 + 2t"
// A teleporter without '@' spans upward strands only.
TermPtr parse(const std::string& text, const AlgebraPtr& algebra);

// ---------------------------------------------------------------------------
// Slice form
// ---------------------------------------------------------------------------

// One generator at a horizontal position (1-based), identities elsewhere.
struct Slice {
    enum class Op { cross, cup_r, cup_l, cap_r, cap_l, token, dot };
    Op op;
    int pos;
    std::optional<AlgebraElement> label;  // token only

    friend bool operator==(const Slice& a, const Slice& b) {
        return a.op == b.op && a.pos == b.pos && a.label == b.label;
    }
};

struct SlicedTerm {
    Rat coeff;
    std::vector<Slice> slices;  // bottom to top
    ObjectWord domain;
    ObjectWord codomain;
};

// Distributes sums and scalars and serializes compositions into slices.
std::vector<SlicedTerm> lower(const TermPtr& term);

// The object word above a slice, given the word below it; validates the
// orientations the slice's generator expects.
ObjectWord slice_output_word(const ObjectWord& below, const Slice& slice);

}  // namespace frobrauer

#pragma once
//
// eval.hpp — exact evaluation of diagram terms as linear maps on tensor
// words of the natural modules, over a chosen matrix superalgebra context
// and base word.  A term with domain X and codomain Y becomes a sparse
// rational matrix from the module of X ++ base to the module of Y ++ base;
// the base factors ride along on the right and are touched only by the
// dotted generator, which couples each strand to everything to its right.
//
// The module also provides relation checking with explicit witnesses,
// a super-naturality check for evaluated maps, and the comparison of a
// dotted loop against right multiplication by its central element.
//
#include "frobrauer/diagram.hpp"
#include "frobrauer/lie.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace frobrauer {

// Diagram strands map to module letters: up = rows, down = columns.
Word to_letters(const ObjectWord& word);
ObjectWord to_dirs(const Word& word);

// Refuse dense output above this many rows or columns.
inline constexpr std::size_t kDenseCap = 4096;

// Worker count for column-parallel evaluation (FROBRAUER_THREADS).
int thread_count();

class SuperLinearMap {
public:
    SuperLinearMap(ModuleSpace domain, ModuleSpace codomain);

    static SuperLinearMap identity_map(const ModuleSpace& space);

    const ModuleSpace& domain() const { return domain_; }
    const ModuleSpace& codomain() const { return codomain_; }

    const SparseVec& column(std::size_t j) const { return columns_[j]; }
    SparseVec& column(std::size_t j) { return columns_[j]; }
    void add_entry(std::size_t row, std::size_t col, const Rat& value);

    SparseVec apply(const SparseVec& v) const;
    bool is_zero() const;

    // Parity shift of the map: set when every entry moves parities the same
    // way (a zero map counts as even); empty for genuinely mixed maps.
    std::optional<Parity> parity() const;
    SuperLinearMap parity_part(Parity p) const;

    SuperLinearMap& operator+=(const SuperLinearMap& other);
    SuperLinearMap& operator*=(const Rat& scalar);
    friend bool operator==(const SuperLinearMap& a, const SuperLinearMap& b);

    // Scalar content of an endomorphism of the trivial word; requires
    // one-dimensional domain and codomain.
    Rat scalar_value() const;

    nlohmann::json to_json() const;
    std::string describe_vector(const SparseVec& v) const;  // codomain labels

private:
    ModuleSpace domain_;
    ModuleSpace codomain_;
    std::vector<SparseVec> columns_;
};

struct CheckResult {
    bool ok = true;
    std::string witness;  // empty when ok

    explicit operator bool() const { return ok; }
};

class Evaluator {
public:
    Evaluator(GlPtr context, ObjectWord base_word);

    const GlPtr& context() const { return context_; }
    const ObjectWord& base_word() const { return base_; }

    // Module of a diagram word with the base word appended.
    ModuleSpace space_for(const ObjectWord& diagram_word) const;

    SuperLinearMap eval(const TermPtr& term) const;
    SuperLinearMap eval(const std::string& source) const;

    // Equality of evaluations; on failure the witness names the first
    // domain basis vector where the images differ, with both images.
    CheckResult check_relation(const TermPtr& lhs, const TermPtr& rhs) const;
    CheckResult check_relation(const std::string& lhs, const std::string& rhs) const;

    // Evaluated terms must be right-module homomorphisms: F(w . u) =
    // F(w) . u for every generator u (maps act on the left, the action on
    // the right, so no sign appears even for odd maps).
    CheckResult check_equivariance(const TermPtr& term) const;
    CheckResult check_equivariance(const std::string& source) const;

    // The counterclockwise loop with r dots and the given homogeneous token,
    // acting on the base word, against w -> (-1)^{|a||w|} w . z_r(a).
    CheckResult verify_shark(const AlgebraElement& token, int r) const;

private:
    SparseVec apply_slice(const ModuleSpace& below, const Slice& slice,
                          const SparseVec& v) const;

    GlPtr context_;
    ObjectWord base_;
    Word base_letters_;
    std::vector<std::vector<Rat>> trace_pair_;  // tr(basis_i * basis_j)
};

// Centrality of a parity-homogeneous enveloping element: its twisted right
// multiplication super-commutes with the right action of every generator,
// on each of the listed module words.
CheckResult check_supernatural(const GlPtr& context, const UeaElement& u,
                               const std::vector<Word>& words);

}  // namespace frobrauer

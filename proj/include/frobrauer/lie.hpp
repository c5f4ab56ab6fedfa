#pragma once
//
// lie.hpp — the general linear Lie superalgebra over a Frobenius
// superalgebra: matrices with entries in A graded by entry parity plus
// position parity.  Provides the supertrace pairing and its dual basis,
// the invariant element Omega, the natural right modules V+ (rows) and
// V- (columns), tensor words of them with right-action sign conventions,
// the bilinear pairing between V- and V+, and formal enveloping-algebra
// monomial sums (used for the central elements attached to dotted loops).
//
#include "frobrauer/algebra.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace frobrauer {

struct Signature {
    int m = 1;
    int n = 0;

    int total() const { return m + n; }
    // Parity of a matrix index (1-based): even for the first m, odd after.
    Parity index_parity(int i) const { return i <= m ? Parity::even : Parity::odd; }

    friend bool operator==(const Signature&, const Signature&) = default;
};

class GlContext;
using GlPtr = std::shared_ptr<const GlContext>;

// A basis symbol: algebra basis element `alg` in matrix position (row, col).
struct GlSymbol {
    int alg = 0;
    int row = 1;
    int col = 1;
};

class GlElement {
public:
    GlElement(GlPtr context, std::vector<Rat> coeffs);

    static GlElement zero(const GlPtr& context);

    const GlPtr& context() const { return context_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    const Rat& coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

    bool is_zero() const;
    Parity parity() const;  // throws InputError on mixed input
    GlElement parity_part(Parity p) const;

    // The supertrace collapses the matrix to an algebra element; the trace
    // form is the algebra trace of it.
    AlgebraElement supertrace() const;
    Rat trace_form() const;
    Rat trace_form_with(const GlElement& other) const;  // tr_form(this * other)

    GlElement& operator+=(const GlElement& other);
    GlElement& operator-=(const GlElement& other);
    GlElement& operator*=(const Rat& scalar);
    friend GlElement operator+(GlElement a, const GlElement& b) { return a += b; }
    friend GlElement operator-(GlElement a, const GlElement& b) { return a -= b; }
    friend GlElement operator*(const Rat& s, GlElement a) { return a *= s; }
    // Matrix product; entries multiply in A with no extra signs.
    friend GlElement operator*(const GlElement& a, const GlElement& b);
    friend bool operator==(const GlElement& a, const GlElement& b);

    // Super-commutator, extended bilinearly from homogeneous parts.
    GlElement bracket(const GlElement& other) const;

    std::string to_string() const;

private:
    GlPtr context_;
    std::vector<Rat> coeffs_;
};

class GlContext : public std::enable_shared_from_this<GlContext> {
public:
    static GlPtr make(AlgebraPtr algebra, int m, int n);

    const AlgebraPtr& algebra() const { return algebra_; }
    const Signature& signature() const { return sig_; }
    int matrix_size() const { return sig_.total(); }
    int dim() const { return algebra_->dim() * sig_.total() * sig_.total(); }

    // Basis order: (row, col) lexicographic, then algebra basis order.
    int index_of(int alg, int row, int col) const;
    GlSymbol symbol_of(int k) const;
    Parity parity(int k) const;

    GlElement zero() const;
    GlElement basis_element(int k) const;
    // a placed in matrix position (row, col), expanded over the basis.
    GlElement matrix_unit(const AlgebraElement& a, int row, int col) const;
    // Trace-form dual of basis element k; pairs to the Kronecker delta.
    GlElement dual_basis_element(int k) const;

    std::string label(int k) const;  // e.g. "t(2,1)"

    // The invariant element as an explicit list of (basis, dual) pairs.
    std::vector<std::pair<GlElement, GlElement>> omega() const;

private:
    GlContext() = default;

    AlgebraPtr algebra_;
    Signature sig_;
};

void require_same_context(const GlElement& a, const GlElement& b);

// ---------------------------------------------------------------------------
// Tensor words of the natural modules
// ---------------------------------------------------------------------------

enum class Letter : unsigned char { plus, minus };

using Word = std::vector<Letter>;

// The tensor product of copies of V+ / V- described by a word, with basis
// per factor {algebra basis element, matrix index}.  Basis vectors of the
// whole word are encoded as a single radix integer, leftmost factor in the
// least significant digit.
class ModuleSpace {
public:
    ModuleSpace(GlPtr context, Word word);

    const GlPtr& context() const { return context_; }
    const Word& word() const { return word_; }
    int length() const { return static_cast<int>(word_.size()); }

    std::size_t factor_dim() const { return factor_dim_; }
    std::size_t dim() const { return dim_; }

    // Local (per-factor) basis: matrix index first, algebra index inner.
    int factor_index(int alg, int pos) const {
        return (pos - 1) * context_->algebra()->dim() + alg;
    }
    int factor_alg(int local) const { return local % context_->algebra()->dim(); }
    int factor_pos(int local) const { return local / context_->algebra()->dim() + 1; }
    Parity factor_parity(int local) const;

    std::size_t encode(const std::vector<int>& locals) const;
    std::vector<int> decode(std::size_t index) const;
    Parity vector_parity(std::size_t index) const;
    // Parity of the factors in [from, to) of the given basis vector.
    Parity parity_between(std::size_t index, int from, int to) const;

    std::string basis_label(std::size_t index) const;

    friend bool operator==(const ModuleSpace& a, const ModuleSpace& b) {
        return a.context_ == b.context_ && a.word_ == b.word_;
    }

private:
    GlPtr context_;
    Word word_;
    std::size_t factor_dim_;
    std::size_t dim_;
};

// Sparse vector in a ModuleSpace basis.
using SparseVec = std::map<std::size_t, Rat>;

void sparse_add(SparseVec& into, std::size_t key, const Rat& value);
SparseVec sparse_scale(SparseVec v, const Rat& s);
bool sparse_equal(const SparseVec& a, const SparseVec& b);

// Right action of the basis element with index `gl_index` on one basis
// vector of the word; acting on factor p passes the factors right of p.
SparseVec act_basis(const ModuleSpace& space, std::size_t vec, int gl_index);
// Right action of a general element (linear extension over its parts).
SparseVec act(const ModuleSpace& space, const SparseVec& v, const GlElement& M);

// Right action of Omega routed to exactly one factor pair: the first leg
// acts on factor p, the dual leg on factor k (1-based, p != k).
SparseVec omega_pair_action(const ModuleSpace& space, const SparseVec& v, int p, int k);

// The pairing V- x V+ -> k on factor basis elements (signs included);
// nonzero only when the matrix indices agree.
Rat pairing_minus_plus(const GlContext& ctx, int local_minus, int local_plus);

// ---------------------------------------------------------------------------
// Formal enveloping-algebra elements
// ---------------------------------------------------------------------------

// A formal sum of products of basis symbols; factors act left-to-right.
struct UeaMonomial {
    Rat coeff;
    std::vector<int> factors;  // gl basis indices
};
using UeaElement = std::vector<UeaMonomial>;

Parity monomial_parity(const GlContext& ctx, const UeaMonomial& mono);

// Plain right action: w . (f1 f2 ... fk) applied factor by factor.
SparseVec act_uea(const ModuleSpace& space, const SparseVec& v, const UeaElement& u);
// The operator rho_u: w -> (-1)^{|u||w|} w . u  (per homogeneous monomial).
SparseVec act_uea_rho(const ModuleSpace& space, const SparseVec& v, const UeaElement& u);

// The cyclic sum attached to a counterclockwise loop with r >= 1 dots and
// token a (a homogeneous); lands in the center of the enveloping algebra.
UeaElement central_element(const GlPtr& context, const AlgebraElement& a, int r);

}  // namespace frobrauer

#pragma once
//
// algebra.hpp — finite-dimensional Frobenius superalgebras over Q.
//
// An algebra is described by a homogeneous basis with structure constants,
// a Z/2 grading, and a trace functional that is required to be even,
// supersymmetric and nondegenerate.  The constructor validates every axiom
// and reports the first violation with an explicit witness.
//
// Alongside multiplication the module provides the trace pairing, the dual
// basis, the canonical invariant tensor (sum of b otimes b-dual), the
// twist a-dagger, and an echelon basis of the cocenter (the quotient by
// the span of supercommutators).
//
#include "frobrauer/core.hpp"
#include "frobrauer/qlinalg.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <string>
#include <vector>

namespace frobrauer {

class FrobeniusAlgebra;
using AlgebraPtr = std::shared_ptr<const FrobeniusAlgebra>;

struct AlgebraError : InputError {
    enum class Kind {
        BadTable,
        ParityViolation,
        NotUnital,
        NotAssociative,
        TraceNotSymmetric,
        TraceDegenerate,
    };

    AlgebraError(Kind kind_, std::string witness_)
        : InputError(describe(kind_, witness_)), kind(kind_), witness(std::move(witness_)) {}

    static std::string describe(Kind kind, const std::string& witness);

    Kind kind;
    std::string witness;
};

// A linear combination of basis elements of a fixed algebra.  Value type.
class AlgebraElement {
public:
    AlgebraElement(AlgebraPtr algebra, std::vector<Rat> coeffs);

    static AlgebraElement zero(const AlgebraPtr& algebra);
    static AlgebraElement unit(const AlgebraPtr& algebra);
    static AlgebraElement basis(const AlgebraPtr& algebra, int index);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    const Rat& coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

    bool is_zero() const;
    bool is_homogeneous() const;
    // Parity of a homogeneous element (zero counts as even); throws on mixed input.
    Parity parity() const;
    AlgebraElement parity_part(Parity p) const;

    Rat trace() const;
    Rat trace_with(const AlgebraElement& other) const;  // tr(this * other)
    AlgebraElement dagger() const;

    AlgebraElement& operator+=(const AlgebraElement& other);
    AlgebraElement& operator-=(const AlgebraElement& other);
    AlgebraElement& operator*=(const Rat& scalar);

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const Rat& s, AlgebraElement a) { return a *= s; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

    std::string to_string() const;

private:
    AlgebraPtr algebra_;
    std::vector<Rat> coeffs_;
};

class FrobeniusAlgebra : public std::enable_shared_from_this<FrobeniusAlgebra> {
public:
    struct Tables {
        std::string name;
        std::vector<std::string> labels;
        std::vector<Parity> parity;
        // mult[i][j] = coefficient vector of (basis_i * basis_j).
        std::vector<std::vector<std::vector<Rat>>> mult;
        std::vector<Rat> trace;
    };

    // Validates all axioms; throws AlgebraError with a witness on failure.
    static AlgebraPtr make(Tables tables);

    // Built-in families.
    static AlgebraPtr ground();                       // "k"
    static AlgebraPtr truncated_polynomial(int ell);  // "trunc(ell)", ell >= 1
    static AlgebraPtr grassmann_pair();               // "grass2": two odd generators
    static AlgebraPtr matrix_algebra2();              // "mat2": 2x2 matrices over k
    // Parses "k", "trunc(N)", "grass2", "mat2", or "@/path/to/file.json".
    static AlgebraPtr named(const std::string& spec);

    static AlgebraPtr from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    const std::string& name() const { return tables_.name; }
    int dim() const { return static_cast<int>(tables_.labels.size()); }
    const std::string& label(int i) const { return tables_.labels[static_cast<std::size_t>(i)]; }
    int label_index(std::string_view label) const;  // -1 when absent
    Parity parity(int i) const { return tables_.parity[static_cast<std::size_t>(i)]; }
    const std::vector<Rat>& mult_row(int i, int j) const {
        return tables_.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const Rat& trace_coeff(int i) const { return tables_.trace[static_cast<std::size_t>(i)]; }

    const std::vector<Rat>& unit_coeffs() const { return unit_; }
    // Coefficients of the trace-dual basis element of basis_i.
    const std::vector<Rat>& dual_coeffs(int i) const { return dual_[static_cast<std::size_t>(i)]; }

    AlgebraElement element(std::vector<Rat> coeffs) const;
    AlgebraElement zero() const;
    AlgebraElement unit() const;
    AlgebraElement basis_element(int i) const;
    AlgebraElement dual_element(int i) const;

    // Cocenter: quotient of the algebra by the span of supercommutators.
    int cocenter_dim() const { return static_cast<int>(cocenter_reps_.size()); }
    // Indices of the basis labels chosen (greedily, in label order) as echelon
    // representatives of the cocenter.
    const std::vector<int>& cocenter_reps() const { return cocenter_reps_; }
    Parity cocenter_parity(int c) const {
        return parity(cocenter_reps_[static_cast<std::size_t>(c)]);
    }
    // Coordinates of the class of `a` in the representative basis.
    std::vector<Rat> cocenter_coords(const AlgebraElement& a) const;

    // Coefficient matrix of the invariant tensor: entry (i, j) is the
    // coefficient of basis_i (x) basis_j in the sum of b (x) b-dual.
    QMat invariant_tensor() const;

    struct BeamReport {
        bool ok = true;
        std::string witness;
    };
    // Exhaustively checks, over all basis pairs (a, c), the two-sided bend
    // identity for the invariant tensor against multiplication.
    BeamReport verify_beam() const;

private:
    FrobeniusAlgebra() = default;
    void validate_and_derive();

    Tables tables_;
    std::vector<Rat> unit_;
    std::vector<std::vector<Rat>> dual_;
    std::vector<int> cocenter_reps_;
    QMat cocenter_proj_;  // cocenter_dim x dim: class coordinates of each basis vector
};

}  // namespace frobrauer

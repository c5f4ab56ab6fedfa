#pragma once
//
// symmetric.hpp — the coefficient ring of the affine normal form: a
// supercommutative polynomial ring with one generator z[c, n] for every
// cocenter class c of the algebra and every degree n >= 1.  Generators of
// odd classes anticommute and square to zero.
//
// The ring carries the elementary/complete families e_n(a) and h_n(a)
// (linear in the algebra element a), the closed-loop valuation
// bubble_value(orientation, a, dots), and scalar specialization.
//
#include "frobrauer/algebra.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace frobrauer {

// One generator power z[cls, degree]^power inside a monomial.
struct SymFactor {
    int cls = 0;     // cocenter class index
    int degree = 1;  // n >= 1
    int power = 1;
    Parity parity = Parity::even;

    friend bool operator==(const SymFactor&, const SymFactor&) = default;
    friend auto operator<=>(const SymFactor& a, const SymFactor& b) {
        if (auto c = a.cls <=> b.cls; c != 0) return c;
        if (auto c = a.degree <=> b.degree; c != 0) return c;
        return a.power <=> b.power;
    }
};

// Factors sorted by (cls, degree); each odd factor has power exactly 1.
using SymMonomial = std::vector<SymFactor>;

Parity monomial_parity(const SymMonomial& m);

// A finitely supported rational combination of monomials.
class SymPoly {
public:
    SymPoly() = default;
    static SymPoly scalar(Rat value);
    static SymPoly generator(int cls, int degree, Parity parity);

    bool is_zero() const { return terms_.empty(); }
    bool is_scalar() const;
    // The coefficient of the empty monomial.
    Rat scalar_part() const;
    const std::map<SymMonomial, Rat>& terms() const { return terms_; }

    // True when every monomial has the same parity; zero counts as any parity.
    bool is_homogeneous() const;
    Parity parity() const;  // throws InputError on mixed input
    SymPoly parity_part(Parity p) const;

    SymPoly& operator+=(const SymPoly& other);
    SymPoly& operator-=(const SymPoly& other);
    SymPoly& operator*=(const Rat& scalar);
    friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
    friend SymPoly operator*(const Rat& s, SymPoly a) { return a *= s; }
    // Supercommutative product; order matters up to Koszul signs.
    friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
    friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.terms_ == b.terms_; }

    void add_term(SymMonomial m, Rat coeff);  // m must be canonically sorted

private:
    std::map<SymMonomial, Rat> terms_;
};

enum class LoopOrientation { clockwise, counterclockwise };

// The coefficient ring attached to one algebra: owns the e/h recursions
// (memoized per basis element) and renders generators with class labels.
class SymRing {
public:
    explicit SymRing(AlgebraPtr algebra);

    const AlgebraPtr& algebra() const { return algebra_; }

    SymPoly zero() const { return {}; }
    SymPoly scalar(Rat v) const { return SymPoly::scalar(std::move(v)); }
    // z[cls, degree] for a cocenter class index.
    SymPoly generator(int cls, int degree) const;

    // Elementary family: 0 for n < 0, tr(a) for n = 0, the class of a in
    // degree n otherwise.  Linear and parity-preserving in a.
    SymPoly elementary(int n, const AlgebraElement& a) const;
    // Complete family, determined by the triangular recursion against the
    // elementary one; linear and parity-preserving in a.
    SymPoly complete(int n, const AlgebraElement& a) const;

    // Value of a closed loop carrying token a and `dots` dots (dots may be
    // negative: -1 gives a trace scalar, below that zero).
    SymPoly bubble_value(LoopOrientation o, const AlgebraElement& a, int dots) const;

    // Scalar specialization: degree-1 generators take the supplied cocenter
    // values, all higher-degree generators vanish.
    Rat specialize(const SymPoly& p, const std::vector<Rat>& theta) const;

    std::string to_string(const SymPoly& p) const;
    // Array of {monomial: [[class_label, degree, power], ...], value: "p/q"}.
    nlohmann::json to_json(const SymPoly& p) const;

private:
    const SymPoly& complete_on_basis(int n, int basis_index) const;

    AlgebraPtr algebra_;
    mutable std::map<std::pair<int, int>, SymPoly> complete_memo_;
};

}  // namespace frobrauer

#include "frobrauer/symmetric.hpp"

#include <sstream>
#include <utility>

namespace frobrauer {

Parity monomial_parity(const SymMonomial& m) {
    Parity p = Parity::even;
    for (const auto& f : m)
        if (is_odd(f.parity) && (f.power % 2) != 0) p = p + Parity::odd;
    return p;
}

SymPoly SymPoly::scalar(Rat value) {
    SymPoly p;
    p.add_term({}, std::move(value));
    return p;
}

SymPoly SymPoly::generator(int cls, int degree, Parity parity) {
    SymPoly p;
    p.add_term({SymFactor{cls, degree, 1, parity}}, 1);
    return p;
}

bool SymPoly::is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat SymPoly::scalar_part() const {
    const auto it = terms_.find(SymMonomial{});
    return it == terms_.end() ? Rat(0) : it->second;
}

bool SymPoly::is_homogeneous() const {
    bool has_even = false, has_odd = false;
    for (const auto& [m, c] : terms_) (is_odd(monomial_parity(m)) ? has_odd : has_even) = true;
    return !(has_even && has_odd);
}

Parity SymPoly::parity() const {
    if (!is_homogeneous()) throw InputError("parity of a mixed-parity coefficient");
    if (terms_.empty()) return Parity::even;
    return monomial_parity(terms_.begin()->first);
}

SymPoly SymPoly::parity_part(Parity p) const {
    SymPoly out;
    for (const auto& [m, c] : terms_)
        if (monomial_parity(m) == p) out.add_term(m, c);
    return out;
}

void SymPoly::add_term(SymMonomial m, Rat coeff) {
    if (coeff == 0) return;
    const auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), std::move(coeff));
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

SymPoly& SymPoly::operator+=(const SymPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

SymPoly& SymPoly::operator*=(const Rat& scalar) {
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= scalar;
    return *this;
}

namespace {

// Multiplies two canonical monomials; returns false when the product dies
// (an odd generator squared).  `sign` collects the Koszul sign of sorting
// the concatenation back into canonical order.
bool multiply_monomials(const SymMonomial& a, const SymMonomial& b, SymMonomial& out, int& sign) {
    out.clear();
    sign = 1;
    // Each odd factor of `b` must pass exactly the odd factors of `a` that are
    // greater in the canonical (cls, degree) order; every pass costs a sign.
    std::size_t ia = 0, ib = 0;
    auto odd_tail_of_a = [&](std::size_t from) {
        int count = 0;
        for (std::size_t i = from; i < a.size(); ++i)
            if (is_odd(a[i].parity)) ++count;
        return count;
    };
    while (ia < a.size() || ib < b.size()) {
        const bool take_a =
            ib == b.size() ||
            (ia < a.size() && std::pair(a[ia].cls, a[ia].degree) <= std::pair(b[ib].cls, b[ib].degree));
        if (take_a) {
            if (ib < b.size() && a[ia].cls == b[ib].cls && a[ia].degree == b[ib].degree) {
                // Same generator from both sides: the b-copy passes the odd
                // factors of `a` strictly to the right of position ia.
                if (is_odd(a[ia].parity)) return false;  // odd squares vanish
                if (is_odd(b[ib].parity) && (odd_tail_of_a(ia + 1) % 2) != 0) sign = -sign;
                out.push_back(a[ia]);
                out.back().power += b[ib].power;
                ++ia;
                ++ib;
            } else {
                out.push_back(a[ia]);
                ++ia;
            }
        } else {
            if (is_odd(b[ib].parity) && (odd_tail_of_a(ia) % 2) != 0) sign = -sign;
            out.push_back(b[ib]);
            ++ib;
        }
    }
    return true;
}

}  // namespace

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    SymPoly out;
    SymMonomial prod;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            int sign = 1;
            if (!multiply_monomials(ma, mb, prod, sign)) continue;
            out.add_term(prod, Rat(sign) * ca * cb);
        }
    return out;
}

// ---------------------------------------------------------------------------
// SymRing
// ---------------------------------------------------------------------------

SymRing::SymRing(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

SymPoly SymRing::generator(int cls, int degree) const {
    if (cls < 0 || cls >= algebra_->cocenter_dim())
        throw InputError("generator: cocenter class index out of range");
    if (degree < 1) throw InputError("generator: degree must be positive");
    return SymPoly::generator(cls, degree, algebra_->cocenter_parity(cls));
}

SymPoly SymRing::elementary(int n, const AlgebraElement& a) const {
    if (n < 0) return {};
    if (n == 0) return scalar(a.trace());
    SymPoly out;
    const auto coords = algebra_->cocenter_coords(a);
    for (int c = 0; c < algebra_->cocenter_dim(); ++c) {
        if (coords[static_cast<std::size_t>(c)] == 0) continue;
        out += coords[static_cast<std::size_t>(c)] * generator(c, n);
    }
    return out;
}

const SymPoly& SymRing::complete_on_basis(int n, int basis_index) const {
    const auto key = std::make_pair(n, basis_index);
    if (const auto it = complete_memo_.find(key); it != complete_memo_.end()) return it->second;
    SymPoly value;
    const AlgebraElement b = algebra_->basis_element(basis_index);
    if (n <= 0) {
        value = scalar(b.trace());
    } else {
        // Triangular recursion isolating the top complete term against the
        // elementary family, paired through the dual basis.
        for (int r = 1; r <= n; ++r) {
            const int sign = (r % 2 == 1) ? 1 : -1;
            for (int c = 0; c < algebra_->dim(); ++c) {
                const SymPoly e_part = elementary(r, algebra_->basis_element(c));
                if (e_part.is_zero()) continue;
                const SymPoly h_part = complete(n - r, algebra_->dual_element(c) * b);
                if (h_part.is_zero()) continue;
                value += Rat(sign) * (e_part * h_part);
            }
        }
    }
    return complete_memo_.emplace(key, std::move(value)).first->second;
}

SymPoly SymRing::complete(int n, const AlgebraElement& a) const {
    if (n < 0) return {};
    if (n == 0) return scalar(a.trace());
    SymPoly out;
    for (int i = 0; i < algebra_->dim(); ++i) {
        const Rat& c = a.coeff(i);
        if (c == 0) continue;
        out += c * complete_on_basis(n, i);
    }
    return out;
}

SymPoly SymRing::bubble_value(LoopOrientation o, const AlgebraElement& a, int dots) const {
    if (dots < -1) return {};
    if (dots == -1)
        return scalar(o == LoopOrientation::counterclockwise ? a.trace() : -a.trace());
    if (o == LoopOrientation::clockwise) return complete(dots + 1, a);
    SymPoly e = elementary(dots + 1, a);
    if (dots % 2 != 0) e *= Rat(-1);
    return e;
}

Rat SymRing::specialize(const SymPoly& p, const std::vector<Rat>& theta) const {
    if (static_cast<int>(theta.size()) != algebra_->cocenter_dim())
        throw InputError("specialize: one value per cocenter class required");
    Rat out = 0;
    for (const auto& [m, coeff] : p.terms()) {
        Rat term = coeff;
        for (const auto& f : m) {
            if (f.degree >= 2) {
                term = 0;
                break;
            }
            for (int k = 0; k < f.power; ++k) term *= theta[static_cast<std::size_t>(f.cls)];
            if (term == 0) break;
        }
        out += term;
    }
    return out;
}

std::string SymRing::to_string(const SymPoly& p) const {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        if (m.empty()) {
            os << rat_to_string(c);
            continue;
        }
        if (c != 1) os << rat_to_string(c) << " ";
        bool first_factor = true;
        for (const auto& f : m) {
            if (!first_factor) os << " ";
            first_factor = false;
            os << "z[" << algebra_->label(algebra_->cocenter_reps()[static_cast<std::size_t>(f.cls)])
               << "," << f.degree << "]";
            if (f.power > 1) os << "^" << f.power;
        }
    }
    return os.str();
}

nlohmann::json SymRing::to_json(const SymPoly& p) const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json monomial = nlohmann::json::array();
        for (const auto& f : m)
            monomial.push_back({algebra_->label(
                                    algebra_->cocenter_reps()[static_cast<std::size_t>(f.cls)]),
                                f.degree, f.power});
        terms.push_back({{"monomial", std::move(monomial)}, {"value", rat_to_string(c)}});
    }
    return terms;
}

}  // namespace frobrauer

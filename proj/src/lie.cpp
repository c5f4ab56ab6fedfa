#include "frobrauer/lie.hpp"

#include <sstream>
#include <utility>

namespace frobrauer {

// ---------------------------------------------------------------------------
// GlElement
// ---------------------------------------------------------------------------

GlElement::GlElement(GlPtr context, std::vector<Rat> coeffs)
    : context_(std::move(context)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != context_->dim()) {
        throw InputError("matrix element coefficient vector has the wrong size");
    }
}

GlElement GlElement::zero(const GlPtr& context) {
    return GlElement(context, std::vector<Rat>(static_cast<std::size_t>(context->dim())));
}

bool GlElement::is_zero() const {
    for (const auto& c : coeffs_) {
        if (c != 0) return false;
    }
    return true;
}

Parity GlElement::parity() const {
    bool seen = false;
    Parity result = Parity::even;
    for (int k = 0; k < context_->dim(); ++k) {
        if (coeffs_[static_cast<std::size_t>(k)] == 0) continue;
        const Parity p = context_->parity(k);
        if (!seen) {
            seen = true;
            result = p;
        } else if (p != result) {
            throw InputError("parity of a mixed matrix element is undefined");
        }
    }
    return result;
}

GlElement GlElement::parity_part(Parity p) const {
    std::vector<Rat> out(coeffs_.size());
    for (int k = 0; k < context_->dim(); ++k) {
        if (context_->parity(k) == p) out[static_cast<std::size_t>(k)] = coeffs_[static_cast<std::size_t>(k)];
    }
    return GlElement(context_, std::move(out));
}

AlgebraElement GlElement::supertrace() const {
    const auto& alg = context_->algebra();
    std::vector<Rat> out(static_cast<std::size_t>(alg->dim()));
    const int d = context_->matrix_size();
    for (int i = 1; i <= d; ++i) {
        const Rat sign = parity_sign(context_->signature().index_parity(i));
        for (int b = 0; b < alg->dim(); ++b) {
            out[static_cast<std::size_t>(b)] += sign * coeff(context_->index_of(b, i, i));
        }
    }
    return AlgebraElement(alg, std::move(out));
}

Rat GlElement::trace_form() const { return supertrace().trace(); }

Rat GlElement::trace_form_with(const GlElement& other) const {
    return (*this * other).trace_form();
}

GlElement& GlElement::operator+=(const GlElement& other) {
    require_same_context(*this, other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

GlElement& GlElement::operator-=(const GlElement& other) {
    require_same_context(*this, other);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

GlElement& GlElement::operator*=(const Rat& scalar) {
    for (auto& c : coeffs_) c *= scalar;
    return *this;
}

GlElement operator*(const GlElement& a, const GlElement& b) {
    require_same_context(a, b);
    const auto& ctx = *a.context();
    const auto& alg = ctx.algebra();
    GlElement out = GlElement::zero(a.context());
    for (int ka = 0; ka < ctx.dim(); ++ka) {
        const Rat& ca = a.coeff(ka);
        if (ca == 0) continue;
        const GlSymbol sa = ctx.symbol_of(ka);
        for (int kb = 0; kb < ctx.dim(); ++kb) {
            const Rat& cb = b.coeff(kb);
            if (cb == 0) continue;
            const GlSymbol sb = ctx.symbol_of(kb);
            if (sa.col != sb.row) continue;
            const auto& prod = alg->mult_row(sa.alg, sb.alg);
            for (int e = 0; e < alg->dim(); ++e) {
                if (prod[static_cast<std::size_t>(e)] == 0) continue;
                out.coeffs_[static_cast<std::size_t>(ctx.index_of(e, sa.row, sb.col))] +=
                    ca * cb * prod[static_cast<std::size_t>(e)];
            }
        }
    }
    return out;
}

bool operator==(const GlElement& a, const GlElement& b) {
    require_same_context(a, b);
    return a.coeffs_ == b.coeffs_;
}

GlElement GlElement::bracket(const GlElement& other) const {
    require_same_context(*this, other);
    GlElement out = GlElement::zero(context_);
    for (Parity pa : {Parity::even, Parity::odd}) {
        const GlElement xa = parity_part(pa);
        if (xa.is_zero()) continue;
        for (Parity pb : {Parity::even, Parity::odd}) {
            const GlElement xb = other.parity_part(pb);
            if (xb.is_zero()) continue;
            out += xa * xb;
            out -= koszul(pa, pb) * (xb * xa);
        }
    }
    return out;
}

std::string GlElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < context_->dim(); ++k) {
        const Rat& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        const Rat mag = c < 0 ? Rat(-c) : c;
        if (mag != 1) os << rat_to_string(mag) << " ";
        os << context_->label(k);
    }
    if (first) return "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// GlContext
// ---------------------------------------------------------------------------

GlPtr GlContext::make(AlgebraPtr algebra, int m, int n) {
    if (m < 0 || n < 0 || m + n < 1) {
        throw InputError("matrix signature must have m >= 0, n >= 0, m + n >= 1");
    }
    auto ctx = std::shared_ptr<GlContext>(new GlContext());
    ctx->algebra_ = std::move(algebra);
    ctx->sig_ = Signature{m, n};
    return ctx;
}

int GlContext::index_of(int alg, int row, int col) const {
    const int d = sig_.total();
    return ((row - 1) * d + (col - 1)) * algebra_->dim() + alg;
}

GlSymbol GlContext::symbol_of(int k) const {
    const int da = algebra_->dim();
    const int d = sig_.total();
    GlSymbol s;
    s.alg = k % da;
    const int pos = k / da;
    s.col = pos % d + 1;
    s.row = pos / d + 1;
    return s;
}

Parity GlContext::parity(int k) const {
    const GlSymbol s = symbol_of(k);
    return algebra_->parity(s.alg) + sig_.index_parity(s.row) + sig_.index_parity(s.col);
}

GlElement GlContext::zero() const { return GlElement::zero(shared_from_this()); }

GlElement GlContext::basis_element(int k) const {
    std::vector<Rat> coeffs(static_cast<std::size_t>(dim()));
    coeffs[static_cast<std::size_t>(k)] = 1;
    return GlElement(shared_from_this(), std::move(coeffs));
}

GlElement GlContext::matrix_unit(const AlgebraElement& a, int row, int col) const {
    std::vector<Rat> coeffs(static_cast<std::size_t>(dim()));
    for (int b = 0; b < algebra_->dim(); ++b) {
        coeffs[static_cast<std::size_t>(index_of(b, row, col))] = a.coeff(b);
    }
    return GlElement(shared_from_this(), std::move(coeffs));
}

GlElement GlContext::dual_basis_element(int k) const {
    const GlSymbol s = symbol_of(k);
    GlElement out = matrix_unit(algebra_->dual_element(s.alg), s.col, s.row);
    out *= parity_sign(sig_.index_parity(s.col));
    return out;
}

std::string GlContext::label(int k) const {
    const GlSymbol s = symbol_of(k);
    std::ostringstream os;
    os << algebra_->label(s.alg) << "(" << s.row << "," << s.col << ")";
    return os.str();
}

std::vector<std::pair<GlElement, GlElement>> GlContext::omega() const {
    std::vector<std::pair<GlElement, GlElement>> out;
    out.reserve(static_cast<std::size_t>(dim()));
    for (int k = 0; k < dim(); ++k) {
        out.emplace_back(basis_element(k), dual_basis_element(k));
    }
    return out;
}

void require_same_context(const GlElement& a, const GlElement& b) {
    if (a.context() != b.context()) {
        throw InputError("matrix elements live over different contexts");
    }
}

// ---------------------------------------------------------------------------
// ModuleSpace
// ---------------------------------------------------------------------------

ModuleSpace::ModuleSpace(GlPtr context, Word word)
    : context_(std::move(context)), word_(std::move(word)) {
    factor_dim_ = static_cast<std::size_t>(context_->algebra()->dim()) *
                  static_cast<std::size_t>(context_->matrix_size());
    dim_ = 1;
    for (std::size_t i = 0; i < word_.size(); ++i) {
        if (dim_ > (std::size_t{1} << 40) / factor_dim_) {
            throw ResourceError("tensor word is too large to enumerate");
        }
        dim_ *= factor_dim_;
    }
}

Parity ModuleSpace::factor_parity(int local) const {
    return context_->algebra()->parity(factor_alg(local)) +
           context_->signature().index_parity(factor_pos(local));
}

std::size_t ModuleSpace::encode(const std::vector<int>& locals) const {
    std::size_t index = 0;
    std::size_t stride = 1;
    for (int local : locals) {
        index += static_cast<std::size_t>(local) * stride;
        stride *= factor_dim_;
    }
    return index;
}

std::vector<int> ModuleSpace::decode(std::size_t index) const {
    std::vector<int> locals(word_.size());
    for (std::size_t p = 0; p < word_.size(); ++p) {
        locals[p] = static_cast<int>(index % factor_dim_);
        index /= factor_dim_;
    }
    return locals;
}

Parity ModuleSpace::vector_parity(std::size_t index) const {
    return parity_between(index, 0, length());
}

Parity ModuleSpace::parity_between(std::size_t index, int from, int to) const {
    Parity p = Parity::even;
    std::size_t rest = index;
    for (int q = 0; q < to; ++q) {
        const int local = static_cast<int>(rest % factor_dim_);
        rest /= factor_dim_;
        if (q >= from) p = p + factor_parity(local);
    }
    return p;
}

std::string ModuleSpace::basis_label(std::size_t index) const {
    if (word_.empty()) return "()";
    std::ostringstream os;
    const auto locals = decode(index);
    for (std::size_t p = 0; p < locals.size(); ++p) {
        if (p > 0) os << " (x) ";
        os << context_->algebra()->label(factor_alg(locals[p])) << "[" << factor_pos(locals[p])
           << (word_[p] == Letter::plus ? "+" : "-") << "]";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Sparse vectors
// ---------------------------------------------------------------------------

void sparse_add(SparseVec& into, std::size_t key, const Rat& value) {
    if (value == 0) return;
    auto it = into.find(key);
    if (it == into.end()) {
        into.emplace(key, value);
    } else {
        it->second += value;
        if (it->second == 0) into.erase(it);
    }
}

SparseVec sparse_scale(SparseVec v, const Rat& s) {
    if (s == 0) return {};
    for (auto& [key, value] : v) value *= s;
    return v;
}

bool sparse_equal(const SparseVec& a, const SparseVec& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ia != a.end() && ia->second == 0) { ++ia; continue; }
        if (ib != b.end() && ib->second == 0) { ++ib; continue; }
        if (ia == a.end() || ib == b.end()) return false;
        if (ia->first != ib->first || ia->second != ib->second) return false;
        ++ia;
        ++ib;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Right actions
// ---------------------------------------------------------------------------

namespace {

// Action of basis element `gl_index` on the single factor at `slot`
// (0-based), with no passing sign; the per-letter signs are intrinsic.
void act_at_slot(const ModuleSpace& space, std::size_t vec, int slot, int gl_index,
                 const Rat& scale, SparseVec& out) {
    const auto& ctx = *space.context();
    const auto& alg = ctx.algebra();
    const GlSymbol s = ctx.symbol_of(gl_index);
    const Parity act_parity = ctx.parity(gl_index);

    auto locals = space.decode(vec);
    const int local = locals[static_cast<std::size_t>(slot)];
    const int b = space.factor_alg(local);
    const int i = space.factor_pos(local);

    if (space.word()[static_cast<std::size_t>(slot)] == Letter::plus) {
        // Row vectors: a basis row (b, i) times the matrix c(row, col)
        // contributes only when i == row, landing at position col.
        if (i != s.row) return;
        const auto& prod = alg->mult_row(b, s.alg);
        for (int e = 0; e < alg->dim(); ++e) {
            const Rat& c = prod[static_cast<std::size_t>(e)];
            if (c == 0) continue;
            locals[static_cast<std::size_t>(slot)] = space.factor_index(e, s.col);
            sparse_add(out, space.encode(locals), scale * c);
        }
    } else {
        // Column vectors carry the negated, sign-twisted left multiplication.
        if (i != s.col) return;
        const Rat sign = -koszul(space.factor_parity(local), act_parity);
        const auto& prod = alg->mult_row(s.alg, b);
        for (int e = 0; e < alg->dim(); ++e) {
            const Rat& c = prod[static_cast<std::size_t>(e)];
            if (c == 0) continue;
            locals[static_cast<std::size_t>(slot)] = space.factor_index(e, s.row);
            sparse_add(out, space.encode(locals), scale * sign * c);
        }
    }
}

}  // namespace

SparseVec act_basis(const ModuleSpace& space, std::size_t vec, int gl_index) {
    SparseVec out;
    const Parity act_parity = space.context()->parity(gl_index);
    for (int p = 0; p < space.length(); ++p) {
        const Parity tail = space.parity_between(vec, p + 1, space.length());
        act_at_slot(space, vec, p, gl_index, koszul(act_parity, tail), out);
    }
    return out;
}

SparseVec act(const ModuleSpace& space, const SparseVec& v, const GlElement& M) {
    if (M.context() != space.context()) {
        throw InputError("acting element belongs to a different context");
    }
    SparseVec out;
    for (int k = 0; k < space.context()->dim(); ++k) {
        const Rat& c = M.coeff(k);
        if (c == 0) continue;
        for (const auto& [vec, value] : v) {
            for (const auto& [key, piece] : act_basis(space, vec, k)) {
                sparse_add(out, key, c * value * piece);
            }
        }
    }
    return out;
}

SparseVec omega_pair_action(const ModuleSpace& space, const SparseVec& v, int p, int k) {
    if (p == k || p < 1 || k < 1 || p > space.length() || k > space.length()) {
        throw InputError("omega routing needs two distinct factor positions");
    }
    const auto& ctx = *space.context();
    SparseVec out;
    for (int g = 0; g < ctx.dim(); ++g) {
        const Parity gp = ctx.parity(g);
        const GlElement dual = ctx.dual_basis_element(g);
        for (const auto& [vec, value] : v) {
            // First leg at factor p, then the dual leg at factor k.
            SparseVec mid;
            const Parity tail_p = space.parity_between(vec, p, space.length());
            act_at_slot(space, vec, p - 1, g, koszul(gp, tail_p) * value, mid);
            for (const auto& [mvec, mvalue] : mid) {
                const Parity tail_k = space.parity_between(mvec, k, space.length());
                const Rat pass = koszul(gp, tail_k) * mvalue;
                for (int h = 0; h < ctx.dim(); ++h) {
                    const Rat& dc = dual.coeff(h);
                    if (dc == 0) continue;
                    act_at_slot(space, mvec, k - 1, h, pass * dc, out);
                }
            }
        }
    }
    return out;
}

Rat pairing_minus_plus(const GlContext& ctx, int local_minus, int local_plus) {
    const auto& alg = ctx.algebra();
    const int da = alg->dim();
    const int b = local_minus % da;
    const int i = local_minus / da + 1;
    const int c = local_plus % da;
    const int j = local_plus / da + 1;
    if (i != j) return 0;
    const Parity pv = alg->parity(b) + ctx.signature().index_parity(i);
    const Parity pw = alg->parity(c) + ctx.signature().index_parity(j);
    return koszul(pv, pw) * (alg->basis_element(c) * alg->basis_element(b)).trace();
}

// ---------------------------------------------------------------------------
// Enveloping-algebra elements
// ---------------------------------------------------------------------------

Parity monomial_parity(const GlContext& ctx, const UeaMonomial& mono) {
    Parity p = Parity::even;
    for (int f : mono.factors) p = p + ctx.parity(f);
    return p;
}

SparseVec act_uea(const ModuleSpace& space, const SparseVec& v, const UeaElement& u) {
    SparseVec out;
    for (const auto& mono : u) {
        SparseVec cur = sparse_scale(v, mono.coeff);
        for (int f : mono.factors) {
            SparseVec next;
            for (const auto& [vec, value] : cur) {
                for (const auto& [key, piece] : act_basis(space, vec, f)) {
                    sparse_add(next, key, value * piece);
                }
            }
            cur = std::move(next);
        }
        for (const auto& [key, value] : cur) sparse_add(out, key, value);
    }
    return out;
}

SparseVec act_uea_rho(const ModuleSpace& space, const SparseVec& v, const UeaElement& u) {
    const auto& ctx = *space.context();
    SparseVec out;
    for (const auto& mono : u) {
        const Parity up = monomial_parity(ctx, mono);
        SparseVec twisted;
        for (const auto& [vec, value] : v) {
            sparse_add(twisted, vec, koszul(up, space.vector_parity(vec)) * value);
        }
        for (const auto& [key, value] :
             act_uea(space, twisted, UeaElement{{mono.coeff, mono.factors}})) {
            sparse_add(out, key, value);
        }
    }
    return out;
}

namespace {

// Multiply out a list of algebra elements in fixed matrix positions into
// basis monomials, appending coeff * (basis factors) terms to `out`.
void expand_factors(const GlContext& ctx,
                    const std::vector<std::pair<AlgebraElement, std::pair<int, int>>>& factors,
                    std::size_t at, const Rat& coeff, std::vector<int>& prefix,
                    UeaElement& out) {
    if (at == factors.size()) {
        out.push_back(UeaMonomial{coeff, prefix});
        return;
    }
    const auto& [elem, pos] = factors[at];
    for (int e = 0; e < ctx.algebra()->dim(); ++e) {
        const Rat& c = elem.coeff(e);
        if (c == 0) continue;
        prefix.push_back(ctx.index_of(e, pos.first, pos.second));
        expand_factors(ctx, factors, at + 1, coeff * c, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

UeaElement central_element(const GlPtr& context, const AlgebraElement& a, int r) {
    if (r < 1) throw InputError("central elements need at least one loop dot");
    if (!a.is_homogeneous()) {
        throw InputError("central elements are defined for homogeneous tokens");
    }
    const auto& ctx = *context;
    const auto& alg = ctx.algebra();
    const int d = ctx.matrix_size();
    const int da = alg->dim();

    // The loop with r dots and token a acts, up to the parity twist, as
    // right multiplication by
    //   sum over matrix index cycles i_1 -> ... -> i_r -> i_1 and basis
    //   labels b_1..b_r of
    //     (-1)^E tr(a (b_1...b_r)^twist) (b_1 dual)_(i_2,i_1) ... (b_r dual)_(i_1,i_r),
    // where the twist is the conjugation-by-duals average and E collects
    // the Koszul signs of threading the loop labels past each other and
    // the row parities picked up by the dual legs.
    UeaElement out;
    std::vector<int> idx(static_cast<std::size_t>(r), 1);   // matrix indices, 1-based
    std::vector<int> bas(static_cast<std::size_t>(r), 0);   // algebra basis choices
    while (true) {
        AlgebraElement word = alg->basis_element(bas[0]);
        for (int p = 1; p < r; ++p) word = word * alg->basis_element(bas[static_cast<std::size_t>(p)]);
        const Rat kappa = (a * word.dagger()).trace();
        if (kappa != 0) {
            int sum_b = 0;
            std::vector<int> beta(static_cast<std::size_t>(r));
            int expo = 0;
            for (int p = 0; p < r; ++p) {
                const int bp = is_odd(alg->parity(bas[static_cast<std::size_t>(p)])) ? 1 : 0;
                const int pi =
                    (is_odd(ctx.signature().index_parity(idx[static_cast<std::size_t>(p)])) ? 1 : 0) ^
                    (is_odd(ctx.signature().index_parity(idx[static_cast<std::size_t>((p + 1) % r)]))
                         ? 1
                         : 0);
                beta[static_cast<std::size_t>(p)] = bp ^ pi;
                sum_b ^= bp;
                expo ^= is_odd(ctx.signature().index_parity(idx[static_cast<std::size_t>(p)])) ? 1 : 0;
            }
            for (int p = 0; p < r; ++p) {
                for (int q = p + 1; q < r; ++q) {
                    expo ^= beta[static_cast<std::size_t>(p)] & beta[static_cast<std::size_t>(q)];
                }
            }
            const int p1 = is_odd(ctx.signature().index_parity(idx[0])) ? 1 : 0;
            expo ^= p1 & sum_b;
            expo ^= p1;

            std::vector<std::pair<AlgebraElement, std::pair<int, int>>> factors;
            for (int p = 0; p < r; ++p) {
                factors.emplace_back(alg->dual_element(bas[static_cast<std::size_t>(p)]),
                                     std::make_pair(idx[static_cast<std::size_t>((p + 1) % r)],
                                                    idx[static_cast<std::size_t>(p)]));
            }
            std::vector<int> prefix;
            expand_factors(ctx, factors, 0, (expo ? Rat(-1) : Rat(1)) * kappa, prefix, out);
        }

        // Odometer over matrix indices and basis labels.
        int q = 0;
        for (; q < 2 * r; ++q) {
            if (q < r) {
                if (++idx[static_cast<std::size_t>(q)] <= d) break;
                idx[static_cast<std::size_t>(q)] = 1;
            } else {
                if (++bas[static_cast<std::size_t>(q - r)] < da) break;
                bas[static_cast<std::size_t>(q - r)] = 0;
            }
        }
        if (q == 2 * r) break;
    }

    // Merge identical factor sequences.
    std::map<std::vector<int>, Rat> merged;
    for (auto& mono : out) {
        merged[mono.factors] += mono.coeff;
    }
    UeaElement compact;
    for (auto& [factors, coeff] : merged) {
        if (coeff != 0) compact.push_back(UeaMonomial{coeff, factors});
    }
    return compact;
}

}  // namespace frobrauer

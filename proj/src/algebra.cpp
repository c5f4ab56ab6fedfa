#include "frobrauer/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

namespace frobrauer {

// ---------------------------------------------------------------------------
// AlgebraError
// ---------------------------------------------------------------------------

std::string AlgebraError::describe(Kind kind, const std::string& witness) {
    const char* head = "algebra error";
    switch (kind) {
        case Kind::BadTable: head = "BadTable"; break;
        case Kind::ParityViolation: head = "ParityViolation"; break;
        case Kind::NotUnital: head = "NotUnital"; break;
        case Kind::NotAssociative: head = "NotAssociative"; break;
        case Kind::TraceNotSymmetric: head = "TraceNotSymmetric"; break;
        case Kind::TraceDegenerate: head = "TraceDegenerate"; break;
    }
    return std::string(head) + ": " + witness;
}

// ---------------------------------------------------------------------------
// AlgebraElement
// ---------------------------------------------------------------------------

AlgebraElement::AlgebraElement(AlgebraPtr algebra, std::vector<Rat> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != algebra_->dim())
        throw InputError("AlgebraElement: coefficient count does not match algebra dimension");
}

AlgebraElement AlgebraElement::zero(const AlgebraPtr& algebra) {
    return AlgebraElement(algebra, std::vector<Rat>(static_cast<std::size_t>(algebra->dim())));
}

AlgebraElement AlgebraElement::unit(const AlgebraPtr& algebra) {
    return AlgebraElement(algebra, algebra->unit_coeffs());
}

AlgebraElement AlgebraElement::basis(const AlgebraPtr& algebra, int index) {
    std::vector<Rat> c(static_cast<std::size_t>(algebra->dim()));
    c.at(static_cast<std::size_t>(index)) = 1;
    return AlgebraElement(algebra, std::move(c));
}

bool AlgebraElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& r) { return r == 0; });
}

bool AlgebraElement::is_homogeneous() const {
    bool has_even = false, has_odd = false;
    for (int i = 0; i < algebra_->dim(); ++i) {
        if (coeffs_[static_cast<std::size_t>(i)] == 0) continue;
        (is_odd(algebra_->parity(i)) ? has_odd : has_even) = true;
    }
    return !(has_even && has_odd);
}

Parity AlgebraElement::parity() const {
    bool has_even = false, has_odd = false;
    for (int i = 0; i < algebra_->dim(); ++i) {
        if (coeffs_[static_cast<std::size_t>(i)] == 0) continue;
        (is_odd(algebra_->parity(i)) ? has_odd : has_even) = true;
    }
    if (has_even && has_odd)
        throw InputError("parity of a mixed-parity element: " + to_string());
    return has_odd ? Parity::odd : Parity::even;
}

AlgebraElement AlgebraElement::parity_part(Parity p) const {
    std::vector<Rat> c(coeffs_.size());
    for (int i = 0; i < algebra_->dim(); ++i)
        if (algebra_->parity(i) == p) c[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)];
    return AlgebraElement(algebra_, std::move(c));
}

Rat AlgebraElement::trace() const {
    Rat t = 0;
    for (int i = 0; i < algebra_->dim(); ++i)
        t += coeffs_[static_cast<std::size_t>(i)] * algebra_->trace_coeff(i);
    return t;
}

Rat AlgebraElement::trace_with(const AlgebraElement& other) const {
    return ((*this) * other).trace();
}

AlgebraElement AlgebraElement::dagger() const {
    // For homogeneous a: sum over basis b of (-1)^{|a||b|} b * a * b-dual,
    // extended linearly over the parity parts.
    AlgebraElement out = zero(algebra_);
    for (Parity pa : {Parity::even, Parity::odd}) {
        const AlgebraElement part = parity_part(pa);
        if (part.is_zero()) continue;
        for (int b = 0; b < algebra_->dim(); ++b) {
            const AlgebraElement left = basis(algebra_, b);
            const AlgebraElement right = algebra_->dual_element(b);
            AlgebraElement term = left * part * right;
            term *= Rat(koszul(pa, algebra_->parity(b)));
            out += term;
        }
    }
    return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
    if (algebra_ != other.algebra_) throw InputError("AlgebraElement: mixing algebras");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
    if (algebra_ != other.algebra_) throw InputError("AlgebraElement: mixing algebras");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rat& scalar) {
    for (Rat& c : coeffs_) c *= scalar;
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.algebra_ != b.algebra_) throw InputError("AlgebraElement: mixing algebras");
    const auto& alg = *a.algebra_;
    std::vector<Rat> out(static_cast<std::size_t>(alg.dim()));
    for (int i = 0; i < alg.dim(); ++i) {
        const Rat& ai = a.coeffs_[static_cast<std::size_t>(i)];
        if (ai == 0) continue;
        for (int j = 0; j < alg.dim(); ++j) {
            const Rat& bj = b.coeffs_[static_cast<std::size_t>(j)];
            if (bj == 0) continue;
            const Rat scale = ai * bj;
            const auto& row = alg.mult_row(i, j);
            for (int k = 0; k < alg.dim(); ++k)
                if (row[static_cast<std::size_t>(k)] != 0)
                    out[static_cast<std::size_t>(k)] += scale * row[static_cast<std::size_t>(k)];
        }
    }
    return AlgebraElement(a.algebra_, std::move(out));
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.algebra_ == b.algebra_ && a.coeffs_ == b.coeffs_;
}

std::string AlgebraElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < algebra_->dim(); ++i) {
        const Rat& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!first) os << " + ";
        if (c != 1) os << rat_to_string(c) << " ";
        os << algebra_->label(i);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// FrobeniusAlgebra construction and validation
// ---------------------------------------------------------------------------

AlgebraPtr FrobeniusAlgebra::make(Tables tables) {
    auto alg = std::shared_ptr<FrobeniusAlgebra>(new FrobeniusAlgebra());
    alg->tables_ = std::move(tables);
    alg->validate_and_derive();
    return alg;
}

void FrobeniusAlgebra::validate_and_derive() {
    using Kind = AlgebraError::Kind;
    const std::size_t n = tables_.labels.size();
    if (n == 0) throw AlgebraError(Kind::BadTable, "empty basis");
    if (tables_.parity.size() != n || tables_.trace.size() != n || tables_.mult.size() != n)
        throw AlgebraError(Kind::BadTable, "table sizes do not match basis size");
    for (const auto& row : tables_.mult) {
        if (row.size() != n) throw AlgebraError(Kind::BadTable, "multiplication table is not square");
        for (const auto& cell : row)
            if (cell.size() != n)
                throw AlgebraError(Kind::BadTable, "multiplication entry has wrong width");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (tables_.labels[i] == tables_.labels[j])
                throw AlgebraError(Kind::BadTable, "duplicate basis label '" + tables_.labels[i] + "'");

    // Parity: products of homogeneous elements must be homogeneous of the
    // expected parity, and the trace must kill odd elements.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Parity expect = tables_.parity[i] + tables_.parity[j];
            for (std::size_t k = 0; k < n; ++k) {
                if (tables_.mult[i][j][k] != 0 && tables_.parity[k] != expect)
                    throw AlgebraError(Kind::ParityViolation,
                                       tables_.labels[i] + " * " + tables_.labels[j] +
                                           " has a component on " + tables_.labels[k]);
            }
        }
        if (is_odd(tables_.parity[i]) && tables_.trace[i] != 0)
            throw AlgebraError(Kind::ParityViolation,
                               "trace does not vanish on odd element " + tables_.labels[i]);
    }

    // Unit: solve u * b_j = b_j and b_j * u = b_j for all j.
    {
        QMat system(2 * n * n, n);
        std::vector<Rat> rhs(2 * n * n);
        std::size_t row = 0;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t i = 0; i < n; ++i) {
                    system.at(row, i) = tables_.mult[i][j][k];          // (u b_j)_k
                    system.at(row + 1, i) = tables_.mult[j][i][k];      // (b_j u)_k
                }
                rhs[row] = (j == k) ? 1 : 0;
                rhs[row + 1] = (j == k) ? 1 : 0;
                row += 2;
            }
        }
        auto u = solve(system, rhs);
        if (!u) throw AlgebraError(Kind::NotUnital, "no two-sided unit solves the table");
        unit_ = *u;
    }

    // Associativity on basis triples.
    auto mul_vec = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j] == 0) continue;
                for (std::size_t k = 0; k < n; ++k)
                    out[k] += a[i] * b[j] * tables_.mult[i][j][k];
            }
        }
        return out;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<Rat> ek(n);
                ek[k] = 1;
                const auto left = mul_vec(tables_.mult[i][j], ek);
                std::vector<Rat> ei(n);
                ei[i] = 1;
                const auto right = mul_vec(ei, tables_.mult[j][k]);
                if (left != right)
                    throw AlgebraError(Kind::NotAssociative,
                                       "(" + tables_.labels[i] + " * " + tables_.labels[j] + ") * " +
                                           tables_.labels[k] + " != " + tables_.labels[i] + " * (" +
                                           tables_.labels[j] + " * " + tables_.labels[k] + ")");
            }

    // Trace supersymmetry: tr(ab) = (-1)^{|a||b|} tr(ba) on basis pairs.
    auto trace_of = [&](const std::vector<Rat>& v) {
        Rat t = 0;
        for (std::size_t k = 0; k < n; ++k) t += v[k] * tables_.trace[k];
        return t;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat lhs = trace_of(tables_.mult[i][j]);
            const Rat rhs = Rat(koszul(tables_.parity[i], tables_.parity[j])) *
                            trace_of(tables_.mult[j][i]);
            if (lhs != rhs)
                throw AlgebraError(Kind::TraceNotSymmetric,
                                   "pair (" + tables_.labels[i] + ", " + tables_.labels[j] + ")");
        }

    // Nondegeneracy: invert the Gram matrix tr(b_i b_j); its rows give duals.
    {
        QMat gram(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) gram.at(i, j) = trace_of(tables_.mult[i][j]);
        auto inv = inverse(gram);
        if (!inv) {
            // Produce a kernel vector as the witness.
            QMat m = gram;
            std::vector<std::size_t> pivots;
            m.rref(&pivots);
            std::vector<Rat> kernel(n);
            std::vector<bool> is_pivot(n, false);
            for (auto p : pivots) is_pivot[p] = true;
            std::size_t free_col = 0;
            while (free_col < n && is_pivot[free_col]) ++free_col;
            kernel[free_col] = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r)
                kernel[pivots[r]] = -m.at(r, free_col);
            std::ostringstream w;
            w << "trace pairing has kernel vector ";
            bool first = true;
            for (std::size_t k = 0; k < n; ++k) {
                if (kernel[k] == 0) continue;
                if (!first) w << " + ";
                if (kernel[k] != 1) w << rat_to_string(kernel[k]) << " ";
                w << tables_.labels[k];
                first = false;
            }
            throw AlgebraError(Kind::TraceDegenerate, w.str());
        }
        dual_.assign(n, std::vector<Rat>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) dual_[i][k] = inv->at(i, k);
    }

    // Cocenter: echelon representatives modulo the supercommutator span.
    {
        QMat span(0, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<Rat> row(n);
                const int sign = koszul(tables_.parity[i], tables_.parity[j]);
                for (std::size_t k = 0; k < n; ++k)
                    row[k] = tables_.mult[i][j][k] - Rat(sign) * tables_.mult[j][i][k];
                if (std::any_of(row.begin(), row.end(), [](const Rat& r) { return r != 0; }))
                    span.append_row(row);
            }
        QMat accumulated = span;
        cocenter_reps_.clear();
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Rat> ek(n);
            ek[k] = 1;
            if (!in_row_span(accumulated, ek)) {
                cocenter_reps_.push_back(static_cast<int>(k));
                accumulated.append_row(ek);
            }
        }
        // Projection: express each basis vector as (commutator part) + sum of reps.
        const std::size_t c = cocenter_reps_.size();
        const std::size_t s = span.rows();
        QMat system(n, s + c);
        for (std::size_t col = 0; col < s; ++col)
            for (std::size_t r = 0; r < n; ++r) system.at(r, col) = span.at(col, r);
        for (std::size_t col = 0; col < c; ++col)
            system.at(static_cast<std::size_t>(cocenter_reps_[col]), s + col) = 1;
        cocenter_proj_ = QMat(c, n);
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Rat> ek(n);
            ek[k] = 1;
            auto x = solve(system, ek);
            if (!x) throw AlgebraError(Kind::BadTable, "cocenter projection failed");
            for (std::size_t i = 0; i < c; ++i) cocenter_proj_.at(i, k) = (*x)[s + i];
        }
    }
}

int FrobeniusAlgebra::label_index(std::string_view label) const {
    for (int i = 0; i < dim(); ++i)
        if (tables_.labels[static_cast<std::size_t>(i)] == label) return i;
    return -1;
}

AlgebraElement FrobeniusAlgebra::element(std::vector<Rat> coeffs) const {
    return AlgebraElement(shared_from_this(), std::move(coeffs));
}

AlgebraElement FrobeniusAlgebra::zero() const { return AlgebraElement::zero(shared_from_this()); }
AlgebraElement FrobeniusAlgebra::unit() const { return AlgebraElement::unit(shared_from_this()); }

AlgebraElement FrobeniusAlgebra::basis_element(int i) const {
    return AlgebraElement::basis(shared_from_this(), i);
}

AlgebraElement FrobeniusAlgebra::dual_element(int i) const {
    return AlgebraElement(shared_from_this(), dual_[static_cast<std::size_t>(i)]);
}

std::vector<Rat> FrobeniusAlgebra::cocenter_coords(const AlgebraElement& a) const {
    const std::size_t c = cocenter_reps_.size();
    std::vector<Rat> out(c);
    for (std::size_t i = 0; i < c; ++i)
        for (int k = 0; k < dim(); ++k)
            out[i] += cocenter_proj_.at(i, static_cast<std::size_t>(k)) * a.coeff(k);
    return out;
}

QMat FrobeniusAlgebra::invariant_tensor() const {
    const std::size_t n = static_cast<std::size_t>(dim());
    QMat t(n, n);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t k = 0; k < n; ++k) t.at(b, k) += dual_[b][k];
    // Row b currently holds the dual coefficients; the tensor sum of
    // b (x) b-dual has coefficient dual_[b][k] at (b, k), which is what we
    // stored, so nothing further to do.
    return t;
}

FrobeniusAlgebra::BeamReport FrobeniusAlgebra::verify_beam() const {
    const int n = dim();
    for (int a = 0; a < n; ++a) {
        for (int c = 0; c < n; ++c) {
            // Left side: sum_b (-1)^{|b||c|} (a b c) (x) b-dual,
            // right side: (-1)^{|a||c|} sum_b (-1)^{|b||c|} b (x) (c b-dual a).
            QMat lhs(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
            QMat rhs(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
            const AlgebraElement ea = basis_element(a);
            const AlgebraElement ec = basis_element(c);
            for (int b = 0; b < n; ++b) {
                const int sign_bc = koszul(parity(b), parity(c));
                const AlgebraElement abc = ea * basis_element(b) * ec;
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        lhs.at(static_cast<std::size_t>(k), static_cast<std::size_t>(l)) +=
                            Rat(sign_bc) * abc.coeff(k) * dual_coeffs(b)[static_cast<std::size_t>(l)];
                const AlgebraElement cba = ec * dual_element(b) * ea;
                const int sign_ac = koszul(parity(a), parity(c));
                for (int l = 0; l < n; ++l)
                    rhs.at(static_cast<std::size_t>(b), static_cast<std::size_t>(l)) +=
                        Rat(sign_ac * sign_bc) * cba.coeff(l);
            }
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (lhs.at(static_cast<std::size_t>(k), static_cast<std::size_t>(l)) !=
                        rhs.at(static_cast<std::size_t>(k), static_cast<std::size_t>(l)))
                        return {false, "bend identity fails at (a, c) = (" + label(a) + ", " +
                                           label(c) + ")"};
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Built-ins
// ---------------------------------------------------------------------------

AlgebraPtr FrobeniusAlgebra::ground() { return truncated_polynomial(1); }

AlgebraPtr FrobeniusAlgebra::truncated_polynomial(int ell) {
    if (ell < 1) throw InputError("truncated_polynomial: order must be at least 1");
    const std::size_t n = static_cast<std::size_t>(ell);
    Tables t;
    t.name = (ell == 1) ? "k" : ("trunc(" + std::to_string(ell) + ")");
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0)
            t.labels.push_back("1");
        else if (i == 1)
            t.labels.push_back("t");
        else
            t.labels.push_back("t^" + std::to_string(i));
    }
    t.parity.assign(n, Parity::even);
    t.mult.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i + j < n) t.mult[i][j][i + j] = 1;
    t.trace.assign(n, Rat(0));
    t.trace[n - 1] = 1;
    return make(std::move(t));
}

AlgebraPtr FrobeniusAlgebra::grassmann_pair() {
    // Exterior algebra on two odd generators with the Berezin-style trace
    // picking out the top component.
    Tables t;
    t.name = "grass2";
    t.labels = {"1", "th1", "th2", "th12"};
    t.parity = {Parity::even, Parity::odd, Parity::odd, Parity::even};
    const int n = 4;
    t.mult.assign(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n)));
    auto set = [&](int i, int j, int k, int v) { t.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = v; };
    // Unit row/column.
    for (int i = 0; i < n; ++i) {
        set(0, i, i, 1);
        if (i != 0) set(i, 0, i, 1);
    }
    set(1, 2, 3, 1);   // th1 th2 = th12
    set(2, 1, 3, -1);  // th2 th1 = -th12
    t.trace = {0, 0, 0, 1};
    return make(std::move(t));
}

AlgebraPtr FrobeniusAlgebra::matrix_algebra2() {
    Tables t;
    t.name = "mat2";
    t.labels = {"E11", "E12", "E21", "E22"};
    t.parity.assign(4, Parity::even);
    t.mult.assign(4, std::vector<std::vector<Rat>>(4, std::vector<Rat>(4)));
    auto idx = [](int i, int j) { return (i - 1) * 2 + (j - 1); };
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                for (int l = 1; l <= 2; ++l)
                    if (j == k)
                        t.mult[static_cast<std::size_t>(idx(i, j))][static_cast<std::size_t>(idx(k, l))]
                              [static_cast<std::size_t>(idx(i, l))] = 1;
    t.trace = {1, 0, 0, 1};
    return make(std::move(t));
}

AlgebraPtr FrobeniusAlgebra::named(const std::string& spec) {
    if (spec == "k") return ground();
    if (spec == "grass2") return grassmann_pair();
    if (spec == "mat2") return matrix_algebra2();
    if (!spec.empty() && spec.front() == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw InputError("cannot open algebra file '" + spec.substr(1) + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("bad JSON in algebra file: ") + e.what());
        }
        return from_json(j);
    }
    if (spec.rfind("trunc(", 0) == 0 && spec.back() == ')') {
        const std::string inner = spec.substr(6, spec.size() - 7);
        try {
            return truncated_polynomial(std::stoi(inner));
        } catch (const std::exception&) {
            throw InputError("bad algebra spec: '" + spec + "'");
        }
    }
    throw InputError("unknown algebra '" + spec +
                     "' (expected k, trunc(N), grass2, mat2, or a JSON file)");
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

static Rat rat_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw InputError("expected integer or \"p/q\" string in numeric field");
}

AlgebraPtr FrobeniusAlgebra::from_json(const nlohmann::json& j) {
    Tables t;
    try {
        t.name = j.value("name", std::string("custom"));
        t.labels = j.at("labels").get<std::vector<std::string>>();
        for (int p : j.at("parity").get<std::vector<int>>()) {
            if (p != 0 && p != 1) throw InputError("parity entries must be 0 or 1");
            t.parity.push_back(p ? Parity::odd : Parity::even);
        }
        for (const auto& row : j.at("mult")) {
            t.mult.emplace_back();
            for (const auto& cell : row) {
                std::vector<Rat> v;
                for (const auto& e : cell) v.push_back(rat_from_json(e));
                t.mult.back().push_back(std::move(v));
            }
        }
        for (const auto& e : j.at("trace")) t.trace.push_back(rat_from_json(e));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed algebra JSON: ") + e.what());
    }
    return make(std::move(t));
}

nlohmann::json FrobeniusAlgebra::to_json() const {
    nlohmann::json j;
    j["name"] = tables_.name;
    j["labels"] = tables_.labels;
    std::vector<int> par;
    for (Parity p : tables_.parity) par.push_back(is_odd(p) ? 1 : 0);
    j["parity"] = par;
    nlohmann::json mult = nlohmann::json::array();
    for (const auto& row : tables_.mult) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const auto& cell : row) {
            nlohmann::json jcell = nlohmann::json::array();
            for (const Rat& r : cell) jcell.push_back(rat_to_string(r));
            jrow.push_back(std::move(jcell));
        }
        mult.push_back(std::move(jrow));
    }
    j["mult"] = std::move(mult);
    nlohmann::json tr = nlohmann::json::array();
    for (const Rat& r : tables_.trace) tr.push_back(rat_to_string(r));
    j["trace"] = std::move(tr);
    nlohmann::json reps = nlohmann::json::array();
    for (int r : cocenter_reps_) reps.push_back(tables_.labels[static_cast<std::size_t>(r)]);
    j["cocenter_representatives"] = std::move(reps);
    return j;
}

}  // namespace frobrauer

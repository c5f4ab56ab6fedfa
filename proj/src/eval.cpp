#include "frobrauer/eval.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>
#include <utility>

namespace frobrauer {

Word to_letters(const ObjectWord& word) {
    Word out;
    out.reserve(word.size());
    for (Dir d : word) out.push_back(d == Dir::up ? Letter::plus : Letter::minus);
    return out;
}

ObjectWord to_dirs(const Word& word) {
    ObjectWord out;
    out.reserve(word.size());
    for (Letter l : word) out.push_back(l == Letter::plus ? Dir::up : Dir::down);
    return out;
}

int thread_count() {
    if (const char* env = std::getenv("FROBRAUER_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

// ---------------------------------------------------------------------------
// SuperLinearMap
// ---------------------------------------------------------------------------

SuperLinearMap::SuperLinearMap(ModuleSpace domain, ModuleSpace codomain)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
    columns_.resize(domain_.dim());
}

SuperLinearMap SuperLinearMap::identity_map(const ModuleSpace& space) {
    SuperLinearMap out(space, space);
    for (std::size_t j = 0; j < space.dim(); ++j) out.columns_[j] = {{j, Rat(1)}};
    return out;
}

void SuperLinearMap::add_entry(std::size_t row, std::size_t col, const Rat& value) {
    sparse_add(columns_[col], row, value);
}

SparseVec SuperLinearMap::apply(const SparseVec& v) const {
    SparseVec out;
    for (const auto& [col, weight] : v)
        for (const auto& [row, entry] : columns_[col]) sparse_add(out, row, entry * weight);
    return out;
}

bool SuperLinearMap::is_zero() const {
    for (const SparseVec& col : columns_)
        if (!col.empty()) return false;
    return true;
}

std::optional<Parity> SuperLinearMap::parity() const {
    bool seen_even = false;
    bool seen_odd = false;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        const bool dom_odd = is_odd(domain_.vector_parity(j));
        for (const auto& [row, entry] : columns_[j]) {
            (void)entry;
            const bool shift = is_odd(codomain_.vector_parity(row)) != dom_odd;
            (shift ? seen_odd : seen_even) = true;
        }
    }
    if (seen_even && seen_odd) return std::nullopt;
    return seen_odd ? Parity::odd : Parity::even;
}

SuperLinearMap SuperLinearMap::parity_part(Parity p) const {
    SuperLinearMap out(domain_, codomain_);
    const bool want = is_odd(p);
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        const bool dom_odd = is_odd(domain_.vector_parity(j));
        for (const auto& [row, entry] : columns_[j]) {
            const bool shift = is_odd(codomain_.vector_parity(row)) != dom_odd;
            if (shift == want) out.columns_[j].emplace(row, entry);
        }
    }
    return out;
}

SuperLinearMap& SuperLinearMap::operator+=(const SuperLinearMap& other) {
    if (!(domain_ == other.domain_) || !(codomain_ == other.codomain_))
        throw InputError("cannot add maps with different module shapes");
    for (std::size_t j = 0; j < columns_.size(); ++j)
        for (const auto& [row, entry] : other.columns_[j]) sparse_add(columns_[j], row, entry);
    return *this;
}

SuperLinearMap& SuperLinearMap::operator*=(const Rat& scalar) {
    for (SparseVec& col : columns_) col = sparse_scale(std::move(col), scalar);
    return *this;
}

bool operator==(const SuperLinearMap& a, const SuperLinearMap& b) {
    if (!(a.domain_ == b.domain_) || !(a.codomain_ == b.codomain_)) return false;
    for (std::size_t j = 0; j < a.columns_.size(); ++j)
        if (!sparse_equal(a.columns_[j], b.columns_[j])) return false;
    return true;
}

Rat SuperLinearMap::scalar_value() const {
    if (domain_.dim() != 1 || codomain_.dim() != 1)
        throw InputError("scalar_value needs one-dimensional modules; got " +
                         std::to_string(domain_.dim()) + " x " + std::to_string(codomain_.dim()));
    const auto it = columns_[0].find(0);
    return it == columns_[0].end() ? Rat(0) : it->second;
}

namespace {

nlohmann::json space_json(const ModuleSpace& space) {
    nlohmann::json word = nlohmann::json::array();
    for (Letter l : space.word()) word.push_back(l == Letter::plus ? "up" : "down");
    return {{"word", std::move(word)}, {"dim", space.dim()}};
}

}  // namespace

nlohmann::json SuperLinearMap::to_json() const {
    nlohmann::json j;
    j["domain"] = space_json(domain_);
    j["codomain"] = space_json(codomain_);
    const auto p = parity();
    if (p.has_value()) {
        j["parity"] = is_odd(*p) ? 1 : 0;
    } else {
        j["parity"] = nullptr;
    }
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t col = 0; col < columns_.size(); ++col)
        for (const auto& [row, entry] : columns_[col])
            entries.push_back({row, col, rat_to_string(entry)});
    j["entries"] = std::move(entries);
    return j;
}

std::string SuperLinearMap::describe_vector(const SparseVec& v) const {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [row, entry] : v) {
        if (!first) os << " + ";
        if (entry != 1) os << rat_to_string(entry) << " ";
        os << codomain_.basis_label(row);
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------------

Evaluator::Evaluator(GlPtr context, ObjectWord base_word)
    : context_(std::move(context)), base_(std::move(base_word)) {
    base_letters_ = to_letters(base_);
    const auto& alg = *context_->algebra();
    const int dim = alg.dim();
    trace_pair_.assign(static_cast<std::size_t>(dim),
                       std::vector<Rat>(static_cast<std::size_t>(dim)));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const std::vector<Rat>& prod = alg.mult_row(i, j);
            Rat total = 0;
            for (int e = 0; e < dim; ++e) total += prod[static_cast<std::size_t>(e)] * alg.trace_coeff(e);
            trace_pair_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = total;
        }
    }
}

ModuleSpace Evaluator::space_for(const ObjectWord& diagram_word) const {
    Word word = to_letters(diagram_word);
    word.insert(word.end(), base_letters_.begin(), base_letters_.end());
    return ModuleSpace(context_, std::move(word));
}

SparseVec Evaluator::apply_slice(const ModuleSpace& below, const Slice& slice,
                                 const SparseVec& v) const {
    const auto& alg = *context_->algebra();
    const std::size_t S = below.factor_dim();
    const auto stride = [&](int slots) {
        std::size_t r = 1;
        for (int k = 0; k < slots; ++k) r *= S;
        return r;
    };
    const int s = slice.pos - 1;  // slot of the leftmost touched factor
    SparseVec out;

    switch (slice.op) {
        case Slice::Op::token: {
            const AlgebraElement& a = *slice.label;
            if (a.algebra() != context_->algebra())
                throw InputError("token label belongs to a different algebra than the context");
            const std::size_t stp = stride(s);
            for (const auto& [idx, cv] : v) {
                const int local = static_cast<int>((idx / stp) % S);
                const int calg = below.factor_alg(local);
                const int pos = below.factor_pos(local);
                const Parity left = below.parity_between(idx, 0, s);
                for (int e = 0; e < alg.dim(); ++e) {
                    const Rat& q = a.coeff(e);
                    if (q == 0) continue;
                    const int sgn = koszul(alg.parity(e), left);
                    const std::vector<Rat>& prod = alg.mult_row(e, calg);
                    for (int f = 0; f < alg.dim(); ++f) {
                        const Rat& pf = prod[static_cast<std::size_t>(f)];
                        if (pf == 0) continue;
                        const std::size_t nidx =
                            idx - static_cast<std::size_t>(local) * stp +
                            static_cast<std::size_t>(below.factor_index(f, pos)) * stp;
                        sparse_add(out, nidx, cv * q * pf * sgn);
                    }
                }
            }
            break;
        }
        case Slice::Op::dot: {
            const int n = below.length();
            for (int k = slice.pos + 1; k <= n; ++k) {
                const SparseVec part = omega_pair_action(below, v, slice.pos, k);
                for (const auto& [idx, cv] : part) sparse_add(out, idx, cv);
            }
            break;
        }
        case Slice::Op::cross: {
            const std::size_t stp = stride(s);
            const std::size_t stq = stp * S;
            for (const auto& [idx, cv] : v) {
                const int la = static_cast<int>((idx / stp) % S);
                const int lb = static_cast<int>((idx / stq) % S);
                const int sgn = koszul(below.factor_parity(la), below.factor_parity(lb));
                const std::size_t nidx = idx + static_cast<std::size_t>(lb) * stp +
                                         static_cast<std::size_t>(la) * stq -
                                         static_cast<std::size_t>(la) * stp -
                                         static_cast<std::size_t>(lb) * stq;
                sparse_add(out, nidx, cv * sgn);
            }
            break;
        }
        case Slice::Op::cup_r:
        case Slice::Op::cup_l: {
            const bool right_cup = slice.op == Slice::Op::cup_r;
            const std::size_t stp = stride(s);
            const int d = context_->signature().total();
            for (const auto& [idx, cv] : v) {
                const std::size_t low = idx % stp;
                const std::size_t high = idx / stp;
                const std::size_t rebased = low + high * stp * S * S;
                for (int b = 0; b < alg.dim(); ++b) {
                    const std::vector<Rat>& dual = alg.dual_coeffs(b);
                    for (int i = 1; i <= d; ++i) {
                        const int sgn = right_cup
                                            ? (is_odd(alg.parity(b)) ? -1 : 1)
                                            : (is_odd(context_->signature().index_parity(i)) ? -1
                                                                                             : 1);
                        for (int e = 0; e < alg.dim(); ++e) {
                            const Rat& de = dual[static_cast<std::size_t>(e)];
                            if (de == 0) continue;
                            // Right cup: column then row.  Left cup: row then column.
                            const int d1 = right_cup ? below.factor_index(e, i)
                                                     : below.factor_index(b, i);
                            const int d2 = right_cup ? below.factor_index(b, i)
                                                     : below.factor_index(e, i);
                            const std::size_t nidx = rebased +
                                                     static_cast<std::size_t>(d1) * stp +
                                                     static_cast<std::size_t>(d2) * stp * S;
                            sparse_add(out, nidx, cv * de * sgn);
                        }
                    }
                }
            }
            break;
        }
        case Slice::Op::cap_r: {
            const std::size_t stp = stride(s);
            for (const auto& [idx, cv] : v) {
                const int la = static_cast<int>((idx / stp) % S);
                const int lb = static_cast<int>((idx / (stp * S)) % S);
                if (below.factor_pos(la) != below.factor_pos(lb)) continue;
                const Rat& val = trace_pair_[static_cast<std::size_t>(below.factor_alg(la))]
                                            [static_cast<std::size_t>(below.factor_alg(lb))];
                if (val == 0) continue;
                const std::size_t nidx = (idx % stp) + (idx / (stp * S * S)) * stp;
                sparse_add(out, nidx, cv * val);
            }
            break;
        }
        case Slice::Op::cap_l: {
            const std::size_t stp = stride(s);
            for (const auto& [idx, cv] : v) {
                const int la = static_cast<int>((idx / stp) % S);
                const int lb = static_cast<int>((idx / (stp * S)) % S);
                const Rat val = pairing_minus_plus(*context_, la, lb);
                if (val == 0) continue;
                const std::size_t nidx = (idx % stp) + (idx / (stp * S * S)) * stp;
                sparse_add(out, nidx, cv * val);
            }
            break;
        }
    }
    return out;
}

SuperLinearMap Evaluator::eval(const TermPtr& term) const {
    const ModuleSpace dom = space_for(term->domain());
    const ModuleSpace cod = space_for(term->codomain());
    for (const ModuleSpace* sp : {&dom, &cod}) {
        if (sp->dim() > kDenseCap)
            throw ResourceError("module dimension " + std::to_string(sp->dim()) +
                                " exceeds the dense cap " + std::to_string(kDenseCap));
    }

    struct Program {
        Rat coeff;
        std::vector<Slice> slices;
        std::vector<ModuleSpace> spaces;  // one per slice: the space below it
    };
    std::vector<Program> programs;
    for (SlicedTerm& st : lower(term)) {
        Program pr;
        pr.coeff = std::move(st.coeff);
        ObjectWord w = st.domain;
        pr.spaces.push_back(space_for(w));
        for (const Slice& sl : st.slices) {
            w = slice_output_word(w, sl);
            pr.spaces.push_back(space_for(w));
        }
        pr.spaces.pop_back();  // keep one space per slice (the word below it)
        pr.slices = std::move(st.slices);
        programs.push_back(std::move(pr));
    }

    SuperLinearMap out(dom, cod);
    const auto run_column = [&](std::size_t j) {
        SparseVec acc;
        for (const Program& pr : programs) {
            SparseVec vec{{j, pr.coeff}};
            for (std::size_t k = 0; k < pr.slices.size() && !vec.empty(); ++k)
                vec = apply_slice(pr.spaces[k], pr.slices[k], vec);
            for (const auto& [row, value] : vec) sparse_add(acc, row, value);
        }
        out.column(j) = std::move(acc);
    };

    const std::size_t n = dom.dim();
    const int workers =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n));
    if (workers <= 1 || n < 16) {
        for (std::size_t j = 0; j < n; ++j) run_column(j);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t j = static_cast<std::size_t>(w); j < n;
                         j += static_cast<std::size_t>(workers))
                        run_column(j);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (std::thread& t : pool) t.join();
        for (const std::exception_ptr& e : errors)
            if (e) std::rethrow_exception(e);
    }
    return out;
}

SuperLinearMap Evaluator::eval(const std::string& source) const {
    return eval(parse(source, context_->algebra()));
}

CheckResult Evaluator::check_relation(const TermPtr& lhs, const TermPtr& rhs) const {
    if (lhs->domain() != rhs->domain())
        throw TypeMismatch(lhs->domain(), rhs->domain(), "relation domains");
    if (lhs->codomain() != rhs->codomain())
        throw TypeMismatch(lhs->codomain(), rhs->codomain(), "relation codomains");
    const SuperLinearMap left = eval(lhs);
    const SuperLinearMap right = eval(rhs);
    for (std::size_t j = 0; j < left.domain().dim(); ++j) {
        if (!sparse_equal(left.column(j), right.column(j))) {
            CheckResult res;
            res.ok = false;
            res.witness = "on basis vector " + left.domain().basis_label(j) + ": left gives " +
                          left.describe_vector(left.column(j)) + "; right gives " +
                          right.describe_vector(right.column(j));
            return res;
        }
    }
    return {};
}

CheckResult Evaluator::check_relation(const std::string& lhs, const std::string& rhs) const {
    const auto& alg = context_->algebra();
    return check_relation(parse(lhs, alg), parse(rhs, alg));
}

CheckResult Evaluator::check_equivariance(const TermPtr& term) const {
    const SuperLinearMap full = eval(term);
    const ModuleSpace& dom = full.domain();
    const ModuleSpace& cod = full.codomain();
    for (int u = 0; u < context_->dim(); ++u) {
        const GlElement M = context_->basis_element(u);
        for (std::size_t j = 0; j < dom.dim(); ++j) {
            const SparseVec moved = act_basis(dom, j, u);
            const SparseVec lhs = full.apply(moved);
            const SparseVec rhs = act(cod, full.column(j), M);
            if (!sparse_equal(lhs, rhs)) {
                CheckResult res;
                res.ok = false;
                res.witness = "equivariance fails for generator " + context_->label(u) +
                              " on basis vector " + dom.basis_label(j) + ": map(w.u) = " +
                              full.describe_vector(lhs) + " but map(w).u = " +
                              full.describe_vector(rhs);
                return res;
            }
        }
    }
    return {};
}

CheckResult Evaluator::check_equivariance(const std::string& source) const {
    return check_equivariance(parse(source, context_->algebra()));
}

CheckResult check_supernatural(const GlPtr& context, const UeaElement& u,
                               const std::vector<Word>& words) {
    Parity pu = Parity::even;
    bool have = false;
    for (const UeaMonomial& mono : u) {
        const Parity p = monomial_parity(*context, mono);
        if (!have) {
            pu = p;
            have = true;
        } else if (p != pu) {
            throw InputError("check_supernatural needs a parity-homogeneous element");
        }
    }
    for (const Word& word : words) {
        const ModuleSpace space(context, word);
        for (int g = 0; g < context->dim(); ++g) {
            const GlElement M = context->basis_element(g);
            const int sgn = koszul(pu, context->parity(g));
            for (std::size_t j = 0; j < space.dim(); ++j) {
                const SparseVec moved = act_basis(space, j, g);
                const SparseVec lhs = act_uea_rho(space, moved, u);
                SparseVec rhs = act(space, act_uea_rho(space, SparseVec{{j, Rat(1)}}, u), M);
                rhs = sparse_scale(std::move(rhs), sgn);
                if (!sparse_equal(lhs, rhs)) {
                    CheckResult res;
                    res.ok = false;
                    std::string wname;
                    for (Letter l : word) wname += (l == Letter::plus ? "+" : "-");
                    res.witness = "element fails to super-commute with " + context->label(g) +
                                  " on word (" + wname + "), basis vector " +
                                  space.basis_label(j);
                    return res;
                }
            }
        }
    }
    return {};
}

CheckResult Evaluator::verify_shark(const AlgebraElement& token, int r) const {
    const TermPtr loop = bubble_term(LoopOrientation::counterclockwise, token, r);
    const SuperLinearMap left = eval(loop);
    const ModuleSpace space = space_for({});
    const UeaElement z = central_element(context_, token, r);
    for (std::size_t j = 0; j < space.dim(); ++j) {
        const SparseVec rhs = act_uea_rho(space, SparseVec{{j, Rat(1)}}, z);
        if (!sparse_equal(left.column(j), rhs)) {
            CheckResult res;
            res.ok = false;
            res.witness = "dotted loop (r=" + std::to_string(r) + ", token " +
                          token.to_string() + ") on basis vector " + space.basis_label(j) +
                          ": diagram gives " + left.describe_vector(left.column(j)) +
                          "; twisted right multiplication gives " + left.describe_vector(rhs);
            return res;
        }
    }
    return {};
}

}  // namespace frobrauer

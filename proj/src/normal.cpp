#include "frobrauer/normal.hpp"

#include "frobrauer/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <exception>
#include <functional>
#include <thread>
#include <utility>

namespace frobrauer {

std::string point_to_string(const MatchPoint& p) {
    return (p.cod ? "c" : "d") + std::to_string(p.pos);
}

// ---------------------------------------------------------------------------
// NormalMorphism
// ---------------------------------------------------------------------------

NormalMorphism::NormalMorphism(ObjectWord domain, ObjectWord codomain)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {}

void NormalMorphism::add_term(const DecoratedMatching& key, SymPoly coeff) {
    if (coeff.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(key, std::move(coeff));
    if (!fresh) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool operator==(const NormalMorphism& a, const NormalMorphism& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.terms_ == b.terms_;
}

std::string NormalMorphism::to_string(const SymRing& ring) const {
    if (terms_.empty()) return "0";
    const auto& alg = *ring.algebra();
    std::string out;
    for (const auto& [key, coeff] : terms_) {
        if (!out.empty()) out += "\n";
        out += "(" + ring.to_string(coeff) + ") ::";
        for (const NormalString& s : key.strings) {
            out += " [" + point_to_string(s.in) + "->" + point_to_string(s.out) +
                   " tok=" + alg.label(s.token) + " dots=" + std::to_string(s.dots) + "]";
        }
    }
    return out;
}

nlohmann::json NormalMorphism::to_json(const SymRing& ring) const {
    const auto& alg = *ring.algebra();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, coeff] : terms_) {
        nlohmann::json matching = nlohmann::json::array();
        nlohmann::json dots = nlohmann::json::array();
        nlohmann::json tokens = nlohmann::json::array();
        for (const NormalString& s : key.strings) {
            matching.push_back({point_to_string(s.in), point_to_string(s.out)});
            dots.push_back(s.dots);
            tokens.push_back(alg.label(s.token));
        }
        terms.push_back({{"matching", matching},
                         {"dots", dots},
                         {"tokens", tokens},
                         {"coeff", ring.to_json(coeff)}});
    }
    return {{"domain", word_to_string(domain_)},
            {"codomain", word_to_string(codomain_)},
            {"terms", terms}};
}

// ---------------------------------------------------------------------------
// The slice-absorption engine
// ---------------------------------------------------------------------------
//
// A state is an equivalent presentation of the partially swept diagram:
//
//   [decoration layers, bottom to top]  over  [undecorated partial diagram]
//
// with an extracted scalar `q` in front.  Each live string carries at most
// one layer (a token below a pile of dots, attached at the string's upward
// leg); the stack records the vertical order of the layers.  Strings whose
// two endpoints both ended on the bottom boundary can no longer hold a
// layer above the sweep line, so their decorations are frozen onto the
// string itself (the `frozen` list records that vertical order).  Tokens
// and dots on one string commute, tokens slide over cups, caps and
// crossings unchanged, and undecorated presentations of one matching are
// equal, which together make this data a faithful invariant.  Every rule
// below is the Koszul bookkeeping of moving a decoration past the layers
// between its entry height and its resting place.

namespace {

struct Cluster {
    int dots = 0;
    int token = -1;  // basis index; -1 = no token yet (acts as the unit)
};

struct EngineString {
    int in_dom = 0;  // 1-based bottom position, 0 while the end is live
    int out_dom = 0;
    Cluster cluster;
    int stack_pos = -1;
    bool alive = true;
};

struct State {
    SymPoly q;
    std::vector<EngineString> strings;
    std::vector<std::pair<int, Dir>> frame;  // (string id, direction) per position
    std::vector<int> stack;                  // ids with layers, bottom to top
    std::vector<int> frozen;                 // ids frozen, in freeze order
    std::size_t next = 0;                    // next slice to absorb
};

class Engine {
public:
    Engine(const FrobeniusAlgebra& alg, const SymRing& ring, long bound, std::atomic<long>& work)
        : alg_(alg), ring_(ring), bound_(bound), work_(work) {}

    void run(const SlicedTerm& term, std::map<DecoratedMatching, SymPoly>& out);

private:
    Parity layer_parity(const State& s, int id) const {
        const int tok = s.strings[static_cast<std::size_t>(id)].cluster.token;
        return tok < 0 ? Parity::even : alg_.parity(tok);
    }
    // Sum of layer parities in stack slots [from, to).
    Parity stack_parity(const State& s, int from, int to) const {
        Parity p = Parity::even;
        for (int i = from; i < to; ++i) p = p + layer_parity(s, s.stack[static_cast<std::size_t>(i)]);
        return p;
    }
    void erase_stack_slot(State& s, int slot) const {
        s.stack.erase(s.stack.begin() + slot);
        for (std::size_t i = static_cast<std::size_t>(slot); i < s.stack.size(); ++i)
            s.strings[static_cast<std::size_t>(s.stack[i])].stack_pos = static_cast<int>(i);
    }

    // A token of basis index `b` lands on the upward leg at `pos` coming
    // from above everything; continuations go to `sink`.
    void absorb_token_basis(State s, int pos, int b, std::vector<State>& sink) const;
    // Same for a general element: expanded over the basis eagerly.
    void absorb_token_element(State s, int pos, const AlgebraElement& label,
                              std::vector<State>& sink) const;

    void absorb(const Slice& slice, State s, std::vector<State>& pending) const;
    void finalize(State s, std::map<DecoratedMatching, SymPoly>& out) const;

    const FrobeniusAlgebra& alg_;
    const SymRing& ring_;
    long bound_;
    std::atomic<long>& work_;
};

void Engine::absorb_token_basis(State s, int pos, int b, std::vector<State>& sink) const {
    const auto [id, dir] = s.frame[static_cast<std::size_t>(pos)];
    if (dir != Dir::up)
        throw TypeMismatch({Dir::up}, {dir}, "token strand");
    EngineString& str = s.strings[static_cast<std::size_t>(id)];
    if (str.stack_pos < 0) {
        str.stack_pos = static_cast<int>(s.stack.size());
        s.stack.push_back(id);
    } else {
        const Parity above = stack_parity(s, str.stack_pos + 1, static_cast<int>(s.stack.size()));
        if (koszul(alg_.parity(b), above) < 0) s.q *= Rat(-1);
    }
    if (str.cluster.token < 0) {
        str.cluster.token = b;
        sink.push_back(std::move(s));
        return;
    }
    // New token arrives above the existing one: the labels compose with the
    // later arrival on the left.
    const std::vector<Rat>& row = alg_.mult_row(b, str.cluster.token);
    for (int k = 0; k < alg_.dim(); ++k) {
        if (row[static_cast<std::size_t>(k)] == 0) continue;
        State t = s;
        t.strings[static_cast<std::size_t>(id)].cluster.token = k;
        t.q *= row[static_cast<std::size_t>(k)];
        sink.push_back(std::move(t));
    }
}

void Engine::absorb_token_element(State s, int pos, const AlgebraElement& label,
                                  std::vector<State>& sink) const {
    for (int b = 0; b < alg_.dim(); ++b) {
        const Rat& c = label.coeff(b);
        if (c == 0) continue;
        State t = s;
        t.q *= c;
        absorb_token_basis(std::move(t), pos, b, sink);
    }
}

void Engine::absorb(const Slice& slice, State s, std::vector<State>& pending) const {
    const int pos = slice.pos - 1;
    switch (slice.op) {
        case Slice::Op::token:
            absorb_token_element(std::move(s), pos, *slice.label, pending);
            return;

        case Slice::Op::dot: {
            const auto [id, dir] = s.frame[static_cast<std::size_t>(pos)];
            if (dir != Dir::up)
                throw TypeMismatch({Dir::up}, {dir}, "dot strand");
            EngineString& str = s.strings[static_cast<std::size_t>(id)];
            if (str.stack_pos < 0) {
                str.stack_pos = static_cast<int>(s.stack.size());
                s.stack.push_back(id);
            }
            str.cluster.dots += 1;
            pending.push_back(std::move(s));
            return;
        }

        case Slice::Op::cross: {
            const auto [idL, dirL] = s.frame[static_cast<std::size_t>(pos)];
            const auto [idR, dirR] = s.frame[static_cast<std::size_t>(pos) + 1];
            if (dirL != Dir::up || dirR != Dir::up)
                throw TypeMismatch({Dir::up, Dir::up}, {dirL, dirR}, "crossing strands");
            // Main branch: the crossing joins the undecorated diagram below
            // every layer; the strings trade places and tokens ride along.
            {
                State m = s;
                std::swap(m.frame[static_cast<std::size_t>(pos)],
                          m.frame[static_cast<std::size_t>(pos) + 1]);
                pending.push_back(std::move(m));
            }
            // Correction branches: the crossing trades one dot of either
            // strand for a two-token basis sum across both strands, with
            // weight +dots for the left strand and -dots for the right one.
            for (const auto& [side, weight] :
                 {std::pair<int, int>{idL, +1}, std::pair<int, int>{idR, -1}}) {
                const int d = s.strings[static_cast<std::size_t>(side)].cluster.dots;
                if (d == 0) continue;
                State c = s;
                c.q *= Rat(weight * d);
                EngineString& str = c.strings[static_cast<std::size_t>(side)];
                str.cluster.dots -= 1;
                if (str.cluster.dots == 0 && str.cluster.token < 0)
                    erase_stack_slot(c, std::exchange(str.stack_pos, -1));
                for (int b = 0; b < alg_.dim(); ++b) {
                    std::vector<State> mid;
                    absorb_token_element(c, pos + 1, alg_.dual_element(b), mid);
                    for (State& m : mid) absorb_token_basis(std::move(m), pos, b, pending);
                }
            }
            return;
        }

        case Slice::Op::cup_r:
        case Slice::Op::cup_l: {
            const int id = static_cast<int>(s.strings.size());
            s.strings.push_back(EngineString{});
            const bool right = slice.op == Slice::Op::cup_r;
            const std::pair<int, Dir> first{id, right ? Dir::down : Dir::up};
            const std::pair<int, Dir> second{id, right ? Dir::up : Dir::down};
            s.frame.insert(s.frame.begin() + pos, {first, second});
            pending.push_back(std::move(s));
            return;
        }

        case Slice::Op::cap_r:
        case Slice::Op::cap_l: {
            const bool right = slice.op == Slice::Op::cap_r;
            const auto [id0, dir0] = s.frame[static_cast<std::size_t>(pos)];
            const auto [id1, dir1] = s.frame[static_cast<std::size_t>(pos) + 1];
            const Dir want0 = right ? Dir::up : Dir::down;
            if (dir0 != want0 || dir1 == dir0)
                throw TypeMismatch({want0, want0 == Dir::up ? Dir::down : Dir::up}, {dir0, dir1},
                                   "cap strands");
            const int u = right ? id0 : id1;  // leg flowing up into the cap
            const int v = right ? id1 : id0;  // leg flowing down out of it

            if (u == v) {
                // The cap closes the string into a loop; its layer detaches
                // as a closed bubble after descending past the layers below.
                EngineString& str = s.strings[static_cast<std::size_t>(u)];
                int sign = 1;
                if (str.stack_pos >= 0) {
                    sign = koszul(layer_parity(s, u), stack_parity(s, 0, str.stack_pos));
                    erase_stack_slot(s, std::exchange(str.stack_pos, -1));
                }
                const AlgebraElement tok = str.cluster.token < 0
                                               ? alg_.unit()
                                               : alg_.basis_element(str.cluster.token);
                const LoopOrientation orient =
                    right ? LoopOrientation::clockwise : LoopOrientation::counterclockwise;
                SymPoly value = ring_.bubble_value(orient, tok, str.cluster.dots);
                if (sign < 0) value *= Rat(-1);
                s.q = value * s.q;
                str.alive = false;
                s.frame.erase(s.frame.begin() + pos, s.frame.begin() + pos + 2);
                if (!s.q.is_zero()) pending.push_back(std::move(s));
                return;
            }

            // Merge: the composite string runs from u's entry to v's exit;
            // u's layer travels to v's height, passing the layers between
            // (and v's own token when coming down from above).
            const int hu = s.strings[static_cast<std::size_t>(u)].stack_pos;
            const int hv = s.strings[static_cast<std::size_t>(v)].stack_pos;
            const Parity pu = layer_parity(s, u);
            int sign = 1;
            if (hu >= 0 && hv >= 0) {
                sign = koszul(pu, stack_parity(s, std::min(hu, hv) + 1, std::max(hu, hv)));
                if (hu > hv) sign *= koszul(pu, layer_parity(s, v));
            }
            if (sign < 0) s.q *= Rat(-1);

            const Cluster cu = s.strings[static_cast<std::size_t>(u)].cluster;
            const Cluster cv = s.strings[static_cast<std::size_t>(v)].cluster;
            const int merged_dots = cu.dots + cv.dots;

            State base = std::move(s);
            {
                EngineString& us = base.strings[static_cast<std::size_t>(u)];
                EngineString& vs = base.strings[static_cast<std::size_t>(v)];
                if (hu >= 0 && hv >= 0) {
                    erase_stack_slot(base, std::exchange(us.stack_pos, -1));
                } else if (hu >= 0) {
                    base.stack[static_cast<std::size_t>(hu)] = v;
                    vs.stack_pos = std::exchange(us.stack_pos, -1);
                }
                vs.cluster.dots = merged_dots;
                if (us.in_dom > 0) vs.in_dom = us.in_dom;
                us.alive = false;
            }
            base.frame.erase(base.frame.begin() + pos, base.frame.begin() + pos + 2);
            for (auto& entry : base.frame)
                if (entry.first == u) entry.first = v;

            // The labels compose with the downward side on the left.
            std::vector<std::pair<int, Rat>> tokens;
            if (cu.token < 0) {
                tokens.emplace_back(cv.token, Rat(1));
            } else if (cv.token < 0) {
                tokens.emplace_back(cu.token, Rat(1));
            } else {
                const std::vector<Rat>& row = alg_.mult_row(cv.token, cu.token);
                for (int k = 0; k < alg_.dim(); ++k)
                    if (row[static_cast<std::size_t>(k)] != 0)
                        tokens.emplace_back(k, row[static_cast<std::size_t>(k)]);
            }

            for (const auto& [tok, coeff] : tokens) {
                State t = base;
                EngineString& vs = t.strings[static_cast<std::size_t>(v)];
                vs.cluster.token = tok;
                if (coeff != 1) t.q *= coeff;
                if (vs.in_dom > 0 && vs.out_dom > 0) {
                    // Both endpoints sit on the bottom boundary: freeze the
                    // layer onto the string, descending past the layers
                    // below it.
                    if (vs.stack_pos >= 0) {
                        if (koszul(layer_parity(t, v), stack_parity(t, 0, vs.stack_pos)) < 0)
                            t.q *= Rat(-1);
                        erase_stack_slot(t, std::exchange(vs.stack_pos, -1));
                    }
                    t.frozen.push_back(v);
                }
                pending.push_back(std::move(t));
            }
            return;
        }
    }
    throw InputError("unhandled slice operation");
}

// Count of inverted odd/odd pairs between the given vertical order and the
// terminus-ascending order; (-1)^count is the reordering sign.
int odd_inversions(const std::vector<std::pair<int, Parity>>& order) {
    int count = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (is_odd(order[i].second) && is_odd(order[j].second) &&
                order[i].first > order[j].first)
                ++count;
    return count;
}

void Engine::finalize(State s, std::map<DecoratedMatching, SymPoly>& out) const {
    if (s.q.is_zero()) return;

    // Codomain positions of the live legs.
    std::vector<int> in_cod(s.strings.size(), 0), out_cod(s.strings.size(), 0);
    for (std::size_t i = 0; i < s.frame.size(); ++i) {
        const auto [id, dir] = s.frame[i];
        (dir == Dir::up ? out_cod : in_cod)[static_cast<std::size_t>(id)] =
            static_cast<int>(i) + 1;
    }

    // Reorder the live layers and the frozen decorations into the canonical
    // terminus-ascending vertical order.
    std::vector<std::pair<int, Parity>> live;
    for (const int id : s.stack) {
        const EngineString& str = s.strings[static_cast<std::size_t>(id)];
        const int terminus = (str.in_dom > 0 || str.out_dom > 0)
                                 ? std::max(in_cod[static_cast<std::size_t>(id)],
                                            out_cod[static_cast<std::size_t>(id)])
                                 : std::min(in_cod[static_cast<std::size_t>(id)],
                                            out_cod[static_cast<std::size_t>(id)]);
        live.emplace_back(terminus, layer_parity(s, id));
    }
    std::vector<std::pair<int, Parity>> frozen;
    for (const int id : s.frozen) {
        const EngineString& str = s.strings[static_cast<std::size_t>(id)];
        frozen.emplace_back(std::min(str.in_dom, str.out_dom), layer_parity(s, id));
    }
    if ((odd_inversions(live) + odd_inversions(frozen)) % 2 != 0) s.q *= Rat(-1);

    // Strings that never received a token carry the unit: expand it over
    // the basis (several summands only for algebras whose unit is not a
    // basis vector).
    std::vector<int> pristine;
    for (std::size_t id = 0; id < s.strings.size(); ++id)
        if (s.strings[id].alive && s.strings[id].cluster.token < 0)
            pristine.push_back(static_cast<int>(id));

    std::vector<std::pair<std::vector<int>, Rat>> fills{{{}, Rat(1)}};
    for (std::size_t slot = 0; slot < pristine.size(); ++slot) {
        std::vector<std::pair<std::vector<int>, Rat>> next;
        for (const auto& [tokens, coeff] : fills)
            for (int k = 0; k < alg_.dim(); ++k) {
                const Rat& c = alg_.unit_coeffs()[static_cast<std::size_t>(k)];
                if (c == 0) continue;
                auto tk = tokens;
                tk.push_back(k);
                next.emplace_back(std::move(tk), coeff * c);
            }
        fills = std::move(next);
    }

    for (const auto& [tokens, coeff] : fills) {
        DecoratedMatching key;
        for (std::size_t id = 0; id < s.strings.size(); ++id) {
            const EngineString& str = s.strings[id];
            if (!str.alive) continue;
            NormalString ns;
            ns.in = str.in_dom > 0 ? MatchPoint{false, str.in_dom}
                                   : MatchPoint{true, in_cod[id]};
            ns.out = str.out_dom > 0 ? MatchPoint{false, str.out_dom}
                                     : MatchPoint{true, out_cod[id]};
            ns.dots = str.cluster.dots;
            ns.token = str.cluster.token;
            if (ns.token < 0) {
                const auto slot = std::find(pristine.begin(), pristine.end(),
                                            static_cast<int>(id)) -
                                  pristine.begin();
                ns.token = tokens[static_cast<std::size_t>(slot)];
            }
            key.strings.push_back(ns);
        }
        std::sort(key.strings.begin(), key.strings.end(),
                  [](const NormalString& a, const NormalString& b) { return a.in < b.in; });
        SymPoly q = s.q;
        if (coeff != 1) q *= coeff;
        auto [it, fresh] = out.try_emplace(key, q);
        if (!fresh) {
            it->second += q;
            if (it->second.is_zero()) out.erase(it);
        }
    }
}

void Engine::run(const SlicedTerm& term, std::map<DecoratedMatching, SymPoly>& out) {
    State init;
    init.q = SymPoly::scalar(term.coeff);
    for (std::size_t i = 0; i < term.domain.size(); ++i) {
        EngineString str;
        const int id = static_cast<int>(init.strings.size());
        if (term.domain[i] == Dir::up)
            str.in_dom = static_cast<int>(i) + 1;
        else
            str.out_dom = static_cast<int>(i) + 1;
        init.strings.push_back(str);
        init.frame.emplace_back(id, term.domain[i]);
    }

    std::vector<State> pending;
    pending.push_back(std::move(init));
    while (!pending.empty()) {
        State s = std::move(pending.back());
        pending.pop_back();
        if (work_.fetch_add(1, std::memory_order_relaxed) + 1 > bound_)
            throw DepthError("normal-form work bound of " + std::to_string(bound_) +
                             " states exceeded");
        if (s.next == term.slices.size()) {
            finalize(std::move(s), out);
            continue;
        }
        const Slice& slice = term.slices[s.next];
        s.next += 1;
        absorb(slice, std::move(s), pending);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Normalizer
// ---------------------------------------------------------------------------

Normalizer::Normalizer(AlgebraPtr algebra, long work_bound)
    : algebra_(std::move(algebra)), ring_(algebra_), work_bound_(work_bound) {}

NormalMorphism Normalizer::normalize(const TermPtr& term) const {
    const std::vector<SlicedTerm> sliced = lower(term);
    NormalMorphism out(term->domain(), term->codomain());
    std::atomic<long> work{0};

    const std::size_t n = sliced.size();
    const int workers =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n));
    if (workers <= 1 || n < 4) {
        std::map<DecoratedMatching, SymPoly> acc;
        Engine engine(*algebra_, ring_, work_bound_, work);
        for (const SlicedTerm& st : sliced) engine.run(st, acc);
        for (auto& [key, coeff] : acc) out.add_term(key, std::move(coeff));
        return out;
    }

    std::vector<std::map<DecoratedMatching, SymPoly>> accs(static_cast<std::size_t>(workers));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                Engine engine(*algebra_, ring_, work_bound_, work);
                for (std::size_t j = static_cast<std::size_t>(w); j < n;
                     j += static_cast<std::size_t>(workers))
                    engine.run(sliced[j], accs[static_cast<std::size_t>(w)]);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    for (auto& acc : accs)
        for (auto& [key, coeff] : acc) out.add_term(key, std::move(coeff));
    return out;
}

NormalMorphism Normalizer::normalize(const std::string& source) const {
    return normalize(parse(source, algebra_));
}

// ---------------------------------------------------------------------------
// realize
// ---------------------------------------------------------------------------

namespace {

TermPtr at_position(const ObjectWord& word, int pos, int width, const TermPtr& gen) {
    // pos is 0-based; the generator consumes `width` letters of `word`.
    TermPtr out = gen;
    if (pos > 0)
        out = DiagramTerm::hcomp(
            DiagramTerm::identity(ObjectWord(word.begin(), word.begin() + pos)), out);
    if (pos + width < static_cast<int>(word.size()))
        out = DiagramTerm::hcomp(
            out, DiagramTerm::identity(ObjectWord(word.begin() + pos + width, word.end())));
    return out;
}

Dir flip(Dir d) { return d == Dir::up ? Dir::down : Dir::up; }

struct Leg {
    int string = 0;
    Dir dir = Dir::up;
};

// Emits the crossings that walk the left leg of the string's pair rightward
// until the two legs are adjacent; returns the position of the left leg of
// the now-adjacent pair.
template <typename EmitCross>
int walk_adjacent(std::vector<Leg>& legs, int string, const EmitCross& emit_cross) {
    const auto owner = [&](int t) { return legs[static_cast<std::size_t>(t)].string == string; };
    int p = 0;
    while (!owner(p)) ++p;
    int q = p + 1;
    while (!owner(q)) ++q;
    for (int t = p; t + 1 < q; ++t) {
        emit_cross(t, legs);
        std::swap(legs[static_cast<std::size_t>(t)], legs[static_cast<std::size_t>(t) + 1]);
    }
    return q - 1;
}

}  // namespace

TermPtr Normalizer::realize(const DecoratedMatching& key, const ObjectWord& domain,
                            const ObjectWord& codomain) const {
    // --- validate -----------------------------------------------------------
    const auto letter = [&](const MatchPoint& p) -> Dir {
        const ObjectWord& w = p.cod ? codomain : domain;
        if (p.pos < 1 || p.pos > static_cast<int>(w.size()))
            throw InputError("matching endpoint " + point_to_string(p) + " is out of range");
        return w[static_cast<std::size_t>(p.pos) - 1];
    };
    std::vector<bool> dom_used(domain.size(), false), cod_used(codomain.size(), false);
    const auto claim = [&](const MatchPoint& p) {
        std::vector<bool>& used = p.cod ? cod_used : dom_used;
        if (used[static_cast<std::size_t>(p.pos) - 1])
            throw InputError("matching endpoint " + point_to_string(p) + " is used twice");
        used[static_cast<std::size_t>(p.pos) - 1] = true;
    };
    for (const NormalString& s : key.strings) {
        const bool in_ok = s.in.cod ? letter(s.in) == Dir::down : letter(s.in) == Dir::up;
        const bool out_ok = s.out.cod ? letter(s.out) == Dir::up : letter(s.out) == Dir::down;
        if (!in_ok || !out_ok)
            throw InputError("string " + point_to_string(s.in) + "->" + point_to_string(s.out) +
                             " runs against the boundary orientations");
        claim(s.in);
        claim(s.out);
        if (s.dots < 0 || s.token < 0 || s.token >= algebra_->dim())
            throw InputError("string " + point_to_string(s.in) + "->" + point_to_string(s.out) +
                             " carries invalid decorations");
    }
    const auto all = [](const std::vector<bool>& v) {
        return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
    };
    if (!all(dom_used) || !all(cod_used))
        throw InputError("matching does not cover every boundary point");

    // --- classify -----------------------------------------------------------
    std::vector<int> caps, cups, throughs;  // indices into key.strings
    for (std::size_t i = 0; i < key.strings.size(); ++i) {
        const NormalString& s = key.strings[i];
        if (!s.in.cod && !s.out.cod)
            caps.push_back(static_cast<int>(i));
        else if (s.in.cod && s.out.cod)
            cups.push_back(static_cast<int>(i));
        else
            throughs.push_back(static_cast<int>(i));
    }

    std::vector<TermPtr> slices;  // bottom to top
    const auto word_of = [](const std::vector<Leg>& legs) {
        ObjectWord w;
        for (const Leg& l : legs) w.push_back(l.dir);
        return w;
    };
    const auto emit_decorations = [&](const ObjectWord& word, int pos0, const NormalString& s) {
        const Dir dir = word[static_cast<std::size_t>(pos0)];
        const AlgebraElement tok = algebra_->basis_element(s.token);
        if (!(tok == algebra_->unit()))
            slices.push_back(at_position(word, pos0, 1, token_on(dir, tok)));
        for (int d = 0; d < s.dots; ++d)
            slices.push_back(at_position(word, pos0, 1, dot_on(dir)));
    };
    const auto emit_cross = [&](int t, const std::vector<Leg>& cur) {
        slices.push_back(at_position(word_of(cur), t, 2,
                                     cross_term(cur[static_cast<std::size_t>(t)].dir,
                                                cur[static_cast<std::size_t>(t) + 1].dir)));
    };

    // Bottom arcs, leftmost first.  Each string's token and dots go on its
    // upward leg just under its arc, after the crossings that bring its legs
    // together, so that no decoration ever sits below a crossing.
    std::vector<Leg> legs;
    {
        std::vector<int> owner(domain.size(), -1);
        for (std::size_t i = 0; i < key.strings.size(); ++i) {
            const NormalString& s = key.strings[i];
            if (!s.in.cod) owner[static_cast<std::size_t>(s.in.pos) - 1] = static_cast<int>(i);
            if (!s.out.cod) owner[static_cast<std::size_t>(s.out.pos) - 1] = static_cast<int>(i);
        }
        for (std::size_t p = 0; p < domain.size(); ++p)
            legs.push_back(Leg{owner[p], domain[p]});
    }
    std::sort(caps.begin(), caps.end(), [&](int a, int b) {
        const NormalString &sa = key.strings[static_cast<std::size_t>(a)],
                           &sb = key.strings[static_cast<std::size_t>(b)];
        return std::min(sa.in.pos, sa.out.pos) < std::min(sb.in.pos, sb.out.pos);
    });
    for (const int i : caps) {
        const int t = walk_adjacent(legs, i, emit_cross);
        const bool up_left = legs[static_cast<std::size_t>(t)].dir == Dir::up;
        emit_decorations(word_of(legs), up_left ? t : t + 1,
                         key.strings[static_cast<std::size_t>(i)]);
        slices.push_back(
            at_position(word_of(legs), t, 2,
                        DiagramTerm::generator(up_left ? GenKind::cap_right : GenKind::cap_left)));
        legs.erase(legs.begin() + t, legs.begin() + t + 2);
    }

    // Crossings sorting the through-strands into codomain order: repeated
    // left-to-right scans of adjacent swaps.
    {
        const auto target = [&](const Leg& l) {
            const NormalString& s = key.strings[static_cast<std::size_t>(l.string)];
            return s.in.cod ? s.in.pos : s.out.pos;
        };
        bool moved = true;
        while (moved) {
            moved = false;
            for (int t = 0; t + 1 < static_cast<int>(legs.size()); ++t) {
                if (target(legs[static_cast<std::size_t>(t)]) >
                    target(legs[static_cast<std::size_t>(t) + 1])) {
                    slices.push_back(
                        at_position(word_of(legs), t, 2,
                                    cross_term(legs[static_cast<std::size_t>(t)].dir,
                                               legs[static_cast<std::size_t>(t) + 1].dir)));
                    std::swap(legs[static_cast<std::size_t>(t)],
                              legs[static_cast<std::size_t>(t) + 1]);
                    moved = true;
                }
            }
        }
    }

    // Top arcs: planned as bottom arcs of the vertically flipped top region,
    // then mirrored — the plan reverses, closing arcs become opening ones,
    // and each crossing is reread from the mirrored word.
    {
        std::vector<Leg> flipped;
        {
            std::vector<int> owner(codomain.size(), -1);
            for (const int i : cups) {
                const NormalString& s = key.strings[static_cast<std::size_t>(i)];
                owner[static_cast<std::size_t>(s.in.pos) - 1] = i;
                owner[static_cast<std::size_t>(s.out.pos) - 1] = i;
            }
            std::size_t next_through = 0;
            for (std::size_t p = 0; p < codomain.size(); ++p) {
                int who = owner[p];
                if (who < 0) who = legs[next_through++].string;
                flipped.push_back(Leg{who, flip(codomain[p])});
            }
        }
        std::vector<TermPtr> mirrored;  // collected top to bottom
        std::sort(cups.begin(), cups.end(), [&](int a, int b) {
            const NormalString &sa = key.strings[static_cast<std::size_t>(a)],
                               &sb = key.strings[static_cast<std::size_t>(b)];
            return std::min(sa.in.pos, sa.out.pos) < std::min(sb.in.pos, sb.out.pos);
        });
        for (const int i : cups) {
            const int t = walk_adjacent(
                flipped, i, [&](int t2, const std::vector<Leg>& cur) {
                    // The true word below the mirrored crossing is the flip
                    // of the post-swap letters above the flipped one.
                    ObjectWord below = word_of(cur);
                    std::swap(below[static_cast<std::size_t>(t2)],
                              below[static_cast<std::size_t>(t2) + 1]);
                    for (Dir& d : below) d = flip(d);
                    mirrored.push_back(
                        at_position(below, t2, 2,
                                    cross_term(below[static_cast<std::size_t>(t2)],
                                               below[static_cast<std::size_t>(t2) + 1])));
                });
            ObjectWord below = word_of(flipped);
            below.erase(below.begin() + t, below.begin() + t + 2);
            for (Dir& d : below) d = flip(d);
            const bool up_left = flipped[static_cast<std::size_t>(t)].dir == Dir::up;
            mirrored.push_back(at_position(
                below, t, 0,
                DiagramTerm::generator(up_left ? GenKind::cup_right : GenKind::cup_left)));
            flipped.erase(flipped.begin() + t, flipped.begin() + t + 2);
        }
        slices.insert(slices.end(), mirrored.rbegin(), mirrored.rend());
    }

    // Top decorations: each remaining string's token and dots sit above
    // everything at one of its top legs (the upward one when it has one),
    // stacked leftmost first.
    {
        std::vector<int> tops = throughs;
        tops.insert(tops.end(), cups.begin(), cups.end());
        const auto terminus = [&](int i) {
            const NormalString& s = key.strings[static_cast<std::size_t>(i)];
            if (s.in.cod && s.out.cod) return std::min(s.in.pos, s.out.pos);
            return s.in.cod ? s.in.pos : s.out.pos;
        };
        std::sort(tops.begin(), tops.end(),
                  [&](int a, int b) { return terminus(a) < terminus(b); });
        for (const int i : tops) {
            const NormalString& s = key.strings[static_cast<std::size_t>(i)];
            const int pos = (s.in.cod && s.out.cod) ? s.out.pos
                                                    : (s.in.cod ? s.in.pos : s.out.pos);
            emit_decorations(codomain, pos - 1, s);
        }
    }

    TermPtr out = DiagramTerm::identity(domain);
    for (const TermPtr& s : slices) out = DiagramTerm::vcomp(s, out);
    if (out->codomain() != codomain)
        throw InputError("matching endpoints are inconsistent with the boundary words");
    return out;
}

// ---------------------------------------------------------------------------
// expand / compose / tensor / specialize
// ---------------------------------------------------------------------------

TermPtr Normalizer::expand(const NormalMorphism& nf) const {
    if (nf.is_zero()) {
        // Present the zero morphism as 0 times any lift; a balanced pair of
        // boundary words always admits a matching.
        std::vector<MatchPoint> ins, outs;
        for (std::size_t i = 0; i < nf.domain().size(); ++i)
            (nf.domain()[i] == Dir::up ? ins : outs)
                .push_back(MatchPoint{false, static_cast<int>(i) + 1});
        for (std::size_t j = 0; j < nf.codomain().size(); ++j)
            (nf.codomain()[j] == Dir::down ? ins : outs)
                .push_back(MatchPoint{true, static_cast<int>(j) + 1});
        if (ins.size() != outs.size())
            throw InputError("no term exists between these boundary words");
        DecoratedMatching key;
        for (std::size_t i = 0; i < ins.size(); ++i)
            key.strings.push_back(NormalString{ins[i], outs[i], 0, 0});
        return DiagramTerm::scale(Rat(0), realize(key, nf.domain(), nf.codomain()));
    }

    std::vector<TermPtr> summands;
    for (const auto& [key, coeff] : nf.terms()) {
        const TermPtr base = realize(key, nf.domain(), nf.codomain());
        for (const auto& [monomial, value] : coeff.terms()) {
            TermPtr t = base;
            Rat scalar = value;
            for (const SymFactor& f : monomial) {
                const AlgebraElement rep = algebra_->basis_element(
                    algebra_->cocenter_reps()[static_cast<std::size_t>(f.cls)]);
                for (int rep_count = 0; rep_count < f.power; ++rep_count) {
                    if (f.degree % 2 == 0) scalar = -scalar;
                    t = DiagramTerm::hcomp(
                        t, bubble_term(LoopOrientation::counterclockwise, rep, f.degree - 1));
                }
            }
            summands.push_back(DiagramTerm::scale(scalar, t));
        }
    }
    return DiagramTerm::sum(std::move(summands));
}

NormalMorphism Normalizer::compose(const NormalMorphism& top, const NormalMorphism& bottom) const {
    if (bottom.codomain() != top.domain())
        throw TypeMismatch(top.domain(), bottom.codomain(), "normal-form composition");
    if (top.is_zero() || bottom.is_zero()) return {bottom.domain(), top.codomain()};
    return normalize(DiagramTerm::vcomp(expand(top), expand(bottom)));
}

NormalMorphism Normalizer::tensor(const NormalMorphism& left, const NormalMorphism& right) const {
    if (left.is_zero() || right.is_zero()) {
        ObjectWord dom = left.domain(), cod = left.codomain();
        dom.insert(dom.end(), right.domain().begin(), right.domain().end());
        cod.insert(cod.end(), right.codomain().begin(), right.codomain().end());
        return {std::move(dom), std::move(cod)};
    }
    return normalize(DiagramTerm::hcomp(expand(left), expand(right)));
}

NormalMorphism Normalizer::specialize(const NormalMorphism& nf,
                                      const std::vector<Rat>& theta) const {
    NormalMorphism out(nf.domain(), nf.codomain());
    for (const auto& [key, coeff] : nf.terms())
        out.add_term(key, SymPoly::scalar(ring_.specialize(coeff, theta)));
    return out;
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

std::vector<DecoratedMatching> enumerate_decorated_matchings(const AlgebraPtr& algebra,
                                                             const ObjectWord& domain,
                                                             const ObjectWord& codomain,
                                                             int max_total_dots) {
    std::vector<MatchPoint> ins, outs;
    for (std::size_t i = 0; i < domain.size(); ++i)
        (domain[i] == Dir::up ? ins : outs).push_back(MatchPoint{false, static_cast<int>(i) + 1});
    for (std::size_t j = 0; j < codomain.size(); ++j)
        (codomain[j] == Dir::down ? ins : outs)
            .push_back(MatchPoint{true, static_cast<int>(j) + 1});
    std::vector<DecoratedMatching> result;
    if (ins.size() != outs.size()) return result;
    const int n = static_cast<int>(ins.size());
    const int dim = algebra->dim();

    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
        std::vector<int> tokens(static_cast<std::size_t>(n), 0);
        std::vector<int> dots(static_cast<std::size_t>(n), 0);
        const std::function<void(int, int)> fill_dots = [&](int slot, int left) {
            if (slot == n) {
                DecoratedMatching key;
                for (int i = 0; i < n; ++i)
                    key.strings.push_back(
                        NormalString{ins[static_cast<std::size_t>(i)],
                                     outs[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])],
                                     dots[static_cast<std::size_t>(i)],
                                     tokens[static_cast<std::size_t>(i)]});
                result.push_back(std::move(key));
                return;
            }
            for (int d = 0; d <= left; ++d) {
                dots[static_cast<std::size_t>(slot)] = d;
                fill_dots(slot + 1, left - d);
            }
        };
        const std::function<void(int)> fill_tokens = [&](int slot) {
            if (slot == n) {
                fill_dots(0, max_total_dots);
                return;
            }
            for (int b = 0; b < dim; ++b) {
                tokens[static_cast<std::size_t>(slot)] = b;
                fill_tokens(slot + 1);
            }
        };
        fill_tokens(0);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

}  // namespace frobrauer

#include "frobrauer/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace frobrauer {

namespace {

const char* dir_name(Dir d) { return d == Dir::up ? "up" : "down"; }

ParityInfo combine_parity(ParityInfo a, ParityInfo b) {
    if (a == ParityInfo::mixed || b == ParityInfo::mixed) return ParityInfo::mixed;
    const bool odd = (a == ParityInfo::odd) != (b == ParityInfo::odd);
    return odd ? ParityInfo::odd : ParityInfo::even;
}

ParityInfo element_parity(const AlgebraElement& a) {
    if (a.is_zero()) return ParityInfo::even;
    if (!a.is_homogeneous()) return ParityInfo::mixed;
    return is_odd(a.parity()) ? ParityInfo::odd : ParityInfo::even;
}

ObjectWord concat(const ObjectWord& a, const ObjectWord& b) {
    ObjectWord out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

std::string word_to_string(const ObjectWord& word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += ",";
        out += dir_name(word[i]);
    }
    return out;
}

SyntaxError::SyntaxError(const std::string& what, std::size_t position)
    : InputError("syntax error at position " + std::to_string(position) + ": " + what),
      position_(position) {}

TypeMismatch::TypeMismatch(const ObjectWord& expected, const ObjectWord& found,
                           const std::string& where)
    : InputError("type mismatch in " + where + ": expected (" + word_to_string(expected) +
                 "), found (" + word_to_string(found) + ")") {}

UnknownToken::UnknownToken(const std::string& label)
    : InputError("unknown token label '" + label + "'") {}

// ---------------------------------------------------------------------------
// Term construction
// ---------------------------------------------------------------------------

TermPtr DiagramTerm::identity(ObjectWord word) {
    auto t = std::shared_ptr<DiagramTerm>(new DiagramTerm());
    t->node_ = Node::identity;
    t->domain_ = word;
    t->codomain_ = std::move(word);
    t->parity_ = ParityInfo::even;
    return t;
}

TermPtr DiagramTerm::generator(GenKind kind) {
    if (kind == GenKind::token) throw std::logic_error("token generators need a label");
    auto t = std::shared_ptr<DiagramTerm>(new DiagramTerm());
    t->node_ = Node::generator;
    t->gen_ = kind;
    t->parity_ = ParityInfo::even;
    switch (kind) {
        case GenKind::cross_uu:
            t->domain_ = {Dir::up, Dir::up};
            t->codomain_ = {Dir::up, Dir::up};
            break;
        case GenKind::cup_right:
            t->domain_ = {};
            t->codomain_ = {Dir::down, Dir::up};
            break;
        case GenKind::cap_right:
            t->domain_ = {Dir::up, Dir::down};
            t->codomain_ = {};
            break;
        case GenKind::cup_left:
            t->domain_ = {};
            t->codomain_ = {Dir::up, Dir::down};
            break;
        case GenKind::cap_left:
            t->domain_ = {Dir::down, Dir::up};
            t->codomain_ = {};
            break;
        case GenKind::dot:
            t->domain_ = {Dir::up};
            t->codomain_ = {Dir::up};
            break;
        case GenKind::token:
            break;  // unreachable
    }
    return t;
}

TermPtr DiagramTerm::token_up(AlgebraElement label) {
    auto t = std::shared_ptr<DiagramTerm>(new DiagramTerm());
    t->node_ = Node::generator;
    t->gen_ = GenKind::token;
    t->parity_ = element_parity(label);
    t->token_ = std::move(label);
    t->domain_ = {Dir::up};
    t->codomain_ = {Dir::up};
    return t;
}

TermPtr DiagramTerm::hcomp(TermPtr left, TermPtr right) {
    auto t = std::shared_ptr<DiagramTerm>(new DiagramTerm());
    t->node_ = Node::hcomp;
    t->domain_ = concat(left->domain(), right->domain());
    t->codomain_ = concat(left->codomain(), right->codomain());
    t->parity_ = combine_parity(left->parity(), right->parity());
    t->left_ = std::move(left);
    t->right_ = std::move(right);
    return t;
}

TermPtr DiagramTerm::vcomp(TermPtr top, TermPtr bottom) {
    if (top->domain() != bottom->codomain())
        throw TypeMismatch(top->domain(), bottom->codomain(), "vertical composition");
    auto t = std::shared_ptr<DiagramTerm>(new DiagramTerm());
    t->node_ = Node::vcomp;
    t->domain_ = bottom->domain();
    t->codomain_ = top->codomain();
    t->parity_ = combine_parity(top->parity(), bottom->parity());
    t->left_ = std::move(top);
    t->right_ = std::move(bottom);
    return t;
}

TermPtr DiagramTerm::scale(Rat scalar, TermPtr inner) {
    auto t = std::shared_ptr<DiagramTerm>(new DiagramTerm());
    t->node_ = Node::scale;
    t->domain_ = inner->domain();
    t->codomain_ = inner->codomain();
    t->parity_ = inner->parity();
    t->scalar_ = std::move(scalar);
    t->left_ = std::move(inner);
    return t;
}

TermPtr DiagramTerm::sum(std::vector<TermPtr> summands) {
    if (summands.empty()) throw InputError("a sum of diagram terms needs at least one summand");
    if (summands.size() == 1) return summands.front();
    for (std::size_t i = 1; i < summands.size(); ++i) {
        if (summands[i]->domain() != summands[0]->domain())
            throw TypeMismatch(summands[0]->domain(), summands[i]->domain(), "sum (domain)");
        if (summands[i]->codomain() != summands[0]->codomain())
            throw TypeMismatch(summands[0]->codomain(), summands[i]->codomain(),
                               "sum (codomain)");
    }
    auto t = std::shared_ptr<DiagramTerm>(new DiagramTerm());
    t->node_ = Node::sum;
    t->domain_ = summands[0]->domain();
    t->codomain_ = summands[0]->codomain();
    ParityInfo p = summands[0]->parity();
    for (std::size_t i = 1; i < summands.size(); ++i)
        if (summands[i]->parity() != p) p = ParityInfo::mixed;
    t->parity_ = p;
    t->summands_ = std::move(summands);
    return t;
}

TypeFacts typecheck(const TermPtr& term) {
    return {term->domain(), term->codomain(), term->parity()};
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

bool operator==(const DiagramTerm& a, const DiagramTerm& b) {
    if (a.node_ != b.node_) return false;
    switch (a.node_) {
        case DiagramTerm::Node::identity:
            return a.domain_ == b.domain_;
        case DiagramTerm::Node::generator:
            if (a.gen_ != b.gen_) return false;
            if (a.gen_ == GenKind::token) return *a.token_ == *b.token_;
            return true;
        case DiagramTerm::Node::hcomp:
        case DiagramTerm::Node::vcomp:
            return *a.left_ == *b.left_ && *a.right_ == *b.right_;
        case DiagramTerm::Node::scale:
            return a.scalar_ == b.scalar_ && *a.left_ == *b.left_;
        case DiagramTerm::Node::sum:
            if (a.summands_.size() != b.summands_.size()) return false;
            for (std::size_t i = 0; i < a.summands_.size(); ++i)
                if (!(*a.summands_[i] == *b.summands_[i])) return false;
            return true;
    }
    return false;
}

bool equal_terms(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Grammar levels, loosest first: sum < scaled < vcomp < hcomp < atom.
enum Level { kSum = 0, kScaled = 1, kVComp = 2, kHComp = 3, kAtom = 4 };

Level node_level(const DiagramTerm& t) {
    switch (t.node()) {
        case DiagramTerm::Node::sum: return kSum;
        case DiagramTerm::Node::scale: return kScaled;
        case DiagramTerm::Node::vcomp: return kVComp;
        case DiagramTerm::Node::hcomp: return kHComp;
        default: return kAtom;
    }
}

void print_term(std::ostream& os, const DiagramTerm& t, Level required) {
    const bool parens = node_level(t) < required;
    if (parens) os << "(";
    switch (t.node()) {
        case DiagramTerm::Node::identity:
            os << "id(" << word_to_string(t.domain()) << ")";
            break;
        case DiagramTerm::Node::generator:
            switch (t.gen()) {
                case GenKind::cross_uu: os << "x_uu"; break;
                case GenKind::cup_right: os << "cup_r"; break;
                case GenKind::cap_right: os << "cap_r"; break;
                case GenKind::cup_left: os << "cup_l"; break;
                case GenKind::cap_left: os << "cap_l"; break;
                case GenKind::dot: os << "dot"; break;
                case GenKind::token: os << "tok[" << t.token().to_string() << "]"; break;
            }
            break;
        case DiagramTerm::Node::hcomp:
            print_term(os, *t.left(), kHComp);
            os << " * ";
            print_term(os, *t.right(), kAtom);
            break;
        case DiagramTerm::Node::vcomp:
            print_term(os, *t.left(), kVComp);
            os << " . ";
            print_term(os, *t.right(), kHComp);
            break;
        case DiagramTerm::Node::scale:
            os << rat_to_string(t.scalar()) << " ";
            print_term(os, *t.inner(), kVComp);
            break;
        case DiagramTerm::Node::sum: {
            bool first = true;
            for (const TermPtr& s : t.summands()) {
                if (!first) os << " + ";
                print_term(os, *s, kScaled);
                first = false;
            }
            break;
        }
    }
    if (parens) os << ")";
}

}  // namespace

std::string DiagramTerm::to_string() const {
    std::ostringstream os;
    print_term(os, *this, kSum);
    return os.str();
}

// ---------------------------------------------------------------------------
// JSON export
// ---------------------------------------------------------------------------

nlohmann::json DiagramTerm::to_json() const {
    nlohmann::json j;
    switch (node_) {
        case Node::identity:
            j["node"] = "identity";
            j["word"] = nlohmann::json::array();
            for (Dir d : domain_) j["word"].push_back(dir_name(d));
            break;
        case Node::generator:
            j["node"] = "generator";
            switch (gen_) {
                case GenKind::cross_uu: j["kind"] = "cross_uu"; break;
                case GenKind::cup_right: j["kind"] = "cup_right"; break;
                case GenKind::cap_right: j["kind"] = "cap_right"; break;
                case GenKind::cup_left: j["kind"] = "cup_left"; break;
                case GenKind::cap_left: j["kind"] = "cap_left"; break;
                case GenKind::dot: j["kind"] = "dot"; break;
                case GenKind::token: {
                    j["kind"] = "token";
                    nlohmann::json coeffs = nlohmann::json::array();
                    const AlgebraElement& a = *token_;
                    for (int i = 0; i < a.algebra()->dim(); ++i) {
                        if (a.coeff(i) == 0) continue;
                        coeffs.push_back({a.algebra()->label(i), rat_to_string(a.coeff(i))});
                    }
                    j["coeffs"] = std::move(coeffs);
                    break;
                }
            }
            break;
        case Node::hcomp:
            j["node"] = "hcomp";
            j["left"] = left_->to_json();
            j["right"] = right_->to_json();
            break;
        case Node::vcomp:
            j["node"] = "vcomp";
            j["top"] = left_->to_json();
            j["bottom"] = right_->to_json();
            break;
        case Node::scale:
            j["node"] = "scale";
            j["scalar"] = rat_to_string(scalar_);
            j["inner"] = left_->to_json();
            break;
        case Node::sum: {
            j["node"] = "sum";
            nlohmann::json parts = nlohmann::json::array();
            for (const TermPtr& s : summands_) parts.push_back(s->to_json());
            j["summands"] = std::move(parts);
            break;
        }
    }
    return j;
}

// ---------------------------------------------------------------------------
// Derived builders
// ---------------------------------------------------------------------------

namespace {

TermPtr hchain(std::vector<TermPtr> parts) {
    TermPtr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        acc = DiagramTerm::hcomp(acc, parts[i]);
    return acc;
}

TermPtr vchain(std::vector<TermPtr> top_to_bottom) {
    TermPtr acc = top_to_bottom.front();
    for (std::size_t i = 1; i < top_to_bottom.size(); ++i)
        acc = DiagramTerm::vcomp(acc, top_to_bottom[i]);
    return acc;
}

TermPtr id_word(std::initializer_list<Dir> dirs) { return DiagramTerm::identity(ObjectWord(dirs)); }

}  // namespace

TermPtr cross_term(Dir a, Dir b) {
    using D = Dir;
    const auto gen = [](GenKind k) { return DiagramTerm::generator(k); };
    if (a == D::up && b == D::up) return gen(GenKind::cross_uu);
    if (a == D::up && b == D::down) {
        // Bend the downward strand around an upward crossing on the left.
        return vchain({
            hchain({id_word({D::down, D::up}), gen(GenKind::cap_right)}),
            hchain({id_word({D::down}), gen(GenKind::cross_uu), id_word({D::down})}),
            hchain({gen(GenKind::cup_right), id_word({D::up, D::down})}),
        });
    }
    if (a == D::down && b == D::up) {
        return vchain({
            hchain({gen(GenKind::cap_left), id_word({D::up, D::down})}),
            hchain({id_word({D::down}), gen(GenKind::cross_uu), id_word({D::down})}),
            hchain({id_word({D::down, D::up}), gen(GenKind::cup_left)}),
        });
    }
    return vchain({
        hchain({id_word({D::down, D::down}), gen(GenKind::cap_right)}),
        hchain({id_word({D::down, D::down, D::up}), gen(GenKind::cap_right), id_word({D::down})}),
        hchain({id_word({D::down, D::down}), gen(GenKind::cross_uu), id_word({D::down, D::down})}),
        hchain({id_word({D::down}), gen(GenKind::cup_right), id_word({D::up, D::down, D::down})}),
        hchain({gen(GenKind::cup_right), id_word({D::down, D::down})}),
    });
}

TermPtr token_down(AlgebraElement label) {
    using D = Dir;
    return vchain({
        hchain({id_word({D::down}), DiagramTerm::generator(GenKind::cap_right)}),
        hchain({id_word({D::down}), DiagramTerm::token_up(std::move(label)), id_word({D::down})}),
        hchain({DiagramTerm::generator(GenKind::cup_right), id_word({D::down})}),
    });
}

TermPtr dot_down() {
    using D = Dir;
    return vchain({
        hchain({id_word({D::down}), DiagramTerm::generator(GenKind::cap_right)}),
        hchain({id_word({D::down}), DiagramTerm::generator(GenKind::dot), id_word({D::down})}),
        hchain({DiagramTerm::generator(GenKind::cup_right), id_word({D::down})}),
    });
}

TermPtr token_on(Dir dir, AlgebraElement label) {
    return dir == Dir::up ? DiagramTerm::token_up(std::move(label)) : token_down(std::move(label));
}

TermPtr dot_on(Dir dir) {
    return dir == Dir::up ? DiagramTerm::generator(GenKind::dot) : dot_down();
}

TermPtr teleporter_term(const AlgebraPtr& algebra, const ObjectWord& span, int i, int j) {
    const int len = static_cast<int>(span.size());
    if (i < 1 || j <= i || j > len)
        throw InputError("teleporter endpoints must satisfy 1 <= i < j <= word length; got i=" +
                         std::to_string(i) + ", j=" + std::to_string(j) + ", length " +
                         std::to_string(len));
    std::vector<TermPtr> summands;
    summands.reserve(static_cast<std::size_t>(algebra->dim()));
    for (int b = 0; b < algebra->dim(); ++b) {
        std::vector<TermPtr> parts;
        ObjectWord run;  // pending identity strands
        const auto flush = [&] {
            if (!run.empty()) {
                parts.push_back(DiagramTerm::identity(run));
                run.clear();
            }
        };
        for (int q = 1; q <= len; ++q) {
            const Dir d = span[static_cast<std::size_t>(q - 1)];
            if (q == i || q == j) {
                flush();
                AlgebraElement label =
                    (q == i) ? algebra->basis_element(b) : algebra->dual_element(b);
                parts.push_back(token_on(d, std::move(label)));
            } else {
                run.push_back(d);
            }
        }
        flush();
        summands.push_back(hchain(std::move(parts)));
    }
    return DiagramTerm::sum(std::move(summands));
}

TermPtr bubble_term(LoopOrientation orientation, const AlgebraElement& token, int dots) {
    if (dots < 0) throw InputError("a drawn loop cannot carry a negative dot count");
    using D = Dir;
    std::vector<TermPtr> layers;  // top to bottom
    const bool ccw = orientation == LoopOrientation::counterclockwise;
    // Counterclockwise: right cup, decorations on the right (upward) strand,
    // left cap.  Clockwise: left cup, decorations on the left (upward)
    // strand, right cap.
    layers.push_back(DiagramTerm::generator(ccw ? GenKind::cap_left : GenKind::cap_right));
    const auto decorated = [&](TermPtr dec) {
        return ccw ? hchain({id_word({D::down}), std::move(dec)})
                   : hchain({std::move(dec), id_word({D::down})});
    };
    for (int r = 0; r < dots; ++r) layers.push_back(decorated(DiagramTerm::generator(GenKind::dot)));
    layers.push_back(decorated(DiagramTerm::token_up(token)));
    layers.push_back(DiagramTerm::generator(ccw ? GenKind::cup_right : GenKind::cup_left));
    return vchain(std::move(layers));
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^';
}

class Parser {
public:
    Parser(const std::string& text, AlgebraPtr algebra)
        : text_(text), algebra_(std::move(algebra)) {}

    TermPtr run() {
        TermPtr t = parse_term();
        skip_ws();
        if (pos_ < text_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return t;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    bool match_char(char c) {
        skip_ws();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect_char(char c) {
        skip_ws();
        if (peek() != c)
            throw SyntaxError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    // Matches a keyword at the cursor; keywords ending in an identifier
    // character additionally require a non-identifier character after them.
    bool match_keyword(std::string_view kw) {
        skip_ws();
        if (text_.compare(pos_, kw.size(), kw) != 0) return false;
        if (ident_char(kw.back()) && pos_ + kw.size() < text_.size() &&
            ident_char(text_[pos_ + kw.size()]))
            return false;
        pos_ += kw.size();
        return true;
    }

    bool rational_ahead() {
        skip_ws();
        if (std::isdigit(static_cast<unsigned char>(peek()))) return true;
        return peek() == '-' && std::isdigit(static_cast<unsigned char>(peek(1)));
    }

    Rat parse_rational() {
        skip_ws();
        const std::size_t start = pos_;
        if (peek() == '-') ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw SyntaxError("expected a number", pos_);
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '/') {
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw SyntaxError("expected a denominator", pos_);
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        const std::string digits = text_.substr(start, pos_ - start);
        try {
            return rat_from_string(digits);
        } catch (const InputError& e) {
            throw SyntaxError(e.what(), start);
        }
    }

    int parse_int() {
        skip_ws();
        const std::size_t start = pos_;
        if (peek() == '-') ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw SyntaxError("expected an integer", pos_);
        long long v = 0;
        bool neg = text_[start] == '-';
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 1'000'000'000) throw SyntaxError("integer out of range", start);
            ++pos_;
        }
        return static_cast<int>(neg ? -v : v);
    }

    TermPtr parse_term() {
        std::vector<TermPtr> parts;
        parts.push_back(parse_scaled());
        for (;;) {
            skip_ws();
            if (match_char('+')) {
                parts.push_back(parse_scaled());
            } else if (peek() == '-' && !std::isdigit(static_cast<unsigned char>(peek(1)))) {
                ++pos_;
                parts.push_back(DiagramTerm::scale(-1, parse_scaled()));
            } else if (peek() == '-') {
                // "a - 2 b" reads as a + (-2) b.
                parts.push_back(parse_scaled());
            } else {
                break;
            }
        }
        return DiagramTerm::sum(std::move(parts));
    }

    TermPtr parse_scaled() {
        skip_ws();
        if (rational_ahead()) {
            Rat q = parse_rational();
            return DiagramTerm::scale(std::move(q), parse_vcomp());
        }
        return parse_vcomp();
    }

    TermPtr parse_vcomp() {
        TermPtr acc = parse_hcomp();
        while (match_char('.')) acc = DiagramTerm::vcomp(std::move(acc), parse_hcomp());
        return acc;
    }

    TermPtr parse_hcomp() {
        TermPtr acc = parse_atom();
        while (match_char('*')) acc = DiagramTerm::hcomp(std::move(acc), parse_atom());
        return acc;
    }

    TermPtr parse_atom() {
        skip_ws();
        const std::size_t at = pos_;
        if (match_char('(')) {
            TermPtr inner = parse_term();
            expect_char(')');
            return inner;
        }
        if (match_keyword("x_uu")) return DiagramTerm::generator(GenKind::cross_uu);
        if (match_keyword("x_ud")) return cross_term(Dir::up, Dir::down);
        if (match_keyword("x_du")) return cross_term(Dir::down, Dir::up);
        if (match_keyword("x_dd")) return cross_term(Dir::down, Dir::down);
        if (match_keyword("cup_r")) return DiagramTerm::generator(GenKind::cup_right);
        if (match_keyword("cap_r")) return DiagramTerm::generator(GenKind::cap_right);
        if (match_keyword("cup_l")) return DiagramTerm::generator(GenKind::cup_left);
        if (match_keyword("cap_l")) return DiagramTerm::generator(GenKind::cap_left);
        if (match_keyword("dot_d")) return dot_down();
        if (match_keyword("dot")) return DiagramTerm::generator(GenKind::dot);
        if (match_keyword("tok_d")) {
            expect_char('[');
            AlgebraElement a = parse_algebra_element(']');
            expect_char(']');
            return token_down(std::move(a));
        }
        if (match_keyword("tok")) {
            expect_char('[');
            AlgebraElement a = parse_algebra_element(']');
            expect_char(']');
            return DiagramTerm::token_up(std::move(a));
        }
        if (match_keyword("id")) {
            expect_char('(');
            ObjectWord word = parse_word_until(')');
            expect_char(')');
            return DiagramTerm::identity(std::move(word));
        }
        if (match_keyword("teleport")) {
            expect_char('(');
            const int i = parse_int();
            expect_char(',');
            const int j = parse_int();
            expect_char(')');
            ObjectWord span;
            if (match_char('@')) {
                expect_char('(');
                span = parse_word_until(')');
                expect_char(')');
                return teleporter_term(algebra_, span, i, j);
            }
            if (i < 1 || j <= i)
                throw SyntaxError("teleporter endpoints must satisfy 1 <= i < j", at);
            // Without an explicit word the teleporter spans upward strands
            // between its endpoints.
            span.assign(static_cast<std::size_t>(j - i + 1), Dir::up);
            return teleporter_term(algebra_, span, 1, j - i + 1);
        }
        if (match_keyword("bub_cw") || match_keyword("bub_ccw")) {
            const bool cw = text_.compare(at, 6, "bub_cw") == 0;
            expect_char('(');
            AlgebraElement a = parse_algebra_element(',');
            expect_char(',');
            const int dots = parse_int();
            expect_char(')');
            return bubble_term(
                cw ? LoopOrientation::clockwise : LoopOrientation::counterclockwise, a, dots);
        }
        throw SyntaxError("expected a diagram atom", at);
    }

    ObjectWord parse_word_until(char closer) {
        ObjectWord word;
        skip_ws();
        if (peek() == closer) return word;
        for (;;) {
            if (match_keyword("up")) {
                word.push_back(Dir::up);
            } else if (match_keyword("down")) {
                word.push_back(Dir::down);
            } else {
                skip_ws();
                throw SyntaxError("expected 'up' or 'down'", pos_);
            }
            if (!match_char(',')) break;
        }
        return word;
    }

    // Linear combination of basis labels; bare numerals scale the unit.
    AlgebraElement parse_algebra_element(char closer) {
        AlgebraElement acc = algebra_->zero();
        bool first = true;
        for (;;) {
            skip_ws();
            int sign = 1;
            if (first) {
                if (peek() == '-' && !std::isdigit(static_cast<unsigned char>(peek(1)))) {
                    ++pos_;
                    sign = -1;
                }
            } else {
                if (match_char('+')) {
                    sign = 1;
                } else if (peek() == '-' &&
                           !std::isdigit(static_cast<unsigned char>(peek(1)))) {
                    ++pos_;
                    sign = -1;
                } else if (peek() != '-') {
                    break;
                }
                // A leading "-digit" is carried by the rational itself.
            }
            skip_ws();
            Rat coeff = 1;
            bool have_coeff = false;
            if (rational_ahead()) {
                coeff = parse_rational();
                have_coeff = true;
            }
            skip_ws();
            std::string label;
            if (std::isalpha(static_cast<unsigned char>(peek()))) {
                const std::size_t start = pos_;
                while (ident_char(peek())) ++pos_;
                label = text_.substr(start, pos_ - start);
            }
            if (!have_coeff && label.empty())
                throw SyntaxError("expected an algebra element", pos_);
            AlgebraElement part = algebra_->unit();
            if (!label.empty()) {
                const int idx = algebra_->label_index(label);
                if (idx < 0) throw UnknownToken(label);
                part = algebra_->basis_element(idx);
            }
            part *= coeff * sign;
            acc += part;
            first = false;
            skip_ws();
            if (peek() == closer) break;
        }
        return acc;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    AlgebraPtr algebra_;
};

}  // namespace

TermPtr parse(const std::string& text, const AlgebraPtr& algebra) {
    return Parser(text, algebra).run();
}

// ---------------------------------------------------------------------------
// Lowering to slices
// ---------------------------------------------------------------------------

namespace {

Slice::Op gen_slice_op(GenKind kind) {
    switch (kind) {
        case GenKind::cross_uu: return Slice::Op::cross;
        case GenKind::cup_right: return Slice::Op::cup_r;
        case GenKind::cup_left: return Slice::Op::cup_l;
        case GenKind::cap_right: return Slice::Op::cap_r;
        case GenKind::cap_left: return Slice::Op::cap_l;
        case GenKind::token: return Slice::Op::token;
        case GenKind::dot: return Slice::Op::dot;
    }
    throw std::logic_error("unhandled generator kind");
}

}  // namespace

std::vector<SlicedTerm> lower(const TermPtr& term) {
    std::vector<SlicedTerm> out;
    switch (term->node()) {
        case DiagramTerm::Node::identity:
            out.push_back({Rat(1), {}, term->domain(), term->codomain()});
            break;
        case DiagramTerm::Node::generator: {
            Slice s{gen_slice_op(term->gen()), 1, std::nullopt};
            if (term->gen() == GenKind::token) s.label = term->token();
            out.push_back({Rat(1), {std::move(s)}, term->domain(), term->codomain()});
            break;
        }
        case DiagramTerm::Node::hcomp: {
            const auto lhs = lower(term->left());
            const auto rhs = lower(term->right());
            const int offset = static_cast<int>(term->left()->domain().size());
            for (const SlicedTerm& l : lhs) {
                for (const SlicedTerm& r : rhs) {
                    SlicedTerm combined;
                    combined.coeff = l.coeff * r.coeff;
                    combined.slices.reserve(l.slices.size() + r.slices.size());
                    for (Slice s : r.slices) {
                        s.pos += offset;
                        combined.slices.push_back(std::move(s));
                    }
                    combined.slices.insert(combined.slices.end(), l.slices.begin(),
                                           l.slices.end());
                    combined.domain = term->domain();
                    combined.codomain = term->codomain();
                    out.push_back(std::move(combined));
                }
            }
            break;
        }
        case DiagramTerm::Node::vcomp: {
            const auto top = lower(term->left());
            const auto bottom = lower(term->right());
            for (const SlicedTerm& b : bottom) {
                for (const SlicedTerm& t : top) {
                    SlicedTerm combined;
                    combined.coeff = b.coeff * t.coeff;
                    combined.slices = b.slices;
                    combined.slices.insert(combined.slices.end(), t.slices.begin(),
                                           t.slices.end());
                    combined.domain = term->domain();
                    combined.codomain = term->codomain();
                    out.push_back(std::move(combined));
                }
            }
            break;
        }
        case DiagramTerm::Node::scale: {
            if (term->scalar() == 0) break;
            out = lower(term->inner());
            for (SlicedTerm& s : out) s.coeff *= term->scalar();
            break;
        }
        case DiagramTerm::Node::sum:
            for (const TermPtr& s : term->summands()) {
                auto part = lower(s);
                out.insert(out.end(), std::make_move_iterator(part.begin()),
                           std::make_move_iterator(part.end()));
            }
            break;
    }
    return out;
}

ObjectWord slice_output_word(const ObjectWord& below, const Slice& slice) {
    const auto bad = [&](const char* what) {
        throw std::logic_error(std::string("malformed slice: ") + what + " at position " +
                               std::to_string(slice.pos));
    };
    ObjectWord word = below;
    const int n = static_cast<int>(word.size());
    const int p = slice.pos;
    switch (slice.op) {
        case Slice::Op::cross:
            if (p < 1 || p + 1 > n) bad("crossing out of range");
            if (word[p - 1] != Dir::up || word[p] != Dir::up) bad("crossing needs upward strands");
            break;
        case Slice::Op::cup_r:
            if (p < 1 || p > n + 1) bad("cup out of range");
            word.insert(word.begin() + (p - 1), {Dir::down, Dir::up});
            break;
        case Slice::Op::cup_l:
            if (p < 1 || p > n + 1) bad("cup out of range");
            word.insert(word.begin() + (p - 1), {Dir::up, Dir::down});
            break;
        case Slice::Op::cap_r:
            if (p < 1 || p + 1 > n) bad("cap out of range");
            if (word[p - 1] != Dir::up || word[p] != Dir::down) bad("cap orientation");
            word.erase(word.begin() + (p - 1), word.begin() + (p + 1));
            break;
        case Slice::Op::cap_l:
            if (p < 1 || p + 1 > n) bad("cap out of range");
            if (word[p - 1] != Dir::down || word[p] != Dir::up) bad("cap orientation");
            word.erase(word.begin() + (p - 1), word.begin() + (p + 1));
            break;
        case Slice::Op::token:
        case Slice::Op::dot:
            if (p < 1 || p > n) bad("decoration out of range");
            if (word[p - 1] != Dir::up) bad("decoration needs an upward strand");
            break;
    }
    return word;
}

}  // namespace frobrauer

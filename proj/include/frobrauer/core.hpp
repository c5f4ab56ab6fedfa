#pragma once
//
// core.hpp — shared exact-arithmetic primitives: rational numbers, Z/2
// parities with Koszul signs, and the library's error taxonomy.
//
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace frobrauer {

// All coefficients in the library are exact rationals; no floating point
// appears anywhere in the computational core.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Parity
// ---------------------------------------------------------------------------

enum class Parity : unsigned char { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>(static_cast<unsigned char>(a) ^ static_cast<unsigned char>(b));
}

constexpr bool is_odd(Parity p) { return p == Parity::odd; }

// (-1)^{ab} for parities a, b.
constexpr int koszul(Parity a, Parity b) { return (is_odd(a) && is_odd(b)) ? -1 : 1; }

// (-1)^{p} for a single parity exponent.
constexpr int parity_sign(Parity p) { return is_odd(p) ? -1 : 1; }

inline const char* to_string(Parity p) { return is_odd(p) ? "odd" : "even"; }

// ---------------------------------------------------------------------------
// Rational formatting ("p/q" with canonical sign, "p" when integral)
// ---------------------------------------------------------------------------

inline std::string rat_to_string(const Rat& r) {
    const Int num = numerator(r);
    const Int den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

struct InputError;  // forward declaration (defined below)

Rat rat_from_string(std::string_view text);  // defined after InputError

// ---------------------------------------------------------------------------
// Error taxonomy (mapped to process exit codes by the command-line tool)
// ---------------------------------------------------------------------------

// Malformed or inconsistent input: bad tables, parse errors, type errors.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A computation would exceed the configured resource envelope.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// The normal-form engine exceeded its work-item budget.
struct DepthError : std::runtime_error {
    explicit DepthError(const std::string& what) : std::runtime_error(what) {}
};

inline Rat rat_from_string(std::string_view text) {
    const std::string s(text);
    if (s.empty()) throw InputError("empty rational literal");
    try {
        return Rat(s);
    } catch (const std::exception&) {
        throw InputError("malformed rational literal: '" + s + "'");
    }
}

}  // namespace frobrauer

#pragma once

// Exact rational arithmetic for verdict computation. All decision paths in this
// library run on Rat/ExtRat; floating point never enters a verdict.
//
// Rat keeps num/den in int64 with gcd-reduced, positive-denominator canonical
// form. Intermediates go through __int128, and anything that would not fit back
// into int64 after reduction throws. Window radii, edge weights and probe
// scales are desk-scale, so overflow indicates a caller bug, not a limitation
// worth big integers.

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ck {

class Rat {
public:
    constexpr Rat() = default;
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d);

    static Rat parse(std::string_view text);  // "p", "-p", "p/q"

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    std::int64_t floor() const;
    std::int64_t ceil() const;

    std::string str() const;

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const;

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

    friend Rat abs(const Rat& a) { return a.num_ < 0 ? -a : a; }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    static Rat make(__int128 n, __int128 d);
};

// Rational extended with the two infinities. Addition is infinity-absorbing;
// inf + (-inf) is a caller error and throws. Distances only ever use the
// nonnegative part plus +inf; the -inf leg exists for interval endpoints and
// infima of sets unbounded below.
class ExtRat {
public:
    ExtRat() : kind_(Kind::Finite) {}
    ExtRat(Rat v) : kind_(Kind::Finite), v_(v) {}
    ExtRat(std::int64_t v) : kind_(Kind::Finite), v_(Rat(v)) {}

    static ExtRat pos_inf() { return ExtRat(Kind::PosInf); }
    static ExtRat neg_inf() { return ExtRat(Kind::NegInf); }
    static ExtRat parse(std::string_view text);  // "inf", "-inf", or a Rat

    bool finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }

    const Rat& value() const;  // throws unless finite

    std::string str() const;

    friend ExtRat operator+(const ExtRat& a, const ExtRat& b);
    friend ExtRat operator-(const ExtRat& a, const ExtRat& b);

    friend bool operator==(const ExtRat& a, const ExtRat& b);
    friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

    friend const ExtRat& min(const ExtRat& a, const ExtRat& b) { return b < a ? b : a; }
    friend const ExtRat& max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

private:
    enum class Kind { Finite, PosInf, NegInf };
    explicit ExtRat(Kind k) : kind_(k) {}
    Kind kind_;
    Rat v_;
};

}  // namespace ck

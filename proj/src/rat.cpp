#include "ck/rat.hpp"

#include <charconv>
#include <limits>
#include <numeric>

namespace ck {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t parse_i64(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer literal: " + std::string(s));
    return v;
}

}  // namespace

Rat Rat::make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
    if (n < lo || n > hi || d > hi)
        throw std::overflow_error("rational magnitude exceeds 64-bit range");
    Rat r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Rat::Rat(std::int64_t n, std::int64_t d) { *this = make(n, d); }

Rat Rat::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_i64(text));
    return make(parse_i64(text.substr(0, slash)), parse_i64(text.substr(slash + 1)));
}

std::int64_t Rat::floor() const {
    if (den_ == 1) return num_;
    std::int64_t q = num_ / den_;
    if (num_ < 0) --q;  // trunc rounds toward zero; floor wants toward -inf
    return q;
}

std::int64_t Rat::ceil() const { return -(-*this).floor(); }

std::string Rat::str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
}

Rat operator+(const Rat& a, const Rat& b) {
    return Rat::make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
}

Rat operator-(const Rat& a, const Rat& b) {
    return Rat::make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
}

Rat operator*(const Rat& a, const Rat& b) {
    return Rat::make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return Rat::make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

Rat Rat::operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

const Rat& ExtRat::value() const {
    if (kind_ != Kind::Finite) throw std::domain_error("infinite value has no finite part");
    return v_;
}

ExtRat ExtRat::parse(std::string_view text) {
    if (text == "inf" || text == "+inf") return pos_inf();
    if (text == "-inf") return neg_inf();
    return ExtRat(Rat::parse(text));
}

std::string ExtRat::str() const {
    switch (kind_) {
        case Kind::PosInf: return "inf";
        case Kind::NegInf: return "-inf";
        default: return v_.str();
    }
}

ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.finite() && b.finite()) return ExtRat(a.v_ + b.v_);
    if (a.is_pos_inf() && b.is_neg_inf()) throw std::domain_error("inf + -inf");
    if (a.is_neg_inf() && b.is_pos_inf()) throw std::domain_error("inf + -inf");
    return a.finite() ? b : a;
}

ExtRat operator-(const ExtRat& a, const ExtRat& b) {
    if (b.is_pos_inf()) return a + ExtRat::neg_inf();
    if (b.is_neg_inf()) return a + ExtRat::pos_inf();
    return a + ExtRat(-b.v_);
}

bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.finite() || a.v_ == b.v_;
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
    auto rank = [](const ExtRat& x) { return x.is_neg_inf() ? -1 : x.is_pos_inf() ? 1 : 0; };
    if (rank(a) != rank(b)) return rank(a) <=> rank(b);
    if (!a.finite()) return std::strong_ordering::equal;
    return a.v_ <=> b.v_;
}

}  // namespace ck

#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace twistd {

// A root of unity exp(2*pi*i*q) stored as the exact rational q mod 1.
// Canonical form: 0 <= num < den, gcd(num, den) = 1. Multiplication of
// scalars becomes addition of phases; the scalar inverse is negation.
struct Phase {
    long long num = 0;
    long long den = 1;

    Phase() = default;

    Phase(long long p, long long q) {
        if (q == 0) throw std::invalid_argument("Phase: zero denominator");
        *this = make(p, q);
    }

    static Phase make(__int128 p, __int128 q) {
        if (q < 0) { p = -p; q = -q; }
        p %= q;
        if (p < 0) p += q;
        __int128 a = p, b = q;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a == 0) a = 1;
        p /= a;
        q /= a;
        if (q > 0x7fffffffffffffffLL || p > 0x7fffffffffffffffLL)
            throw std::overflow_error("Phase: denominator overflow");
        Phase r;
        r.num = static_cast<long long>(p);
        r.den = static_cast<long long>(q);
        return r;
    }

    bool is_zero() const { return num == 0; }

    // Least k >= 1 with k*q an integer: the reduced denominator.
    long long order() const { return den; }

    Phase operator+(const Phase& o) const {
        return make(static_cast<__int128>(num) * o.den +
                        static_cast<__int128>(o.num) * den,
                    static_cast<__int128>(den) * o.den);
    }
    Phase operator-() const { return make(-static_cast<__int128>(num), den); }
    Phase operator-(const Phase& o) const { return *this + (-o); }
    Phase& operator+=(const Phase& o) { return *this = *this + o; }
    Phase& operator-=(const Phase& o) { return *this = *this - o; }

    // Integer multiple k*q mod 1.
    Phase times(long long k) const {
        return make(static_cast<__int128>(k) * num, den);
    }

    // The representative q/k of a k-th root preimage (deterministic choice).
    Phase divided_by(long long k) const {
        if (k <= 0) throw std::invalid_argument("Phase: divide by nonpositive");
        return make(num, static_cast<__int128>(den) * k);
    }

    auto operator<=>(const Phase&) const = default;

    std::string str() const {
        if (num == 0) return "0";
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Accepts "p/q" or a bare integer; rejects anything else.
    static std::optional<Phase> parse(std::string_view s) {
        auto read_int = [](std::string_view t, long long& out) -> bool {
            if (t.empty()) return false;
            size_t i = 0;
            bool neg = false;
            if (t[0] == '-' || t[0] == '+') { neg = t[0] == '-'; i = 1; }
            if (i >= t.size()) return false;
            long long v = 0;
            for (; i < t.size(); ++i) {
                if (t[i] < '0' || t[i] > '9') return false;
                if (v > (0x7fffffffffffffffLL - 9) / 10) return false;
                v = v * 10 + (t[i] - '0');
            }
            out = neg ? -v : v;
            return true;
        };
        auto slash = s.find('/');
        long long p = 0, q = 1;
        if (slash == std::string_view::npos) {
            if (!read_int(s, p)) return std::nullopt;
        } else {
            if (!read_int(s.substr(0, slash), p)) return std::nullopt;
            if (!read_int(s.substr(slash + 1), q)) return std::nullopt;
            if (q == 0) return std::nullopt;
        }
        return Phase(p, q);
    }
};

inline long long phase_order(const Phase& p) { return p.order(); }

}  // namespace twistd

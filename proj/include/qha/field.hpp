/* Exact scalar arithmetic over a prime field GF(p) or the rationals.
 * Every other component works over one of these two fields; there is no
 * floating point anywhere in the library. */
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qha {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* A field element. For GF(p) the value lives in num (0 <= num < p, den == 1);
 * for the rationals num/den is reduced with den > 0. */
struct Scalar {
    long long num = 0;
    long long den = 1;

    bool operator==(const Scalar& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
};

struct FieldSpec {
    // characteristic: prime >= 2 for GF(p), 0 for the rationals
    std::uint64_t characteristic = 101;
    bool operator==(const FieldSpec&) const = default;
};

namespace detail {
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
}  // namespace detail

class Field {
public:
    Field() : p_(101) {}
    explicit Field(FieldSpec spec) : p_(spec.characteristic) {
        if (p_ != 0) {
            if (p_ >= (1ull << 31))
                throw error("field characteristic too large (must be < 2^31)");
            if (!detail::is_prime_u64(p_))
                throw error("field characteristic " + std::to_string(p_) + " is not prime");
        }
    }
    explicit Field(std::uint64_t characteristic) : Field(FieldSpec{characteristic}) {}

    FieldSpec spec() const { return FieldSpec{p_}; }
    std::uint64_t characteristic() const { return p_; }
    bool rationals() const { return p_ == 0; }
    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

    Scalar zero() const { return Scalar{0, 1}; }
    Scalar one() const { return Scalar{p_ == 1 ? 0 : 1, 1}; }

    Scalar from_int(long long v) const {
        if (p_ == 0) return Scalar{v, 1};
        long long m = static_cast<long long>(p_);
        long long r = v % m;
        if (r < 0) r += m;
        return Scalar{r, 1};
    }

    Scalar from_fraction(long long n, long long d) const {
        if (d == 0) throw error("zero denominator");
        if (p_ == 0) return reduce(n, d);
        return mul(from_int(n), inv(from_int(d)));
    }

    bool is_zero(const Scalar& a) const { return a.num == 0; }

    Scalar add(const Scalar& a, const Scalar& b) const {
        if (p_ != 0) return from_int(a.num + b.num);
        return reduce128(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
    }
    Scalar sub(const Scalar& a, const Scalar& b) const {
        if (p_ != 0) return from_int(a.num - b.num);
        return reduce128(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
    }
    Scalar neg(const Scalar& a) const {
        if (p_ != 0) return from_int(-a.num);
        return Scalar{-a.num, a.den};
    }
    Scalar mul(const Scalar& a, const Scalar& b) const {
        if (p_ != 0) return from_int(a.num * b.num);  // both < 2^31, no overflow
        return reduce128(i128(a.num) * b.num, i128(a.den) * b.den);
    }
    Scalar inv(const Scalar& a) const {
        if (is_zero(a)) throw error("division by zero");
        if (p_ == 0) return reduce(a.den, a.num);
        // extended Euclid on (num, p)
        long long t = 0, nt = 1, r = static_cast<long long>(p_), nr = a.num;
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += static_cast<long long>(p_);
        return Scalar{t, 1};
    }
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    std::string to_string(const Scalar& a) const {
        if (a.den == 1) return std::to_string(a.num);
        return std::to_string(a.num) + "/" + std::to_string(a.den);
    }

    /* Parses "n" or "n/d". */
    Scalar parse(const std::string& s) const {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return from_int(std::stoll(s));
            return from_fraction(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw error("bad scalar literal '" + s + "'");
        } catch (const std::out_of_range&) {
            throw error("scalar literal out of range '" + s + "'");
        }
    }

private:
    using i128 = __int128;

    static Scalar reduce(long long n, long long d) {
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n == 0) d = 1;
        return Scalar{n, d};
    }
    static Scalar reduce128(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        i128 an = n < 0 ? -n : n;
        i128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        if (n == 0) d = 1;
        constexpr i128 lim = i128(1) << 62;
        if (n >= lim || n <= -lim || d >= lim)
            throw error("rational overflow; rerun over a prime field");
        return Scalar{static_cast<long long>(n), static_cast<long long>(d)};
    }
    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    std::uint64_t p_;
};

}  // namespace qha

#include "qha/poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

namespace qha {

Poly poly_trim(const Field& f, Poly p) {
    while (!p.empty() && f.is_zero(p.back())) p.pop_back();
    return p;
}

int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_monic(const Field& f, const Poly& p) {
    Poly q = poly_trim(f, p);
    if (q.empty()) return q;
    Scalar s = f.inv(q.back());
    for (auto& c : q) c = f.mul(c, s);
    return q;
}

Poly poly_add(const Field& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
    return poly_trim(f, r);
}

Poly poly_sub(const Field& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
    return poly_trim(f, r);
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (f.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    return poly_trim(f, r);
}

std::pair<Poly, Poly> poly_divmod(const Field& f, const Poly& a, const Poly& b) {
    Poly bb = poly_trim(f, b);
    if (bb.empty()) throw error("polynomial division by zero");
    Poly rem = poly_trim(f, a);
    if (rem.size() < bb.size()) return {{}, rem};
    Poly quo(rem.size() - bb.size() + 1, f.zero());
    Scalar lead_inv = f.inv(bb.back());
    while (rem.size() >= bb.size() && !rem.empty()) {
        std::size_t shift = rem.size() - bb.size();
        Scalar c = f.mul(rem.back(), lead_inv);
        quo[shift] = c;
        for (std::size_t j = 0; j < bb.size(); ++j)
            rem[shift + j] = f.sub(rem[shift + j], f.mul(c, bb[j]));
        rem = poly_trim(f, rem);
    }
    return {poly_trim(f, quo), rem};
}

Poly poly_gcd(const Field& f, Poly a, Poly b) {
    a = poly_trim(f, a);
    b = poly_trim(f, b);
    while (!b.empty()) {
        Poly r = poly_divmod(f, a, b).second;
        a = b;
        b = r;
    }
    return poly_monic(f, a);
}

Poly poly_derivative(const Field& f, const Poly& p) {
    if (p.size() < 2) return {};
    Poly r(p.size() - 1, f.zero());
    for (std::size_t i = 1; i < p.size(); ++i)
        r[i - 1] = f.mul(p[i], f.from_int(static_cast<long long>(i)));
    return poly_trim(f, r);
}

Scalar poly_eval(const Field& f, const Poly& p, const Scalar& x) {
    Scalar acc = f.zero();
    for (std::size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
    return acc;
}

Poly poly_powmod_x(const Field& f, std::uint64_t e, const Poly& m) {
    Poly base = poly_divmod(f, Poly{f.zero(), f.one()}, m).second;
    Poly acc{f.one()};
    while (e) {
        if (e & 1) acc = poly_divmod(f, poly_mul(f, acc, base), m).second;
        base = poly_divmod(f, poly_mul(f, base, base), m).second;
        e >>= 1;
    }
    return acc;
}

Poly minimal_polynomial(const Matrix& op) {
    if (op.rows() != op.cols()) throw error("minimal polynomial of a non-square matrix");
    const Field& f = op.field();
    std::size_t n = op.rows();
    if (n == 0) return Poly{f.one()};
    // Krylov iteration on the flattened powers of op.
    std::vector<Matrix> pows;
    Matrix flat(f, 0, n * n);
    Matrix cur = Matrix::identity(f, n);
    for (std::size_t k = 0;; ++k) {
        Matrix row(f, 1, n * n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) row.at(0, r * n + c) = cur.at(r, c);
        // dependence test: does row lie in the span of earlier powers?
        if (k > 0 && row_space_contains(flat, row)) {
            auto coords = solve_left(flat, row);
            Poly p(k + 1, f.zero());
            p[k] = f.one();
            for (std::size_t i = 0; i < k; ++i) p[i] = f.neg(coords->at(0, i));
            return poly_trim(f, p);
        }
        flat = flat.vstack(row);
        cur = cur * op;
        if (k > n) throw error("minimal polynomial iteration failed to terminate");
    }
}

namespace {

/* All roots of squarefree s in GF(p), p small enough to scan. */
std::vector<Scalar> roots_by_scan(const Field& f, const Poly& s) {
    std::vector<Scalar> roots;
    for (std::uint64_t v = 0; v < f.characteristic(); ++v) {
        Scalar x = f.from_int(static_cast<long long>(v));
        if (f.is_zero(poly_eval(f, s, x))) roots.push_back(x);
    }
    return roots;
}

/* Cantor-Zassenhaus style splitting of a squarefree product of linear
 * factors over GF(p), p odd. */
std::vector<Scalar> roots_by_split(const Field& f, Poly lin, std::uint64_t seed) {
    std::vector<Scalar> roots;
    std::vector<Poly> work{poly_monic(f, lin)};
    std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ull);
    while (!work.empty()) {
        Poly g = work.back();
        work.pop_back();
        if (poly_deg(g) <= 0) continue;
        if (poly_deg(g) == 1) {
            roots.push_back(f.neg(g[0]));  // monic x + c
            continue;
        }
        bool split = false;
        for (int attempt = 0; attempt < 64 && !split; ++attempt) {
            Scalar c = f.from_int(static_cast<long long>(gen() % f.characteristic()));
            // h = (x + c)^((p-1)/2) - 1 mod g
            Poly shifted{c, f.one()};
            Poly acc{f.one()};
            std::uint64_t e = (f.characteristic() - 1) / 2;
            Poly base = poly_divmod(f, shifted, g).second;
            while (e) {
                if (e & 1) acc = poly_divmod(f, poly_mul(f, acc, base), g).second;
                base = poly_divmod(f, poly_mul(f, base, base), g).second;
                e >>= 1;
            }
            Poly h = poly_sub(f, acc, Poly{f.one()});
            Poly d = poly_gcd(f, h, g);
            if (poly_deg(d) > 0 && poly_deg(d) < poly_deg(g)) {
                work.push_back(d);
                work.push_back(poly_divmod(f, g, d).first);
                split = true;
            }
        }
        if (!split) throw error("root splitting failed");
    }
    return roots;
}

std::vector<Scalar> rational_roots(const Field& f, const Poly& s) {
    // scale to integer coefficients, then scan divisors of trailing/leading
    long long den_lcm = 1;
    for (const auto& c : s) den_lcm = std::lcm(den_lcm, c.den);
    std::vector<long long> ic;
    for (const auto& c : s) ic.push_back(c.num * (den_lcm / c.den));
    std::size_t lo = 0;
    while (lo < ic.size() && ic[lo] == 0) ++lo;  // factor out x^lo
    std::vector<Scalar> roots;
    if (lo > 0) roots.push_back(f.zero());
    if (lo >= ic.size()) return roots;
    long long a0 = std::abs(ic[lo]), an = std::abs(ic.back());
    auto divisors = [](long long v) {
        std::vector<long long> d;
        for (long long i = 1; i * i <= v && i <= 1000000; ++i)
            if (v % i == 0) {
                d.push_back(i);
                d.push_back(v / i);
            }
        return d;
    };
    for (long long pnum : divisors(a0))
        for (long long qden : divisors(an))
            for (int sign : {1, -1}) {
                Scalar cand = f.from_fraction(sign * pnum, qden);
                if (f.is_zero(poly_eval(f, s, cand)))
                    if (std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
            }
    return roots;
}

}  // namespace

PolySplit poly_coprime_split(const Field& f, const Poly& p_in, std::uint64_t seed) {
    PolySplit out;
    Poly p = poly_monic(f, p_in);
    if (poly_deg(p) <= 0) throw error("cannot split a constant polynomial");

    // squarefree part; in characteristic p the derivative can vanish, handle
    // the degenerate case by falling back to an incomplete verdict
    Poly d = poly_derivative(f, p);
    Poly s = d.empty() ? p : poly_divmod(f, p, poly_gcd(f, p, d)).first;

    std::vector<Scalar> roots;
    if (f.rationals()) {
        roots = rational_roots(f, s);
    } else if (f.characteristic() <= 10007) {
        roots = roots_by_scan(f, s);
    } else {
        Poly xp = poly_powmod_x(f, f.characteristic(), s);
        Poly lin = poly_gcd(f, poly_sub(f, xp, Poly{f.zero(), f.one()}), s);
        if (poly_deg(lin) == 1)
            roots.push_back(f.neg(lin[0]));
        else if (poly_deg(lin) > 1)
            roots = roots_by_split(f, lin, seed);
    }

    Poly rest = p;
    for (const auto& r : roots) {
        // primary component (x - r)^e: divide out as many times as possible
        Poly linf{f.neg(r), f.one()};
        Poly comp{f.one()};
        while (true) {
            auto [q, rem] = poly_divmod(f, rest, linf);
            if (!rem.empty()) break;
            rest = q;
            comp = poly_mul(f, comp, linf);
        }
        out.factors.push_back(comp);
    }
    if (poly_deg(rest) > 0) {
        // no rational/prime-field roots left; keep as one opaque factor
        out.factors.push_back(poly_monic(f, rest));
        out.incomplete = true;
    }
    if (out.factors.size() == 1 && !out.incomplete && roots.size() == 1) {
        out.primary_linear = true;
        out.lambda = roots[0];
    }
    return out;
}

}  // namespace qha

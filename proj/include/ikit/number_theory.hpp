#pragma once

#include "ikit/common.hpp"

#include <optional>
#include <vector>

namespace ikit {

struct Congruence {
    BigInt residue;
    BigInt modulus;
    std::optional<BigInt> threshold;
};

using CongruenceSystem = std::vector<Congruence>;

struct CrtSolution {
    BigInt residue;
    BigInt modulus;
    BigInt min_value;
    bool operator==(const CrtSolution&) const = default;
};

inline BigInt gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) { return a / gcd(a, b) * b; }

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

// Returns g = gcd(a, b) and x, y with a*x + b*y = g.
inline BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
    BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

// Merges left to right; nullopt when some pair violates gcd(mi,mj) | ri - rj.
inline std::optional<CrtSolution> crt_solve(const CongruenceSystem& system) {
    if (system.empty()) throw InputError("crt_solve needs a nonempty system");
    BigInt r = 0, m = 1, thr = 0;
    for (const auto& c : system) {
        if (c.modulus <= 0) throw InputError("modulus must be positive");
        if (c.residue < 0) throw InputError("residue must be nonnegative");
        if (c.threshold) {
            if (*c.threshold < 0) throw InputError("threshold must be nonnegative");
            if (*c.threshold > thr) thr = *c.threshold;
        }
        BigInt ri = c.residue % c.modulus;
        BigInt x, y;
        BigInt g = ext_gcd(m, c.modulus, x, y);
        BigInt diff = ri - r;
        if (diff % g != 0) return std::nullopt;
        BigInt step = c.modulus / g;
        BigInt k = mod_floor((diff / g) * x, step);
        r = r + m * k;
        m = m * step;
        r = mod_floor(r, m);
    }
    CrtSolution sol{r, m, r};
    if (sol.min_value < thr) {
        BigInt gap = thr - sol.min_value;
        BigInt k = (gap + m - 1) / m;
        sol.min_value += k * m;
    }
    return sol;
}

namespace detail {

inline std::vector<bool> sieve(std::size_t limit) {
    std::vector<bool> composite(limit + 1, false);
    composite[0] = true;
    if (limit >= 1) composite[1] = true;
    for (std::size_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
    return composite;
}

}  // namespace detail

inline std::vector<std::uint64_t> first_n_primes(std::size_t n) {
    std::vector<std::uint64_t> out;
    std::size_t limit = 32;
    while (out.size() < n) {
        out.clear();
        auto composite = detail::sieve(limit);
        for (std::size_t i = 2; i <= limit && out.size() < n; ++i)
            if (!composite[i]) out.push_back(i);
        limit *= 2;
    }
    return out;
}

// First k primes that are >= n; pairwise coprime by construction.
inline std::vector<std::uint64_t> coprime_moduli(std::uint64_t n, std::size_t k) {
    if (n < 1 || k < 1) throw InputError("coprime_moduli needs n >= 1 and k >= 1");
    std::vector<std::uint64_t> out;
    std::size_t limit = static_cast<std::size_t>(n) * 2 + 32;
    while (out.size() < k) {
        out.clear();
        auto composite = detail::sieve(limit);
        for (std::size_t i = static_cast<std::size_t>(n); i <= limit && out.size() < k; ++i)
            if (!composite[i]) out.push_back(i);
        limit *= 2;
    }
    return out;
}

}  // namespace ikit

#pragma once

// Exact combinatorics of fixed-weight bit strings: binomial coefficients in
// arbitrary precision, the canonical lexicographic basis of all N-bit strings
// of Hamming weight K, pairwise overlaps and the action of permutations.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kfold/errors.hpp"

namespace kfold {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Default guard against accidentally huge bases; overridable per call.
inline constexpr long kDefaultDimensionCap = 10000;

// Exact C(n, k). Zero when k < 0 or k > n.
inline BigInt binomial(long long n, long long k) {
    if (n < 0) throw ParameterOutOfRange("binomial: n must be non-negative");
    if (k < 0 || k > n) return BigInt(0);
    k = std::min(k, n - k);
    BigInt result = 1;
    for (long long i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;  // exact at every step
    }
    return result;
}

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }
inline double to_double(const BigRational& v) { return v.convert_to<double>(); }

inline double binomial_as_double(long long n, long long k) { return to_double(binomial(n, k)); }

// C(n, a) / C(n, b), evaluated exactly before the final float conversion.
inline double binomial_ratio(long long n, long long a, long long b) {
    BigInt den = binomial(n, b);
    if (den == 0) throw ParameterOutOfRange("binomial_ratio: zero denominator");
    return to_double(BigRational(binomial(n, a), den));
}

// An N-bit string with bit 1 being the leftmost (most significant) position.
// Stored so that lexicographic order of the string equals numeric order of
// the mask.
struct BitString {
    int n = 0;
    std::uint64_t mask = 0;

    bool bit(int pos) const {  // pos in 1..n
        if (pos < 1 || pos > n) throw IndexOutOfRange("BitString::bit: position out of range");
        return (mask >> (n - pos)) & 1u;
    }
    int weight() const { return std::popcount(mask); }

    std::string str() const {
        std::string s(static_cast<std::size_t>(n), '0');
        for (int i = 1; i <= n; ++i)
            if (bit(i)) s[static_cast<std::size_t>(i - 1)] = '1';
        return s;
    }

    static BitString parse(std::string_view s) {
        if (s.size() > 62) throw ParameterOutOfRange("BitString::parse: more than 62 bits");
        BitString b{static_cast<int>(s.size()), 0};
        for (char c : s) {
            b.mask <<= 1;
            if (c == '1')
                b.mask |= 1u;
            else if (c != '0')
                throw ParameterOutOfRange("BitString::parse: characters must be 0/1");
        }
        return b;
    }

    friend bool operator==(const BitString&, const BitString&) = default;
};

inline int overlap(const BitString& x, const BitString& y) {
    if (x.n != y.n) throw LengthMismatch("overlap: strings have different lengths");
    if (x.weight() != y.weight()) throw LengthMismatch("overlap: strings have different weights");
    return std::popcount(x.mask & y.mask);
}

// Orbit label of a pair of strings under simultaneous bit permutations.
struct PairOrbit {
    int overlap = 0;
    friend bool operator==(const PairOrbit&, const PairOrbit&) = default;
};

inline PairOrbit pair_orbit(const BitString& x, const BitString& y) { return {overlap(x, y)}; }

// perm[i-1] = image of position i; must be a bijection on 1..n.
inline void validate_permutation(const std::vector<int>& perm, int n) {
    if (static_cast<int>(perm.size()) != n)
        throw InvalidPermutation("permutation has wrong length");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : perm) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
            throw InvalidPermutation("permutation is not a bijection on 1..n");
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

// Moves the bit at position i to position perm(i): output_{perm(i)} = input_i.
inline BitString apply_permutation(const BitString& x, const std::vector<int>& perm) {
    validate_permutation(perm, x.n);
    BitString y{x.n, 0};
    for (int i = 1; i <= x.n; ++i)
        if (x.bit(i)) y.mask |= std::uint64_t{1} << (x.n - perm[static_cast<std::size_t>(i - 1)]);
    return y;
}

inline std::vector<int> identity_permutation(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    return p;
}

// Ordered basis of all weight-k strings of length n, ascending lexicographic.
struct WeightKBasis {
    int n = 0;
    int k = 0;
    std::vector<std::uint64_t> strings;

    long dimension() const { return static_cast<long>(strings.size()); }

    std::uint64_t at(long r) const {
        if (r < 0 || r >= dimension()) throw IndexOutOfRange("WeightKBasis::at: rank out of range");
        return strings[static_cast<std::size_t>(r)];
    }

    BitString string(long r) const { return BitString{n, at(r)}; }

    long rank(std::uint64_t mask) const {
        auto it = std::lower_bound(strings.begin(), strings.end(), mask);
        if (it == strings.end() || *it != mask)
            throw IndexOutOfRange("WeightKBasis::rank: string not in basis");
        return static_cast<long>(it - strings.begin());
    }

    // Bit `pos` (1-based, bit 1 leftmost) of the string with rank r.
    bool bit(long r, int pos) const { return (at(r) >> (n - pos)) & 1u; }
};

// All size-j subsets of {1..n}, each ascending, in lexicographic order.
inline std::vector<std::vector<int>> position_subsets(int n, int j) {
    if (j < 0 || j > n) throw ParameterOutOfRange("position_subsets: need 0 <= j <= n");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        out.push_back(cur);
        int i = j - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - (j - 1 - i)) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < j; ++t)
            cur[static_cast<std::size_t>(t)] = cur[static_cast<std::size_t>(t - 1)] + 1;
    }
    return out;
}

// Size-j subsets of {1..n} \ {avoid}.
inline std::vector<std::vector<int>> position_subsets_avoiding(int n, int j, int avoid) {
    if (avoid < 1 || avoid > n) throw IndexOutOfRange("position_subsets_avoiding: bad index");
    std::vector<std::vector<int>> out;
    for (auto& s : position_subsets(n - 1, j)) {
        for (int& p : s)
            if (p >= avoid) ++p;
        out.push_back(std::move(s));
    }
    return out;
}

inline WeightKBasis enumerate_weight_k(int n, int k, long cap = kDefaultDimensionCap) {
    if (n < 0 || k < 0 || k > n) throw ParameterOutOfRange("enumerate_weight_k: need 0 <= k <= n");
    if (n > 62) throw ParameterOutOfRange("enumerate_weight_k: n exceeds 62-bit string support");
    BigInt d = binomial(n, k);
    if (d > cap)
        throw DimensionCapExceeded("enumerate_weight_k: C(" + std::to_string(n) + "," +
                                   std::to_string(k) + ") exceeds dimension cap " +
                                   std::to_string(cap));
    const long dim = d.convert_to<long>();
    WeightKBasis basis{n, k, {}};
    basis.strings.reserve(static_cast<std::size_t>(dim));
    std::uint64_t s = (k == 0) ? 0 : ((std::uint64_t{1} << k) - 1);
    for (long count = 0; count < dim; ++count) {
        basis.strings.push_back(s);
        if (count + 1 == dim) break;
        // Gosper's hack: next mask with the same popcount.
        std::uint64_t u = s & (~s + 1);
        std::uint64_t v = s + u;
        s = v | (((v ^ s) / u) >> 2);
    }
    return basis;
}

}  // namespace kfold

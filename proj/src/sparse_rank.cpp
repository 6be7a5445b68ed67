#include "nfih/sparse_rank.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <gmpxx.h>

namespace nfih {

namespace {

struct Overflow {};

template <typename T>
struct Ops;

template <>
struct Ops<long> {
    static long mul_sub(long a, long x, long b, long y) {
        // a*x - b*y with overflow detection.
        __int128 r = static_cast<__int128>(a) * x - static_cast<__int128>(b) * y;
        if (r > INT64_MAX / 4 || r < -(INT64_MAX / 4)) throw Overflow{};
        return static_cast<long>(r);
    }
    static long gcd(long a, long b) { return std::gcd(a, b); }
    static bool is_zero(long a) { return a == 0; }
    static long from(long v) { return v; }
};

template <>
struct Ops<mpz_class> {
    static mpz_class mul_sub(const mpz_class& a, const mpz_class& x, const mpz_class& b, const mpz_class& y) {
        return a * x - b * y;
    }
    static mpz_class gcd(const mpz_class& a, const mpz_class& b) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return g;
    }
    static bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
    static mpz_class from(long v) { return mpz_class(v); }
};

template <typename T>
using Col = std::vector<std::pair<int, T>>;

template <typename T>
void normalize(Col<T>& c) {
    if (c.empty()) return;
    T g = c[0].second < 0 ? T(-c[0].second) : c[0].second;
    for (std::size_t k = 1; k < c.size() && !(g == T(1)); ++k) g = Ops<T>::gcd(g, c[k].second);
    if (g == T(1) || Ops<T>::is_zero(g)) return;
    for (auto& e : c) e.second /= g;
}

// Pivot is the largest row index (the "low" entry).
template <typename T>
std::size_t rank_impl(const std::vector<SparseColumn>& columns) {
    std::unordered_map<int, Col<T>> pivots;
    pivots.reserve(columns.size() * 2);
    Col<T> buf;
    for (const auto& src : columns) {
        Col<T> c;
        c.reserve(src.size());
        for (const auto& [r, v] : src)
            if (v != 0) c.emplace_back(r, Ops<T>::from(v));
        normalize(c);
        while (!c.empty()) {
            auto it = pivots.find(c.back().first);
            if (it == pivots.end()) break;
            const Col<T>& p = it->second;
            const T a = p.back().second, b = c.back().second;
            // c <- a*c - b*p
            buf.clear();
            std::size_t i = 0, j = 0;
            while (i < c.size() || j < p.size()) {
                if (j == p.size() || (i < c.size() && c[i].first < p[j].first)) {
                    buf.emplace_back(c[i].first, Ops<T>::mul_sub(a, c[i].second, T(0), T(0)));
                    ++i;
                } else if (i == c.size() || p[j].first < c[i].first) {
                    buf.emplace_back(p[j].first, Ops<T>::mul_sub(T(0), T(0), b, p[j].second));
                    ++j;
                } else {
                    T v = Ops<T>::mul_sub(a, c[i].second, b, p[j].second);
                    if (!Ops<T>::is_zero(v)) buf.emplace_back(c[i].first, v);
                    ++i;
                    ++j;
                }
            }
            std::swap(c, buf);
            normalize(c);
        }
        if (!c.empty()) {
            int low = c.back().first;
            pivots.emplace(low, std::move(c));
        }
    }
    return pivots.size();
}

}  // namespace

std::size_t exact_rank(const std::vector<SparseColumn>& columns) {
    try {
        return rank_impl<long>(columns);
    } catch (const Overflow&) {
        return rank_impl<mpz_class>(columns);
    }
}

}  // namespace nfih

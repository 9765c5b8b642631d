// Exact characteristic polynomials of adjacency matrices, and integer root
// extraction. Everything here is over arbitrary-precision integers; floating
// point char polys lose integer roots well before the orders we care about.
#pragma once

#include <utility>
#include <vector>

#include "pstlab/exact.hpp"
#include "pstlab/graph.hpp"
#include "pstlab/matrix.hpp"

namespace pstlab {

// phi(X, t), monic of degree n with zero trace coefficient.
struct CharPoly {
    IPoly poly;
    int n = 0;
};

// Faddeev-LeVerrier on the adjacency matrix. The matrix products reduce to
// neighbor row sums because A is 0/1, so each step is about 2|E| * n bigint
// additions; the divisions by k are exact by construction.
inline CharPoly char_poly(const Graph& g) {
    int n = g.n();
    if (n < 1) throw error("char_poly: need at least one vertex");
    std::vector<Int> c(n + 1, Int(0));
    c[n] = 1;

    Matrix<Int> m(n, n, Int(0));
    // Step k: M_k = A*M_{k-1} + c_{n-k+1}*I, c_{n-k} = -tr(A*M_k ... ) with
    // the usual bookkeeping folded in: we keep M = A*(previous M + c*I).
    Matrix<Int> am(n, n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j : g.neighbors(i)) am(i, j) = 1;
    m = am;  // M_1 = A
    for (int k = 1; k <= n; ++k) {
        Int tr = m.trace();
        if (tr % k != 0) throw integrity_error("char_poly: non-exact trace division");
        c[n - k] = -tr / k;
        if (k == n) break;
        // M_{k+1} = A * (M_k + c_{n-k} I): row i of A*X is the sum of X's
        // rows over i's neighbors.
        for (int i = 0; i < n; ++i) m(i, i) += c[n - k];
        Matrix<Int> next(n, n, Int(0));
        for (int i = 0; i < n; ++i)
            for (int j : g.neighbors(i))
                for (int t = 0; t < n; ++t) next(i, t) += m(j, t);
        m = std::move(next);
    }
    CharPoly cp{IPoly(std::move(c)), n};
    if (cp.poly.degree() != n || cp.poly.leading() != 1)
        throw integrity_error("char_poly: result not monic of full degree");
    if (n >= 2 && cp.poly.coeff(n - 1) != 0)
        throw integrity_error("char_poly: nonzero trace coefficient");
    return cp;
}

// Three-term recurrence phi(P_{k+1}) = t*phi(P_k) - phi(P_{k-1}).
inline IPoly path_char_poly(int n) {
    if (n < 0) throw error("path_char_poly: need n >= 0");
    IPoly prev = IPoly::constant(1);       // P_0
    if (n == 0) return prev;
    IPoly cur({0, 1});                     // P_1: t
    IPoly t({0, 1});
    for (int k = 1; k < n; ++k) {
        IPoly next = t * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// All integer roots with multiplicities, candidates limited to |k| <= bound.
// Monic input means integer roots divide the constant term, which prunes the
// scan; multiplicities come from repeated synthetic division.
inline std::vector<std::pair<Int, int>> integer_roots_bounded(const IPoly& p, long long bound) {
    if (p.is_zero()) throw error("integer_roots: zero polynomial");
    std::vector<std::pair<Int, int>> roots;
    IPoly work = p;

    // Peel off the t^m factor first.
    int zero_mult = 0;
    while (!work.is_zero() && work.coeff(0) == 0 && work.degree() >= 1) {
        auto q = work.deflate_root(Int(0));
        work = *q;
        ++zero_mult;
    }
    if (zero_mult > 0) roots.emplace_back(Int(0), zero_mult);

    for (long long k = bound; k >= -bound; --k) {
        if (k == 0 || work.degree() < 1) continue;
        if (work.coeff(0) % Int(k) != 0) continue;
        int mult = 0;
        while (true) {
            auto q = work.deflate_root(Int(k));
            if (!q) break;
            work = std::move(*q);
            ++mult;
        }
        if (mult > 0) roots.emplace_back(Int(k), mult);
    }
    // Descending by value, zero included in order.
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    return roots;
}

// Adjacency eigenvalues lie in [-(n-1), n-1], so the scan bound is n-1.
inline std::vector<std::pair<Int, int>> integer_roots(const CharPoly& cp) {
    return integer_roots_bounded(cp.poly, cp.n > 0 ? cp.n - 1 : 0);
}

}  // namespace pstlab

// Structural regularity layer: walk-regularity from exact integer powers,
// coherent closure by pair refinement, the Schur row-sum probe,
// distance-regularity, and the necessary-condition checklist consulted
// before scanning for transfer.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pstlab/charpoly.hpp"
#include "pstlab/exact.hpp"
#include "pstlab/graph.hpp"
#include "pstlab/matrix.hpp"

namespace pstlab {

namespace detail {

// Row i of A*M is the sum of M's rows over i's neighbors; works for any
// entry type without forming A.
template <typename T>
Matrix<T> adjacency_times(const Graph& g, const Matrix<T>& m) {
    int n = g.n();
    Matrix<T> out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j : g.neighbors(i))
            for (int t = 0; t < n; ++t) out(i, t) += m(j, t);
    return out;
}

}  // namespace detail

struct WalkRegularityReport {
    bool walk_regular = true;
    std::optional<int> failing_power;
    int witness_u = -1;  // two vertices whose diagonal entries of
    int witness_v = -1;  // A^failing_power differ, set on failure
    std::string detail;
};

// Walk regularity asks for constant diag(A^k) at every k >= 0. Powers from
// deg(minpoly) on are integer combinations of the earlier ones (the minimal
// polynomial is monic over Z), so constancy through k = deg(minpoly) - 1
// settles all k; for a symmetric integer matrix the minimal polynomial is
// the squarefree part of the characteristic polynomial. Pass a precomputed
// characteristic polynomial to skip recomputing it.
inline WalkRegularityReport is_walk_regular(const Graph& g, const CharPoly* cp = nullptr) {
    WalkRegularityReport rep;
    int n = g.n();
    if (n < 3) return rep;

    int m = cp ? squarefree_part(cp->poly).degree()
               : squarefree_part(char_poly(g).poly).degree();

    Matrix<Int> p(n, n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j : g.neighbors(i)) p(i, j) = 1;
    for (int k = 2; k <= m - 1; ++k) {
        p = detail::adjacency_times(g, p);
        for (int v = 1; v < n; ++v) {
            if (p(v, v) == p(0, 0)) continue;
            rep.walk_regular = false;
            rep.failing_power = k;
            rep.witness_u = 0;
            rep.witness_v = v;
            rep.detail = "diag(A^" + std::to_string(k) + ") has " + p(0, 0).str() +
                         " at vertex 0 but " + p(v, v).str() + " at vertex " + std::to_string(v);
            return rep;
        }
    }
    return rep;
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    // splitmix64 finalizer; fixed constants keep the refinement ordering
    // identical across platforms.
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Relabel classes by first appearance in row-major order.
inline int canonical_renumber(IntMatrix& color) {
    std::vector<long long> remap;
    int next = 0;
    for (std::size_t i = 0; i < color.rows(); ++i)
        for (std::size_t j = 0; j < color.cols(); ++j) {
            long long c = color(i, j);
            if (c >= static_cast<long long>(remap.size())) remap.resize(c + 1, -1);
            if (remap[c] < 0) remap[c] = next++;
            color(i, j) = remap[c];
        }
    return next;
}

// One pair-refinement round: the new class of (i,j) is determined by its old
// class together with the multiset over k of (class(i,k), class(k,j)). The
// multiset is sorted and chain-hashed into 128 bits, so class identity never
// depends on memory layout; a collision would need two distinct sorted
// sequences agreeing in both lanes. Returns the new class count.
inline int refine_round(IntMatrix& color) {
    int n = static_cast<int>(color.rows());
    struct Key {
        long long old;
        std::uint64_t h1, h2;
        bool operator<(const Key& o) const {
            if (old != o.old) return old < o.old;
            if (h1 != o.h1) return h1 < o.h1;
            return h2 < o.h2;
        }
        bool operator==(const Key& o) const { return old == o.old && h1 == o.h1 && h2 == o.h2; }
    };
    std::vector<Key> keys(static_cast<std::size_t>(n) * n);
    std::vector<std::uint64_t> sig(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k)
                sig[k] = (static_cast<std::uint64_t>(color(i, k)) << 32) |
                         static_cast<std::uint64_t>(color(k, j));
            std::sort(sig.begin(), sig.end());
            std::uint64_t h1 = 0x243f6a8885a308d3ull, h2 = 0x13198a2e03707344ull;
            for (std::uint64_t s : sig) {
                h1 = mix64(h1 ^ s);
                h2 = mix64(h2 + (s * 0x9e3779b97f4a7c15ull));
            }
            keys[static_cast<std::size_t>(i) * n + j] = Key{color(i, j), h1, h2};
        }
    std::vector<Key> order = keys;
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Key& k = keys[static_cast<std::size_t>(i) * n + j];
            color(i, j) = std::lower_bound(order.begin(), order.end(), k) - order.begin();
        }
    return static_cast<int>(order.size());
}

}  // namespace detail

struct CoherentClosure {
    int n = 0;
    int classes = 0;
    IntMatrix color;  // class of each ordered pair, numbered by first row-major appearance
    bool homogeneous = false;
    bool commutative = false;
    int rounds = 0;

    // The 0/1 basis, one matrix per class. Materializes classes * n^2
    // entries; fine for the structured graphs this is asked about, wasteful
    // for rigid graphs where every pair ends up alone.
    std::vector<IntMatrix> basis() const {
        std::vector<IntMatrix> b(classes, IntMatrix(n, n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b[color(i, j)](i, j) = 1;
        return b;
    }
};

// Smallest coherent algebra containing A: iterate pair refinement from the
// {diagonal, edge, non-edge} seed until no class splits. A stable coloring
// has well-defined structure constants p^c_{ab} (the count of k with
// class(i,k)=a, class(k,j)=b depends only on class(i,j)), which is exactly
// closure under matrix product; transpose and Schur closure hold because
// refinement only ever splits classes. Commutativity of the basis is the
// symmetry p^c_{ab} = p^c_{ba}, checked on one representative per class.
inline CoherentClosure coherent_closure(const Graph& g) {
    int n = g.n();
    if (n < 1) throw error("coherent_closure: need at least one vertex");
    CoherentClosure cc;
    cc.n = n;
    cc.color = IntMatrix(n, n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cc.color(i, j) = (i == j) ? 0 : (g.has_edge(i, j) ? 1 : 2);
    int classes = detail::canonical_renumber(cc.color);
    while (true) {
        int next = detail::refine_round(cc.color);
        ++cc.rounds;
        if (next == classes) break;  // no split anywhere: stable
        classes = next;
    }
    detail::canonical_renumber(cc.color);
    cc.classes = classes;

    cc.homogeneous = true;
    for (int i = 1; i < n; ++i)
        if (cc.color(i, i) != cc.color(0, 0)) cc.homogeneous = false;

    cc.commutative = true;
    std::vector<std::pair<int, int>> rep(classes, {-1, -1});
    for (int i = 0; i < n && cc.commutative; ++i)
        for (int j = 0; j < n; ++j) {
            int c = static_cast<int>(cc.color(i, j));
            if (rep[c].first >= 0) continue;
            rep[c] = {i, j};
            std::map<std::uint64_t, int> cnt;
            for (int k = 0; k < n; ++k) {
                std::uint64_t a = static_cast<std::uint64_t>(cc.color(i, k));
                std::uint64_t b = static_cast<std::uint64_t>(cc.color(k, j));
                ++cnt[(a << 32) | b];
            }
            for (const auto& [code, c1] : cnt) {
                std::uint64_t swapped = (code << 32) | (code >> 32);
                auto it = cnt.find(swapped);
                if (it == cnt.end() || it->second != c1) {
                    cc.commutative = false;
                    break;
                }
            }
            if (!cc.commutative) break;
        }
    return cc;
}

struct SchurProbeReport {
    std::vector<long long> row_sums;
    bool constant = true;
};

// Row sums of A o (A^2 - 4I) o (A^2 - 4I - J), entrywise products computed
// exactly. Non-constant row sums certify that A generates no homogeneous
// coherent algebra (every member of one has constant row sums, and the
// algebra is Schur-closed and contains I and J); constant sums decide
// nothing. Triangle-free graphs always come out constant zero, since off
// the diagonal the product reduces to A_uv * c * (c - 1) with c the common
// neighbor count of the edge.
inline SchurProbeReport schur_probe(const Graph& g) {
    int n = g.n();
    if (n < 1) throw error("schur_probe: need at least one vertex");
    IntMatrix a(n, n, 0);
    for (int i = 0; i < n; ++i)
        for (int j : g.neighbors(i)) a(i, j) = 1;
    IntMatrix a2 = detail::adjacency_times(g, a);
    SchurProbeReport rep;
    rep.row_sums.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long b = a2(i, j) - (i == j ? 4 : 0);
            rep.row_sums[i] += a(i, j) * b * (b - 1);
        }
    for (int i = 1; i < n; ++i)
        if (rep.row_sums[i] != rep.row_sums[0]) rep.constant = false;
    return rep;
}

struct DistanceRegularity {
    bool distance_regular = false;
    int diameter = 0;
    std::vector<IntMatrix> distance_basis;  // A_0 .. A_d
    std::string detail;                     // first product escaping the span, empty if none
};

// A connected graph is distance-regular iff every A * A_i stays in the span
// of the distance matrices, i.e. is constant on each distance class. Since
// (A * A_i)_{uv} counts i-sphere neighbors and only touches distances
// i-1, i, i+1, the constant-on-class test is the full intersection-number
// condition.
inline DistanceRegularity is_distance_regular(const Graph& g) {
    DistanceData dd = distances(g);
    if (!dd.connected) throw error("is_distance_regular: graph is disconnected");
    int n = g.n();
    int d = dd.diameter;
    DistanceRegularity res;
    res.diameter = d;
    res.distance_basis.assign(d + 1, IntMatrix(n, n, 0));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) res.distance_basis[dd.dist(u, v)](u, v) = 1;
    res.distance_regular = true;
    for (int i = 0; i <= d && res.distance_regular; ++i) {
        IntMatrix p = detail::adjacency_times(g, res.distance_basis[i]);
        std::vector<long long> coef(d + 1, -1);
        for (int u = 0; u < n && res.distance_regular; ++u)
            for (int v = 0; v < n; ++v) {
                int j = static_cast<int>(dd.dist(u, v));
                if (coef[j] < 0) {
                    coef[j] = p(u, v);
                } else if (coef[j] != p(u, v)) {
                    res.distance_regular = false;
                    res.detail = "A*A_" + std::to_string(i) + " is not constant on distance class " +
                                 std::to_string(j) + ": " + std::to_string(coef[j]) + " vs " +
                                 std::to_string(p(u, v)) + " at (" + std::to_string(u) + "," +
                                 std::to_string(v) + ")";
                    break;
                }
            }
    }
    return res;
}

struct Obstruction {
    std::string code;    // stable machine key
    std::string detail;  // human explanation
};

struct PstPreconditions {
    WalkRegularityReport walk;
    bool closure_ran = false;
    int closure_classes = 0;
    bool homogeneous = false;
    bool commutative = false;
    bool connected = false;
    int diameter = -1;
    bool distance_regular = false;
    std::optional<AntipodalResult> antipodal;
    std::vector<Obstruction> obstructions;

    bool hopeless() const { return !obstructions.empty(); }
};

// Necessary conditions for perfect transfer, each one a cheap certificate
// that scanning is pointless. Everything here is one-way: an empty
// obstruction list promises nothing. The homogeneity checks only fire on
// walk-regular graphs (homogeneous closure implies walk-regular, so skipping
// the closure otherwise loses nothing), which also keeps P_3 and friends off
// the list: inhomogeneous graphs are allowed transfer.
inline PstPreconditions pst_preconditions(const Graph& g, const CharPoly* cp = nullptr) {
    PstPreconditions out;
    int n = g.n();
    if (n < 2) {
        out.obstructions.push_back({"order", "transfer needs two distinct vertices"});
        return out;
    }
    out.walk = is_walk_regular(g, cp);
    if (out.walk.walk_regular) {
        CoherentClosure cc = coherent_closure(g);
        out.closure_ran = true;
        out.closure_classes = cc.classes;
        out.homogeneous = cc.homogeneous;
        out.commutative = cc.commutative;
        if (cc.homogeneous && n % 2 == 1)
            out.obstructions.push_back(
                {"odd-order", "homogeneous closure forces an even vertex count for transfer, n = " +
                                  std::to_string(n) + " is odd"});
    }
    out.connected = is_connected(g);
    if (!out.connected) return out;  // per-component question from here on

    DistanceData dd = distances(g);
    out.diameter = dd.diameter;
    if (dd.diameter == 1 && n >= 3)
        out.obstructions.push_back(
            {"complete-graph",
             "on K_n the transfer amplitude is |e^{int}-1|/n <= 2/" + std::to_string(n)});

    DistanceRegularity dr = is_distance_regular(g);
    out.distance_regular = dr.distance_regular;
    if (dr.distance_regular && dd.diameter >= 2) {
        out.antipodal = antipodal_classes(g);
        bool primitive = true;
        for (int k = 2; k <= dd.diameter && primitive; ++k)
            if (!is_connected(distance_graph(g, k))) primitive = false;
        if (primitive) {
            out.obstructions.push_back(
                {"primitive", "distance graphs X_2..X_" + std::to_string(dd.diameter) +
                                  " are all connected; transfer in a distance-regular graph "
                                  "needs an imprimitive scheme"});
        } else if (!out.antipodal->antipodal) {
            out.obstructions.push_back({"not-antipodal", out.antipodal->reason});
        } else if (out.antipodal->class_size != 2) {
            out.obstructions.push_back(
                {"antipodal-class-size", "antipodal classes have size " +
                                             std::to_string(out.antipodal->class_size) +
                                             ", transfer needs size 2"});
        }
    }
    return out;
}

}  // namespace pstlab

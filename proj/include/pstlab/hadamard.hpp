// Regular symmetric Hadamard matrices with constant diagonal, the epsilon
// bookkeeping, and the X(H) construction: antipodal diameter-3 graphs with
// perfect state transfer across the antipodal pairs.
#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pstlab/charpoly.hpp"
#include "pstlab/decomp.hpp"
#include "pstlab/graph.hpp"
#include "pstlab/matrix.hpp"
#include "pstlab/spectrum.hpp"

namespace pstlab {

struct HadamardReport {
    bool hadamard = false;
    bool symmetric = false;
    bool regular = false;
    bool constant_diagonal = false;
    long long row_sum = 0;  // c, meaningful when regular
    int diagonal = 0;       // +1 or -1 when constant
    int epsilon = 0;        // sign(c * H_11) when RSHCD, else 0

    bool rshcd() const { return hadamard && symmetric && regular && constant_diagonal; }
};

// All checks are integer identities, so everything is exact.
inline HadamardReport is_rshcd(const IntMatrix& m) {
    HadamardReport rep;
    std::size_t n = m.rows();
    if (n == 0 || m.cols() != n) throw error("is_rshcd: matrix must be square and nonempty");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m(i, j) != 1 && m(i, j) != -1)
                throw error("is_rshcd: entries must be +1 or -1");

    rep.hadamard = true;
    for (std::size_t i = 0; i < n && rep.hadamard; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long long dot = 0;
            for (std::size_t k = 0; k < n; ++k) dot += m(i, k) * m(j, k);
            if (dot != (i == j ? static_cast<long long>(n) : 0)) {
                rep.hadamard = false;
                break;
            }
        }
    if (!rep.hadamard) return rep;

    rep.symmetric = m.is_symmetric();

    rep.regular = true;
    long long c0 = 0;
    for (std::size_t j = 0; j < n; ++j) c0 += m(0, j);
    for (std::size_t i = 1; i < n && rep.regular; ++i) {
        long long c = 0;
        for (std::size_t j = 0; j < n; ++j) c += m(i, j);
        if (c != c0) rep.regular = false;
    }
    if (rep.regular) rep.row_sum = c0;

    rep.constant_diagonal = true;
    for (std::size_t i = 1; i < n; ++i)
        if (m(i, i) != m(0, 0)) rep.constant_diagonal = false;
    if (rep.constant_diagonal) rep.diagonal = static_cast<int>(m(0, 0));

    if (rep.rshcd()) {
        if (rep.row_sum * rep.row_sum != static_cast<long long>(n))
            throw integrity_error("is_rshcd: regular symmetric Hadamard with c^2 != n");
        rep.epsilon = (rep.row_sum > 0) == (rep.diagonal > 0) ? 1 : -1;
    }
    return rep;
}

class HadamardMatrix {
public:
    explicit HadamardMatrix(IntMatrix entries) : m_(std::move(entries)), rep_(is_rshcd(m_)) {
        if (!rep_.hadamard) throw error("HadamardMatrix: H * H^T != nI, not Hadamard");
    }

    int order() const { return static_cast<int>(m_.rows()); }
    long long at(int i, int j) const { return m_(i, j); }
    const IntMatrix& entries() const { return m_; }
    const HadamardReport& report() const { return rep_; }
    bool rshcd() const { return rep_.rshcd(); }
    int epsilon() const { return rep_.epsilon; }

    HadamardMatrix negated() const {
        IntMatrix neg = m_;
        for (std::size_t i = 0; i < neg.rows(); ++i)
            for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
        return HadamardMatrix(std::move(neg));
    }

private:
    IntMatrix m_;
    HadamardReport rep_;
};

// The canonical order-4 specimen with c = 2, diagonal +1, epsilon +1.
inline HadamardMatrix base4() {
    IntMatrix m(4, 4, 1);
    m(0, 3) = m(1, 2) = m(2, 1) = m(3, 0) = -1;
    return HadamardMatrix(std::move(m));
}

// Kronecker product of two RSHCDs. Epsilon multiplies; that is re-verified
// against the freshly computed flags rather than assumed.
inline HadamardMatrix kron(const HadamardMatrix& h, const HadamardMatrix& k) {
    if (!h.rshcd() || !k.rshcd()) throw error("kron: both factors must be RSHCD");
    int nh = h.order(), nk = k.order();
    IntMatrix out(static_cast<std::size_t>(nh) * nk, static_cast<std::size_t>(nh) * nk);
    for (int i = 0; i < nh; ++i)
        for (int j = 0; j < nh; ++j)
            for (int a = 0; a < nk; ++a)
                for (int b = 0; b < nk; ++b)
                    out(static_cast<std::size_t>(i) * nk + a,
                        static_cast<std::size_t>(j) * nk + b) = h.at(i, j) * k.at(a, b);
    HadamardMatrix prod(std::move(out));
    if (!prod.rshcd()) throw integrity_error("kron: product lost the RSHCD properties");
    if (prod.epsilon() != h.epsilon() * k.epsilon())
        throw integrity_error("kron: epsilon is not multiplicative on these factors");
    return prod;
}

// P(H (x) H^T) with P the swap u (x) v -> v (x) u, entrywise
// T[(i,j),(k,l)] = H[j,k] * H[l,i]. Symmetrizes a regular constant-diagonal
// Hadamard matrix that need not be symmetric itself.
inline HadamardMatrix twist(const HadamardMatrix& h) {
    const HadamardReport& rep = h.report();
    if (!rep.regular || !rep.constant_diagonal)
        throw error("twist: input must be regular with constant diagonal");
    int n = h.order();
    IntMatrix out(static_cast<std::size_t>(n) * n, static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    out(static_cast<std::size_t>(i) * n + j,
                        static_cast<std::size_t>(k) * n + l) = h.at(j, k) * h.at(l, i);
    HadamardMatrix t(std::move(out));
    if (!t.rshcd()) throw integrity_error("twist: result is not RSHCD");
    return t;
}

// ---------------------------------------------------------------------------
// Matrix file format: "n" on the first line, then n lines of +/- entries.

inline HadamardMatrix parse_hadamard(const std::string& text) {
    std::size_t pos = 0;
    auto next_line = [&](std::string& line, std::size_t& line_pos) {
        while (pos < text.size()) {
            line_pos = pos;
            std::size_t end = text.find('\n', pos);
            if (end == std::string::npos) end = text.size();
            line = text.substr(pos, end - pos);
            pos = end + 1;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos) return true;
        }
        return false;
    };
    std::string line;
    std::size_t line_pos = 0;
    if (!next_line(line, line_pos)) throw parse_error("hadamard: missing order line", 0);
    long n = -1;
    {
        std::istringstream hdr(line);
        std::string extra;
        if (!(hdr >> n) || n < 1 || (hdr >> extra))
            throw parse_error("hadamard: first line must be the order", line_pos);
    }
    IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        if (!next_line(line, line_pos))
            throw parse_error("hadamard: expected " + std::to_string(n) + " rows", text.size());
        long col = 0;
        for (std::size_t k = 0; k < line.size(); ++k) {
            char ch = line[k];
            if (ch == ' ' || ch == '\t') continue;
            if (ch != '+' && ch != '-')
                throw parse_error("hadamard: entries must be + or -", line_pos + k);
            if (col >= n) throw parse_error("hadamard: too many entries in row", line_pos + k);
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(col)) = ch == '+' ? 1 : -1;
            ++col;
        }
        if (col != n)
            throw parse_error("hadamard: row has " + std::to_string(col) + " entries, expected " +
                                  std::to_string(n),
                              line_pos);
    }
    return HadamardMatrix(std::move(m));
}

inline std::string to_hadamard_file(const HadamardMatrix& h) {
    std::ostringstream out;
    int n = h.order();
    out << n << "\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out << (h.at(i, j) > 0 ? '+' : '-');
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// The X(H) construction

struct XHGraph {
    Graph graph;  // 2n vertices labeled "(i,a)", i 1-based
    int hadamard_order = 0;
    int sqrt_order = 0;   // sqrt(n), the integer c
    int epsilon = 0;
    bool negated = false; // input diagonal was -1 and got normalized
};

// Vertex (i, a) with 1-based i sits at index 2(i-1) + a, so antipodal pairs
// are adjacent index pairs and F is block diagonal.
inline int xh_vertex(int i, int a) { return 2 * (i - 1) + a; }

// (i,a) ~ (j,b) iff i != j and H_ij = (-1)^{a+b}. The invariants promised
// for X(H) are re-established on every construction: degree, diameter,
// antipodal classes, and the four-eigenvalue spectrum. The spectrum check is
// exact up to 64 vertices and numeric above that.
inline XHGraph graph_from_rshcd(const HadamardMatrix& input) {
    if (!input.rshcd()) throw error("graph_from_rshcd: input is not an RSHCD");
    HadamardMatrix h = input.report().diagonal == -1 ? input.negated() : input;
    bool negated = input.report().diagonal == -1;
    int n = h.order();
    if (n < 4) throw error("graph_from_rshcd: need order >= 4, smaller orders give no diameter-3 graph");
    long long croot = exact_isqrt(n);
    if (croot < 0) throw integrity_error("graph_from_rshcd: order is not a perfect square");

    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels(2 * static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        for (int a = 0; a < 2; ++a)
            labels[xh_vertex(i, a)] = "(" + std::to_string(i) + "," + std::to_string(a) + ")";
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    long long want = (a + b) % 2 == 0 ? 1 : -1;
                    if (h.at(i - 1, j - 1) == want)
                        edges.emplace_back(xh_vertex(i, a), xh_vertex(j, b));
                }
    Graph g(2 * n, edges, std::move(labels));

    auto reg = g.regularity();
    if (!reg || *reg != n - 1)
        throw integrity_error("graph_from_rshcd: graph is not (n-1)-regular");
    AntipodalResult ap = antipodal_classes(g);
    if (!ap.antipodal || ap.class_size != 2)
        throw integrity_error("graph_from_rshcd: antipodal structure missing: " + ap.reason);
    for (const auto& cls : ap.classes)
        if (cls.size() != 2 || cls[0] / 2 != cls[1] / 2)
            throw integrity_error("graph_from_rshcd: antipodal classes are not the (i,*) pairs");
    DistanceData dd = distances(g);
    if (dd.diameter != 3) throw integrity_error("graph_from_rshcd: diameter is not 3");

    // Expected spectrum: n-1, sqrt(n)-1, -1, -sqrt(n)-1 with multiplicities
    // 1, (n+sqrt(n))/2, n-1, (n-sqrt(n))/2.
    if (2 * n <= 64) {
        IPoly expect = IPoly::linear_root(n - 1);
        for (long long m = 0; m < (n + croot) / 2; ++m) expect = expect * IPoly::linear_root(croot - 1);
        for (long long m = 0; m < static_cast<long long>(n) - 1; ++m)
            expect = expect * IPoly::linear_root(-1);
        for (long long m = 0; m < (n - croot) / 2; ++m)
            expect = expect * IPoly::linear_root(-croot - 1);
        if (char_poly(g).poly != expect)
            throw integrity_error("graph_from_rshcd: exact spectrum mismatch");
    } else {
        auto eig = jacobi_eigensym(g.adjacency_real(), 1e-10);
        std::vector<double> expect;
        expect.insert(expect.end(), 1, static_cast<double>(n - 1));
        expect.insert(expect.end(), static_cast<std::size_t>((n + croot) / 2),
                      static_cast<double>(croot - 1));
        expect.insert(expect.end(), static_cast<std::size_t>(n - 1), -1.0);
        expect.insert(expect.end(), static_cast<std::size_t>((n - croot) / 2),
                      static_cast<double>(-croot - 1));
        std::sort(expect.begin(), expect.end());
        std::vector<double> got = eig.values;
        std::sort(got.begin(), got.end());
        for (std::size_t i = 0; i < got.size(); ++i)
            if (std::abs(got[i] - expect[i]) > 1e-7)
                throw integrity_error("graph_from_rshcd: numeric spectrum mismatch");
    }

    XHGraph out;
    out.graph = std::move(g);
    out.hadamard_order = n;
    out.sqrt_order = static_cast<int>(croot);
    out.epsilon = h.epsilon();
    out.negated = negated;
    return out;
}

// (J + H)/2 - I: ones where H is +1 off the diagonal. Strongly regular for
// genuine RSHCD inputs; we verify plain regularity of valency (n+c)/2 - 1.
inline Graph srg_from_rshcd(const HadamardMatrix& h) {
    if (!h.rshcd()) throw error("srg_from_rshcd: input is not an RSHCD");
    if (h.report().diagonal != 1)
        throw error("srg_from_rshcd: diagonal must be +1 (negate the matrix first)");
    int n = h.order();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (h.at(i, j) == 1) edges.emplace_back(i, j);
    Graph g(n, edges);
    auto reg = g.regularity();
    long long want = (n + h.report().row_sum) / 2 - 1;
    if (!reg || *reg != want)
        throw integrity_error("srg_from_rshcd: graph is not " + std::to_string(want) + "-regular");
    return g;
}

// tau = pi / sqrt(n). The derivation needs sqrt(n) even (powers of four
// qualify); odd sqrt(n) is refused rather than extrapolated.
inline ExactAngle pst_time_xh(const XHGraph& xh) {
    int c = xh.sqrt_order;
    if (c % 2 != 0)
        throw error("pst_time_xh: sqrt(n) = " + std::to_string(c) +
                    " is odd, the construction needs it even");
    return ExactAngle{Rat(1, c), 1};
}

}  // namespace pstlab

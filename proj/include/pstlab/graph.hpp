// Graph core: dense simple graphs, the standard constructions, BFS metric
// structure, and the graph6/edge-list interchange formats.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pstlab/common.hpp"
#include "pstlab/matrix.hpp"

namespace pstlab {

// Simple undirected graph on vertices 0..n-1. Immutable once built; both the
// dense 0/1 matrix and adjacency lists are kept so spectral code and BFS each
// get their natural view. Equality compares structure only, labels are
// carried metadata (graph6 round-trips would otherwise never compare equal).
class Graph {
public:
    Graph() = default;
    explicit Graph(int n, std::vector<std::string> labels = {}) : n_(n), lists_(n) {
        if (n < 0) throw error("Graph: negative vertex count");
        adj_.assign(static_cast<std::size_t>(n) * n, 0);
        set_labels(std::move(labels));
    }

    Graph(int n, const std::vector<std::pair<int, int>>& edge_list,
          std::vector<std::string> labels = {})
        : Graph(n, std::move(labels)) {
        for (auto [u, v] : edge_list) add_edge_checked(u, v);
        finalize();
    }

    int n() const { return n_; }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return adj_[static_cast<std::size_t>(u) * n_ + v] != 0;
    }

    int degree(int u) const {
        check_vertex(u);
        return static_cast<int>(lists_[u].size());
    }

    const std::vector<int>& neighbors(int u) const {
        check_vertex(u);
        return lists_[u];
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v : lists_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    std::size_t edge_count() const {
        std::size_t deg_sum = 0;
        for (const auto& l : lists_) deg_sum += l.size();
        return deg_sum / 2;
    }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int u) const {
        check_vertex(u);
        if (labels_.empty()) throw error("Graph: no labels set");
        return labels_[u];
    }

    IntMatrix adjacency() const {
        IntMatrix a(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) a(i, j) = adj_[static_cast<std::size_t>(i) * n_ + j];
        return a;
    }

    RealMatrix adjacency_real() const {
        RealMatrix a(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) a(i, j) = adj_[static_cast<std::size_t>(i) * n_ + j];
        return a;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }
    bool operator!=(const Graph& o) const { return !(*this == o); }

    // Regular of some valency k, or nullopt.
    std::optional<int> regularity() const {
        if (n_ == 0) return std::nullopt;
        int k = degree(0);
        for (int u = 1; u < n_; ++u)
            if (degree(u) != k) return std::nullopt;
        return k;
    }

private:
    friend Graph parse_graph6(const std::string&);
    friend Graph parse_edge_list(const std::string&);

    void add_edge_checked(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw error("Graph: self-loop at vertex " + std::to_string(u));
        adj_[static_cast<std::size_t>(u) * n_ + v] = 1;
        adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
    }

    // Rebuild adjacency lists from the matrix (collapses duplicate edges).
    void finalize() {
        for (int u = 0; u < n_; ++u) {
            lists_[u].clear();
            for (int v = 0; v < n_; ++v)
                if (adj_[static_cast<std::size_t>(u) * n_ + v]) lists_[u].push_back(v);
        }
    }

    void set_labels(std::vector<std::string> labels) {
        if (!labels.empty() && static_cast<int>(labels.size()) != n_)
            throw error("Graph: label count does not match vertex count");
        labels_ = std::move(labels);
    }

    void check_vertex(int u) const {
        if (u < 0 || u >= n_) throw error("Graph: vertex index " + std::to_string(u) + " out of range");
    }

    int n_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::vector<int>> lists_;
    std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// Standard constructions

inline Graph path(int n) {
    if (n < 1) throw error("path: need n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

inline Graph cycle(int n) {
    if (n < 3) throw error("cycle: need n >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, e);
}

inline Graph complete(int n) {
    if (n < 1) throw error("complete: need n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, e);
}

// Vertices are d-bit masks; adjacency is Hamming distance one.
inline Graph hypercube(int d) {
    if (d < 1) throw error("hypercube: need d >= 1");
    if (d > 20) throw error("hypercube: d too large for dense storage");
    int n = 1 << d;
    std::vector<std::pair<int, int>> e;
    for (int x = 0; x < n; ++x)
        for (int b = 0; b < d; ++b) {
            int y = x ^ (1 << b);
            if (x < y) e.emplace_back(x, y);
        }
    return Graph(n, e);
}

// Vertex (g, h) gets index g*|H| + h.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
    if (g.n() == 0 || h.n() == 0) throw error("cartesian_product: empty factor");
    int nh = h.n();
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < g.n(); ++a)
        for (auto [u, v] : h.edges()) e.emplace_back(a * nh + u, a * nh + v);
    for (auto [a, b] : g.edges())
        for (int u = 0; u < nh; ++u) e.emplace_back(a * nh + u, b * nh + u);
    return Graph(g.n() * nh, e);
}

// Kneser graph K(5,2): 2-subsets of {0..4}, adjacent iff disjoint.
inline Graph petersen() {
    std::vector<std::pair<int, int>> subsets;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) subsets.emplace_back(i, j);
    std::vector<std::pair<int, int>> e;
    for (std::size_t a = 0; a < subsets.size(); ++a)
        for (std::size_t b = a + 1; b < subsets.size(); ++b) {
            auto [i, j] = subsets[a];
            auto [k, l] = subsets[b];
            if (i != k && i != l && j != k && j != l) e.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    return Graph(10, e);
}

// ---------------------------------------------------------------------------
// graph6 (standard short form, n <= 62)

inline Graph parse_graph6(const std::string& raw) {
    // Tolerate a trailing newline; everything else is significant.
    std::size_t len = raw.size();
    while (len > 0 && (raw[len - 1] == '\n' || raw[len - 1] == '\r')) --len;
    if (len == 0) throw parse_error("graph6: empty input", 0);
    unsigned char c0 = static_cast<unsigned char>(raw[0]);
    if (c0 == '~') throw parse_error("graph6: long form (leading '~') not supported", 0);
    if (c0 < 63 || c0 > 126) throw parse_error("graph6: invalid size byte", 0);
    int n = c0 - 63;
    std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::size_t nbytes = (nbits + 5) / 6;
    if (len < 1 + nbytes) throw parse_error("graph6: truncated body", len);
    if (len > 1 + nbytes) throw parse_error("graph6: trailing data", 1 + nbytes);

    Graph g(n);
    std::size_t bit = 0;
    for (std::size_t k = 0; k < nbytes; ++k) {
        unsigned char c = static_cast<unsigned char>(raw[1 + k]);
        if (c < 63 || c > 126) throw parse_error("graph6: invalid body byte", 1 + k);
        int val = c - 63;
        for (int b = 5; b >= 0; --b, ++bit) {
            int set = (val >> b) & 1;
            if (bit >= nbits) {
                if (set) throw parse_error("graph6: nonzero padding bits", 1 + k);
                continue;
            }
            if (set) {
                // Bit index runs over the upper triangle column by column:
                // (0,1), (0,2), (1,2), (0,3), ...
                std::size_t r = bit;
                int j = 1;
                while (r >= static_cast<std::size_t>(j)) {
                    r -= j;
                    ++j;
                }
                g.add_edge_checked(static_cast<int>(r), j);
            }
        }
    }
    g.finalize();
    return g;
}

inline std::string to_graph6(const Graph& g) {
    int n = g.n();
    if (n > 62) throw error("to_graph6: only the short form (n <= 62) is supported");
    std::string out;
    out.push_back(static_cast<char>(n + 63));
    int acc = 0, nb = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nb == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nb = 0;
            }
        }
    if (nb > 0) out.push_back(static_cast<char>((acc << (6 - nb)) + 63));
    return out;
}

// ---------------------------------------------------------------------------
// Edge-list text format: header "n <count>", then one "u v" line per edge.

inline Graph parse_edge_list(const std::string& text) {
    std::size_t pos = 0;
    auto next_line = [&](std::string& line, std::size_t& line_pos) {
        while (pos < text.size()) {
            line_pos = pos;
            std::size_t end = text.find('\n', pos);
            if (end == std::string::npos) end = text.size();
            line = text.substr(pos, end - pos);
            pos = end + 1;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            bool blank = line.find_first_not_of(" \t") == std::string::npos;
            if (!blank) return true;
        }
        return false;
    };

    std::string line;
    std::size_t line_pos = 0;
    if (!next_line(line, line_pos)) throw parse_error("edge list: missing header", 0);
    std::istringstream hdr(line);
    std::string tag;
    long n = -1;
    if (!(hdr >> tag >> n) || tag != "n" || n < 0)
        throw parse_error("edge list: header must be \"n <count>\"", line_pos);
    std::string extra;
    if (hdr >> extra) throw parse_error("edge list: trailing data in header", line_pos);

    Graph g(static_cast<int>(n));
    while (next_line(line, line_pos)) {
        std::istringstream ls(line);
        long u = 0, v = 0;
        if (!(ls >> u >> v)) throw parse_error("edge list: expected \"u v\"", line_pos);
        if (ls >> extra) throw parse_error("edge list: trailing data on edge line", line_pos);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw parse_error("edge list: vertex index out of range", line_pos);
        if (u == v) throw parse_error("edge list: self-loop rejected", line_pos);
        g.add_edge_checked(static_cast<int>(u), static_cast<int>(v));
    }
    g.finalize();
    return g;
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.n() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// BFS metric structure

// dist entries are -1 for unreachable pairs.
struct DistanceData {
    IntMatrix dist;
    int diameter = 0;
    bool connected = true;

    static constexpr long long unreachable = -1;
};

inline DistanceData distances(const Graph& g) {
    int n = g.n();
    DistanceData d;
    d.dist = IntMatrix(n, n, DistanceData::unreachable);
    for (int s = 0; s < n; ++s) {
        d.dist(s, s) = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : g.neighbors(u))
                if (d.dist(s, v) == DistanceData::unreachable) {
                    d.dist(s, v) = d.dist(s, u) + 1;
                    q.push(v);
                }
        }
        for (int v = 0; v < n; ++v) {
            if (d.dist(s, v) == DistanceData::unreachable)
                d.connected = false;
            else
                d.diameter = std::max(d.diameter, static_cast<int>(d.dist(s, v)));
        }
    }
    return d;
}

inline bool is_connected(const Graph& g) {
    if (g.n() == 0) return true;
    std::vector<char> seen(g.n(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.neighbors(u))
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                q.push(v);
            }
    }
    return count == g.n();
}

inline bool is_bipartite(const Graph& g) {
    std::vector<int> color(g.n(), -1);
    for (int s = 0; s < g.n(); ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : g.neighbors(u)) {
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    q.push(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

// X_k: same vertices, adjacency = "at distance exactly k". For k beyond the
// diameter the result is edgeless and *warning is set (sweeps over k then
// need no special casing).
inline Graph distance_graph(const Graph& g, int k, std::string* warning = nullptr) {
    if (k < 1) throw error("distance_graph: need k >= 1");
    DistanceData d = distances(g);
    if (!d.connected) throw error("distance_graph: graph is disconnected");
    if (k > d.diameter) {
        if (warning)
            *warning = "distance_graph: k=" + std::to_string(k) + " exceeds diameter " +
                       std::to_string(d.diameter) + ", result is edgeless";
        return Graph(g.n());
    }
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (d.dist(u, v) == k) e.emplace_back(u, v);
    return Graph(g.n(), e);
}

// Induced subgraph with u removed; indices compact downward. Labels follow
// the surviving vertices, defaulting to the original index as a string so
// repeated deletions stay traceable.
inline Graph delete_vertex(const Graph& g, int u) {
    if (g.n() < 2) throw error("delete_vertex: need at least 2 vertices");
    if (u < 0 || u >= g.n()) throw error("delete_vertex: vertex out of range");
    std::vector<std::string> labels;
    labels.reserve(g.n() - 1);
    for (int v = 0; v < g.n(); ++v) {
        if (v == u) continue;
        labels.push_back(g.has_labels() ? g.label(v) : std::to_string(v));
    }
    std::vector<std::pair<int, int>> e;
    auto remap = [u](int v) { return v < u ? v : v - 1; };
    for (auto [a, b] : g.edges())
        if (a != u && b != u) e.emplace_back(remap(a), remap(b));
    return Graph(g.n() - 1, e, std::move(labels));
}

// ---------------------------------------------------------------------------
// Antipodality: components of the distance-d graph must be equal-size cliques.

struct AntipodalResult {
    bool antipodal = false;
    int class_size = 0;
    std::vector<std::vector<int>> classes;
    std::string reason;
};

inline AntipodalResult antipodal_classes(const Graph& g) {
    AntipodalResult res;
    DistanceData d = distances(g);
    if (!d.connected) throw error("antipodal_classes: graph is disconnected");
    if (d.diameter < 2) {
        res.reason = "diameter " + std::to_string(d.diameter) + " is below 2";
        return res;
    }
    Graph xd = distance_graph(g, d.diameter);

    // Components of X_d.
    std::vector<int> comp(g.n(), -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> members;
        std::queue<int> q;
        q.push(s);
        comp[s] = static_cast<int>(comps.size());
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            members.push_back(u);
            for (int v : xd.neighbors(u))
                if (comp[v] == -1) {
                    comp[v] = comp[s];
                    q.push(v);
                }
        }
        std::sort(members.begin(), members.end());
        comps.push_back(std::move(members));
    }

    std::size_t size0 = comps[0].size();
    for (const auto& c : comps) {
        if (c.size() != size0) {
            res.reason = "components of the distance-" + std::to_string(d.diameter) +
                         " graph have unequal sizes";
            return res;
        }
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (!xd.has_edge(c[i], c[j])) {
                    res.reason = "a component of the distance-" + std::to_string(d.diameter) +
                                 " graph is not a clique";
                    return res;
                }
    }
    if (size0 < 2) {
        res.reason = "no vertex has an antipode at distance " + std::to_string(d.diameter);
        return res;
    }
    res.antipodal = true;
    res.class_size = static_cast<int>(size0);
    res.classes = std::move(comps);
    return res;
}

}  // namespace pstlab

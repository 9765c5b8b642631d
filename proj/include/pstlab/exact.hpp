// Exact integer/rational polynomial arithmetic: the backbone of eigenvalue
// recognition. Characteristic polynomials are kept over arbitrary-precision
// integers; root work (deflation, gcd, Sturm counting) never touches floating
// point, so integer eigenvalues survive at any order.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pstlab/common.hpp"

namespace pstlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Int& v) { return v.convert_to<double>(); }
inline double to_double(const Rat& v) { return v.convert_to<double>(); }

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// gcd of two rationals: the positive generator of aZ + bZ inside Q.
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    if (a == 0) return b < 0 ? Rat(-b) : b;
    if (b == 0) return a < 0 ? Rat(-a) : a;
    Int n = gcd(abs(rat_num(a) * rat_den(b)), abs(rat_num(b) * rat_den(a)));
    Int d = rat_den(a) * rat_den(b);
    return Rat(n, d);
}

// Polynomial over Z in one variable; c[i] is the coefficient of t^i.
// Trailing zero coefficients are trimmed (the zero polynomial is empty).
class IPoly {
public:
    IPoly() = default;
    explicit IPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    IPoly(std::initializer_list<long long> coeffs) {
        for (long long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IPoly constant(Int v) {
        IPoly p;
        p.c_.push_back(std::move(v));
        p.trim();
        return p;
    }
    // t - k
    static IPoly linear_root(const Int& k) { return IPoly(std::vector<Int>{-k, 1}); }
    // t^2 - s
    static IPoly quadratic_root_square(const Int& s) {
        return IPoly(std::vector<Int>{-s, 0, 1});
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Int& coeff(std::size_t i) const {
        static const Int zero = 0;
        return i < c_.size() ? c_[i] : zero;
    }
    const Int& leading() const { return c_.back(); }
    const std::vector<Int>& coeffs() const { return c_; }

    bool operator==(const IPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IPoly& o) const { return !(*this == o); }

    Int eval(const Int& x) const {
        Int v = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    Rat eval(const Rat& x) const {
        Rat v = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    IPoly operator+(const IPoly& o) const {
        std::vector<Int> out(std::max(c_.size(), o.c_.size()), Int(0));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + o.coeff(i);
        return IPoly(std::move(out));
    }

    IPoly operator-(const IPoly& o) const {
        std::vector<Int> out(std::max(c_.size(), o.c_.size()), Int(0));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) - o.coeff(i);
        return IPoly(std::move(out));
    }

    IPoly operator*(const IPoly& o) const {
        if (is_zero() || o.is_zero()) return IPoly();
        std::vector<Int> out(c_.size() + o.c_.size() - 1, Int(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
        return IPoly(std::move(out));
    }

    IPoly derivative() const {
        if (c_.size() <= 1) return IPoly();
        std::vector<Int> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Int(i);
        return IPoly(std::move(out));
    }

    // Synthetic division by (t - k); nullopt when k is not a root.
    std::optional<IPoly> deflate_root(const Int& k) const {
        if (is_zero()) return std::nullopt;
        std::vector<Int> q(c_.size() - 1, Int(0));
        Int carry = 0;
        for (std::size_t i = c_.size(); i-- > 0;) {
            Int v = c_[i] + carry * k;
            if (i == 0) {
                if (v != 0) return std::nullopt;
            } else {
                q[i - 1] = v;
                carry = v;
            }
        }
        return IPoly(std::move(q));
    }

    // Exact division over Z; nullopt when the divisor does not divide exactly.
    std::optional<IPoly> try_divide(const IPoly& d) const {
        if (d.is_zero()) throw error("IPoly: division by zero polynomial");
        if (is_zero()) return IPoly();
        if (degree() < d.degree()) return std::nullopt;
        std::vector<Int> rem(c_);
        std::vector<Int> quot(c_.size() - d.c_.size() + 1, Int(0));
        const Int& lead = d.leading();
        for (std::size_t i = quot.size(); i-- > 0;) {
            Int& top = rem[i + d.c_.size() - 1];
            if (top % lead != 0) return std::nullopt;
            Int q = top / lead;
            quot[i] = q;
            if (q != 0)
                for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] -= q * d.c_[j];
        }
        for (const Int& r : rem)
            if (r != 0) return std::nullopt;
        return IPoly(std::move(quot));
    }

    // Coefficients reversed: z^deg * p(1/z).
    IPoly reciprocal() const {
        std::vector<Int> out(c_.rbegin(), c_.rend());
        return IPoly(std::move(out));
    }

    Int content() const {
        using boost::multiprecision::gcd;
        Int g = 0;
        for (const Int& v : c_) g = gcd(g, abs(v));
        return g;
    }

    IPoly primitive_positive() const {
        if (is_zero()) return IPoly();
        Int g = content();
        std::vector<Int> out(c_);
        if (leading() < 0) g = -g;
        for (Int& v : out) v /= g;
        return IPoly(std::move(out));
    }

    std::string str(const std::string& var = "t") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

inline std::string IPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Int& v = coeff(i);
        if (v == 0) continue;
        Int a = abs(v);
        if (out.empty())
            out += v < 0 ? "-" : "";
        else
            out += v < 0 ? " - " : " + ";
        bool unit = a == 1 && i != 0;
        if (!unit) out += a.str();
        if (i > 0) {
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace detail {

// Rational-coefficient remainder, rescaled to a primitive integer polynomial
// with the sign preserved. Used by the gcd and Sturm chains.
inline IPoly rational_rem_primitive(const IPoly& a, const IPoly& b) {
    std::vector<Rat> rem(a.coeffs().begin(), a.coeffs().end());
    int db = b.degree();
    const Int& lead = b.leading();
    while (static_cast<int>(rem.size()) - 1 >= db) {
        Rat q = rem.back() / Rat(lead);
        std::size_t shift = rem.size() - 1 - db;
        for (int j = 0; j <= db; ++j) rem[shift + j] -= q * Rat(b.coeff(j));
        rem.pop_back();
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    if (rem.empty()) return IPoly();
    using boost::multiprecision::lcm;
    Int den = 1;
    for (const Rat& r : rem) den = lcm(den, rat_den(r));
    std::vector<Int> scaled;
    scaled.reserve(rem.size());
    for (const Rat& r : rem) scaled.push_back(rat_num(r) * (den / rat_den(r)));
    IPoly p(std::move(scaled));
    Int g = p.content();
    std::vector<Int> out(p.coeffs());
    for (Int& v : out) v /= g;
    return IPoly(std::move(out));
}

}  // namespace detail

// Primitive gcd over Q with positive leading coefficient.
inline IPoly poly_gcd(IPoly a, IPoly b) {
    if (a.is_zero()) return b.primitive_positive();
    if (b.is_zero()) return a.primitive_positive();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IPoly r = detail::rational_rem_primitive(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.primitive_positive();
}

inline IPoly squarefree_part(const IPoly& p) {
    if (p.degree() <= 1) return p.primitive_positive();
    IPoly g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) return p.primitive_positive();
    auto q = p.try_divide(g);
    if (!q) {
        // g is primitive and divides p over Q; over Z this division is exact
        // for our monic-or-primitive inputs, so reaching here is a bug.
        throw integrity_error("squarefree_part: non-exact division");
    }
    return q->primitive_positive();
}

// Sturm chain of a polynomial (squarefree input gives exact root counts).
class SturmChain {
public:
    explicit SturmChain(const IPoly& p) {
        chain_.push_back(p.primitive_positive());
        if (p.degree() >= 1) {
            chain_.push_back(p.derivative().primitive_positive());
            while (chain_.back().degree() >= 1) {
                IPoly r = detail::rational_rem_primitive(chain_[chain_.size() - 2], chain_.back());
                if (r.is_zero()) break;
                // Sturm chain uses the negated remainder.
                chain_.push_back(IPoly() - r);
            }
        }
    }

    // Number of distinct real roots in (a, b], for squarefree chains.
    int count_roots(const Rat& a, const Rat& b) const {
        return sign_changes(a) - sign_changes(b);
    }

    int sign_changes(const Rat& x) const {
        int changes = 0, prev = 0;
        for (const IPoly& p : chain_) {
            Rat v = p.eval(x);
            int s = v == 0 ? 0 : (v < 0 ? -1 : 1);
            if (s != 0) {
                if (prev != 0 && s != prev) ++changes;
                prev = s;
            }
        }
        return changes;
    }

private:
    std::vector<IPoly> chain_;
};

// Split s = f^2 * delta with delta squarefree (s > 0).
inline void squarefree_split(long long s, long long& f, long long& delta) {
    if (s <= 0) throw error("squarefree_split: positive argument required");
    f = 1;
    delta = 1;
    for (long long p = 2; p * p <= s; ++p) {
        int e = 0;
        while (s % p == 0) {
            s /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) f *= p;
        if (e % 2) delta *= p;
    }
    delta *= s;
}

}  // namespace pstlab

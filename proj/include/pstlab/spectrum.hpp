// Eigenvalue recognition and the periodicity classification. Numeric
// eigenvalues are only ever treated as hints: a class is labeled Integer or
// Surd exclusively on the strength of exact polynomial division, and the
// periodicity verdict rests on those certified classes.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pstlab/charpoly.hpp"
#include "pstlab/exact.hpp"
#include "pstlab/graph.hpp"

namespace pstlab {

enum class EigKind { Integer, Surd, Numeric };

// Integer: value = k. Surd: value = q*sqrt(delta), delta squarefree >= 2,
// q a nonzero integer (an algebraic integer q*sqrt(delta) with rational q
// forces q integral). Numeric: no exact form certified.
struct EigenvalueClass {
    EigKind kind = EigKind::Numeric;
    Int k = 0;
    Int q = 0;
    long long delta = 0;
    double value = 0.0;
    int multiplicity = 0;

    std::string exact_str() const {
        std::ostringstream out;
        switch (kind) {
            case EigKind::Integer:
                out << k.str();
                break;
            case EigKind::Surd: {
                Int a = abs(q);
                if (q < 0) out << "-";
                if (a != 1) out << a.str();
                out << "√" << delta;
                break;
            }
            case EigKind::Numeric:
                out << value;
                break;
        }
        return out.str();
    }
};

enum class SpectrumStatus { AllInteger, AllSurd, Mixed, NumericOnly };

inline const char* to_string(SpectrumStatus s) {
    switch (s) {
        case SpectrumStatus::AllInteger: return "AllInteger";
        case SpectrumStatus::AllSurd: return "AllSurd";
        case SpectrumStatus::Mixed: return "Mixed";
        case SpectrumStatus::NumericOnly: return "NumericOnly";
    }
    return "?";
}

struct Spectrum {
    std::vector<EigenvalueClass> classes;  // descending by value
    SpectrumStatus status = SpectrumStatus::NumericOnly;
    long long delta = 0;  // common squarefree part when status is AllSurd
    CharPoly charpoly;

    int n() const { return charpoly.n; }
};

// Builds the spectrum a graph would have if its eigenvalues were exactly the
// given integers, characteristic polynomial included. Lets spectrum-level
// arguments (enumerator, periodicity) run without any graph behind them.
inline Spectrum spectrum_from_integer_classes(std::vector<std::pair<long long, int>> classes) {
    if (classes.empty()) throw error("spectrum_from_integer_classes: empty spectrum");
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    Spectrum sp;
    sp.status = SpectrumStatus::AllInteger;
    IPoly p = IPoly::constant(1);
    int n = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        auto [value, mult] = classes[i];
        if (mult < 1) throw error("spectrum_from_integer_classes: multiplicity must be positive");
        if (i > 0 && value == classes[i - 1].first)
            throw error("spectrum_from_integer_classes: repeated eigenvalue " + std::to_string(value));
        EigenvalueClass c;
        c.kind = EigKind::Integer;
        c.k = value;
        c.value = static_cast<double>(value);
        c.multiplicity = mult;
        sp.classes.push_back(c);
        IPoly f = IPoly::linear_root(Int(value));
        for (int j = 0; j < mult; ++j) p = p * f;
        n += mult;
    }
    sp.charpoly = CharPoly{std::move(p), n};
    return sp;
}

namespace detail {

struct Cluster {
    double value = 0.0;
    int count = 0;
};

inline std::vector<Cluster> cluster_descending(std::vector<double> eigs, double tol) {
    std::sort(eigs.begin(), eigs.end(), std::greater<double>());
    std::vector<Cluster> out;
    for (double v : eigs) {
        if (!out.empty() && out.back().value / out.back().count - v <= tol) {
            // Running mean keeps the representative centered.
            out.back().value += v;
            out.back().count += 1;
        } else {
            out.push_back({v, 1});
        }
    }
    for (Cluster& c : out) c.value /= c.count;
    return out;
}

// Largest a with (t - k)^a dividing p.
inline int root_multiplicity(const IPoly& p, const Int& k) {
    int a = 0;
    IPoly w = p;
    while (w.degree() >= 1) {
        auto q = w.deflate_root(k);
        if (!q) break;
        w = std::move(*q);
        ++a;
    }
    return a;
}

// Largest a with (t^2 - s)^a dividing p.
inline int quadratic_multiplicity(const IPoly& p, const Int& s) {
    int a = 0;
    IPoly w = p;
    IPoly f = IPoly::quadratic_root_square(s);
    while (w.degree() >= 2) {
        auto q = w.try_divide(f);
        if (!q) break;
        w = std::move(*q);
        ++a;
    }
    return a;
}

}  // namespace detail

inline constexpr double default_cluster_tol = 1e-7;

// Match numeric eigenvalue clusters against exact roots of the characteristic
// polynomial. Integer candidates are the nearest integer; surd candidates
// come from rounding theta^2. Verification is exact division, and cluster
// sizes must reproduce the exact multiplicities or we refuse to classify.
inline Spectrum recognize_spectrum(const CharPoly& cp, const std::vector<double>& numeric_eigs,
                                   double cluster_tol = default_cluster_tol) {
    int n = cp.n;
    if (static_cast<int>(numeric_eigs.size()) != n)
        throw error("recognize_spectrum: eigenvalue count does not match degree");
    auto clusters = detail::cluster_descending(numeric_eigs, cluster_tol);

    Spectrum sp;
    sp.charpoly = cp;

    struct IntegerAgg {
        long long k;
        int numeric_count = 0;
    };
    struct SurdAgg {
        long long s;  // q^2 * delta
        int pos_count = 0, neg_count = 0;
    };
    std::vector<IntegerAgg> ints;
    std::vector<SurdAgg> surds;

    for (const auto& c : clusters) {
        long long k = std::llround(c.value);
        if (std::abs(c.value - static_cast<double>(k)) <= cluster_tol &&
            detail::root_multiplicity(cp.poly, Int(k)) > 0) {
            auto it = std::find_if(ints.begin(), ints.end(),
                                   [k](const IntegerAgg& a) { return a.k == k; });
            if (it == ints.end()) {
                ints.push_back({k, c.count});
            } else {
                it->numeric_count += c.count;
            }
            EigenvalueClass ec;
            ec.kind = EigKind::Integer;
            ec.k = k;
            ec.value = static_cast<double>(k);
            ec.multiplicity = c.count;
            sp.classes.push_back(ec);
            continue;
        }
        double sq = c.value * c.value;
        long long s = std::llround(sq);
        double guard = cluster_tol * (2.0 * std::abs(c.value) + 1.0);
        if (s >= 2 && exact_isqrt(s) < 0 && std::abs(sq - static_cast<double>(s)) <= guard &&
            detail::quadratic_multiplicity(cp.poly, Int(s)) > 0) {
            auto it = std::find_if(surds.begin(), surds.end(),
                                   [s](const SurdAgg& a) { return a.s == s; });
            if (it == surds.end()) {
                surds.push_back({s, 0, 0});
                it = surds.end() - 1;
            }
            (c.value > 0 ? it->pos_count : it->neg_count) += c.count;
            long long f = 0, d = 0;
            squarefree_split(s, f, d);
            EigenvalueClass ec;
            ec.kind = EigKind::Surd;
            ec.q = c.value > 0 ? f : -f;
            ec.delta = d;
            ec.value = (c.value > 0 ? 1.0 : -1.0) * std::sqrt(static_cast<double>(s));
            ec.multiplicity = c.count;
            sp.classes.push_back(ec);
            continue;
        }
        EigenvalueClass ec;
        ec.kind = EigKind::Numeric;
        ec.value = c.value;
        ec.multiplicity = c.count;
        sp.classes.push_back(ec);
    }

    // Cluster sizes must agree with the exact multiplicities, otherwise the
    // numeric clustering and the polynomial disagree and nothing downstream
    // can be trusted.
    for (const auto& a : ints) {
        int exact = detail::root_multiplicity(cp.poly, Int(a.k));
        if (exact != a.numeric_count)
            throw error("recognize_spectrum: eigenvalue " + std::to_string(a.k) +
                        " has exact multiplicity " + std::to_string(exact) +
                        " but numeric clustering found " + std::to_string(a.numeric_count));
    }
    for (const auto& a : surds) {
        int exact = detail::quadratic_multiplicity(cp.poly, Int(a.s));
        if (exact != a.pos_count || exact != a.neg_count)
            throw error("recognize_spectrum: surd pair with square " + std::to_string(a.s) +
                        " has exact multiplicity " + std::to_string(exact) +
                        " but numeric clustering found +" + std::to_string(a.pos_count) + "/-" +
                        std::to_string(a.neg_count));
    }

    std::sort(sp.classes.begin(), sp.classes.end(),
              [](const EigenvalueClass& a, const EigenvalueClass& b) { return a.value > b.value; });

    // Clusters that the tolerance split but that verified to the same exact
    // value collapse into one class; Integer values must be distinct.
    std::vector<EigenvalueClass> merged;
    for (const auto& ec : sp.classes) {
        if (!merged.empty()) {
            EigenvalueClass& last = merged.back();
            bool same = last.kind == ec.kind &&
                        ((ec.kind == EigKind::Integer && last.k == ec.k) ||
                         (ec.kind == EigKind::Surd && last.q == ec.q && last.delta == ec.delta));
            if (same) {
                last.multiplicity += ec.multiplicity;
                continue;
            }
        }
        merged.push_back(ec);
    }
    sp.classes = std::move(merged);

    bool any_numeric = false, any_nonzero_int = false, any_surd = false, mixed_delta = false;
    long long common_delta = 0;
    for (const auto& ec : sp.classes) {
        if (ec.kind == EigKind::Numeric) any_numeric = true;
        if (ec.kind == EigKind::Integer && ec.k != 0) any_nonzero_int = true;
        if (ec.kind == EigKind::Surd) {
            any_surd = true;
            if (common_delta == 0)
                common_delta = ec.delta;
            else if (common_delta != ec.delta)
                mixed_delta = true;
        }
    }
    if (any_numeric) {
        sp.status = SpectrumStatus::NumericOnly;
    } else if (!any_surd) {
        sp.status = SpectrumStatus::AllInteger;
    } else if (!any_nonzero_int && !mixed_delta) {
        // Zero eigenvalues are compatible with the surd alternative.
        sp.status = SpectrumStatus::AllSurd;
        sp.delta = common_delta;
    } else {
        sp.status = SpectrumStatus::Mixed;
    }
    return sp;
}

// ---------------------------------------------------------------------------
// Periodicity

enum class PeriodicityCase { IntegerCase, SurdCase, NotPeriodic, Unknown };

inline const char* to_string(PeriodicityCase c) {
    switch (c) {
        case PeriodicityCase::IntegerCase: return "IntegerCase";
        case PeriodicityCase::SurdCase: return "SurdCase";
        case PeriodicityCase::NotPeriodic: return "NotPeriodic";
        case PeriodicityCase::Unknown: return "Unknown";
    }
    return "?";
}

// coef * pi / sqrt(surd); surd = 1 gives a plain rational multiple of pi.
struct ExactAngle {
    Rat coef;
    long long surd = 1;

    double numeric() const {
        return to_double(coef) * pi / std::sqrt(static_cast<double>(surd));
    }

    // coef * π / √surd rendered like "π/2", "π/√2", "2π/(3√5)".
    std::string str() const {
        Int num = rat_num(coef);
        Int den = rat_den(coef);
        std::string s;
        if (num < 0) s += "-";
        Int a = num < 0 ? Int(-num) : num;
        if (a != 1) s += a.str();
        s += "π";
        if (surd == 1) {
            if (den != 1) s += "/" + den.str();
        } else if (den == 1) {
            s += "/√" + std::to_string(surd);
        } else {
            s += "/(" + den.str() + "√" + std::to_string(surd) + ")";
        }
        return s;
    }
};

enum class WitnessKind { None, MixedRatio, DistinctSurds, NonIntegralSquare };

struct NonPeriodicityWitness {
    WitnessKind kind = WitnessKind::None;
    double a = 0.0, b = 0.0;  // the offending eigenvalue(s)
    std::string detail;
};

struct PeriodicityVerdict {
    bool periodic = false;
    PeriodicityCase pcase = PeriodicityCase::Unknown;
    long long delta = 0;                      // SurdCase
    long long g = 0;                          // positive generator of difference group
    std::optional<ExactAngle> minimal_period; // absent when every time is a period
    NonPeriodicityWitness witness;
    bool bipartite_by_spectrum = false;       // surd case: spectral symmetry verified

    // Display form matches the JSON interface: "2π/<g>" or "2π/(<g>√<Δ>)".
    std::string period_str() const {
        if (!minimal_period) return "any";
        std::ostringstream out;
        if (pcase == PeriodicityCase::SurdCase)
            out << "2π/(" << g << "√" << delta << ")";
        else
            out << "2π/" << g;
        return out.str();
    }
};

// The classification of periodic graphs: all eigenvalues integral, or all
// nonzero eigenvalues rational multiples of a common sqrt(delta) (bipartite
// spectrum). A class that resisted exact recognition still certifies
// non-periodicity: its candidate integer and candidate square both failed
// exact division, so theta^2 is not an integer, which no periodic graph
// allows.
inline PeriodicityVerdict periodicity_verdict(const Spectrum& sp) {
    PeriodicityVerdict v;
    switch (sp.status) {
        case SpectrumStatus::AllInteger: {
            v.periodic = true;
            v.pcase = PeriodicityCase::IntegerCase;
            if (sp.classes.size() >= 2) {
                Int g = 0;
                const Int& base = sp.classes.front().k;
                for (const auto& ec : sp.classes) g = boost::multiprecision::gcd(g, abs(ec.k - base));
                v.g = g.convert_to<long long>();
                v.minimal_period = ExactAngle{Rat(2, v.g), 1};
            }
            return v;
        }
        case SpectrumStatus::AllSurd: {
            v.periodic = true;
            v.pcase = PeriodicityCase::SurdCase;
            v.delta = sp.delta;
            // Symmetry of the certified classes: +q and -q pair off with
            // equal multiplicities. Symmetric spectra have no closed walks
            // of odd length, so this doubles as the bipartiteness check.
            bool symmetric = true;
            for (const auto& ec : sp.classes) {
                if (ec.kind != EigKind::Surd) continue;
                bool found = false;
                for (const auto& other : sp.classes)
                    if (other.kind == EigKind::Surd && other.q == -ec.q &&
                        other.multiplicity == ec.multiplicity)
                        found = true;
                if (!found) symmetric = false;
            }
            if (!symmetric)
                throw integrity_error("periodicity_verdict: surd spectrum is not symmetric");
            v.bipartite_by_spectrum = true;
            Int g = 0;
            // Include the zero class (q = 0) in the differences.
            std::vector<Int> qs;
            for (const auto& ec : sp.classes) qs.push_back(ec.kind == EigKind::Surd ? ec.q : Int(0));
            for (const Int& q : qs) g = boost::multiprecision::gcd(g, abs(q - qs.front()));
            if (g != 0) {
                v.g = g.convert_to<long long>();
                v.minimal_period = ExactAngle{Rat(2, v.g), sp.delta};
            }
            return v;
        }
        case SpectrumStatus::Mixed: {
            v.periodic = false;
            v.pcase = PeriodicityCase::NotPeriodic;
            // Witness pair: a nonzero integer against a surd, or two surds
            // over distinct radicals; either ratio is irrational.
            const EigenvalueClass* nz_int = nullptr;
            const EigenvalueClass* surd1 = nullptr;
            const EigenvalueClass* surd2 = nullptr;
            for (const auto& ec : sp.classes) {
                if (ec.kind == EigKind::Integer && ec.k != 0 && !nz_int) nz_int = &ec;
                if (ec.kind == EigKind::Surd) {
                    if (!surd1)
                        surd1 = &ec;
                    else if (ec.delta != surd1->delta && !surd2)
                        surd2 = &ec;
                }
            }
            if (nz_int && surd1) {
                v.witness = {WitnessKind::MixedRatio, nz_int->value, surd1->value,
                             "ratio " + nz_int->exact_str() + " : " + surd1->exact_str() +
                                 " is irrational"};
            } else if (surd1 && surd2) {
                v.witness = {WitnessKind::DistinctSurds, surd1->value, surd2->value,
                             "ratio " + surd1->exact_str() + " : " + surd2->exact_str() +
                                 " is irrational"};
            } else {
                throw integrity_error("periodicity_verdict: Mixed status without witness pair");
            }
            return v;
        }
        case SpectrumStatus::NumericOnly: {
            const EigenvalueClass* num = nullptr;
            for (const auto& ec : sp.classes)
                if (ec.kind == EigKind::Numeric) num = &ec;
            if (!num) throw integrity_error("periodicity_verdict: NumericOnly without numeric class");
            v.periodic = false;
            v.pcase = PeriodicityCase::NotPeriodic;
            std::ostringstream d;
            d << "eigenvalue near " << num->value
              << " has a non-integral square, which periodicity forbids";
            v.witness = {WitnessKind::NonIntegralSquare, num->value, num->value * num->value,
                         d.str()};
            return v;
        }
    }
    return v;
}

// Every eigenvalue of a periodic graph squares to an integer; the exact
// classes make this a tautology, so a failure means the verdict is broken.
inline bool square_eigenvalue_check(const Spectrum& sp) {
    for (const auto& ec : sp.classes)
        if (ec.kind == EigKind::Numeric) return false;
    return true;
}

struct MomentReport {
    Int vertex_sum = 0;       // sum of multiplicities
    Int edge_pair_sum = 0;    // sum of m * theta^2 when exact
    long long edges = 0;      // reference edge count
    bool exact = false;
    double residual_first = 0.0;   // |sum m*theta| in the numeric path
    double residual_second = 0.0;  // |sum m*theta^2 - 2|E|| in the numeric path
};

inline constexpr double moment_numeric_tol = 1e-8;

// Power sum checks: multiplicities sum to n, the spectrum is traceless, and
// the second moment counts edge ends. The edge count is read off the t^{n-2}
// coefficient of the characteristic polynomial; a supplied graph must agree.
inline MomentReport moment_checks(const Spectrum& sp, const Graph* g = nullptr) {
    MomentReport rep;
    int n = sp.n();
    Int e_from_poly = n >= 2 ? -sp.charpoly.poly.coeff(n - 2) : Int(0);
    if (g) {
        if (g->n() != n) throw integrity_error("moment_checks: graph order does not match spectrum");
        if (Int(static_cast<long long>(g->edge_count())) != e_from_poly)
            throw integrity_error("moment_checks: characteristic polynomial edge count " +
                                  e_from_poly.str() + " does not match graph");
    }
    rep.edges = e_from_poly.convert_to<long long>();

    for (const auto& ec : sp.classes) rep.vertex_sum += ec.multiplicity;
    if (rep.vertex_sum != n)
        throw integrity_error("moment_checks: multiplicities sum to " + rep.vertex_sum.str() +
                              ", expected " + std::to_string(n));

    bool all_exact = true;
    for (const auto& ec : sp.classes)
        if (ec.kind == EigKind::Numeric) all_exact = false;
    rep.exact = all_exact;

    if (all_exact) {
        // Rational and surd parts must vanish separately in the trace.
        Int rational_part = 0;
        std::vector<std::pair<long long, Int>> surd_parts;  // per delta
        Int second = 0;
        for (const auto& ec : sp.classes) {
            Int m = ec.multiplicity;
            if (ec.kind == EigKind::Integer) {
                rational_part += m * ec.k;
                second += m * ec.k * ec.k;
            } else {
                auto it = std::find_if(surd_parts.begin(), surd_parts.end(),
                                       [&](const auto& p) { return p.first == ec.delta; });
                if (it == surd_parts.end())
                    surd_parts.emplace_back(ec.delta, m * ec.q);
                else
                    it->second += m * ec.q;
                second += m * ec.q * ec.q * Int(ec.delta);
            }
        }
        if (rational_part != 0)
            throw integrity_error("moment_checks: trace has nonzero rational part " +
                                  rational_part.str());
        for (const auto& [d, s] : surd_parts)
            if (s != 0)
                throw integrity_error("moment_checks: trace has nonzero √" +
                                      std::to_string(d) + " part " + s.str());
        rep.edge_pair_sum = second;
        if (second != 2 * e_from_poly)
            throw integrity_error("moment_checks: second moment " + second.str() +
                                  " does not equal twice the edge count " + e_from_poly.str());
    } else {
        double first = 0.0, second = 0.0;
        for (const auto& ec : sp.classes) {
            first += ec.multiplicity * ec.value;
            second += ec.multiplicity * ec.value * ec.value;
        }
        rep.residual_first = std::abs(first);
        rep.residual_second = std::abs(second - 2.0 * static_cast<double>(rep.edges));
        if (rep.residual_first > moment_numeric_tol || rep.residual_second > moment_numeric_tol)
            throw integrity_error("moment_checks: numeric moment residuals exceed tolerance");
    }
    return rep;
}

}  // namespace pstlab

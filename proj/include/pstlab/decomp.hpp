// Numeric spectral decomposition grouped by exact eigenvalue classes, the
// two support computations (numeric projector diagonal, exact pole
// cancellation), and the ratio condition at a vertex.
#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "pstlab/charpoly.hpp"
#include "pstlab/graph.hpp"
#include "pstlab/matrix.hpp"
#include "pstlab/spectrum.hpp"

namespace pstlab {

inline double eigensolver_residual_target() {
    if (const char* e = std::getenv("PSTLAB_PRECISION")) {
        char* end = nullptr;
        double v = std::strtod(e, &end);
        if (end != e && v > 0.0 && v < 1.0) return v;
    }
    return 1e-12;
}

struct JacobiResult {
    std::vector<double> values;
    RealMatrix vectors;  // column i pairs with values[i]
    int sweeps = 0;
    double off_norm = 0.0;
};

// Cyclic Jacobi on a dense symmetric matrix. Simple and provably convergent;
// quadratic convergence makes the 10^-12 residual target cheap at our sizes.
inline JacobiResult jacobi_eigensym(const RealMatrix& a, double target = eigensolver_residual_target()) {
    if (a.rows() != a.cols()) throw error("jacobi_eigensym: matrix not square");
    int n = static_cast<int>(a.rows());
    if (!a.is_symmetric()) throw error("jacobi_eigensym: matrix not symmetric");
    RealMatrix w = a;
    RealMatrix v = RealMatrix::identity(n);

    double fro = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) fro += w(i, j) * w(i, j);
    double scale = std::max(1.0, std::sqrt(fro));

    auto off_norm = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += 2.0 * w(p, q) * w(p, q);
        return std::sqrt(s);
    };

    JacobiResult res;
    const int max_sweeps = 60;
    double off = off_norm();
    int sweep = 0;
    while (off > target * scale && sweep < max_sweeps) {
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = w(p, q);
                if (apq == 0.0) continue;
                double tau = (w(q, q) - w(p, p)) / (2.0 * apq);
                double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int i = 0; i < n; ++i) {
                    double wip = w(i, p), wiq = w(i, q);
                    w(i, p) = c * wip - s * wiq;
                    w(i, q) = s * wip + c * wiq;
                }
                for (int i = 0; i < n; ++i) {
                    double wpi = w(p, i), wqi = w(q, i);
                    w(p, i) = c * wpi - s * wqi;
                    w(q, i) = s * wpi + c * wqi;
                }
                for (int i = 0; i < n; ++i) {
                    double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        ++sweep;
        off = off_norm();
    }
    if (off > target * scale)
        throw integrity_error("jacobi_eigensym: did not reach residual target after " +
                              std::to_string(max_sweeps) + " sweeps");
    res.sweeps = sweep;
    res.off_norm = off;
    res.values.resize(n);
    for (int i = 0; i < n; ++i) res.values[i] = w(i, i);
    res.vectors = std::move(v);
    return res;
}

// ---------------------------------------------------------------------------
// Spectral decomposition

inline constexpr double projector_tol = 1e-9;

struct SpectralDecomposition {
    std::vector<RealMatrix> projectors;  // ordered like spectrum.classes
    Spectrum spectrum;
    int n = 0;

    const RealMatrix& projector(int r) const { return projectors.at(r); }
};

// Build E_r by summing outer products of the eigenvectors whose eigenvalue
// lands in class r, then verify the projector calculus: idempotent, mutually
// orthogonal, resolving the identity, and reassembling A.
inline SpectralDecomposition eigendecompose(const Graph& g, const Spectrum& sp) {
    int n = g.n();
    if (n != sp.n()) throw error("eigendecompose: spectrum is for a different order");
    JacobiResult eig = jacobi_eigensym(g.adjacency_real());

    SpectralDecomposition dec;
    dec.n = n;
    dec.spectrum = sp;
    int nc = static_cast<int>(sp.classes.size());
    dec.projectors.assign(nc, RealMatrix(n, n, 0.0));
    std::vector<int> assigned(nc, 0);

    for (int i = 0; i < n; ++i) {
        int best = -1;
        double best_dist = 0.0;
        for (int r = 0; r < nc; ++r) {
            double d = std::abs(eig.values[i] - sp.classes[r].value);
            if (best < 0 || d < best_dist) {
                best = r;
                best_dist = d;
            }
        }
        if (best_dist > default_cluster_tol)
            throw error("eigendecompose: eigenvalue " + std::to_string(eig.values[i]) +
                        " matches no class of the spectrum");
        ++assigned[best];
        RealMatrix& e = dec.projectors[best];
        for (int r = 0; r < n; ++r) {
            double vr = eig.vectors(r, i);
            if (vr == 0.0) continue;
            for (int c = 0; c < n; ++c) e(r, c) += vr * eig.vectors(c, i);
        }
    }
    for (int r = 0; r < nc; ++r)
        if (assigned[r] != sp.classes[r].multiplicity)
            throw error("eigendecompose: class " + sp.classes[r].exact_str() + " expected " +
                        std::to_string(sp.classes[r].multiplicity) + " eigenvectors, got " +
                        std::to_string(assigned[r]));

    // Invariant sweep at the stated tolerance.
    RealMatrix sum_e(n, n, 0.0);
    RealMatrix sum_te(n, n, 0.0);
    for (int r = 0; r < nc; ++r) {
        const RealMatrix& e = dec.projectors[r];
        if (max_abs_diff(e * e, e) > projector_tol)
            throw integrity_error("eigendecompose: projector for class " +
                                  sp.classes[r].exact_str() + " is not idempotent");
        double tr = e.trace();
        if (std::abs(tr - sp.classes[r].multiplicity) > 1e-8)
            throw integrity_error("eigendecompose: projector rank mismatch for class " +
                                  sp.classes[r].exact_str());
        sum_e = sum_e + e;
        sum_te = sum_te + e.scaled(sp.classes[r].value);
    }
    for (int r = 0; r < nc; ++r)
        for (int s = r + 1; s < nc; ++s)
            if (max_abs(dec.projectors[r] * dec.projectors[s]) > projector_tol)
                throw integrity_error("eigendecompose: projectors for classes " +
                                      sp.classes[r].exact_str() + " and " +
                                      sp.classes[s].exact_str() + " are not orthogonal");
    if (max_abs_diff(sum_e, RealMatrix::identity(n)) > projector_tol)
        throw integrity_error("eigendecompose: projectors do not resolve the identity");
    if (max_abs_diff(sum_te, g.adjacency_real()) > projector_tol)
        throw integrity_error("eigendecompose: weighted projector sum does not rebuild A");
    return dec;
}

// ---------------------------------------------------------------------------
// Eigenvalue support

inline constexpr double support_threshold = 1e-8;

struct EigenvalueSupport {
    int u = 0;
    std::vector<int> classes;  // indices into spectrum.classes
    int dual_degree = 0;
};

// (E_r)_{uu} = ||E_r e_u||^2, so the diagonal entry decides membership.
inline EigenvalueSupport support(const SpectralDecomposition& dec, int u,
                                 double threshold = support_threshold) {
    if (u < 0 || u >= dec.n) throw error("support: vertex out of range");
    EigenvalueSupport s;
    s.u = u;
    for (int r = 0; r < static_cast<int>(dec.projectors.size()); ++r)
        if (dec.projectors[r](u, u) > threshold) s.classes.push_back(r);
    if (s.classes.empty()) throw integrity_error("support: empty support at vertex " +
                                                 std::to_string(u));
    s.dual_degree = static_cast<int>(s.classes.size()) - 1;
    return s;
}

// Exact support: poles of phi(X \ u) / phi(X) after cancellation, i.e. roots
// of phi / gcd(phi, phi_deleted). The quotient is squarefree (interlacing
// bounds multiplicities), so Sturm counting decides membership for classes
// with no exact form.
inline std::vector<int> support_via_charpoly(const Graph& g, const Spectrum& sp, int u) {
    if (g.n() != sp.n()) throw error("support_via_charpoly: spectrum is for a different order");
    if (u < 0 || u >= g.n()) throw error("support_via_charpoly: vertex out of range");
    if (g.n() == 1) return {0};

    IPoly phi = sp.charpoly.poly;
    IPoly phi_del = char_poly(delete_vertex(g, u)).poly;
    IPoly gcd = poly_gcd(phi, phi_del);
    auto quot = phi.try_divide(gcd);
    if (!quot || quot->degree() < 1)
        throw integrity_error("support_via_charpoly: degenerate gcd cancellation");
    IPoly q = *quot;

    std::vector<int> out;
    double min_gap = 1.0;
    for (std::size_t i = 0; i + 1 < sp.classes.size(); ++i)
        min_gap = std::min(min_gap, sp.classes[i].value - sp.classes[i + 1].value);
    std::optional<SturmChain> chain;  // built lazily, only numeric classes need it

    for (int r = 0; r < static_cast<int>(sp.classes.size()); ++r) {
        const EigenvalueClass& ec = sp.classes[r];
        bool in = false;
        switch (ec.kind) {
            case EigKind::Integer:
                in = q.eval(ec.k) == 0;
                break;
            case EigKind::Surd: {
                // Conjugate closure: t^2 - q^2*delta divides q iff both signs
                // are poles, and supports are closed under conjugation.
                Int s = ec.q * ec.q * Int(ec.delta);
                in = q.try_divide(IPoly::quadratic_root_square(s)).has_value();
                break;
            }
            case EigKind::Numeric: {
                if (!chain) chain.emplace(q);
                double d = std::min(1e-6, min_gap / 4.0);
                in = chain->count_roots(Rat(ec.value - d), Rat(ec.value + d)) > 0;
                break;
            }
        }
        if (in) out.push_back(r);
    }
    if (out.empty()) throw integrity_error("support_via_charpoly: empty support at vertex " +
                                           std::to_string(u));
    return out;
}

// ---------------------------------------------------------------------------
// Ratio condition

enum class Ternary { False, True, Unknown };

struct RatioWitness {
    // Class indices of the offending quadruple (theta_k - theta_l) over
    // (theta_r - theta_s).
    int k = -1, l = -1, r = -1, s = -1;
    std::string detail;
};

struct RatioConditionResult {
    Ternary status = Ternary::Unknown;
    RatioWitness witness;
};

// All ratios of differences of supported eigenvalues rational. Supported
// classes live in Q(sqrt(delta)); writing each difference as p + q*sqrt(delta),
// the ratio of two differences is rational iff the (p, q) vectors are
// parallel, so one pass against a reference difference settles every pair.
inline RatioConditionResult ratio_condition(const EigenvalueSupport& sup, const Spectrum& sp) {
    RatioConditionResult res;
    std::vector<const EigenvalueClass*> cls;
    for (int idx : sup.classes) cls.push_back(&sp.classes.at(idx));

    long long delta = 0;
    for (const auto* ec : cls) {
        if (ec->kind == EigKind::Numeric) {
            res.status = Ternary::Unknown;
            res.witness.detail = "support contains a class with no exact form";
            return res;
        }
        if (ec->kind == EigKind::Surd) {
            if (delta == 0) {
                delta = ec->delta;
            } else if (delta != ec->delta) {
                // Two distinct radicals: their (conjugation-closed) classes
                // give an irrational ratio outright.
                int first = -1, second = -1;
                for (std::size_t i = 0; i < cls.size(); ++i) {
                    if (cls[i]->kind != EigKind::Surd) continue;
                    if (cls[i]->delta == delta && first < 0) first = static_cast<int>(i);
                    if (cls[i]->delta == ec->delta) second = static_cast<int>(i);
                }
                auto conjugate = [&](int i) {
                    for (std::size_t j = 0; j < cls.size(); ++j)
                        if (cls[j]->kind == EigKind::Surd && cls[j]->delta == cls[i]->delta &&
                            cls[j]->q == -cls[i]->q)
                            return static_cast<int>(j);
                    return -1;
                };
                int fc = conjugate(first), sc = conjugate(second);
                res.status = Ternary::False;
                res.witness = {sup.classes[first], fc >= 0 ? sup.classes[fc] : sup.classes[second],
                               sup.classes[second], sc >= 0 ? sup.classes[sc] : sup.classes[first],
                               "supported eigenvalues involve both √" + std::to_string(delta) +
                                   " and √" + std::to_string(ec->delta)};
                return res;
            }
        }
    }

    // Differences as (p, q) in Q(sqrt(delta)); integers sit at q = 0.
    auto part = [&](const EigenvalueClass& ec) {
        return ec.kind == EigKind::Integer ? std::pair<Int, Int>{ec.k, 0}
                                           : std::pair<Int, Int>{0, ec.q};
    };
    struct Diff {
        Int p, q;
        int a, b;  // positions in cls
    };
    std::vector<Diff> diffs;
    for (std::size_t i = 0; i < cls.size(); ++i)
        for (std::size_t j = i + 1; j < cls.size(); ++j) {
            auto [pi, qi] = part(*cls[i]);
            auto [pj, qj] = part(*cls[j]);
            diffs.push_back({pi - pj, qi - qj, static_cast<int>(i), static_cast<int>(j)});
        }
    for (std::size_t i = 1; i < diffs.size(); ++i) {
        if (diffs[i].p * diffs[0].q != diffs[0].p * diffs[i].q) {
            res.status = Ternary::False;
            res.witness = {sup.classes[diffs[i].a], sup.classes[diffs[i].b],
                           sup.classes[diffs[0].a], sup.classes[diffs[0].b],
                           "(" + cls[diffs[i].a]->exact_str() + " - " + cls[diffs[i].b]->exact_str() +
                               ") / (" + cls[diffs[0].a]->exact_str() + " - " +
                               cls[diffs[0].b]->exact_str() + ") is irrational"};
            return res;
        }
    }
    res.status = Ternary::True;
    return res;
}

// ---------------------------------------------------------------------------
// Vertex-level periodicity

struct VertexPeriodicity {
    Ternary periodic = Ternary::Unknown;
    std::optional<ExactAngle> candidate_period;
    RatioConditionResult ratio;
};

// Necessary-condition verdict from the ratio condition on the vertex support;
// when it passes, the candidate period comes from the difference gcd of the
// supported eigenvalues alone.
inline VertexPeriodicity is_periodic_at_vertex(const SpectralDecomposition& dec, int u) {
    VertexPeriodicity out;
    EigenvalueSupport sup = support(dec, u);
    out.ratio = ratio_condition(sup, dec.spectrum);
    if (out.ratio.status == Ternary::False) {
        out.periodic = Ternary::False;
        return out;
    }
    if (out.ratio.status == Ternary::Unknown) {
        out.periodic = Ternary::Unknown;
        return out;
    }
    out.periodic = Ternary::True;
    if (sup.classes.size() < 2) return out;  // every time is a period

    bool any_surd = false;
    long long delta = 1;
    for (int idx : sup.classes)
        if (dec.spectrum.classes[idx].kind == EigKind::Surd) {
            any_surd = true;
            delta = dec.spectrum.classes[idx].delta;
        }
    auto coef = [&](int idx) {
        const EigenvalueClass& ec = dec.spectrum.classes[idx];
        return ec.kind == EigKind::Integer ? ec.k : ec.q;
    };
    // With the ratio condition true, either all supported classes are
    // integers or all nonzero ones share one surd; the difference gcd in the
    // respective lattice gives the candidate 2*pi/(g*sqrt(delta)).
    Int g = 0;
    Int base = coef(sup.classes.front());
    for (int idx : sup.classes) g = boost::multiprecision::gcd(g, abs(coef(idx) - base));
    if (g == 0) {
        out.candidate_period.reset();
        return out;
    }
    out.candidate_period = ExactAngle{Rat(2, g.convert_to<long long>()), any_surd ? delta : 1};
    return out;
}

}  // namespace pstlab

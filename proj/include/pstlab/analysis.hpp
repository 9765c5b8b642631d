// End-to-end pipeline: exact spectrum, periodicity verdict, structural
// checklist, transfer detection, all serialized into one stable JSON report.
// Field order is fixed and timings are opt-in, so identical input gives
// byte-identical output.
#pragma once

#include <chrono>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "pstlab/charpoly.hpp"
#include "pstlab/coherent.hpp"
#include "pstlab/decomp.hpp"
#include "pstlab/evolution.hpp"
#include "pstlab/graph.hpp"
#include "pstlab/hadamard.hpp"
#include "pstlab/spectrum.hpp"

namespace pstlab {

using ordered_json = nlohmann::ordered_json;

inline constexpr int analysis_schema_version = 1;

struct AnalysisOptions {
    double cluster_tol = default_cluster_tol;
    double support_tol = support_threshold;
    double pre_gate = pst_pre_gate;
    double promotion_gate = pst_promotion_gate;
    bool force = false;      // scan even when an obstruction rules transfer out
    bool timings = false;    // include wall times (breaks byte-stable output)
    bool dump_projectors = false;
    int grid_points = 4096;  // fallback grid scan over [0, scan_t1]
    double scan_t1 = 2.0 * pi;
    int scan_max_n = 256;    // all-pairs scan cutoff
};

// ---------------------------------------------------------------------------
// JSON pieces

inline ordered_json graph_json(const Graph& g) {
    ordered_json j;
    j["n"] = g.n();
    ordered_json edges = ordered_json::array();
    for (auto [u, v] : g.edges()) edges.push_back(ordered_json::array({u, v}));
    j["edges"] = std::move(edges);
    if (!g.labels().empty()) j["labels"] = g.labels();
    return j;
}

inline Graph graph_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw parse_error("graph json: need an object with \"n\" and \"edges\"", 0);
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw parse_error("graph json: each edge must be a two-element array", 0);
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return Graph(n, edges, std::move(labels));
}

inline ordered_json spectrum_json(const Spectrum& sp) {
    ordered_json j;
    j["status"] = to_string(sp.status);
    if (sp.status == SpectrumStatus::AllSurd) j["delta"] = sp.delta;
    ordered_json classes = ordered_json::array();
    for (const auto& ec : sp.classes) {
        ordered_json c;
        c["kind"] = ec.kind == EigKind::Integer ? "integer"
                    : ec.kind == EigKind::Surd  ? "surd"
                                                : "numeric";
        c["exact"] = ec.exact_str();
        c["value"] = ec.value;
        c["multiplicity"] = ec.multiplicity;
        classes.push_back(std::move(c));
    }
    j["classes"] = std::move(classes);
    return j;
}

inline ordered_json verdict_json(const PeriodicityVerdict& v) {
    ordered_json j;
    j["periodic"] = v.periodic;
    j["case"] = to_string(v.pcase);
    if (v.periodic) {
        j["minimal_period"] = v.period_str();
        if (v.minimal_period) j["minimal_period_numeric"] = v.minimal_period->numeric();
        if (v.pcase == PeriodicityCase::SurdCase) {
            j["delta"] = v.delta;
            j["bipartite_by_spectrum"] = v.bipartite_by_spectrum;
        }
    } else if (v.witness.kind != WitnessKind::None) {
        ordered_json w;
        w["kind"] = v.witness.kind == WitnessKind::MixedRatio        ? "mixed-ratio"
                    : v.witness.kind == WitnessKind::DistinctSurds   ? "distinct-surds"
                                                                     : "non-integral-square";
        w["detail"] = v.witness.detail;
        j["witness"] = std::move(w);
    }
    return j;
}

inline ordered_json certificate_json(const PSTCertificate& c) {
    ordered_json j;
    j["u"] = c.u;
    j["v"] = c.v;
    ordered_json tau;
    if (c.tau_exact) tau["exact"] = c.tau_exact->str();
    tau["numeric"] = c.tau;
    j["tau"] = std::move(tau);
    j["gamma"] = ordered_json{{"re", c.gamma.real()}, {"im", c.gamma.imag()}};
    j["partial"] = c.partial;
    if (c.permutation) j["permutation"] = *c.permutation;
    j["residual"] = c.residual;
    j["lemma_residual"] = c.lemma_residual;
    return j;
}

inline ordered_json enumerator_json(const MultiplicityEnumerator& mu, const UnitCircleResult& uc) {
    ordered_json j;
    j["mu"] = mu.str();
    j["mu_at_one"] = mu.eval_at_one().str();
    ordered_json z;
    z["has_zero"] = uc.has_zero;
    if (uc.has_zero)
        z["witness"] = ordered_json{{"re", uc.witness.real()}, {"im", uc.witness.imag()}};
    z["detail"] = uc.detail;
    j["unit_circle"] = std::move(z);
    return j;
}

// ---------------------------------------------------------------------------
// Input formats

// Bare spectrum file: one "eigenvalue:multiplicity" per line, '#' comments.
inline std::vector<std::pair<long long, int>> parse_spectrum_file(const std::string& text) {
    std::vector<std::pair<long long, int>> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t line_pos = pos;
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw parse_error("spectrum: expected \"eigenvalue:multiplicity\"", line_pos);
        try {
            std::size_t used = 0;
            long long value = std::stoll(line.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument("trailing");
            std::string mult_str = line.substr(colon + 1);
            int mult = std::stoi(mult_str, &used);
            if (used != mult_str.size()) throw std::invalid_argument("trailing");
            out.push_back({value, mult});
        } catch (const std::exception&) {
            throw parse_error("spectrum: expected \"eigenvalue:multiplicity\"", line_pos);
        }
    }
    if (out.empty()) throw parse_error("spectrum: no classes given", 0);
    return out;
}

// Sniff the graph format: JSON object, "n <count>" edge list, else graph6.
inline Graph parse_graph_text(const std::string& text, const std::string& format = "auto") {
    if (format == "json") return graph_from_json(ordered_json::parse(text));
    if (format == "edges") return parse_edge_list(text);
    if (format == "graph6") return parse_graph6(text);
    if (format != "auto") throw error("unknown graph format \"" + format + "\"");
    std::size_t a = text.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) throw parse_error("empty graph input", 0);
    if (text[a] == '{') return graph_from_json(ordered_json::parse(text));
    if (text[a] == 'n' && a + 1 < text.size() && (text[a + 1] == ' ' || text[a + 1] == '\t'))
        return parse_edge_list(text);
    return parse_graph6(text);
}

// ---------------------------------------------------------------------------
// Pipeline

namespace detail {

struct StageClock {
    std::chrono::steady_clock::time_point last = std::chrono::steady_clock::now();
    ordered_json ms = ordered_json::object();

    void mark(const char* name) {
        auto now = std::chrono::steady_clock::now();
        ms[name] = std::chrono::duration<double, std::milli>(now - last).count();
        last = now;
    }
};

}  // namespace detail

inline ordered_json analyze_graph(const Graph& g, const std::string& id,
                                  const AnalysisOptions& opt = {}) {
    detail::StageClock clock;

    CharPoly cp = char_poly(g);
    clock.mark("charpoly");
    JacobiResult jac = jacobi_eigensym(g.adjacency_real());
    clock.mark("eigensolver");
    Spectrum sp = recognize_spectrum(cp, jac.values, opt.cluster_tol);
    MomentReport moments = moment_checks(sp, &g);
    PeriodicityVerdict verdict = periodicity_verdict(sp);
    clock.mark("spectrum");
    SpectralDecomposition dec = eigendecompose(g, sp);
    clock.mark("decomposition");
    PstPreconditions pre = pst_preconditions(g, &cp);
    clock.mark("structure");

    std::vector<Obstruction> obstructions = pre.obstructions;
    ordered_json enumerator;
    if (sp.status == SpectrumStatus::AllInteger) {
        MultiplicityEnumerator mu = multiplicity_enumerator(sp);
        UnitCircleResult uc = unit_circle_zero_test(mu);
        enumerator = enumerator_json(mu, uc);
        // tr H(t) = mu(e^{it}); a homogeneous closure makes any transfer
        // matrix a scalar times a fixed-point-free permutation, whose trace
        // vanishes, so mu without unit-circle zeros rules transfer out.
        if (!uc.has_zero && pre.homogeneous)
            obstructions.push_back(
                {"no-unit-circle-zero",
                 "the multiplicity enumerator has no zero on the unit circle, but a "
                 "transfer time would make it vanish at e^{it}"});
    }
    clock.mark("enumerator");

    // Transfer detection: certify at the exact candidate times the vertex
    // periods dictate (a transfer time is half a vertex period), fall back to
    // a grid scan when that finds nothing. Scan-refined maxima localize a
    // fidelity-1 peak only to about 1e-8 because the curve is flat to double
    // precision there; the exact candidates do not have that problem.
    bool obstructed = !obstructions.empty();
    std::vector<ExactAngle> candidates;
    std::vector<PSTCertificate> certificates;
    bool scanned = false;
    std::string skip_reason;
    ordered_json best_max;

    if (obstructed && !opt.force) {
        skip_reason = "obstructed:";
        for (const auto& o : obstructions) skip_reason += " " + o.code;
    } else {
        for (int u = 0; u < g.n(); ++u) {
            VertexPeriodicity vp = is_periodic_at_vertex(dec, u);
            if (!vp.candidate_period) continue;
            ExactAngle half{vp.candidate_period->coef / 2, vp.candidate_period->surd};
            bool known = false;
            for (const auto& c : candidates)
                if (c.surd == half.surd && c.coef == half.coef) known = true;
            if (!known) candidates.push_back(half);
        }
        std::sort(candidates.begin(), candidates.end(),
                  [](const ExactAngle& a, const ExactAngle& b) { return a.numeric() < b.numeric(); });

        std::set<std::pair<int, int>> done;
        for (const ExactAngle& tau : candidates) {
            UnitaryEvolution ev = evolve(dec, tau.numeric());
            for (int u = 0; u < g.n(); ++u) {
                int best = -1;
                double best_mag = 0.0;
                for (int v = 0; v < g.n(); ++v) {
                    if (v == u) continue;
                    double mag = std::abs(ev.h(v, u));
                    if (mag > best_mag) {
                        best_mag = mag;
                        best = v;
                    }
                }
                if (best < 0 || best_mag < opt.promotion_gate) continue;
                auto key = std::minmax(u, best);
                if (!done.insert({key.first, key.second}).second) continue;
                certificates.push_back(certify_pst(dec, key.first, key.second, tau.numeric(), tau));
            }
        }

        if (certificates.empty() && g.n() >= 2) {
            if (g.n() > opt.scan_max_n) {
                skip_reason = "grid scan skipped: n > " + std::to_string(opt.scan_max_n);
            } else {
                scanned = true;
                std::set<std::pair<int, int>> done_scan;
                double top_f = -1.0;
                for (int u = 0; u < g.n(); ++u)
                    for (int v = u + 1; v < g.n(); ++v) {
                        ScanResult sr = pst_scan(dec, u, v, 0.0, opt.scan_t1, opt.grid_points);
                        for (const ScanMaximum& m : sr.maxima) {
                            if (m.fidelity > top_f) {
                                top_f = m.fidelity;
                                best_max = ordered_json{
                                    {"u", u}, {"v", v}, {"t", m.t}, {"fidelity", m.fidelity}};
                            }
                            if (m.promoted && done_scan.insert({u, v}).second)
                                certificates.push_back(certify_pst(dec, u, v, m.t));
                        }
                    }
            }
        }
    }
    clock.mark("transfer");

    // A certificate alongside a proved obstruction means a bug somewhere.
    bool full_cert = false;
    for (const auto& c : certificates)
        if (!c.partial) full_cert = true;
    if (full_cert && !obstructions.empty())
        throw integrity_error("analysis: full transfer certificate on an obstructed graph");

    ordered_json j;
    j["schema_version"] = analysis_schema_version;
    j["id"] = id;
    j["kind"] = "graph";
    j["tolerances"] = ordered_json{{"cluster", opt.cluster_tol},
                                   {"support", opt.support_tol},
                                   {"projector", projector_tol},
                                   {"eigensolver_target", eigensolver_residual_target()},
                                   {"pre_gate", opt.pre_gate},
                                   {"promotion_gate", opt.promotion_gate}};
    j["graph"] = graph_json(g);
    j["charpoly"] = cp.poly.str("t");
    j["spectrum"] = spectrum_json(sp);
    j["moments"] = ordered_json{{"edges", moments.edges}, {"exact", moments.exact}};
    j["periodicity"] = verdict_json(verdict);

    ordered_json structure;
    structure["walk_regular"] = pre.walk.walk_regular;
    if (pre.walk.failing_power) structure["walk_failing_power"] = *pre.walk.failing_power;
    if (pre.closure_ran)
        structure["closure"] = ordered_json{{"classes", pre.closure_classes},
                                            {"homogeneous", pre.homogeneous},
                                            {"commutative", pre.commutative}};
    structure["connected"] = pre.connected;
    structure["bipartite"] = is_bipartite(g);
    if (pre.connected) {
        structure["diameter"] = pre.diameter;
        structure["distance_regular"] = pre.distance_regular;
    }
    if (pre.antipodal)
        structure["antipodal"] = ordered_json{{"antipodal", pre.antipodal->antipodal},
                                              {"class_size", pre.antipodal->class_size}};
    j["structure"] = std::move(structure);

    ordered_json obs = ordered_json::array();
    for (const auto& o : obstructions)
        obs.push_back(ordered_json{{"code", o.code}, {"detail", o.detail}});
    j["obstructions"] = std::move(obs);
    if (!enumerator.is_null()) j["enumerator"] = std::move(enumerator);

    ordered_json pst;
    pst["method"] = !skip_reason.empty() && certificates.empty() ? "skipped"
                    : scanned                                    ? "grid-scan"
                                                                 : "candidate-times";
    if (!skip_reason.empty()) pst["skip_reason"] = skip_reason;
    ordered_json cand = ordered_json::array();
    for (const auto& c : candidates) cand.push_back(c.str());
    pst["candidate_times"] = std::move(cand);
    std::sort(certificates.begin(), certificates.end(),
              [](const PSTCertificate& a, const PSTCertificate& b) {
                  return std::pair(a.u, a.v) < std::pair(b.u, b.v);
              });
    ordered_json certs = ordered_json::array();
    for (const auto& c : certificates) certs.push_back(certificate_json(c));
    pst["certificates"] = std::move(certs);
    if (!best_max.is_null()) pst["best_scan_maximum"] = std::move(best_max);
    j["pst"] = std::move(pst);

    if (opt.dump_projectors) {
        ordered_json ps = ordered_json::array();
        for (const RealMatrix& e : dec.projectors) {
            ordered_json rows = ordered_json::array();
            for (std::size_t i = 0; i < e.rows(); ++i) {
                ordered_json row = ordered_json::array();
                for (std::size_t k = 0; k < e.cols(); ++k) row.push_back(e(i, k));
                rows.push_back(std::move(row));
            }
            ps.push_back(std::move(rows));
        }
        j["projectors"] = std::move(ps);
    }
    clock.mark("serialize");
    if (opt.timings) j["timings_ms"] = std::move(clock.ms);
    return j;
}

// Spectrum-level analysis: periodicity and the enumerator argument with no
// graph behind them.
inline ordered_json analyze_spectrum(const std::vector<std::pair<long long, int>>& classes,
                                     const std::string& id, const AnalysisOptions& opt = {}) {
    Spectrum sp = spectrum_from_integer_classes(classes);
    PeriodicityVerdict verdict = periodicity_verdict(sp);
    MultiplicityEnumerator mu = multiplicity_enumerator(sp);
    UnitCircleResult uc = unit_circle_zero_test(mu);

    ordered_json j;
    j["schema_version"] = analysis_schema_version;
    j["id"] = id;
    j["kind"] = "spectrum";
    j["spectrum"] = spectrum_json(sp);
    j["periodicity"] = verdict_json(verdict);
    j["enumerator"] = enumerator_json(mu, uc);
    j["conclusion"] =
        uc.has_zero
            ? "μ has a unit-circle zero; transfer is not excluded at this level"
            : "μ has no zero on the unit circle: no walk-regular graph with this spectrum "
              "admits perfect state transfer";
    (void)opt;
    return j;
}

}  // namespace pstlab

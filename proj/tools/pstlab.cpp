// Command line front end: construct graphs, run the analysis pipeline,
// scan fidelity curves, print the multiplicity enumerator.
// Exit codes: 0 success, 2 input error, 3 numeric integrity violation.
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "pstlab/pstlab.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pstlab::error("cannot read \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pstlab::error("cannot write \"" + path + "\"");
    out << content;
}

// Hadamard sources: a .had file, the literal "base4", or "base4^k" for the
// k-fold Kronecker power.
pstlab::HadamardMatrix load_hadamard(const std::string& src) {
    if (src == "base4") return pstlab::base4();
    if (src.rfind("base4^", 0) == 0) {
        int k = 0;
        try {
            std::size_t used = 0;
            k = std::stoi(src.substr(6), &used);
            if (used != src.size() - 6) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw pstlab::error("bad hadamard power \"" + src + "\"");
        }
        if (k < 1) throw pstlab::error("hadamard power must be at least 1");
        pstlab::HadamardMatrix h = pstlab::base4();
        for (int i = 1; i < k; ++i) h = pstlab::kron(h, pstlab::base4());
        return h;
    }
    return pstlab::parse_hadamard(read_file(src));
}

long parse_count(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw pstlab::error(std::string("bad ") + what + " \"" + s + "\"");
    }
}

std::string format_graph(const pstlab::Graph& g, std::string format) {
    if (format == "auto") format = g.has_labels() ? "json" : "graph6";
    if (format == "graph6") {
        if (g.has_labels())
            std::cerr << "note: graph6 carries no labels, dropping them\n";
        return pstlab::to_graph6(g) + "\n";
    }
    if (format == "edges") return pstlab::to_edge_list(g);
    if (format == "json") return pstlab::graph_json(g).dump(2) + "\n";
    throw pstlab::error("unknown output format \"" + format + "\"");
}

int run_construct(const std::string& kind, const std::vector<std::string>& params,
                  const std::string& out_path, const std::string& format) {
    using namespace pstlab;
    auto need = [&](std::size_t k) {
        if (params.size() != k)
            throw error("construct " + kind + ": expected " + std::to_string(k) +
                        " parameter(s), got " + std::to_string(params.size()));
    };
    Graph g;
    if (kind == "path") {
        need(1);
        g = path(static_cast<int>(parse_count(params[0], "vertex count")));
    } else if (kind == "cycle") {
        need(1);
        g = cycle(static_cast<int>(parse_count(params[0], "vertex count")));
    } else if (kind == "complete") {
        need(1);
        g = complete(static_cast<int>(parse_count(params[0], "vertex count")));
    } else if (kind == "hypercube") {
        need(1);
        g = hypercube(static_cast<int>(parse_count(params[0], "dimension")));
    } else if (kind == "cartesian") {
        need(2);
        Graph a = parse_graph_text(read_file(params[0]));
        Graph b = parse_graph_text(read_file(params[1]));
        g = cartesian_product(a, b);
    } else if (kind == "xh-from-hadamard") {
        need(1);
        g = graph_from_rshcd(load_hadamard(params[0])).graph;
    } else if (kind == "srg-from-hadamard") {
        need(1);
        g = srg_from_rshcd(load_hadamard(params[0]));
    } else {
        throw error("unknown construct kind \"" + kind + "\"");
    }
    write_output(out_path, format_graph(g, format));
    return 0;
}

int run_analyze(const std::vector<std::string>& files, const std::string& format,
                const pstlab::AnalysisOptions& opt, bool spectrum_only, int jobs) {
    using namespace pstlab;
    std::vector<ordered_json> reports(files.size());
    std::vector<int> codes(files.size(), 0);

    auto one = [&](std::size_t i) {
        try {
            std::string text = read_file(files[i]);
            reports[i] = spectrum_only
                             ? analyze_spectrum(parse_spectrum_file(text), files[i], opt)
                             : analyze_graph(parse_graph_text(text, format), files[i], opt);
        } catch (const integrity_error& e) {
            codes[i] = 3;
            reports[i] = ordered_json{{"id", files[i]}, {"error", e.what()}};
        } catch (const std::exception& e) {
            codes[i] = 2;
            reports[i] = ordered_json{{"id", files[i]}, {"error", e.what()}};
        }
    };

    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
    if (jobs == 1) {
        for (std::size_t i = 0; i < files.size(); ++i) one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < files.size();) one(i);
            });
        for (auto& t : pool) t.join();
    }

    if (files.size() == 1) {
        std::cout << reports[0].dump(2) << "\n";
    } else {
        ordered_json all = ordered_json::array();
        for (auto& r : reports) all.push_back(std::move(r));
        std::cout << all.dump(2) << "\n";
    }
    int rc = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (codes[i] == 0) continue;
        std::cerr << files[i] << ": " << reports[i]["error"].get<std::string>() << "\n";
        rc = std::max(rc, codes[i]);
    }
    return rc;
}

int run_scan(const std::string& file, int u, int v, double t0, double t1, int steps,
             bool periodicity, const std::string& out_path) {
    using namespace pstlab;
    if (u == v && !periodicity)
        throw error("scan: u = v asks for the return amplitude; pass --periodicity for that");
    Graph g = parse_graph_text(read_file(file));
    CharPoly cp = char_poly(g);
    JacobiResult jac = jacobi_eigensym(g.adjacency_real());
    Spectrum sp = recognize_spectrum(cp, jac.values);
    SpectralDecomposition dec = eigendecompose(g, sp);
    ScanResult res = pst_scan(dec, u, v, t0, t1, steps);

    std::ostringstream out;
    out << "t,magnitude,phase\n";
    char line[128];
    for (std::size_t i = 0; i < res.curve.times.size(); ++i) {
        std::snprintf(line, sizeof line, "%.15g,%.15g,%.15g\n", res.curve.times[i],
                      res.curve.magnitudes[i], res.curve.phases[i]);
        out << line;
    }
    for (const ScanMaximum& m : res.maxima) {
        std::snprintf(line, sizeof line, "# maximum t=%.15g fidelity=%.15g promoted=%d\n", m.t,
                      m.fidelity, m.promoted ? 1 : 0);
        out << line;
    }
    write_output(out_path, out.str());
    return 0;
}

int run_mu(const std::string& file, bool spectrum_only) {
    using namespace pstlab;
    ordered_json j;
    j["schema_version"] = analysis_schema_version;
    j["id"] = file;
    j["kind"] = "mu";
    Spectrum sp;
    if (spectrum_only) {
        sp = spectrum_from_integer_classes(parse_spectrum_file(read_file(file)));
    } else {
        Graph g = parse_graph_text(read_file(file));
        CharPoly cp = char_poly(g);
        JacobiResult jac = jacobi_eigensym(g.adjacency_real());
        sp = recognize_spectrum(cp, jac.values);
        if (sp.status != SpectrumStatus::AllInteger)
            throw error("mu: the multiplicity enumerator needs an all-integer spectrum, got " +
                        std::string(to_string(sp.status)));
    }
    MultiplicityEnumerator mu = multiplicity_enumerator(sp);
    UnitCircleResult uc = unit_circle_zero_test(mu);
    j["spectrum"] = spectrum_json(sp);
    j["enumerator"] = enumerator_json(mu, uc);
    j["conclusion"] = uc.has_zero
                          ? "μ has a unit-circle zero; transfer is not excluded at this level"
                          : "μ has no zero on the unit circle: no walk-regular graph with this "
                            "spectrum admits perfect state transfer";
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum walk periodicity and perfect state transfer toolkit"};
    app.require_subcommand(1);

    // construct
    auto* c = app.add_subcommand("construct", "build a graph and write it to a file");
    std::string c_kind, c_out = "-", c_format = "auto";
    std::vector<std::string> c_params;
    c->add_option("kind", c_kind,
                  "path|cycle|complete|hypercube|cartesian|xh-from-hadamard|srg-from-hadamard")
        ->required();
    c->add_option("params", c_params, "kind parameters (sizes or input files)");
    c->add_option("-o,--out", c_out, "output path, - for stdout");
    c->add_option("--format", c_format, "graph6|edges|json (default: graph6, json when labeled)");

    // analyze
    auto* a = app.add_subcommand("analyze", "full pipeline, JSON report to stdout");
    std::vector<std::string> a_files;
    std::string a_format = "auto";
    pstlab::AnalysisOptions opt;
    bool a_spectrum_only = false;
    int a_jobs = 1;
    a->add_option("files", a_files, "graph files (spectrum files with --spectrum-only)")
        ->required();
    a->add_option("--format", a_format, "input format: auto|graph6|edges|json");
    a->add_flag("--force", opt.force, "scan for transfer even when an obstruction rules it out");
    a->add_flag("--timings", opt.timings, "include wall-clock stage times in the report");
    a->add_flag("--dump-projectors", opt.dump_projectors, "include spectral projectors");
    a->add_flag("--spectrum-only", a_spectrum_only,
                "inputs are eigenvalue:multiplicity files, analyze at spectrum level");
    a->add_option("--jobs", a_jobs, "worker threads across input files")->check(CLI::Range(1, 256));
    a->add_option("--grid", opt.grid_points, "fallback scan grid points");
    a->add_option("--tol-cluster", opt.cluster_tol, "eigenvalue clustering tolerance");
    a->add_option("--tol-support", opt.support_tol, "support threshold on projector diagonals");
    a->add_option("--gate-pre", opt.pre_gate, "fidelity gate for attempting a certificate");
    a->add_option("--gate-promotion", opt.promotion_gate, "fidelity gate for certifying");

    // scan
    auto* s = app.add_subcommand("scan", "fidelity curve as CSV");
    std::string s_file, s_out = "-";
    int s_u = 0, s_v = 0, s_steps = 1000;
    double s_t0 = 0.0, s_t1 = 2.0 * pstlab::pi;
    bool s_periodicity = false;
    s->add_option("file", s_file, "graph file")->required();
    s->add_option("-u", s_u, "source vertex")->required();
    s->add_option("-v", s_v, "target vertex")->required();
    s->add_option("--t0", s_t0, "window start");
    s->add_option("--t1", s_t1, "window end");
    s->add_option("--steps", s_steps, "grid points");
    s->add_flag("--periodicity", s_periodicity, "allow u = v (return amplitude curve)");
    s->add_option("-o,--out", s_out, "output path, - for stdout");

    // mu
    auto* m = app.add_subcommand("mu", "multiplicity enumerator and unit-circle test");
    std::string m_file;
    bool m_spectrum_only = false;
    m->add_option("file", m_file, "graph file (or spectrum file with --spectrum-only)")->required();
    m->add_flag("--spectrum-only", m_spectrum_only, "input is an eigenvalue:multiplicity file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c->parsed()) return run_construct(c_kind, c_params, c_out, c_format);
        if (a->parsed()) return run_analyze(a_files, a_format, opt, a_spectrum_only, a_jobs);
        if (s->parsed()) return run_scan(s_file, s_u, s_v, s_t0, s_t1, s_steps, s_periodicity, s_out);
        if (m->parsed()) return run_mu(m_file, m_spectrum_only);
    } catch (const pstlab::integrity_error& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

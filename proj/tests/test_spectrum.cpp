#include "corpus.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

using namespace pstlab;
using fixtures::spectrum_of;

namespace {

// Flattened (exact form, multiplicity) view, descending by value.
std::vector<std::pair<std::string, int>> classes_of(const Spectrum& sp) {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& c : sp.classes) out.push_back({c.exact_str(), c.multiplicity});
    return out;
}

}  // namespace

TEST_CASE("spectrum recognition statuses across the corpus", "[spectrum]") {
    CHECK(spectrum_of(path(2)).status == SpectrumStatus::AllInteger);
    CHECK(spectrum_of(cycle(6)).status == SpectrumStatus::AllInteger);
    CHECK(spectrum_of(hypercube(3)).status == SpectrumStatus::AllInteger);
    CHECK(spectrum_of(petersen()).status == SpectrumStatus::AllInteger);

    Spectrum p3 = spectrum_of(path(3));
    CHECK(p3.status == SpectrumStatus::AllSurd);
    CHECK(p3.delta == 2);

    // P5 mixes {0, ±1} with ±√3; C5 and P4 resist exact recognition.
    CHECK(spectrum_of(path(5)).status == SpectrumStatus::Mixed);
    CHECK(spectrum_of(path(4)).status == SpectrumStatus::NumericOnly);
    CHECK(spectrum_of(cycle(5)).status == SpectrumStatus::NumericOnly);
}

TEST_CASE("recognized classes carry exact forms and multiplicities", "[spectrum]") {
    CHECK(classes_of(spectrum_of(hypercube(3))) ==
          std::vector<std::pair<std::string, int>>{{"3", 1}, {"1", 3}, {"-1", 3}, {"-3", 1}});
    CHECK(classes_of(spectrum_of(petersen())) ==
          std::vector<std::pair<std::string, int>>{{"3", 1}, {"1", 5}, {"-2", 4}});
    CHECK(classes_of(spectrum_of(path(3))) ==
          std::vector<std::pair<std::string, int>>{{"√2", 1}, {"0", 1}, {"-√2", 1}});

    // Hypercube multiplicities are binomial.
    Spectrum q4 = spectrum_of(hypercube(4));
    CHECK(classes_of(q4) == std::vector<std::pair<std::string, int>>{
                                {"4", 1}, {"2", 4}, {"0", 6}, {"-2", 4}, {"-4", 1}});

    for (const auto& e : fixtures::corpus()) {
        Spectrum sp = spectrum_of(e.graph);
        int total = 0;
        for (const auto& c : sp.classes) {
            CHECK(c.multiplicity >= 1);
            total += c.multiplicity;
        }
        CHECK(total == e.graph.n());
        for (std::size_t i = 1; i < sp.classes.size(); ++i)
            CHECK(sp.classes[i - 1].value > sp.classes[i].value);
    }
}

TEST_CASE("surd rendering", "[spectrum]") {
    EigenvalueClass c;
    c.kind = EigKind::Surd;
    c.q = 2;
    c.delta = 5;
    CHECK(c.exact_str() == "2√5");
    c.q = -1;
    CHECK(c.exact_str() == "-√5");
}

TEST_CASE("synthetic integer spectra", "[spectrum]") {
    Spectrum sp = spectrum_from_integer_classes({{-2, 1}, {2, 1}, {1, 2}, {-1, 2}});
    CHECK(sp.status == SpectrumStatus::AllInteger);
    CHECK(sp.n() == 6);
    // Classes sort descending no matter the input order, and the synthesized
    // characteristic polynomial matches the graph that owns this spectrum.
    CHECK(sp.classes.front().exact_str() == "2");
    CHECK(sp.charpoly.poly == char_poly(cycle(6)).poly);

    CHECK_THROWS_AS(spectrum_from_integer_classes({}), error);
    CHECK_THROWS_AS(spectrum_from_integer_classes({{1, 0}}), error);
    CHECK_THROWS_AS(spectrum_from_integer_classes({{1, 1}, {1, 2}}), error);
}

TEST_CASE("square eigenvalue check", "[spectrum]") {
    CHECK(square_eigenvalue_check(spectrum_of(hypercube(3))));
    CHECK(square_eigenvalue_check(spectrum_of(path(3))));
    CHECK(!square_eigenvalue_check(spectrum_of(path(4))));
}

TEST_CASE("moment checks pass on honest spectra", "[spectrum]") {
    for (const auto& e : fixtures::corpus()) {
        Spectrum sp = spectrum_of(e.graph);
        MomentReport rep = moment_checks(sp, &e.graph);
        CHECK(rep.vertex_sum == e.graph.n());
        CHECK(rep.edges == static_cast<long long>(e.graph.edge_count()));
        if (rep.exact) {
            CHECK(rep.edge_pair_sum == 2 * Int(rep.edges));
        } else {
            CHECK(rep.residual_first < moment_numeric_tol);
            CHECK(rep.residual_second < moment_numeric_tol);
        }
    }
}

TEST_CASE("moment checks catch tampering", "[spectrum]") {
    // Trace 1 instead of 0.
    Spectrum bad = spectrum_from_integer_classes({{1, 1}, {0, 1}});
    CHECK_THROWS_AS(moment_checks(bad), integrity_error);

    // Right trace, wrong second moment for the claimed edge count.
    Spectrum sp = spectrum_of(cycle(4));
    sp.classes[0].k = 1;
    sp.classes[0].value = 1.0;
    sp.classes[2].k = -1;
    sp.classes[2].value = -1.0;
    CHECK_THROWS_AS(moment_checks(sp), integrity_error);

    // Graph of a different order than the spectrum.
    Graph p2 = path(2);
    CHECK_THROWS_AS(moment_checks(spectrum_of(cycle(4)), &p2), integrity_error);
}

TEST_CASE("periodicity of integral graphs", "[periodicity]") {
    PeriodicityVerdict p2 = periodicity_verdict(spectrum_of(path(2)));
    CHECK(p2.periodic);
    CHECK(p2.pcase == PeriodicityCase::IntegerCase);
    CHECK(p2.g == 2);
    CHECK(p2.period_str() == "2π/2");
    REQUIRE(p2.minimal_period.has_value());
    CHECK(p2.minimal_period->numeric() == Catch::Approx(pi).epsilon(1e-12));

    // Eigenvalue differences of C6 are {1,...,4}, so the period is 2π itself.
    PeriodicityVerdict c6 = periodicity_verdict(spectrum_of(cycle(6)));
    CHECK(c6.period_str() == "2π/1");

    PeriodicityVerdict k3 = periodicity_verdict(spectrum_of(complete(3)));
    CHECK(k3.g == 3);

    for (int d = 1; d <= 4; ++d) {
        PeriodicityVerdict q = periodicity_verdict(spectrum_of(hypercube(d)));
        CHECK(q.periodic);
        CHECK(q.period_str() == "2π/2");
    }

    PeriodicityVerdict pet = periodicity_verdict(spectrum_of(petersen()));
    CHECK(pet.periodic);
    CHECK(pet.period_str() == "2π/1");
}

TEST_CASE("periodicity of the surd case", "[periodicity]") {
    PeriodicityVerdict p3 = periodicity_verdict(spectrum_of(path(3)));
    CHECK(p3.periodic);
    CHECK(p3.pcase == PeriodicityCase::SurdCase);
    CHECK(p3.delta == 2);
    CHECK(p3.period_str() == "2π/(1√2)");
    REQUIRE(p3.minimal_period.has_value());
    CHECK(p3.minimal_period->numeric() == Catch::Approx(2.0 * pi / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(p3.bipartite_by_spectrum);
}

TEST_CASE("non-periodicity comes with a witness", "[periodicity]") {
    PeriodicityVerdict p4 = periodicity_verdict(spectrum_of(path(4)));
    CHECK(!p4.periodic);
    CHECK(p4.pcase == PeriodicityCase::NotPeriodic);
    CHECK(p4.witness.kind == WitnessKind::NonIntegralSquare);
    CHECK(p4.witness.detail.find("non-integral square") != std::string::npos);

    // P5 is periodic at no time: √3 - 1 over 2 is irrational.
    PeriodicityVerdict p5 = periodicity_verdict(spectrum_of(path(5)));
    CHECK(!p5.periodic);
    CHECK(p5.witness.kind == WitnessKind::MixedRatio);
    CHECK(!p5.witness.detail.empty());

    PeriodicityVerdict c5 = periodicity_verdict(spectrum_of(cycle(5)));
    CHECK(!c5.periodic);
    CHECK(c5.witness.kind == WitnessKind::NonIntegralSquare);
}

TEST_CASE("single eigenvalue class means every time is a period", "[periodicity]") {
    PeriodicityVerdict lone = periodicity_verdict(spectrum_of(Graph(1)));
    CHECK(lone.periodic);
    CHECK(!lone.minimal_period.has_value());
    CHECK(lone.period_str() == "any");
}

TEST_CASE("exact angle rendering and value", "[periodicity]") {
    CHECK(ExactAngle{Rat(1, 2), 1}.str() == "π/2");
    CHECK(ExactAngle{Rat(1), 2}.str() == "π/√2");
    CHECK(ExactAngle{Rat(2, 3), 5}.str() == "2π/(3√5)");
    CHECK(ExactAngle{Rat(-1, 3), 1}.str() == "-π/3");
    CHECK(ExactAngle{Rat(3), 1}.str() == "3π");
    CHECK(ExactAngle{Rat(1), 1}.str() == "π");

    CHECK(ExactAngle{Rat(1, 2), 1}.numeric() == Catch::Approx(pi / 2).epsilon(1e-15));
    CHECK(ExactAngle{Rat(1), 2}.numeric() == Catch::Approx(pi / std::sqrt(2.0)).epsilon(1e-15));
}

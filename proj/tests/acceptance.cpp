// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "ehrhart/ehrhart.hpp"
#include "ehrhart/family.hpp"
#include "ehrhart/graphs.hpp"
#include "ehrhart/roots.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

using namespace ehrhart;

namespace {

struct Band {
    std::size_t roots = 0;
    std::size_t violations = 0;
    std::string first;

    void record(const std::vector<ComplexRoot>& rs, int d, const std::string& source) {
        for (auto z : rs) {
            ++roots;
            if (z.real() < -d - 1e-7 || z.real() > d - 1 + 1e-7) {
                if (!violations++) {
                    std::ostringstream s;
                    s << source << ": " << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
                    first = s.str();
                }
            }
        }
    }
} band;

std::vector<ComplexRoot> roots_of(const Polynomial& p, int d, const std::string& source) {
    auto r = find_roots_numeric(p);
    band.record(r, d, source);
    return r;
}

int failures = 0;

class Criterion {
public:
    Criterion(int id, std::string title) : id_(id), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

    void fail(const std::string& why) {
        if (detail_.size() < 400) detail_ += (detail_.empty() ? "" : "; ") + why;
        ok_ = false;
    }
    void expect(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    void finish(const std::string& note = "") {
        const double s = seconds();
        if (!ok_) ++failures;
        std::printf("[%s] %2d  %s (%.2f s)%s%s\n", ok_ ? "PASS" : "FAIL", id_, title_.c_str(), s,
                    note.empty() ? "" : "  ", note.c_str());
        if (!ok_) std::printf("        %s\n", detail_.c_str());
        std::fflush(stdout);
    }

private:
    int id_;
    std::string title_;
    std::chrono::steady_clock::time_point start_;
    bool ok_ = true;
    std::string detail_;
};

template <class F>
void guarded(Criterion& c, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        c.fail(std::string("exception: ") + e.what());
    }
}

std::string tag(int k, int d) { return "(k=" + std::to_string(k) + ",d=" + std::to_string(d) + ")"; }

DeltaVector delta_of_counts(const std::vector<std::uint64_t>& counts, int d) {
    std::vector<Integer> e;
    for (long long x : oracle::delta_from_counts(counts, d)) e.emplace_back(static_cast<long>(x));
    return DeltaVector(e);
}

DeltaVector brute_delta(const VPolytope& p) {
    const int d = static_cast<int>(p.ambient_dim());
    return delta_from_ehrhart(ehrhart_by_interpolation(p), d);
}

void criterion1() {
    Criterion c(1, "root theorem items (i)-(v) on the grid 0 <= 2k <= d <= 10");
    int cases = 0;
    guarded(c, [&] {
        for (int d = 1; d <= 10; ++d)
            for (int k = 0; 2 * k <= d; ++k) {
                FamilyParams fp(k, d);
                TheoremLimits lim;
                lim.max_d_exact = 0;  // exact certificates belong to criterion 2
                auto t = theorem_property_check(fp, {}, kDefaultSeed, lim);
                band.record(t.report.roots, d, "family " + tag(k, d));
                ++cases;
                c.expect(t.distinct_roots && t.report.roots.size() == static_cast<std::size_t>(d),
                         tag(k, d) + " roots not distinct");
                c.expect(t.imaginary_count && t.report.n_imaginary == static_cast<std::size_t>(2 * k),
                         tag(k, d) + " imaginary count");
                c.expect(t.imaginary_on_line, tag(k, d) + " imaginary root off Re = -1/2");
                c.expect(t.real_count && t.real_roots_match, tag(k, d) + " real roots differ from -i/(d-2k+1)");
                c.expect(t.real_in_interval, tag(k, d) + " real root outside (-1, 0)");
            }
    });
    c.expect(c.seconds() < 10.0, "runtime above 10 s");
    c.finish(std::to_string(cases) + " cases");
}

void criterion2() {
    Criterion c(2, "exact critical-line certificates for d <= 20");
    int cases = 0;
    guarded(c, [&] {
        for (int d = 1; d <= 20; ++d)
            for (int k = 0; 2 * k <= d; ++k) {
                FamilyParams fp(k, d);
                Certificate cert = verify_critical_line_exact(closed_form_P(fp), expected_real_roots(fp));
                ++cases;
                c.expect(cert.pass, tag(k, d) + " " + stage_name(cert.stage) + ": " + cert.reason);
                c.expect(cert.negative_roots && *cert.negative_roots == static_cast<std::size_t>(k),
                         tag(k, d) + " Sturm count of H differs from k");
                c.expect(cert.even_part.degree() == k, tag(k, d) + " deg H differs from k");
            }
    });
    c.expect(c.seconds() < 60.0, "runtime above 60 s");
    c.finish(std::to_string(cases) + " cases");
}

void criterion3() {
    Criterion c(3, "closed form of i(Q^c, n) and the dilation identity against brute force");
    guarded(c, [&] {
        for (int d = 1; d <= 5; ++d)
            for (int k = 0; 2 * k <= d; ++k) {
                FamilyParams fp(k, d);
                Polynomial qc = closed_form_Qc(fp);
                auto verts = build_Qc(fp).vertices();
                for (int n = 1; n <= 4; ++n) {
                    auto brute = oracle::count_simplex(verts, n, false);
                    c.expect(qc(Rational(n)) == Rational(static_cast<unsigned long>(brute)),
                             tag(k, d) + " n=" + std::to_string(n));
                    c.expect(count_lattice_points(build_Qc(fp), n, CountMode::closed) == brute,
                             tag(k, d) + " library count n=" + std::to_string(n));
                }
            }
        for (int d = 1; d <= 4; ++d)
            for (int k = 0; 2 * k <= d; ++k) {
                FamilyParams fp(k, d);
                VPolytope p = build_P(fp);
                auto qc = build_Qc(fp).vertices();
                for (int n = 1; n <= d; ++n) {
                    auto lhs = count_lattice_points(p, n, CountMode::closed);
                    auto lhs_oracle = oracle::count_simplex(p.vertices(), n, false);
                    auto rhs = oracle::count_simplex(qc, static_cast<std::int64_t>(fp.scale()) * n, false);
                    c.expect(lhs == rhs && lhs_oracle == rhs, tag(k, d) + " dilation n=" + std::to_string(n));
                }
            }
    });
    c.finish();
}

void criterion4() {
    Criterion c(4, "delta(Q) = (1,...,1) for 2k <= 6 and delta(Q^c) = (delta(Q),0,...,0) for d <= 6");
    guarded(c, [&] {
        for (int k = 1; 2 * k <= 6; ++k) {
            VPolytope q = build_Q_reembedded(FamilyParams(k, 2 * k));
            std::vector<std::uint64_t> counts{1};
            for (int n = 1; n <= 2 * k; ++n) counts.push_back(oracle::count_simplex(q.vertices(), n, false));
            DeltaVector ones(std::vector<Integer>(2 * k + 1, 1));
            c.expect(delta_of_counts(counts, 2 * k) == ones, "oracle delta(Q) k=" + std::to_string(k));
            c.expect(brute_delta(q) == ones, "library delta(Q) k=" + std::to_string(k));
        }
        for (int d = 1; d <= 6; ++d)
            for (int k = 0; 2 * k <= d; ++k) {
                FamilyParams fp(k, d);
                std::vector<Integer> want(d + 1, 0);
                for (int i = 0; i <= 2 * k; ++i) want[i] = 1;
                VPolytope qc = build_Qc(fp);
                std::vector<std::uint64_t> counts{1};
                for (int n = 1; n <= d; ++n) counts.push_back(oracle::count_simplex(qc.vertices(), n, false));
                c.expect(delta_of_counts(counts, d) == DeltaVector(want), tag(k, d) + " oracle delta(Q^c)");
                c.expect(brute_delta(qc) == DeltaVector(want), tag(k, d) + " library delta(Q^c)");
            }
    });
    c.finish();
}

void criterion5() {
    Criterion c(5, "P is Gorenstein Fano: unique interior point, palindromic delta, functional equation");
    guarded(c, [&] {
        for (int d = 1; d <= 5; ++d)
            for (int k = 0; 2 * k <= d; ++k) {
                FamilyParams fp(k, d);
                VPolytope p = build_P(fp);
                c.expect(is_fano(p), tag(k, d) + " not Fano");
                c.expect(find_unique_interior_point(p) == LatticePoint(d, 0), tag(k, d) + " interior point");
                c.expect(oracle::interior_points(p.vertices(), 1) == std::vector<oracle::Point>{oracle::Point(d, 0)},
                         tag(k, d) + " oracle interior points");
            }
        for (int d = 1; d <= 12; ++d)
            for (int k = 0; 2 * k <= d; ++k) {
                FamilyParams fp(k, d);
                Polynomial i = closed_form_P(fp);
                c.expect(is_gorenstein(delta_from_ehrhart(i, d)), tag(k, d) + " delta not palindromic");
                c.expect(check_functional_equation(i, d), tag(k, d) + " functional equation");
            }
    });
    c.finish();
}

void criterion6() {
    Criterion c(6, "reciprocity against brute-force interior counts, n = 1, 2");
    guarded(c, [&] {
        std::vector<std::pair<std::string, VPolytope>> corpus = {
            {"Q2", VPolytope({{1, 0}, {0, 1}, {-1, -1}})},
            {"cross1", crosspolytope(1)},
            {"cross2", crosspolytope(2)},
            {"cross3", crosspolytope(3)},
            {"P(3,1)", build_P(FamilyParams(1, 3))},
            {"P_path3", symmetric_edge_polytope(path_graph(3))},
        };
        for (const auto& [name, p] : corpus) {
            const int d = static_cast<int>(p.ambient_dim());
            Polynomial i = ehrhart_by_interpolation(p);
            c.expect(check_reciprocity(p, i, 2).ok, name + " library reciprocity");
            for (int n = 1; n <= 2; ++n) {
                Rational predicted = i(Rational(-n));
                if (d % 2) predicted = -predicted;
                c.expect(predicted == Rational(static_cast<unsigned long>(oracle::count_interior(p.vertices(), n))),
                         name + " n=" + std::to_string(n));
            }
        }
    });
    c.finish();
}

void criterion7() {
    Criterion c(7, "trees on 4 vertices and K(2,2), K(2,3)");
    guarded(c, [&] {
        for (const auto& [name, g] : {std::pair{std::string("path4"), path_graph(4)}, {"star4", star_graph(4)}}) {
            GraphRecord r = analyze_graph(g);
            band.record(r.report.roots, r.dim, name);
            c.expect(r.delta == DeltaVector{1, 3, 3, 1}, name + " delta " + r.delta.to_string());
            c.expect(r.report.max_critical_line_deviation <= 1e-6, name + " root off the critical line");
            c.expect(delta_of_counts(oracle::sep_counts(4, g.edges(), 3), 3) == r.delta, name + " oracle delta");
        }
        for (int m : {2, 3}) {
            Graph g = complete_bipartite_graph(2, m);
            GraphRecord r = analyze_graph(g);
            band.record(r.report.roots, r.dim, "K(2," + std::to_string(m) + ")");
            DeltaVector want = k2m_delta(m + 2).trimmed();
            const std::string tag = "K(2," + std::to_string(m) + ")";
            c.expect(r.delta == want, tag + " delta " + r.delta.to_string() + ", expected " + want.to_string());
            DeltaVector brute = delta_of_counts(oracle::sep_counts(m + 2, g.edges(), r.dim), r.dim);
            c.expect(brute == want, tag + " brute-force delta " + brute.to_string() + ", expected " + want.to_string());
        }
        c.expect(k2m_delta(4).trimmed() == DeltaVector{1, 3, 3, 1}, "K(2,2) generating polynomial");
        c.expect(k2m_delta(5).trimmed() == DeltaVector{1, 6, 10, 6, 1}, "K(2,3) generating polynomial");
    });
    c.finish();
}

void criterion8() {
    Criterion c(8, "C6 on the critical line with certificate; C7 off it, certificate fails on H");
    std::string note;
    guarded(c, [&] {
        GraphRecord c6 = analyze_graph(cycle_graph(6));
        band.record(c6.report.roots, c6.dim, "C6");
        c.expect(c6.report.roots.size() == 5, "C6 root count");
        for (auto z : c6.report.roots) c.expect(std::abs(z.real() + 0.5) <= 1e-6, "C6 root off the line");
        c.expect(c6.certificate.pass, std::string("C6 certificate: ") + c6.certificate.reason);

        GraphRecord c7 = analyze_graph(cycle_graph(7));
        band.record(c7.report.roots, c7.dim, "C7");
        double worst = 0;
        for (auto z : c7.report.roots) worst = std::max(worst, std::abs(z.real() + 0.5));
        c.expect(worst >= 1e-3, "C7 has no root off the line");
        c.expect(!c7.certificate.pass, "C7 certificate passed");
        // odd coefficients vanish for every Gorenstein polytope; the failure is on H(t)
        c.expect(c7.certificate.stage == Certificate::Stage::sturm_count,
                 std::string("C7 failed at ") + stage_name(c7.certificate.stage));
        char buf[96];
        std::snprintf(buf, sizeof buf, "C7 max |Re+1/2| = %.6f, stage %s", worst, stage_name(c7.certificate.stage));
        note = buf;
    });
    c.expect(c.seconds() < 120.0, "runtime above 2 minutes");
    c.finish(note);
}

void criterion9() {
    Criterion c(9, "bisection vs general solver on 50 random gamma sets; lemma polynomial of (1/2,1,3/2)");
    double worst = 0;
    guarded(c, [&] {
        std::mt19937_64 rng(20090305);
        std::uniform_int_distribution<int> num(1, 60), den(1, 12), half(1, 4);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Rational> g;
            const int count = 2 * half(rng) + 1;
            for (int i = 0; i < count; ++i) g.push_back(make_rational(num(rng), den(rng)));
            Gammas gs(g);
            Polynomial f = lemma2_polynomial(gs);
            auto numeric = roots_of(f, f.degree(), "gammas #" + std::to_string(trial));
            auto bis = critical_line_roots_bisection(gs);
            if (numeric.size() != bis.size()) {
                c.fail("trial " + std::to_string(trial) + " root count");
                continue;
            }
            std::vector<bool> used(numeric.size());
            for (const auto& b : bis) {
                ComplexRoot want(-0.5, b.b);
                std::size_t best = 0;
                double dist = 1e300;
                for (std::size_t i = 0; i < numeric.size(); ++i)
                    if (!used[i] && std::abs(numeric[i] - want) < dist) dist = std::abs(numeric[i] - want), best = i;
                used[best] = true;
                worst = std::max(worst, dist);
                c.expect(dist <= 1e-8, "trial " + std::to_string(trial) + " disagreement " + std::to_string(dist));
            }
        }
        Polynomial f = lemma2_polynomial(Gammas({make_rational(1, 2), Rational(1), make_rational(3, 2)}));
        c.expect(f == F_polynomial(FamilyParams(1, 3)), "lemma polynomial differs from F(1,3)");
    });
    char buf[64];
    std::snprintf(buf, sizeof buf, "max disagreement %.2e", worst);
    c.finish(buf);
}

void criterion11(std::vector<std::pair<std::string, std::pair<Polynomial, int>>>& corpus) {
    Criterion c(11, "validators clean and delta <-> Ehrhart round trip on the corpus");
    guarded(c, [&] {
        for (const auto& [name, entry] : corpus) {
            const auto& [i, d] = entry;
            DeltaVector delta = delta_from_ehrhart(i, d);
            auto v = validate_delta(delta);
            c.expect(v.empty(), name + ": " + (v.empty() ? "" : v.front().message));
            c.expect(ehrhart_from_delta(delta) == i, name + " Ehrhart from delta");
            c.expect(delta_from_ehrhart(ehrhart_from_delta(delta), d) == delta, name + " delta round trip");
        }
    });
    c.finish(std::to_string(corpus.size()) + " polynomials");
}

}  // namespace

int main() {
    std::printf("acceptance run\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();

    // Corpus for criterion 11; every root of it also feeds the band check.
    std::vector<std::pair<std::string, std::pair<Polynomial, int>>> corpus;
    {
        for (int d = 1; d <= 12; ++d)
            for (int k = 0; 2 * k <= d; ++k) corpus.push_back({"P" + tag(k, d), {closed_form_P(FamilyParams(k, d)), d}});
        for (int d = 1; d <= 6; ++d)
            for (int k = 0; 2 * k <= d; ++k) corpus.push_back({"Qc" + tag(k, d), {closed_form_Qc(FamilyParams(k, d)), d}});
        corpus.push_back({"Q2", {ehrhart_by_interpolation(VPolytope({{1, 0}, {0, 1}, {-1, -1}})), 2}});
        for (int d = 1; d <= 4; ++d) corpus.push_back({"cross" + std::to_string(d), {ehrhart_by_interpolation(crosspolytope(d)), d}});
        for (const auto& r : scan_graphs(6)) {
            if (r.error) continue;
            corpus.push_back({"graph " + r.graph.to_string(), {r.i_poly, r.dim}});
        }
        corpus.push_back({"C7", {analyze_graph(cycle_graph(7)).i_poly, 6}});
    }
    criterion11(corpus);

    {
        Criterion c(10, "every computed root within -d <= Re <= d - 1");
        guarded(c, [&] {
            for (const auto& [name, entry] : corpus) roots_of(entry.first, entry.second, name);
        });
        c.expect(band.violations == 0, std::to_string(band.violations) + " roots outside the band, first " + band.first);
        c.finish(std::to_string(band.roots) + " roots checked");
    }

    std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include "hodgeloop/cli.h"
#include "hodgeloop/error.h"
#include "hodgeloop/freeloop.h"
#include "hodgeloop/pdquotient.h"
#include "hodgeloop/sections.h"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <sys/wait.h>

using namespace hodgeloop;

namespace {

constexpr double kVerifySeconds = 10.0;   // per model, verify at n_max = N + 8
constexpr double kLieGroupSeconds = 5.0;  // per model, loop Betti through degree 20
constexpr int kLieGroupDegree = 20;
constexpr int kQuotientDegree = 12;

const char* const kCorpus[] = {"s2", "s3", "cp2", "cp3", "s2xs3", "su3"};

std::string model_path(const std::string& stem) { return std::string(HODGELOOP_MODELS_DIR) + "/" + stem + ".model"; }
sullivan::SullivanModel load(const std::string& stem) { return sullivan::load_model(model_path(stem)); }

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            note << " [" << what << "]";
        }
    }
};

struct Shell {
    std::string out;
    int status = -1;
};

Shell shell(const std::string& args)
{
    Shell s;
    const std::string cmd = std::string(HODGELOOP_TOOL) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return s;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        s.out.append(buf.data(), got);
    const int raw = pclose(pipe);
    s.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return s;
}

std::vector<long> betti(const freeloop::FreeLoopModel& flm, int n_max)
{
    const auto t = freeloop::loop_betti(flm, n_max);
    std::vector<long> out;
    for (int n = 0; n <= n_max; ++n)
        out.push_back(t.at(n));
    return out;
}

void triple_agreement(Outcome& o)
{
    for (const char* stem : {"s2", "s3", "cp2", "cp3", "s2xs3"}) {
        const auto model = load(stem);
        const auto start = std::chrono::steady_clock::now();
        const auto report = sections::verify_theorems(model, model.formal_dimension + 8);
        const double t = seconds_since(start);
        o.note << " " << stem << "=" << static_cast<long>(t * 1000) << "ms";
        o.require(report.passed() && report.rows.size() == 8, std::string(stem) + " rows");
        for (const auto& row : report.rows)
            o.require(row.hodge_one == row.quotient && row.quotient == row.oracle, std::string(stem) + " n=" + std::to_string(row.n));
        o.require(t < kVerifySeconds, std::string(stem) + " runtime");
    }
}

void loop_betti_tables(Outcome& o)
{
    o.require(betti(freeloop::build_free_loop_model(load("s2")), 4) == std::vector<long>{1, 1, 1, 1, 1}, "LS2");
    o.require(betti(freeloop::build_free_loop_model(load("s3")), 6) == std::vector<long>{1, 0, 1, 1, 1, 1, 1}, "LS3");
    o.require(betti(freeloop::build_free_loop_model(load("cp2")), 1).at(1) == 1, "LCP2");
}

void hodge_tables(Outcome& o)
{
    const auto s2 = freeloop::hodge_betti_table(freeloop::build_free_loop_model(load("s2")), 4);
    o.require(s2.at(1, 1) == 1 && s2.at(2, 0) == 1 && s2.at(3, 1) == 0 && s2.at(3, 2) == 1 && s2.at(4, 1) == 1, "S2");
    const auto cp2 = freeloop::hodge_betti_table(freeloop::build_free_loop_model(load("cp2")), 8);
    o.require(cp2.at(6, 1) == 1 && cp2.at(7, 1) == 0 && cp2.at(8, 1) == 1, "CP2");
    const auto s3 = freeloop::hodge_betti_table(freeloop::build_free_loop_model(load("s3")), 11);
    for (int k = 0; k <= 4; ++k)
        o.require(s3.at(2 * k, k) == 1 && s3.at(2 * k + 3, k) == 1, "S3 k=" + std::to_string(k));
}

void aut_ranks(Outcome& o)
{
    const std::map<std::string, std::map<int, long>> expected{
        {"s2", {{1, 0}, {2, 1}, {3, 0}, {4, 0}}},
        {"s3", {{2, 1}}},
        {"cp2", {{1, 0}, {2, 1}, {3, 0}, {4, 1}, {5, 0}, {6, 0}}},
    };
    for (const auto& [stem, values] : expected) {
        const auto model = load(stem);
        const int n_max = model.formal_dimension + 8;
        const auto flm = freeloop::build_free_loop_model(model);
        const auto eqm = sections::extend_to_quotient_loop(flm, pdquotient::build_quotient(model), n_max);
        const auto aut = sections::aut_rank_table(eqm, sections::build_dual_complex(eqm), n_max, model.trusted_loop(n_max));
        const auto der = sections::derivation_oracle(model, 9);
        for (const auto& [n, v] : values) {
            o.require(aut.at(n) == v, stem + " aut " + std::to_string(n));
            o.require(der.at(n + 1) == v, stem + " Der " + std::to_string(n + 1));
        }
        long total = 0;
        for (const auto& [n, v] : aut.entries)
            total += v;
        long listed = 0;
        for (const auto& [n, v] : values)
            listed += v;
        o.require(total == listed, stem + " no extra classes");
    }
}

void quotient_correctness(Outcome& o)
{
    const auto cp2 = pdquotient::build_quotient(load("cp2")).algebra;
    o.require(cp2.degrees == std::vector<int>{0, 2, 4}, "CP2 degrees");
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                o.require(cp2.a(i, j, k) == (i + j == k ? 1 : 0), "CP2 product");
    for (const auto& b : cp2.beta)
        o.require(b == 0, "CP2 differential");

    const auto s3_model = load("s3");
    const auto s3 = pdquotient::build_quotient(s3_model);
    o.require(s3.algebra.size() == 2 && s3.map.complement_top.empty() && s3.map.complement_below_top.empty(), "S3 ideal");

    for (const char* stem : kCorpus) {
        const auto model = load(stem);
        const auto q = pdquotient::build_quotient(model);
        const auto verdicts = pdquotient::verify_quasi_iso(model, q.algebra, q.map, kQuotientDegree);
        o.require(verdicts.size() == kQuotientDegree + 1, std::string(stem) + " degrees");
        for (const auto& v : verdicts)
            o.require(v.pass, std::string(stem) + " degree " + std::to_string(v.degree));
    }
}

void sign_identities(Outcome& o)
{
    std::size_t slices = 0;
    std::size_t identities = 0;
    int sign_failures = 0;
    for (const char* stem : kCorpus) {
        const auto model = load(stem);
        const int n_max = model.formal_dimension + 8;
        const auto flm = freeloop::build_free_loop_model(model);
        for (int n = 0; n < n_max; ++n)
            o.require((freeloop::loop_differential(flm, n + 1) * freeloop::loop_differential(flm, n)).is_zero(),
                      std::string(stem) + " D^2 degree " + std::to_string(n));
        const auto q = pdquotient::build_quotient(model);
        identities += pdquotient::structure_identities(q.algebra).total();
        try {
            sections::verify_dual_differential(q.algebra);
            // Dbar^2 = 0 is checked on every slice while building the extension.
            const auto eqm = sections::extend_to_quotient_loop(flm, q, n_max);
            const auto dual = sections::build_dual_complex(eqm);
            slices += dual.sign_identity_slices_checked();
            o.require(dual.square_zero_slices_checked() == dual.sign_identity_slices_checked(), std::string(stem) + " delta^2");
        }
        catch (const Error& e) {
            if (e.code() != ErrorCode::SignIdentityFailure)
                throw;
            ++sign_failures;
            o.require(false, e.what());
        }
    }
    o.note << " slices=" << slices << " identity_checks=" << identities << " SignIdentityFailure=" << sign_failures;
}

std::vector<long> hilbert_series(const std::vector<int>& degrees, int n_max)
{
    std::vector<long> series(static_cast<std::size_t>(n_max + 1), 0);
    series[0] = 1;
    for (int d : degrees) {
        std::vector<long> next(series.size(), 0);
        for (int n = 0; n <= n_max; ++n)
            next[n] = series[n] + (n >= d ? (d % 2 ? series[n - d] : next[n - d]) : 0);
        series = std::move(next);
    }
    return series;
}

void lie_groups(Outcome& o)
{
    for (const char* stem : {"su3", "s3"}) {
        const auto start = std::chrono::steady_clock::now();
        const auto model = load(stem);
        const auto b = betti(freeloop::build_free_loop_model(model), kLieGroupDegree);
        const double t = seconds_since(start);
        std::vector<int> base, loops;
        for (const auto& g : model.algebra.generators()) {
            base.push_back(g.degree);
            loops.push_back(g.degree - 1);
        }
        const auto p = hilbert_series(base, kLieGroupDegree);
        const auto q = hilbert_series(loops, kLieGroupDegree);
        for (int n = 0; n <= kLieGroupDegree; ++n) {
            long c = 0;
            for (int i = 0; i <= n; ++i)
                c += p[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(n - i)];
            o.require(b[static_cast<std::size_t>(n)] == c, std::string(stem) + " degree " + std::to_string(n));
        }
        o.note << " " << stem << "=" << static_cast<long>(t * 1000) << "ms";
        o.require(t < kLieGroupSeconds, std::string(stem) + " runtime");
    }
}

void negative_controls(Outcome& o)
{
    const auto pd = shell("validate " + std::string(HODGELOOP_TEST_DATA_DIR) + "/polynomial_x2.model --format json");
    o.require(pd.status == 1, "polynomial exit " + std::to_string(pd.status));
    o.require(pd.out.find("NotPoincareDuality") != std::string::npos, "polynomial error code");
    const auto corrupt = shell("quotient " + model_path("cp2") + " --corrupt-alpha --format json");
    o.require(corrupt.status == 3, "corrupted alpha exit " + std::to_string(corrupt.status));
}

void determinism(Outcome& o)
{
    for (const char* stem : kCorpus) {
        const auto a = shell("verify " + model_path(stem) + " --format json");
        const auto b = shell("verify " + model_path(stem) + " --format json");
        o.require(a.status == 0 && !a.out.empty() && a.out == b.out, stem);
    }
}

void growth_substitute(Outcome& o)
{
    const auto s3 = freeloop::growth_report(freeloop::loop_betti(freeloop::build_free_loop_model(load("s3")), 14));
    o.require(s3.classification == "sub-exponential", "S3 classification " + s3.classification);

    const auto truncated = sullivan::parse_model("model T\ndim 3\ncomplete-to 7\ngen x 3\n");
    const auto t = freeloop::loop_betti(freeloop::build_free_loop_model(truncated), 12);
    const auto g = freeloop::growth_report(t);
    for (std::size_t i = 1; i < g.partial_sums.size(); ++i)
        o.require(g.partial_sums[i] >= g.partial_sums[i - 1], "monotone");
    o.require(t.trusted_up_to == 6 && g.window == 6 && g.untrusted_degrees == 6, "trust markers");
    cli::Options opts;
    opts.command = "betti";
    opts.growth = true;
    opts.max_degree = 12;
    opts.model_path = std::string(HODGELOOP_TEST_DATA_DIR) + "/truncated_s3.model";
    const auto text = cli::render_text(cli::run(opts));
    o.require(text.find("?") != std::string::npos && text.find("trusted through: 6") != std::string::npos, "text markers");
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"triple_agreement", triple_agreement},
        {"loop_betti_tables", loop_betti_tables},
        {"hodge_tables", hodge_tables},
        {"aut_ranks_vs_derivations", aut_ranks},
        {"quotient_correctness", quotient_correctness},
        {"sign_identities", sign_identities},
        {"lie_group_loop_betti", lie_groups},
        {"negative_controls", negative_controls},
        {"json_determinism", determinism},
        {"growth_report_substitute", growth_substitute},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            check(o);
        }
        catch (const std::exception& e) {
            o.pass = false;
            o.note << " [exception: " << e.what() << "]";
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << o.note.str() << "\n";
        failures += o.pass ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}

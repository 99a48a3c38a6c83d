#include "hodgeloop/cli.h"

#include "hodgeloop/error.h"
#include "hodgeloop/sections.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hodgeloop::cli {

using nlohmann::ordered_json;

namespace {

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownGenerator:
    case ErrorCode::DegreeMismatch:
    case ErrorCode::OddExponent:
        return parse_failure;
    case ErrorCode::ValidationFailed:
    case ErrorCode::NotPoincareDuality:
    case ErrorCode::TopClassCollapse:
        return validation_failure;
    case ErrorCode::IdentityViolation:
    case ErrorCode::QuasiIsoFailure:
    case ErrorCode::ChainMapFailure:
    case ErrorCode::SingularDuality:
    case ErrorCode::SignIdentityFailure:
    case ErrorCode::DualMismatch:
    case ErrorCode::TheoremMismatch:
        return math_mismatch;
    case ErrorCode::CompositionNotZero:
    case ErrorCode::MissingImage:
    case ErrorCode::InhomogeneousElement:
    case ErrorCode::DifferentialSquareNonzero:
    case ErrorCode::HodgeSumMismatch:
        return internal_failure;
    }
    return internal_failure;
}

double rounded(double x) { return std::round(x * 1e6) / 1e6; }

std::string fixed(double x)
{
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << x;
    return out.str();
}

Table table_from(const sullivan::RankTable& t, int first, int last, std::string label = {})
{
    Table out;
    out.label = label.empty() ? t.label : std::move(label);
    for (int n = 0; n <= last; ++n)
        out.values.push_back(n < first || !t.entries.contains(n) ? std::nullopt : std::optional<long>(t.at(n)));
    out.trusted_up_to = t.trusted_up_to;
    return out;
}

int default_n_max(const sullivan::SullivanModel& model, const Options& options, bool needs_aut)
{
    const int N = model.formal_dimension;
    int n = options.max_degree.value_or(N + 8);
    if (needs_aut)
        n = std::max(n, N + 2);
    return std::max(n, 0);
}

std::optional<int> trust_or_all(int trusted, int n_max) { return trusted >= n_max ? std::nullopt : std::optional<int>(trusted); }

void add_verdict(Report& r, std::string check, std::optional<int> degree, bool pass)
{
    r.verdicts.push_back(Verdict{std::move(check), degree, pass});
}

void run_validate(Report& r, const sullivan::SullivanModel& model, const Options& options)
{
    const int n_max = default_n_max(model, options, false);
    r.n_max = n_max;
    const sullivan::ValidationReport rep = sullivan::validate(model);
    for (const auto& c : rep.checks)
        add_verdict(r, c.name, std::nullopt, c.pass);
    if (!rep.passed()) {
        std::string failed;
        for (const auto& c : rep.checks)
            if (!c.pass)
                failed += (failed.empty() ? "" : "; ") + c.name + ": " + c.detail;
        r.error = "ValidationFailed: " + failed;
        r.exit_code = validation_failure;
        return;
    }
    r.trusted_up_to = trust_or_all(model.trusted_base(n_max), n_max);
    r.tables.push_back(table_from(sullivan::cohomology_table(model, n_max, options.jobs), 0, n_max, "H(M)"));
    try {
        const sullivan::PoincareReport pd = sullivan::check_poincare_duality(model);
        add_verdict(r, "poincare_duality", pd.top_degree, true);
        r.details["fundamental_cocycle"] = model.algebra.format(pd.fundamental_cocycle);
        r.details["vanishing_checked_to"] = pd.vanishing_checked_to;
    }
    catch (const Error& e) {
        add_verdict(r, "poincare_duality", e.locus(), false);
        throw;
    }
}

void run_betti(Report& r, const sullivan::SullivanModel& model, const Options& options)
{
    const int n_max = default_n_max(model, options, false);
    r.n_max = n_max;
    const freeloop::FreeLoopModel flm = freeloop::build_free_loop_model(model);
    const freeloop::HodgeTable hodge = freeloop::hodge_betti_table(flm, n_max, options.jobs);
    const sullivan::RankTable betti = freeloop::loop_betti(flm, hodge, options.jobs);
    r.trusted_up_to = trust_or_all(betti.trusted_up_to, n_max);
    r.tables.push_back(table_from(betti, 0, n_max));
    add_verdict(r, "hodge_sum", std::nullopt, true);
    if (!options.growth)
        return;

    const freeloop::GrowthReport g = freeloop::growth_report(betti);
    Table sums{"partial_sums", {}, betti.trusted_up_to};
    for (long s : g.partial_sums)
        sums.values.emplace_back(s);
    r.tables.push_back(std::move(sums));
    ordered_json growth;
    growth["window"] = g.window;
    ordered_json ratios = ordered_json::array();
    for (const auto& q : g.ratios)
        ratios.push_back(q ? ordered_json(rounded(*q)) : ordered_json(nullptr));
    growth["ratios"] = std::move(ratios);
    growth["upper_constant"] = g.upper_constant ? ordered_json(rounded(*g.upper_constant)) : ordered_json(nullptr);
    growth["lower_constant"] = g.lower_constant ? ordered_json(rounded(*g.lower_constant)) : ordered_json(nullptr);
    growth["classification"] = g.classification;
    growth["untrusted_degrees"] = g.untrusted_degrees;
    r.details["growth"] = std::move(growth);
}

void run_hodge(Report& r, const sullivan::SullivanModel& model, const Options& options)
{
    const int n_max = default_n_max(model, options, false);
    r.n_max = n_max;
    const freeloop::FreeLoopModel flm = freeloop::build_free_loop_model(model);
    const freeloop::HodgeTable hodge = freeloop::hodge_betti_table(flm, n_max, options.jobs);
    const sullivan::RankTable betti = freeloop::loop_betti(flm, hodge, options.jobs);
    r.trusted_up_to = trust_or_all(hodge.trusted_up_to, n_max);
    const int k_max = std::max(hodge.max_word_length(), 1);
    for (int k = 0; k <= k_max; ++k) {
        Table t{"H_(" + std::to_string(k) + ")", {}, hodge.trusted_up_to};
        for (int n = 0; n <= n_max; ++n)
            t.values.push_back(k <= n ? std::optional<long>(hodge.at(n, k)) : std::nullopt);
        r.tables.push_back(std::move(t));
    }
    r.tables.push_back(table_from(betti, 0, n_max));
    add_verdict(r, "hodge_sum", std::nullopt, true);
}

pdquotient::Quotient quotient_with_hook(const sullivan::SullivanModel& model, const Options& options)
{
    pdquotient::Quotient q = pdquotient::build_quotient(model);
    if (options.corrupt_alpha) {
        auto& A = q.algebra;
        A.a(A.unit_index, A.top_index, A.top_index) += 1;
    }
    return q;
}

void run_quotient(Report& r, const sullivan::SullivanModel& model, const Options& options)
{
    const int n_max = default_n_max(model, options, false);
    r.n_max = n_max;
    r.trusted_up_to = trust_or_all(model.trusted_base(n_max), n_max);
    sullivan::require_valid(model);
    const pdquotient::Quotient q = quotient_with_hook(model, options);
    const auto& A = q.algebra;
    const int N = model.formal_dimension;

    Table dims{"A", {}, std::nullopt};
    for (int k = 0; k <= N; ++k)
        dims.values.emplace_back(static_cast<long>(A.dim(k)));
    r.tables.push_back(std::move(dims));

    ordered_json basis = ordered_json::array();
    for (std::size_t i = 0; i < A.size(); ++i)
        basis.push_back(ordered_json{{"index", i}, {"degree", A.degrees[i]}, {"label", A.labels[i]}});
    ordered_json products = ordered_json::array();
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            for (std::size_t k = 0; k < A.size(); ++k)
                if (sgn(A.a(i, j, k)) != 0)
                    products.push_back(ordered_json::array({i, j, k, exactq::to_string(A.a(i, j, k))}));
    ordered_json differential = ordered_json::array();
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            if (sgn(A.b(i, j)) != 0)
                differential.push_back(ordered_json::array({i, j, exactq::to_string(A.b(i, j))}));
    r.details["basis"] = std::move(basis);
    r.details["products"] = std::move(products);
    r.details["differential"] = std::move(differential);
    r.details["ideal"] = q.map.ideal_summary(model);

    const pdquotient::IdentityReport ids = pdquotient::structure_identities(A);
    add_verdict(r, "structure_identities", std::nullopt, true);
    r.details["identities_checked"] = ids.total();
    pdquotient::verify_algebra_map(model, A, q.map);
    add_verdict(r, "rho_multiplicative", std::nullopt, true);
    pdquotient::verify_chain_map(model, A, q.map);
    add_verdict(r, "rho_chain_map", std::nullopt, true);
    Table ideal{"H(I)", {}, r.trusted_up_to};
    for (int n = 0; n <= n_max; ++n) {
        const long h = pdquotient::ideal_cohomology(model, q.map, n);
        ideal.values.emplace_back(h);
        if (h != 0) {
            add_verdict(r, "ideal_acyclic", n, false);
            throw Error(ErrorCode::QuasiIsoFailure, "H^" + std::to_string(n) + "(I) = " + std::to_string(h), n);
        }
    }
    r.tables.push_back(std::move(ideal));
    for (const auto& v : pdquotient::verify_quasi_iso(model, A, q.map, n_max))
        add_verdict(r, "quasi_iso", v.degree, v.pass);
}

void run_aut_ranks(Report& r, const sullivan::SullivanModel& model, const Options& options)
{
    const int n_max = default_n_max(model, options, true);
    const int N = model.formal_dimension;
    r.n_max = n_max;
    const freeloop::FreeLoopModel flm = freeloop::build_free_loop_model(model);
    const pdquotient::Quotient q = quotient_with_hook(model, options);
    const sections::ExtendedQuotientModel eqm = sections::extend_to_quotient_loop(flm, q, n_max, options.jobs);
    const sections::DualSectionComplex dual = sections::build_dual_complex(eqm);
    const sullivan::RankTable aut = sections::aut_rank_table(eqm, dual, n_max, model.trusted_loop(n_max));
    const sullivan::RankTable der = sections::derivation_oracle(model, n_max - N + 1);
    r.trusted_up_to = trust_or_all(aut.trusted_up_to, n_max - N);
    r.tables.push_back(table_from(aut, 1, n_max - N));
    r.tables.push_back(table_from(der, 1, n_max - N + 1));
    bool coherent = true;
    for (const auto& [n, v] : aut.entries) {
        add_verdict(r, "dual_rank_symmetry", n, true);
        const bool pass = !aut.trusted(n) || v == der.at(n + 1);
        add_verdict(r, "oracle_coherence", n, pass);
        coherent = coherent && pass;
    }
    if (!coherent) {
        r.error = "TheoremMismatch: aut ranks disagree with derivation homology";
        r.exit_code = math_mismatch;
    }
}

void run_verify(Report& r, const sullivan::SullivanModel& model, const Options& options)
{
    const int n_max = default_n_max(model, options, true);
    const int N = model.formal_dimension;
    r.n_max = n_max;
    r.trusted_up_to = trust_or_all(model.trusted_loop(n_max), n_max);

    const freeloop::FreeLoopModel flm = freeloop::build_free_loop_model(model);
    const pdquotient::Quotient q = quotient_with_hook(model, options);
    const auto& A = q.algebra;

    try {
        pdquotient::structure_identities(A);
        add_verdict(r, "structure_identities", std::nullopt, true);
    }
    catch (const Error&) {
        add_verdict(r, "structure_identities", std::nullopt, false);
        throw;
    }
    for (const auto& v : pdquotient::verify_quasi_iso(model, A, q.map, n_max))
        add_verdict(r, "quasi_iso", v.degree, v.pass);

    const sections::ExtendedQuotientModel eqm = sections::extend_to_quotient_loop(flm, q, n_max, options.jobs);
    add_verdict(r, "dbar_square_zero", std::nullopt, true);
    add_verdict(r, "rho_tensor_chain_map", std::nullopt, true);
    for (const auto& v : sections::verify_rho_tensor_quasi_iso(flm, eqm, n_max, options.jobs))
        if (v.word_length == 1)
            add_verdict(r, "rho_tensor_quasi_iso", v.degree, v.pass);
    add_verdict(r, "rho_tensor_quasi_iso_all_word_lengths", std::nullopt, true);

    sections::verify_dual_differential(A);
    add_verdict(r, "dual_differential", std::nullopt, true);
    const sections::DualSectionComplex dual = sections::build_dual_complex(eqm);
    add_verdict(r, "duality_sign_identity", std::nullopt, true);
    add_verdict(r, "delta_square_zero", std::nullopt, true);
    add_verdict(r, "du_tensor_quasi_iso", std::nullopt, true);

    const freeloop::HodgeTable hodge = freeloop::hodge_betti_table(flm, n_max, options.jobs);
    const sullivan::RankTable aut = sections::aut_rank_table(eqm, dual, n_max, model.trusted_loop(n_max));
    const sullivan::RankTable der = sections::derivation_oracle(model, n_max - N + 1);
    const sections::TheoremReport thm = sections::compare_theorem_tables(N, hodge, aut, der);

    Table h1{"H_(1)", {}, hodge.trusted_up_to};
    for (int n = 0; n <= n_max; ++n)
        h1.values.push_back(n >= 1 ? std::optional<long>(hodge.at(n, 1)) : std::nullopt);
    r.tables.push_back(std::move(h1));
    r.tables.push_back(table_from(aut, 1, n_max - N));
    r.tables.push_back(table_from(der, 1, n_max - N + 1));

    ordered_json rows = ordered_json::array();
    for (const auto& row : thm.rows) {
        add_verdict(r, "theorem_triple", row.n, row.pass);
        rows.push_back(ordered_json{{"n", row.n},
                                    {"H_(1)^{n+N}", row.hodge_one},
                                    {"H^{n+N}(A x sV)", row.quotient},
                                    {"Der_{n+1}", row.oracle},
                                    {"trusted", row.trusted}});
    }
    ordered_json low = ordered_json::array();
    for (const auto& [j, dim] : thm.low_degree_classes)
        low.push_back(ordered_json{{"degree", j}, {"dim", dim}});
    r.details["theorem_rows"] = std::move(rows);
    r.details["low_degree_H_(1)_classes"] = std::move(low);
    r.details["sign_identity_slices"] = dual.sign_identity_slices_checked();
    r.details["conjugation_slices"] = dual.conjugation_slices_checked();
    if (!thm.passed()) {
        for (const auto& row : thm.rows)
            if (row.trusted && !row.pass) {
                r.error = "TheoremMismatch: first failing degree n = " + std::to_string(row.n);
                break;
            }
        r.exit_code = math_mismatch;
    }
}

std::string cell(const std::optional<long>& v, int index, const std::optional<int>& trusted)
{
    if (!v)
        return "-";
    std::string s = std::to_string(*v);
    if (trusted && index > *trusted)
        s += "?";
    return s;
}

}  // namespace

Report run(const Options& options)
{
    Report r;
    r.command = options.command;
    r.format = options.format;
    r.model = options.model_path;
    sullivan::SullivanModel model;
    try {
        model = sullivan::load_model(options.model_path);
    }
    catch (const Error& e) {
        r.error = e.what();
        r.exit_code = parse_failure;
        return r;
    }
    catch (const std::exception& e) {
        r.error = std::string("ParseError: ") + e.what();
        r.exit_code = parse_failure;
        return r;
    }
    r.model = model.name;

    try {
        if (options.command == "validate")
            run_validate(r, model, options);
        else if (options.command == "betti")
            run_betti(r, model, options);
        else if (options.command == "hodge")
            run_hodge(r, model, options);
        else if (options.command == "quotient")
            run_quotient(r, model, options);
        else if (options.command == "aut-ranks")
            run_aut_ranks(r, model, options);
        else if (options.command == "verify")
            run_verify(r, model, options);
        else {
            r.error = "unknown command " + options.command;
            r.exit_code = internal_failure;
        }
    }
    catch (const Error& e) {
        r.error = e.what();
        r.exit_code = exit_code_for(e.code());
    }
    catch (const std::exception& e) {
        r.error = std::string("internal: ") + e.what();
        r.exit_code = internal_failure;
    }
    return r;
}

ordered_json to_json(const Report& r)
{
    ordered_json j;
    j["model"] = r.model;
    j["command"] = r.command;
    j["parameters"] = ordered_json{{"n_max", r.n_max ? ordered_json(*r.n_max) : ordered_json(nullptr)}, {"format", r.format}};
    j["trusted_up_to"] = r.trusted_up_to ? ordered_json(*r.trusted_up_to) : ordered_json(nullptr);
    ordered_json tables = ordered_json::object();
    ordered_json trust = ordered_json::object();
    for (const auto& t : r.tables) {
        ordered_json values = ordered_json::array();
        for (const auto& v : t.values)
            values.push_back(v ? ordered_json(*v) : ordered_json(nullptr));
        tables[t.label] = std::move(values);
        trust[t.label] = t.trusted_up_to ? ordered_json(*t.trusted_up_to) : ordered_json(nullptr);
    }
    j["tables"] = std::move(tables);
    j["table_trust"] = std::move(trust);
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back(
            ordered_json{{"check", v.check}, {"degree", v.degree ? ordered_json(*v.degree) : ordered_json(nullptr)}, {"pass", v.pass}});
    j["verdicts"] = std::move(verdicts);
    if (!r.details.is_null())
        j["details"] = r.details;
    if (!r.error.empty())
        j["error"] = r.error;
    j["exit_code"] = r.exit_code;
    return j;
}

std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string render_text(const Report& r)
{
    std::ostringstream out;
    out << "model: " << r.model << "\n";
    out << "command: " << r.command << "\n";
    if (r.n_max)
        out << "max degree: " << *r.n_max << "\n";
    out << "trusted through: " << (r.trusted_up_to ? std::to_string(*r.trusted_up_to) : std::string("all computed degrees")) << "\n";
    for (const auto& t : r.tables) {
        out << t.label << ":";
        for (std::size_t i = 0; i < t.values.size(); ++i)
            out << " " << cell(t.values[i], static_cast<int>(i), t.trusted_up_to);
        out << "\n";
    }
    if (r.details.contains("growth")) {
        const auto& g = r.details["growth"];
        out << "growth window: 0.." << g["window"].get<int>() << "\n";
        out << "growth ratios:";
        for (const auto& q : g["ratios"])
            out << " " << (q.is_null() ? std::string("-") : fixed(q.get<double>()));
        out << "\n";
        out << "growth constants: upper " << (g["upper_constant"].is_null() ? "-" : fixed(g["upper_constant"].get<double>()))
            << ", lower " << (g["lower_constant"].is_null() ? "-" : fixed(g["lower_constant"].get<double>())) << "\n";
        out << "growth classification: " << g["classification"].get<std::string>()
            << " (untrusted degrees: " << g["untrusted_degrees"].get<int>() << ")\n";
    }
    if (r.details.contains("basis")) {
        out << "basis:";
        for (const auto& b : r.details["basis"])
            out << " a" << b["index"].get<std::size_t>() << "=" << b["label"].get<std::string>() << "(" << b["degree"].get<int>() << ")";
        out << "\n";
        for (const auto& p : r.details["products"])
            out << "  a" << p[0].get<std::size_t>() << " * a" << p[1].get<std::size_t>() << " -> " << p[3].get<std::string>() << " a"
                << p[2].get<std::size_t>() << "\n";
        for (const auto& d : r.details["differential"])
            out << "  d a" << d[0].get<std::size_t>() << " -> " << d[2].get<std::string>() << " a" << d[1].get<std::size_t>() << "\n";
        out << "ideal: " << r.details["ideal"].get<std::string>() << "\n";
    }
    if (r.details.contains("theorem_rows")) {
        out << "n  H_(1)^{n+N}  H^{n+N}(A x sV)  Der_{n+1}\n";
        for (const auto& row : r.details["theorem_rows"]) {
            out << row["n"].get<int>() << "  " << row["H_(1)^{n+N}"].get<long>() << "  " << row["H^{n+N}(A x sV)"].get<long>() << "  "
                << row["Der_{n+1}"].get<long>() << (row["trusted"].get<bool>() ? "" : " ?") << "\n";
        }
        out << "low-degree H_(1) classes:";
        for (const auto& c : r.details["low_degree_H_(1)_classes"])
            out << " H^" << c["degree"].get<int>() << "=" << c["dim"].get<long>();
        out << "\n";
    }
    if (r.details.contains("fundamental_cocycle"))
        out << "fundamental cocycle: " << r.details["fundamental_cocycle"].get<std::string>() << "\n";
    for (const auto& v : r.verdicts) {
        out << (v.pass ? "PASS " : "FAIL ") << v.check;
        if (v.degree)
            out << " [" << *v.degree << "]";
        out << "\n";
    }
    if (!r.error.empty())
        out << "error: " << r.error << "\n";
    out << "exit code: " << r.exit_code << "\n";
    return out.str();
}

std::string render(const Report& r) { return r.format == "json" ? render_json(r) : render_text(r); }

}  // namespace hodgeloop::cli

#include "hodgeloop/error.h"
#include "hodgeloop/sullivan.h"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace hodgeloop::sullivan {

namespace {

struct RawLine {
    int number = 0;
    std::vector<std::string> words;
    std::string text;
};

bool is_identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}

int parse_int(const std::string& s, int line, const char* what)
{
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    }
    catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, std::string("line ") + std::to_string(line) + ": bad " + what + " '" + s + "'", line);
    }
    if (used != s.size())
        throw Error(ErrorCode::ParseError, std::string("line ") + std::to_string(line) + ": bad " + what + " '" + s + "'", line);
    return v;
}

/// Scanner for `[RAT*]NAME[^INT][*NAME[^INT]]... (+|-) ...`.
class PolyScanner {
public:
    PolyScanner(std::string text, const gca::FreeAlgebra& alg, int line) : s_(std::move(text)), alg_(alg), line_(line) {}

    gca::Element parse()
    {
        skip();
        if (pos_ == s_.size())
            fail("empty polynomial");
        gca::Element result;
        bool first = true;
        while (true) {
            skip();
            if (pos_ == s_.size())
                break;
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            }
            else if (!first)
                fail("expected '+' or '-' between terms");
            first = false;
            result += term(sign);
        }
        return result;
    }

private:
    std::string s_;
    const gca::FreeAlgebra& alg_;
    int line_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_) + ": " + msg, line_);
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    std::string digits()
    {
        std::string d;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            d += s_[pos_++];
        return d;
    }

    gca::Element term(int sign)
    {
        gca::Element acc(alg_.unit(), sign);
        bool seen_factor = false;
        while (true) {
            skip();
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                std::string num = digits();
                if (peek() == '/') {
                    ++pos_;
                    std::string den = digits();
                    if (den.empty() || den.find_first_not_of('0') == std::string::npos)
                        fail("bad rational coefficient");
                    num += "/" + den;
                }
                exactq::Rational q(num);
                q.canonicalize();
                acc *= q;
            }
            else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
                std::string name;
                while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                    name += s_[pos_++];
                auto idx = alg_.index_of(name);
                if (!idx)
                    throw Error(ErrorCode::UnknownGenerator, "line " + std::to_string(line_) + ": unknown generator '" + name + "'", line_);
                int power = 1;
                skip();
                if (peek() == '^') {
                    ++pos_;
                    skip();
                    std::string p = digits();
                    if (p.empty())
                        fail("missing exponent after '^'");
                    power = std::stoi(p);
                }
                const auto& gen = alg_.generator(*idx);
                if (gen.odd() && power > 1)
                    throw Error(ErrorCode::OddExponent,
                                "line " + std::to_string(line_) + ": odd generator '" + name + "' raised to power " + std::to_string(power), line_);
                gca::Element factor(alg_.monomial_of(*idx, power));
                for (const auto& [m, c] : acc.terms())
                    if (gen.odd() && m.exponent(*idx) > 0)
                        throw Error(ErrorCode::OddExponent,
                                    "line " + std::to_string(line_) + ": odd generator '" + name + "' repeated", line_);
                acc = alg_.multiply(acc, factor);
            }
            else
                fail(std::string("unexpected character '") + peek() + "'");
            seen_factor = true;
            skip();
            if (peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!seen_factor)
            fail("empty term");
        return acc;
    }
};

}  // namespace

SullivanModel parse_model(std::string_view text)
{
    std::vector<RawLine> lines;
    {
        std::istringstream in{std::string(text)};
        std::string raw;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            if (auto hash = raw.find('#'); hash != std::string::npos)
                raw.erase(hash);
            std::istringstream ws(raw);
            RawLine line{number, {}, raw};
            for (std::string w; ws >> w;)
                line.words.push_back(w);
            if (!line.words.empty())
                lines.push_back(std::move(line));
        }
    }

    SullivanModel model;
    std::optional<int> dim;
    bool completeness_seen = false;
    std::vector<gca::Generator> gens;
    std::set<std::string> names;
    std::vector<const RawLine*> diff_lines;

    auto fail = [](int line, const std::string& msg) -> Error {
        return Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg, line);
    };

    for (const RawLine& line : lines) {
        const auto& w = line.words;
        const std::string& key = w[0];
        if (key == "model") {
            if (w.size() < 2)
                throw fail(line.number, "model needs a name");
            model.name = w[1];
            for (std::size_t i = 2; i < w.size(); ++i)
                model.name += " " + w[i];
        }
        else if (key == "dim") {
            if (w.size() != 2)
                throw fail(line.number, "expected 'dim N'");
            if (dim)
                throw fail(line.number, "duplicate 'dim'");
            dim = parse_int(w[1], line.number, "dimension");
            if (*dim <= 0)
                throw fail(line.number, "formal dimension must be positive");
        }
        else if (key == "complete") {
            if (w.size() != 1 || completeness_seen)
                throw fail(line.number, "bad or duplicate completeness declaration");
            completeness_seen = true;
        }
        else if (key == "complete-to") {
            if (w.size() != 2 || completeness_seen)
                throw fail(line.number, "bad or duplicate completeness declaration");
            completeness_seen = true;
            model.complete_to = parse_int(w[1], line.number, "completeness degree");
            if (*model.complete_to <= 0)
                throw fail(line.number, "completeness degree must be positive");
        }
        else if (key == "gen") {
            if (w.size() != 3)
                throw fail(line.number, "expected 'gen NAME DEGREE'");
            if (!is_identifier(w[1]))
                throw fail(line.number, "bad generator name '" + w[1] + "'");
            if (!names.insert(w[1]).second)
                throw fail(line.number, "duplicate generator '" + w[1] + "'");
            const int degree = parse_int(w[2], line.number, "degree");
            if (degree < 1)
                throw fail(line.number, "generator degree must be positive");
            gens.push_back(gca::Generator{w[1], degree, gca::GeneratorKind::base, std::nullopt});
        }
        else if (key == "d")
            diff_lines.push_back(&line);
        else
            throw fail(line.number, "unknown directive '" + key + "'");
    }

    const int last_line = lines.empty() ? 0 : lines.back().number;
    if (!dim)
        throw fail(last_line, "missing required 'dim N'");
    if (!completeness_seen)
        throw fail(last_line, "missing required 'complete' or 'complete-to C'");
    if (gens.empty())
        throw fail(last_line, "model has no generators");
    for (const auto& g : gens)
        if (names.count("s" + g.name))
            throw fail(last_line, "generator name 's" + g.name + "' collides with the suspension of '" + g.name + "'");

    model.formal_dimension = *dim;
    model.algebra = gca::FreeAlgebra(gca::canonical_order(gens));
    model.differential.degree_shift = 1;
    model.differential.images.assign(model.algebra.size(), gca::Element{});

    std::set<std::size_t> defined;
    for (const RawLine* line : diff_lines) {
        const std::string& t = line->text;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw fail(line->number, "expected 'd NAME = POLY'");
        std::istringstream lhs(t.substr(0, eq));
        std::string d_word, name, extra;
        lhs >> d_word >> name;
        if (d_word != "d" || name.empty() || (lhs >> extra))
            throw fail(line->number, "expected 'd NAME = POLY'");
        auto idx = model.algebra.index_of(name);
        if (!idx)
            throw Error(ErrorCode::UnknownGenerator, "line " + std::to_string(line->number) + ": unknown generator '" + name + "'", line->number);
        if (!defined.insert(*idx).second)
            throw fail(line->number, "differential of '" + name + "' given twice");

        std::string rhs = t.substr(eq + 1);
        const auto first = rhs.find_first_not_of(" \t\r");
        const auto last = rhs.find_last_not_of(" \t\r");
        gca::Element image;
        if (first == std::string::npos || rhs.substr(first, last - first + 1) != "0")
            image = PolyScanner(rhs, model.algebra, line->number).parse();

        const int want = model.algebra.generator(*idx).degree + 1;
        for (const auto& [m, c] : image.terms())
            if (m.degree() != want)
                throw Error(ErrorCode::DegreeMismatch,
                            "line " + std::to_string(line->number) + ": term " + model.algebra.format(m) + " of d " + name +
                                " has degree " + std::to_string(m.degree()) + ", expected " + std::to_string(want),
                            line->number);
        model.differential.images[*idx] = std::move(image);
    }
    if (model.name.empty())
        model.name = "unnamed";
    return model;
}

SullivanModel load_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open model file '" + path + "'", 0);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

}  // namespace hodgeloop::sullivan

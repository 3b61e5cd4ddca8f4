#include "mbe/io.hpp"

#include "mbe/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace mbe {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line),
      column_(column), message_(message)
{
}

namespace {

struct Token {
    enum class Kind { Word, LBracket, RBracket, Comma, Equals, Arrow };
    Kind kind;
    std::string text;
    int column;  // 1-based
};

bool is_delimiter(char c)
{
    return c == ' ' || c == '\t' || c == '\r' || c == '[' || c == ']' || c == ',' || c == '=' || c == '#';
}

std::vector<Token> lex(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        const int col = static_cast<int>(i) + 1;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
        } else if (c == '#') {
            break;
        } else if (c == '[') {
            out.push_back({Token::Kind::LBracket, "[", col});
            ++i;
        } else if (c == ']') {
            out.push_back({Token::Kind::RBracket, "]", col});
            ++i;
        } else if (c == ',') {
            out.push_back({Token::Kind::Comma, ",", col});
            ++i;
        } else if (c == '=') {
            out.push_back({Token::Kind::Equals, "=", col});
            ++i;
        } else if (line.substr(i, 2) == "->") {
            out.push_back({Token::Kind::Arrow, "->", col});
            i += 2;
        } else {
            std::size_t j = i;
            while (j < line.size() && !is_delimiter(line[j]) && line.substr(j, 2) != "->") ++j;
            out.push_back({Token::Kind::Word, std::string(line.substr(i, j - i)), col});
            i = j;
        }
    }
    return out;
}

struct Statement {
    int line;
    std::vector<Token> tokens;
};

class Parser {
public:
    explicit Parser(std::string_view text)
    {
        int line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            ++line_no;
            auto tokens = lex(text.substr(start, end - start));
            if (!tokens.empty()) statements_.push_back({line_no, std::move(tokens)});
            start = end + 1;
        }
    }

    ParsedInstance run()
    {
        for (const Statement& s : statements_) {
            const Token& head = s.tokens.front();
            if (head.kind != Token::Kind::Word ||
                (head.text != "vertex" && head.text != "simplex" && head.text != "map" && head.text != "f")) {
                throw ParseError(s.line, head.column, "unknown directive '" + head.text + "'");
            }
        }
        read_vertices();
        read_simplices();
        if (names_.empty()) throw ParseError(1, 1, "no vertices declared");
        ParsedInstance out{Instance{build_complex(), std::nullopt, std::nullopt}, std::move(warnings_)};
        out.instance.map = read_map(out.instance.complex);
        out.instance.function = read_function(out.instance.complex);
        return out;
    }

private:
    std::vector<const Statement*> of_kind(const char* keyword) const
    {
        std::vector<const Statement*> out;
        for (const Statement& s : statements_) {
            if (s.tokens.front().text == keyword) out.push_back(&s);
        }
        return out;
    }

    static const Token& expect(const Statement& s, std::size_t i, Token::Kind kind, const char* what)
    {
        if (i >= s.tokens.size()) {
            const Token& last = s.tokens.back();
            throw ParseError(s.line, last.column + static_cast<int>(last.text.size()),
                             std::string("expected ") + what + " at end of line");
        }
        if (s.tokens[i].kind != kind) {
            throw ParseError(s.line, s.tokens[i].column,
                             std::string("expected ") + what + ", found '" + s.tokens[i].text + "'");
        }
        return s.tokens[i];
    }

    static void expect_end(const Statement& s, std::size_t i)
    {
        if (i < s.tokens.size()) {
            throw ParseError(s.line, s.tokens[i].column, "unexpected '" + s.tokens[i].text + "'");
        }
    }

    VertexId vertex(const Statement& s, const Token& t) const
    {
        auto it = ids_.find(t.text);
        if (it == ids_.end()) throw ParseError(s.line, t.column, "unknown vertex '" + t.text + "'");
        return it->second;
    }

    void read_vertices()
    {
        std::map<std::string, int> first_line;
        for (const Statement* s : of_kind("vertex")) {
            const Token& name = expect(*s, 1, Token::Kind::Word, "a vertex name");
            expect_end(*s, 2);
            if (auto it = first_line.find(name.text); it != first_line.end()) {
                throw ParseError(s->line, name.column,
                                 "duplicate vertex '" + name.text + "' (first declared on line " +
                                     std::to_string(it->second) + ")");
            }
            first_line.emplace(name.text, s->line);
            ids_.emplace(name.text, static_cast<VertexId>(names_.size()));
            names_.push_back(name.text);
        }
    }

    // Simplex lines may name undeclared vertices; they join the order after
    // the declared ones, in order of first appearance.
    VertexId vertex_or_new(const Statement& s, const Token& t)
    {
        if (auto it = ids_.find(t.text); it != ids_.end()) return it->second;
        const auto v = static_cast<VertexId>(names_.size());
        ids_.emplace(t.text, v);
        names_.push_back(t.text);
        warnings_.push_back("line " + std::to_string(s.line) + ": vertex " + t.text +
                            " was not declared; added by closure after the declared vertices");
        return v;
    }

    template <typename Lookup>
    Simplex simplex_from(const Statement& s, const std::vector<const Token*>& names, Lookup lookup) const
    {
        std::vector<VertexId> ids;
        std::set<VertexId> seen;
        for (const Token* t : names) {
            const VertexId v = lookup(*t);
            if (!seen.insert(v).second) {
                throw ParseError(s.line, t->column, "vertex '" + t->text + "' repeated in simplex");
            }
            ids.push_back(v);
        }
        return Simplex::spanned_by(std::move(ids));
    }

    void read_simplices()
    {
        std::map<Simplex, int> first_line;
        for (const Statement* s : of_kind("simplex")) {
            std::vector<const Token*> names;
            for (std::size_t i = 1; i < s->tokens.size(); ++i) {
                names.push_back(&expect(*s, i, Token::Kind::Word, "a vertex name"));
            }
            if (names.empty()) expect(*s, 1, Token::Kind::Word, "a vertex name");
            Simplex simplex = simplex_from(*s, names, [&](const Token& t) { return vertex_or_new(*s, t); });
            if (auto it = first_line.find(simplex); it != first_line.end()) {
                throw ParseError(s->line, s->tokens[1].column,
                                 "duplicate simplex (first declared on line " + std::to_string(it->second) + ")");
            }
            first_line.emplace(simplex, s->line);
            declared_.push_back({s->line, std::move(simplex)});
        }
    }

    OrderedComplex build_complex()
    {
        std::vector<Simplex> seeds;
        std::set<Simplex> explicit_set;
        for (const auto& [line, simplex] : declared_) {
            seeds.push_back(simplex);
            explicit_set.insert(simplex);
        }
        OrderedComplex complex = OrderedComplex::generated_by(names_.size(), seeds, names_);
        std::set<Simplex> warned;
        for (const auto& [line, simplex] : declared_) {
            for (const Simplex& face : simplex.all_faces()) {
                if (face.dimension() < 1 || explicit_set.contains(face) || !warned.insert(face).second) continue;
                warnings_.push_back("line " + std::to_string(line) + ": face " + complex.format(face) + " of " +
                                    complex.format(simplex) + " added by closure");
            }
        }
        return complex;
    }

    std::optional<SimplicialSelfMap> read_map(const OrderedComplex& complex) const
    {
        const auto lines = of_kind("map");
        if (lines.empty()) return std::nullopt;
        std::vector<std::optional<VertexId>> image(complex.vertex_count());
        for (const Statement* s : lines) {
            const Token& from = expect(*s, 1, Token::Kind::Word, "a vertex name");
            expect(*s, 2, Token::Kind::Arrow, "'->'");
            const Token& to = expect(*s, 3, Token::Kind::Word, "a vertex name");
            expect_end(*s, 4);
            const VertexId u = vertex(*s, from);
            const VertexId v = vertex(*s, to);
            if (image[u]) throw ParseError(s->line, from.column, "duplicate map entry for '" + from.text + "'");
            image[u] = v;
        }
        std::vector<VertexId> out;
        for (std::size_t v = 0; v < image.size(); ++v) {
            if (!image[v]) {
                throw ParseError(lines.front()->line, 1,
                                 "map has no image for vertex '" + complex.vertex_name(static_cast<VertexId>(v)) + "'");
            }
            out.push_back(*image[v]);
        }
        return SimplicialSelfMap(std::move(out));
    }

    std::optional<MorseBottFunction> read_function(const OrderedComplex& complex) const
    {
        const auto lines = of_kind("f");
        if (lines.empty()) return std::nullopt;
        std::map<Simplex, int> values;
        for (const Statement* s : lines) {
            std::size_t i = 1;
            std::vector<const Token*> names;
            if (i < s->tokens.size() && s->tokens[i].kind == Token::Kind::LBracket) {
                ++i;
                names.push_back(&expect(*s, i++, Token::Kind::Word, "a vertex name"));
                while (i < s->tokens.size() && s->tokens[i].kind == Token::Kind::Comma) {
                    ++i;
                    names.push_back(&expect(*s, i++, Token::Kind::Word, "a vertex name"));
                }
                expect(*s, i++, Token::Kind::RBracket, "']'");
            } else {
                names.push_back(&expect(*s, i++, Token::Kind::Word, "a simplex"));
            }
            expect(*s, i++, Token::Kind::Equals, "'='");
            const Token& value_token = expect(*s, i++, Token::Kind::Word, "an integer value");
            expect_end(*s, i);

            const Simplex simplex = simplex_from(*s, names, [&](const Token& t) { return vertex(*s, t); });
            if (!complex.contains(simplex)) {
                throw ParseError(s->line, s->tokens[1].column,
                                 "f assigned to " + complex.format(simplex) + ", which is not a simplex of the complex");
            }
            long long value = 0;
            const char* first = value_token.text.data();
            const char* last = first + value_token.text.size();
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec == std::errc::result_out_of_range) {
                throw ParseError(s->line, value_token.column, "f value '" + value_token.text + "' out of range");
            }
            if (ec != std::errc() || ptr != last) {
                throw ParseError(s->line, value_token.column, "invalid f value '" + value_token.text + "'");
            }
            if (value < 0 || value > 1000000) {
                throw ParseError(s->line, value_token.column,
                                 "f value " + value_token.text + " out of range (expected 0..1000000)");
            }
            if (!values.emplace(simplex, static_cast<int>(value)).second) {
                throw ParseError(s->line, s->tokens[1].column,
                                 "duplicate f value for " + complex.format(simplex));
            }
        }
        std::string missing;
        for (const Simplex& s : complex.simplices()) {
            if (!values.contains(s)) missing += (missing.empty() ? "" : " ") + complex.format(s);
        }
        if (!missing.empty()) throw ParseError(lines.front()->line, 1, "f is not defined on: " + missing);
        return MorseBottFunction(complex, values);
    }

    std::vector<Statement> statements_;
    std::vector<std::string> names_;
    std::map<std::string, VertexId> ids_;
    std::vector<std::pair<int, Simplex>> declared_;
    std::vector<std::string> warnings_;
};

std::string simplex_spec(const OrderedComplex& complex, const Simplex& s) { return complex.format(s); }

}  // namespace

ParsedInstance parse_instance(std::string_view text) { return Parser(text).run(); }

std::string render_instance(const Instance& instance)
{
    const OrderedComplex& k = instance.complex;
    std::ostringstream out;
    for (const std::string& name : k.vertex_names()) out << "vertex " << name << "\n";
    bool header = false;
    for (const Simplex& s : k.simplices()) {
        if (s.dimension() < 1) continue;
        if (!header) out << "\n";
        header = true;
        out << "simplex";
        for (VertexId v : s.vertices()) out << " " << k.vertex_name(v);
        out << "\n";
    }
    if (instance.map) {
        out << "\n";
        for (VertexId v = 0; v < k.vertex_count(); ++v) {
            out << "map " << k.vertex_name(v) << " -> " << k.vertex_name((*instance.map)(v)) << "\n";
        }
    }
    if (instance.function) {
        out << "\n";
        for (std::size_t i = 0; i < k.size(); ++i) {
            out << "f " << simplex_spec(k, k.simplex(i)) << " = " << (*instance.function)(i) << "\n";
        }
    }
    return out.str();
}

Subcomplex parse_subcomplex(const OrderedComplex& complex, std::string_view specs)
{
    const auto tokens = lex(specs);
    std::map<std::string, VertexId> ids;
    for (VertexId v = 0; v < complex.vertex_count(); ++v) ids.emplace(complex.vertex_name(v), v);
    auto lookup = [&](const Token& t) {
        if (t.kind != Token::Kind::Word) throw ParseError(1, t.column, "expected a vertex name, found '" + t.text + "'");
        auto it = ids.find(t.text);
        if (it == ids.end()) throw ParseError(1, t.column, "unknown vertex '" + t.text + "'");
        return it->second;
    };

    std::vector<Simplex> seeds;
    std::size_t i = 0;
    while (i < tokens.size()) {
        const int column = tokens[i].column;
        std::vector<VertexId> verts;
        if (tokens[i].kind == Token::Kind::Comma) {
            ++i;
            continue;
        }
        if (tokens[i].kind == Token::Kind::LBracket) {
            ++i;
            while (i < tokens.size() && tokens[i].kind != Token::Kind::RBracket) {
                if (tokens[i].kind != Token::Kind::Comma) verts.push_back(lookup(tokens[i]));
                ++i;
            }
            if (i == tokens.size()) throw ParseError(1, column, "unterminated '['");
            ++i;
        } else {
            verts.push_back(lookup(tokens[i++]));
        }
        if (verts.empty()) throw ParseError(1, column, "empty simplex");
        Simplex s = Simplex::spanned_by(verts);
        if (!complex.contains(s)) throw ParseError(1, column, complex.format(s) + " is not a simplex of the complex");
        seeds.push_back(std::move(s));
    }
    return closure(complex, seeds);
}

ReportFormat parse_report_format(std::string_view name)
{
    if (name == "text") return ReportFormat::Text;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw UsageError("unknown format '" + std::string(name) + "' (expected text, csv or json)");
}

std::vector<int> parse_power_list(std::string_view spec)
{
    auto number = [&](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || v < 1 || v > 10000) {
            throw UsageError("invalid power '" + std::string(s) + "' (expected a positive integer)");
        }
        return v;
    };
    std::vector<int> out;
    if (auto dots = spec.find(".."); dots != std::string_view::npos) {
        const int lo = number(spec.substr(0, dots));
        const int hi = number(spec.substr(dots + 2));
        if (lo > hi) throw UsageError("empty power range '" + std::string(spec) + "'");
        for (int l = lo; l <= hi; ++l) out.push_back(l);
        return out;
    }
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t end = spec.find(',', start);
        if (end == std::string_view::npos) end = spec.size();
        out.push_back(number(spec.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string title(const InequalityReport& report)
{
    return report.identity_map ? "Morse-Bott inequalities (identity map)"
                               : "Morse-Bott inequalities for the endomorphism g";
}

void render_text(const InequalityReport& report, std::ostream& out)
{
    out << title(report) << "\n";
    out << "dimension n = " << report.dimension << ", stabilization exponent N = " << report.stabilization << "\n";
    if (!report.validated) out << "WARNING: unvalidated function (not Forman-Morse-Bott; exploratory mode)\n";
    for (const PowerReport& p : report.powers) {
        out << "\nStrong inequalities (l = " << p.power << ")\n";
        for (const InequalityRow& r : p.strong) {
            out << "  j=" << r.j << ": " << to_integer(r.lhs) << " ≤ " << to_integer(r.rhs);
            if (r.j == report.dimension && r.equal()) out << " (equality)";
            out << "\n";
        }
        out << "Weak inequalities (l = " << p.power << ")\n";
        for (const InequalityRow& r : p.weak) {
            out << "  j=" << r.j << ": " << to_integer(r.lhs) << " ≤ " << to_integer(r.rhs) << "\n";
        }
    }
}

void render_csv(const InequalityReport& report, std::ostream& out)
{
    out << "power,inequality,j,lhs,rhs,holds\n";
    for (const PowerReport& p : report.powers) {
        for (const char* kind : {"strong", "weak"}) {
            const auto& rows = std::string_view(kind) == "strong" ? p.strong : p.weak;
            for (const InequalityRow& r : rows) {
                out << p.power << "," << kind << "," << r.j << "," << to_integer(r.lhs) << "," << to_integer(r.rhs)
                    << "," << (r.holds() ? "true" : "false") << "\n";
            }
        }
    }
}

void render_json(const InequalityReport& report, std::ostream& out)
{
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["dimension"] = report.dimension;
    doc["identity_map"] = report.identity_map;
    doc["validated"] = report.validated;
    doc["stabilization_exponent"] = report.stabilization;
    doc["powers"] = ordered_json::array();
    for (const PowerReport& p : report.powers) {
        ordered_json entry;
        entry["power"] = p.power;
        auto rows = [](const std::vector<InequalityRow>& in) {
            ordered_json arr = ordered_json::array();
            for (const InequalityRow& r : in) {
                arr.push_back({{"j", r.j}, {"lhs", to_integer(r.lhs)}, {"rhs", to_integer(r.rhs)}, {"holds", r.holds()}});
            }
            return arr;
        };
        entry["strong"] = rows(p.strong);
        entry["weak"] = rows(p.weak);
        entry["equality_at_n"] = p.equality_at_top();
        ordered_json global = ordered_json::array();
        for (const Rational& t : p.global_traces) global.push_back(to_integer(t));
        entry["global_traces"] = global;
        ordered_json local = ordered_json::array();
        for (const LocalTrace& t : p.local) {
            ordered_json levels = ordered_json::array();
            for (const Rational& v : t.per_level) levels.push_back(to_integer(v));
            local.push_back({{"k", t.degree}, {"total", to_integer(t.total)}, {"per_level", levels}});
        }
        entry["local_traces"] = local;
        doc["powers"].push_back(entry);
    }
    out << doc.dump(2) << "\n";
}

}  // namespace

std::string render_report(const InequalityReport& report, ReportFormat format)
{
    std::ostringstream out;
    switch (format) {
    case ReportFormat::Text:
        render_text(report, out);
        break;
    case ReportFormat::Csv:
        render_csv(report, out);
        break;
    case ReportFormat::Json:
        render_json(report, out);
        break;
    }
    return out.str();
}

}  // namespace mbe

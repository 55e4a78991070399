#include "frobvir/model_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "frobvir/errors.hpp"

namespace frobvir {

namespace {

struct Token {
    std::string text;
    int line = 0;
    int column = 0;
};

using Line = std::vector<Token>;

// Splits on whitespace, keeping 1-based columns.
Line tokenize(const std::string& text, int line, int offset = 0) {
    Line out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) out.push_back({text.substr(i, j - i), line, offset + static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

Rational rational_at(const Token& t) {
    try {
        return parse_rational(t.text);
    } catch (const std::invalid_argument&) {
        throw ParseError("expected a rational number, found '" + t.text + "'", t.line, t.column);
    }
}

int integer_at(const Token& t) {
    try {
        std::size_t used = 0;
        int v = std::stoi(t.text, &used);
        if (used == t.text.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("expected an integer, found '" + t.text + "'", t.line, t.column);
}

struct RawTerm {
    Token coeff;
    Line factors;
};

struct RawModel {
    std::map<std::string, Token> keys;
    std::vector<Line> novikov, basis, eta, chern;
    std::vector<RawTerm> f0, f1;
    bool has_f1 = false;
};

RawModel read_sections(std::string_view text) {
    RawModel raw;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const int col = static_cast<int>(first) + 1;
        if (line[first] == '[') {
            const auto close = line.find(']', first);
            if (close == std::string::npos) throw ParseError("unterminated section header", number, col);
            section = line.substr(first + 1, close - first - 1);
            static const char* known[] = {"model", "novikov", "basis", "eta", "chern", "f0", "f1"};
            if (std::find(std::begin(known), std::end(known), section) == std::end(known))
                throw ParseError("unknown section '" + section + "'", number, col);
            if (section == "f1") raw.has_f1 = true;
            if (line.find_first_not_of(" \t", close + 1) != std::string::npos)
                throw ParseError("unexpected text after section header", number,
                                 static_cast<int>(line.find_first_not_of(" \t", close + 1)) + 1);
            continue;
        }
        if (section.empty()) throw ParseError("content before the first section", number, col);
        if (section == "model") {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ParseError("expected 'key = value'", number, col);
            Line key = tokenize(line.substr(0, eq), number);
            if (key.size() != 1) throw ParseError("expected a single key before '='", number, col);
            std::string value = line.substr(eq + 1);
            const auto vstart = value.find_first_not_of(" \t");
            const auto vend = value.find_last_not_of(" \t");
            if (vstart == std::string::npos) throw ParseError("missing value", number, static_cast<int>(eq) + 2);
            Token v{value.substr(vstart, vend - vstart + 1), number, static_cast<int>(eq + 1 + vstart) + 1};
            if (!raw.keys.emplace(key[0].text, v).second)
                throw ParseError("duplicate key '" + key[0].text + "'", number, key[0].column);
        } else if (section == "f0" || section == "f1") {
            const auto semi = line.find(';');
            Line coeff = tokenize(line.substr(0, semi), number);
            if (coeff.size() != 1) throw ParseError("expected 'coeff ; var^e ...'", number, col);
            RawTerm term{coeff[0], {}};
            if (semi != std::string::npos)
                term.factors = tokenize(line.substr(semi + 1), number, static_cast<int>(semi) + 1);
            (section == "f0" ? raw.f0 : raw.f1).push_back(std::move(term));
        } else {
            Line tokens = tokenize(line, number);
            if (section == "novikov") raw.novikov.push_back(tokens);
            else if (section == "basis") raw.basis.push_back(tokens);
            else if (section == "eta") raw.eta.push_back(tokens);
            else raw.chern.push_back(tokens);
        }
    }
    return raw;
}

const Token& require_key(const RawModel& raw, const std::string& key) {
    auto it = raw.keys.find(key);
    if (it == raw.keys.end()) throw ParseError("missing key '" + key + "' in [model]", 1, 1);
    return it->second;
}

RationalMatrix read_matrix(const std::vector<Line>& rows, std::size_t n, const char* name) {
    if (rows.size() != n)
        throw ParseError(std::string("[") + name + "] needs " + std::to_string(n) + " rows",
                         rows.empty() ? 1 : rows.back().front().line, 1);
    RationalMatrix m;
    for (const auto& row : rows) {
        if (row.size() != n)
            throw ParseError(std::string("[") + name + "] rows need " + std::to_string(n) + " entries",
                             row.front().line, row.front().column);
        std::vector<Rational> r;
        for (const auto& t : row) r.push_back(rational_at(t));
        m.push_back(std::move(r));
    }
    return m;
}

TruncatedSeries read_series(const std::vector<RawTerm>& terms, const VariableTable& table, int order) {
    SeriesBuilder b(table, order);
    for (const auto& term : terms) {
        Monomial m(table.size());
        for (const auto& f : term.factors) {
            const auto caret = f.text.find('^');
            const std::string var = f.text.substr(0, caret);
            auto idx = table.find(var);
            if (!idx) throw ParseError("unknown variable '" + var + "'", f.line, f.column);
            unsigned e = 1;
            if (caret != std::string::npos) {
                Token et{f.text.substr(caret + 1), f.line, f.column + static_cast<int>(caret) + 1};
                int v = integer_at(et);
                if (v < 1) throw ParseError("exponent must be positive", et.line, et.column);
                e = static_cast<unsigned>(v);
            }
            m.set_exponent(*idx, m.exponent(*idx) + e);
        }
        if (m.weighted_degree(table) > order)
            throw ParseError("term exceeds the declared order " + std::to_string(order), term.coeff.line,
                             term.coeff.column);
        b.add(std::move(m), rational_at(term.coeff));
    }
    return std::move(b).build();
}

}  // namespace

ModelSpec parse_model(std::string_view text) {
    RawModel raw = read_sections(text);
    ModelSpec spec;
    spec.name = require_key(raw, "name").text;
    spec.dim = integer_at(require_key(raw, "dim"));
    spec.euler_char = rational_at(require_key(raw, "euler_char"));
    spec.c1_cd1 = rational_at(require_key(raw, "c1_cd1"));
    spec.order = integer_at(require_key(raw, "order"));
    for (const auto& [key, tok] : raw.keys) {
        static const char* known[] = {"name", "dim", "euler_char", "c1_cd1", "order", "base_point", "f1_order"};
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw ParseError("unknown key '" + key + "'", tok.line, 1);
    }

    for (const auto& row : raw.novikov) {
        if (row.size() != 2) throw ParseError("expected 'name weight'", row.front().line, row.front().column);
        spec.novikov.push_back({row[0].text, integer_at(row[1])});
    }
    for (const auto& row : raw.basis) {
        if (row.size() != 3) throw ParseError("expected 'label p q'", row.front().line, row.front().column);
        spec.basis.push_back({row[0].text, integer_at(row[1]), integer_at(row[2])});
    }
    if (spec.basis.empty()) throw ParseError("[basis] is empty", 1, 1);
    const std::size_t n = spec.basis.size();
    spec.eta = read_matrix(raw.eta, n, "eta");
    spec.chern = read_matrix(raw.chern, n, "chern");

    spec.base_point.assign(n, Rational(0));
    if (auto it = raw.keys.find("base_point"); it != raw.keys.end()) {
        std::vector<Rational> bp;
        std::string s = it->second.text;
        std::size_t start = 0;
        while (true) {
            const auto comma = s.find(',', start);
            std::string piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            Line t = tokenize(piece, it->second.line, it->second.column - 1 + static_cast<int>(start));
            if (t.size() != 1) throw ParseError("malformed base_point", it->second.line, it->second.column);
            bp.push_back(rational_at(t[0]));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (bp.size() != n)
            throw ParseError("base_point needs " + std::to_string(n) + " entries", it->second.line, it->second.column);
        spec.base_point = std::move(bp);
    }

    VariableTable table = make_table(n, spec.novikov);
    spec.f0 = recenter(read_series(raw.f0, table, spec.order), spec.base_point);
    if (raw.has_f1) {
        int f1_order = spec.order;
        if (auto it = raw.keys.find("f1_order"); it != raw.keys.end()) f1_order = integer_at(it->second);
        spec.f1 = recenter(read_series(raw.f1, table, f1_order), spec.base_point);
    }
    validate(spec);
    return spec;
}

ModelSpec load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0, 0);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string serialize_terms(const TruncatedSeries& s) {
    std::vector<const Term*> order;
    for (const auto& t : s.terms()) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const Term* x, const Term* y) {
        if (x->degree != y->degree) return x->degree < y->degree;
        return x->monomial > y->monomial;
    });
    std::string out;
    const auto& table = s.table();
    for (const Term* t : order) {
        out += to_string(t->coeff) + " ;";
        for (std::size_t i = 0; i < t->monomial.size(); ++i) {
            unsigned e = t->monomial.exponent(i);
            if (e == 0) continue;
            out += " " + table.name(i);
            if (e > 1) out += "^" + std::to_string(e);
        }
        out += "\n";
    }
    return out;
}

std::string serialize_model(const ModelSpec& model) {
    std::ostringstream out;
    out << "[model]\n";
    out << "name = " << model.name << "\n";
    out << "dim = " << model.dim << "\n";
    out << "euler_char = " << to_string(model.euler_char) << "\n";
    out << "c1_cd1 = " << to_string(model.c1_cd1) << "\n";
    out << "order = " << model.order << "\n";
    if (model.f1) out << "f1_order = " << model.f1->valid_order() << "\n";
    out << "base_point = ";
    for (std::size_t i = 0; i < model.base_point.size(); ++i)
        out << (i ? ", " : "") << to_string(model.base_point[i]);
    out << "\n";
    if (!model.novikov.empty()) {
        out << "\n[novikov]\n";
        for (const auto& v : model.novikov) out << v.name << " " << v.weight << "\n";
    }
    out << "\n[basis]\n";
    for (const auto& b : model.basis) out << b.label << " " << b.p << " " << b.q << "\n";
    auto matrix = [&](const char* name, const RationalMatrix& m) {
        out << "\n[" << name << "]\n";
        for (const auto& row : m) {
            for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << to_string(row[j]);
            out << "\n";
        }
    };
    matrix("eta", model.eta);
    matrix("chern", model.chern);
    out << "\n[f0]\n" << serialize_terms(uncenter(model.f0, model.base_point));
    if (model.f1) out << "\n[f1]\n" << serialize_terms(uncenter(*model.f1, model.base_point));
    return out.str();
}

}  // namespace frobvir

#include "tfline/config.hpp"

#include "tfline/errors.hpp"
#include "tfline/rational.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tfline {

std::vector<double> TimeGrid::points() const {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::uint64_t i = 0; i < count; ++i) {
        out[i] = i + 1 == count ? stop : start + step * static_cast<double>(i);
    }
    return out;
}

namespace {

struct Token {
    std::string text;
    std::size_t column;
};

struct Entry {
    std::string section;
    std::string key;
    std::vector<Token> values;
    std::size_t line;
    std::size_t column;
};

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"line", {"termination", "delta_x", "r_s", "r_r"}},
        {"params", {"r", "l", "g", "c"}},
        {"source", {"kind", "amplitude", "times", "values"}},
        {"sample", {"digits", "bound"}},
        {"profile", {"kind", "a", "b", "p", "first_n", "values"}},
        {"analysis", {"window", "eps", "n", "bound_column"}},
        {"simulate", {"n", "t_start", "t_stop", "t_count"}},
        {"xcheck", {"s", "m_max"}},
        {"output", {"csv"}},
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

class Document {
public:
    explicit Document(std::istream& in) {
        std::string raw;
        std::size_t line_no = 0;
        std::string section;
        while (std::getline(in, raw)) {
            ++line_no;
            const auto hash = raw.find('#');
            const std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            if (line[first] == '[') {
                const auto close = line.find(']', first);
                if (close == std::string::npos || !trim(line.substr(close + 1)).empty()) {
                    throw ConfigError("malformed section header", line_no, first + 1);
                }
                section = trim(line.substr(first + 1, close - first - 1));
                if (!schema().count(section)) {
                    throw ConfigError("unknown section [" + section + "]", line_no, first + 2);
                }
                if (!sections_.insert(section).second) {
                    throw ConfigError("duplicate section [" + section + "]", line_no, first + 1);
                }
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("expected 'key = value'", line_no, first + 1);
            }
            if (section.empty()) {
                throw ConfigError("key outside of any [section]", line_no, first + 1);
            }
            const std::string key = trim(line.substr(0, eq));
            if (key.empty()) {
                throw ConfigError("empty key", line_no, first + 1);
            }
            if (!schema().at(section).count(key)) {
                throw ConfigError("unknown key '" + key + "' in [" + section + "]", line_no,
                                  first + 1);
            }
            Entry entry{section, key, {}, line_no, first + 1};
            std::size_t pos = eq + 1;
            while (pos < line.size()) {
                while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                             line[pos] == '\r' || line[pos] == ',')) {
                    ++pos;
                }
                if (pos >= line.size()) break;
                const std::size_t start = pos;
                while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' &&
                       line[pos] != '\r' && line[pos] != ',') {
                    ++pos;
                }
                entry.values.push_back(Token{line.substr(start, pos - start), start + 1});
            }
            if (entry.values.empty()) {
                throw ConfigError("missing value for '" + key + "'", line_no, eq + 2);
            }
            const std::string id = section + "." + key;
            if (index_.count(id)) {
                throw ConfigError("duplicate key '" + key + "' in [" + section + "]", line_no,
                                  first + 1);
            }
            index_[id] = entries_.size();
            entries_.push_back(std::move(entry));
        }
        last_line_ = line_no;
    }

    const Entry* find(const std::string& section, const std::string& key) const {
        const auto it = index_.find(section + "." + key);
        return it == index_.end() ? nullptr : &entries_[it->second];
    }

    const Entry& require(const std::string& section, const std::string& key) const {
        if (const Entry* e = find(section, key)) return *e;
        throw ConfigError("missing required key '" + key + "' in [" + section + "]",
                          last_line_ + 1, 1);
    }

    bool has_section(const std::string& section) const { return sections_.count(section) != 0; }

private:
    std::vector<Entry> entries_;
    std::map<std::string, std::size_t> index_;
    std::set<std::string> sections_;
    std::size_t last_line_ = 0;
};

[[noreturn]] void fail(const Entry& e, const Token& tok, const std::string& message) {
    throw ConfigError(e.section + "." + e.key + ": " + message, e.line, tok.column);
}

[[noreturn]] void fail(const Entry& e, const std::string& message) {
    throw ConfigError(e.section + "." + e.key + ": " + message, e.line, e.column);
}

const Token& single(const Entry& e) {
    if (e.values.size() != 1) fail(e, e.values[1], "expected a single value");
    return e.values.front();
}

struct Number {
    double value;
    std::optional<Rational> exact;
};

Number parse_number(const Entry& e, const Token& tok) {
    if (auto r = Rational::parse(tok.text)) {
        return Number{r->to_double(), r};
    }
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.text.c_str(), &end);
    if (end != tok.text.c_str() + tok.text.size() || errno == ERANGE || !std::isfinite(v)) {
        fail(e, tok, "not a number: '" + tok.text + "'");
    }
    return Number{v, std::nullopt};
}

Number number(const Entry& e) {
    return parse_number(e, single(e));
}

std::uint64_t parse_count(const Entry& e, const Token& tok) {
    const auto r = Rational::parse(tok.text);
    if (!r || r->num() < 0 || tok.text.find_first_of("./") != std::string::npos) {
        fail(e, tok, "expected a nonnegative integer, got '" + tok.text + "'");
    }
    return static_cast<std::uint64_t>(r->num());
}

std::vector<std::uint64_t> count_list(const Entry& e) {
    std::vector<std::uint64_t> out;
    for (const auto& tok : e.values) out.push_back(parse_count(e, tok));
    return out;
}

std::vector<double> number_list(const Entry& e) {
    std::vector<double> out;
    for (const auto& tok : e.values) out.push_back(parse_number(e, tok).value);
    return out;
}

std::string word(const Entry& e) {
    return single(e).text;
}

// "1.5", "2+1i", "0.5-3i"
std::optional<std::complex<double>> parse_complex(const std::string& text) {
    if (text.empty()) return std::nullopt;
    if (text.back() != 'i') {
        if (auto r = Rational::parse(text)) return std::complex<double>(r->to_double(), 0.0);
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size() || !std::isfinite(v)) return std::nullopt;
        return std::complex<double>(v, 0.0);
    }
    const std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < body.size(); ++i) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
        }
    }
    if (split == std::string::npos) return std::nullopt;
    char* end = nullptr;
    const std::string re_s = body.substr(0, split);
    const std::string im_s = body.substr(split);
    const double re = std::strtod(re_s.c_str(), &end);
    if (end != re_s.c_str() + re_s.size()) return std::nullopt;
    const double im = std::strtod(im_s.c_str(), &end);
    if (end != im_s.c_str() + im_s.size()) return std::nullopt;
    if (!std::isfinite(re) || !std::isfinite(im)) return std::nullopt;
    return std::complex<double>(re, im);
}

Resistance parse_receiving(const Entry& e) {
    const Token& tok = single(e);
    if (tok.text == "inf" || tok.text == "open" || tok.text == "infinity") {
        return Resistance::open();
    }
    const double v = parse_number(e, tok).value;
    if (v < 0.0) fail(e, tok, "resistance must be >= 0");
    return Resistance(v);
}

LineParams parse_params(const Document& doc) {
    const Entry& l_e = doc.require("params", "l");
    const Entry& c_e = doc.require("params", "c");
    const Number l = number(l_e);
    const Number c = number(c_e);
    Number r{0.0, Rational(0)};
    Number g{0.0, Rational(0)};
    if (const Entry* e = doc.find("params", "r")) r = number(*e);
    if (const Entry* e = doc.find("params", "g")) g = number(*e);
    if (!(l.value > 0.0)) fail(l_e, "l must be > 0");
    if (!(c.value > 0.0)) fail(c_e, "c must be > 0");
    if (r.value < 0.0) fail(*doc.find("params", "r"), "r must be >= 0");
    if (g.value < 0.0) fail(*doc.find("params", "g"), "g must be >= 0");
    if (r.exact && l.exact && g.exact && c.exact) {
        return LineParams::from_rationals(*r.exact, *l.exact, *g.exact, *c.exact);
    }
    return LineParams(r.value, l.value, g.value, c.value);
}

SourceSpec parse_source(const Document& doc) {
    const Entry* kind_e = doc.find("source", "kind");
    const std::string kind = kind_e ? word(*kind_e) : "unit_step";
    if (kind == "unit_step") {
        return SourceSpec::unit_step();
    }
    if (kind == "step") {
        const Entry& amp = doc.require("source", "amplitude");
        const double a = number(amp).value;
        if (a == 0.0) fail(amp, "amplitude must be nonzero");
        return SourceSpec::scaled_step(a);
    }
    if (kind == "table") {
        const Entry& times = doc.require("source", "times");
        const Entry& values = doc.require("source", "values");
        try {
            return SourceSpec::table(number_list(times), number_list(values));
        } catch (const ParameterError& err) {
            fail(times, err.what());
        }
    }
    fail(*kind_e, kind_e->values.front(), "unknown source kind '" + kind + "'");
}

std::optional<TimeProfile> parse_profile(const Document& doc) {
    if (!doc.has_section("profile")) return std::nullopt;
    const Entry& kind_e = doc.require("profile", "kind");
    const std::string kind = word(kind_e);
    try {
        if (kind == "linear") {
            const double a = number(doc.require("profile", "a")).value;
            const Entry* b_e = doc.find("profile", "b");
            return TimeProfile::linear(a, b_e ? number(*b_e).value : 0.0);
        }
        if (kind == "superlinear") {
            const Entry* a_e = doc.find("profile", "a");
            const double a = a_e ? number(*a_e).value : 1.0;
            return TimeProfile::superlinear(a, number(doc.require("profile", "p")).value);
        }
        if (kind == "table") {
            const Entry* f_e = doc.find("profile", "first_n");
            const std::uint64_t first = f_e ? parse_count(*f_e, single(*f_e)) : 1;
            return TimeProfile::table(first, number_list(doc.require("profile", "values")));
        }
    } catch (const ParameterError& err) {
        fail(kind_e, err.what());
    }
    fail(kind_e, kind_e.values.front(), "unknown profile kind '" + kind + "'");
}

RunConfig build(const Document& doc) {
    // [line]
    const Entry& term_e = doc.require("line", "termination");
    std::vector<std::uint64_t> term = count_list(term_e);
    if (term.back() < 1) {
        fail(term_e, term_e.values.back(), "leading termination digit must be >= 1");
    }
    const Entry& dx_e = doc.require("line", "delta_x");
    const double dx = number(dx_e).value;
    if (!(dx > 0.0)) fail(dx_e, dx_e.values.front(), "delta_x must be > 0");
    const Entry& rs_e = doc.require("line", "r_s");
    const Token& rs_tok = single(rs_e);
    if (rs_tok.text == "inf" || rs_tok.text == "open") {
        fail(rs_e, rs_tok, "sending-end resistance must be finite");
    }
    const double r_s = parse_number(rs_e, rs_tok).value;
    if (r_s < 0.0) fail(rs_e, rs_tok, "resistance must be >= 0");
    const Resistance r_r = parse_receiving(doc.require("line", "r_r"));

    TerminatedLineSpec line{std::move(term), dx, r_s, r_r, parse_params(doc), parse_source(doc)};

    // [sample]
    const Entry& digits_e = doc.require("sample", "digits");
    OrdinalIndex sample(count_list(digits_e));
    DigitBound bound = DigitBound::Strict;
    if (const Entry* b = doc.find("sample", "bound")) {
        const std::string w = word(*b);
        if (w == "strict") {
            bound = DigitBound::Strict;
        } else if (w == "nested") {
            bound = DigitBound::Nested;
        } else {
            fail(*b, b->values.front(), "bound must be 'strict' or 'nested'");
        }
    }
    if (sample.mu() != line.mu()) {
        fail(digits_e, "sample has " + std::to_string(sample.mu()) +
                           " digits but the termination has " + std::to_string(line.mu()));
    }
    if (!validate_sample(sample, line, bound)) {
        fail(digits_e, "sample " + sample.str() + " is not a point of the terminated line");
    }
    const std::uint64_t n_min = minimal_truncation(sample, line);

    RunConfig cfg{std::move(line), std::move(sample), bound, std::nullopt, kDefaultWindow,
                  kDefaultEps, {}, false, 1, TimeGrid{}, {}, 60, std::nullopt};
    cfg.profile = parse_profile(doc);

    // [analysis]
    if (const Entry* w = doc.find("analysis", "window")) {
        const auto v = count_list(*w);
        if (v.size() != 2) fail(*w, "window needs two integers: first last");
        if (v[1] < v[0] || v[1] - v[0] < kMinWindowSpan) {
            fail(*w, "window needs last - first >= 8");
        }
        cfg.window = Window{v[0], v[1]};
    }
    if (cfg.window.first < n_min) {
        const Entry* w = doc.find("analysis", "window");
        const std::string msg = "window starts at n=" + std::to_string(cfg.window.first) +
                                " but the sample only exists from n=" + std::to_string(n_min);
        if (w) fail(*w, msg);
        throw ConfigError("analysis.window: " + msg, 1, 1);
    }
    if (const Entry* e = doc.find("analysis", "eps")) {
        cfg.eps = number(*e).value;
        if (!(cfg.eps > 0.0)) fail(*e, e->values.front(), "eps must be > 0");
    }
    if (const Entry* e = doc.find("analysis", "n")) {
        cfg.describe_ns = count_list(*e);
        for (std::size_t i = 0; i < cfg.describe_ns.size(); ++i) {
            if (cfg.describe_ns[i] < 1) fail(*e, e->values[i], "truncation index must be >= 1");
        }
    } else {
        cfg.describe_ns = {cfg.window.first, cfg.window.last};
    }
    if (const Entry* e = doc.find("analysis", "bound_column")) {
        const std::string w = word(*e);
        if (w != "true" && w != "false" && w != "yes" && w != "no") {
            fail(*e, e->values.front(), "expected true/false");
        }
        cfg.bound_column = w == "true" || w == "yes";
    }

    // [simulate]
    cfg.simulate_n = n_min;
    if (const Entry* e = doc.find("simulate", "n")) {
        cfg.simulate_n = parse_count(*e, single(*e));
        if (cfg.simulate_n < n_min) {
            fail(*e, e->values.front(),
                 "sample not materialized before n=" + std::to_string(n_min));
        }
    }
    if (doc.has_section("simulate")) {
        const Entry& stop_e = doc.require("simulate", "t_stop");
        cfg.grid.stop = number(stop_e).value;
        if (const Entry* e = doc.find("simulate", "t_start")) cfg.grid.start = number(*e).value;
        if (cfg.grid.start < 0.0) {
            fail(*doc.find("simulate", "t_start"), "t_start must be >= 0");
        }
        if (cfg.grid.stop < cfg.grid.start) fail(stop_e, "t_stop must be >= t_start");
        cfg.grid.count = 101;
        if (const Entry* e = doc.find("simulate", "t_count")) {
            cfg.grid.count = parse_count(*e, single(*e));
            if (cfg.grid.count < 1) fail(*e, "t_count must be >= 1");
        }
    }

    // [xcheck]
    if (const Entry* e = doc.find("xcheck", "s")) {
        for (const auto& tok : e->values) {
            const auto s = parse_complex(tok.text);
            if (!s) fail(*e, tok, "not a complex number: '" + tok.text + "'");
            if (!(s->real() > 0.0)) fail(*e, tok, "Laplace samples need Re s > 0");
            cfg.s_samples.push_back(*s);
        }
    } else {
        cfg.s_samples = {0.25, 0.5, 1.0, 2.0, 4.0};
    }
    if (const Entry* e = doc.find("xcheck", "m_max")) {
        cfg.m_max = parse_count(*e, single(*e));
    }

    if (const Entry* e = doc.find("output", "csv")) {
        cfg.csv_path = word(*e);
    }
    return cfg;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
    const Document doc(in);
    try {
        return build(doc);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& err) {
        throw ConfigError(err.what(), 1, 1);
    }
}

RunConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'", 0, 0);
    }
    return parse_config(in);
}

}  // namespace tfline

#include "memsim/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace memsim {

std::string_view to_string(ParseErrorKind kind) {
    switch (kind) {
    case ParseErrorKind::UnknownElement: return "UnknownElement";
    case ParseErrorKind::BadUnit: return "BadUnit";
    case ParseErrorKind::MissingField: return "MissingField";
    case ParseErrorKind::DuplicateName: return "DuplicateName";
    case ParseErrorKind::DanglingNode: return "DanglingNode";
    case ParseErrorKind::BadNumber: return "BadNumber";
    }
    return "?";
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

struct Token {
    std::string text;
    std::size_t column; // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

std::vector<std::string> split_list(std::string_view csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string_view item =
            csv.substr(start, comma == std::string_view::npos ? csv.size() - start : comma - start);
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

const Field* find_field(const std::vector<Field>& fields, std::string_view key) {
    for (const auto& f : fields) {
        if (f.key == key) return &f;
    }
    return nullptr;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ParseResult run() {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text_.size()) {
            const std::size_t nl = text_.find('\n', pos);
            std::string_view line =
                text_.substr(pos, nl == std::string_view::npos ? text_.size() - pos : nl - pos);
            ++line_no;
            parse_line(line, line_no);
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
        ParseResult result;
        result.errors = std::move(errors_);
        if (result.errors.empty()) result.spec = std::move(spec_);
        return result;
    }

private:
    void error(std::size_t line, std::size_t col, ParseErrorKind kind, std::string msg) {
        errors_.push_back({line, std::max<std::size_t>(col, 1), kind, std::move(msg)});
    }

    // Splits the statement's trailing tokens into key=value fields.
    // Returns false when any token is malformed.
    bool collect_fields(const std::vector<Token>& tokens, std::size_t first, std::size_t line,
                        std::vector<Field>& out) {
        bool ok = true;
        std::set<std::string> seen;
        for (std::size_t i = first; i < tokens.size(); ++i) {
            const auto& tok = tokens[i];
            const std::size_t eq = tok.text.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 >= tok.text.size()) {
                error(line, tok.column, ParseErrorKind::MissingField,
                      "expected key=value, got '" + tok.text + "'");
                ok = false;
                continue;
            }
            Field f;
            f.key = lower(tok.text.substr(0, eq));
            f.value = tok.text.substr(eq + 1);
            f.column = tok.column + eq + 1;
            if (!seen.insert(f.key).second) {
                error(line, tok.column, ParseErrorKind::DuplicateName,
                      "duplicate field '" + f.key + "'");
                ok = false;
                continue;
            }
            out.push_back(std::move(f));
        }
        return ok;
    }

    // Numeric field with required presence.
    std::optional<double> require_number(const std::vector<Field>& fields, std::string_view key,
                                         std::size_t line, std::size_t stmt_col, bool& ok) {
        const Field* f = find_field(fields, key);
        if (!f) {
            error(line, stmt_col, ParseErrorKind::MissingField,
                  "missing field '" + std::string(key) + "'");
            ok = false;
            return std::nullopt;
        }
        const ParsedQuantity q = parse_quantity(f->value);
        if (!q.ok()) {
            error(line, f->column,
                  q.error == QuantityError::BadUnit ? ParseErrorKind::BadUnit
                                                    : ParseErrorKind::BadNumber,
                  "bad value '" + f->value + "' for '" + std::string(key) + "'");
            ok = false;
            return std::nullopt;
        }
        return q.value;
    }

    std::optional<double> optional_number(const std::vector<Field>& fields, std::string_view key,
                                          std::size_t line, bool& ok) {
        const Field* f = find_field(fields, key);
        if (!f) return std::nullopt;
        const ParsedQuantity q = parse_quantity(f->value);
        if (!q.ok()) {
            error(line, f->column,
                  q.error == QuantityError::BadUnit ? ParseErrorKind::BadUnit
                                                    : ParseErrorKind::BadNumber,
                  "bad value '" + f->value + "' for '" + std::string(key) + "'");
            ok = false;
            return std::nullopt;
        }
        return q.value;
    }

    void parse_line(std::string_view raw, std::size_t line) {
        std::string_view body = raw;
        const std::size_t hash = body.find('#');
        if (hash != std::string_view::npos) body = body.substr(0, hash);
        const std::vector<Token> tokens = tokenize(body);
        if (tokens.empty()) return;

        const std::string keyword = lower(tokens[0].text);
        if (keyword == "version") {
            if (tokens.size() < 2) {
                error(line, tokens[0].column, ParseErrorKind::MissingField, "version needs a number");
                return;
            }
            const ParsedQuantity q = parse_quantity(tokens[1].text);
            if (!q.ok()) {
                error(line, tokens[1].column, ParseErrorKind::BadNumber, "bad version number");
                return;
            }
            spec_.version = static_cast<int>(q.value);
            return;
        }
        if (keyword == "param") {
            if (tokens.size() < 2) {
                error(line, tokens[0].column, ParseErrorKind::MissingField, "param needs name=value");
                return;
            }
            std::vector<Field> fields;
            if (!collect_fields(tokens, 1, line, fields)) return;
            for (auto& f : fields) {
                const ParsedQuantity q = parse_quantity(f.value);
                if (!q.ok()) {
                    error(line, f.column,
                          q.error == QuantityError::BadUnit ? ParseErrorKind::BadUnit
                                                            : ParseErrorKind::BadNumber,
                          "bad parameter value '" + f.value + "'");
                    continue;
                }
                spec_.parameters.emplace_back(f.key, f.value);
            }
            return;
        }
        if (keyword == "source") {
            parse_source(tokens, line);
            return;
        }
        if (keyword == "analysis") {
            parse_analysis(tokens, line);
            return;
        }
        if (keyword == "record") {
            if (tokens.size() < 2) {
                error(line, tokens[0].column, ParseErrorKind::MissingField, "record needs channels");
                return;
            }
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                for (auto& ch : split_list(tokens[i].text)) spec_.records.push_back(ch);
            }
            return;
        }

        static const std::map<std::string, ElementKind> kElementKinds = {
            {"memcap", ElementKind::Memcap},         {"capacitor", ElementKind::Capacitor},
            {"inductor", ElementKind::Inductor},     {"resistor", ElementKind::Resistor},
            {"filter", ElementKind::BehavioralFilter}, {"multiplier", ElementKind::Multiplier},
        };
        const auto it = kElementKinds.find(keyword);
        if (it == kElementKinds.end()) {
            error(line, tokens[0].column, ParseErrorKind::UnknownElement,
                  "unknown element '" + tokens[0].text + "'");
            return;
        }
        parse_element(it->second, tokens, line);
    }

    void parse_source(const std::vector<Token>& tokens, std::size_t line) {
        if (tokens.size() < 3) {
            error(line, tokens[0].column, ParseErrorKind::MissingField,
                  "source needs a name and a shape");
            return;
        }
        SourceDecl src;
        src.name = tokens[1].text;
        src.shape = lower(tokens[2].text);
        src.line = line;
        bool ok = collect_fields(tokens, 3, line, src.fields);
        if (!ok) return;

        const std::size_t col = tokens[2].column;
        if (src.shape == "sine") {
            const auto amp = require_number(src.fields, "amp", line, col, ok);
            const auto freq = require_number(src.fields, "freq", line, col, ok);
            const auto phase = optional_number(src.fields, "phase", line, ok);
            if (!ok) return;
            src.waveform = WaveformSource::sine_hz(*amp, *freq, phase.value_or(0.0));
        } else if (src.shape == "pulse") {
            PulseParams p;
            const auto high = require_number(src.fields, "high", line, col, ok);
            const auto period = require_number(src.fields, "period", line, col, ok);
            const auto width = require_number(src.fields, "width", line, col, ok);
            const auto rise = optional_number(src.fields, "rise", line, ok);
            const auto fall = optional_number(src.fields, "fall", line, ok);
            const auto delay = optional_number(src.fields, "delay", line, ok);
            if (!ok) return;
            p.high = *high;
            p.period = *period;
            p.width = *width;
            if (rise) p.rise = *rise;
            if (fall) p.fall = *fall;
            if (delay) p.delay = *delay;
            try {
                src.waveform = WaveformSource::pulse(p);
            } catch (const std::exception& e) {
                error(line, col, ParseErrorKind::BadNumber, e.what());
                return;
            }
        } else if (src.shape == "sumsines") {
            std::vector<SineComponent> comps;
            for (int idx = 1;; ++idx) {
                const std::string amp_key = "amp" + std::to_string(idx);
                const std::string freq_key = "freq" + std::to_string(idx);
                if (!find_field(src.fields, amp_key) && !find_field(src.fields, freq_key)) break;
                const auto amp = require_number(src.fields, amp_key, line, col, ok);
                const auto freq = require_number(src.fields, freq_key, line, col, ok);
                if (!ok) return;
                comps.push_back({*amp, 2.0 * std::numbers::pi * *freq, 0.0});
            }
            if (comps.empty()) {
                error(line, col, ParseErrorKind::MissingField, "sumsines needs amp1/freq1");
                return;
            }
            src.waveform = WaveformSource::sum_of_sines(std::move(comps));
        } else if (src.shape == "const") {
            const auto value = require_number(src.fields, "value", line, col, ok);
            if (!ok) return;
            src.waveform = WaveformSource::constant(*value);
        } else {
            error(line, col, ParseErrorKind::BadUnit,
                  "unknown source shape '" + src.shape + "' (sine|pulse|sumsines|const)");
            return;
        }
        spec_.sources.push_back(std::move(src));
    }

    void parse_analysis(const std::vector<Token>& tokens, std::size_t line) {
        if (tokens.size() < 2) {
            error(line, tokens[0].column, ParseErrorKind::MissingField, "analysis needs a kind");
            return;
        }
        AnalysisDecl a;
        a.line = line;
        const std::string kind = lower(tokens[1].text);
        if (kind == "transient") {
            a.kind = AnalysisKind::Transient;
        } else if (kind == "sweep") {
            a.kind = AnalysisKind::Sweep;
        } else if (kind == "montecarlo") {
            a.kind = AnalysisKind::MonteCarlo;
        } else if (kind == "frequencyresponse" || kind == "frequency-response") {
            a.kind = AnalysisKind::FrequencyResponse;
        } else {
            error(line, tokens[1].column, ParseErrorKind::BadUnit,
                  "unknown analysis kind '" + tokens[1].text + "'");
            return;
        }
        bool ok = collect_fields(tokens, 2, line, a.fields);
        if (!ok) return;

        if (const Field* rec = find_field(a.fields, "record")) {
            a.record = split_list(rec->value);
        }
        const std::size_t col = tokens[1].column;
        if (a.kind == AnalysisKind::Transient) {
            require_number(a.fields, "tstop", line, col, ok);
            optional_number(a.fields, "dt", line, ok);
        } else if (a.kind == AnalysisKind::Sweep) {
            const Field* axis = find_field(a.fields, "axis");
            if (!axis) {
                error(line, col, ParseErrorKind::MissingField, "missing field 'axis'");
                ok = false;
            } else {
                const std::string v = lower(axis->value);
                if (v != "frequency" && v != "bias" && v != "capacitance") {
                    error(line, axis->column, ParseErrorKind::BadUnit,
                          "axis must be frequency|bias|capacitance");
                    ok = false;
                }
            }
            if (const Field* pts = find_field(a.fields, "points")) {
                for (const auto& item : split_list(pts->value)) {
                    if (!parse_quantity(item).ok()) {
                        error(line, pts->column, ParseErrorKind::BadNumber,
                              "bad sweep point '" + item + "'");
                        ok = false;
                    }
                }
            } else {
                error(line, col, ParseErrorKind::MissingField, "missing field 'points'");
                ok = false;
            }
        } else if (a.kind == AnalysisKind::MonteCarlo) {
            require_number(a.fields, "n", line, col, ok);
            optional_number(a.fields, "seed", line, ok);
        } else if (a.kind == AnalysisKind::FrequencyResponse) {
            const Field* freqs = find_field(a.fields, "freqs");
            if (!freqs) {
                error(line, col, ParseErrorKind::MissingField, "missing field 'freqs'");
                ok = false;
            } else {
                for (const auto& item : split_list(freqs->value)) {
                    if (!parse_quantity(item).ok()) {
                        error(line, freqs->column, ParseErrorKind::BadNumber,
                              "bad frequency '" + item + "'");
                        ok = false;
                    }
                }
            }
        }
        if (!ok) return;
        spec_.analyses.push_back(std::move(a));
    }

    void parse_element(ElementKind kind, const std::vector<Token>& tokens, std::size_t line) {
        if (tokens.size() < 2) {
            error(line, tokens[0].column, ParseErrorKind::MissingField, "element needs a name");
            return;
        }
        ElementDecl el;
        el.kind = kind;
        el.name = tokens[1].text;
        el.line = line;
        bool ok = collect_fields(tokens, 2, line, el.fields);
        if (!ok) return;

        const std::size_t col = tokens[0].column;
        auto require_text = [&](std::string_view key) {
            if (!find_field(el.fields, key)) {
                error(line, col, ParseErrorKind::MissingField,
                      "missing field '" + std::string(key) + "'");
                ok = false;
            }
        };

        switch (kind) {
        case ElementKind::Memcap: {
            require_text("plus");
            require_text("minus");
            const Field* topo = find_field(el.fields, "topology");
            if (!topo) {
                error(line, col, ParseErrorKind::MissingField, "missing field 'topology'");
                ok = false;
            } else {
                const std::string v = lower(topo->value);
                if (v != "incremental" && v != "decremental") {
                    error(line, topo->column, ParseErrorKind::BadUnit,
                          "topology must be incremental|decremental");
                    ok = false;
                }
            }
            require_number(el.fields, "c_int", line, col, ok);
            require_number(el.fields, "c_out", line, col, ok);
            require_number(el.fields, "vb1", line, col, ok);
            require_number(el.fields, "vb3", line, col, ok);
            optional_number(el.fields, "vb2", line, ok);
            optional_number(el.fields, "k", line, ok);
            break;
        }
        case ElementKind::Capacitor:
            require_text("plus");
            require_text("minus");
            require_number(el.fields, "c", line, col, ok);
            break;
        case ElementKind::Inductor:
            require_text("plus");
            require_text("minus");
            require_number(el.fields, "l", line, col, ok);
            break;
        case ElementKind::Resistor:
            require_text("plus");
            require_text("minus");
            require_number(el.fields, "r", line, col, ok);
            break;
        case ElementKind::BehavioralFilter: {
            require_text("input");
            const Field* type = find_field(el.fields, "type");
            if (!type) {
                error(line, col, ParseErrorKind::MissingField, "missing field 'type'");
                ok = false;
            } else {
                const std::string v = lower(type->value);
                if (v != "lowpass2" && v != "bandpass2") {
                    error(line, type->column, ParseErrorKind::BadUnit,
                          "type must be lowpass2|bandpass2");
                    ok = false;
                }
            }
            require_number(el.fields, "freq", line, col, ok);
            optional_number(el.fields, "q", line, ok);
            break;
        }
        case ElementKind::Multiplier:
            require_text("a");
            require_text("b");
            optional_number(el.fields, "gain", line, ok);
            break;
        }
        if (!ok) return;
        spec_.elements.push_back(std::move(el));
    }

    std::string_view text_;
    CircuitSpec spec_;
    std::vector<ParseError> errors_;
};

} // namespace

const Field* ElementDecl::find(std::string_view key) const { return find_field(fields, key); }

std::optional<double> ElementDecl::number(std::string_view key) const {
    const Field* f = find(key);
    if (!f) return std::nullopt;
    const ParsedQuantity q = parse_quantity(f->value);
    if (!q.ok()) return std::nullopt;
    return q.value;
}

std::string ElementDecl::text(std::string_view key) const {
    const Field* f = find(key);
    return f ? f->value : std::string{};
}

const Field* AnalysisDecl::find(std::string_view key) const { return find_field(fields, key); }

std::optional<double> AnalysisDecl::number(std::string_view key) const {
    const Field* f = find(key);
    if (!f) return std::nullopt;
    const ParsedQuantity q = parse_quantity(f->value);
    if (!q.ok()) return std::nullopt;
    return q.value;
}

ParseResult parse(std::string_view text) { return Parser(text).run(); }

std::vector<ParseError> validate(const CircuitSpec& spec) {
    std::vector<ParseError> errors;
    auto err = [&](std::size_t line, ParseErrorKind kind, std::string msg) {
        errors.push_back({line, 1, kind, std::move(msg)});
    };

    // unique names across sources and elements
    std::set<std::string> names;
    for (const auto& s : spec.sources) {
        if (!names.insert(s.name).second) {
            err(s.line, ParseErrorKind::DuplicateName, "duplicate name '" + s.name + "'");
        }
    }
    for (const auto& e : spec.elements) {
        if (!names.insert(e.name).second) {
            err(e.line, ParseErrorKind::DuplicateName, "duplicate name '" + e.name + "'");
        }
    }

    // node connectivity: sources define their own node; elements connect two
    std::map<std::string, int> node_refs;
    for (const auto& s : spec.sources) node_refs[s.name] += 1;
    bool ground_seen = false;
    for (const auto& e : spec.elements) {
        if (e.kind == ElementKind::BehavioralFilter || e.kind == ElementKind::Multiplier) {
            continue; // these reference channels, not nodes
        }
        for (const char* key : {"plus", "minus"}) {
            const Field* f = e.find(key);
            if (!f) continue;
            if (f->value == "0") {
                ground_seen = true;
            } else {
                node_refs[f->value] += 1;
            }
        }
    }
    const bool has_nodes = std::any_of(spec.elements.begin(), spec.elements.end(), [](const auto& e) {
        return e.kind != ElementKind::BehavioralFilter && e.kind != ElementKind::Multiplier;
    });
    if (has_nodes && !ground_seen) {
        err(1, ParseErrorKind::DanglingNode, "no element references the ground node '0'");
    }
    for (const auto& e : spec.elements) {
        if (e.kind == ElementKind::BehavioralFilter || e.kind == ElementKind::Multiplier) continue;
        for (const char* key : {"plus", "minus"}) {
            const Field* f = e.find(key);
            if (!f || f->value == "0") continue;
            if (node_refs[f->value] < 2) {
                err(e.line, ParseErrorKind::DanglingNode,
                    "node '" + f->value + "' of " + e.name + " has a single connection");
            }
        }
    }

    // parameter ranges
    auto positive = [&](const ElementDecl& e, std::string_view key) {
        const auto v = e.number(key);
        if (v && !(*v > 0.0)) {
            err(e.line, ParseErrorKind::BadNumber,
                e.name + ": field '" + std::string(key) + "' must be positive");
        }
    };
    for (const auto& e : spec.elements) {
        switch (e.kind) {
        case ElementKind::Memcap: {
            positive(e, "c_int");
            positive(e, "c_out");
            const double vb1 = e.number("vb1").value_or(0.0);
            const double vb3 = e.number("vb3").value_or(0.0);
            const double vb2 = e.number("vb2").value_or(0.5);
            const double k = e.number("k").value_or(1e-3);
            // Gm must be positive at the operating point (V_ss=-1.2, V_th=0.45)
            for (const auto& [label, bias] : {std::pair{"vb1", vb1}, {"vb2", vb2}, {"vb3", vb3}}) {
                if (!(bias + 1.2 - 0.9 > 0.0) || !(k > 0.0)) {
                    err(e.line, ParseErrorKind::BadNumber,
                        e.name + ": bias '" + label + "' gives a non-positive Gm");
                }
            }
            break;
        }
        case ElementKind::Capacitor: positive(e, "c"); break;
        case ElementKind::Inductor: positive(e, "l"); break;
        case ElementKind::Resistor: positive(e, "r"); break;
        case ElementKind::BehavioralFilter:
            positive(e, "freq");
            positive(e, "q");
            break;
        case ElementKind::Multiplier: break;
        }
    }

    // record channels must be known
    static const std::set<std::string> kChannels = {"v",  "i",     "q",  "cm",
                                                    "phi", "sigma", "vb2"};
    for (const auto& a : spec.analyses) {
        for (const auto& ch : a.record) {
            if (!kChannels.count(ch)) {
                err(a.line, ParseErrorKind::UnknownElement, "unknown record channel '" + ch + "'");
            }
        }
    }
    return errors;
}

std::string format(const CircuitSpec& spec) {
    std::ostringstream os;
    os << "version " << spec.version << '\n';
    for (const auto& [k, v] : spec.parameters) os << "param " << k << '=' << v << '\n';
    for (const auto& s : spec.sources) {
        os << "source " << s.name << ' ' << s.shape;
        for (const auto& f : s.fields) os << ' ' << f.key << '=' << f.value;
        os << '\n';
    }
    auto kind_word = [](ElementKind k) {
        switch (k) {
        case ElementKind::Memcap: return "memcap";
        case ElementKind::Capacitor: return "capacitor";
        case ElementKind::Inductor: return "inductor";
        case ElementKind::Resistor: return "resistor";
        case ElementKind::BehavioralFilter: return "filter";
        case ElementKind::Multiplier: return "multiplier";
        }
        return "?";
    };
    for (const auto& e : spec.elements) {
        os << kind_word(e.kind) << ' ' << e.name;
        for (const auto& f : e.fields) os << ' ' << f.key << '=' << f.value;
        os << '\n';
    }
    auto analysis_word = [](AnalysisKind k) {
        switch (k) {
        case AnalysisKind::Transient: return "transient";
        case AnalysisKind::Sweep: return "sweep";
        case AnalysisKind::MonteCarlo: return "montecarlo";
        case AnalysisKind::FrequencyResponse: return "frequencyresponse";
        }
        return "?";
    };
    for (const auto& a : spec.analyses) {
        os << "analysis " << analysis_word(a.kind);
        for (const auto& f : a.fields) os << ' ' << f.key << '=' << f.value;
        os << '\n';
    }
    for (const auto& r : spec.records) os << "record " << r << '\n';
    return os.str();
}

std::optional<std::pair<std::string, std::string>> split_key_value(std::string_view token) {
    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 >= token.size()) return std::nullopt;
    return std::pair{lower(token.substr(0, eq)), std::string(token.substr(eq + 1))};
}

} // namespace memsim

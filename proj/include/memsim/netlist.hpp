#pragma once

#include "memsim/units.hpp"
#include "memsim/waveform.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace memsim {

// =============================================================================
// Netlist DSL (.mcir)
// =============================================================================
// Line-oriented, one statement per line, `key=value` fields, `#` comments.
// Values carry engineering suffixes but no unit letters (fields imply
// dimensions). Example:
//
//   version 1
//   source vin sine amp=350m freq=1meg
//   memcap M1 plus=vin minus=0 topology=decremental c_int=240n c_out=500p
//          vb1=640m vb3=640m              # (single line in a real file)
//   analysis transient tstop=5u dt=0.5n record=q,v,cm

enum class ParseErrorKind {
    UnknownElement,
    BadUnit,
    MissingField,
    DuplicateName,
    DanglingNode,
    BadNumber,
};

struct ParseError {
    std::size_t line = 0;   // 1-based
    std::size_t column = 0; // 1-based
    ParseErrorKind kind = ParseErrorKind::UnknownElement;
    std::string message;
};

std::string_view to_string(ParseErrorKind kind);

/// One `key=value` field, kept as raw text so format() round-trips.
struct Field {
    std::string key;
    std::string value;
    std::size_t column = 0; // of the value

    bool operator==(const Field& o) const { return key == o.key && value == o.value; }
};

struct SourceDecl {
    std::string name;
    std::string shape; // sine | pulse | sumsines | const
    std::vector<Field> fields;
    WaveformSource waveform;
    std::size_t line = 0;

    bool operator==(const SourceDecl& o) const {
        return name == o.name && shape == o.shape && fields == o.fields;
    }
};

enum class ElementKind { Memcap, Capacitor, Inductor, Resistor, BehavioralFilter, Multiplier };

struct ElementDecl {
    ElementKind kind{};
    std::string name;
    std::vector<Field> fields;
    std::size_t line = 0;

    const Field* find(std::string_view key) const;
    std::optional<double> number(std::string_view key) const;
    std::string text(std::string_view key) const;

    bool operator==(const ElementDecl& o) const {
        return kind == o.kind && name == o.name && fields == o.fields;
    }
};

enum class AnalysisKind { Transient, Sweep, MonteCarlo, FrequencyResponse };

struct AnalysisDecl {
    AnalysisKind kind{};
    std::vector<Field> fields;
    std::vector<std::string> record; // from the record= field
    std::size_t line = 0;

    const Field* find(std::string_view key) const;
    std::optional<double> number(std::string_view key) const;

    bool operator==(const AnalysisDecl& o) const {
        return kind == o.kind && fields == o.fields && record == o.record;
    }
};

struct CircuitSpec {
    int version = 1;
    std::vector<std::pair<std::string, std::string>> parameters; // raw values
    std::vector<SourceDecl> sources;
    std::vector<ElementDecl> elements;
    std::vector<AnalysisDecl> analyses;
    std::vector<std::string> records; // standalone record lines

    bool operator==(const CircuitSpec& o) const {
        return version == o.version && parameters == o.parameters && sources == o.sources &&
               elements == o.elements && analyses == o.analyses && records == o.records;
    }
};

struct ParseResult {
    std::optional<CircuitSpec> spec; // present only when errors is empty
    std::vector<ParseError> errors;
    bool ok() const { return errors.empty(); }
};

/// Full-file parse. All errors are collected, never fail-fast; total over
/// arbitrary input.
ParseResult parse(std::string_view text);

/// Structural checks on a parsed spec: node connectivity, ground presence,
/// unique names, parameter ranges. Returns the violations (empty when clean).
std::vector<ParseError> validate(const CircuitSpec& spec);

/// Canonical text form; parse(format(s)) is structurally equal to s.
std::string format(const CircuitSpec& spec);

/// The `key=value` micro-grammar shared with CLI overrides.
std::optional<std::pair<std::string, std::string>> split_key_value(std::string_view token);

} // namespace memsim

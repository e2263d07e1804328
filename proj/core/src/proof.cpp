#include "auproof/proof.hpp"

#include "auproof/error.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace auproof {

const char* rule_name(Rule rule) {
    switch (rule) {
    case Rule::Propositional:
        return "Propositional";
    case Rule::ModusPonens:
        return "ModusPonens";
    case Rule::IffTrans:
        return "IffTrans";
    case Rule::ExistsSubst:
        return "ExistsSubst";
    case Rule::ExistsGen:
        return "ExistsGen";
    case Rule::ExistsScope:
        return "ExistsScope";
    case Rule::ExistsCollapse:
        return "ExistsCollapse";
    case Rule::ExistsCtx:
        return "ExistsCtx";
    }
    return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
    static const std::pair<const char*, Rule> table[] = {
        {"Propositional", Rule::Propositional},
        {"ModusPonens", Rule::ModusPonens},
        {"IffTrans", Rule::IffTrans},
        {"ExistsSubst", Rule::ExistsSubst},
        {"ExistsGen", Rule::ExistsGen},
        {"ExistsScope", Rule::ExistsScope},
        {"ExistsCollapse", Rule::ExistsCollapse},
        {"ExistsCtx", Rule::ExistsCtx},
    };
    for (const auto& [text, rule] : table) {
        if (name == text) {
            return rule;
        }
    }
    return std::nullopt;
}

std::string witness_to_string(const CtxWitness& witness) {
    switch (witness.mode) {
    case CtxMode::Whole:
        return "whole";
    case CtxMode::Split:
        return "split";
    case CtxMode::Elem:
        return "elem@" + std::to_string(witness.depth);
    case CtxMode::Tail:
        return "tail@" + std::to_string(witness.depth);
    }
    return "?";
}

std::optional<CtxWitness> witness_from_string(const std::string& text) {
    if (text == "whole") {
        return CtxWitness{CtxMode::Whole, 0};
    }
    if (text == "split") {
        return CtxWitness{CtxMode::Split, 0};
    }
    const auto parse_depth =
        [](const std::string& digits) -> std::optional<std::size_t> {
        if (digits.empty()) {
            return std::nullopt;
        }
        std::size_t value = 0;
        for (const char c : digits) {
            if (c < '0' || c > '9') {
                return std::nullopt;
            }
            value = value * 10 + static_cast<std::size_t>(c - '0');
        }
        return value;
    };
    if (text.rfind("elem@", 0) == 0) {
        if (const auto depth = parse_depth(text.substr(5))) {
            return CtxWitness{CtxMode::Elem, *depth};
        }
        return std::nullopt;
    }
    if (text.rfind("tail@", 0) == 0) {
        if (const auto depth = parse_depth(text.substr(5))) {
            return CtxWitness{CtxMode::Tail, *depth};
        }
        return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string render_proof(const ProofObject& proof) {
    std::string out;
    out += "symbols:";
    for (const auto& symbol : proof.symbols.to_vector()) {
        out += ' ';
        out += symbol.name;
        out += '/';
        out += std::to_string(symbol.arity);
    }
    out += '\n';
    out += "goal: ";
    out += print_pattern(proof.goal, proof.symbols);
    out += '\n';
    for (std::size_t i = 0; i < proof.lines.size(); ++i) {
        const ProofLine& line = proof.lines[i];
        out += std::to_string(i + 1);
        out += " | ";
        out += print_pattern(line.pattern, proof.symbols);
        out += " | ";
        out += rule_name(line.just.rule);
        for (std::size_t p = 0; p < line.just.premises.size(); ++p) {
            out += p == 0 ? ": " : ", ";
            out += std::to_string(line.just.premises[p] + 1);
        }
        if (line.just.witness) {
            out += " [";
            out += witness_to_string(*line.just.witness);
            out += ']';
        }
        if (!line.label.empty()) {
            out += " # ";
            out += line.label;
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

// Splits the raw text into lines, accepting LF and CRLF endings.
std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (const char c : text) {
        if (c == '\n') {
            if (!current.empty() && current.back() == '\r') {
                current.pop_back();
            }
            lines.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) {
        if (current.back() == '\r') {
            current.pop_back();
        }
        lines.push_back(std::move(current));
    }
    return lines;
}

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && (s[begin] == ' ' || s[begin] == '\t')) {
        ++begin;
    }
    while (end > begin && (s[end - 1] == ' ' || s[end - 1] == '\t')) {
        --end;
    }
    return s.substr(begin, end - begin);
}

SymbolTable parse_symbols_line(const std::string& body, std::size_t line_no) {
    SymbolTable table;
    std::istringstream stream(body);
    std::string entry;
    while (stream >> entry) {
        const auto slash = entry.find('/');
        if (slash == std::string::npos || slash == 0 ||
            slash + 1 >= entry.size()) {
            throw Error(ErrorCode::ParseError,
                        "symbol entry '" + entry +
                            "' is not of the form name/arity",
                        line_no, 1);
        }
        const std::string name = entry.substr(0, slash);
        const std::string digits = entry.substr(slash + 1);
        if (!is_valid_identifier(name)) {
            throw Error(ErrorCode::ParseError,
                        "invalid symbol name '" + name + "'", line_no, 1);
        }
        std::size_t arity = 0;
        for (const char c : digits) {
            if (c < '0' || c > '9') {
                throw Error(ErrorCode::ParseError,
                            "invalid arity '" + digits + "' for symbol '" +
                                name + "'",
                            line_no, 1);
            }
            arity = arity * 10 + static_cast<std::size_t>(c - '0');
        }
        if (table.contains(name)) {
            throw Error(ErrorCode::ParseError,
                        "symbol '" + name + "' listed twice", line_no, 1);
        }
        table.add(SymbolId{name, arity});
    }
    return table;
}

struct ParsedRulePart {
    Rule rule = Rule::Propositional;
    std::vector<std::size_t> premises; // 0-based
    std::optional<CtxWitness> witness;
    std::string label;
};

ParsedRulePart parse_rule_part(const std::string& text, std::size_t line_no,
                               std::size_t line_index) {
    ParsedRulePart out;
    std::string body = text;
    // Peel the label first.
    if (const auto hash = body.find('#'); hash != std::string::npos) {
        out.label = trim(body.substr(hash + 1));
        body = trim(body.substr(0, hash));
    } else {
        body = trim(body);
    }
    // Peel the witness.
    if (!body.empty() && body.back() == ']') {
        const auto open = body.rfind('[');
        if (open == std::string::npos) {
            throw Error(ErrorCode::ParseError, "unmatched ']' in rule field",
                        line_no, 1);
        }
        const std::string inside =
            body.substr(open + 1, body.size() - open - 2);
        out.witness = witness_from_string(inside);
        if (!out.witness) {
            throw Error(ErrorCode::ParseError,
                        "invalid witness '[" + inside + "]'", line_no, 1);
        }
        body = trim(body.substr(0, open));
    }
    // Rule name, optionally followed by ': p1, p2'.
    std::string name = body;
    std::string premise_part;
    if (const auto colon = body.find(':'); colon != std::string::npos) {
        name = trim(body.substr(0, colon));
        premise_part = trim(body.substr(colon + 1));
    }
    const auto rule = rule_from_name(name);
    if (!rule) {
        throw Error(ErrorCode::ParseError, "unknown rule '" + name + "'",
                    line_no, 1);
    }
    out.rule = *rule;
    if ((out.rule == Rule::ExistsCtx) != out.witness.has_value()) {
        throw Error(ErrorCode::ParseError,
                    out.witness ? "witness given for a rule other than "
                                  "ExistsCtx"
                                : "ExistsCtx line is missing its witness",
                    line_no, 1);
    }
    if (!premise_part.empty()) {
        std::istringstream stream(premise_part);
        std::string piece;
        while (std::getline(stream, piece, ',')) {
            piece = trim(piece);
            if (piece.empty()) {
                throw Error(ErrorCode::ParseError, "empty premise reference",
                            line_no, 1);
            }
            std::size_t value = 0;
            for (const char c : piece) {
                if (c < '0' || c > '9') {
                    throw Error(ErrorCode::ParseError,
                                "invalid premise reference '" + piece + "'",
                                line_no, 1);
                }
                value = value * 10 + static_cast<std::size_t>(c - '0');
            }
            if (value == 0 || value >= line_index) {
                throw Error(ErrorCode::DanglingRef,
                            "premise " + std::to_string(value) +
                                " does not refer to an earlier line",
                            line_no, 1);
            }
            out.premises.push_back(value - 1);
        }
    }
    return out;
}

} // namespace

ProofObject parse_proof(const std::string& text) {
    const auto lines = split_lines(text);
    ProofObject proof;
    bool have_symbols = false;
    bool have_goal = false;
    std::size_t next_index = 1;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const std::string& raw = lines[i];
        if (trim(raw).empty()) {
            continue;
        }
        if (!have_symbols) {
            if (raw.rfind("symbols:", 0) != 0) {
                throw Error(ErrorCode::ParseError,
                            "expected 'symbols:' header", line_no, 1);
            }
            proof.symbols = parse_symbols_line(raw.substr(8), line_no);
            have_symbols = true;
            continue;
        }
        if (!have_goal) {
            if (raw.rfind("goal:", 0) != 0) {
                throw Error(ErrorCode::ParseError, "expected 'goal:' line",
                            line_no, 1);
            }
            const std::string body = raw.substr(5);
            proof.goal = parse_pattern(body, proof.symbols, line_no,
                                       /*column_offset=*/6);
            have_goal = true;
            continue;
        }
        // Numbered line: '<index> | <pattern> | <rule part>'.
        const auto first = raw.find(" | ");
        const auto last = raw.rfind(" | ");
        if (first == std::string::npos || last == first) {
            throw Error(ErrorCode::ParseError,
                        "proof line needs two ' | ' separators", line_no, 1);
        }
        const std::string index_part = trim(raw.substr(0, first));
        const std::string pattern_part =
            raw.substr(first + 3, last - first - 3);
        const std::string rule_part = raw.substr(last + 3);

        std::size_t index = 0;
        for (const char c : index_part) {
            if (c < '0' || c > '9') {
                throw Error(ErrorCode::ParseError,
                            "invalid line number '" + index_part + "'",
                            line_no, 1);
            }
            index = index * 10 + static_cast<std::size_t>(c - '0');
        }
        if (index != next_index) {
            throw Error(ErrorCode::ParseError,
                        "line number " + std::to_string(index) +
                            " out of sequence (expected " +
                            std::to_string(next_index) + ")",
                        line_no, 1);
        }

        ProofLine line;
        line.pattern =
            parse_pattern(pattern_part, proof.symbols, line_no,
                          /*column_offset=*/first + 4);
        const auto rule = parse_rule_part(rule_part, line_no, index);
        line.just.rule = rule.rule;
        line.just.premises = rule.premises;
        line.just.witness = rule.witness;
        line.label = rule.label;
        proof.lines.push_back(std::move(line));
        ++next_index;
    }

    if (!have_symbols) {
        throw Error(ErrorCode::ParseError, "missing 'symbols:' header");
    }
    if (!have_goal) {
        throw Error(ErrorCode::ParseError, "missing 'goal:' line");
    }
    return proof;
}

// ---------------------------------------------------------------------------
// JSON mirror
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

} // namespace

std::string proof_to_json_string(const ProofObject& proof) {
    json symbols = json::array();
    for (const auto& symbol : proof.symbols.to_vector()) {
        symbols.push_back(
            json{{"name", symbol.name}, {"arity", symbol.arity}});
    }
    json lines = json::array();
    for (std::size_t i = 0; i < proof.lines.size(); ++i) {
        const ProofLine& line = proof.lines[i];
        json entry{{"index", i + 1},
                   {"pattern", print_pattern(line.pattern, proof.symbols)},
                   {"rule", rule_name(line.just.rule)}};
        json premises = json::array();
        for (const std::size_t p : line.just.premises) {
            premises.push_back(p + 1);
        }
        entry["premises"] = std::move(premises);
        if (line.just.witness) {
            entry["witness"] = witness_to_string(*line.just.witness);
        }
        if (!line.label.empty()) {
            entry["label"] = line.label;
        }
        lines.push_back(std::move(entry));
    }
    const json doc{{"symbols", std::move(symbols)},
                   {"goal", print_pattern(proof.goal, proof.symbols)},
                   {"lines", std::move(lines)}};
    return doc.dump(2);
}

ProofObject proof_from_json_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError,
                    std::string("proof is not valid JSON: ") + e.what());
    }
    try {
        ProofObject proof;
        for (const auto& s : doc.at("symbols")) {
            proof.symbols.add(SymbolId{s.at("name").get<std::string>(),
                                       s.at("arity").get<std::size_t>()});
        }
        proof.goal =
            parse_pattern(doc.at("goal").get<std::string>(), proof.symbols);
        std::size_t expected = 1;
        for (const auto& entry : doc.at("lines")) {
            const std::size_t index = entry.at("index").get<std::size_t>();
            if (index != expected) {
                throw Error(ErrorCode::ParseError,
                            "line index " + std::to_string(index) +
                                " out of sequence");
            }
            ProofLine line;
            line.pattern = parse_pattern(
                entry.at("pattern").get<std::string>(), proof.symbols);
            const auto rule =
                rule_from_name(entry.at("rule").get<std::string>());
            if (!rule) {
                throw Error(ErrorCode::ParseError,
                            "unknown rule in line " + std::to_string(index));
            }
            line.just.rule = *rule;
            if (entry.contains("premises")) {
                for (const auto& p : entry.at("premises")) {
                    const std::size_t value = p.get<std::size_t>();
                    if (value == 0 || value >= expected) {
                        throw Error(ErrorCode::DanglingRef,
                                    "premise " + std::to_string(value) +
                                        " of line " + std::to_string(index) +
                                        " does not refer to an earlier line");
                    }
                    line.just.premises.push_back(value - 1);
                }
            }
            if (entry.contains("witness")) {
                line.just.witness = witness_from_string(
                    entry.at("witness").get<std::string>());
                if (!line.just.witness) {
                    throw Error(ErrorCode::ParseError,
                                "invalid witness in line " +
                                    std::to_string(index));
                }
            }
            if ((line.just.rule == Rule::ExistsCtx) !=
                line.just.witness.has_value()) {
                throw Error(ErrorCode::ParseError,
                            "witness/rule mismatch in line " +
                                std::to_string(index));
            }
            if (entry.contains("label")) {
                line.label = entry.at("label").get<std::string>();
            }
            proof.lines.push_back(std::move(line));
            ++expected;
        }
        return proof;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError,
                    std::string("malformed proof document: ") + e.what());
    }
}

} // namespace auproof

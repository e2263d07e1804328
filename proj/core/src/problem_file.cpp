#include "auproof/problem_file.hpp"

#include "auproof/error.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace auproof {

namespace {

std::vector<std::string> split_lines(const std::string& contents) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : contents) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    lines.push_back(current);
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
    }
    return lines;
}

bool is_blank(const std::string& text) {
    return text.find_first_not_of(" \t") == std::string::npos;
}

// "a, b, c" -> (name, 1-based column) pairs; base_column is the column of
// text[0] in the original line. A list that is all whitespace is empty.
std::vector<std::pair<std::string, std::size_t>> parse_name_list(
    const std::string& text, std::size_t line, std::size_t base_column) {
    std::vector<std::pair<std::size_t, std::string>> segments;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end =
            comma == std::string::npos ? text.size() : comma;
        segments.emplace_back(start, text.substr(start, end - start));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (segments.size() == 1 && is_blank(segments[0].second)) {
        return {};
    }

    std::vector<std::pair<std::string, std::size_t>> names;
    for (const auto& [offset, segment] : segments) {
        const std::size_t first = segment.find_first_not_of(" \t");
        if (first == std::string::npos) {
            throw Error(ErrorCode::SyntaxError, "empty name in list", line,
                        base_column + offset);
        }
        const std::size_t last = segment.find_last_not_of(" \t");
        const std::string name = segment.substr(first, last - first + 1);
        const std::size_t column = base_column + offset + first;
        if (!is_valid_identifier(name)) {
            throw Error(ErrorCode::SyntaxError,
                        "'" + name + "' is not a valid name", line, column);
        }
        names.emplace_back(name, column);
    }
    return names;
}

std::string trim(const std::string& text) {
    const std::size_t first = text.find_first_not_of(" \t");
    if (first == std::string::npos) {
        return {};
    }
    const std::size_t last = text.find_last_not_of(" \t");
    return text.substr(first, last - first + 1);
}

struct RawSection {
    bool seen = false;
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0; // 1-based column of text[0]
};

} // namespace

ProblemSpec parse_spec(const std::string& contents) {
    static constexpr std::array<const char*, 3> headers = {
        "variables", "symbols", "problem"};
    std::array<RawSection, 3> sections;

    const std::vector<std::string> lines = split_lines(contents);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (is_blank(line)) {
            continue;
        }
        const std::size_t line_no = i + 1;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) {
            throw Error(ErrorCode::SyntaxError,
                        "expected a 'variables:', 'symbols:', or 'problem:' "
                        "line",
                        line_no, 1);
        }
        const std::string header = trim(line.substr(0, colon));
        std::size_t index = headers.size();
        for (std::size_t h = 0; h < headers.size(); ++h) {
            if (header == headers[h]) {
                index = h;
                break;
            }
        }
        if (index == headers.size()) {
            throw Error(ErrorCode::SyntaxError,
                        "unknown section '" + header + ":'", line_no, 1);
        }
        if (sections[index].seen) {
            throw Error(ErrorCode::DuplicateSection,
                        "duplicate '" + header + ":' section", line_no, 1);
        }
        sections[index].seen = true;
        sections[index].text = line.substr(colon + 1);
        sections[index].line = line_no;
        sections[index].column = colon + 2;
    }
    for (std::size_t h = 0; h < headers.size(); ++h) {
        if (!sections[h].seen) {
            throw Error(ErrorCode::MissingSection,
                        std::string("missing '") + headers[h] +
                            ":' section");
        }
    }

    ProblemSpec spec;
    for (const auto& [name, column] : parse_name_list(
             sections[0].text, sections[0].line, sections[0].column)) {
        try {
            spec.signature.declare_variable(name);
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), sections[0].line, column);
        }
        if (std::find(spec.variables.begin(), spec.variables.end(), name) ==
            spec.variables.end()) {
            spec.variables.push_back(name);
        }
    }
    for (const auto& [name, column] : parse_name_list(
             sections[1].text, sections[1].line, sections[1].column)) {
        try {
            spec.signature.declare_symbol(name);
        } catch (const Error& e) {
            throw Error(e.code(), e.what(), sections[1].line, column);
        }
        if (std::find(spec.symbols.begin(), spec.symbols.end(), name) ==
            spec.symbols.end()) {
            spec.symbols.push_back(name);
        }
    }

    const RawSection& problem = sections[2];
    const std::size_t sep = problem.text.find("=?");
    if (sep == std::string::npos) {
        throw Error(ErrorCode::SyntaxError,
                    "expected '=?' between the two terms", problem.line,
                    problem.column);
    }
    if (problem.text.find("=?", sep + 2) != std::string::npos) {
        throw Error(ErrorCode::SyntaxError,
                    "more than one '=?' separator", problem.line,
                    problem.column +
                        problem.text.find("=?", sep + 2));
    }
    spec.left = parse_term(problem.text.substr(0, sep), spec.signature,
                           problem.line, problem.column);
    spec.right = parse_term(problem.text.substr(sep + 2), spec.signature,
                            problem.line, problem.column + sep + 2);
    return spec;
}

} // namespace auproof

#pragma once

#include <stdexcept>
#include <string>

namespace auproof {

// Every recoverable failure in the toolkit is reported through one exception
// type carrying a machine-readable code. Positions are 1-based; 0 means
// "no position information".
enum class ErrorCode {
    SyntaxError,        // malformed term / pattern / file text
    UnknownIdentifier,  // identifier not declared in the signature
    ArityConflict,      // symbol used with two different arities
    OrderMismatch,      // encode_subst order does not name dom(subst)
    FreshnessViolation, // requested fresh variable is not fresh
    BranchMismatch,     // decomposition branches disagree in arity
    TraceCorrupt,       // antiunification trace fails replay validation
    ParseError,         // proof file cannot be parsed
    DanglingRef,        // proof line references a line not before it
    UnsupportedConstruct, // pattern outside the evaluable fragment
    MissingSection,     // problem file lacks a required header line
    DuplicateSection,   // problem file repeats a header line
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::size_t line = 0,
          std::size_t column = 0)
        : std::runtime_error(format(code, message, line, column)),
          code_(code),
          line_(line),
          column_(column) {}

    ErrorCode code() const { return code_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(ErrorCode code, const std::string& message,
                              std::size_t line, std::size_t column);

    ErrorCode code_;
    std::size_t line_;
    std::size_t column_;
};

} // namespace auproof

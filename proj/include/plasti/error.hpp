#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plasti {

enum class ErrorKind {
    ParseError,
    InvalidDescription,
    OverlappingComponents,
    EmptyWindow,
    RuleDivergence,
    DeclarationContradicted,
    NotDiscrete,
    WindowTooSmall,
    OutsideDomain,
    AmbiguousPiece,
    DegenerateSpace,
    InverseMissing,
    CapExceeded,
    MetadataUnvalidated,
    InvalidMatrix,
    OuterMetricInvalid,
    UnknownGalleryId,
    PreconditionFailed,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Text-format error with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message)
        : Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column)
    {
    }

    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace plasti

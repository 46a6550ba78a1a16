#pragma once

#include "gridforge/errors.hpp"
#include "gridforge/gdy/document.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gridforge::gdy {

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, int line, int column);

    // 1-based; 0 when unknown.
    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class SchemaError : public Error {
public:
    explicit SchemaError(std::vector<Diagnostic> diagnostics);

    [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

class UnknownCharacterError : public Error {
public:
    UnknownCharacterError(char character, int x, int y);

    [[nodiscard]] char character() const noexcept { return character_; }
    [[nodiscard]] int x() const noexcept { return x_; }
    [[nodiscard]] int y() const noexcept { return y_; }

private:
    char character_;
    int x_;
    int y_;
};

struct Placement {
    int x = 0; // column, 0 at the left
    int y = 0; // row, 0 at the top
    std::string object;

    friend bool operator==(const Placement&, const Placement&) = default;
};

struct LevelLayout {
    int width = 0;
    int height = 0;
    // Row-major order.
    std::vector<Placement> placements;

    friend bool operator==(const LevelLayout&, const LevelLayout&) = default;
};

// YAML text to a validated document. Throws SyntaxError or SchemaError, nothing else.
[[nodiscard]] GdyDocument parse_gdy(std::string_view text);

// Width is the longest row; shorter rows are padded with empty cells. Trailing
// whitespace and trailing blank rows are ignored.
[[nodiscard]] LevelLayout parse_level(const GdyDocument& document, std::string_view level_string);

// Rows joined with '\n', no trailing newline.
[[nodiscard]] std::string serialize_level(const LevelLayout& layout, const GdyDocument& document);

// Canonical YAML: keys sorted, fixed styles, independent of the input formatting.
[[nodiscard]] std::string serialize_gdy(const GdyDocument& document);

// Strips '\r', trailing whitespace per row and trailing blank rows.
[[nodiscard]] std::string normalize_level_string(std::string_view level_string);

} // namespace gridforge::gdy

#pragma once

#include <optional>
#include <stdexcept>

#include "hhcalc/quiver.hpp"
#include "hhcalc/ring.hpp"

namespace hhcalc {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", col " +
                             std::to_string(col) + ")"),
          line(line),
          col(col) {}
    int line;
    int col;
};

struct TraceInput {
    long degree = 0;            // trace has degree -degree as a functional
    SparseVec values;           // over the raw ring basis
};

struct AlgebraInput {
    RawRingData ring;
    std::optional<TraceInput> trace;
};

// Text format: sections [field], [idempotents], [basis], [product],
// [differential], [augmentation], [trace]; or [quiver] as an alternative to
// basis/product/differential. Grammar documented in the README.
AlgebraInput parse_algebra_text(const std::string& text,
                                const std::string& filename = "<input>",
                                uint32_t field_override = UINT32_MAX);
AlgebraInput parse_algebra_file(const std::string& path,
                                uint32_t field_override = UINT32_MAX);

}  // namespace hhcalc

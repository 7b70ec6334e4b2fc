#pragma once

#include "hhcalc/ring.hpp"

namespace hhcalc {

struct QuiverArrow {
    std::string label;
    int source = 1;  // 1-based vertices
    int target = 1;
    long deg = 0;
};

// A path is a list of arrow indices in traversal order (first arrow first).
// Products compose like functions: p*q means "q then p".
struct PathTerm {
    Scalar coeff;
    std::vector<int> arrows;  // traversal order
};
using PathSum = std::vector<PathTerm>;

struct QuiverPresentation {
    int vertices = 1;
    uint32_t p = 0;
    std::vector<QuiverArrow> arrows;
    std::vector<PathSum> relations;
    std::map<int, PathSum> darrow;  // arrow index -> differential value
    int truncate = 0;               // J^truncate = 0 when > 0
    int length_bound = 12;          // admissibility cutoff search bound
};

// Quotient path algebra with explicit monomial-representative basis,
// computed by row reduction on path spaces length by length.
RawRingData quiver_compile(const QuiverPresentation& q);

}  // namespace hhcalc

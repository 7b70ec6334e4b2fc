#include "hhcalc/report.hpp"

namespace hhcalc {

std::string Report::summary() const {
    std::string out;
    for (const auto& c : checks) {
        out += (c.pass ? "pass  " : "FAIL  ") + c.name;
        if (!c.pass && !c.witness.empty()) out += "  [" + c.witness + "]";
        out += "\n";
    }
    return out;
}

}  // namespace hhcalc

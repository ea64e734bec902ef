#ifndef MUTAD_REPORT_HPP
#define MUTAD_REPORT_HPP

#include <map>
#include <string>
#include <vector>

namespace mutad {

struct VerificationReport {
    std::string identity;
    std::vector<long long> shape;
    std::vector<int> indices;
    std::string status;  // "equal" | "unequal" | "error"
    std::map<std::string, std::string> diagnostics;
    double wall_ms = 0.0;

    bool equal() const { return status == "equal"; }
};

} // namespace mutad

#endif

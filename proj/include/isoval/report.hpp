#ifndef ISOVAL_REPORT_HPP
#define ISOVAL_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace isoval {

struct Trial {
    int index = 0;
    std::string body;
    std::string mu;
    double p = 1.0;
    double lhs = 0.0;    // the quantity under test
    double bound = 0.0;  // the theorem's bound (or the other side)
    double margin = 0.0; // (bound - lhs) / bound
    bool pass = false;
    std::string note;
};

struct VerificationReport {
    std::string theorem;
    std::uint64_t seed = 0;
    int grid_level = 0;
    double tolerance = 0.0;
    std::vector<Trial> trials;

    int violations() const;
    double min_margin() const;
    /// Largest |margin| among trials marked as equality cases.
    double max_equality_residual() const;

    std::string to_json() const;
    std::string to_csv() const;
};

/// Prints doubles with max_digits10 so identical runs produce identical
/// bytes.
std::string format_double(double x);

}  // namespace isoval

#endif

#include "isoval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace isoval {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int VerificationReport::violations() const {
    int n = 0;
    for (const Trial& t : trials)
        if (!t.pass) ++n;
    return n;
}

double VerificationReport::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const Trial& t : trials) m = std::min(m, t.margin);
    return trials.empty() ? 0.0 : m;
}

double VerificationReport::max_equality_residual() const {
    double m = 0.0;
    for (const Trial& t : trials)
        if (t.note.find("equality") != std::string::npos) m = std::max(m, std::abs(t.margin));
    return m;
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "isoval/1";
    j["theorem"] = theorem;
    j["seed"] = seed;
    j["grid_level"] = grid_level;
    j["tolerance"] = tolerance;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Trial& t : trials) {
        nlohmann::ordered_json e;
        e["index"] = t.index;
        e["body"] = t.body;
        e["mu"] = t.mu;
        e["p"] = t.p;
        e["lhs"] = t.lhs;
        e["bound"] = t.bound;
        e["margin"] = t.margin;
        e["pass"] = t.pass;
        if (!t.note.empty()) e["note"] = t.note;
        arr.push_back(std::move(e));
    }
    j["trials"] = std::move(arr);
    j["summary"] = {{"trials", trials.size()},
                    {"violations", violations()},
                    {"min_margin", min_margin()},
                    {"max_equality_residual", max_equality_residual()}};
    return j.dump(2) + "\n";
}

std::string VerificationReport::to_csv() const {
    std::ostringstream out;
    out << "index,body,mu,p,lhs,bound,margin,pass\n";
    for (const Trial& t : trials) {
        out << t.index << ',' << t.body << ',' << t.mu << ',' << format_double(t.p) << ','
            << format_double(t.lhs) << ',' << format_double(t.bound) << ','
            << format_double(t.margin) << ',' << (t.pass ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace isoval

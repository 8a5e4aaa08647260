#include "p4d/report.hpp"

#include <algorithm>

namespace p4d {

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

nlohmann::json to_json(const Report& r, bool include_timing) {
    nlohmann::json j;
    j["check"] = r.check;
    j["family"] = r.family;
    j["status"] = to_string(r.status);
    if (r.mode.exact) {
        j["mode"] = "exact";
    } else {
        j["mode"] = {{"random", {{"seed", r.mode.seed}, {"samples", r.mode.samples}}}};
    }
    if (r.witness) j["witness"] = *r.witness;
    if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

bool all_passed(const std::vector<Report>& reports) {
    return std::none_of(reports.begin(), reports.end(), [](const Report& r) { return r.status == Status::fail; });
}

}  // namespace p4d

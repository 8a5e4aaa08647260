#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace p4d {

enum class Status { pass, fail, inconclusive };

/// Exact mode is authoritative; random mode is polynomial-identity testing
/// at seeded rational sample points.
struct CheckMode {
    bool exact = true;
    std::uint64_t seed = 0;
    int samples = 8;

    static CheckMode exact_mode() { return {}; }
    static CheckMode random_mode(std::uint64_t seed, int samples) { return {false, seed, samples}; }
};

struct Report {
    std::string check;
    std::string family;
    Status status = Status::inconclusive;
    CheckMode mode;
    std::optional<std::string> witness;
    double elapsed_ms = 0;

    bool passed() const { return status == Status::pass; }
};

std::string to_string(Status s);
nlohmann::json to_json(const Report& r, bool include_timing = true);

bool all_passed(const std::vector<Report>& reports);

/// Wall-clock helper for filling Report::elapsed_ms.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace p4d

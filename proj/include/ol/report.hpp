#ifndef OL_REPORT_HPP
#define OL_REPORT_HPP

#include <cstdint>
#include <string>

#include "json.hpp"

namespace ol {

/// Machine-readable record of a verification run. Every numeric payload in
/// `results` is reproducible from `params` and `seed` alone.
struct VerificationReport {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    bool passed = false;
    std::uint64_t seed = 0;
    std::int64_t runtime_ms = 0;
    std::string schema_version = "1";

    nlohmann::json to_json() const;
};

} // namespace ol

#endif

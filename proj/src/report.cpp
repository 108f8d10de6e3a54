#include "ol/report.hpp"

namespace ol {

nlohmann::json VerificationReport::to_json() const {
    return nlohmann::json{
        {"schema_version", schema_version},
        {"command", command},
        {"params", params},
        {"seed", seed},
        {"runtime_ms", runtime_ms},
        {"results", results},
        {"passed", passed},
    };
}

} // namespace ol

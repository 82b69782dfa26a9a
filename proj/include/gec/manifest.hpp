#ifndef GEC_MANIFEST_HPP
#define GEC_MANIFEST_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace gec {

inline constexpr int json_schema_version = 1;
inline constexpr const char* artifact_version = "1.0.0";

// FNV-1a over file bytes; cheap content digest used to pin the zero table a
// run was produced with.
inline std::string file_digest_fnv1a(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("digest: cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[1 << 16];
    while (f.read(buf, sizeof(buf)) || f.gcount() > 0) {
        for (std::streamsize i = 0; i < f.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!f) break;
    }
    char out[24];
    std::snprintf(out, sizeof(out), "fnv1a-%016llx", static_cast<unsigned long long>(h));
    return out;
}

// Record of one CLI invocation: enough to replay it and reproduce the output
// byte for byte.
struct run_manifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string version = artifact_version;
    std::string zero_table_digest; // empty when no zero table was involved
    double wall_time_seconds = 0.0;
    std::vector<std::string> outputs;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema"] = json_schema_version;
        j["command"] = command;
        j["parameters"] = parameters;
        j["artifact_version"] = version;
        if (!zero_table_digest.empty()) j["zero_table_digest"] = zero_table_digest;
        j["wall_time_seconds"] = wall_time_seconds;
        j["outputs"] = outputs;
        return j;
    }

    static run_manifest from_json(const nlohmann::json& j) {
        if (!j.contains("schema") || j["schema"].get<int>() != json_schema_version)
            throw std::runtime_error("manifest: unsupported schema version");
        run_manifest m;
        m.command = j.at("command").get<std::string>();
        m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
        m.version = j.at("artifact_version").get<std::string>();
        if (j.contains("zero_table_digest"))
            m.zero_table_digest = j["zero_table_digest"].get<std::string>();
        m.wall_time_seconds = j.value("wall_time_seconds", 0.0);
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        return m;
    }

    void save(const std::string& path) const {
        std::ofstream f(path);
        if (!f) throw std::runtime_error("manifest: cannot write " + path);
        f << to_json().dump(2) << "\n";
    }

    static run_manifest load(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("manifest: cannot read " + path);
        nlohmann::json j;
        f >> j;
        return from_json(j);
    }
};

} // namespace gec

#endif

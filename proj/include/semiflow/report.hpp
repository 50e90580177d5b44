#pragma once

// JSON report records shared by the command-line front end and the test
// drivers.  Every numeric value is rendered as a decimal string with 17
// significant digits so that reports are deterministic byte-for-byte and
// round-trip through text without precision loss.

#include <string>
#include <utility>

#include <json.hpp>

#include "semiflow/types.hpp"

namespace semiflow {

inline constexpr const char* kVersionString = "semiflow 0.1.0";

using Json = nlohmann::ordered_json;

inline Json json_real(double v) { return format_double(v); }
inline Json json_complex(Cplx v) { return format_complex(v); }

inline Json make_record(const std::string& check, Json params, Json predicted, Json measured,
                        Json residual, bool pass) {
    Json rec;
    rec["check"] = check;
    rec["params"] = std::move(params);
    rec["predicted"] = std::move(predicted);
    rec["measured"] = std::move(measured);
    rec["residual"] = std::move(residual);
    rec["pass"] = pass;
    return rec;
}

// Report skeleton: version, the command that produced it, a self-contained
// statement of the mathematical fact being exercised, and a record array.
inline Json make_report(const std::string& command, const std::string& statement) {
    Json rep;
    rep["version"] = kVersionString;
    rep["command"] = command;
    rep["statement"] = statement;
    rep["records"] = Json::array();
    return rep;
}

// Flat CSV rendering of a report's records (scalar fields only).
inline std::string records_csv(const Json& report) {
    std::string out = "check,predicted,measured,residual,pass\n";
    for (const auto& rec : report.at("records")) {
        auto cell = [](const Json& v) -> std::string {
            if (v.is_string()) return v.get<std::string>();
            return v.dump();
        };
        out += cell(rec.at("check"));
        out += ',';
        out += cell(rec.at("predicted"));
        out += ',';
        out += cell(rec.at("measured"));
        out += ',';
        out += cell(rec.at("residual"));
        out += ',';
        out += rec.at("pass").get<bool>() ? "true" : "false";
        out += '\n';
    }
    return out;
}

}  // namespace semiflow

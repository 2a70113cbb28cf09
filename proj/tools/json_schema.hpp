#pragma once

// Validator for the JSON Schema subset used in schemas/: type (single or
// list), properties, required, additionalProperties (bool), items,
// minimum, maximum, minItems, enum, pattern, const.

#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

namespace schema {

using Json = nlohmann::ordered_json;

inline bool has_type(const Json& v, const std::string& t) {
    if (t == "null") return v.is_null();
    if (t == "boolean") return v.is_boolean();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "string") return v.is_string();
    if (t == "array") return v.is_array();
    if (t == "object") return v.is_object();
    return false;
}

/// Appends one message per violation; returns true when `v` conforms.
inline bool validate(const Json& v, const Json& s, std::vector<std::string>& errors, const std::string& path = "$") {
    const std::size_t before = errors.size();
    if (s.contains("type")) {
        bool ok = false;
        if (s["type"].is_array()) {
            for (const auto& t : s["type"]) ok = ok || has_type(v, t.get<std::string>());
        } else {
            ok = has_type(v, s["type"].get<std::string>());
        }
        if (!ok) {
            errors.push_back(path + ": expected type " + s["type"].dump() + ", got " + v.dump());
            return false;
        }
    }
    if (s.contains("const") && v != s["const"]) errors.push_back(path + ": expected " + s["const"].dump());
    if (s.contains("enum")) {
        bool found = false;
        for (const auto& e : s["enum"]) found = found || e == v;
        if (!found) errors.push_back(path + ": " + v.dump() + " not in enum");
    }
    if (v.is_number()) {
        if (s.contains("minimum") && v.get<double>() < s["minimum"].get<double>())
            errors.push_back(path + ": below minimum");
        if (s.contains("maximum") && v.get<double>() > s["maximum"].get<double>())
            errors.push_back(path + ": above maximum");
    }
    if (v.is_string() && s.contains("pattern") &&
        !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>())))
        errors.push_back(path + ": does not match " + s["pattern"].get<std::string>());
    if (v.is_array()) {
        if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
            errors.push_back(path + ": too few items");
        if (s.contains("items"))
            for (std::size_t i = 0; i < v.size(); ++i)
                validate(v[i], s["items"], errors, path + "[" + std::to_string(i) + "]");
    }
    if (v.is_object()) {
        if (s.contains("required"))
            for (const auto& key : s["required"])
                if (!v.contains(key.get<std::string>())) errors.push_back(path + ": missing " + key.get<std::string>());
        const bool closed = s.contains("additionalProperties") && s["additionalProperties"] == false;
        for (const auto& [key, value] : v.items()) {
            if (s.contains("properties") && s["properties"].contains(key))
                validate(value, s["properties"][key], errors, path + "." + key);
            else if (closed)
                errors.push_back(path + ": unexpected key " + key);
        }
    }
    return errors.size() == before;
}

} // namespace schema

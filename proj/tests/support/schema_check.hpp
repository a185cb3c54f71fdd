#pragma once

// Minimal structural validator for the published payload schemas: checks
// "type", "required" and recurses through "properties" / array "items".
// Covers exactly the subset of JSON Schema the docs/schemas files use.

#include <fstream>
#include <string>

#include "json.hpp"

namespace irelab::testing {

inline bool schema_type_ok(const nlohmann::json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number") return value.is_number();
    return false;
}

inline bool validate_schema(const nlohmann::json& value, const nlohmann::json& schema,
                            std::string* error) {
    if (schema.contains("type") && !schema_type_ok(value, schema["type"].get<std::string>())) {
        if (error) *error = "type mismatch, expected " + schema["type"].get<std::string>();
        return false;
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"]) {
            if (!value.contains(key.get<std::string>())) {
                if (error) *error = "missing required key '" + key.get<std::string>() + "'";
                return false;
            }
        }
    if (schema.contains("properties") && value.is_object())
        for (const auto& [key, sub] : schema["properties"].items()) {
            if (!value.contains(key)) continue;
            if (!validate_schema(value[key], sub, error)) {
                if (error) *error = "at '" + key + "': " + *error;
                return false;
            }
        }
    if (schema.contains("items") && value.is_array())
        for (const auto& item : value)
            if (!validate_schema(item, schema["items"], error)) {
                if (error) *error = "in array item: " + *error;
                return false;
            }
    return true;
}

inline nlohmann::json load_schema(const std::string& name) {
#ifndef IRELAB_SCHEMA_DIR
#error "IRELAB_SCHEMA_DIR must point at docs/schemas"
#endif
    std::ifstream in(std::string(IRELAB_SCHEMA_DIR) + "/" + name + ".schema.json");
    if (!in) throw std::runtime_error("missing schema " + name);
    return nlohmann::json::parse(in);
}

}  // namespace irelab::testing

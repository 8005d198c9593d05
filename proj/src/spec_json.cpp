#include "laststop/spec_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace laststop {

namespace {

std::vector<double> to_double_vector(const nlohmann::json& arr, const std::string& field) {
    if (!arr.is_array()) throw SpecError("field " + field + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number()) throw SpecError("field " + field + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

ProblemSpec parse_spec_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SpecError("spec must be a JSON object");

    RawSpec raw;
    for (const auto& [key, value] : doc.items()) {
        if (key == "kind") {
            if (!value.is_string()) throw SpecError("field kind must be a string");
            raw.kind = value.get<std::string>();
        } else if (key == "n") {
            if (!value.is_number_integer()) throw SpecError("field n must be an integer");
            raw.n = value.get<int>();
        } else if (key == "p") {
            if (!value.is_number()) throw SpecError("field p must be a number");
            raw.p = value.get<double>();
        } else if (key == "p_prime") {
            if (!value.is_number()) throw SpecError("field p_prime must be a number");
            raw.p_prime = value.get<double>();
        } else if (key == "p_seq") {
            raw.p_seq = to_double_vector(value, key);
        } else if (key == "plus_seq") {
            raw.plus_seq = to_double_vector(value, key);
        } else if (key == "minus_seq") {
            raw.minus_seq = to_double_vector(value, key);
        } else {
            throw SpecError("unknown spec field '" + key + "'");
        }
    }
    if (raw.kind.empty()) throw SpecError("missing field kind");
    return validate_spec(raw);
}

ProblemSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_json(buf.str());
}

} // namespace laststop

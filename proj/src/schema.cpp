#include "causentropy/schema.hpp"

#include <sstream>

namespace causentropy {

namespace {

class Validator {
public:
    explicit Validator(const Json& root) : root_(root) {}

    void check(const Json& value, const Json& schema, const std::string& path, std::vector<std::string>& out) const
    {
        if (schema.is_boolean()) {
            if (!schema.get<bool>()) {
                out.push_back(where(path) + "not allowed");
            }
            return;
        }
        if (schema.contains("$ref")) {
            check(value, resolve(schema.at("$ref").get<std::string>()), path, out);
        }
        if (schema.contains("type") && !type_matches(value, schema.at("type"))) {
            out.push_back(where(path) + "expected " + type_names(schema.at("type")) + ", got " + type_of(value));
            return;
        }
        if (schema.contains("const") && value != schema.at("const")) {
            out.push_back(where(path) + "must equal " + schema.at("const").dump());
        }
        if (schema.contains("enum")) {
            bool found = false;
            for (const auto& option : schema.at("enum")) {
                found = found || option == value;
            }
            if (!found) {
                out.push_back(where(path) + "must be one of " + schema.at("enum").dump() + ", got " + value.dump());
            }
        }
        if (value.is_number()) {
            check_bounds(value.get<double>(), schema, path, out);
        }
        if (value.is_object()) {
            check_object(value, schema, path, out);
        }
        if (value.is_array()) {
            if (schema.contains("minItems") && value.size() < schema.at("minItems").get<std::size_t>()) {
                out.push_back(where(path) + "needs at least " + schema.at("minItems").dump() + " items");
            }
            if (schema.contains("items")) {
                for (std::size_t i = 0; i < value.size(); ++i) {
                    check(value[i], schema.at("items"), path + "[" + std::to_string(i) + "]", out);
                }
            }
        }
        if (schema.contains("allOf")) {
            for (const auto& sub : schema.at("allOf")) {
                check(value, sub, path, out);
            }
        }
        if (schema.contains("if") && schema.contains("then")) {
            std::vector<std::string> probe;
            check(value, schema.at("if"), path, probe);
            if (probe.empty()) {
                check(value, schema.at("then"), path, out);
            }
        }
        if (schema.contains("oneOf")) {
            check_one_of(value, schema.at("oneOf"), path, out);
        }
    }

private:
    const Json& root_;

    static std::string where(const std::string& path) { return (path.empty() ? std::string("<root>") : path) + ": "; }

    const Json& resolve(const std::string& ref) const
    {
        if (ref.rfind("#", 0) != 0) {
            throw Error(ErrorCode::ConfigInvalid, "only local schema references are supported: " + ref);
        }
        return root_.at(Json::json_pointer(ref.substr(1)));
    }

    static std::string type_of(const Json& v)
    {
        if (v.is_number_integer()) {
            return "integer";
        }
        return v.type_name();
    }

    static bool is_type(const Json& v, const std::string& t)
    {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        if (t == "number") return v.is_number();
        if (t == "integer") {
            if (v.is_number_integer()) return true;
            if (v.is_number_float()) {
                const double x = v.get<double>();
                return x == static_cast<double>(static_cast<long long>(x));
            }
            return false;
        }
        return false;
    }

    static bool type_matches(const Json& v, const Json& type)
    {
        if (type.is_string()) {
            return is_type(v, type.get<std::string>());
        }
        for (const auto& t : type) {
            if (is_type(v, t.get<std::string>())) {
                return true;
            }
        }
        return false;
    }

    static std::string type_names(const Json& type) { return type.is_string() ? type.get<std::string>() : type.dump(); }

    static void check_bounds(double x, const Json& schema, const std::string& path, std::vector<std::string>& out)
    {
        auto fmt = [](double b) {
            std::ostringstream os;
            os << b;
            return os.str();
        };
        if (schema.contains("minimum") && !(x >= schema.at("minimum").get<double>())) {
            out.push_back(where(path) + "must be >= " + fmt(schema.at("minimum").get<double>()));
        }
        if (schema.contains("maximum") && !(x <= schema.at("maximum").get<double>())) {
            out.push_back(where(path) + "must be <= " + fmt(schema.at("maximum").get<double>()));
        }
        if (schema.contains("exclusiveMinimum") && !(x > schema.at("exclusiveMinimum").get<double>())) {
            out.push_back(where(path) + "must be > " + fmt(schema.at("exclusiveMinimum").get<double>()));
        }
        if (schema.contains("exclusiveMaximum") && !(x < schema.at("exclusiveMaximum").get<double>())) {
            out.push_back(where(path) + "must be < " + fmt(schema.at("exclusiveMaximum").get<double>()));
        }
    }

    void check_object(const Json& value, const Json& schema, const std::string& path,
                      std::vector<std::string>& out) const
    {
        const std::string prefix = path.empty() ? "" : path + ".";
        if (schema.contains("required")) {
            for (const auto& key : schema.at("required")) {
                if (!value.contains(key.get<std::string>())) {
                    out.push_back(where(path) + "missing required key '" + key.get<std::string>() + "'");
                }
            }
        }
        const Json* properties = schema.contains("properties") ? &schema.at("properties") : nullptr;
        for (const auto& [key, member] : value.items()) {
            if (properties && properties->contains(key)) {
                check(member, properties->at(key), prefix + key, out);
            } else if (schema.contains("additionalProperties")) {
                const Json& extra = schema.at("additionalProperties");
                if (extra.is_boolean() && !extra.get<bool>()) {
                    out.push_back(where(prefix + key) + "unknown key");
                } else if (extra.is_object()) {
                    check(member, extra, prefix + key, out);
                }
            }
        }
    }

    void check_one_of(const Json& value, const Json& options, const std::string& path,
                      std::vector<std::string>& out) const
    {
        std::size_t matches = 0;
        std::vector<std::string> closest;
        bool have_closest = false;
        for (const auto& option : options) {
            std::vector<std::string> errors;
            check(value, option, path, errors);
            if (errors.empty()) {
                ++matches;
            } else if (!have_closest || errors.size() < closest.size()) {
                closest = std::move(errors);
                have_closest = true;
            }
        }
        if (matches == 0) {
            out.push_back(where(path) + "matches none of the allowed forms; closest form reports:");
            out.insert(out.end(), closest.begin(), closest.end());
        } else if (matches > 1) {
            out.push_back(where(path) + "is ambiguous between allowed forms");
        }
    }
};

} // namespace

std::vector<std::string> validate_against_schema(const Json& instance, const Json& schema)
{
    std::vector<std::string> out;
    Validator(schema).check(instance, schema, "", out);
    return out;
}

} // namespace causentropy

#include "fqlab/report.hpp"

#include <sstream>
#include <stdexcept>

namespace fqlab {

using json = nlohmann::json;

const char* relation_symbol(Relation r) {
    switch (r) {
        case Relation::LessEq: return "<=";
        case Relation::Less: return "<";
        case Relation::Equal: return "==";
        case Relation::NotEqual: return "!=";
        case Relation::GreaterEq: return ">=";
    }
    return "?";
}

Relation parse_relation(const std::string& s) {
    if (s == "<=") return Relation::LessEq;
    if (s == "<") return Relation::Less;
    if (s == "==") return Relation::Equal;
    if (s == "!=") return Relation::NotEqual;
    if (s == ">=") return Relation::GreaterEq;
    throw std::invalid_argument("unknown relation '" + s + "'");
}

bool compare(const Rational& lhs, Relation rel, const Rational& rhs) {
    switch (rel) {
        case Relation::LessEq: return lhs <= rhs;
        case Relation::Less: return lhs < rhs;
        case Relation::Equal: return lhs == rhs;
        case Relation::NotEqual: return lhs != rhs;
        case Relation::GreaterEq: return lhs >= rhs;
    }
    return false;
}

VerificationReport make_report(std::string name, std::string fingerprint, const Rational& lhs, Relation rel,
                               const Rational& rhs, bool squared) {
    VerificationReport r;
    r.name = std::move(name);
    r.fingerprint = std::move(fingerprint);
    r.relation = rel;
    r.lhs = to_string(lhs);
    r.rhs = to_string(rhs);
    r.squared = squared;
    r.pass = compare(lhs, rel, rhs);
    return r;
}

bool recheck(const VerificationReport& r) {
    return compare(parse_rational(r.lhs), r.relation, parse_rational(r.rhs)) == r.pass;
}

json to_json(const VerificationReport& r) {
    return {{"name", r.name},        {"fingerprint", r.fingerprint}, {"relation", relation_symbol(r.relation)},
            {"lhs", r.lhs},          {"rhs", r.rhs},                 {"squared", r.squared},
            {"pass", r.pass},        {"inputs", r.inputs},           {"notes", r.notes}};
}

VerificationReport report_from_json(const json& j) {
    VerificationReport r;
    r.name = j.at("name").get<std::string>();
    r.fingerprint = j.at("fingerprint").get<std::string>();
    r.relation = parse_relation(j.at("relation").get<std::string>());
    r.lhs = j.at("lhs").get<std::string>();
    r.rhs = j.at("rhs").get<std::string>();
    r.squared = j.at("squared").get<bool>();
    r.pass = j.at("pass").get<bool>();
    r.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

std::vector<std::string> validate_report_json(const json& j) {
    std::vector<std::string> problems;
    if (!j.is_object()) return {"report is not an object"};
    auto need = [&](const char* key, bool ok, const char* what) {
        if (!j.contains(key)) {
            problems.push_back(std::string("missing '") + key + "'");
        } else if (!ok) {
            problems.push_back(std::string("'") + key + "' must be " + what);
        }
    };
    need("name", j.contains("name") && j["name"].is_string() && !j["name"].get<std::string>().empty(),
         "a non-empty string");
    need("fingerprint", j.contains("fingerprint") && j["fingerprint"].is_string(), "a string");
    need("relation", j.contains("relation") && j["relation"].is_string(), "a string");
    need("lhs", j.contains("lhs") && j["lhs"].is_string(), "a decimal string");
    need("rhs", j.contains("rhs") && j["rhs"].is_string(), "a decimal string");
    need("squared", j.contains("squared") && j["squared"].is_boolean(), "a boolean");
    need("pass", j.contains("pass") && j["pass"].is_boolean(), "a boolean");
    need("inputs", j.contains("inputs") && j["inputs"].is_object(), "an object");
    need("notes", j.contains("notes") && j["notes"].is_array(), "an array");
    if (!problems.empty()) return problems;
    for (const auto& [k, v] : j["inputs"].items()) {
        if (!v.is_string()) problems.push_back("input '" + k + "' must be a string");
    }
    for (const auto& n : j["notes"]) {
        if (!n.is_string()) problems.push_back("notes must be strings");
    }
    try {
        if (!recheck(report_from_json(j))) problems.push_back("pass flag disagrees with lhs/rhs");
    } catch (const std::exception& e) {
        problems.push_back(std::string("unparseable report: ") + e.what());
    }
    return problems;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string csv_header() { return "name,fingerprint,relation,lhs,rhs,squared,pass,notes"; }

std::string to_csv_row(const VerificationReport& r) {
    std::string notes;
    for (std::size_t i = 0; i < r.notes.size(); ++i) notes += (i ? "; " : "") + r.notes[i];
    std::ostringstream os;
    os << csv_field(r.name) << ',' << csv_field(r.fingerprint) << ',' << csv_field(relation_symbol(r.relation)) << ','
       << csv_field(r.lhs) << ',' << csv_field(r.rhs) << ',' << (r.squared ? "true" : "false") << ','
       << (r.pass ? "true" : "false") << ',' << csv_field(notes);
    return os.str();
}

std::string to_text(const VerificationReport& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (!r.fingerprint.empty()) os << " [" << r.fingerprint << "]";
    os << ": " << r.lhs << ' ' << relation_symbol(r.relation) << ' ' << r.rhs;
    if (r.squared) os << " (squared)";
    for (const auto& n : r.notes) os << "\n    " << n;
    return os.str();
}

}  // namespace fqlab

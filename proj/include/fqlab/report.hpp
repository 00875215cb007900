#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fqlab/bigint.hpp"

namespace fqlab {

enum class Relation { LessEq, Less, Equal, NotEqual, GreaterEq };

const char* relation_symbol(Relation r);
Relation parse_relation(const std::string& symbol);

// One checked identity or inequality. lhs and rhs are exact decimal integers
// or rationals "a/b"; when a square root of q had to be eliminated both sides
// are stored squared and `squared` is set. `pass` is always the comparison of
// the recorded sides, so a report can be re-audited from its own fields.
struct VerificationReport {
    std::string name;
    std::string fingerprint;  // comma-separated when several specs are involved
    Relation relation = Relation::LessEq;
    std::string lhs;
    std::string rhs;
    bool squared = false;
    bool pass = false;
    std::map<std::string, std::string> inputs;
    std::vector<std::string> notes;
};

bool compare(const Rational& lhs, Relation rel, const Rational& rhs);

VerificationReport make_report(std::string name, std::string fingerprint, const Rational& lhs, Relation rel,
                               const Rational& rhs, bool squared = false);

/// Recomputes the comparison from the recorded strings.
bool recheck(const VerificationReport& r);

nlohmann::json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

/// Empty when j conforms to the report schema, otherwise one message per problem.
std::vector<std::string> validate_report_json(const nlohmann::json& j);

std::string csv_header();
std::string to_csv_row(const VerificationReport& r);
std::string to_text(const VerificationReport& r);

}  // namespace fqlab

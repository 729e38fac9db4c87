#pragma once

// JSON encodings. Numbers are always strings in the canonical text forms
// ("p/q", "inf", "[[a,b],[c,d]]", "2.1.0") so nothing is rounded.

#include "jigsaw/commensurability.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace jigsaw {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

Json to_json(const KillerInterval& k);
Json to_json(const CoverProof& p);
Json to_json(const Gaps& g);
Json to_json(const DescentTrace& t);
Json to_json(const SpecialCertificate& c);
Json to_json(const ArithmeticityWitness& w);
Json to_json(const GroupVerdict& v, const std::string& group);
Json to_json(const SurveyRow& r);
Json to_json(const Budgets& b);

KillerInterval killer_from_json(const Json& j);
CoverProof cover_from_json(const Json& j);
DescentTrace descent_from_json(const Json& j);
SpecialCertificate certificate_from_json(const Json& j);
ArithmeticityWitness witness_from_json(const Json& j);
GroupVerdict verdict_from_json(const Json& j);
SurveyRow survey_row_from_json(const Json& j);
Budgets budgets_from_json(const Json& j);

/// Re-checks whatever certificate the document holds ("kind" selects the
/// checker; survey reports and verdicts check every embedded proof). Throws
/// ParseError on malformed input.
VerifyReport verify_document(const Json& j);

/// Resumable survey state: the configuration plus the rows finished so far.
struct SurveyCheckpoint {
    std::vector<std::string> groups;  // group specs in survey order
    Budgets budgets;
    std::vector<SurveyRow> rows;      // rows for groups[0 .. rows.size())
    /// Resume point inside the group currently being hunted.
    std::size_t next_candidate = 0;
};

Json to_json(const SurveyCheckpoint& c);
SurveyCheckpoint checkpoint_from_json(const Json& j);

Json read_json(const std::filesystem::path& path);
/// Writes via a temporary file in the same directory and a rename.
void write_json_atomic(const std::filesystem::path& path, const Json& j);

}  // namespace jigsaw

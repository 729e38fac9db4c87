#include "jigsaw/serialize.hpp"

#include "jigsaw/errors.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace jigsaw {

namespace {

std::string str(const Integer& z) { return z.get_str(); }

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string text(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_string()) throw ParseError(std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

Rational rational(const Json& j, const char* key) { return Rational::parse(text(j, key)); }
Integer integer(const Json& j, const char* key) { return parse_integer(text(j, key)); }
Word word(const Json& j, const char* key) { return Word::parse(text(j, key)); }
ProjectiveMatrix matrix(const Json& j, const char* key) { return ProjectiveMatrix::parse(text(j, key)); }

std::size_t count(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    const bool ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
    if (!ok) throw ParseError(std::string("field \"") + key + "\" must be a count");
    return v.get<std::size_t>();
}

void expect_kind(const Json& j, const char* kind)
{
    if (text(j, "kind") != kind) throw ParseError(std::string("expected a ") + kind + " document");
    if (j.contains("version") && j.at("version") != kFormatVersion) throw ParseError("unsupported format version");
}

Json header(const char* kind)
{
    Json j;
    j["kind"] = kind;
    j["version"] = kFormatVersion;
    return j;
}

Json to_json(const Gap& g) { return Json{{"lo", g.lo.to_string()}, {"hi", g.hi.to_string()}}; }

}  // namespace

Json to_json(const KillerInterval& k)
{
    return Json{{"cusp", k.cusp.to_string()},
                {"lo", k.lo.to_string()},
                {"hi", k.hi.to_string()},
                {"witness", k.witness.to_string()},
                {"witness_matrix", k.witness_matrix.to_string()}};
}

KillerInterval killer_from_json(const Json& j)
{
    return KillerInterval{ExtendedRational::parse(text(j, "cusp")), rational(j, "lo"), rational(j, "hi"),
                          word(j, "witness"), matrix(j, "witness_matrix")};
}

Json to_json(const CoverProof& p)
{
    Json j = header("cover_proof");
    j["group"] = p.group;
    j["k"] = str(p.k);
    j["length"] = str(p.length);
    j["intervals"] = Json::array();
    for (const auto& k : p.intervals) j["intervals"].push_back(to_json(k));
    return j;
}

CoverProof cover_from_json(const Json& j)
{
    expect_kind(j, "cover_proof");
    CoverProof p{text(j, "group"), integer(j, "k"), integer(j, "length"), {}};
    const Json& items = field(j, "intervals");
    if (!items.is_array()) throw ParseError("intervals must be an array");
    for (const auto& k : items) p.intervals.push_back(killer_from_json(k));
    return p;
}

Json to_json(const Gaps& g)
{
    Json j = header("gaps");
    j["gaps"] = Json::array();
    for (const auto& x : g.gaps) j["gaps"].push_back(to_json(x));
    j["budget_exceeded"] = g.budget_exceeded;
    j["reason"] = g.reason;
    return j;
}

Json to_json(const DescentTrace& t)
{
    Json j = header("descent");
    j["start"] = t.start.to_string();
    j["steps"] = Json::array();
    for (const auto& s : t.steps) {
        Json e;
        if (s.kind == DescentStep::Kind::Translate) {
            e["kind"] = "translate";
            e["shift"] = str(s.shift);
        } else {
            e["kind"] = "kill";
            e["word"] = s.word.to_string();
        }
        e["value"] = s.value.to_string();
        e["height"] = str(s.height);
        j["steps"].push_back(std::move(e));
    }
    return j;
}

DescentTrace descent_from_json(const Json& j)
{
    expect_kind(j, "descent");
    DescentTrace t{rational(j, "start"), {}};
    for (const auto& e : field(j, "steps")) {
        DescentStep s{};
        const std::string kind = text(e, "kind");
        if (kind == "translate") {
            s.kind = DescentStep::Kind::Translate;
            s.shift = integer(e, "shift");
        } else if (kind == "kill") {
            s.kind = DescentStep::Kind::Kill;
            s.word = word(e, "word");
        } else {
            throw ParseError("unknown descent step " + kind);
        }
        s.value = ExtendedRational::parse(text(e, "value"));
        s.height = integer(e, "height");
        t.steps.push_back(std::move(s));
    }
    return t;
}

Json to_json(const SpecialCertificate& c)
{
    Json j = header("special_certificate");
    j["group"] = c.group;
    j["word"] = c.word.to_string();
    j["matrix"] = c.matrix.to_string();
    j["fixed_points"] = Json::array({c.fixed_points.first.to_string(), c.fixed_points.second.to_string()});
    j["trace_squared"] = c.trace_squared.to_string();
    j["det"] = str(c.det);
    return j;
}

SpecialCertificate certificate_from_json(const Json& j)
{
    expect_kind(j, "special_certificate");
    const Json& fp = field(j, "fixed_points");
    if (!fp.is_array() || fp.size() != 2 || !fp[0].is_string() || !fp[1].is_string())
        throw ParseError("fixed_points must hold two rationals");
    return SpecialCertificate{text(j, "group"),
                              word(j, "word"),
                              matrix(j, "matrix"),
                              {Rational::parse(fp[0].get<std::string>()), Rational::parse(fp[1].get<std::string>())},
                              rational(j, "trace_squared"),
                              integer(j, "det")};
}

Json to_json(const ArithmeticityWitness& w)
{
    Json j = header("arithmeticity_witness");
    j["group"] = w.group;
    j["word"] = w.word.to_string();
    j["matrix"] = w.matrix.to_string();
    j["trace_squared_over_det"] = w.trace_squared_over_det.to_string();
    j["construction"] = w.construction;
    return j;
}

ArithmeticityWitness witness_from_json(const Json& j)
{
    expect_kind(j, "arithmeticity_witness");
    return ArithmeticityWitness{text(j, "group"), word(j, "word"), matrix(j, "matrix"),
                                rational(j, "trace_squared_over_det"), text(j, "construction")};
}

Json to_json(const GroupVerdict& v, const std::string& group)
{
    Json j = header("verdict");
    j["group"] = group;
    j["verdict"] = verdict_name(v);
    if (const auto* p = std::get_if<Pseudomodular>(&v)) {
        j["cover"] = to_json(p->cover);
        j["witness"] = to_json(p->witness);
    } else if (const auto* n = std::get_if<NotPseudomodular>(&v)) {
        j["certificate"] = to_json(n->certificate);
    } else if (const auto* c = std::get_if<CuspSetFullOnly>(&v)) {
        j["cover"] = to_json(c->cover);
    } else {
        j["report"] = std::get<UndeterminedVerdict>(v).report;
    }
    return j;
}

GroupVerdict verdict_from_json(const Json& j)
{
    expect_kind(j, "verdict");
    const std::string v = text(j, "verdict");
    if (v == "pseudomodular") return Pseudomodular{cover_from_json(field(j, "cover")), witness_from_json(field(j, "witness"))};
    if (v == "not pseudomodular") return NotPseudomodular{certificate_from_json(field(j, "certificate"))};
    if (v == "cusp set full") return CuspSetFullOnly{cover_from_json(field(j, "cover"))};
    if (v == "undetermined") return UndeterminedVerdict{text(j, "report")};
    throw ParseError("unknown verdict " + v);
}

Json to_json(const SurveyRow& r)
{
    Json j;
    j["group"] = r.group;
    if (const auto* s = std::get_if<ContainsSpecial>(&r.verdict)) {
        j["verdict"] = "contains a special";
        j["stage"] = s->stage;
        j["certificate"] = to_json(s->certificate);
    } else if (const auto* c = std::get_if<CuspSetFull>(&r.verdict)) {
        j["verdict"] = "cusp set full";
        j["cover"] = to_json(c->proof);
    } else {
        const auto& u = std::get<Undetermined>(r.verdict);
        j["verdict"] = "undetermined";
        j["report"] = u.report;
        j["gaps"] = Json::array();
        for (const auto& g : u.gaps) j["gaps"].push_back(to_json(g));
    }
    j["words_scanned_up_to"] = r.words_scanned_up_to;
    j["candidates_probed"] = r.candidates_probed;
    return j;
}

SurveyRow survey_row_from_json(const Json& j)
{
    SurveyRow r;
    r.group = text(j, "group");
    const std::string v = text(j, "verdict");
    if (v == "contains a special") {
        r.verdict = ContainsSpecial{certificate_from_json(field(j, "certificate")), text(j, "stage")};
    } else if (v == "cusp set full") {
        r.verdict = CuspSetFull{cover_from_json(field(j, "cover"))};
    } else if (v == "undetermined") {
        Undetermined u{text(j, "report"), {}};
        for (const auto& g : field(j, "gaps")) u.gaps.push_back(Gap{rational(g, "lo"), rational(g, "hi")});
        r.verdict = std::move(u);
    } else {
        throw ParseError("unknown survey verdict " + v);
    }
    r.words_scanned_up_to = count(j, "words_scanned_up_to");
    r.candidates_probed = count(j, "candidates_probed");
    return r;
}

Json to_json(const Budgets& b)
{
    return Json{{"max_word_length", b.max_word_length},
                {"max_words", b.max_words},
                {"max_orbit", b.max_orbit},
                {"max_height", b.max_height},
                {"height_bits", b.height_bits},
                {"max_witness_length", b.max_witness_length},
                {"cover_word_length", b.cover.max_word_length},
                {"cover_intervals", b.cover.max_intervals},
                {"cover_probe_budget", b.cover.probe_budget}};
}

Budgets budgets_from_json(const Json& j)
{
    Budgets b;
    b.max_word_length = count(j, "max_word_length");
    b.max_words = count(j, "max_words");
    b.max_orbit = count(j, "max_orbit");
    b.max_height = static_cast<long>(count(j, "max_height"));
    b.height_bits = count(j, "height_bits");
    b.max_witness_length = count(j, "max_witness_length");
    b.cover.max_word_length = count(j, "cover_word_length");
    b.cover.max_intervals = count(j, "cover_intervals");
    b.cover.probe_budget = count(j, "cover_probe_budget");
    return b;
}

Json to_json(const SurveyCheckpoint& c)
{
    Json j = header("survey_checkpoint");
    j["groups"] = c.groups;
    j["budgets"] = to_json(c.budgets);
    j["completed"] = c.rows.size();
    j["rows"] = Json::array();
    for (const auto& r : c.rows) j["rows"].push_back(to_json(r));
    j["next_candidate"] = c.next_candidate;
    return j;
}

SurveyCheckpoint checkpoint_from_json(const Json& j)
{
    expect_kind(j, "survey_checkpoint");
    SurveyCheckpoint c;
    for (const auto& g : field(j, "groups")) {
        if (!g.is_string()) throw ParseError("group specs must be strings");
        c.groups.push_back(g.get<std::string>());
    }
    c.budgets = budgets_from_json(field(j, "budgets"));
    for (const auto& r : field(j, "rows")) c.rows.push_back(survey_row_from_json(r));
    if (count(j, "completed") != c.rows.size()) throw ParseError("checkpoint row count mismatch");
    if (c.rows.size() > c.groups.size()) throw ParseError("checkpoint has more rows than groups");
    c.next_candidate = count(j, "next_candidate");
    return c;
}

VerifyReport verify_document(const Json& j)
{
    const std::string kind = text(j, "kind");
    auto group_of = [](const Json& d) { return parse_group_spec(text(d, "group")); };
    if (kind == "cover_proof") {
        const CoverProof p = cover_from_json(j);
        return verify_cover(p, group_of(j));
    }
    if (kind == "special_certificate") return verify_certificate(certificate_from_json(j), group_of(j));
    if (kind == "arithmeticity_witness") return verify_witness(witness_from_json(j), group_of(j));
    if (kind == "descent") {
        // descent traces carry no group name; the caller supplies it
        if (!j.contains("group")) throw ParseError("descent document needs a group field");
        return verify_descent(descent_from_json(j), group_of(j));
    }
    if (kind == "verdict") return verify_verdict(verdict_from_json(j), group_of(j));
    if (kind == "survey") {
        for (const auto& row : field(j, "rows")) {
            const SurveyRow r = survey_row_from_json(row);
            const JigsawGroup g = parse_group_spec(r.group);
            VerifyReport rep;
            if (const auto* s = std::get_if<ContainsSpecial>(&r.verdict)) rep = verify_certificate(s->certificate, g);
            if (const auto* c = std::get_if<CuspSetFull>(&r.verdict)) rep = verify_cover(c->proof, g);
            if (!rep.ok) return VerifyReport{false, r.group + ": " + rep.diagnostic};
        }
        return {};
    }
    throw ParseError("cannot verify documents of kind " + kind);
}

Json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json_atomic(const std::filesystem::path& path, const Json& j)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << j.dump(2) << '\n';
        out.flush();
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace jigsaw

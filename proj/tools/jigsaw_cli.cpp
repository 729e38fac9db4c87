// jigsaw: command-line front end for the jigsaw group library.

#include "jigsaw/commensurability.hpp"
#include "jigsaw/errors.hpp"
#include "jigsaw/render.hpp"
#include "jigsaw/serialize.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace jigsaw;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kUndetermined = 3 };

struct Options {
    std::size_t max_word_len = 14;
    std::size_t max_orbit = 4000;
    long max_height = 40;
    std::size_t cover_word_len = 6;
    int workers = 0;
    std::string resume;
    std::string out;
    std::string layers = "tiles";
};

Budgets budgets_of(const Options& o)
{
    Budgets b;
    b.max_word_length = o.max_word_len;
    b.max_orbit = o.max_orbit;
    b.max_height = o.max_height;
    b.cover.max_word_length = o.cover_word_len;
    b.search.workers = o.workers;
    b.cover.search.workers = o.workers;
    return b;
}

void check_budgets(const Options& o)
{
    if (o.max_word_len == 0 || o.max_orbit == 0 || o.max_height <= 0 || o.cover_word_len == 0 || o.workers < 0)
        throw InvalidArgument("budgets must be positive");
}

long parse_long(const std::string& s)
{
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw ParseError("expected an integer, got '" + s + "'");
    return v;
}

// "a..b" or "a".
std::pair<long, long> parse_range(const std::string& s)
{
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const long v = parse_long(s);
        return {v, v};
    }
    const long a = parse_long(s.substr(0, dots));
    const long b = parse_long(s.substr(dots + 2));
    if (b < a) throw ParseError("empty range '" + s + "'");
    return {a, b};
}

// "W 1..28", "J 1..3 2", "J 1 1 shift -1".
std::vector<std::string> expand_specs(const std::vector<std::string>& args)
{
    std::vector<std::string> out;
    for (const auto& arg : args) {
        std::istringstream in(arg);
        std::vector<std::string> tok;
        for (std::string t; in >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (arg.find("..") == std::string::npos) {
            parse_group_spec(arg);
            out.push_back(arg);
            continue;
        }
        if ((tok[0] == "W" || tok[0] == "w") && tok.size() == 2) {
            const auto [a, b] = parse_range(tok[1]);
            for (long n = a; n <= b; ++n) out.push_back("W " + std::to_string(n));
        } else if ((tok[0] == "J" || tok[0] == "j") && tok.size() == 3) {
            const auto [m0, m1] = parse_range(tok[1]);
            const auto [n0, n1] = parse_range(tok[2]);
            for (long m = m0; m <= m1; ++m)
                for (long n = n0; n <= n1; ++n) out.push_back("J " + std::to_string(m) + " " + std::to_string(n));
        } else {
            throw ParseError("cannot expand group list '" + arg + "'");
        }
    }
    for (const auto& s : out) parse_group_spec(s);
    return out;
}

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw Error("cannot write " + o.out);
    f << text;
}

void emit_json(const Options& o, const Json& j)
{
    if (o.out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json_atomic(o.out, j);
    }
}

std::string row_label(const SurveyRow& r, const std::optional<ArithmeticityWitness>& w)
{
    if (std::holds_alternative<ContainsSpecial>(r.verdict)) return "contains a special";
    if (std::holds_alternative<CuspSetFull>(r.verdict)) return w ? "pseudomodular" : "cusp set full";
    return "undetermined";
}

int cmd_survey(const Options& o, const std::vector<std::string>& args)
{
    const Budgets b = budgets_of(o);
    SurveyCheckpoint cp;
    cp.groups = expand_specs(args);
    cp.budgets = b;
    const bool resuming = !o.resume.empty() && std::filesystem::exists(o.resume);
    if (resuming) {
        SurveyCheckpoint saved = checkpoint_from_json(read_json(o.resume));
        if (saved.groups != cp.groups) throw InvalidArgument("checkpoint was written for a different group list");
        if (to_json(saved.budgets) != to_json(cp.budgets))
            throw InvalidArgument("checkpoint was written with different budgets");
        cp = std::move(saved);
    }
    auto save = [&]() {
        if (!o.resume.empty()) write_json_atomic(o.resume, to_json(cp));
    };
    while (cp.rows.size() < cp.groups.size()) {
        const JigsawGroup g = parse_group_spec(cp.groups[cp.rows.size()]);
        HuntProgress progress;
        progress.next_candidate = cp.next_candidate;
        progress.on_chunk = [&](std::size_t next) {
            cp.next_candidate = next;
            save();
        };
        SurveyRow row = hunt(g, b, &progress);
        row.group = cp.groups[cp.rows.size()];
        cp.rows.push_back(std::move(row));
        cp.next_candidate = 0;
        save();
    }

    Json report = Json{{"kind", "survey"}, {"version", kFormatVersion}, {"budgets", to_json(b)}, {"rows", Json::array()}};
    std::ostringstream table;
    table << "group        verdict              stage\n";
    for (const auto& r : cp.rows) {
        const JigsawGroup g = parse_group_spec(r.group);
        std::optional<ArithmeticityWitness> w;
        if (std::holds_alternative<CuspSetFull>(r.verdict)) w = arithmeticity_witness(g, b.max_witness_length);
        Json row = to_json(r);
        row["label"] = row_label(r, w);
        if (w) row["witness"] = to_json(*w);
        report["rows"].push_back(row);
        std::string stage;
        if (const auto* s = std::get_if<ContainsSpecial>(&r.verdict)) stage = s->stage;
        char line[160];
        std::snprintf(line, sizeof line, "%-12s %-20s %s\n", r.group.c_str(), row_label(r, w).c_str(), stage.c_str());
        table << line;
    }
    std::cout << table.str();
    if (!o.out.empty()) write_json_atomic(o.out, report);
    return kOk;
}

int cmd_verify(const std::string& file)
{
    const Json j = read_json(file);
    const VerifyReport r = verify_document(j);
    if (!r.ok) {
        std::cerr << "verification failed: " << r.diagnostic << '\n';
        return kVerifyFailed;
    }
    std::cout << "ok\n";
    return kOk;
}

int cmd_hunt(const Options& o, const std::string& spec)
{
    const JigsawGroup g = parse_group_spec(spec);
    const auto s = find_special(g, budgets_of(o));
    if (!s) {
        std::cerr << g.id() << ": no special element within budget\n";
        return kUndetermined;
    }
    Json j = to_json(s->certificate);
    j["stage"] = s->stage;
    emit_json(o, j);
    return kOk;
}

int cmd_cover(const Options& o, const std::string& spec)
{
    const JigsawGroup g = parse_group_spec(spec);
    CoverOptions c = budgets_of(o).cover;
    auto r = cover_fundamental_interval(g, c);
    if (const auto* p = std::get_if<CoverProof>(&r)) {
        emit_json(o, to_json(*p));
        return kOk;
    }
    emit_json(o, to_json(std::get<Gaps>(r)));
    return kUndetermined;
}

int cmd_thm2(const Options& o, long n)
{
    emit_json(o, to_json(theorem2_certificate(n)));
    return kOk;
}

int cmd_arith(const Options& o, const std::string& spec, std::size_t max_len)
{
    const JigsawGroup g = parse_group_spec(spec);
    const auto w = arithmeticity_witness(g, max_len);
    if (!w) {
        std::cerr << g.id() << ": no even word up to length " << max_len << " has a non-integral trace square\n";
        return kUndetermined;
    }
    emit_json(o, to_json(*w));
    return kOk;
}

int cmd_render(const Options& o, const std::string& spec, const std::string& lo, const std::string& hi,
               std::size_t killer_len)
{
    const JigsawGroup g = parse_group_spec(spec);
    RenderOptions r;
    r.lo = Rational::parse(lo);
    r.hi = Rational::parse(hi);
    r.killer_word_length = killer_len;
    set_layers(r, o.layers);
    emit(o, render_svg(g, r));
    return kOk;
}

int cmd_reduce(const Options& o, const std::string& spec, const std::string& x)
{
    const JigsawGroup g = parse_group_spec(spec);
    auto r = cover_fundamental_interval(g, budgets_of(o).cover);
    const auto* p = std::get_if<CoverProof>(&r);
    if (!p) {
        std::cerr << g.id() << ": no cover proof within budget\n";
        return kUndetermined;
    }
    Json j = to_json(reduce_to_infinity(g, *p, Rational::parse(x)));
    j["group"] = g.id();
    emit_json(o, j);
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Jigsaw groups: cusp covers, special elements and non-arithmeticity witnesses"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--max-word-len", o.max_word_len, "Word length for the special scan")->capture_default_str();
    app.add_option("--max-orbit", o.max_orbit, "Walk states per candidate")->capture_default_str();
    app.add_option("--max-height", o.max_height, "Largest candidate denominator")->capture_default_str();
    app.add_option("--cover-word-len", o.cover_word_len, "Word length for cusp discovery")->capture_default_str();
    app.add_option("--workers", o.workers, "Worker threads (0 = OpenMP default)")->capture_default_str();
    app.add_option("--resume", o.resume, "Checkpoint file, read if present and updated while running");
    app.add_option("--out", o.out, "Output file (default stdout)");
    app.add_option("--render-layers", o.layers, "Comma list of tiles,killers,tangency")->capture_default_str();

    std::vector<std::string> groups;
    auto* survey = app.add_subcommand("survey", "Hunt every listed group, e.g. \"W 1..28\" \"J 1 1\"");
    survey->add_option("groups", groups, "Group specs; ranges a..b allowed");

    std::string file;
    auto* verify = app.add_subcommand("verify", "Re-check a certificate file");
    verify->add_option("file", file)->required();

    std::string spec;
    auto* hunt_cmd = app.add_subcommand("hunt", "Search for a special element");
    hunt_cmd->add_option("group", spec)->required();

    auto* cover = app.add_subcommand("cover", "Build a killer-interval cover");
    cover->add_option("group", spec)->required();

    long n = 0;
    auto* thm2 = app.add_subcommand("certify-thm2", "Special element of W_n for n = 0, 2, 6 mod 8");
    thm2->add_option("n", n)->required();

    std::size_t witness_len = 8;
    auto* arith = app.add_subcommand("arith-check", "Non-arithmeticity witness");
    arith->add_option("group", spec)->required();
    arith->add_option("--max-len", witness_len, "Longest even word scanned")->capture_default_str();

    std::string lo = "0", hi = "6";
    std::size_t killer_len = 5;
    auto* render = app.add_subcommand("render", "SVG of vertical tiles, killer intervals and tangency points");
    render->add_option("group", spec)->required();
    render->add_option("--lo", lo, "Window start")->capture_default_str();
    render->add_option("--hi", hi, "Window end")->capture_default_str();
    render->add_option("--killer-len", killer_len, "Word length for the killer layer")->capture_default_str();

    std::string x;
    auto* reduce = app.add_subcommand("reduce", "Descend a rational to Infinity with a cover proof");
    reduce->add_option("group", spec)->required();
    reduce->add_option("x", x)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        check_budgets(o);
        if (*survey) return cmd_survey(o, groups);
        if (*verify) return cmd_verify(file);
        if (*hunt_cmd) return cmd_hunt(o, spec);
        if (*cover) return cmd_cover(o, spec);
        if (*thm2) return cmd_thm2(o, n);
        if (*arith) {
            if (witness_len < 2) throw InvalidArgument("--max-len must be at least 2");
            return cmd_arith(o, spec, witness_len);
        }
        if (*render) return cmd_render(o, spec, lo, hi, killer_len);
        if (*reduce) return cmd_reduce(o, spec, x);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UnsupportedResidue& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UnsupportedTileType& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const EmptyJigsaw& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kUsage;
}

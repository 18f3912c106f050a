#include "kosq/cli.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kosq/graph.hpp"
#include "kosq/ingest.hpp"
#include "kosq/report.hpp"

namespace kosq::cli {

namespace {

// Unreadable or unparsable input; reported with exit code 2.
class InputFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputFailure(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <typename F>
auto parsing(const std::string& path, F&& parse) {
    try {
        return parse(read_file(path));
    } catch (const ParseError& e) {
        throw InputFailure(path + ":" + std::to_string(e.line()) + ":" +
                           std::to_string(e.column()) + ": " + e.message() +
                           (e.snippet().empty() ? "" : "\n    " + e.snippet()));
    }
}

Loaded<Kos> load_kos(const std::string& path, const std::string& format) {
    const auto ext = std::filesystem::path(path).extension().string();
    const bool skos = format == "skos" || (format == "auto" && (ext == ".ttl" || ext == ".skos"));
    const auto name = std::filesystem::path(path).stem().string();
    return parsing(path, [&](const std::string& text) {
        if (skos) return Loaded<Kos>{parse_skos_subset(text, name), {}};
        NativeOptions options;
        options.name = name;
        return parse_native(text, options);
    });
}

struct AnalyzeArgs {
    std::string path;
    std::string format = "auto";
    bool include_meronymy = false;
    bool include_instances = false;
    std::string tennis_pairs;
    std::size_t max_distance = kDefaultTennisDistance;
    std::string corpus;
    std::string out = "text";
    bool strict = false;
    bool no_timestamp = false;
};

struct CompareArgs {
    std::string a;
    std::string b;
    std::string format = "auto";
    std::string corpus_a;
    std::string corpus_b;
    std::size_t max_distance = 0;
    bool normalize = false;
    std::string out = "text";
    bool no_timestamp = false;
};

struct CompletenessArgs {
    std::string path;
    std::string format = "auto";
    std::string vocab;
    std::string out = "text";
    bool no_timestamp = false;
};

struct SurveyArgs {
    std::string path;
    std::string out = "text";
    bool no_timestamp = false;
};

// A detector that needs an acyclic hierarchy reports itself as skipped.
template <typename F>
std::vector<LintFinding> unless_cyclic(const char* check, F&& detect) {
    try {
        return detect();
    } catch (const CycleError& e) {
        return {LintFinding{check, Severity::Info, e.cycle(), {},
                            std::string(check) + " check not run: " + e.what(), std::nullopt}};
    }
}

void finish(AnalysisReport& report, bool no_timestamp) {
    sort_report_findings(report.findings);
    if (!no_timestamp) report.timestamp = utc_timestamp();
}

int analyze(const AnalyzeArgs& args, std::ostream& out) {
    auto loaded = load_kos(args.path, args.format);
    const Kos& kos = loaded.value;

    std::optional<IndexedCorpus> corpus;
    std::vector<LintFinding> findings = std::move(loaded.findings);
    if (!args.corpus.empty()) {
        auto c = parsing(args.corpus, [&](const std::string& t) { return parse_corpus(t, kos); });
        corpus = std::move(c.value);
        findings.insert(findings.end(), c.findings.begin(), c.findings.end());
    }
    const auto pairs = args.tennis_pairs.empty()
                           ? suggest_related_pairs(kos)
                           : parsing(args.tennis_pairs, [](const std::string& t) {
                                 return parse_related_pairs(t);
                             });
    const ViewOptions view{args.include_meronymy, args.include_instances};
    StructureOptions structure_options;
    structure_options.view = view;

    auto run = [](auto&& f) { return std::async(std::launch::async, std::forward<decltype(f)>(f)); };
    auto structural = run([&] {
        auto f = validate_graph(kos);
        auto k = validate_kind(kos);
        f.insert(f.end(), k.begin(), k.end());
        return f;
    });
    auto circularity = run([&] { return detect_circularity(kos, view); });
    auto skipping = run([&] {
        return unless_cyclic("skipping", [&] { return detect_skipping(kos, view); });
    });
    auto redundancy = run([&] { return detect_redundancy(kos); });
    auto inconsistency = run([&] {
        return unless_cyclic("semantic_inconsistency",
                             [&] { return detect_semantic_inconsistency(kos); });
    });
    auto tennis = run([&] { return detect_tennis(kos, pairs, args.max_distance); });
    auto structure = run([&] {
        return structure_report(kos, structure_options, corpus ? &*corpus : nullptr);
    });

    for (auto* fut : {&structural, &circularity, &skipping, &redundancy, &inconsistency, &tennis}) {
        auto part = fut->get();
        findings.insert(findings.end(), part.begin(), part.end());
    }

    AnalysisReport report;
    report.command = "analyze";
    report.kos_name = kos.name();
    report.structure = structure.get();
    report.findings = std::move(findings);
    if (args.strict) promote_warnings(report.findings);
    finish(report, args.no_timestamp);
    out << render(report, *parse_output_format(args.out));
    return exit_code_for(report.findings);
}

int compare(const CompareArgs& args, std::ostream& out) {
    if (args.corpus_a.empty() != args.corpus_b.empty())
        throw InputFailure("--corpus-a and --corpus-b must be given together");
    const auto a = load_kos(args.a, args.format);
    const auto b = load_kos(args.b, args.format);

    AnalysisReport report;
    report.command = "compare";
    report.kos_name = a.value.name() + " vs " + b.value.name();
    report.findings = a.findings;
    report.findings.insert(report.findings.end(), b.findings.begin(), b.findings.end());

    const auto match = match_vocabularies(a.value, b.value, args.max_distance, args.normalize);
    OverlapReport overlap;
    overlap.matched_pairs = match.matched_pairs;
    overlap.vocab_jaccard = match.vocab_jaccard;
    if (!args.corpus_a.empty()) {
        auto ca = parsing(args.corpus_a,
                          [&](const std::string& t) { return parse_corpus(t, a.value); });
        auto cb = parsing(args.corpus_b,
                          [&](const std::string& t) { return parse_corpus(t, b.value); });
        report.findings.insert(report.findings.end(), ca.findings.begin(), ca.findings.end());
        report.findings.insert(report.findings.end(), cb.findings.begin(), cb.findings.end());
        auto poly = polyrep_cosine(ca.value, cb.value, label_identity(a.value),
                                   label_identity(b.value));
        overlap.per_doc = std::move(poly.per_doc);
        overlap.mean_cosine = poly.mean_cosine;
        overlap.docs_compared = poly.docs_compared;
        overlap.notes = std::move(poly.notes);
    } else {
        overlap.notes.push_back("no corpora given; vocabulary comparison only");
    }
    if (!args.normalize)
        overlap.notes.push_back("labels compared verbatim (raw edit distance); use --normalize to "
                                "ignore case and '_'/'-'/space separators");
    report.overlap = std::move(overlap);
    finish(report, args.no_timestamp);
    out << render(report, *parse_output_format(args.out));
    return kClean;
}

int completeness(const CompletenessArgs& args, std::ostream& out) {
    const auto kos = load_kos(args.path, args.format);
    const auto vocab = parsing(args.vocab, [](const std::string& t) { return parse_vocab_list(t); });
    if (vocab.empty()) throw InputFailure(args.vocab + ": vocabulary list has no terms");
    CoverageReport c;
    c.coverage = corpus_coverage(kos.value, vocab);
    const auto missing = c.coverage.missing_terms.size();
    c.completeness = completeness_ratio(vocab.size() - missing, missing);

    AnalysisReport report;
    report.command = "completeness";
    report.kos_name = kos.value.name();
    report.findings = kos.findings;
    report.completeness = std::move(c);
    finish(report, args.no_timestamp);
    out << render(report, *parse_output_format(args.out));
    return kClean;
}

int survey(const SurveyArgs& args, std::ostream& out) {
    const auto data = parsing(args.path, [](const std::string& t) { return parse_survey(t); });
    if (data.responses.empty()) throw InputFailure(args.path + ": no survey responses");
    AnalysisReport report;
    report.command = "survey";
    report.kos_name = std::filesystem::path(args.path).stem().string();
    report.survey = aggregate(data.responses);
    finish(report, args.no_timestamp);
    out << render(report, *parse_output_format(args.out));
    return kClean;
}

const std::vector<std::string> kOutputs{"json", "markdown", "md", "text"};
const std::vector<std::string> kFormats{"auto", "native", "skos"};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"kosq: structure measures and quality checks for knowledge organization systems",
                 "kosq"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "Structure measures and lint checks");
    analyze_cmd->add_option("kos", an.path, "KOS file")->required();
    analyze_cmd->add_option("--format", an.format, "Input format (auto: .ttl/.skos = skos)")
        ->check(CLI::IsMember(kFormats))
        ->capture_default_str();
    analyze_cmd->add_flag("--include-meronymy", an.include_meronymy,
                          "Count part-of edges as hierarchy");
    analyze_cmd->add_flag("--include-instances", an.include_instances,
                          "Count instance-of edges as hierarchy");
    analyze_cmd->add_option("--tennis-pairs", an.tennis_pairs,
                            "Related pairs file (default: shared-token suggestions)");
    analyze_cmd->add_option("--max-distance", an.max_distance,
                            "Longest path still counted as linked for related pairs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    analyze_cmd->add_option("--corpus", an.corpus, "Indexed corpus for documents per concept");
    analyze_cmd->add_option("--out", an.out, "Report format")
        ->check(CLI::IsMember(kOutputs))
        ->capture_default_str();
    analyze_cmd->add_flag("--strict", an.strict, "Treat warnings as errors");
    analyze_cmd->add_flag("--no-timestamp", an.no_timestamp, "Omit the report timestamp");

    CompareArgs cmp;
    auto* compare_cmd = app.add_subcommand("compare", "Vocabulary and polyrepresentation overlap");
    compare_cmd->add_option("a", cmp.a, "First KOS file")->required();
    compare_cmd->add_option("b", cmp.b, "Second KOS file")->required();
    compare_cmd->add_option("--format", cmp.format, "Input format")
        ->check(CLI::IsMember(kFormats))
        ->capture_default_str();
    compare_cmd->add_option("--corpus-a", cmp.corpus_a, "Corpus indexed with the first KOS");
    compare_cmd->add_option("--corpus-b", cmp.corpus_b, "Corpus indexed with the second KOS");
    compare_cmd->add_option("--max-distance", cmp.max_distance,
                            "Largest edit distance accepted as a label match")
        ->capture_default_str();
    compare_cmd->add_flag("--normalize", cmp.normalize,
                          "Ignore case and '_'/'-'/space separators when matching");
    compare_cmd->add_option("--out", cmp.out, "Report format")
        ->check(CLI::IsMember(kOutputs))
        ->capture_default_str();
    compare_cmd->add_flag("--no-timestamp", cmp.no_timestamp, "Omit the report timestamp");

    CompletenessArgs cpl;
    auto* completeness_cmd =
        app.add_subcommand("completeness", "Coverage of a corpus vocabulary by the KOS");
    completeness_cmd->add_option("kos", cpl.path, "KOS file")->required();
    completeness_cmd->add_option("--vocab", cpl.vocab, "Corpus term list")->required();
    completeness_cmd->add_option("--format", cpl.format, "Input format")
        ->check(CLI::IsMember(kFormats))
        ->capture_default_str();
    completeness_cmd->add_option("--out", cpl.out, "Report format")
        ->check(CLI::IsMember(kOutputs))
        ->capture_default_str();
    completeness_cmd->add_flag("--no-timestamp", cpl.no_timestamp, "Omit the report timestamp");

    SurveyArgs sv;
    auto* survey_cmd = app.add_subcommand("survey", "SERVQUAL difference scores");
    survey_cmd->add_option("responses", sv.path, "Survey response CSV")->required();
    survey_cmd->add_option("--out", sv.out, "Report format")
        ->check(CLI::IsMember(kOutputs))
        ->capture_default_str();
    survey_cmd->add_flag("--no-timestamp", sv.no_timestamp, "Omit the report timestamp");

    std::vector<const char*> argv{"kosq"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kClean : kInputError;
    }

    try {
        if (*analyze_cmd) return analyze(an, out);
        if (*compare_cmd) return compare(cmp, out);
        if (*completeness_cmd) return completeness(cpl, out);
        if (*survey_cmd) return survey(sv, out);
    } catch (const InputFailure& e) {
        err << "kosq: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "kosq: error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace kosq::cli

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kifsim/kif.hpp"
#include "kifsim/lexicon.hpp"
#include "kifsim/ontology.hpp"
#include "kifsim/probes.hpp"
#include "kifsim/rules.hpp"
#include "kifsim/scenarios.hpp"

namespace {

using namespace kifsim;

constexpr int kExitClean = 0;
constexpr int kExitViolations = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void report_at(const std::string& file, const kif::SourceSpan& span, const std::string& message) {
    std::cerr << file << ":" << span.line << ":" << span.column << ": " << message << "\n";
}

int cmd_parse(const std::string& file) {
    std::vector<kif::Term> forms;
    try {
        forms = kif::parse(read_file(file));
    } catch (const kif::ParseError& e) {
        report_at(file, e.span(), e.what());
        return kExitError;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    }
    for (const kif::Term& form : forms) {
        std::cout << kif::print_term(form) << "\n";
    }
    return kExitClean;
}

int load_ontology_files(KnowledgeBase& kb, const std::vector<std::string>& files) {
    for (const std::string& file : files) {
        try {
            kb.load_axioms(kif::parse(read_file(file)));
        } catch (const kif::ParseError& e) {
            report_at(file, e.span(), e.what());
            return kExitError;
        } catch (const LoadError& e) {
            report_at(file, e.span(), e.what());
            return kExitError;
        } catch (const Error& e) {
            std::cerr << e.what() << "\n";
            return kExitError;
        }
    }
    return kExitClean;
}

int cmd_validate(const std::vector<std::string>& files) {
    KnowledgeBase kb;
    if (int code = load_ontology_files(kb, files); code != kExitClean) return code;
    for (const std::string& warning : kb.warnings()) {
        std::cerr << "warning: " << warning << "\n";
    }

    FactStore store;
    for (const kif::Term& fact : kb.ground_facts()) store.add(fact, Provenance::Explicit);
    rules::SkolemRegistry skolems;
    rules::ClosureResult closure;
    try {
        closure = rules::infer_closure(store, kb, skolems, {});
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    }

    std::vector<Probe> probes;
    for (const auto& [cls, partition] : kb.partitions()) {
        probes.push_back(Probe::partition_exclusivity(cls));
    }
    probes.push_back(Probe::domain_conformance());
    std::vector<ConflictReport> conflicts = detect_conflicts(probes, closure.store, kb, 0);
    for (const ConflictReport& c : conflicts) {
        std::cout << "conflict probe=" << to_string(c.probe) << " " << c.message << "\n";
    }
    std::cout << "classes=" << kb.classes().size() << " rules=" << kb.rules().size()
              << " facts=" << kb.ground_facts().size() << " conflicts=" << conflicts.size()
              << "\n";
    return conflicts.empty() ? kExitClean : kExitViolations;
}

struct RunFlags {
    std::string traceFile;
    std::string policy = "always";
    std::uint64_t seed = 0;
    int maxSteps = 10000;
    std::string dataDir = "data";
};

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
    cmd->add_option("--trace", flags.traceFile, "write the trace here instead of stdout");
    cmd->add_option("--policy", flags.policy, "revalidation policy")
        ->check(CLI::IsMember({"always", "skip"}));
    cmd->add_option("--seed", flags.seed, "scheduler seed");
    cmd->add_option("--max-steps", flags.maxSteps, "abort after this many attempts");
    cmd->add_option("--data-dir", flags.dataDir, "ontology directory");
}

int emit_run_result(const scenarios::RunResult& result, const RunFlags& flags) {
    for (const ConflictReport& c : result.conflicts) {
        std::cerr << "conflict probe=" << to_string(c.probe) << " tick=" << c.tick << " "
                  << c.message << "\n";
    }
    std::vector<std::string> lines = result.trace.to_lines();
    if (flags.traceFile.empty()) {
        for (const std::string& line : lines) std::cout << line << "\n";
    } else {
        std::ofstream out(flags.traceFile);
        if (!out) {
            std::cerr << "cannot write " << flags.traceFile << "\n";
            return kExitError;
        }
        for (const std::string& line : lines) out << line << "\n";
    }
    std::cout << result.summary << "\n";
    return result.reason == scenarios::HaltReason::ConflictDetected ? kExitViolations
                                                                    : kExitClean;
}

scenarios::RunOptions options_from(const RunFlags& flags) {
    scenarios::RunOptions options;
    options.seed = flags.seed;
    options.maxSteps = flags.maxSteps;
    options.policy = flags.policy == "skip" ? ValidationPolicy::SkipWhenUnchanged
                                            : ValidationPolicy::Always;
    return options;
}

int cmd_run_ignition(const RunFlags& flags, int toggles, bool sabotage) {
    KnowledgeBase kb;
    if (int code = load_ontology_files(kb, {flags.dataDir + "/structural.kif",
                                            flags.dataDir + "/engine.kif"});
        code != kExitClean) {
        return code;
    }
    try {
        scenarios::RunResult result =
            scenarios::run_ignition(kb, toggles, sabotage, options_from(flags));
        return emit_run_result(result, flags);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    }
}

int cmd_run_engine(const RunFlags& flags, int fuel, std::optional<int> switchOffAt) {
    KnowledgeBase kb;
    if (int code = load_ontology_files(kb, {flags.dataDir + "/structural.kif",
                                            flags.dataDir + "/engine.kif"});
        code != kExitClean) {
        return code;
    }
    try {
        scenarios::RunResult result =
            scenarios::run_engine(kb, fuel, switchOffAt, options_from(flags));
        return emit_run_result(result, flags);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    }
}

int cmd_lex(const std::string& file, const std::vector<std::string>& ontologyFiles,
            bool emitRules) {
    KnowledgeBase kb;
    if (int code = load_ontology_files(kb, ontologyFiles); code != kExitClean) return code;
    lex::Lexicon lexicon;
    try {
        lexicon.load_axioms(kif::parse(read_file(file)));
    } catch (const kif::ParseError& e) {
        report_at(file, e.span(), e.what());
        return kExitError;
    } catch (const LoadError& e) {
        report_at(file, e.span(), e.what());
        return kExitError;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    }

    std::vector<std::string> problems;
    for (const auto& [headword, entry] : lexicon.entries()) {
        for (std::string& p : lex::validate_entry(entry, kb, lexicon)) {
            problems.push_back(std::move(p));
        }
    }
    if (!problems.empty()) {
        for (const std::string& p : problems) std::cout << "problem " << p << "\n";
        return kExitViolations;
    }
    if (emitRules) {
        for (const auto& [headword, entry] : lexicon.entries()) {
            if (!entry.formal) {
                std::cerr << headword.str() << " has no formal quale; no rule emitted\n";
                continue;
            }
            std::cout << kif::print_term(rules::rule_to_term(lex::entry_to_rule(entry))) << "\n";
        }
        return kExitClean;
    }
    for (const auto& [headword, entry] : lexicon.entries()) {
        std::cout << "lexentry " << headword.str() << " event=" << lex::to_string(entry.eventSort)
                  << " ok\n";
    }
    std::cout << "entries=" << lexicon.entries().size()
              << " partonomies=" << lexicon.partonomies().size() << "\n";
    return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SUO-KIF ontology loader and microworld simulator"};
    app.require_subcommand(1);

    std::string parseFile;
    CLI::App* parseCmd = app.add_subcommand("parse", "parse a KIF file and reprint it");
    parseCmd->add_option("file", parseFile, "KIF file")->required();

    std::vector<std::string> validateFiles;
    CLI::App* validateCmd =
        app.add_subcommand("validate", "load KIF files and check their facts");
    validateCmd->add_option("files", validateFiles, "KIF files")->required();

    CLI::App* runCmd = app.add_subcommand("run", "run a scenario");
    runCmd->require_subcommand(1);

    RunFlags ignitionFlags;
    int toggles = 4;
    bool sabotage = false;
    CLI::App* ignitionCmd = runCmd->add_subcommand("ignition", "switch an engine on and off");
    ignitionCmd->add_option("--toggles", toggles, "number of switch toggles");
    ignitionCmd->add_flag("--sabotage", sabotage,
                          "force a second engine state after the toggles");
    add_run_flags(ignitionCmd, ignitionFlags);

    RunFlags engineFlags;
    int fuel = 0;
    int switchOffAt = -1;
    CLI::App* engineCmd = runCmd->add_subcommand("engine", "run the four-stroke cycle");
    engineCmd->add_option("--fuel", fuel, "units of fuel, one per cycle")->required();
    engineCmd->add_option("--switch-off-at", switchOffAt,
                          "turn the switch off once the trace reaches this step");
    add_run_flags(engineCmd, engineFlags);

    std::string lexFile;
    std::vector<std::string> ontologyFiles;
    bool emitRules = false;
    CLI::App* lexCmd = app.add_subcommand("lex", "check a lexicon against an ontology");
    lexCmd->add_option("file", lexFile, "lexicon file")->required();
    lexCmd->add_option("--ontology", ontologyFiles, "ontology KIF files")->required();
    lexCmd->add_flag("--emit-rules", emitRules, "print the rules compiled from the entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    if (parseCmd->parsed()) return cmd_parse(parseFile);
    if (validateCmd->parsed()) return cmd_validate(validateFiles);
    if (ignitionCmd->parsed()) return cmd_run_ignition(ignitionFlags, toggles, sabotage);
    if (engineCmd->parsed()) {
        std::optional<int> offAt;
        if (switchOffAt >= 0) offAt = switchOffAt;
        return cmd_run_engine(engineFlags, fuel, offAt);
    }
    if (lexCmd->parsed()) return cmd_lex(lexFile, ontologyFiles, emitRules);
    return kExitError;
}

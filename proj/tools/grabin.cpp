// grabin: command-line front end for generalized Rabin(1) synthesis.
//
// Exit codes: 0 realizable / pass, 1 unrealizable / violation / mismatch, 2 any error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "grabin/hoa.hpp"
#include "grabin/synthesis.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kError = 2;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw grabin::Error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw grabin::Error("cannot write '" + path + "'");
}

nlohmann::ordered_json lasso_json(const grabin::Lasso& lasso, const grabin::ApTable& aps)
{
    auto letters = [&](const std::vector<grabin::Letter>& word) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (auto l : word) {
            auto names = aps.letter_names(l);
            std::sort(names.begin(), names.end());
            out.push_back(names);
        }
        return out;
    };
    return {{"stem", letters(lasso.stem)}, {"loop", letters(lasso.loop)}};
}

nlohmann::ordered_json stats_json(const grabin::SynthesisStats& stats)
{
    return {{"product_states", stats.product_states},
            {"raw_bound", stats.raw_bound},
            {"game_vertices", stats.game_vertices},
            {"colours_used", stats.colours_used},
            {"solve_seconds", stats.solve_seconds}};
}

struct Options {
    std::string spec;
    std::string machine;
    std::string out;
    std::string dot;
    std::string counterstrategy;
    unsigned max_stem = 2;
    unsigned max_loop = 3;
    unsigned max_aps = 3;
    bool json = false;
};

int run_synth(const Options& opt, bool write_artifacts)
{
    const auto spec = grabin::normalize_spec(grabin::load_spec_file(opt.spec));
    const auto outcome = grabin::synthesize(spec);
    const bool realizable = outcome.realizable();
    if (write_artifacts && realizable) {
        if (!opt.out.empty())
            write_file(opt.out, grabin::emit_machine_json(outcome.machine()));
        if (!opt.dot.empty())
            write_file(opt.dot, grabin::emit_machine_dot(outcome.machine()));
    }
    if (write_artifacts && !realizable && !opt.counterstrategy.empty())
        write_file(opt.counterstrategy,
                   grabin::emit_counterstrategy_json(outcome.unrealizable(), grabin::ApTable(spec.inputs())));

    if (opt.json) {
        nlohmann::ordered_json doc;
        doc["realizable"] = realizable;
        doc["stats"] = stats_json(outcome.stats);
        if (realizable && write_artifacts)
            doc["machine"] = nlohmann::ordered_json::parse(grabin::emit_machine_json(outcome.machine()));
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cerr << (realizable ? "realizable" : "unrealizable") << " (product states "
                  << outcome.stats.product_states << ", game vertices " << outcome.stats.game_vertices;
        if (realizable)
            std::cerr << ", machine states " << outcome.machine().num_states();
        std::cerr << ")\n";
    }
    return realizable ? kPass : kFail;
}

int run_product(const Options& opt)
{
    const auto spec = grabin::normalize_spec(grabin::load_spec_file(opt.spec));
    const auto pa = grabin::build_product(spec);
    const auto text = grabin::emit_hoa(pa.to_automaton(), spec.aps(), "product");
    if (opt.out.empty())
        std::cout << text;
    else
        write_file(opt.out, text);
    std::cerr << "product: " << pa.num_states() << " states (bound " << pa.raw_bound() << ")\n";
    return kPass;
}

int run_verify(const Options& opt)
{
    const auto spec = grabin::normalize_spec(grabin::load_spec_file(opt.spec));
    const auto machine = grabin::parse_machine_json(read_file(opt.machine));
    const auto pa = grabin::build_product(spec);
    const auto violation = grabin::verify_mealy(machine, spec, pa);
    if (opt.json) {
        nlohmann::ordered_json doc;
        doc["ok"] = !violation;
        if (violation)
            doc["violation"] = lasso_json(violation->lasso, spec.aps());
        std::cout << doc.dump(2) << "\n";
    }
    if (violation) {
        std::cerr << "violation\n" << violation->describe(spec.aps()) << "\n";
        return kFail;
    }
    std::cerr << "ok\n";
    return kPass;
}

int run_oracle_test(const Options& opt)
{
    const auto spec = grabin::normalize_spec(grabin::load_spec_file(opt.spec));
    const auto report = grabin::differential_test(spec, opt.max_stem, opt.max_loop, opt.max_aps);
    if (opt.json) {
        nlohmann::ordered_json doc;
        doc["checked"] = report.checked;
        doc["mismatches"] = report.mismatches;
        if (report.first_mismatch)
            doc["first_mismatch"] = lasso_json(*report.first_mismatch, spec.aps());
        std::cout << doc.dump(2) << "\n";
    }
    std::cerr << "checked " << report.checked << " lassos, " << report.mismatches << " mismatches\n";
    if (report.first_mismatch)
        std::cerr << grabin::Violation{*report.first_mismatch}.describe(spec.aps()) << "\n";
    return report.mismatches == 0 ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Assumption/guarantee synthesis for Rabin-index-1 conjuncts"};
    app.require_subcommand(1);
    Options opt;

    auto* synth = app.add_subcommand("synth", "synthesize a Mealy machine");
    synth->add_option("spec", opt.spec, "specification JSON")->required();
    synth->add_option("--out", opt.out, "write the machine as JSON");
    synth->add_option("--dot", opt.dot, "write the machine as DOT");
    synth->add_option("--counterstrategy", opt.counterstrategy, "write the Environment strategy when unrealizable");
    synth->add_flag("--json", opt.json, "print a JSON summary on stdout");

    auto* check = app.add_subcommand("check", "decide realizability only");
    check->add_option("spec", opt.spec, "specification JSON")->required();
    check->add_flag("--json", opt.json, "print a JSON summary on stdout");

    auto* product = app.add_subcommand("product", "emit the parity automaton as HOA");
    product->add_option("spec", opt.spec, "specification JSON")->required();
    product->add_option("--out", opt.out, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "check a machine against a specification");
    verify->add_option("spec", opt.spec, "specification JSON")->required();
    verify->add_option("machine", opt.machine, "machine JSON")->required();
    verify->add_flag("--json", opt.json, "print a JSON result on stdout");

    auto* oracle = app.add_subcommand("oracle-test", "compare the product with the direct lasso semantics");
    oracle->add_option("spec", opt.spec, "specification JSON")->required();
    oracle->add_option("--max-stem", opt.max_stem, "longest stem")->capture_default_str();
    oracle->add_option("--max-loop", opt.max_loop, "longest loop")->capture_default_str()->check(
        CLI::PositiveNumber);
    oracle->add_option("--max-aps", opt.max_aps, "refuse specs with more propositions")->capture_default_str();
    oracle->add_flag("--json", opt.json, "print a JSON report on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        if (*synth)
            return run_synth(opt, true);
        if (*check)
            return run_synth(opt, false);
        if (*product)
            return run_product(opt);
        if (*verify)
            return run_verify(opt);
        if (*oracle)
            return run_oracle_test(opt);
    } catch (const grabin::CertificationFailure& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}

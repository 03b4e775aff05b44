// Command-line front end: cohom | tower | survey | verify41 | weights.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fpcoh/errors.hpp"
#include "fpcoh/survey.hpp"

using namespace fpcoh;

namespace {

std::vector<survey::CorpusEntry> load_optional(const std::string& path)
{
    if (path.empty() || !std::filesystem::exists(path)) return {};
    return survey::load_corpus(path);
}

void write_or_print(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("cannot write " + path);
    out << text;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mod-p cohomology of presented groups along congruence towers"};
    app.require_subcommand(1);
    app.fallthrough();
    survey::RunOptions opt;
    std::uint64_t seed = 0;
    app.add_option("--cache-dir", opt.cache_dir, "flat-file result cache directory");
    app.add_option("--max-dim", opt.max_dim, "resource cap on module dimension")->capture_default_str();
    app.add_option("--jobs", opt.jobs, "worker threads for the survey")->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized property checks; results do not depend on it");

    std::string corpus_path = std::string(FPCOH_CORPUS_DIR) + "/corpus.json";
    std::string entry_label;

    auto* cohom = app.add_subcommand("cohom", "H^1 of a congruence subgroup via the induction formula");
    survey::CohomRequest creq;
    int cd = -1;
    cohom->add_option("--corpus", corpus_path)->capture_default_str();
    cohom->add_option("--entry", entry_label, "corpus label or built-in (Z2, F2)")->required();
    cohom->add_option("--p", creq.p)->required();
    cohom->add_option("--k", creq.k)->capture_default_str();
    cohom->add_option("--subgroup", creq.subgroup, "principal:j | borel0:j | H:k | P:k,l | full")->capture_default_str();
    cohom->add_option("--d", cd, "tensor with Sym^d");
    cohom->add_option("--root", creq.root_index, "which degree-1 prime over p")->capture_default_str();

    auto* tower = app.add_subcommand("tower", "dimensions along a congruence tower with the criteria");
    survey::TowerRequest treq;
    int saving_d = 0;
    tower->add_option("--corpus", corpus_path)->capture_default_str();
    tower->add_option("--entry", entry_label)->required();
    tower->add_option("--p", treq.p)->required();
    tower->add_option("--k-max", treq.k_max)->capture_default_str();
    tower->add_option("--family", treq.family, "principal | borel0 | H")->capture_default_str();
    tower->add_option("--root", treq.root_index)->capture_default_str();
    tower->add_option("--saving-dim", saving_d, "report the power-saving check with this dimension");

    auto* surv = app.add_subcommand("survey", "per-entry prime sweep; CSV table plus JSON detail");
    survey::SurveyRequest sreq;
    std::string csv_out, json_out;
    surv->add_option("--corpus", corpus_path)->capture_default_str();
    surv->add_option("--p-min", sreq.p_min)->capture_default_str();
    surv->add_option("--p-max", sreq.p_max)->capture_default_str();
    surv->add_option("--csv", csv_out, "CSV output path (default stdout)");
    surv->add_option("--json", json_out, "JSON output path");

    auto* v41 = app.add_subcommand("verify41", "lowest-degree coverage for SL(2, O_-2) style entries at p = 3");
    int n41 = 4;
    v41->add_option("--corpus", corpus_path)->capture_default_str();
    v41->add_option("--entry", entry_label)->required();
    v41->add_option("--n", n41)->capture_default_str();

    auto* wts = app.add_subcommand("weights", "representation-theoretic checks");
    survey::WeightsRequest wreq;
    wts->add_option("--kind", wreq.kind, "bn | profile | lattice | delta")->capture_default_str();
    wts->add_option("--p", wreq.p)->capture_default_str();
    wts->add_option("--d", wreq.d)->capture_default_str();
    wts->add_option("--k", wreq.k)->capture_default_str();
    wts->add_option("--m", wreq.m)->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    (void)seed;

    try {
        if (*cohom) {
            if (cd >= 0) creq.d = cd;
            auto e = survey::resolve_entry(load_optional(corpus_path), entry_label);
            std::cout << survey::cmd_cohom(e, creq, opt);
        } else if (*tower) {
            if (saving_d > 0) treq.saving_d = saving_d;
            auto e = survey::resolve_entry(load_optional(corpus_path), entry_label);
            auto out = survey::cmd_tower(e, treq, opt);
            std::cout << out.json;
            if (out.truncated) return 2;
        } else if (*surv) {
            auto res = survey::cmd_survey(survey::load_corpus(corpus_path), sreq, opt);
            write_or_print(csv_out, res.csv);
            if (!json_out.empty()) write_or_print(json_out, res.json);
        } else if (*v41) {
            auto e = survey::resolve_entry(load_optional(corpus_path), entry_label);
            std::cout << survey::cmd_verify41(e, n41, opt);
        } else if (*wts) {
            std::cout << survey::cmd_weights(wreq);
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

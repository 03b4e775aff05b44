#include "fpcoh/survey.hpp"

#include <atomic>
#include <thread>

#include "fpcoh/algebra_trunc.hpp"
#include "fpcoh/cohomology.hpp"
#include "fpcoh/errors.hpp"
#include "fpcoh/reports.hpp"
#include "fpcoh/rep_weights.hpp"
#include "fpcoh/towers.hpp"

namespace fpcoh::survey {

using reports::tagged;

namespace {

std::uint64_t pick_root(const CorpusEntry& e, std::uint32_t p, std::size_t idx)
{
    auto roots = degree_one_roots(e, p);
    if (idx >= roots.size())
        throw ValidationError("entry " + e.label + " has " + std::to_string(roots.size()) +
                              " degree-1 primes over " + std::to_string(p) + "; index " + std::to_string(idx) + " requested");
    return roots[idx];
}

template <class F>
std::string cached(const RunOptions& opt, const json& request, F compute)
{
    ResultCache cache(opt.cache_dir);
    std::string key = ResultCache::key(request.dump());
    if (auto hit = cache.get(key)) return *hit;
    std::string out = compute();
    cache.put(key, out);
    return out;
}

cohomology::Options cohom_options(const RunOptions& opt)
{
    cohomology::Options o;
    o.max_dim = opt.max_dim;
    return o;
}

// Runs f(i) for i < n on a bounded pool; results land in index order.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F f)
{
    jobs = std::max(1u, jobs);
    if (jobs == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        });
    for (auto& th : pool) th.join();
}

PrimeRecord survey_job(const CorpusEntry& e, std::uint32_t p, std::uint64_t root, const SurveyRequest& req,
                       const RunOptions& opt)
{
    PrimeRecord r;
    r.p = p;
    r.root = root;
    auto hom = entry_map(e, p, root, 1);
    require_valid(e, hom);
    auto co = cohom_options(opt);
    auto order = congruence::generated_order(hom, opt.max_dim);
    r.surjective = order && *order == congruence::sl2_order(p, 1);
    std::map<int, std::size_t> measured;
    for (int d = 0; d < static_cast<int>(p); ++d) {
        auto mod = congruence::sym_module(p, d, hom);
        r.measured.push_back(cohomology::cohomology_dims(e.presentation, mod, co).h1);
        measured[d] = r.measured.back();
    }
    if (p >= 5) r.predicted = weights::predict_gamma_p_h1(p, measured).predicted;
    std::optional<std::size_t> h1;
    if (congruence::sl2_order(p, 1) <= req.direct_index_limit) {
        r.h1_direct = cohomology::h1_of_subgroup(e.presentation, hom, congruence::SubgroupSpec::principal(1), co).h1;
        h1 = r.h1_direct;
        r.h1_provenance = reports::to_string(reports::Provenance::Computed);
    } else if (r.predicted) {
        h1 = r.predicted;
        r.h1_provenance = reports::to_string(reports::Provenance::AssumptionFlagged);
    }
    if (!r.surjective) r.analytic = towers::to_string(towers::Verdict::NotApplicable);
    else if (h1) r.analytic = towers::to_string(towers::check_analytic(p, *h1, e.congruence).verdict);
    else r.analytic = "unknown";
    return r;
}

json record_json(const PrimeRecord& r)
{
    json j{{"p", r.p}, {"root", r.root}, {"surjective", r.surjective}, {"analytic", r.analytic}};
    if (!r.error.empty()) {
        j["error"] = r.error;
        return j;
    }
    json meas = json::array();
    for (auto v : r.measured) meas.push_back(tagged(v));
    j["h1_sym"] = meas;
    j["predicted_h1"] = r.predicted ? tagged(*r.predicted, reports::Provenance::AssumptionFlagged) : json(nullptr);
    j["h1_principal"] = r.h1_direct ? tagged(*r.h1_direct) : json(nullptr);
    if (!r.h1_provenance.empty()) j["h1_used_provenance"] = r.h1_provenance;
    return j;
}

PrimeRecord record_from_json(const json& j)
{
    PrimeRecord r;
    r.p = j.at("p").get<std::uint32_t>();
    r.root = j.at("root").get<std::uint64_t>();
    r.surjective = j.at("surjective").get<bool>();
    r.analytic = j.at("analytic").get<std::string>();
    if (j.contains("error")) {
        r.error = j.at("error").get<std::string>();
        return r;
    }
    for (const auto& v : j.at("h1_sym")) r.measured.push_back(v.at("value").get<std::size_t>());
    if (!j.at("predicted_h1").is_null()) r.predicted = j.at("predicted_h1").at("value").get<std::size_t>();
    if (!j.at("h1_principal").is_null()) r.h1_direct = j.at("h1_principal").at("value").get<std::size_t>();
    if (j.contains("h1_used_provenance")) r.h1_provenance = j.at("h1_used_provenance").get<std::string>();
    return r;
}

} // namespace

std::string cmd_cohom(const CorpusEntry& e, const CohomRequest& req, const RunOptions& opt)
{
    json request{{"cmd", "cohom"}, {"entry", e.source},          {"p", req.p},
                 {"k", req.k},     {"subgroup", req.subgroup}, {"root_index", req.root_index},
                 {"d", req.d ? json(*req.d) : json(nullptr)}, {"max_dim", opt.max_dim}};
    return cached(opt, request, [&] {
        auto root = pick_root(e, req.p, req.root_index);
        auto hom = entry_map(e, req.p, root, req.k);
        require_valid(e, hom);
        auto sub = congruence::SubgroupSpec::parse(req.subgroup);
        sub.validate(req.k);
        auto mod = congruence::coset_module(hom, sub, opt.max_dim);
        if (req.d) mod = congruence::tensor_module(mod, congruence::sym_module(req.p, *req.d, hom.reduce_to(1)));
        auto dims = cohomology::cohomology_dims(e.presentation, mod, cohom_options(opt));
        json out{{"entry", e.label},
                 {"p", req.p},
                 {"k", req.k},
                 {"root", root},
                 {"subgroup", sub.to_string()},
                 {"module_dim", tagged(mod.dim)},
                 {"dims", reports::cohomology_json(dims)}};
        if (req.d) out["d"] = *req.d;
        return reports::dump(out);
    });
}

TowerOutcome cmd_tower(const CorpusEntry& e, const TowerRequest& req, const RunOptions& opt)
{
    auto root = pick_root(e, req.p, req.root_index);
    towers::SubgroupTemplate kinds;
    if (req.family == "principal") kinds = [](int k) { return congruence::SubgroupSpec::principal(k); };
    else if (req.family == "borel0") kinds = [](int k) { return congruence::SubgroupSpec::borel0(k); };
    else if (req.family == "H") kinds = [](int k) { return congruence::SubgroupSpec::H(k); };
    else throw ValidationError("unknown tower family " + req.family);
    json request{{"cmd", "tower"},         {"entry", e.source},    {"p", req.p},
                 {"k_max", req.k_max},     {"family", req.family}, {"root_index", req.root_index},
                 {"max_dim", opt.max_dim}, {"saving_d", req.saving_d ? json(*req.saving_d) : json(nullptr)}};
    TowerOutcome outcome;
    outcome.json = cached(opt, request, [&] {
        towers::TowerOptions to;
        to.cohom = cohom_options(opt);
        to.congruence = e.congruence;
        auto rep = towers::run_tower(
            e.presentation, [&](int k) { return entry_map(e, req.p, root, k); }, kinds, req.k_max, to);
        json out = reports::tower_json(rep, req.saving_d);
        out["entry"] = e.label;
        out["family"] = req.family;
        out["root"] = root;
        return reports::dump(out);
    });
    outcome.truncated = json::parse(outcome.json).at("truncated").get<bool>();
    return outcome;
}

SurveyOutcome cmd_survey(const std::vector<CorpusEntry>& corpus, const SurveyRequest& req, const RunOptions& opt)
{
    struct Job {
        std::size_t entry;
        std::uint32_t p;
        std::uint64_t root;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::uint32_t p = std::max<std::uint32_t>(req.p_min, 2); p <= req.p_max; ++p) {
            if (!linalg::is_prime(p)) continue;
            for (auto r : degree_one_roots(corpus[i], p)) jobs.push_back({i, p, r});
        }
    std::vector<PrimeRecord> results(jobs.size());
    parallel_for(jobs.size(), opt.jobs, [&](std::size_t i) {
        const auto& jb = jobs[i];
        const auto& e = corpus[jb.entry];
        json request{{"cmd", "survey-job"}, {"entry", e.source}, {"p", jb.p}, {"root", jb.root},
                     {"direct_index_limit", req.direct_index_limit}, {"max_dim", opt.max_dim}};
        try {
            auto text = cached(opt, request, [&] { return record_json(survey_job(e, jb.p, jb.root, req, opt)).dump(); });
            results[i] = record_from_json(json::parse(text));
        } catch (const std::exception& ex) {
            results[i].p = jb.p;
            results[i].root = jb.root;
            results[i].analytic = "unknown";
            results[i].error = ex.what();
        }
    });

    SurveyOutcome out;
    for (const auto& e : corpus) out.rows.push_back({e.label, e.arithmetic, 0, 0, {}});
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto& row = out.rows[jobs[i].entry];
        const auto& r = results[i];
        if (r.error.empty()) ++row.primes_tested;
        if (r.analytic == "holds") ++row.analytic_holds;
        row.details.push_back(r);
    }
    out.csv = reports::csv_record({"label", "arithmetic", "primes_tested", "analytic_holds"});
    json rows = json::array();
    for (const auto& row : out.rows) {
        out.csv += reports::csv_record({row.label, row.arithmetic ? "yes" : "no", std::to_string(row.primes_tested),
                                        std::to_string(row.analytic_holds)});
        json primes = json::array(), details = json::array();
        for (const auto& r : row.details) {
            primes.push_back(r.p);
            details.push_back(record_json(r));
        }
        rows.push_back(json{{"label", row.label},
                            {"arithmetic", row.arithmetic},
                            {"primes_tested", tagged(row.primes_tested)},
                            {"analytic_holds", tagged(row.analytic_holds)},
                            {"primes", primes},
                            {"details", details}});
    }
    out.json = reports::dump(json{{"range", {req.p_min, req.p_max}}, {"rows", rows}});
    return out;
}

std::string cmd_verify41(const CorpusEntry& e, int n, const RunOptions& opt, std::string* status)
{
    const std::uint32_t p = 3;
    json request{{"cmd", "verify41"}, {"entry", e.source}, {"n", n}};
    auto text = cached(opt, request, [&] {
        auto roots = degree_one_roots(e, p);
        if (roots.empty()) throw ValidationError("entry " + e.label + " has no degree-1 prime over 3");
        int m = trunc::minimal_working_level(p, n);
        auto hom_p = entry_map(e, p, roots[0], m);
        require_valid(e, hom_p);
        std::optional<congruence::CongruenceMap> hom_pbar;
        if (roots.size() > 1) {
            hom_pbar = entry_map(e, p, roots[1], 1);
            require_valid(e, *hom_pbar);
        }
        auto rep = trunc::verify_weight_hypothesis(e.presentation, hom_p, hom_pbar, n);
        json out = reports::weight_hypothesis_json(rep);
        out["entry"] = e.label;
        out["roots"] = roots;
        // the verdict is only as good as the presentation it ran on
        out["presentation_source"] = e.provenance.empty() ? json("unsourced (flagged)") : json(e.provenance);
        out["presentation_sourced"] = !e.provenance.empty();
        return reports::dump(out);
    });
    if (status) *status = json::parse(text).at("status").get<std::string>();
    return text;
}

std::string cmd_weights(const WeightsRequest& req)
{
    if (req.kind == "bn") return reports::dump(reports::bn_json(weights::bn_decomposition(req.p)));
    if (req.kind == "profile") return reports::dump(reports::profile_json(req.p, weights::expected_h1_profile(req.p)));
    if (req.kind == "lattice") {
        auto lr = weights::lattice_reduction(req.p, req.d, req.k, req.m);
        return reports::dump(reports::lattice_json(lr.certificate));
    }
    if (req.kind == "delta") return reports::dump(reports::delta_json(reports::delta_constant_check()));
    throw ValidationError("unknown weights kind " + req.kind);
}

} // namespace fpcoh::survey

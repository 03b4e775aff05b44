#pragma once
// Command implementations behind the CLI and the batch survey runner.
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpcoh/cache.hpp"
#include "fpcoh/corpus.hpp"

namespace fpcoh::survey {

struct RunOptions {
    std::size_t max_dim = congruence::kDefaultMaxDim;
    std::string cache_dir;
    unsigned jobs = 1;
};

struct CohomRequest {
    std::uint32_t p = 3;
    int k = 1;
    std::string subgroup = "principal:1"; // parsed by SubgroupSpec::parse
    std::optional<int> d;                 // tensor with Sym^d at the same prime
    std::size_t root_index = 0;
};

// JSON text of the cohomology dimensions.
std::string cmd_cohom(const CorpusEntry& e, const CohomRequest& req, const RunOptions& opt);

struct TowerRequest {
    std::uint32_t p = 3;
    int k_max = 3;
    std::string family = "principal"; // principal | borel0 | H
    std::size_t root_index = 0;
    std::optional<int> saving_d;
};

struct TowerOutcome {
    std::string json;
    bool truncated = false;
};

TowerOutcome cmd_tower(const CorpusEntry& e, const TowerRequest& req, const RunOptions& opt);

struct PrimeRecord {
    std::uint32_t p = 0;
    std::uint64_t root = 0;
    bool surjective = false;
    std::vector<std::size_t> measured; // dim H^1(Gamma, Sym^d), d = 0..p-1
    std::optional<std::size_t> predicted;
    std::optional<std::size_t> h1_direct; // dim H^1(Gamma(P), F_p) when the index is small
    std::string analytic;                 // verdict, or "unknown"
    std::string h1_provenance;            // computed / assumption-flagged
    std::string error;
};

struct SurveyRow {
    std::string label;
    bool arithmetic = false;
    std::size_t primes_tested = 0;
    std::size_t analytic_holds = 0;
    std::vector<PrimeRecord> details;
};

struct SurveyRequest {
    std::uint32_t p_min = 5;
    std::uint32_t p_max = 50;
    std::size_t direct_index_limit = 5000; // compute H^1(Gamma(P)) directly up to this index
};

struct SurveyOutcome {
    std::vector<SurveyRow> rows;
    std::string csv;
    std::string json;
};

// Jobs are (entry, prime, root); failures are recorded per job. Output
// order is corpus order then (p, root), independent of opt.jobs.
SurveyOutcome cmd_survey(const std::vector<CorpusEntry>& corpus, const SurveyRequest& req, const RunOptions& opt);

// p = 3, first prime from root 0, second from root 1 when present.
std::string cmd_verify41(const CorpusEntry& e, int n, const RunOptions& opt, std::string* status = nullptr);

struct WeightsRequest {
    std::string kind = "bn"; // bn | profile | lattice | delta
    std::uint32_t p = 5;
    int d = 0, k = 1, m = 3;
};

std::string cmd_weights(const WeightsRequest& req);

} // namespace fpcoh::survey

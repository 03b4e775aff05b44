#pragma once
// Corpus entries: presentation, ring, generator images and metadata.
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "fpcoh/congruence.hpp"
#include "fpcoh/group_core.hpp"

namespace fpcoh::survey {

using nlohmann::json;

struct CorpusEntry {
    std::string label;
    group::GroupPresentation presentation;
    congruence::RingSpec ring;
    std::vector<congruence::PolyMatrix> images;
    bool arithmetic = false;
    bool congruence = false;
    std::vector<std::uint32_t> ramified; // primes never used
    std::string provenance;
    json source; // the entry as parsed, used for cache keys
};

// {"label", "generators": "atu", "relators": [...], "min_poly": [c0, c1, ...],
//  "images": [[["0","-1"],["1","0"]], ...], "arithmetic", "congruence",
//  "ramified": [...], "provenance"}
CorpusEntry parse_entry(const json& j);
std::vector<CorpusEntry> parse_corpus(const json& j);
std::vector<CorpusEntry> load_corpus(const std::string& path);
json entry_to_json(const CorpusEntry& e);

// "Z2" (commuting unipotents) and "F2" (Sanov subgroup).
CorpusEntry builtin_entry(const std::string& name);
std::vector<std::string> builtin_names();

// Looks up a label in the corpus, then among the built-ins.
CorpusEntry resolve_entry(const std::vector<CorpusEntry>& corpus, const std::string& label);

// Simple roots of min_poly mod p (one per degree-1 prime over p), empty for
// listed ramified primes.
std::vector<std::uint64_t> degree_one_roots(const CorpusEntry& e, std::uint32_t p);

congruence::CongruenceMap entry_map(const CorpusEntry& e, std::uint32_t p, std::uint64_t root, int k);

// Validates relators at (p, root, k); throws ValidationError naming the relator.
void require_valid(const CorpusEntry& e, const congruence::CongruenceMap& hom);

} // namespace fpcoh::survey

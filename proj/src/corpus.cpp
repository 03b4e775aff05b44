#include "fpcoh/corpus.hpp"

#include <fstream>

#include "fpcoh/errors.hpp"

namespace fpcoh::survey {

namespace {

std::string poly_text(const json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    throw ValidationError("matrix entries must be polynomial strings or integers");
}

template <class T>
T field(const json& j, const char* key, T dflt)
{
    auto it = j.find(key);
    return it == j.end() ? dflt : it->get<T>();
}

} // namespace

CorpusEntry parse_entry(const json& j)
{
    if (!j.is_object()) throw ValidationError("corpus entry must be an object");
    CorpusEntry e;
    try {
        e.label = j.at("label").get<std::string>();
        std::string names = j.at("generators").get<std::string>();
        auto rels = field<std::vector<std::string>>(j, "relators", {});
        e.presentation = group::make_presentation(names.size(), rels, e.label, names);
        for (std::int64_t c : j.at("min_poly").get<std::vector<std::int64_t>>()) e.ring.min_poly.c.push_back(c);
        e.ring.label = e.label;
        if (!e.ring.min_poly.is_monic()) throw ValidationError("min_poly must be monic");
        for (const auto& m : j.at("images")) {
            if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
                throw ValidationError("each image must be a 2x2 array");
            e.images.push_back({congruence::IntPoly::parse(poly_text(m[0][0])), congruence::IntPoly::parse(poly_text(m[0][1])),
                                congruence::IntPoly::parse(poly_text(m[1][0])), congruence::IntPoly::parse(poly_text(m[1][1]))});
        }
        e.arithmetic = field<bool>(j, "arithmetic", false);
        e.congruence = field<bool>(j, "congruence", false);
        e.ramified = field<std::vector<std::uint32_t>>(j, "ramified", {});
        e.provenance = field<std::string>(j, "provenance", "");
    } catch (const json::exception& ex) {
        throw ValidationError("corpus entry: " + std::string(ex.what()));
    }
    if (e.images.size() != e.presentation.n_generators)
        throw ValidationError("entry " + e.label + ": " + std::to_string(e.images.size()) + " images for " +
                              std::to_string(e.presentation.n_generators) + " generators");
    e.source = j;
    return e;
}

std::vector<CorpusEntry> parse_corpus(const json& j)
{
    std::vector<CorpusEntry> out;
    const json& list = j.is_object() ? j.at("entries") : j;
    if (!list.is_array()) throw ValidationError("corpus: expected an array of entries");
    for (const auto& x : list) out.push_back(parse_entry(x));
    return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open corpus file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw ValidationError("corpus " + path + ": " + ex.what());
    }
    return parse_corpus(j);
}

json entry_to_json(const CorpusEntry& e)
{
    return e.source;
}

std::vector<std::string> builtin_names()
{
    return {"F2", "Z2"};
}

CorpusEntry builtin_entry(const std::string& name)
{
    const char* text = nullptr;
    if (name == "Z2")
        text = R"J({"label": "Z2", "generators": "ab", "relators": ["abAB"], "min_poly": [2, 0, 1],
                   "images": [[["1", "1"], ["0", "1"]], [["1", "x"], ["0", "1"]]],
                   "provenance": "built-in: unipotent translations by 1 and sqrt(-2)"})J";
    else if (name == "F2")
        text = R"J({"label": "F2", "generators": "ab", "relators": [], "min_poly": [0, 1],
                   "images": [[["1", "2"], ["0", "1"]], [["1", "0"], ["2", "1"]]],
                   "provenance": "built-in: Sanov subgroup of SL(2, Z), free of rank 2"})J";
    else
        throw ValidationError("unknown built-in entry " + name);
    json j = json::parse(text);
    return parse_entry(j);
}

CorpusEntry resolve_entry(const std::vector<CorpusEntry>& corpus, const std::string& label)
{
    for (const auto& e : corpus)
        if (e.label == label) return e;
    for (const auto& n : builtin_names())
        if (n == label) return builtin_entry(n);
    throw ValidationError("no corpus entry labelled " + label);
}

std::vector<std::uint64_t> degree_one_roots(const CorpusEntry& e, std::uint32_t p)
{
    for (auto r : e.ramified)
        if (r == p) return {};
    return congruence::roots_mod_p(e.ring.min_poly, p, true);
}

congruence::CongruenceMap entry_map(const CorpusEntry& e, std::uint32_t p, std::uint64_t root, int k)
{
    return congruence::make_congruence_map(e.ring, e.images, p, root, k);
}

void require_valid(const CorpusEntry& e, const congruence::CongruenceMap& hom)
{
    if (auto bad = congruence::first_failing_relator(e.presentation, hom)) {
        std::string r = *bad < e.presentation.relators.size()
                            ? e.presentation.relators[*bad].to_string(e.presentation.names)
                            : std::string("(generator count)");
        throw ValidationError("entry " + e.label + ": relator " + std::to_string(*bad) + " \"" + r +
                              "\" is not trivial mod " + std::to_string(hom.modulus));
    }
}

} // namespace fpcoh::survey

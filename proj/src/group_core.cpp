#include "fpcoh/group_core.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "fpcoh/errors.hpp"

namespace fpcoh::group {

std::vector<Letter> free_reduce(const std::vector<Letter>& raw)
{
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (const auto& l : raw) {
        if (l.exp != 1 && l.exp != -1) throw ValidationError("letter exponent must be +1 or -1");
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word::Word(std::vector<Letter> letters) : letters_(free_reduce(letters)) {}

Word Word::generator(std::uint32_t g, int exp)
{
    return Word({{g, exp}});
}

Word Word::inverse() const
{
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back({it->gen, -it->exp});
    return w;
}

Word Word::operator*(const Word& o) const
{
    Word w;
    w.letters_ = letters_;
    for (const auto& l : o.letters_) {
        if (!w.letters_.empty() && w.letters_.back().gen == l.gen && w.letters_.back().exp == -l.exp)
            w.letters_.pop_back();
        else
            w.letters_.push_back(l);
    }
    return w;
}

Word Word::prefix(std::size_t len) const
{
    Word w;
    w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(std::min(len, letters_.size())));
    return w;
}

std::uint32_t Word::max_generator() const
{
    std::uint32_t m = 0;
    for (const auto& l : letters_) m = std::max(m, l.gen);
    return m;
}

bool Word::operator<(const Word& o) const
{
    if (letters_.size() != o.letters_.size()) return letters_.size() < o.letters_.size();
    return letters_ < o.letters_;
}

std::string Word::to_string(const std::string& names) const
{
    if (letters_.empty()) return "1";
    std::string s;
    for (const auto& l : letters_) {
        char c = l.gen < names.size() ? names[l.gen] : '?';
        s.push_back(l.exp > 0 ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    return s;
}

Word parse_word(const std::string& s, const std::string& names)
{
    std::vector<Letter> raw;
    for (char c : s) {
        if (c == '1' && s.size() == 1) break;
        char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        auto pos = names.find(lower);
        if (!std::isalpha(static_cast<unsigned char>(c)) || pos == std::string::npos)
            throw ValidationError("word \"" + s + "\": unknown letter '" + std::string(1, c) + "'");
        raw.push_back({static_cast<std::uint32_t>(pos), std::islower(static_cast<unsigned char>(c)) ? 1 : -1});
    }
    return Word(raw);
}

void GroupPresentation::validate() const
{
    for (std::size_t i = 0; i < relators.size(); ++i)
        for (const auto& l : relators[i].letters())
            if (l.gen >= n_generators)
                throw ValidationError("presentation " + label + ": relator " + std::to_string(i) +
                                      " uses generator index " + std::to_string(l.gen) + " >= " +
                                      std::to_string(n_generators));
}

GroupPresentation make_presentation(std::size_t n, const std::vector<std::string>& relators, const std::string& label,
                                    const std::string& names)
{
    GroupPresentation pres;
    pres.n_generators = n;
    pres.label = label;
    pres.names = names;
    for (const auto& r : relators) pres.relators.push_back(parse_word(r, names.substr(0, n)));
    pres.validate();
    return pres;
}

// ---------------------------------------------------------------- Z[F]

FreeRingElement FreeRingElement::normalize(std::vector<Term> raw)
{
    std::map<Word, std::int64_t> acc;
    for (auto& t : raw)
        if (t.coeff) acc[t.word] += t.coeff;
    FreeRingElement e;
    for (auto& [w, c] : acc)
        if (c) e.terms_.push_back({c, w});
    return e;
}

FreeRingElement FreeRingElement::constant(std::int64_t c)
{
    return from_word(Word(), c);
}

FreeRingElement FreeRingElement::from_word(const Word& w, std::int64_t c)
{
    FreeRingElement e;
    if (c) e.terms_.push_back({c, w});
    return e;
}

FreeRingElement FreeRingElement::operator+(const FreeRingElement& o) const
{
    std::vector<Term> raw = terms_;
    raw.insert(raw.end(), o.terms_.begin(), o.terms_.end());
    return normalize(std::move(raw));
}

FreeRingElement FreeRingElement::operator-(const FreeRingElement& o) const
{
    return *this + o.scaled(-1);
}

FreeRingElement FreeRingElement::operator*(const FreeRingElement& o) const
{
    std::vector<Term> raw;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) raw.push_back({a.coeff * b.coeff, a.word * b.word});
    return normalize(std::move(raw));
}

FreeRingElement FreeRingElement::scaled(std::int64_t c) const
{
    std::vector<Term> raw = terms_;
    for (auto& t : raw) t.coeff *= c;
    return normalize(std::move(raw));
}

FreeRingElement FreeRingElement::conjugate() const
{
    std::vector<Term> raw;
    for (const auto& t : terms_) raw.push_back({t.coeff, t.word.inverse()});
    return normalize(std::move(raw));
}

std::string FreeRingElement::to_string(const std::string& names) const
{
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        std::int64_t c = t.coeff;
        if (i > 0) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        std::int64_t a = c < 0 ? -c : c;
        if (t.word.empty()) {
            s += std::to_string(a);
        } else {
            if (a != 1) s += std::to_string(a) + "*";
            s += t.word.to_string(names);
        }
    }
    return s;
}

// ---------------------------------------------------------------- Fox calculus

FreeRingElement fox_derivative(const Word& r, std::uint32_t j, std::size_t n_generators)
{
    if (j >= n_generators) throw ValidationError("fox_derivative: generator index out of range");
    std::vector<FreeRingElement::Term> raw;
    const auto& ls = r.letters();
    for (std::size_t t = 0; t < ls.size(); ++t) {
        if (ls[t].gen != j) continue;
        if (ls[t].exp > 0)
            raw.push_back({1, r.prefix(t)});
        else
            raw.push_back({-1, r.prefix(t + 1)});
    }
    FreeRingElement e;
    for (auto& term : raw) e = e + FreeRingElement::from_word(term.word, term.coeff);
    return e;
}

BoundaryData boundary_data(const GroupPresentation& pres)
{
    pres.validate();
    BoundaryData bd;
    for (std::uint32_t i = 0; i < pres.n_generators; ++i)
        bd.d0.push_back(FreeRingElement::constant(1) - FreeRingElement::from_word(Word::generator(i)));
    for (const auto& r : pres.relators) {
        std::vector<FreeRingElement> row;
        for (std::uint32_t j = 0; j < pres.n_generators; ++j) row.push_back(fox_derivative(r, j, pres.n_generators));
        bd.d1.push_back(std::move(row));
    }
    return bd;
}

FreeRingElement laplacian_element(const GroupPresentation& pres)
{
    FreeRingElement e;
    for (std::uint32_t i = 0; i < pres.n_generators; ++i)
        e = e + FreeRingElement::constant(2) - FreeRingElement::from_word(Word::generator(i, 1)) -
            FreeRingElement::from_word(Word::generator(i, -1));
    return e;
}

FreeRingElement laplacian_element_alt(const GroupPresentation& pres)
{
    FreeRingElement e;
    for (std::uint32_t i = 0; i < pres.n_generators; ++i) {
        FreeRingElement z = FreeRingElement::constant(1) - FreeRingElement::from_word(Word::generator(i));
        e = e - FreeRingElement::from_word(Word::generator(i, -1)) * z * z;
    }
    return e;
}

bool fox_fundamental_identity(const Word& r, std::size_t n_generators)
{
    FreeRingElement lhs;
    for (std::uint32_t j = 0; j < n_generators; ++j)
        lhs = lhs + fox_derivative(r, j, n_generators) *
                        (FreeRingElement::from_word(Word::generator(j)) - FreeRingElement::constant(1));
    FreeRingElement rhs = FreeRingElement::from_word(r) - FreeRingElement::constant(1);
    return lhs == rhs;
}

std::int64_t exponent_sum(const Word& w, std::uint32_t g)
{
    std::int64_t s = 0;
    for (const auto& l : w.letters())
        if (l.gen == g) s += l.exp;
    return s;
}

} // namespace fpcoh::group

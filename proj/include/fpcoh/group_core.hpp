#pragma once
// Words, presentations, the free group ring and Fox calculus.
#include <cstdint>
#include <string>
#include <vector>

namespace fpcoh::group {

struct Letter {
    std::uint32_t gen;
    int exp; // +1 or -1
    bool operator==(const Letter&) const = default;
    auto operator<=>(const Letter&) const = default;
};

class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters); // freely reduces

    static Word generator(std::uint32_t g, int exp = 1);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word inverse() const;
    Word operator*(const Word& o) const;
    Word prefix(std::size_t len) const;
    std::uint32_t max_generator() const; // 0 for the empty word

    bool operator==(const Word&) const = default;
    // shortlex
    bool operator<(const Word& o) const;

    // Lowercase letters for generators, uppercase for inverses, using names[g].
    std::string to_string(const std::string& names = "abcdefghijklmnopqrstuvwxyz") const;

private:
    std::vector<Letter> letters_;
};

// Free reduction of a raw letter sequence.
std::vector<Letter> free_reduce(const std::vector<Letter>& raw);

// Parses "aBAb" style words. names lists the generator letters in index order.
Word parse_word(const std::string& s, const std::string& names = "abcdefghijklmnopqrstuvwxyz");

struct GroupPresentation {
    std::size_t n_generators = 0;
    std::vector<Word> relators;
    std::string label;
    std::string names = "abcdefghijklmnopqrstuvwxyz";

    void validate() const;
};

GroupPresentation make_presentation(std::size_t n, const std::vector<std::string>& relators, const std::string& label,
                                    const std::string& names = "abcdefghijklmnopqrstuvwxyz");

// Element of Z[F]: integer combination of reduced words.
class FreeRingElement {
public:
    struct Term {
        std::int64_t coeff;
        Word word;
        bool operator==(const Term&) const = default;
    };

    FreeRingElement() = default;
    static FreeRingElement constant(std::int64_t c);
    static FreeRingElement from_word(const Word& w, std::int64_t c = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    FreeRingElement operator+(const FreeRingElement& o) const;
    FreeRingElement operator-(const FreeRingElement& o) const;
    FreeRingElement operator*(const FreeRingElement& o) const;
    FreeRingElement scaled(std::int64_t c) const;
    // The involution sum c_w w -> sum c_w w^{-1}.
    FreeRingElement conjugate() const;

    bool operator==(const FreeRingElement&) const = default;
    std::string to_string(const std::string& names = "abcdefghijklmnopqrstuvwxyz") const;

private:
    static FreeRingElement normalize(std::vector<Term> raw);
    std::vector<Term> terms_; // sorted shortlex, nonzero coefficients
};

// dr/dg_j with d(uv) = du + u dv, dg_i/dg_j = delta_ij, dg_i^{-1}/dg_j = -g_i^{-1} delta_ij.
FreeRingElement fox_derivative(const Word& r, std::uint32_t j, std::size_t n_generators);

struct BoundaryData {
    std::vector<FreeRingElement> d0;              // 1 - g_i
    std::vector<std::vector<FreeRingElement>> d1; // d1[i][j] = dR_i/dg_j
};

BoundaryData boundary_data(const GroupPresentation& pres);

// sum_i (2 - g_i - g_i^{-1})
FreeRingElement laplacian_element(const GroupPresentation& pres);
// -sum_i g_i^{-1} (1 - g_i)^2, expanded and reduced
FreeRingElement laplacian_element_alt(const GroupPresentation& pres);

// Checks sum_j (dR/dg_j)(g_j - 1) == R - 1.
bool fox_fundamental_identity(const Word& r, std::size_t n_generators);

// Exponent sum of generator g in w.
std::int64_t exponent_sum(const Word& w, std::uint32_t g);

} // namespace fpcoh::group

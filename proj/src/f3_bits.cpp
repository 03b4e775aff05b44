#include "fpcoh/f3_bits.hpp"

#include <bit>

namespace fpcoh::linalg {

void F3Vec::set(std::size_t i, Residue v)
{
    std::uint64_t b = std::uint64_t{1} << (i & 63);
    one_[i >> 6] &= ~b;
    two_[i >> 6] &= ~b;
    v %= 3;
    if (v == 1) one_[i >> 6] |= b;
    if (v == 2) two_[i >> 6] |= b;
}

void F3Vec::add(const F3Vec& y, std::size_t from_word)
{
    for (std::size_t w = from_word; w < one_.size(); ++w) f3_add_word(one_[w], two_[w], y.one_[w], y.two_[w], one_[w], two_[w]);
}

void F3Vec::sub(const F3Vec& y, std::size_t from_word)
{
    for (std::size_t w = from_word; w < one_.size(); ++w) f3_add_word(one_[w], two_[w], y.two_[w], y.one_[w], one_[w], two_[w]);
}

bool F3Vec::is_zero() const
{
    for (std::size_t w = 0; w < one_.size(); ++w)
        if (one_[w] | two_[w]) return false;
    return true;
}

std::int64_t F3Vec::leading(std::size_t from) const
{
    std::size_t w = from >> 6;
    if (w >= one_.size()) return -1;
    std::uint64_t m = (one_[w] | two_[w]) & (~std::uint64_t{0} << (from & 63));
    while (true) {
        if (m) return static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(m)));
        if (++w >= one_.size()) return -1;
        m = one_[w] | two_[w];
    }
}

void F3Vec::clear_mask(const F3Vec& mask)
{
    for (std::size_t w = 0; w < one_.size(); ++w) {
        std::uint64_t keep = ~(mask.one_[w] | mask.two_[w]);
        one_[w] &= keep;
        two_[w] &= keep;
    }
}

} // namespace fpcoh::linalg

#ifndef NSPOLY_SUPPORT_HPP
#define NSPOLY_SUPPORT_HPP

#include <boost/dynamic_bitset.hpp>
#include <string>

namespace nspoly {

/**
 * 0/1 vector over the cell coordinates; componentwise order with 0 < 1.
 * Bit i corresponds to cell index i.
 */
using SupportVector = boost::dynamic_bitset<>;

inline bool support_leq(const SupportVector& a, const SupportVector& b) {
    return a.is_subset_of(b);
}

inline SupportVector support_join(const SupportVector& a, const SupportVector& b) {
    return a | b;
}

/** Bitstring with cell 0 leftmost, the order used in exported documents. */
inline std::string support_to_string(const SupportVector& s) {
    std::string out(s.size(), '0');
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.test(i)) out[i] = '1';
    return out;
}

inline SupportVector support_from_string(const std::string& bits) {
    SupportVector s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') s.set(i);
        else if (bits[i] != '0') throw std::invalid_argument("bad support bitstring");
    }
    return s;
}

}  // namespace nspoly

#endif  // NSPOLY_SUPPORT_HPP

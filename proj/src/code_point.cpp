#include "lcw/code_point.hpp"

#include <string>

#include "lcw/error.hpp"

namespace lcw::qu {

CodePoint pack_point(std::uint32_t root, std::uint32_t affix, bool inversion)
{
    if (root >= root_base)
        fail(errc::range_error, "root " + std::to_string(root) + " outside [0, 259)");
    if (affix >= affix_count)
        fail(errc::range_error, "affix " + std::to_string(affix) + " wider than 11 bits");
    return {root << affix_bits | affix, inversion};
}

UnpackedPoint unpack_point(const CodePoint& p)
{
    if (p.value >= code_points)
        fail(errc::range_error, "code point outside [0, N_Q)");
    return {p.root(), p.affix(), p.inversion};
}

CodePoint point_from_value(std::uint32_t value, bool inversion)
{
    if (value >= code_points)
        fail(errc::range_error, "code point " + std::to_string(value) + " outside [0, N_Q)");
    return {value, inversion};
}

void check_key(const PointKey& key)
{
    if (key.s259 >= root_base)
        fail(errc::range_error, "root key outside [0, 259)");
    if (key.s11 >= affix_count)
        fail(errc::range_error, "affix key wider than 11 bits");
}

CodePoint scramble_point(const CodePoint& p, const PointKey& key)
{
    check_key(key);
    const auto u = unpack_point(p);
    return pack_point((u.root + key.s259) % root_base, u.affix ^ key.s11, u.inversion != key.s1);
}

CodePoint descramble_point(const CodePoint& p, const PointKey& key)
{
    check_key(key);
    const auto u = unpack_point(p);
    return pack_point((u.root + root_base - key.s259) % root_base, u.affix ^ key.s11, u.inversion != key.s1);
}

} // namespace lcw::qu

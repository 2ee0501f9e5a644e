#include "olk/random_gen.hpp"

#include <algorithm>

namespace olk {

std::vector<real> DyadicGen::lattice_breaks(real T, int n) {
    std::vector<real> br{0.0L};
    for (int i = 0; i + 1 < n; ++i) {
        std::uint64_t span = std::max<std::uint64_t>(1, std::uint64_t(64.0 * double(T) / n));
        real step = real(1 + bits(span)) / 64.0L;
        if (br.back() + step >= T) break;
        br.push_back(br.back() + step);
    }
    br.push_back(T);
    return br;
}

StepFunction DyadicGen::fn(real T, int max_cells) {
    std::vector<real> br = lattice_breaks(T, 1 + int(bits(max_cells)));
    std::vector<real> va(br.size() - 1);
    for (real& v : va) v = real(bits(513)) / 256.0L;
    return StepFunction(std::move(br), std::move(va));
}

StepFunction DyadicGen::nonzero_fn(real T, int max_cells) {
    for (;;) {
        StepFunction f = fn(T, max_cells);
        if (!f.is_zero()) return f;
    }
}

Weight DyadicGen::weight(real T, int max_cells) {
    std::vector<real> br = lattice_breaks(T, 1 + int(bits(max_cells)));
    real v = real(256 + bits(768)) / 256.0L;
    std::vector<real> vv;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        vv.push_back(v);
        v = std::max<real>(v - real(bits(128)) / 256.0L, 1.0L / 256.0L);
    }
    return Weight(std::move(br), std::move(vv));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + (salt + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace olk

// Random 3-regular graph -> randomized grid wiring in Z^3 -> piecewise linear
// 1-thick embedding in R^3, checked exactly.

#include <cstdio>
#include <cstdlib>

#include "coarsewire/coarsewire.hpp"

int main(int argc, char** argv) {
    using namespace cwire;
    const std::size_t N = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 32;
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;

    const Graph g = random_regular(N, 3, seed);
    const auto kb = kb_wiring(g, 3, seed);
    const auto rep = verify_coarse_wiring(kb.wiring);
    std::printf("wiring     k = %zu, volume %zu, diameter %lld, side %llu\n", rep.k, rep.volume,
                static_cast<long long>(rep.diameter), static_cast<unsigned long long>(kb.params.side()));

    const auto res = geo::realize_grid_wiring(kb.wiring, rep.k, max_degree(g), seed);
    std::printf("template   T = %u, %zu edge types, shift %u\n", res.tmpl.T, res.tmpl.types.size(), res.tmpl.shift);

    const auto cert = geo::verify_thickness(res.embedding, 1, 0);
    std::printf("thickness  %s (exact: %s)\n", geo::to_string(cert.status).c_str(), cert.exact ? "yes" : "no");
    return cert.passed() ? 0 : 1;
}

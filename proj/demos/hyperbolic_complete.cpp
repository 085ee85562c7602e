// K_N in hyperbolic 3-space: certify 1-thickness, then bracket the diameter
// and bound the volume of the 1-neighbourhood.

#include <cstdio>
#include <cstdlib>

#include "coarsewire/coarsewire.hpp"

int main(int argc, char** argv) {
    using namespace cwire;
    const std::size_t N = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 8;
    const auto e = geo::slab_to_h3(geo::complete_slab_embedding(N));

    const auto cert = geo::verify_thickness(e, 1, 1e-3);
    std::printf("thickness  %s, lower bound %.6f\n", geo::to_string(cert.status).c_str(), cert.certified_lower_bound);

    const auto diam = geo::embedding_diameter(e);
    std::printf("diameter   [%.4f, %.4f]  (bound %.4f)\n", diam.lower, diam.upper, geo::h3_diameter_bound(N));

    const auto vol = geo::estimate_volume(e, 0.5);
    std::printf("volume     <= %.1f from %zu net points  (bound %.1f)\n", vol.volume, vol.net_points,
                geo::h3_volume_constant() * double(N * N));
    return cert.passed() ? 0 : 1;
}

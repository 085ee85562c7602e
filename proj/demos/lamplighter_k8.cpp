// Wire K_8 into a lamplighter ball and compare with the stated bounds:
// k <= 2d, diameter <= 6 ceil(log2 n), volume <= d n (3 ceil(log2 n) + 1/2).

#include <cmath>
#include <cstdio>

#include "coarsewire/coarsewire.hpp"

int main(int argc, char** argv) {
    using namespace cwire;
    const Graph g = argc > 1 ? io::graph_from_json(io::read_json(argv[1])) : complete_graph(8);
    const Wiring w = lamplighter_wiring(g);
    const auto rep = verify_coarse_wiring(w);

    const double n = double(g.vertex_count()), d = double(max_degree(g));
    const double lg = std::ceil(std::log2(n));
    std::printf("host      %s\n", to_string(w.host.kind()).c_str());
    std::printf("k         %zu  (bound %.0f)\n", rep.k, 2 * d);
    std::printf("diameter  %lld  (bound %.0f)\n", static_cast<long long>(rep.diameter), 6 * lg);
    std::printf("volume    %zu  (bound %.1f)\n", rep.volume, d * n * (3 * lg + 0.5));
}

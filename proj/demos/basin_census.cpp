// Basins and functional-graph census for a few primes, then the
// full-basin primes below a bound.
//   demo_basin_census [limit]

#include <cstdlib>
#include <iostream>

#include "qdyn/qdyn.hpp"

int main(int argc, char** argv) {
    const qdyn::u64 limit = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 30000;

    for (qdyn::u64 p : {5, 7, 13, 23, 2713}) {
        const auto basin = qdyn::compute_basin(p);
        const auto census = qdyn::functional_census(p);
        std::cout << "p=" << p << "  #basin=" << basin.size() << "  balance=" << qdyn::format_sig(basin.balance().value())
                  << "  components=" << census.n_components << "  cycles=";
        for (auto c : census.cycle_lengths) std::cout << c << ' ';
        std::cout << '\n';
    }

    std::cout << "full basins up to " << limit << ":";
    for (auto p : qdyn::full_basin_primes(limit, 0)) std::cout << ' ' << p;
    std::cout << '\n';
}

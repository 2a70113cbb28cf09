// Refines the universe {2..X} \ {m^2 - 1} one prime at a time and prints
// how many elements are still unseparated.
//   demo_separation_walkthrough [X]

#include <cstdlib>
#include <iostream>

#include "qdyn/qdyn.hpp"

int main(int argc, char** argv) {
    const qdyn::u64 x = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 100;
    auto state = qdyn::initial_universe(x);
    std::cout << "universe size " << state.universe_size() << '\n';

    for (qdyn::u64 p : qdyn::primes_up_to(1'000'000)) {
        if (state.empty()) break;
        state.refine(qdyn::compute_basin(p));
        std::cout << "p=" << p << "  blocks=" << state.block_count() << "  unseparated=" << state.unseparated_count()
                  << '\n';
    }

    // Same answer through the one-call interface, with balance-sorted primes.
    qdyn::SeparationOptions opts;
    opts.order = qdyn::PrimeOrder::balance_sorted;
    opts.prime_limit = 10'000;
    const auto rep = qdyn::separate(x, opts);
    std::cout << "balance-sorted: separated=" << rep.separated << " using " << rep.primes_consumed
              << " primes, largest " << rep.max_prime_used << '\n';
}

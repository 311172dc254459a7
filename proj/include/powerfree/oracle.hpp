#pragma once

#include "powerfree/words.hpp"

namespace powerfree {

struct GroupMap;

// Brute-force power witness: k blocks starting at `start`, each of length
// `period`, equivalent under the stated mode.
struct PowerWitness {
    int64_t start = 0;
    int64_t period = 0;
    int k = 2;
    enum Mode { Abelian, ModGroup, KAbelian } mode = Abelian;
    int window = 1;  // k' for the k-abelian mode
};

// First witness in (start, period) lexicographic order, or nothing.
std::optional<PowerWitness> find_abelian_power(const Word& w, int k, int64_t min_period,
                                               int64_t max_period);

// Powers modulo Phi.  With `uniform` (or when F contains an all-ones row)
// blocks have equal length and the scan is complete over the range; the
// general unequal-block search is exponential in k and only attempted for
// short words (<= 4096).
std::optional<PowerWitness> find_power_mod(const Word& w, const GroupMap& phi, int k,
                                           bool uniform, int64_t min_period, int64_t max_period);

// k'-abelian powers: all subword counts up to length `window` agree.
std::optional<PowerWitness> find_kabelian_power(const Word& w, int window, int k,
                                                int64_t min_period, int64_t max_period);

}  // namespace powerfree

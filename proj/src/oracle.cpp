#include "powerfree/oracle.hpp"

#include <algorithm>

#include "powerfree/applications.hpp"

namespace powerfree {

namespace {

int alphabet_bound(const Word& w) {
    int n = 0;
    for (char c : w) n = std::max(n, int(uint8_t(c)) + 1);
    return std::max(n, 1);
}

}  // namespace

std::optional<PowerWitness> find_abelian_power(const Word& w, int k, int64_t min_period,
                                               int64_t max_period) {
    int n = alphabet_bound(w);
    int64_t m = int64_t(w.size());
    max_period = std::min(max_period, m / k);
    if (min_period < 1 || min_period > max_period) return std::nullopt;
    // prefix counts
    std::vector<std::vector<int32_t>> pref(m + 1, std::vector<int32_t>(n, 0));
    for (int64_t i = 0; i < m; ++i) {
        pref[i + 1] = pref[i];
        pref[i + 1][uint8_t(w[i])]++;
    }
    for (int64_t start = 0; start + int64_t(k) * min_period <= m; ++start) {
        int64_t pmax = std::min(max_period, (m - start) / k);
        for (int64_t p = min_period; p <= pmax; ++p) {
            bool ok = true;
            for (int b = 1; b < k && ok; ++b) {
                const auto& x0 = pref[start];
                const auto& x1 = pref[start + p];
                const auto& y0 = pref[start + int64_t(b) * p];
                const auto& y1 = pref[start + int64_t(b + 1) * p];
                for (int c = 0; c < n; ++c)
                    if (x1[c] - x0[c] != y1[c] - y0[c]) { ok = false; break; }
            }
            if (ok) {
                PowerWitness out;
                out.start = start;
                out.period = p;
                out.k = k;
                out.mode = PowerWitness::Abelian;
                return out;
            }
        }
    }
    return std::nullopt;
}

std::optional<PowerWitness> find_power_mod(const Word& w, const GroupMap& phi, int k,
                                           bool uniform, int64_t min_period, int64_t max_period) {
    int64_t m = int64_t(w.size());
    int d = phi.F.rows;
    int n = phi.F.cols;
    bool equal_lengths = uniform || phi.has_ones_row();
    // Phi prefix sums as int64 (entries stay small for fixture-scale inputs)
    std::vector<std::vector<int64_t>> Fd(d, std::vector<int64_t>(n));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) {
            if (!phi.F(i, j).fits_slong_p()) throw std::overflow_error("group map entry overflow");
            Fd[i][j] = phi.F(i, j).get_si();
        }
    std::vector<std::vector<int64_t>> pref(m + 1, std::vector<int64_t>(d, 0));
    for (int64_t i = 0; i < m; ++i) {
        for (int r = 0; r < d; ++r) pref[i + 1][r] = pref[i][r] + Fd[r][uint8_t(w[i])];
    }
    auto block_eq = [&](int64_t a0, int64_t a1, int64_t b0, int64_t b1) {
        for (int r = 0; r < d; ++r)
            if (pref[a1][r] - pref[a0][r] != pref[b1][r] - pref[b0][r]) return false;
        return true;
    };
    if (equal_lengths) {
        max_period = std::min(max_period, m / k);
        if (min_period < 1 || min_period > max_period) return std::nullopt;
        for (int64_t start = 0; start + int64_t(k) * min_period <= m; ++start) {
            int64_t pmax = std::min(max_period, (m - start) / k);
            for (int64_t p = min_period; p <= pmax; ++p) {
                bool ok = true;
                for (int b = 1; b < k && ok; ++b)
                    ok = block_eq(start, start + p, start + int64_t(b) * p,
                                  start + int64_t(b + 1) * p);
                if (ok) {
                    PowerWitness out;
                    out.start = start;
                    out.period = p;
                    out.k = k;
                    out.mode = PowerWitness::ModGroup;
                    return out;
                }
            }
        }
        return std::nullopt;
    }
    // general unequal blocks: DFS over cut positions (small words only)
    if (m > 4096) throw MethodError("non-uniform mod-Phi scan is limited to short words");
    if (min_period < 1) min_period = 1;
    for (int64_t start = 0; start < m; ++start) {
        // first block length = "period" reported
        for (int64_t p = min_period; p <= std::min(max_period, m - start); ++p) {
            // remaining k-1 blocks of any positive lengths with equal Phi
            std::vector<int64_t> cuts{start, start + p};
            auto dfs = [&](auto&& self, int placed) -> bool {
                if (placed == k) return true;
                int64_t from = cuts.back();
                for (int64_t next = from + 1; next <= m; ++next) {
                    if (!block_eq(start, start + p, from, next)) continue;
                    cuts.push_back(next);
                    if (self(self, placed + 1)) return true;
                    cuts.pop_back();
                }
                return false;
            };
            if (dfs(dfs, 1)) {
                PowerWitness out;
                out.start = start;
                out.period = p;
                out.k = k;
                out.mode = PowerWitness::ModGroup;
                return out;
            }
        }
    }
    return std::nullopt;
}

std::optional<PowerWitness> find_kabelian_power(const Word& w, int window, int k,
                                                int64_t min_period, int64_t max_period) {
    int n = alphabet_bound(w);
    int64_t m = int64_t(w.size());
    max_period = std::min(max_period, m / k);
    if (min_period < 1 || min_period > max_period) return std::nullopt;
    if (window < 1) window = 1;
    // gram prefix tables per length 1..window (gram id = base-n code)
    std::vector<int64_t> gram_count(window + 1, 1);
    for (int l = 1; l <= window; ++l) {
        gram_count[l] = gram_count[l - 1] * n;
        if (gram_count[l] > (1 << 20)) throw MethodError("k-abelian window too large");
    }
    // pref[l][i][g] = occurrences of gram g (length l) starting in w[0..i)
    std::vector<std::vector<std::vector<int32_t>>> pref(window + 1);
    for (int l = 1; l <= window; ++l) {
        pref[l].assign(m + 2, std::vector<int32_t>(gram_count[l], 0));
        int64_t code = 0, base = gram_count[l - 1];
        for (int64_t i = 0; i + l <= m; ++i) {
            if (i == 0) {
                code = 0;
                for (int t = 0; t < l; ++t) code = code * n + uint8_t(w[t]);
            } else {
                code = (code % (base)) * n + uint8_t(w[i + l - 1]);
            }
            pref[l][i + 1] = pref[l][i];
            pref[l][i + 1][code]++;
        }
    }
    auto blocks_eq = [&](int64_t a, int64_t b, int64_t p) {
        // all grams of length l <= window fully inside the two blocks agree
        for (int l = 1; l <= window; ++l) {
            if (p < l) continue;  // no grams of this length fit
            int64_t ae = a + p - l + 1, be = b + p - l + 1;
            const auto& A0 = pref[l][a];
            const auto& A1 = pref[l][ae];
            const auto& B0 = pref[l][b];
            const auto& B1 = pref[l][be];
            for (int64_t g = 0; g < gram_count[l]; ++g)
                if (A1[g] - A0[g] != B1[g] - B0[g]) return false;
        }
        return true;
    };
    for (int64_t start = 0; start + int64_t(k) * min_period <= m; ++start) {
        int64_t pmax = std::min(max_period, (m - start) / k);
        for (int64_t p = min_period; p <= pmax; ++p) {
            bool ok = true;
            for (int b = 1; b < k && ok; ++b)
                ok = blocks_eq(start, start + int64_t(b) * p, p);
            if (ok) {
                PowerWitness out;
                out.start = start;
                out.period = p;
                out.k = k;
                out.mode = PowerWitness::KAbelian;
                out.window = window;
                return out;
            }
        }
    }
    return std::nullopt;
}

}  // namespace powerfree

#include "powerfree/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace powerfree {

namespace {

Int binomial(long n, long k) {
    if (k < 0 || k > n) return Int(0);
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

// sum_{j >= 0} C(l j, mhat) |lambda|^{l j - mhat} as a certified interval,
// for |lambda| < 1.  Closed forms for mhat = 0 and lambda = 0; otherwise a
// partial sum plus a geometric tail bound.
Interval block_series(const Interval& mag, int l, int mhat) {
    if (sgn(mag.hi) == 0) {  // lambda = 0 exactly
        return (mhat % l == 0) ? Interval(Rat(1)) : Interval(Rat(0));
    }
    Interval one(Rat(1));
    // t = |lambda|^l
    Interval t = one;
    for (int i = 0; i < l; ++i) t = t * mag;
    if (!(t.hi < 1)) throw std::logic_error("block_series: eigenvalue power not contracting");
    if (mhat == 0) return one / (one - t);

    Interval sum(Rat(0));
    Rat tail_rel(Int(1), Int(1) << 96);
    Interval magl = one;
    for (int i = 0; i < l; ++i) magl = round_outward(magl * mag, 192);
    Interval magpow;  // mag^(lj - mhat), maintained incrementally
    bool started = false;
    for (long j = 0;; ++j) {
        long lj = l * j;
        Interval term(Rat(0));
        if (lj >= mhat) {
            if (!started) {
                magpow = one;
                for (long e = 0; e < lj - mhat; ++e) magpow = round_outward(magpow * mag, 192);
                started = true;
            } else {
                magpow = round_outward(magpow * magl, 192);
            }
            term = Interval(Rat(binomial(lj, mhat))) * magpow;
            sum = round_outward(sum + term, 224);
        }
        if (lj >= mhat && j >= 1) {
            // ratio bound: a_{j+1}/a_j <= ((lj + l)/(lj - mhat + 1))^mhat * t
            Rat ratio_hi = t.hi;
            for (int e = 0; e < mhat; ++e)
                ratio_hi *= Rat(lj + l) / Rat(lj - mhat + 1);
            if (ratio_hi < 1) {
                Rat tail = term.hi * ratio_hi / (1 - ratio_hi);
                if (tail <= (sum.hi + 1) * tail_rel || j > 10000) {
                    return Interval(sum.lo, sum.hi + tail);
                }
            }
        }
        if (j > 20000) throw std::logic_error("block_series did not converge");
    }
}

struct PsiSets {
    // Parikh vectors of all suffixes/prefixes of the images of h^l, deduped
    std::vector<std::vector<int32_t>> suf, pre;
    int max_len = 0;
};

PsiSets suffix_prefix_parikhs(const Morphism& h, int l) {
    Morphism H = l == 1 ? h : h.power(l);
    int n = h.source->size();
    PsiSets out;
    std::unordered_set<std::string> seen_s, seen_p;
    auto key = [n](const std::vector<int32_t>& v) {
        return std::string(reinterpret_cast<const char*>(v.data()), size_t(n) * 4);
    };
    for (const Word& img : H.rules) {
        out.max_len = std::max(out.max_len, int(img.size()));
        std::vector<int32_t> acc(n, 0);
        if (seen_s.insert(key(acc)).second) out.suf.push_back(acc);
        for (size_t i = img.size(); i-- > 0;) {
            acc[uint8_t(img[i])]++;
            if (seen_s.insert(key(acc)).second) out.suf.push_back(acc);
        }
        std::fill(acc.begin(), acc.end(), 0);
        if (seen_p.insert(key(acc)).second) out.pre.push_back(acc);
        for (size_t i = 0; i < img.size(); ++i) {
            acc[uint8_t(img[i])]++;
            if (seen_p.insert(key(acc)).second) out.pre.push_back(acc);
        }
    }
    return out;
}

// certified max of |row . (psi_s + psi_p)| over the two Parikh sets
Interval pair_max(const RowFunctional& row, const PsiSets& ps) {
    int n = row.dim();
    if (row.rational) {
        // separable exact max/min
        auto minmax = [&](const std::vector<std::vector<int32_t>>& set) {
            Rat mx, mn;
            bool first = true;
            for (const auto& v : set) {
                Rat s(0);
                for (int i = 0; i < n; ++i)
                    if (v[i]) s += row.exact[i] * Rat(long(v[i]));
                if (first || s > mx) mx = s;
                if (first || s < mn) mn = s;
                first = false;
            }
            return std::pair<Rat, Rat>(mn, mx);
        };
        auto [smin, smax] = minmax(ps.suf);
        auto [pmin, pmax] = minmax(ps.pre);
        Rat best = std::max(Rat(smax + pmax), Rat(-(smin + pmin)));
        return Interval(best, best);
    }

    // complex row: support-function sweep over rational unit directions,
    // evaluated in double with a rigorous error budget
    const int half = 256;  // directions come in +/- pairs: T = 512
    // real/imag parts of row entries as doubles + deviation bound
    std::vector<double> re(n), im(n);
    for (int i = 0; i < n; ++i) {
        re[i] = row.shadow[i].real();
        im[i] = row.shadow[i].imag();
    }
    double eg = row.shadow_err;  // entrywise deviation bound for the row

    std::vector<std::pair<double, double>> dirs;  // unit directions (double)
    std::vector<std::pair<Rat, Rat>> dirs_q;      // exact rational unit dirs
    for (int t = 0; t < half; ++t) {
        double theta = (-M_PI / 2) + M_PI * (t + 0.5) / half;
        Rat u = dyadic_round(Rat(std::tan(theta / 2)), 30);
        Rat den = u * u + 1;
        Rat cx = (1 - u * u) / den, cy = (2 * u) / den;  // exactly unit norm
        dirs_q.push_back({cx, cy});
        dirs.push_back({to_double(cx), to_double(cy)});
        dirs_q.push_back({-cx, -cy});
        dirs.push_back({-to_double(cx), -to_double(cy)});
    }
    // angular-gap correction: sec(gamma) with cos(2 gamma) = min consecutive dot
    // product, taken over directions sorted by angle
    std::vector<int> order(dirs_q.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::atan2(dirs[a].second, dirs[a].first) <
               std::atan2(dirs[b].second, dirs[b].first);
    });
    Rat min_dot(1);
    bool first = true;
    for (size_t i = 0; i < order.size(); ++i) {
        const auto& a = dirs_q[order[i]];
        const auto& b = dirs_q[order[(i + 1) % order.size()]];
        Rat dot = a.first * b.first + a.second * b.second;
        if (first || dot < min_dot) min_dot = dot;
        first = false;
    }
    if (!(min_dot > -1)) throw std::logic_error("direction sweep degenerate");
    Rat sec_factor = sqrt_upper(Rat(2) / (1 + min_dot), 64);

    // per direction: g_t[c] = dx*Re(row_c) + dy*Im(row_c); support max over
    // each Parikh set; |psi|_1 <= 2*max_len bounds the error amplification
    auto support = [&](const std::vector<std::vector<int32_t>>& set, double dx, double dy,
                       double& out_max) {
        double mx = -1e300;
        for (const auto& v : set) {
            double s = 0;
            for (int i = 0; i < n; ++i)
                if (v[i]) s += v[i] * (dx * re[i] + dy * im[i]);
            mx = std::max(mx, s);
        }
        out_max = mx;
    };
    double best = -1e300, best_lb = -1e300;
    for (size_t t = 0; t < dirs.size(); ++t) {
        double ms, mp;
        support(ps.suf, dirs[t].first, dirs[t].second, ms);
        support(ps.pre, dirs[t].first, dirs[t].second, mp);
        best = std::max(best, ms + mp);
        best_lb = std::max(best_lb, ms + mp);
    }
    // error budget: deviation <= |psi|_1 * eg per set element, plus floating
    // point summation slack
    double amp = 2.0 * ps.max_len;
    double mag_bound = 0;
    for (int i = 0; i < n; ++i) mag_bound = std::max(mag_bound, std::hypot(re[i], im[i]) + eg);
    double fp = amp * mag_bound * 1e-13 + 1e-290;
    double err = amp * eg + fp;

    Rat ub = Rat(best + err) * sec_factor;
    Rat lb = Rat(std::max(0.0, best_lb - err));
    if (lb > ub) lb = ub;
    return Interval(lb, ub);
}

}  // namespace

BoundsProfile contracting_bounds(const Morphism& h, const SpectralData& sd, int l) {
    if (!is_primitive(h).primitive)
        throw MethodError("contracting bounds require a primitive morphism");
    if (sd.has_unresolved())
        throw MethodError("modulus-1 unresolved eigenvalue: method out of scope");
    BoundsProfile bp;
    bp.sharpen_power = l;
    if (sd.contracting.empty()) return bp;

    PsiSets ps = suffix_prefix_parikhs(h, l);

    // u_j per contracting row
    std::vector<Interval> u(sd.contracting.size());
    std::vector<bool> u_exact(sd.contracting.size());
    for (size_t i = 0; i < sd.contracting.size(); ++i) {
        u[i] = pair_max(sd.contracting_rows[i], ps);
        u_exact[i] = sd.contracting_rows[i].rational;
    }

    bp.factor_bound.resize(sd.contracting.size());
    bp.factor_bound_exact.resize(sd.contracting.size());
    bp.r_star.resize(sd.contracting.size());
    for (size_t i = 0; i < sd.contracting.size(); ++i) {
        int col = sd.contracting[i];
        const JordanBlock& blk = sd.blocks[sd.block_of_index[col]];
        int a = col - blk.col_start;
        Interval lambda_mag = sd.contracting_lambda[i].mag(96);
        bool lambda_zero = sd.contracting_lambda[i].is_real_point() &&
                           sgn(sd.contracting_lambda[i].re.lo) == 0;
        Interval m(Rat(0));
        bool exact = true;
        for (int beta = a; beta < blk.size; ++beta) {
            // row at block position beta has contracting-list index i + (beta - a)
            size_t idx = i + size_t(beta - a);
            Interval g = block_series(lambda_zero ? Interval(Rat(0)) : lambda_mag, l, beta - a);
            m += u[idx] * g;
            exact = exact && u_exact[idx] && g.is_point();
        }
        bp.factor_bound[i] = m;
        bp.factor_bound_exact[i] = exact;
        bp.r_star[i] = m * Interval(Rat(2));
    }
    return bp;
}

// ------------------------------------------------------------------ Filter

Filter::Filter(const SpectralData& sd, const BoundsProfile& profile)
    : sd_(&sd), profile_(&profile) {
    size_t m = sd.contracting.size();
    thr_hi_.resize(m);
    thr_hi_d_.resize(m);
    exact_thr_.resize(m);
    for (size_t i = 0; i < m; ++i) {
        thr_hi_[i] = profile.r_star[i].hi;
        thr_hi_d_[i] = to_double(thr_hi_[i]) * (1 + 1e-12) + 1e-290;
        if (profile.factor_bound_exact[i] && sd.contracting_rows[i].rational)
            exact_thr_[i] = profile.r_star[i].hi;
    }
}

bool Filter::passes(const IVec& d) const {
    for (size_t i = 0; i < thr_hi_.size(); ++i) {
        const RowFunctional& row = sd_->contracting_rows[i];
        if (row.rational) {
            if (row.eval_abs_exact(d) > thr_hi_[i]) return false;
            continue;
        }
        // fast double screen
        double sr = 0, si = 0, l1 = 0;
        bool fits = true;
        for (size_t j = 0; j < row.shadow.size(); ++j) {
            double x = d[j].fits_slong_p() ? double(d[j].get_si()) : (fits = false, 0.0);
            if (!fits) break;
            sr += x * row.shadow[j].real();
            si += x * row.shadow[j].imag();
            l1 += std::abs(x);
        }
        if (fits) {
            double err = l1 * row.shadow_err + (l1 + 1) * 1e-12;
            double mag = std::hypot(sr, si);
            if (mag - err > thr_hi_d_[i]) return false;  // certainly out
            if (mag + err <= to_double(profile_->r_star[i].lo) * (1 - 1e-12)) continue;
        }
        // exact interval decision
        CInterval v = row.eval_iv(d);
        if (v.mag_lo(64) > thr_hi_[i]) return false;
    }
    return true;
}

bool Filter::passes_fast(const std::vector<int64_t>& d) const {
    IVec x(d.size());
    for (size_t i = 0; i < d.size(); ++i) x[i] = Int(long(d[i]));
    return passes(x);
}

// ---------------------------------------------- Q' selection + Cholesky

std::optional<std::vector<int>> select_invertible_rows(const SpectralData& sd, const IMat& B) {
    int kappa = B.cols;
    if (kappa == 0) return std::vector<int>{};
    int nrows = int(sd.contracting.size());
    if (nrows < kappa) return std::nullopt;
    // QB: contracting rows applied to B columns
    CIvMat QB(nrows, kappa);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < kappa; ++j) {
            CInterval s;
            for (int t = 0; t < B.rows; ++t) {
                if (B(t, j) == 0) continue;
                s += sd.contracting_rows[i].iv[t] * CInterval::exact(Rat(B(t, j)));
            }
            QB(i, j) = s;
        }
    // greedy: Gaussian elimination over columns, picking the row with the
    // largest certified pivot each step
    std::vector<int> chosen;
    std::vector<bool> used(nrows, false);
    CIvMat W = QB;
    for (int c = 0; c < kappa; ++c) {
        int best = -1;
        Rat best_mag(0);
        for (int i = 0; i < nrows; ++i) {
            if (used[i]) continue;
            Rat m2 = W(i, c).mod_squared().lo;
            if (sgn(m2) > 0 && (best < 0 || m2 > best_mag)) { best = i; best_mag = m2; }
        }
        if (best < 0) return std::nullopt;
        used[best] = true;
        chosen.push_back(best);
        CInterval piv = W(best, c);
        for (int i = 0; i < nrows; ++i) {
            if (used[i]) continue;
            CInterval f = W(i, c) / piv;
            for (int j = c; j < kappa; ++j) W(i, j) -= f * W(best, j);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

std::optional<Rat> min_eig_lower_bound(const IvMat& G) {
    int n = G.rows;
    auto cholesky_ok = [&](const Rat& t) {
        // attempt interval Cholesky of G - t I
        IvMat L(n, n, Interval(Rat(0)));
        for (int j = 0; j < n; ++j) {
            Interval d = G(j, j) - Interval(t);
            for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
            if (!(d.lo > 0)) return false;
            Interval root(sqrt_lower(d.lo, 64), sqrt_upper(d.hi, 64));
            L(j, j) = root;
            for (int i = j + 1; i < n; ++i) {
                Interval s = G(i, j);
                for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
                L(i, j) = s / root;
            }
        }
        return true;
    };
    Rat hi(0);
    for (int i = 0; i < n; ++i)
        if (i == 0 || G(i, i).hi < hi) hi = G(i, i).hi;
    if (sgn(hi) <= 0) return std::nullopt;
    if (!cholesky_ok(Rat(0))) return std::nullopt;  // cannot even certify PSD interior
    Rat lo(0);
    // bisect upward: find the largest verified t
    for (int it = 0; it < 48; ++it) {
        Rat mid = (lo + hi) / 2;
        if (cholesky_ok(mid)) lo = mid;
        else hi = mid;
        lo.canonicalize();
        hi.canonicalize();
    }
    if (sgn(lo) > 0) return lo;
    // PSD certified at 0 but no positive t: fail
    return std::nullopt;
}

std::vector<IVec> kernel_coset_candidates(const IVec& x0, const IMat& B, const Filter& filter) {
    std::vector<IVec> out;
    if (B.cols == 0) {
        if (filter.passes(x0)) out.push_back(x0);
        return out;
    }
    const SpectralData& sd = filter.spectral();
    auto rows = select_invertible_rows(sd, B);
    if (!rows) throw MethodError("no certifiably invertible Q'B (kernel meets expanding space?)");
    int kappa = B.cols;

    // A = Q'B (kappa x kappa complex intervals); c = sum (r*_i + |Q' x0|_i)^2
    CIvMat A(kappa, kappa);
    Rat c(0);
    for (int i = 0; i < kappa; ++i) {
        int ri = (*rows)[i];
        const RowFunctional& row = sd.contracting_rows[ri];
        for (int j = 0; j < kappa; ++j) {
            CInterval s;
            for (int t = 0; t < B.rows; ++t)
                if (B(t, j) != 0) s += row.iv[t] * CInterval::exact(Rat(B(t, j)));
            A(i, j) = s;
        }
        Rat ci = filter.profile().r_star[ri].hi;
        Rat qx = row.eval_iv(x0).mag_hi(64);
        c += (ci + qx) * (ci + qx);
    }
    // G = Re(A^H A), real symmetric PSD on real vectors
    IvMat G(kappa, kappa, Interval(Rat(0)));
    for (int i = 0; i < kappa; ++i)
        for (int j = 0; j < kappa; ++j) {
            Interval s(Rat(0));
            for (int k = 0; k < kappa; ++k)
                s += A(k, i).re * A(k, j).re + A(k, i).im * A(k, j).im;
            G(i, j) = s;
        }
    auto mu = min_eig_lower_bound(G);
    if (!mu) throw MethodError("could not certify a positive smallest-eigenvalue bound");
    Rat R2 = c / *mu;
    Rat R = sqrt_upper(R2, 64);
    Int Rint(R.get_num() / R.get_den());  // floor
    long radius = Rint.fits_slong_p() ? Rint.get_si() : -1;
    double total = radius < 0 ? 1e18 : std::pow(2.0 * radius + 1, kappa);
    if (radius < 0 || total > 4e6)
        throw MethodError("kernel coset ball too large to enumerate");

    // enumerate the box circumscribing the ball
    std::vector<long> t(kappa, -radius);
    IVec x(x0.size());
    for (;;) {
        // x = x0 + B t
        for (size_t r = 0; r < x0.size(); ++r) {
            Int v = x0[r];
            for (int j = 0; j < kappa; ++j)
                if (t[j]) v += B(int(r), j) * Int(t[j]);
            x[r] = v;
        }
        if (filter.passes(x)) out.push_back(x);
        int pos = 0;
        while (pos < kappa && ++t[pos] > radius) {
            t[pos] = -radius;
            ++pos;
        }
        if (pos == kappa) break;
    }
    return out;
}

}  // namespace powerfree

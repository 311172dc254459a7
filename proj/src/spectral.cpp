#include "powerfree/spectral.hpp"

#include <algorithm>

namespace powerfree {

namespace {

// ---- generic Jordan chain machinery over an exact field ----

template <class F>
Mat<F> minus_scalar(const Mat<F>& M, const F& alpha) {
    Mat<F> N = M;
    for (int i = 0; i < M.rows; ++i) N(i, i) = N(i, i) - alpha;
    return N;
}

template <class F>
Mat<F> power(const Mat<F>& M, int e) {
    Mat<F> out = Mat<F>::identity(M.rows);
    for (int i = 0; i < e; ++i) out = out * M;
    return out;
}

template <class F>
std::vector<F> mat_apply(const Mat<F>& M, const std::vector<F>& v) {
    return M.mul_vec(v);
}

template <class F>
int rank_with(const std::vector<std::vector<F>>& cols) {
    if (cols.empty()) return 0;
    Mat<F> m(int(cols[0].size()), int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < cols[j].size(); ++i) m(int(i), int(j)) = cols[j][i];
    return rank_of(m);
}

// Chains for one root class: N = M - alpha I over the field; sizes in
// descending order.  Returns, per block, the chain in column order
// (eigenvector first: col_j = N^{size-1-j} top).
template <class F>
std::vector<std::vector<std::vector<F>>> jordan_chains(const Mat<F>& N,
                                                       const std::vector<int>& sizes_desc) {
    int smax = sizes_desc.empty() ? 0 : sizes_desc[0];
    std::vector<Mat<F>> Npow(smax + 1, Mat<F>::identity(N.rows));
    for (int j = 1; j <= smax; ++j) Npow[j] = Npow[j - 1] * N;
    std::vector<std::vector<std::vector<F>>> kernels(smax + 1);
    for (int j = 1; j <= smax; ++j) kernels[j] = nullspace(Npow[j]);

    struct Top { std::vector<F> v; int size; };
    std::vector<Top> tops;
    for (int s = smax; s >= 1; --s) {
        int needed = int(std::count(sizes_desc.begin(), sizes_desc.end(), s));
        if (needed == 0) continue;
        std::vector<std::vector<F>> avoid;
        if (s >= 2) avoid = kernels[s - 1];
        for (const Top& t : tops)
            avoid.push_back(mat_apply(Npow[t.size - s], t.v));
        int base = rank_with(avoid);
        for (const std::vector<F>& cand : kernels[s]) {
            if (needed == 0) break;
            avoid.push_back(cand);
            int r = rank_with(avoid);
            if (r == base + 1) {
                tops.push_back({cand, s});
                base = r;
                --needed;
            } else {
                avoid.pop_back();
            }
        }
        if (needed != 0) throw std::logic_error("jordan chain selection failed");
    }
    // rebuild in sizes_desc order
    std::vector<std::vector<std::vector<F>>> out;
    for (int s : sizes_desc) {
        for (auto it = tops.begin(); it != tops.end(); ++it) {
            if (it->size != s) continue;
            std::vector<std::vector<F>> chain(s);
            for (int j = 0; j < s; ++j) chain[j] = mat_apply(Npow[s - 1 - j], it->v);
            out.push_back(std::move(chain));
            tops.erase(it);
            break;
        }
    }
    return out;
}

std::complex<double> midpoint(const CInterval& z) {
    return {to_double((z.re.lo + z.re.hi) / 2), to_double((z.im.lo + z.im.hi) / 2)};
}

double halfwidth_bound(const CInterval& z) {
    return to_double(z.re.width() + z.im.width()) + 1e-300;
}

RowFunctional make_row_rational(const QVec& row) {
    RowFunctional rf;
    rf.rational = true;
    rf.exact = row;
    rf.iv.reserve(row.size());
    rf.shadow.reserve(row.size());
    double err = 0;
    for (const Rat& x : row) {
        rf.iv.push_back(CInterval::exact(x));
        double d = to_double(x);
        rf.shadow.push_back({d, 0.0});
        err = std::max(err, std::abs(d) * 1e-15 + 1e-300);
    }
    rf.shadow_err = err;
    return rf;
}

RowFunctional make_row_interval(const std::vector<CInterval>& row) {
    RowFunctional rf;
    rf.rational = false;
    rf.iv = row;
    double err = 0;
    for (const CInterval& z : row) {
        auto m = midpoint(z);
        rf.shadow.push_back(m);
        err = std::max(err, halfwidth_bound(z) + std::abs(m) * 1e-15 + 1e-300);
    }
    rf.shadow_err = err;
    return rf;
}

}  // namespace

CInterval RowFunctional::eval_iv(const IVec& x) const {
    CInterval s;
    for (size_t i = 0; i < iv.size(); ++i) {
        if (x[i] == 0) continue;
        s += iv[i] * CInterval::exact(Rat(x[i]));
    }
    return s;
}

Rat RowFunctional::eval_abs_exact(const IVec& x) const {
    Rat s(0);
    for (size_t i = 0; i < exact.size(); ++i) s += exact[i] * Rat(x[i]);
    return ::abs(s);
}

bool SpectralData::has_unresolved() const {
    for (const JordanBlock& b : blocks)
        if (b.cls == ModulusClass::Unresolved) return true;
    return false;
}

CInterval SpectralData::eigenvalue_box(int block_id) const {
    const JordanBlock& b = blocks[block_id];
    return root_boxes[b.factor][b.root].box();
}

SpectralData spectral_data(const IMat& M, const Rat& precision, const Rat& min_width) {
    SpectralData sd;
    sd.M = M;
    sd.n = M.rows;
    sd.charpoly = char_poly(M);

    auto facs = factor_poly(sd.charpoly);
    for (auto& [q, m] : facs) {
        sd.factors.push_back(q);
        sd.multiplicity.push_back(m);
    }

    int nf = int(sd.factors.size());
    sd.root_boxes.resize(nf);
    sd.fields.resize(nf);
    QMat Mq = to_rational(M);

    // roots + modulus classification (with refinement)
    std::vector<std::vector<ModulusClass>> cls(nf);
    for (int f = 0; f < nf; ++f) {
        const ZPoly& q = sd.factors[f];
        sd.root_boxes[f] = isolate_all_roots(q, precision);
        if (q.deg() >= 2) sd.fields[f] = std::make_shared<NumberField>(q);
        for (RootEnclosure& r : sd.root_boxes[f]) {
            ModulusClass c = ModulusClass::Unresolved;
            for (;;) {
                if (r.exact) {
                    Rat a = ::abs(r.re.lo);
                    c = a < 1 ? ModulusClass::Contracting
                              : (a > 1 ? ModulusClass::Expanding : ModulusClass::Unresolved);
                    break;
                }
                Interval m2 = r.box().mod_squared();
                if (m2.hi < 1) { c = ModulusClass::Contracting; break; }
                if (m2.lo > 1) { c = ModulusClass::Expanding; break; }
                Rat w = (r.re.width() + r.im.width());
                if (w <= min_width) break;  // stays Unresolved
                Rat target = w / 256;
                if (target < min_width) target = min_width;
                refine_root(q, r, target);
            }
            cls[f].push_back(c);
        }
    }

    // Jordan block sizes per root of each factor, via exact rational ranks
    std::vector<std::vector<int>> sizes_desc(nf);
    for (int f = 0; f < nf; ++f) {
        int mult = sd.multiplicity[f];
        int d = sd.factors[f].deg();
        if (mult == 1) {
            sizes_desc[f] = {1};
            continue;
        }
        QMat Nq = eval_at(sd.factors[f].to_q(), Mq);
        std::vector<int> nullity{0};
        QMat pw = QMat::identity(sd.n);
        for (int j = 1; j <= mult; ++j) {
            pw = pw * Nq;
            nullity.push_back(sd.n - rank_of(pw));
            if (nullity[j] == nullity[j - 1]) { nullity.push_back(nullity[j]); break; }
        }
        while (int(nullity.size()) <= mult + 1) nullity.push_back(nullity.back());
        std::vector<int> atleast(mult + 2, 0);
        for (int j = 1; j <= mult; ++j) {
            int diff = nullity[j] - nullity[j - 1];
            assert(diff % d == 0);
            atleast[j] = diff / d;
        }
        for (int j = mult; j >= 1; --j) {
            int exact_count = atleast[j] - atleast[j + 1];
            for (int t = 0; t < exact_count; ++t) sizes_desc[f].push_back(j);
        }
        std::sort(sizes_desc[f].rbegin(), sizes_desc[f].rend());
        int total = 0;
        for (int s : sizes_desc[f]) total += s;
        assert(total == mult);
    }

    // chains (right for P, left for bound rows), per factor
    struct FactorChains {
        // rational factor: chains over Q; else over the number field
        std::vector<std::vector<QVec>> right_q, left_q;
        std::vector<std::vector<std::vector<NFElem>>> right_nf, left_nf;
    };
    std::vector<FactorChains> fc(nf);
    for (int f = 0; f < nf; ++f) {
        const ZPoly& q = sd.factors[f];
        if (q.deg() == 1) {
            Rat alpha = Rat(-q.coeff(0)) / Rat(q.coeff(1));
            QMat N = Mq;
            for (int i = 0; i < sd.n; ++i) N(i, i) -= alpha;
            fc[f].right_q = jordan_chains(N, sizes_desc[f]);
            fc[f].left_q = jordan_chains(N.transpose(), sizes_desc[f]);
        } else {
            const NumberField* F = sd.fields[f].get();
            NFElem alpha = NFElem::generator(F);
            Mat<NFElem> N(sd.n, sd.n);
            for (int i = 0; i < sd.n; ++i)
                for (int j = 0; j < sd.n; ++j) {
                    N(i, j) = NFElem(Rat(M(i, j)));
                    N(i, j).field = F;
                    if (i == j) N(i, j) -= alpha;
                }
            fc[f].right_nf = jordan_chains(N, sizes_desc[f]);
            Mat<NFElem> NT = N.transpose();
            fc[f].left_nf = jordan_chains(NT, sizes_desc[f]);
        }
        // normalize each left chain: head's first nonzero entry becomes 1
        if (q.deg() == 1) {
            for (auto& chain : fc[f].left_q) {
                const QVec& head = chain.back();  // chains are foot-first
                Rat pivot(0);
                for (const Rat& x : head)
                    if (sgn(x) != 0) { pivot = x; break; }
                assert(sgn(pivot) != 0);
                for (auto& vec : chain)
                    for (Rat& x : vec) x /= pivot;
            }
        } else {
            for (auto& chain : fc[f].left_nf) {
                const std::vector<NFElem>& head = chain.back();
                NFElem pivot;
                for (const NFElem& x : head)
                    if (!x.is_zero()) { pivot = x; break; }
                NFElem pinv = pivot.inverse();
                for (auto& vec : chain)
                    for (NFElem& x : vec) x *= pinv;
            }
        }
    }

    // assemble blocks in deterministic order: factor, then root, then block
    int col = 0;
    for (int f = 0; f < nf; ++f) {
        for (int r = 0; r < int(sd.root_boxes[f].size()); ++r) {
            for (int b = 0; b < int(sizes_desc[f].size()); ++b) {
                JordanBlock jb;
                jb.factor = f;
                jb.root = r;
                jb.size = sizes_desc[f][b];
                jb.col_start = col;
                jb.cls = cls[f][r];
                col += jb.size;
                sd.blocks.push_back(jb);
            }
        }
    }
    assert(col == sd.n);
    sd.block_of_index.assign(sd.n, 0);
    for (int b = 0; b < int(sd.blocks.size()); ++b)
        for (int i = 0; i < sd.blocks[b].size; ++i)
            sd.block_of_index[sd.blocks[b].col_start + i] = b;

    // P, J enclosures + contracting/expanding indices + contracting rows
    auto embed_all = [&]() {
        sd.P = CIvMat(sd.n, sd.n);
        sd.J = CIvMat(sd.n, sd.n);
        sd.contracting.clear();
        sd.expanding.clear();
        sd.contracting_rows.clear();
        sd.contracting_lambda.clear();
        for (const JordanBlock& jb : sd.blocks) {
            const RootEnclosure& root = sd.root_boxes[jb.factor][jb.root];
            CInterval lambda = root.box();
            int which = 0;
            {
                // ordinal of this block among its factor's blocks (chain index)
                int cnt = 0;
                for (const JordanBlock& other : sd.blocks) {
                    if (&other == &jb) break;
                    if (other.factor == jb.factor && other.root == jb.root) ++cnt;
                }
                which = cnt;
            }
            for (int j = 0; j < jb.size; ++j) {
                int c = jb.col_start + j;
                sd.J(c, c) = lambda;
                if (j + 1 < jb.size) sd.J(c, c + 1) = CInterval::exact(Rat(1));
                // column = right chain vector j
                if (sd.factors[jb.factor].deg() == 1) {
                    const QVec& v = fc[jb.factor].right_q[which][j];
                    for (int i = 0; i < sd.n; ++i) sd.P(i, c) = CInterval::exact(v[i]);
                } else {
                    const auto& v = fc[jb.factor].right_nf[which][j];
                    for (int i = 0; i < sd.n; ++i) sd.P(i, c) = v[i].embed(lambda);
                }
            }
            if (jb.cls == ModulusClass::Contracting) {
                for (int j = 0; j < jb.size; ++j) {
                    sd.contracting.push_back(jb.col_start + j);
                    sd.contracting_lambda.push_back(lambda);
                    // left chain rows head-first = reverse of foot-first chain
                    if (sd.factors[jb.factor].deg() == 1) {
                        const auto& chain = fc[jb.factor].left_q[which];
                        sd.contracting_rows.push_back(
                            make_row_rational(chain[jb.size - 1 - j]));
                    } else {
                        const auto& chain = fc[jb.factor].left_nf[which];
                        std::vector<CInterval> row(sd.n);
                        for (int i = 0; i < sd.n; ++i)
                            row[i] = chain[jb.size - 1 - j][i].embed(lambda);
                        sd.contracting_rows.push_back(make_row_interval(row));
                    }
                }
            } else if (jb.cls == ModulusClass::Expanding) {
                for (int j = 0; j < jb.size; ++j) sd.expanding.push_back(jb.col_start + j);
            }
        }
    };

    embed_all();
    // interval inverse with refinement when pivots straddle zero
    for (int attempt = 0;; ++attempt) {
        auto inv = interval_inverse(sd.P);
        if (inv) {
            sd.Pinv = *inv;
            break;
        }
        if (attempt >= 8) throw SpectralError("interval inversion of P failed to certify");
        for (int f = 0; f < nf; ++f)
            for (RootEnclosure& r : sd.root_boxes[f]) {
                Rat w = r.re.width() + r.im.width();
                if (sgn(w) == 0) continue;
                refine_root(sd.factors[f], r, std::max(Rat(w / 1024), min_width));
            }
        embed_all();
    }
    return sd;
}

bool apply_row_hints(SpectralData& sd, const std::vector<QVec>& hints) {
    size_t m = sd.contracting.size();
    if (hints.empty() || hints.size() != m) return false;
    for (const QVec& h : hints)
        if (int(h.size()) != sd.n) return false;
    // all contracting eigenvalues must be exact rationals
    std::vector<Rat> lambdas;  // per contracting block, in block order
    std::vector<int> sizes;
    for (const JordanBlock& b : sd.blocks) {
        if (b.cls != ModulusClass::Contracting) continue;
        const RootEnclosure& r = sd.root_boxes[b.factor][b.root];
        if (!r.exact) return false;
        lambdas.push_back(r.re.lo);
        sizes.push_back(b.size);
    }
    // independence
    {
        QMat hm(int(m), sd.n);
        for (size_t i = 0; i < m; ++i)
            for (int j = 0; j < sd.n; ++j) hm(int(i), j) = hints[i][j];
        if (rank_of(hm) != int(m)) return false;
    }
    QMat Mq = to_rational(sd.M);
    auto row_times_M = [&](const QVec& r) {
        QVec out(sd.n, Rat(0));
        for (int j = 0; j < sd.n; ++j)
            for (int i = 0; i < sd.n; ++i) out[j] += r[i] * Mq(i, j);
        return out;
    };
    // successor structure per candidate eigenvalue: succ[i] = index j with
    // hint_i M = lambda hint_i + hint_j, or -1 when hint_i M = lambda hint_i
    std::vector<Rat> distinct;
    for (const Rat& l : lambdas)
        if (std::find(distinct.begin(), distinct.end(), l) == distinct.end())
            distinct.push_back(l);
    struct ChainInfo { Rat lambda; std::vector<int> rows; };
    std::vector<int> succ(m, -2);
    std::vector<Rat> row_lambda(m);
    std::vector<bool> is_succ(m, false);
    for (size_t i = 0; i < m; ++i) {
        QVec rm = row_times_M(hints[i]);
        bool matched = false;
        for (const Rat& l : distinct) {
            QVec res(sd.n);
            bool zero = true;
            for (int j = 0; j < sd.n; ++j) {
                res[j] = rm[j] - l * hints[i][j];
                zero = zero && sgn(res[j]) == 0;
            }
            if (zero) {
                succ[i] = -1;
                row_lambda[i] = l;
                matched = true;
                break;
            }
            for (size_t j = 0; j < m && !matched; ++j) {
                if (j == i) continue;
                if (res == hints[j]) {
                    succ[i] = int(j);
                    row_lambda[i] = l;
                    is_succ[j] = true;
                    matched = true;
                }
            }
            if (matched) break;
        }
        if (!matched) return false;
    }
    // chains start at rows that are nobody's successor
    std::vector<ChainInfo> chains;
    std::vector<bool> used(m, false);
    for (size_t i = 0; i < m; ++i) {
        if (is_succ[i]) continue;
        ChainInfo c;
        c.lambda = row_lambda[i];
        int cur = int(i);
        while (cur >= 0) {
            if (used[cur] || row_lambda[cur] != c.lambda) return false;
            used[cur] = true;
            c.rows.push_back(cur);
            cur = succ[cur];
        }
        chains.push_back(std::move(c));
    }
    for (bool u : used)
        if (!u) return false;
    // match chains to blocks: multiset of (lambda, size) must agree
    std::vector<bool> chain_used(chains.size(), false);
    std::vector<int> block_chain;  // per contracting block: chain index
    for (size_t b = 0; b < sizes.size(); ++b) {
        int found = -1;
        for (size_t c = 0; c < chains.size(); ++c) {
            if (chain_used[c]) continue;
            if (chains[c].lambda == lambdas[b] && int(chains[c].rows.size()) == sizes[b]) {
                found = int(c);
                break;
            }
        }
        if (found < 0) return false;
        chain_used[found] = true;
        block_chain.push_back(found);
    }
    // verified: install rows (head first within each chain)
    size_t idx = 0;
    for (size_t b = 0; b < sizes.size(); ++b) {
        const ChainInfo& c = chains[block_chain[b]];
        for (int pos = 0; pos < sizes[b]; ++pos) {
            RowFunctional rf;
            rf.rational = true;
            rf.exact = hints[c.rows[pos]];
            rf.iv.reserve(sd.n);
            rf.shadow.reserve(sd.n);
            double err = 0;
            for (const Rat& x : rf.exact) {
                rf.iv.push_back(CInterval::exact(x));
                double d = to_double(x);
                rf.shadow.push_back({d, 0.0});
                err = std::max(err, std::abs(d) * 1e-15 + 1e-300);
            }
            rf.shadow_err = err;
            sd.contracting_rows[idx] = std::move(rf);
            ++idx;
        }
    }
    return true;
}

}  // namespace powerfree

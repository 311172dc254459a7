#include "powerfree/templates.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_set>

namespace powerfree {

int64_t Template::delta_l1() const {
    int64_t best = 0;
    for (const auto& d : gaps) {
        int64_t s = 0;
        for (int64_t x : d) s += x < 0 ? -x : x;
        best = std::max(best, s);
    }
    return best;
}

std::string Template::render(const Alphabet& a) const {
    std::string out = "[";
    for (size_t i = 0; i < borders.size(); ++i) {
        if (i) out += ", ";
        out += borders[i] < 0 ? "e" : a.letters[borders[i]];
    }
    for (const auto& d : gaps) {
        out += "; (";
        for (size_t j = 0; j < d.size(); ++j) {
            if (j) out += ",";
            out += std::to_string(d[j]);
        }
        out += ")";
    }
    return out + "]";
}

size_t TemplateHash::operator()(const Template& t) const {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(uint64_t(t.k));
    for (int16_t b : t.borders) mix(uint64_t(uint16_t(b)) + 7);
    for (const auto& d : t.gaps)
        for (int64_t x : d) mix(uint64_t(x) * 2654435761u + 11);
    return h;
}

Template trivial_template(int k, int n) {
    assert(k >= 2);
    Template t;
    t.k = k;
    t.borders.assign(k + 1, -1);
    t.gaps.assign(k - 1, std::vector<int64_t>(n, 0));
    return t;
}

// ------------------------------------------------------------- realizes

namespace {

struct SplitSearcher {
    const Word& w;
    const Template& t;
    int n;  // alphabet size of t's gaps
    std::vector<std::vector<int32_t>> pref;  // pref[i][c] counts in w[0..i)

    SplitSearcher(const Word& w_, const Template& t_, int n_) : w(w_), t(t_), n(n_) {
        pref.assign(w.size() + 1, std::vector<int32_t>(n, 0));
        for (size_t i = 0; i < w.size(); ++i) {
            pref[i + 1] = pref[i];
            pref[i + 1][uint8_t(w[i])]++;
        }
    }

    bool gap_matches(int m, int b1, int e1, int b2, int e2) const {
        for (int c = 0; c < n; ++c)
            if (int64_t(pref[e2][c] - pref[b2][c]) - int64_t(pref[e1][c] - pref[b1][c]) !=
                t.gaps[m][c])
                return false;
        return true;
    }

    // DFS over border placements and cuts; blocks as short as possible first
    bool search(int border_idx, int cursor, std::vector<int>& bb, std::vector<int>& be,
                Realization& out) const {
        int k = t.k;
        // place border `border_idx` (0-based among k+1 borders) at cursor
        int16_t b = t.borders[border_idx];
        if (b >= 0) {
            if (cursor >= int(w.size()) || uint8_t(w[cursor]) != uint8_t(b)) return false;
            ++cursor;
        }
        if (border_idx == k) {
            if (cursor != int(w.size())) return false;
            out.word = w;
            out.block_begin = bb;
            out.block_end = be;
            return true;
        }
        // block border_idx spans [cursor, cut)
        for (int cut = cursor; cut <= int(w.size()); ++cut) {
            bb[border_idx] = cursor;
            be[border_idx] = cut;
            if (border_idx >= 1 &&
                !gap_matches(border_idx - 1, bb[border_idx - 1], be[border_idx - 1], cursor, cut))
                continue;
            if (search(border_idx + 1, cut, bb, be, out)) return true;
        }
        return false;
    }
};

}  // namespace

std::optional<Realization> realizes(const Word& w, const Template& t) {
    int n = int(t.gaps.empty() ? 0 : t.gaps[0].size());
    SplitSearcher ss(w, t, n);
    std::vector<int> bb(t.k), be(t.k);
    Realization out;
    if (ss.search(0, 0, bb, be, out)) return out;
    return std::nullopt;
}

bool validate_realization(const Realization& r, const Template& t) {
    if (int(r.block_begin.size()) != t.k) return false;
    int n = int(t.gaps.empty() ? 0 : t.gaps[0].size());
    int cursor = 0;
    for (int i = 0; i <= t.k; ++i) {
        if (t.borders[i] >= 0) {
            if (cursor >= int(r.word.size()) || uint8_t(r.word[cursor]) != uint8_t(t.borders[i]))
                return false;
            ++cursor;
        }
        if (i == t.k) break;
        if (r.block_begin[i] != cursor || r.block_end[i] < cursor ||
            r.block_end[i] > int(r.word.size()))
            return false;
        cursor = r.block_end[i];
    }
    if (cursor != int(r.word.size())) return false;
    for (int m = 0; m + 1 < t.k; ++m) {
        IVec p1 = parikh(r.word.substr(r.block_begin[m], r.block_end[m] - r.block_begin[m]), n);
        IVec p2 = parikh(
            r.word.substr(r.block_begin[m + 1], r.block_end[m + 1] - r.block_begin[m + 1]), n);
        for (int c = 0; c < n; ++c)
            if (p2[c] - p1[c] != t.gaps[m][c]) return false;
    }
    return true;
}

bool in_filter(const Template& t, const Filter& filter) {
    for (const auto& d : t.gaps)
        if (!filter.passes_fast(d)) return false;
    return true;
}

// ---------------------------------------------------------- ParentEngine

ParentEngine::ParentEngine(const Morphism& g, const Filter& filter, bool letter_borders_only)
    : g_(&g), filter_(&filter), smith_(smith(g.incidence)), nt_(g.target->size()),
      letter_only_(letter_borders_only) {
    options_per_border_.resize(nt_ + 1);
    for (int cb = -1; cb < nt_; ++cb) options_per_border_[cb + 1] = options_for(int16_t(cb));
}

std::vector<ParentEngine::Option> ParentEngine::options_for(int16_t child_border) const {
    std::vector<Option> out;
    auto psi32 = [&](const Word& w) {
        std::vector<int64_t> v(nt_, 0);
        for (char c : w) v[uint8_t(c)]++;
        return v;
    };
    if (child_border < 0) {
        if (!letter_only_)
            out.push_back({int16_t(-1), std::vector<int64_t>(nt_, 0), std::vector<int64_t>(nt_, 0),
                           Word(), Word()});
        for (int a = 0; a < g_->source->size(); ++a) {
            const Word& img = g_->rules[a];
            std::unordered_set<std::string> seen;
            for (size_t cut = 0; cut <= img.size(); ++cut) {
                Word p = img.substr(0, cut), s = img.substr(cut);
                auto pp = psi32(p);
                std::string key(reinterpret_cast<const char*>(pp.data()), pp.size() * 8);
                if (!seen.insert(key).second) continue;
                out.push_back({int16_t(a), pp, psi32(s), p, s});
            }
        }
    } else {
        for (int a = 0; a < g_->source->size(); ++a) {
            const Word& img = g_->rules[a];
            std::unordered_set<std::string> seen;
            for (size_t pos = 0; pos < img.size(); ++pos) {
                if (uint8_t(img[pos]) != uint8_t(child_border)) continue;
                Word p = img.substr(0, pos), s = img.substr(pos + 1);
                auto pp = psi32(p);
                std::string key(reinterpret_cast<const char*>(pp.data()), pp.size() * 8);
                if (!seen.insert(key).second) continue;
                out.push_back({int16_t(a), pp, psi32(s), p, s});
            }
        }
    }
    return out;
}

const std::vector<std::vector<int64_t>>& ParentEngine::candidates_for(const IVec& v) const {
    std::string key;
    key.reserve(v.size() * 16);
    for (const Int& x : v) key += x.get_str() + ",";
    auto it = coset_memo_.find(key);
    if (it != coset_memo_.end()) return *it->second;
    auto result = std::make_shared<std::vector<std::vector<int64_t>>>();
    auto sol = solve_diophantine(smith_, v);
    if (sol) {
        IVec x0 = reduce_particular(sol->x0, sol->kernel_basis);
        for (const IVec& x : kernel_coset_candidates(x0, sol->kernel_basis, *filter_)) {
            std::vector<int64_t> xi(x.size());
            for (size_t i = 0; i < x.size(); ++i) {
                if (!x[i].fits_slong_p()) throw std::overflow_error("gap candidate overflow");
                xi[i] = x[i].get_si();
            }
            result->push_back(std::move(xi));
        }
    }
    coset_memo_[key] = result;
    return *result;
}

std::vector<ParentEdge> ParentEngine::parents(const Template& child) const {
    const int k = child.k;
    const int npos = k + 1;
    const int ngaps = k - 1;
    const int ns = g_->source->size();

    // transformed gap targets: yd[m] = Uinv * d_m (child alphabet side)
    std::vector<std::vector<int64_t>> yd(ngaps, std::vector<int64_t>(nt_, 0));
    std::vector<int64_t> uinv_flat(size_t(nt_) * nt_);
    for (int i = 0; i < nt_; ++i)
        for (int j = 0; j < nt_; ++j) {
            const Int& e = smith_.Uinv(i, j);
            if (!e.fits_slong_p()) throw std::overflow_error("Uinv entry overflow");
            uinv_flat[size_t(i) * nt_ + j] = e.get_si();
        }
    auto uinv_mul = [&](const std::vector<int64_t>& v, std::vector<int64_t>& out) {
        for (int i = 0; i < nt_; ++i) {
            int64_t s = 0;
            for (int j = 0; j < nt_; ++j) s += uinv_flat[size_t(i) * nt_ + j] * v[j];
            out[i] = s;
        }
    };
    for (int m = 0; m < ngaps; ++m) {
        std::vector<int64_t> d(nt_);
        for (int c = 0; c < nt_; ++c) d[c] = child.gaps[m][c];
        uinv_mul(d, yd[m]);
    }

    // diagonal structure
    int dim = std::min(smith_.D.rows, smith_.D.cols);
    std::vector<int64_t> diag(nt_, 0);
    for (int i = 0; i < nt_ && i < dim; ++i) {
        const Int& e = smith_.D(i, i);
        diag[i] = e.fits_slong_p() ? e.get_si() : -1;
        if (diag[i] < 0) throw std::overflow_error("Smith diagonal overflow");
    }

    // option tables per position, from the child's borders
    std::vector<const std::vector<Option>*> opts(npos);
    for (int i = 0; i < npos; ++i) opts[i] = &options_per_border_[child.borders[i] + 1];

    // per-option transformed contributions
    struct TOption {
        const Option* o;
        std::vector<int64_t> up, us;  // Uinv * psi_p, Uinv * psi_s
    };
    std::vector<std::vector<TOption>> topts(npos);
    for (int i = 0; i < npos; ++i) {
        for (const Option& o : *opts[i]) {
            TOption to;
            to.o = &o;
            to.up.resize(nt_);
            to.us.resize(nt_);
            uinv_mul(o.psi_p, to.up);
            uinv_mul(o.psi_s, to.us);
            topts[i].push_back(std::move(to));
        }
    }

    // meet index for the final position: key = (exact at zero rows, residues)
    auto final_key = [&](const std::vector<int64_t>& up_contrib) {
        std::string key;
        key.reserve(nt_ * 9);
        for (int i = 0; i < nt_; ++i) {
            int64_t v;
            if (diag[i] == 0) v = up_contrib[i];
            else if (diag[i] > 1) v = ((up_contrib[i] % diag[i]) + diag[i]) % diag[i];
            else continue;
            key.append(reinterpret_cast<const char*>(&v), 8);
            key.push_back(char(i));
        }
        return key;
    };
    std::unordered_map<std::string, std::vector<int>> final_index;
    for (size_t oi = 0; oi < topts[npos - 1].size(); ++oi)
        final_index[final_key(topts[npos - 1][oi].up)].push_back(int(oi));

    // DFS over positions; gap m completes at position m+2
    std::vector<ParentEdge> edges;
    std::unordered_set<Template, TemplateHash> emitted;
    std::vector<const TOption*> chosen(npos, nullptr);
    // accumulated y-vector per gap: y_m = yd[m] + Uinv*(psi_s[m] + psi_p[m+1] - psi_s[m+1] - psi_p[m+2])
    std::vector<std::vector<int64_t>> yacc(ngaps, std::vector<int64_t>(nt_, 0));
    std::vector<const std::vector<std::vector<int64_t>>*> gap_cands(ngaps, nullptr);

    // check solvability of completed gap (all rows), return candidate set
    auto resolve_gap = [&](int m) -> const std::vector<std::vector<int64_t>>* {
        const std::vector<int64_t>& y = yacc[m];
        for (int i = 0; i < nt_; ++i) {
            if (diag[i] == 0) {
                if (y[i] != 0) return nullptr;
            } else if (diag[i] > 1) {
                if (y[i] % diag[i] != 0) return nullptr;
            }
        }
        // reconstruct v = U * y ... cheaper: v = d_m + contributions; rebuild
        std::vector<int64_t> v(nt_);
        for (int c = 0; c < nt_; ++c)
            v[c] = child.gaps[m][c] + chosen[m]->o->psi_s[c] + chosen[m + 1]->o->psi_p[c] -
                   chosen[m + 1]->o->psi_s[c] - chosen[m + 2]->o->psi_p[c];
        IVec vi(nt_);
        for (int c = 0; c < nt_; ++c) vi[c] = Int(long(v[c]));
        const auto& cands = candidates_for(vi);
        return cands.empty() ? nullptr : &cands;
    };

    // emit cartesian product over gap candidate sets
    auto emit = [&]() {
        Template base;
        base.k = k;
        base.borders.resize(npos);
        for (int i = 0; i < npos; ++i) base.borders[i] = chosen[i]->o->border;
        base.gaps.assign(ngaps, {});
        std::vector<size_t> pick(ngaps, 0);
        for (;;) {
            for (int m = 0; m < ngaps; ++m) base.gaps[m] = (*gap_cands[m])[pick[m]];
            if (emitted.insert(base).second) {
                ParentEdge e;
                e.parent = base;
                e.splits.reserve(npos);
                for (int i = 0; i < npos; ++i) e.splits.push_back({chosen[i]->o->p, chosen[i]->o->s});
                edges.push_back(std::move(e));
            }
            int pos = 0;
            while (pos < ngaps && ++pick[pos] >= gap_cands[pos]->size()) {
                pick[pos] = 0;
                ++pos;
            }
            if (pos == ngaps) break;
        }
    };

    std::vector<int64_t> tmp(nt_);
    auto dfs = [&](auto&& self, int pos) -> void {
        if (pos == npos - 1) {
            // meet: the final position must zero out gap ngaps-1
            // required key from yacc[ngaps-1] (which still misses -up of final)
            std::string need;
            need.reserve(nt_ * 9);
            for (int i = 0; i < nt_; ++i) {
                int64_t v;
                if (diag[i] == 0) v = yacc[ngaps - 1][i];
                else if (diag[i] > 1)
                    v = ((yacc[ngaps - 1][i] % diag[i]) + diag[i]) % diag[i];
                else continue;
                need.append(reinterpret_cast<const char*>(&v), 8);
                need.push_back(char(i));
            }
            auto it = final_index.find(need);
            if (it == final_index.end()) return;
            for (int oi : it->second) {
                chosen[pos] = &topts[pos][oi];
                for (int i = 0; i < nt_; ++i) yacc[ngaps - 1][i] -= chosen[pos]->up[i];
                auto* cands = resolve_gap(ngaps - 1);
                if (cands) {
                    gap_cands[ngaps - 1] = cands;
                    emit();
                }
                for (int i = 0; i < nt_; ++i) yacc[ngaps - 1][i] += chosen[pos]->up[i];
            }
            return;
        }
        for (const TOption& to : topts[pos]) {
            chosen[pos] = &to;
            // update accumulators: position pos contributes
            //   +us to gap pos, +up to gap pos-1, -us to gap pos-1, -up to gap pos-2
            if (pos < ngaps)
                for (int i = 0; i < nt_; ++i) yacc[pos][i] = yd[pos][i] + to.us[i];
            if (pos - 1 >= 0 && pos - 1 < ngaps)
                for (int i = 0; i < nt_; ++i) yacc[pos - 1][i] += to.up[i] - to.us[i];
            if (pos - 2 >= 0 && pos - 2 < ngaps)
                for (int i = 0; i < nt_; ++i) yacc[pos - 2][i] -= to.up[i];

            bool ok = true;
            if (pos - 2 >= 0 && pos - 2 < ngaps && pos != npos - 1) {
                // gap pos-2 complete (only reached when pos < npos-1)
                auto* cands = resolve_gap(pos - 2);
                if (!cands) ok = false;
                else gap_cands[pos - 2] = cands;
            }
            if (ok) self(self, pos + 1);

            if (pos - 1 >= 0 && pos - 1 < ngaps)
                for (int i = 0; i < nt_; ++i) yacc[pos - 1][i] -= to.up[i] - to.us[i];
            if (pos - 2 >= 0 && pos - 2 < ngaps)
                for (int i = 0; i < nt_; ++i) yacc[pos - 2][i] += to.up[i];
        }
    };
    dfs(dfs, 0);
    return edges;
}

// ----------------------------------------------------------- threshold

int64_t scan_threshold(const std::vector<Template>& S, const Morphism& h, int k) {
    assert(!S.empty());
    int64_t delta = h.max_image_len();
    int64_t best = 0;
    for (const Template& t : S)
        best = std::max(best, int64_t(k) * int64_t(k - 1) * t.delta_l1() / 2);
    return best + int64_t(k) * (delta + 1) + 1;
}

// ------------------------------------------------------------- closure

ClosureResult ancestor_closure(const std::vector<Template>& seeds, const ParentEngine& engine,
                               size_t cap) {
    ClosureResult out;
    std::unordered_map<Template, size_t, TemplateHash> index;
    for (const Template& s : seeds) {
        if (index.count(s)) continue;
        index[s] = out.all.size();
        out.all.push_back(s);
    }
    out.seed_count = out.all.size();
    size_t next = 0;
    while (next < out.all.size()) {
        if (out.all.size() > cap) {
            out.capped = true;
            return out;
        }
        Template current = out.all[next];  // copy: vector may grow
        std::vector<ParentEdge> edges = engine.parents(current);
        if (next == 0) {
            size_t proper = 0;
            for (const ParentEdge& e : edges)
                if (!(e.parent == current)) ++proper;
            out.parents_of_first_seed = proper;
        }
        for (ParentEdge& e : edges) {
            auto it = index.find(e.parent);
            if (it != index.end()) continue;
            size_t id = out.all.size();
            index[e.parent] = id;
            out.all.push_back(e.parent);
            out.edge[id] = {next, std::move(e.splits)};
        }
        ++next;
    }
    return out;
}

// ---------------------------------------------------------------- scan

namespace {

// enumerate every split signature of w as a k-template and look it up
struct SignatureScanner {
    const Word& w;
    int k, n;
    const std::unordered_map<Template, size_t, TemplateHash>& index;
    std::vector<std::vector<int32_t>> pref;
    Template sig;
    std::vector<int> bb, be;
    // results
    bool found_any = false;
    size_t best_index = 0;
    Realization best_real;
    size_t seed_count;
    bool found_seed = false;

    SignatureScanner(const Word& w_, int k_, int n_,
                     const std::unordered_map<Template, size_t, TemplateHash>& idx, size_t seeds)
        : w(w_), k(k_), n(n_), index(idx), seed_count(seeds) {
        pref.assign(w.size() + 1, std::vector<int32_t>(n, 0));
        for (size_t i = 0; i < w.size(); ++i) {
            pref[i + 1] = pref[i];
            pref[i + 1][uint8_t(w[i])]++;
        }
        sig.k = k;
        sig.borders.assign(k + 1, -1);
        sig.gaps.assign(k - 1, std::vector<int64_t>(n, 0));
        bb.assign(k, 0);
        be.assign(k, 0);
    }

    void record(size_t idx) {
        if (found_seed) return;
        // realizations with every block empty do not witness anything: they
        // descend to the empty word
        bool has_block = false;
        for (int i = 0; i < k; ++i) has_block = has_block || be[i] > bb[i];
        if (!has_block) return;
        Realization r;
        r.word = w;
        r.block_begin = bb;
        r.block_end = be;
        if (!found_any || idx < seed_count) {
            best_index = idx;
            best_real = r;
        }
        found_any = true;
        if (idx < seed_count) found_seed = true;
    }

    void dfs(int border_idx, int cursor) {
        if (found_seed) return;
        // choice 1: border = epsilon
        sig.borders[border_idx] = -1;
        step(border_idx, cursor, cursor);
        // choice 2: border = letter at cursor
        if (cursor < int(w.size())) {
            sig.borders[border_idx] = int16_t(uint8_t(w[cursor]));
            step(border_idx, cursor, cursor + 1);
        }
    }

    void step(int border_idx, int border_pos, int cursor) {
        (void)border_pos;
        if (border_idx == k) {
            if (cursor != int(w.size())) return;
            auto it = index.find(sig);
            if (it != index.end()) record(it->second);
            return;
        }
        for (int cut = cursor; cut <= int(w.size()); ++cut) {
            bb[border_idx] = cursor;
            be[border_idx] = cut;
            if (border_idx >= 1) {
                for (int c = 0; c < n; ++c)
                    sig.gaps[border_idx - 1][c] =
                        int64_t(pref[cut][c] - pref[cursor][c]) -
                        int64_t(pref[be[border_idx - 1]][c] - pref[bb[border_idx - 1]][c]);
            }
            dfs(border_idx + 1, cut);
            if (found_seed) return;
        }
    }
};

}  // namespace

std::optional<ScanHit> scan_factors(const Morphism& h, const std::vector<Template>& S,
                                    size_t seed_count, int64_t s, size_t* scanned) {
    int k = S.empty() ? 2 : S[0].k;
    int n = h.source->size();
    std::unordered_map<Template, size_t, TemplateHash> index;
    for (size_t i = 0; i < S.size(); ++i)
        if (!index.count(S[i])) index[S[i]] = i;

    std::vector<Word> words = factors_up_to(h, int(s));
    if (scanned) *scanned = words.size();
    std::optional<ScanHit> best;
    for (const Word& w : words) {
        SignatureScanner sc(w, k, n, index, seed_count);
        sc.dfs(0, 0);
        if (sc.found_seed) {
            ScanHit hit{w, sc.best_index, sc.best_real};
            return hit;
        }
        if (sc.found_any && !best) best = ScanHit{w, sc.best_index, sc.best_real};
    }
    return best;
}

// --------------------------------------------------------------- decide

namespace {

// child realization from a parent realization through one morphism step
Realization descend_once(const Realization& parent_real, const Template& parent,
                         const Template& child, const std::vector<std::pair<Word, Word>>& splits,
                         const Morphism& g) {
    int k = parent.k;
    Realization out;
    Word wc;
    std::vector<int> bb(k), be(k);
    for (int i = 0; i <= k; ++i) {
        // border a_i of the child (from splits: g(a'_i) = p_i a_i s_i)
        if (i > 0) {
            // close block i-1 begun after border i-1: blocks are s_i h(w_i) p_{i+1}
        }
        if (i < k) {
            // child border i
            if (child.borders[i] >= 0) wc += char(child.borders[i]);
            int start = int(wc.size());
            wc += splits[i].second;  // s_i
            Word block = parent_real.word.substr(parent_real.block_begin[i],
                                                 parent_real.block_end[i] -
                                                     parent_real.block_begin[i]);
            wc += g.apply(block);
            wc += splits[i + 1].first;  // p_{i+1}
            bb[i] = start;
            be[i] = int(wc.size());
        } else {
            if (child.borders[i] >= 0) wc += char(child.borders[i]);
        }
    }
    out.word = wc;
    out.block_begin = bb;
    out.block_end = be;
    return out;
}

}  // namespace

DecisionOutcome decide_templates(const std::vector<Template>& seeds, const Morphism& h,
                                 const DecideConfig& cfg) {
    DecisionOutcome out;
    out.sharpen_power = cfg.sharpen_power;
    auto pr = is_primitive(h);
    if (!pr.primitive) {
        out.verdict = Verdict::Inapplicable;
        out.error = "morphism is not primitive";
        return out;
    }
    SpectralData sd = spectral_data(h.incidence, Rat(Int(1), Int(1) << cfg.precision_bits));
    if (sd.has_unresolved()) {
        out.verdict = Verdict::Inapplicable;
        out.error = "an eigenvalue enclosure straddles the unit circle (modulus-1 unresolved)";
        return out;
    }
    if (!h.row_hints.empty()) apply_row_hints(sd, h.row_hints);
    try {
        BoundsProfile profile = contracting_bounds(h, sd, cfg.sharpen_power);
        out.r_star.reserve(profile.r_star.size());
        for (const Interval& r : profile.r_star) out.r_star.push_back(r);
        Filter filter(sd, profile);
        ParentEngine engine(h, filter);
        ClosureResult closure = ancestor_closure(seeds, engine, cfg.max_closure);
        out.parents_of_seed = closure.parents_of_first_seed;
        out.closure_size = closure.all.size();
        if (closure.capped) {
            out.verdict = Verdict::ResourceExceeded;
            out.error = "ancestor closure exceeded the configured cap";
            return out;
        }
        int k = seeds[0].k;
        int64_t s_formula = scan_threshold(closure.all, h, k);
        // completeness floor: a pullback step can only produce an all-empty
        // parent realization from a word of length <= 2 k delta + k + 1, so
        // scanning to that length keeps nonempty-block hits exhaustive
        int64_t s_floor = 2 * int64_t(k) * h.max_image_len() + k + 1;
        out.threshold_s = std::max(s_formula, s_floor);
        auto hit = scan_factors(h, closure.all, closure.seed_count, out.threshold_s,
                                &out.factors_scanned);
        if (!hit) {
            out.verdict = Verdict::Avoided;
            return out;
        }
        out.verdict = Verdict::Realized;
        out.witness = hit;
        // construct a seed realization by descending parent edges
        size_t idx = hit->template_index;
        Realization real = hit->realization;
        size_t guard = 0;
        while (idx >= closure.seed_count && real.word.size() < 1'000'000 &&
               guard++ < 10'000) {
            auto it = closure.edge.find(idx);
            if (it == closure.edge.end()) break;
            size_t child_idx = it->second.first;
            real = descend_once(real, closure.all[idx], closure.all[child_idx],
                                it->second.second, h);
            idx = child_idx;
        }
        if (idx < closure.seed_count && validate_realization(real, closure.all[idx])) {
            out.seed_witness = real.word;
            out.seed_index = idx;
        }
        return out;
    } catch (const MethodError& e) {
        out.verdict = Verdict::Inapplicable;
        out.error = e.what();
        return out;
    }
}

}  // namespace powerfree

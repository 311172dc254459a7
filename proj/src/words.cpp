#include "powerfree/words.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace powerfree {

int Alphabet::index_of(const std::string& tok) const {
    for (int i = 0; i < size(); ++i)
        if (letters[i] == tok) return i;
    return -1;
}

std::string Alphabet::render(const Word& w, const std::string& sep) const {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += sep;
        out += letters[uint8_t(w[i])];
    }
    return out;
}

Word Alphabet::parse_word(const std::vector<std::string>& tokens) const {
    Word w;
    for (const std::string& t : tokens) {
        int i = index_of(t);
        if (i < 0) throw ParseError("unknown letter '" + t + "'");
        w.push_back(char(i));
    }
    return w;
}

int Morphism::max_image_len() const {
    size_t m = 0;
    for (const Word& w : rules) m = std::max(m, w.size());
    return int(m);
}

int Morphism::min_image_len() const {
    size_t m = rules.empty() ? 0 : rules[0].size();
    for (const Word& w : rules) m = std::min(m, w.size());
    return int(m);
}

Word Morphism::apply(const Word& w) const {
    Word out;
    size_t total = 0;
    for (char c : w) total += rules[uint8_t(c)].size();
    out.reserve(total);
    for (char c : w) out += rules[uint8_t(c)];
    return out;
}

Word Morphism::apply_power(const Word& w, int k) const {
    assert(is_endomorphism() || k <= 1);
    Word out = w;
    for (int i = 0; i < k; ++i) out = apply(out);
    return out;
}

Morphism Morphism::power(int k) const {
    assert(is_endomorphism() && k >= 1);
    std::vector<Word> r(rules.size());
    for (size_t a = 0; a < rules.size(); ++a) r[a] = apply_power(Word(1, char(a)), k);
    Morphism out = make_morphism(source, target, std::move(r));
    out.row_hints = row_hints;
    return out;
}

Morphism Morphism::compose(const Morphism& outer, const Morphism& inner) {
    std::vector<Word> r(inner.rules.size());
    for (size_t a = 0; a < inner.rules.size(); ++a) r[a] = outer.apply(inner.rules[a]);
    return make_morphism(inner.source, outer.target, std::move(r));
}

Morphism make_morphism(AlphabetPtr src, AlphabetPtr tgt, std::vector<Word> rules) {
    Morphism m;
    m.source = std::move(src);
    m.target = std::move(tgt);
    m.rules = std::move(rules);
    m.incidence = IMat(m.target->size(), m.source->size());
    for (int a = 0; a < m.source->size(); ++a)
        for (char c : m.rules[a]) m.incidence(uint8_t(c), a) += 1;
    return m;
}

Morphism parse_morphism(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto alphabet = std::make_shared<Alphabet>();
    auto target = std::make_shared<Alphabet>();
    bool have_alphabet = false, have_target = false;
    std::vector<std::pair<int, std::vector<std::string>>> raw_rules;  // letter -> tokens
    std::vector<QVec> row_hints;
    std::vector<bool> seen;

    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty()) continue;
        auto err = [&](const std::string& msg) {
            throw ParseError("line " + std::to_string(lineno) + ": " + msg);
        };
        if (toks[0] == "alphabet:" || toks[0] == "target:") {
            bool is_target = toks[0] == "target:";
            auto& dest = is_target ? target : alphabet;
            if ((is_target ? have_target : have_alphabet)) err("duplicate " + toks[0] + " line");
            for (size_t i = 1; i < toks.size(); ++i) {
                if (dest->index_of(toks[i]) >= 0) err("duplicate letter '" + toks[i] + "'");
                dest->letters.push_back(toks[i]);
            }
            if (dest->letters.empty()) err("empty " + toks[0] + " list");
            (is_target ? have_target : have_alphabet) = true;
            continue;
        }
        if (!have_alphabet) err("rule before alphabet line");
        if (seen.empty()) seen.assign(alphabet->size(), false);
        if (toks[0] == "row:") {
            if (int(toks.size()) - 1 != alphabet->size())
                err("row hint needs one rational per letter");
            QVec row(alphabet->size());
            for (int i = 0; i < alphabet->size(); ++i) {
                try {
                    row[i] = Rat(toks[1 + i]);
                    row[i].canonicalize();
                } catch (...) {
                    err("bad rational '" + toks[1 + i] + "'");
                }
            }
            row_hints.push_back(std::move(row));
            continue;
        }
        if (toks.size() < 2 || toks[1] != "->") err("expected 'letter -> image'");
        int a = alphabet->index_of(toks[0]);
        if (a < 0) err("unknown letter '" + toks[0] + "'");
        if (seen[a]) err("duplicate rule for '" + toks[0] + "'");
        seen[a] = true;
        raw_rules.push_back({a, std::vector<std::string>(toks.begin() + 2, toks.end())});
    }
    if (!have_alphabet) throw ParseError("missing alphabet line");
    for (int a = 0; a < alphabet->size(); ++a) {
        bool ok = false;
        for (auto& [letter, _] : raw_rules) ok = ok || letter == a;
        if (!ok) throw ParseError("missing rule for letter '" + alphabet->letters[a] + "'");
    }
    AlphabetPtr ap = alphabet;
    AlphabetPtr tp = have_target ? AlphabetPtr(target) : ap;
    std::vector<Word> rules(alphabet->size());
    for (auto& [a, toks] : raw_rules) {
        try {
            rules[a] = tp->parse_word(toks);
        } catch (const ParseError& e) {
            throw ParseError(std::string("rule for '") + alphabet->letters[a] + "': " + e.what());
        }
    }
    Morphism out = make_morphism(ap, tp, std::move(rules));
    out.row_hints = std::move(row_hints);
    return out;
}

IVec parikh(const Word& w, int alphabet_size) {
    IVec v(alphabet_size, Int(0));
    for (char c : w) v[uint8_t(c)] += 1;
    return v;
}

PrimitivityResult is_primitive(const Morphism& h) {
    if (!h.is_endomorphism()) return {false, 0};
    int n = h.source->size();
    auto positive = [&](const std::vector<std::vector<bool>>& b) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!b[i][j]) return false;
        return true;
    };
    std::vector<std::vector<bool>> base(n, std::vector<bool>(n, false)), cur;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) base[i][j] = h.incidence(i, j) > 0;
    cur = base;
    int wielandt = (n - 1) * (n - 1) + 1;
    for (int k = 1; k <= wielandt; ++k) {
        if (positive(cur)) return {true, k};
        std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i)
            for (int t = 0; t < n; ++t) {
                if (!cur[i][t]) continue;
                for (int j = 0; j < n; ++j)
                    if (base[t][j]) next[i][j] = true;
            }
        cur = next;
    }
    return {false, 0};
}

namespace {

// Least power of h whose shortest image has length >= 2 (exists for any
// primitive morphism on >= 2 letters).
Morphism power_with_growth(const Morphism& h, int* power_out = nullptr) {
    Morphism H = h;
    int k = 1;
    while (H.min_image_len() < 2) {
        if (k > 64) throw MethodError("morphism images do not grow (not primitive?)");
        H = Morphism::compose(H, h);
        ++k;
    }
    if (power_out) *power_out = k;
    return H;
}

}  // namespace

std::vector<Word> factors_up_to(const Morphism& h, int L) {
    PrimitivityResult pr = is_primitive(h);
    if (!pr.primitive) throw MethodError("factor enumeration requires a primitive morphism");
    if (L <= 0) return {};
    int n = h.source->size();
    if (n == 1) {
        std::vector<Word> out;
        for (int len = 1; len <= L; ++len) out.push_back(Word(len, char(0)));
        return out;
    }
    Morphism H = power_with_growth(h);
    int theta = H.min_image_len();
    int W = (L + theta - 1) / theta + 2;
    if (W < 6) W = 6;
    int Lw = std::max(L, W);

    std::unordered_set<Word> seen;
    std::deque<Word> todo;
    for (int a = 0; a < n; ++a) {
        Word w(1, char(a));
        seen.insert(w);
        todo.push_back(w);
    }
    while (!todo.empty()) {
        Word w = std::move(todo.front());
        todo.pop_front();
        if (int(w.size()) > W) continue;
        Word img = H.apply(w);
        int m = int(img.size());
        for (int len = 1; len <= std::min(Lw, m); ++len)
            for (int s = 0; s + len <= m; ++s) {
                Word f = img.substr(s, len);
                if (seen.insert(f).second) todo.push_back(std::move(f));
            }
    }
    std::vector<Word> out;
    for (const Word& w : seen)
        if (int(w.size()) <= L) out.push_back(w);
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

std::vector<Word> image_factors_up_to(const Morphism& g, const Morphism& h, int L) {
    if (L <= 0) return {};
    int theta_pos = 0;
    bool has_erasing = false;
    for (const Word& r : g.rules) {
        if (r.empty()) has_erasing = true;
        else theta_pos = theta_pos == 0 ? int(r.size()) : std::min(theta_pos, int(r.size()));
    }
    if (theta_pos == 0) throw MethodError("all images of g are empty");
    int Ws;
    if (!has_erasing) {
        Ws = (L + theta_pos - 1) / theta_pos + 2;
    } else {
        // bound the longest run of erased letters in Fact^inf(h)
        std::vector<bool> erased(g.rules.size());
        for (size_t a = 0; a < g.rules.size(); ++a) erased[a] = g.rules[a].empty();
        int cap = 4 * L + 16;
        int run = 0;
        for (const Word& w : factors_up_to(h, cap)) {
            if (int(w.size()) < run + 1) continue;
            bool all = true;
            for (char c : w) all = all && erased[uint8_t(c)];
            if (all) run = std::max(run, int(w.size()));
        }
        if (run >= cap) throw MethodError("erased-letter runs exceed probe window");
        Ws = ((L + theta_pos - 1) / theta_pos + 2) * (run + 1) + run;
    }
    std::unordered_set<Word> seen;
    for (const Word& u : factors_up_to(h, Ws)) {
        Word img = g.apply(u);
        int m = int(img.size());
        for (int len = 1; len <= std::min(L, m); ++len)
            for (int s = 0; s + len <= m; ++s) seen.insert(img.substr(s, len));
    }
    std::vector<Word> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

Word fixed_point_prefix(const Morphism& h, size_t len) {
    int n = h.source->size();
    for (const Word& r : h.rules)
        if (r.empty()) throw MethodError("fixed point prefix needs non-erasing rules");
    // first-letter functional graph: find a cycle
    std::vector<int> first(n);
    for (int a = 0; a < n; ++a) first[a] = uint8_t(h.rules[a][0]);
    std::vector<int> visit_order;
    std::vector<int> state(n, -1);
    int cur = 0;
    while (state[cur] < 0) {
        state[cur] = int(visit_order.size());
        visit_order.push_back(cur);
        cur = first[cur];
    }
    int cycle_len = int(visit_order.size()) - state[cur];
    int seed = cur;
    Morphism H = cycle_len == 1 ? h : h.power(cycle_len);
    Word w(1, char(seed));
    size_t prev = 0;
    while (w.size() < len) {
        if (w.size() == prev) throw MethodError("fixed point does not grow");
        prev = w.size();
        w = H.apply(w);
    }
    w.resize(len);
    return w;
}

}  // namespace powerfree

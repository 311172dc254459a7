#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "powerfree/oracle.hpp"
#include "powerfree/report.hpp"

using namespace powerfree;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Morphism load_morphism(const std::string& path) { return parse_morphism(read_file(path)); }

std::string render_word(const Alphabet& a, const Word& w) {
    bool single = true;
    for (const std::string& t : a.letters) single = single && t.size() == 1;
    return a.render(w, single ? "" : " ");
}

std::string render_tokens(const Alphabet& a, const Word& w) { return a.render(w, " "); }

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct CommonOpts {
    std::string morphism_path;
    int k = 2;
    int iterate = 2;
    bool json = false;
    uint64_t max_closure = 10'000'000;
    unsigned precision_bits = 80;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_k = true) {
    cmd->add_option("--morphism", o.morphism_path, "morphism file (.mrf)")->required();
    if (with_k) cmd->add_option("--k", o.k, "power order k")->check(CLI::Range(2, 8));
    cmd->add_option("--iterate", o.iterate,
                    "bound-sharpening power l (decision commands run on h^l)");
    cmd->add_flag("--json", o.json, "emit a JSON report");
    cmd->add_option("--max-closure", o.max_closure, "ancestor closure size cap");
    cmd->add_option("--precision-bits", o.precision_bits, "eigenvalue enclosure precision");
}

void fill_outcome(DecisionReport& rep, const DecisionOutcome& d, const Alphabet& alpha) {
    rep.verdict = d.verdict;
    rep.error = d.error;
    rep.r_star = d.r_star;
    for (const Interval& r : d.r_star)
        rep.factor_bounds.push_back(r * Interval(Rat(Int(1), Int(2))));
    rep.sharpen_power = d.sharpen_power;
    rep.parents_of_seed = d.parents_of_seed;
    rep.closure_size = d.closure_size;
    rep.threshold_s = d.threshold_s;
    rep.factors_scanned = d.factors_scanned;
    if (d.witness) {
        rep.witness_word = render_tokens(alpha, d.witness->word);
    }
    if (d.seed_witness) rep.seed_witness = render_tokens(alpha, *d.seed_witness);
}

void print_report(const DecisionReport& rep, bool json) {
    if (json) {
        std::cout << to_json(rep) << "\n";
        return;
    }
    std::cout << "verdict: " << verdict_name(rep.verdict) << "\n";
    if (!rep.error.empty()) std::cout << "reason: " << rep.error << "\n";
    if (!rep.r_star.empty()) {
        std::cout << "bounds r* (upper endpoints):";
        for (const Interval& r : rep.r_star) {
            if (r.hi.get_den() <= 1000000) std::cout << " " << r.hi.get_str();
            else std::cout << " ~" << to_double(r.hi);
        }
        std::cout << "\n";
    }
    if (rep.candidate_count) std::cout << "candidate templates: " << rep.candidate_count << "\n";
    if (rep.closure_size) {
        std::cout << "parents of seed: " << rep.parents_of_seed << "\n";
        std::cout << "closure size: " << rep.closure_size << "\n";
        std::cout << "threshold s: " << rep.threshold_s << "\n";
        std::cout << "factors scanned: " << rep.factors_scanned << "\n";
    }
    if (rep.witness_word) std::cout << "witness (closure member): " << *rep.witness_word << "\n";
    if (rep.seed_witness) std::cout << "witness (seed realization): " << *rep.seed_witness << "\n";
    if (rep.image_witness)
        std::cout << "image witness (period " << rep.image_witness_period
                  << "): " << *rep.image_witness << "\n";
    std::cout << "wall time: " << rep.wall_ms << " ms\n";
}

int run_check_abelian(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    Morphism h = load_morphism(o.morphism_path);
    DecideConfig cfg;
    cfg.sharpen_power = o.iterate;
    cfg.max_closure = o.max_closure;
    cfg.precision_bits = o.precision_bits;
    std::vector<Template> seeds{trivial_template(o.k, h.source->size())};
    DecisionOutcome d = decide_templates(seeds, h, cfg);
    DecisionReport rep;
    rep.command = "check-abelian";
    rep.pipeline_power = o.iterate;
    fill_outcome(rep, d, *h.source);
    rep.wall_ms = ms_since(t0);
    print_report(rep, o.json);
    return exit_code(d.verdict);
}

int run_check_additive(const CommonOpts& o, const std::string& phi_path, bool uniform) {
    auto t0 = std::chrono::steady_clock::now();
    Morphism h = load_morphism(o.morphism_path);
    GroupMap phi = phi_path.empty() ? value_map_from_tokens(*h.source)
                                    : parse_gmap(read_file(phi_path), *h.source);
    if (phi_path.empty() && !uniform)
        throw ParseError("token-derived value maps require --uniform");
    DecideConfig cfg;
    cfg.sharpen_power = o.iterate;
    cfg.max_closure = o.max_closure;
    cfg.precision_bits = o.precision_bits;
    ApplicationOutcome a = decide_additive(h, phi, uniform, o.k, cfg);
    DecisionReport rep;
    rep.command = "check-additive";
    rep.pipeline_power = o.iterate;
    fill_outcome(rep, a.decision, *h.source);
    rep.candidate_count = a.candidate_count;
    rep.wall_ms = ms_since(t0);
    print_report(rep, o.json);
    return exit_code(a.decision.verdict);
}

Morphism load_morphism_outer(const std::string& path, const Morphism& h) {
    Morphism g = parse_morphism(read_file(path));
    if (g.source->letters != h.source->letters)
        throw ParseError("outer morphism alphabet does not match the inner morphism");
    // share the inner alphabet object so composition checks pass
    return make_morphism(h.source, g.target, g.rules);
}

int run_check_long_abelian(const CommonOpts& o, const std::string& outer_path,
                           int64_t min_period) {
    auto t0 = std::chrono::steady_clock::now();
    Morphism h = load_morphism(o.morphism_path);
    Morphism g = load_morphism_outer(outer_path, h);
    DecideConfig cfg;
    cfg.sharpen_power = o.iterate;
    cfg.max_closure = o.max_closure;
    cfg.precision_bits = o.precision_bits;
    ApplicationOutcome a = decide_long_abelian(h, g, o.k, min_period, cfg);
    DecisionReport rep;
    rep.command = "check-long-abelian";
    rep.pipeline_power = o.iterate;
    fill_outcome(rep, a.decision, *h.source);
    rep.candidate_count = a.candidate_count;
    if (a.short_witness) {
        rep.image_witness = render_tokens(*g.target, *a.short_witness);
        rep.image_witness_period = a.short_witness_period;
    }
    rep.wall_ms = ms_since(t0);
    print_report(rep, o.json);
    return exit_code(a.decision.verdict);
}

int run_analyze(const CommonOpts& o) {
    Morphism h = load_morphism(o.morphism_path);
    auto pr = is_primitive(h);
    std::cout << "alphabet size: " << h.source->size() << "\n";
    std::cout << "primitive: " << (pr.primitive ? "yes" : "no");
    if (pr.primitive) std::cout << " (M^" << pr.exponent << " > 0)";
    std::cout << "\n";
    ZPoly cp = char_poly(h.incidence);
    std::cout << "characteristic polynomial: " << cp.str() << "\n";
    SpectralData sd = spectral_data(h.incidence, Rat(Int(1), Int(1) << o.precision_bits));
    std::cout << "irreducible factors:";
    for (size_t f = 0; f < sd.factors.size(); ++f)
        std::cout << " (" << sd.factors[f].str() << ")^" << sd.multiplicity[f];
    std::cout << "\n";
    for (const JordanBlock& b : sd.blocks) {
        CInterval box = sd.root_boxes[b.factor][b.root].box();
        double re = to_double((box.re.lo + box.re.hi) / 2);
        double im = to_double((box.im.lo + box.im.hi) / 2);
        std::cout << "block: size " << b.size << ", eigenvalue ~ (" << re << ", " << im << "), ";
        switch (b.cls) {
            case ModulusClass::Contracting: std::cout << "|lambda| < 1"; break;
            case ModulusClass::Expanding: std::cout << "|lambda| > 1"; break;
            case ModulusClass::Unresolved: std::cout << "|lambda| vs 1 unresolved"; break;
        }
        std::cout << "\n";
    }
    if (!pr.primitive) {
        std::cout << "bounds: skipped (not primitive)\n";
        return sd.has_unresolved() ? exit_code(Verdict::Inapplicable) : 0;
    }
    if (sd.has_unresolved()) {
        std::cout << "bounds: skipped (modulus-1 unresolved)\n";
        return exit_code(Verdict::Inapplicable);
    }
    if (sd.contracting.empty()) {
        std::cout << "no contracting eigenvalue: bounds profile is empty\n";
        return 0;
    }
    if (!h.row_hints.empty() && apply_row_hints(sd, h.row_hints))
        std::cout << "using verified row basis from the morphism file\n";
    BoundsProfile bp = contracting_bounds(h, sd, o.iterate);
    for (size_t i = 0; i < bp.factor_bound.size(); ++i) {
        const Interval& m = bp.factor_bound[i];
        std::cout << "contracting index " << sd.contracting[i] << ": m in ["
                  << to_double(m.lo) << ", " << to_double(m.hi) << "]";
        if (bp.factor_bound_exact[i]) std::cout << " (exact " << m.hi.get_str() << ")";
        std::cout << ", r* = 2m <= " << to_double(m.hi * 2) << "\n";
    }
    return 0;
}

Word build_scanned_word(const Morphism& h, const std::vector<std::string>& outer_paths,
                        size_t prefix_len, AlphabetPtr* final_alpha) {
    std::vector<Morphism> outers;
    for (const std::string& path : outer_paths) outers.push_back(parse_morphism(read_file(path)));
    size_t inner = prefix_len;
    for (int attempt = 0; attempt < 24; ++attempt) {
        Word w = fixed_point_prefix(h, inner);
        AlphabetPtr alpha = h.source;
        for (const Morphism& g : outers) {
            if (g.source->letters != alpha->letters)
                throw ParseError("outer morphism alphabet mismatch");
            w = g.apply(w);
            alpha = g.target;
        }
        if (w.size() >= prefix_len || inner >= (size_t(1) << 40)) {
            if (w.size() > prefix_len) w.resize(prefix_len);
            *final_alpha = alpha;
            return w;
        }
        inner *= 2;
    }
    throw MethodError("could not generate a long enough image prefix");
}

int run_scan(const std::string& morphism_path, const std::vector<std::string>& outers,
             const std::string& mode, uint64_t prefix_len, int kab, int k,
             const std::string& phi_path, bool uniform, int64_t min_period, int64_t max_period,
             bool json) {
    auto t0 = std::chrono::steady_clock::now();
    Morphism h = load_morphism(morphism_path);
    AlphabetPtr alpha;
    Word w = build_scanned_word(h, outers, prefix_len, &alpha);
    if (max_period <= 0) max_period = int64_t(w.size()) / std::max(1, k);
    std::optional<PowerWitness> wit;
    if (mode == "abelian") {
        wit = find_abelian_power(w, k, min_period, max_period);
    } else if (mode == "additive" || mode == "mod") {
        GroupMap phi = phi_path.empty() ? value_map_from_tokens(*alpha)
                                        : parse_gmap(read_file(phi_path), *alpha);
        bool uni = uniform || mode == "additive";
        wit = find_power_mod(w, phi, k, uni, min_period, max_period);
    } else if (mode == "kabelian") {
        wit = find_kabelian_power(w, kab, k, min_period, max_period);
    } else {
        throw ParseError("unknown scan mode '" + mode + "'");
    }
    DecisionReport rep;
    rep.command = "scan";
    rep.verdict = wit ? Verdict::Realized : Verdict::Avoided;
    rep.factors_scanned = w.size();
    rep.wall_ms = ms_since(t0);
    if (wit) {
        Word img = w.substr(wit->start, size_t(wit->period) * wit->k);
        rep.image_witness = render_tokens(*alpha, img);
        rep.image_witness_period = wit->period;
    }
    if (json) {
        std::cout << to_json(rep) << "\n";
    } else {
        std::cout << "scanned prefix length: " << w.size() << "\n";
        if (wit) {
            std::cout << "witness: start " << wit->start << ", period " << wit->period << ", k "
                      << wit->k << "\n";
            std::cout << "  " << render_word(*alpha, Word(w.substr(wit->start,
                                                                   size_t(wit->period) * wit->k)))
                      << "\n";
        } else {
            std::cout << "no witness in range [" << min_period << ", " << max_period << "]\n";
        }
    }
    return wit ? 1 : 0;
}

int run_factors(const std::string& morphism_path, const std::vector<std::string>& outers,
                int max_len, bool count_only) {
    Morphism h = load_morphism(morphism_path);
    std::vector<Word> facts;
    AlphabetPtr alpha = h.source;
    if (outers.empty()) {
        facts = factors_up_to(h, max_len);
    } else if (outers.size() == 1) {
        Morphism g = parse_morphism(read_file(outers[0]));
        facts = image_factors_up_to(g, h, max_len);
        alpha = g.target;
    } else {
        Morphism g = parse_morphism(read_file(outers[0]));
        for (size_t i = 1; i < outers.size(); ++i)
            g = Morphism::compose(parse_morphism(read_file(outers[i])), g);
        facts = image_factors_up_to(g, h, max_len);
        alpha = g.target;
    }
    if (count_only) {
        std::cout << facts.size() << "\n";
        return 0;
    }
    for (const Word& f : facts) std::cout << render_word(*alpha, f) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"powerfree: certified avoidance of abelian and additive powers in morphic words"};
    app.require_subcommand(1);

    CommonOpts oab, oadd, olong, oan;
    std::string phi_path, outer_path;
    bool uniform = false;
    int64_t min_period = 1;

    CLI::App* cab = app.add_subcommand("check-abelian",
                                       "decide abelian k-power freeness of Fact^inf(h)");
    add_common(cab, oab);

    CLI::App* cadd = app.add_subcommand("check-additive",
                                        "decide k-power-mod-Phi freeness of Fact^inf(h)");
    add_common(cadd, oadd);
    cadd->add_option("--phi", phi_path, "group map file (.gmap); default: letter tokens as values");
    cadd->add_flag("--uniform", uniform, "require equal block lengths (additive powers)");

    CLI::App* clong = app.add_subcommand("check-long-abelian",
                                         "decide absence of long abelian k-powers in g(h^inf)");
    add_common(clong, olong);
    clong->add_option("--outer", outer_path, "outer morphism g (.mrf)")->required();
    clong->add_option("--min-period", min_period, "smallest period to rule out");

    CLI::App* can = app.add_subcommand("analyze", "print spectral data and certified bounds");
    add_common(can, oan, false);

    std::string scan_morphism, scan_mode = "abelian", scan_phi;
    std::vector<std::string> scan_outers;
    uint64_t scan_prefix = 10000;
    int scan_kab = 2, scan_k = 2;
    bool scan_uniform = false, scan_json = false;
    int64_t scan_minp = 1, scan_maxp = 0;
    CLI::App* cscan = app.add_subcommand("scan", "brute-force oracle scan of a generated prefix");
    cscan->add_option("--morphism", scan_morphism, "inner morphism (.mrf)")->required();
    cscan->add_option("--outer", scan_outers, "outer morphisms, applied in order");
    cscan->add_option("--mode", scan_mode, "abelian | additive | mod | kabelian");
    cscan->add_option("--prefix", scan_prefix, "prefix length to generate");
    cscan->add_option("--kab", scan_kab, "k-abelian window k'");
    cscan->add_option("--k", scan_k, "power order k");
    cscan->add_option("--phi", scan_phi, "group map for mod/additive modes");
    cscan->add_flag("--uniform", scan_uniform, "equal block lengths");
    cscan->add_option("--min-period", scan_minp, "smallest period");
    cscan->add_option("--max-period", scan_maxp, "largest period (default: prefix/k)");
    cscan->add_flag("--json", scan_json, "emit a JSON report");

    std::string fact_morphism;
    std::vector<std::string> fact_outers;
    int fact_len = 5;
    bool fact_count = false;
    CLI::App* cfact = app.add_subcommand("factors", "enumerate factors of Fact^inf(h) or g(h^inf)");
    cfact->add_option("--morphism", fact_morphism, "inner morphism (.mrf)")->required();
    cfact->add_option("--outer", fact_outers, "outer morphisms (composed in order)");
    cfact->add_option("--max-length", fact_len, "maximum factor length");
    cfact->add_flag("--count-only", fact_count, "print only the count");

    try {
        app.parse(argc, argv);
        if (cab->parsed()) return run_check_abelian(oab);
        if (cadd->parsed()) return run_check_additive(oadd, phi_path, uniform);
        if (clong->parsed()) return run_check_long_abelian(olong, outer_path, min_period);
        if (can->parsed()) return run_analyze(oan);
        if (cscan->parsed())
            return run_scan(scan_morphism, scan_outers, scan_mode, scan_prefix, scan_kab, scan_k,
                            scan_phi, scan_uniform, scan_minp, scan_maxp, scan_json);
        if (cfact->parsed()) return run_factors(fact_morphism, fact_outers, fact_len, fact_count);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 3;
}

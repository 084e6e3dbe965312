#include "m0n/harness.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace m0n {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (a + 1) + 0x100000001b3ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

namespace {

const std::vector<Rational>& coeff_val_grid() {
    static const std::vector<Rational> grid = {Rational(0), Rational(1), Rational(2),
                                               Rational(1, 2), Rational(3, 2)};
    return grid;
}

LaurentPoly sample_poly(std::mt19937_64& rng, const std::vector<std::string>& alphabet,
                        int max_terms) {
    LaurentPoly f;
    f.alphabet = alphabet;
    int want = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
    std::set<std::vector<int>> seen;
    for (int t = 0; t < want; ++t) {
        std::vector<int> exps(alphabet.size());
        for (auto& e : exps) e = static_cast<int>(rng() % 7) - 3;
        if (!seen.insert(exps).second) continue;   // collision: keep fewer terms
        const auto& grid = coeff_val_grid();
        f.terms.push_back({std::move(exps), grid[rng() % grid.size()]});
    }
    return f;
}

} // namespace

ComparisonReport compare_point(const MarkedMetricTree& t, const CompareOptions& opt) {
    t.validate();
    const int n = t.tree.n;
    const int bi = opt.base_i == 0 ? 1 : opt.base_i;
    const int bj = opt.base_j == 0 ? n : opt.base_j;

    SkeletonPoint p = make_skeleton_point(n, split_lengths(t));
    MonomialValuation section = section_valuation(t, bi, bj);
    SkeletonValuation skel = skeleton_valuation(p);

    ComparisonReport report;
    report.n = n;
    report.cone = p.strata;
    report.lengths = p.alpha;
    report.seed = opt.seed;
    report.pass = true;

    auto fail = [&](const std::string& why) {
        if (report.pass) report.detail = why;
        report.pass = false;
    };
    auto w_pair = [&](int a, int b) -> const Rational& {
        return section.weights[static_cast<size_t>(pair_index(a, b, n))];
    };
    auto section_cr = [&](const CrossRatio& cr) {
        return w_pair(cr.i, cr.l) + w_pair(cr.j, cr.k) - w_pair(cr.i, cr.k) - w_pair(cr.j, cr.l);
    };

    // Every cross-ratio over every quadruple, one tuple per pairing pair (the
    // remaining tuples are inverses and transposes of these).
    for (int a = 1; a <= n && report.pass; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c)
                for (int d = c + 1; d <= n; ++d) {
                    const CrossRatio tuples[3] = {{a, b, c, d}, {a, c, d, b}, {a, d, c, b}};
                    for (const CrossRatio& cr : tuples) {
                        Rational lhs = section_cr(cr);
                        Rational rhs = skel.cross_ratio_weight(cr.i, cr.j, cr.k, cr.l);
                        if (lhs != rhs) {
                            fail("cross-ratio " + cr.symbol() + ": section " + lhs.str() +
                                 " vs skeleton " + rhs.str());
                            break;
                        }
                    }
                    if (!report.pass) break;
                }

    // Local generators must weigh alpha(s) on both sides. The section side
    // expands the generator into its four Pluecker factors.
    std::vector<CrossRatio> gens = local_generators(p, bi, bj);
    for (size_t s = 0; s < gens.size(); ++s) {
        Rational sec;
        for (auto& [pair, e] : gens[s].pair_exponents())
            sec += Rational(e) * w_pair(pair.first, pair.second);
        const Rational& sk = skel.weights.weights[s];
        report.generator_pairs.push_back({gens[s].symbol(), sec, sk});
        if (sec != sk || sk != p.alpha[s] ||
            skel.cross_ratio_weight(gens[s].i, gens[s].j, gens[s].k, gens[s].l) != p.alpha[s])
            fail("generator " + gens[s].symbol() + ": section " + sec.str() + " vs alpha " +
                 p.alpha[s].str());
    }

    // Sampled Laurent polynomials in the generators and the uniformizer.
    std::vector<std::string> alphabet = skel.weights.alphabet;   // generators + "pi"
    std::mt19937_64 rng(opt.seed);
    for (int sample = 0; sample < opt.poly_samples; ++sample) {
        LaurentPoly f = sample_poly(rng, alphabet, opt.max_terms);
        CoefficientVal skel_val = evaluate(skel.weights, f);
        CoefficientVal section_val = CoefficientVal::infinity();
        for (const LaurentTerm& term : f.terms) {
            Rational w = term.coeff_val;
            for (size_t s = 0; s < gens.size(); ++s)
                if (term.exps[s] != 0)
                    for (auto& [pair, e] : gens[s].pair_exponents())
                        w += Rational(term.exps[s] * e) * w_pair(pair.first, pair.second);
            w += Rational(term.exps.back()) * MonomialValuation::pi_weight();
            if (CoefficientVal cand(w); cand < section_val) section_val = cand;
        }
        if (!(section_val == skel_val))
            fail("polynomial sample " + std::to_string(sample) + ": section " +
                 section_val.str() + " vs skeleton " + skel_val.str());
    }
    return report;
}

bool check_diagram(const MarkedMetricTree& t) {
    t.validate();
    const int big = t.tree.n;
    if (big < 5) throw std::invalid_argument("check_diagram: need at least five leaves");

    MarkedMetricTree forgotten = forget_leaf(t, big);

    // Tropical square: forgetting then embedding vs restricting the distances.
    TropPoint via_forget = gauge_fix(plucker_vector(forgotten));
    DistanceMatrix d = distance_matrix(t);
    TropPoint restricted{big - 1,
                         std::vector<Rational>(static_cast<size_t>(big - 1) * (big - 2) / 2),
                         false};
    for (int k = 1; k < big; ++k)
        for (int l = k + 1; l < big; ++l) restricted.at(k, l) = -(d.at(k, l) / 2);
    TropPoint via_restrict = gauge_fix(restricted);
    if (via_forget.coords != via_restrict.coords) return false;

    // Skeleton square: the stratum of the stabilized tree equals the forgotten stratum.
    SkeletonPoint p_big = make_skeleton_point(big, split_lengths(t));
    SkeletonPoint lhs = forget_stratum(p_big, big);
    SkeletonPoint rhs = make_skeleton_point(big - 1, split_lengths(forgotten));
    return lhs.strata == rhs.strata && lhs.alpha == rhs.alpha;
}

namespace {

MarkedMetricTree attach_at_vertex(const MarkedMetricTree& base, int v) {
    MarkedMetricTree out = base;
    int leaf_v = out.tree.vertex_count++;
    out.tree.edges.emplace_back(std::min(v, leaf_v), std::max(v, leaf_v));
    out.tree.leaf_vertex.push_back(leaf_v);
    ++out.tree.n;
    return out;
}

// Subdivides the stored edge (min,max) at a new vertex carrying the new leaf.
// leaf_end < 0 means an internal edge: the end named edge.first keeps
// first_part and the other end gets the remainder. Otherwise leaf_end is the
// leaf endpoint, its stub stays a leaf edge, and the internal piece gets
// first_part.
MarkedMetricTree attach_on_edge(const MarkedMetricTree& base, std::pair<int, int> edge,
                                const Rational& first_part, int leaf_end) {
    MarkedMetricTree out = base;
    int mid = out.tree.vertex_count++;
    int leaf_v = out.tree.vertex_count++;
    out.tree.edges.erase(std::find(out.tree.edges.begin(), out.tree.edges.end(), edge));
    auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    out.tree.edges.push_back(key(edge.first, mid));
    out.tree.edges.push_back(key(mid, edge.second));
    out.tree.edges.push_back(key(mid, leaf_v));
    if (leaf_end >= 0) {
        int internal_end = leaf_end == edge.first ? edge.second : edge.first;
        out.lengths[key(internal_end, mid)] = first_part;
    } else {
        Rational total = base.lengths.at(edge);
        out.lengths.erase(edge);
        out.lengths[key(edge.first, mid)] = first_part;
        out.lengths[key(mid, edge.second)] = total - first_part;
    }
    out.tree.leaf_vertex.push_back(leaf_v);
    ++out.tree.n;
    return out;
}

bool same_metric_type(const MarkedMetricTree& a, const MarkedMetricTree& b) {
    return canonical_form(a.tree) == canonical_form(b.tree) && split_lengths(a) == split_lengths(b);
}

} // namespace

FiberReport fiber_sweep(const MarkedMetricTree& base, const std::vector<Rational>& grid,
                        std::uint64_t seed) {
    base.validate();
    FiberReport report;
    std::vector<MarkedMetricTree> attached;

    for (int v = 0; v < base.tree.vertex_count; ++v)
        if (!base.tree.is_leaf_vertex(v)) attached.push_back(attach_at_vertex(base, v));

    for (auto [u, v] : base.tree.edges) {
        bool u_leaf = base.tree.is_leaf_vertex(u);
        bool v_leaf = base.tree.is_leaf_vertex(v);
        std::pair<int, int> edge{u, v};
        if (u_leaf && v_leaf) continue;   // impossible in a stable tree with n >= 3
        if (u_leaf || v_leaf) {
            int leaf_end = u_leaf ? u : v;
            for (const Rational& g : grid)
                attached.push_back(attach_on_edge(base, edge, g, leaf_end));
        } else {
            Rational total = base.lengths.at(edge);
            std::vector<Rational> cuts;
            for (const Rational& g : grid)
                if (g.is_positive() && g < total) cuts.push_back(g);
            cuts.push_back(total / 2);
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            for (const Rational& g : cuts) attached.push_back(attach_on_edge(base, edge, g, -1));
        }
    }

    for (size_t idx = 0; idx < attached.size(); ++idx) {
        ++report.attachments;
        const MarkedMetricTree& t = attached[idx];
        CompareOptions opt;
        opt.seed = mix_seed(seed, 0xf1be5, idx);
        ComparisonReport cmp = compare_point(t, opt);
        bool back = same_metric_type(forget_leaf(t, t.tree.n), base);
        if (!cmp.pass || !back) {
            ++report.failures;
            report.failure_details.push_back(
                "attachment " + std::to_string(idx) + ": " +
                (!cmp.pass ? cmp.detail : "does not forget back to the base"));
        }
    }
    return report;
}

int SweepSummary::total_failures() const {
    int total = 0;
    for (const PerN& pn : per_n) total += pn.failures;
    return total;
}

SweepSummary run_suite(const SweepConfig& cfg) {
    SweepSummary summary;
    summary.seed = cfg.seed;
    if (cfg.samples_per_cone < 1 || cfg.poly_samples < 0)
        throw std::invalid_argument("run_suite: bad sample counts");
    if (cfg.grid.empty()) throw std::invalid_argument("run_suite: empty length grid");
    for (const Rational& g : cfg.grid)
        if (!g.is_positive()) throw std::invalid_argument("run_suite: grid lengths must be positive");

    for (int n = cfg.n_from; n <= cfg.n_to; ++n) {
        auto cones = enumerate_stable_split_sets(n);
        struct ConeOutcome {
            int points = 0;
            int failures = 0;
            std::vector<ComparisonReport> failed;
        };
        std::vector<ConeOutcome> outcomes(cones.size());

        auto work = [&](size_t c) {
            std::uint64_t cone_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(n), c);
            std::mt19937_64 rng(cone_seed);
            for (int s = 0; s < cfg.samples_per_cone; ++s) {
                std::vector<std::pair<Split, Rational>> weighted;
                for (const Split& split : cones[c])
                    weighted.emplace_back(split, cfg.grid[rng() % cfg.grid.size()]);
                MarkedMetricTree t = trop_of_skeleton_point(make_skeleton_point(n, weighted));
                CompareOptions opt;
                opt.poly_samples = cfg.poly_samples;
                opt.seed = mix_seed(cone_seed, 0x90137, static_cast<std::uint64_t>(s));
                ComparisonReport r = compare_point(t, opt);
                ++outcomes[c].points;
                if (!r.pass) {
                    ++outcomes[c].failures;
                    outcomes[c].failed.push_back(std::move(r));
                }
            }
        };

        int jobs = std::max(1, cfg.jobs);
        if (jobs == 1 || cones.size() < 2) {
            for (size_t c = 0; c < cones.size(); ++c) work(c);
        } else {
            std::atomic<size_t> next{0};
            std::vector<std::thread> pool;
            for (int j = 0; j < jobs; ++j)
                pool.emplace_back([&] {
                    for (size_t c = next.fetch_add(1); c < cones.size(); c = next.fetch_add(1))
                        work(c);
                });
            for (auto& th : pool) th.join();
        }

        SweepSummary::PerN per{n, static_cast<int>(cones.size()), 0, 0};
        for (auto& o : outcomes) {
            per.points += o.points;
            per.failures += o.failures;
            for (auto& r : o.failed) summary.failure_reports.push_back(std::move(r));
        }
        summary.per_n.push_back(per);
    }
    return summary;
}

} // namespace m0n

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "m0n/harness.hpp"
#include "m0n/json_io.hpp"
#include "m0n/skeleton.hpp"
#include "m0n/tree.hpp"
#include "m0n/trop.hpp"

namespace {

using namespace m0n;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

int cmd_trees(int n, bool trivalent_only) {
    for (const MarkedTree& t : enumerate_stable_trees(n)) {
        if (trivalent_only && static_cast<int>(splits_of_tree(t).size()) != n - 3) continue;
        std::cout << to_json(MarkedMetricTree{t, {}}).dump() << "\n";
    }
    return 0;
}

int cmd_cones(int n) {
    ConeComplex cc = cone_complex(n);
    for (const TypeCone& cone : cc.cones) {
        json splits = json::array();
        for (const Split& s : cone.splits) {
            json side = json::array();
            for (int leaf : s.side_leaves()) side.push_back(leaf);
            splits.push_back(std::move(side));
        }
        std::cout << json{{"n", n}, {"dim", cone.dim}, {"splits", std::move(splits)}}.dump()
                  << "\n";
    }
    return 0;
}

int cmd_graph(int n, const std::string& format) {
    IntersectionGraph g = intersection_graph(n);
    if (format == "dot")
        std::cout << to_dot(g);
    else
        std::cout << to_json(g).dump() << "\n";
    return 0;
}

int cmd_embed(const std::string& tree_path, bool gauge) {
    MarkedMetricTree t = tree_from_json(load_json(tree_path));
    TropPoint x = plucker_vector(t);
    if (gauge) x = gauge_fix(x);
    std::cout << to_json(x).dump() << "\n";
    return 0;
}

// The polynomial's alphabet binds positionally to the stratum's local
// generators (canonical split order); the symbol "pi" is reserved for the
// uniformizer and may sit anywhere in the alphabet.
int cmd_eval(const std::string& side, const std::string& tree_path,
             const std::string& splits_path, const std::string& poly_path,
             const std::string& base) {
    SkeletonPoint p;
    MarkedMetricTree t;
    if (!tree_path.empty()) {
        t = tree_from_json(load_json(tree_path));
        p = make_skeleton_point(t.tree.n, split_lengths(t));
    } else {
        p = skeleton_point_from_json(load_json(splits_path));
        if (side == "section") t = trop_of_skeleton_point(p);
    }

    int base_i = 1, base_j = p.n;
    if (!base.empty()) {
        size_t comma = base.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("--base expects i,j");
        base_i = std::stoi(base.substr(0, comma));
        base_j = std::stoi(base.substr(comma + 1));
    }

    std::vector<CrossRatio> gens = local_generators(p, base_i, base_j);
    std::vector<Rational> gen_weights;
    if (side == "section") {
        MonomialValuation sv = section_valuation(t, base_i, base_j);
        for (const CrossRatio& g : gens)
            gen_weights.push_back(cross_ratio_weight(sv, g.i, g.j, g.k, g.l));
    } else {
        gen_weights = p.alpha;
    }

    LaurentPoly f = poly_from_json(load_json(poly_path));
    MonomialValuation v;
    v.alphabet = f.alphabet;
    size_t next_gen = 0;
    for (const std::string& sym : f.alphabet) {
        if (sym == "pi") {
            v.weights.push_back(MonomialValuation::pi_weight());
        } else {
            if (next_gen >= gen_weights.size())
                throw std::invalid_argument("polynomial has more symbols than the stratum has "
                                            "local generators");
            v.weights.push_back(gen_weights[next_gen++]);
        }
    }
    v.validate();
    std::cout << evaluate(v, f).str() << "\n";
    return 0;
}

int cmd_compare(const SweepConfig& cfg) {
    SweepSummary summary = run_suite(cfg);
    for (const auto& per_n : summary.per_n)
        std::cout << to_json(per_n, summary.seed).dump() << "\n";
    return summary.total_failures() == 0 ? 0 : 1;
}

int cmd_forget(const std::string& tree_path, int leaf) {
    MarkedMetricTree t = tree_from_json(load_json(tree_path));
    std::cout << to_json(forget_leaf(t, leaf)).dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cone complexes of n-marked stable genus-zero curves: enumeration, "
                 "embeddings, valuations, and comparison sweeps"};
    app.require_subcommand(1);

    int n = 4;
    bool trivalent_only = false, gauge = false;
    std::string format = "dot", tree_path, splits_path, poly_path, base, side;

    auto* trees = app.add_subcommand("trees", "List stable tree types as JSON lines");
    trees->add_option("--n", n, "number of marked leaves")->required()->check(CLI::Range(3, 9));
    trees->add_flag("--trivalent-only", trivalent_only, "only maximal (trivalent) types");
    std::string tree_format = "json";
    trees->add_option("--format", tree_format, "output format")
        ->check(CLI::IsMember({"json"}));

    auto* cones = app.add_subcommand("cones", "List the cone complex as JSON lines");
    cones->add_option("--n", n, "number of marked leaves")->required()->check(CLI::Range(3, 8));

    auto* graph = app.add_subcommand("graph", "Boundary intersection graph");
    graph->add_option("--n", n, "number of marked leaves")->required()->check(CLI::Range(4, 8));
    graph->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));

    auto* embed = app.add_subcommand("embed", "Embed a metric tree (JSON point on stdout)");
    embed->add_option("--tree", tree_path, "metric tree JSON file")->required();
    embed->add_flag("--gauge", gauge, "print the canonical representative");

    auto* eval = app.add_subcommand("eval", "Evaluate a Laurent polynomial at a point");
    eval->add_option("--side", side, "section or skeleton")
        ->required()
        ->check(CLI::IsMember({"section", "skeleton"}));
    auto* eval_tree = eval->add_option("--tree", tree_path, "metric tree JSON file");
    auto* eval_splits = eval->add_option("--splits", splits_path, "stratum JSON file");
    eval->add_option("--poly", poly_path, "Laurent polynomial JSON file")->required();
    eval->add_option("--base", base, "base pair i,j (default 1,n)");
    eval_tree->excludes(eval_splits);

    SweepConfig cfg;
    long long seed = 1;
    auto* compare = app.add_subcommand("compare", "Comparison sweep over stable types");
    compare->add_option("--n-from", cfg.n_from, "first n")->check(CLI::Range(3, 8));
    compare->add_option("--n-to", cfg.n_to, "last n")->check(CLI::Range(3, 8));
    compare->add_option("--samples", cfg.samples_per_cone, "length vectors per cone")
        ->check(CLI::PositiveNumber);
    compare->add_option("--poly-samples", cfg.poly_samples, "polynomials per point")
        ->check(CLI::NonNegativeNumber);
    compare->add_option("--seed", seed, "sweep seed");
    compare->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);

    int leaf = 0;
    auto* forget = app.add_subcommand("forget", "Forget a leaf and stabilize");
    forget->add_option("--tree", tree_path, "metric tree JSON file")->required();
    forget->add_option("--leaf", leaf, "leaf to forget")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (trees->parsed()) return cmd_trees(n, trivalent_only);
        if (cones->parsed()) return cmd_cones(n);
        if (graph->parsed()) return cmd_graph(n, format);
        if (embed->parsed()) return cmd_embed(tree_path, gauge);
        if (eval->parsed()) {
            if (tree_path.empty() == splits_path.empty())
                throw std::invalid_argument("eval needs exactly one of --tree and --splits");
            return cmd_eval(side, tree_path, splits_path, poly_path, base);
        }
        if (compare->parsed()) {
            if (cfg.n_from > cfg.n_to)
                throw std::invalid_argument("--n-from must not exceed --n-to");
            cfg.seed = static_cast<std::uint64_t>(seed);
            return cmd_compare(cfg);
        }
        if (forget->parsed()) return cmd_forget(tree_path, leaf);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

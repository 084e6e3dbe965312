#include "m0n/json_io.hpp"

#include <algorithm>

namespace m0n {

namespace {

std::string edge_key(std::pair<int, int> e) {
    return std::to_string(e.first) + "-" + std::to_string(e.second);
}

std::pair<int, int> parse_edge_key(const std::string& key) {
    size_t dash = key.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == key.size())
        throw std::invalid_argument("tree json: bad edge key '" + key + "'");
    return {std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1))};
}

} // namespace

json to_json(const MarkedMetricTree& t) {
    json j;
    j["n"] = t.tree.n;
    auto edges = t.tree.edges;
    std::sort(edges.begin(), edges.end());
    json je = json::array();
    for (auto [u, v] : edges) je.push_back(json::array({u, v}));
    j["edges"] = std::move(je);
    json labels = json::object();
    for (int leaf = 1; leaf <= t.tree.n; ++leaf)
        labels[std::to_string(leaf)] = t.tree.leaf_vertex[static_cast<size_t>(leaf - 1)];
    j["leaf_labels"] = std::move(labels);
    json lengths = json::object();
    for (const auto& [e, len] : t.lengths) lengths[edge_key(e)] = len.str();
    j["lengths"] = std::move(lengths);
    return j;
}

MarkedMetricTree tree_from_json(const json& j) {
    MarkedMetricTree t;
    t.tree.n = j.at("n").get<int>();
    int max_vertex = -1;
    for (const auto& e : j.at("edges")) {
        int u = e.at(0).get<int>(), v = e.at(1).get<int>();
        t.tree.edges.emplace_back(std::min(u, v), std::max(u, v));
        max_vertex = std::max({max_vertex, u, v});
    }
    t.tree.leaf_vertex.resize(static_cast<size_t>(t.tree.n), -1);
    for (const auto& [key, v] : j.at("leaf_labels").items()) {
        int leaf = std::stoi(key);
        if (leaf < 1 || leaf > t.tree.n)
            throw std::invalid_argument("tree json: leaf label out of range");
        t.tree.leaf_vertex[static_cast<size_t>(leaf - 1)] = v.get<int>();
        max_vertex = std::max(max_vertex, v.get<int>());
    }
    t.tree.vertex_count = max_vertex + 1;
    for (const auto& [key, val] : j.at("lengths").items()) {
        auto e = parse_edge_key(key);
        if (e.first > e.second) std::swap(e.first, e.second);
        t.lengths[e] = Rational::parse(val.get<std::string>());
    }
    t.validate();
    return t;
}

json to_json(const TropPoint& x) {
    json coords = json::object();
    for (int k = 1; k <= x.n; ++k)
        for (int l = k + 1; l <= x.n; ++l)
            coords[std::to_string(k) + "," + std::to_string(l)] = x.at(k, l).str();
    return json{{"n", x.n}, {"coords", std::move(coords)}, {"gauge", x.gauge}};
}

TropPoint trop_point_from_json(const json& j) {
    TropPoint x;
    x.n = j.at("n").get<int>();
    if (x.n < 3) throw std::invalid_argument("point json: n too small");
    x.coords.assign(static_cast<size_t>(x.n) * (x.n - 1) / 2, Rational());
    x.gauge = j.at("gauge").get<bool>();
    const json& coords = j.at("coords");
    if (coords.size() != x.coords.size())
        throw std::invalid_argument("point json: wrong number of coordinates");
    for (const auto& [key, val] : coords.items()) {
        size_t comma = key.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("point json: bad coordinate key '" + key + "'");
        int k = std::stoi(key.substr(0, comma)), l = std::stoi(key.substr(comma + 1));
        x.at(k, l) = Rational::parse(val.get<std::string>());
    }
    return x;
}

json to_json(const SkeletonPoint& p) {
    json splits = json::array();
    json alpha = json::array();
    for (size_t s = 0; s < p.strata.size(); ++s) {
        json side = json::array();
        for (int leaf : p.strata[s].side_leaves()) side.push_back(leaf);
        splits.push_back(std::move(side));
        alpha.push_back(p.alpha[s].str());
    }
    return json{{"n", p.n}, {"splits", std::move(splits)}, {"alpha", std::move(alpha)}};
}

SkeletonPoint skeleton_point_from_json(const json& j) {
    int n = j.at("n").get<int>();
    const json& splits = j.at("splits");
    const json& alpha = j.at("alpha");
    if (splits.size() != alpha.size())
        throw std::invalid_argument("stratum json: splits and alpha lengths differ");
    std::vector<std::pair<Split, Rational>> weighted;
    for (size_t s = 0; s < splits.size(); ++s) {
        std::uint32_t mask = 0;
        for (const auto& leaf : splits[s]) {
            int l = leaf.get<int>();
            if (l < 1 || l > n) throw std::invalid_argument("stratum json: leaf out of range");
            mask |= Split::bit(l);
        }
        weighted.emplace_back(Split(mask, n), Rational::parse(alpha[s].get<std::string>()));
    }
    return make_skeleton_point(n, weighted);
}

json to_json(const LaurentPoly& f) {
    json terms = json::array();
    for (const LaurentTerm& t : f.terms)
        terms.push_back(json{{"exps", t.exps}, {"vK", t.coeff_val.str()}});
    return json{{"alphabet", f.alphabet}, {"terms", std::move(terms)}};
}

LaurentPoly poly_from_json(const json& j) {
    LaurentPoly f;
    f.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    for (const auto& t : j.at("terms")) {
        LaurentTerm term;
        term.exps = t.at("exps").get<std::vector<int>>();
        term.coeff_val = Rational::parse(t.at("vK").get<std::string>());
        f.terms.push_back(std::move(term));
    }
    f.validate();
    return f;
}

json to_json(const ComparisonReport& r) {
    json cone = json::array();
    json lengths = json::array();
    for (size_t s = 0; s < r.cone.size(); ++s) {
        cone.push_back(r.cone[s].name());
        lengths.push_back(r.lengths[s].str());
    }
    json gens = json::array();
    for (const auto& g : r.generator_pairs)
        gens.push_back(json{{"symbol", g.symbol},
                            {"section", g.section.str()},
                            {"skeleton", g.skeleton.str()}});
    json j{{"n", r.n},
           {"cone", std::move(cone)},
           {"lengths", std::move(lengths)},
           {"generators", std::move(gens)},
           {"pass", r.pass},
           {"seed", r.seed}};
    if (!r.pass) j["detail"] = r.detail;
    return j;
}

json to_json(const SweepSummary::PerN& s, std::uint64_t seed) {
    return json{{"n", s.n},
                {"cones", s.cones},
                {"points", s.points},
                {"failures", s.failures},
                {"seed", seed}};
}

json to_json(const IntersectionGraph& g) {
    json nodes = json::array();
    for (const auto& d : g.nodes) {
        json node{{"name", d.name()}};
        if (g.n == 5) node["class"] = d.kapranov_label();
        nodes.push_back(std::move(node));
    }
    json edges = json::array();
    for (auto [a, b] : g.edge_list) edges.push_back(json::array({a, b}));
    return json{{"n", g.n}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

} // namespace m0n

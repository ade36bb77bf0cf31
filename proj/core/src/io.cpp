// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "odfl/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "odfl/errors.hpp"

namespace odfl {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

void require_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional = {}) {
    if (!obj.is_object()) throw InputError(std::string(where) + " must be an object");
    std::set<std::string_view> known(required);
    known.insert(optional.begin(), optional.end());
    for (const auto& [key, _] : obj.items())
        if (!known.contains(key)) throw InputError("unknown key \"" + key + "\" in " + std::string(where));
    for (auto key : required)
        if (!obj.contains(key)) throw InputError("missing key \"" + std::string(key) + "\" in " + std::string(where));
}

// json's typed getters throw type_error; report those as input errors.
template <class T>
T get_as(const json& value, std::string_view what) {
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw InputError("wrong type for " + std::string(what));
    }
}

const json& array_at(const json& obj, const char* key, std::string_view where) {
    const json& v = obj.at(key);
    if (!v.is_array()) throw InputError(std::string(where) + "." + key + " must be an array");
    return v;
}

}  // namespace

UnderlayNet parse_topology(std::string_view text) {
    const json doc = parse_json(text);
    require_keys(doc, "topology", {"nodes", "links", "agents"}, {"paths"});

    auto nodes = get_as<std::vector<std::string>>(doc["nodes"], "nodes");
    auto agents = get_as<std::vector<std::string>>(doc["agents"], "agents");

    std::vector<LinkSpec> links;
    for (const auto& l : array_at(doc, "links", "topology")) {
        require_keys(l, "link", {"a", "b", "capacity"});
        if (!l["capacity"].is_number()) throw InputError("link capacity must be a number");
        links.push_back({get_as<std::string>(l["a"], "link endpoint"), get_as<std::string>(l["b"], "link endpoint"),
                         l["capacity"].get<double>()});
    }

    std::vector<PathSpec> paths;
    if (doc.contains("paths")) {
        for (const auto& p : array_at(doc, "paths", "topology")) {
            require_keys(p, "path", {"from", "to", "nodes"});
            paths.push_back({get_as<std::string>(p["from"], "path.from"), get_as<std::string>(p["to"], "path.to"),
                             get_as<std::vector<std::string>>(p["nodes"], "path.nodes")});
        }
    }
    return UnderlayNet(std::move(nodes), std::move(links), std::move(agents), std::move(paths));
}

UnderlayNet load_topology(const std::filesystem::path& file) { return parse_topology(read_text_file(file)); }

std::string topology_to_json(const UnderlayNet& net) {
    json doc;
    doc["nodes"] = net.node_names();
    doc["links"] = json::array();
    for (const auto& l : net.link_specs()) doc["links"].push_back({{"a", l.a}, {"b", l.b}, {"capacity", l.capacity}});
    doc["agents"] = net.agent_names();
    const auto pinned = net.pinned_specs();
    if (!pinned.empty()) {
        doc["paths"] = json::array();
        for (const auto& p : pinned) doc["paths"].push_back({{"from", p.from}, {"to", p.to}, {"nodes", p.nodes}});
    }
    return doc.dump(2) + "\n";
}

std::string categories_to_json(const CategoryTable& cats, const UnderlayNet* net) {
    json doc;
    doc["agents"] = cats.agent_count();
    doc["categories"] = json::array();
    for (const auto& cat : cats.categories()) {
        json c;
        c["members"] = json::array();
        for (const auto& l : cat.members) c["members"].push_back({l.i, l.j});
        c["links"] = cat.links;
        if (net) {
            c["link_names"] = json::array();
            for (auto e : cat.links)
                c["link_names"].push_back(net->node_name(net->link(e).a) + "-" + net->node_name(net->link(e).b));
        }
        c["capacity"] = cat.capacity;
        c["groups"] = json::array();
        for (const auto& g : cat.groups) {
            json gj;
            gj["aligned"] = json::array();
            for (bool a : g.aligned) gj["aligned"].push_back(a);
            gj["links"] = g.links;
            gj["capacity"] = g.capacity;
            c["groups"].push_back(std::move(gj));
        }
        doc["categories"].push_back(std::move(c));
    }
    return doc.dump(2) + "\n";
}

CategoryTable parse_categories(std::string_view text) {
    const json doc = parse_json(text);
    require_keys(doc, "category table", {"agents", "categories"});
    const int m = get_as<int>(doc["agents"], "agents");
    std::vector<Category> cats;
    for (const auto& c : array_at(doc, "categories", "category table")) {
        require_keys(c, "category", {"members", "capacity"}, {"links", "link_names", "groups"});
        Category cat;
        for (const auto& pair : get_as<std::vector<std::vector<int>>>(c["members"], "category.members")) {
            if (pair.size() != 2) throw InputError("category member must be a pair [i, j]");
            cat.members.push_back(make_link(pair[0], pair[1]));
        }
        if (c.contains("links")) cat.links = get_as<std::vector<std::size_t>>(c["links"], "category.links");
        cat.capacity = get_as<double>(c["capacity"], "category.capacity");
        if (c.contains("groups")) {
            for (const auto& g : c["groups"]) {
                require_keys(g, "orientation group", {"aligned", "capacity"}, {"links"});
                OrientationGroup group;
                group.aligned = get_as<std::vector<bool>>(g["aligned"], "group.aligned");
                if (g.contains("links")) group.links = get_as<std::vector<std::size_t>>(g["links"], "group.links");
                group.capacity = get_as<double>(g["capacity"], "group.capacity");
                cat.groups.push_back(std::move(group));
            }
        }
        cats.push_back(std::move(cat));
    }
    return CategoryTable(m, std::move(cats));
}

std::string design_to_json(std::string_view method, const MixingMatrix& w, double rho) {
    json doc;
    doc["method"] = method;
    doc["alpha"] = json::array();
    const int m = w.size();
    for (std::size_t k = 0; k < w.weights().size(); ++k) {
        if (w.weights()[k] == 0.0) continue;
        const auto l = pair_at(k, m);
        doc["alpha"].push_back({{"i", l.i}, {"j", l.j}, {"w", w.weights()[k]}});
    }
    doc["rho"] = rho;
    return doc.dump(2) + "\n";
}

DesignDocument parse_design(std::string_view text, int agents) {
    const json doc = parse_json(text);
    require_keys(doc, "design", {"method", "alpha"}, {"rho"});
    std::vector<double> alpha(pair_count(agents), 0.0);
    for (const auto& a : array_at(doc, "alpha", "design")) {
        require_keys(a, "weight", {"i", "j", "w"});
        const int i = get_as<int>(a["i"], "weight.i");
        const int j = get_as<int>(a["j"], "weight.j");
        if (i == j || i < 0 || j < 0 || i >= agents || j >= agents)
            throw InputError("design weight on invalid link (" + std::to_string(i) + "," + std::to_string(j) + ")");
        alpha[pair_index(make_link(i, j), agents)] = get_as<double>(a["w"], "weight.w");
    }
    auto w = MixingMatrix::from_weights(alpha, agents);
    const double r = rho(w);
    return {get_as<std::string>(doc["method"], "method"), std::move(w), r};
}

std::string routing_to_json(const RoutingSolution& routing, const DemandSet& demands) {
    json doc;
    doc["flows"] = json::array();
    for (std::size_t h = 0; h < routing.flows.size(); ++h) {
        const auto& route = routing.flows[h];
        json f;
        f["source"] = route.source;
        f["z"] = json::array();
        for (const auto& hop : route.tree) f["z"].push_back({{"from", hop.from}, {"to", hop.to}});
        f["r"] = json::array();
        for (std::size_t k = 0; k < route.paths.size(); ++k)
            f["r"].push_back({{"destination", demands.flows.at(h).destinations.at(k)}, {"path", route.paths[k]}});
        doc["flows"].push_back(std::move(f));
    }
    return doc.dump(2) + "\n";
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string read_text_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InputError("cannot open " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace odfl

#pragma once

#include "feasibility.hpp"
#include "graph.hpp"
#include "trace.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace leavitt {

using json = nlohmann::ordered_json;

struct LoadedGraph {
    Graph graph;
    std::optional<std::vector<int>> s; // absent key = default S = R(E)
};

namespace detail {

inline json parse_json_text(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw error(what + ": " + e.what());
    }
}

inline json parse_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw error("cannot open file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_json_text(text, "file '" + path + "'");
}

inline const json &expect_array(const json &doc, const char *key,
                                const std::string &what) {
    if (!doc.is_object() || !doc.contains(key) || !doc[key].is_array())
        throw error(what + ": expected an object with a \"" + key + "\" array");
    return doc[key];
}

} // namespace detail

/// Graph document:
///   {"vertices": ["v","w"], "edges": [{"id":"e","src":"v","rng":"w"}], "S": ["v"]}
/// "S" is optional; when present it must name regular vertices ("S": []
/// selects the Cohn algebra).
inline LoadedGraph load_graph_doc(const json &doc) {
    LoadedGraph out;
    for (const auto &v : detail::expect_array(doc, "vertices", "graph document")) {
        if (!v.is_string())
            throw error("graph document: vertex entries must be strings");
        out.graph.add_vertex(v.get<std::string>());
    }
    for (const auto &e : detail::expect_array(doc, "edges", "graph document")) {
        if (!e.is_object() || !e.contains("id") || !e.contains("src") || !e.contains("rng"))
            throw error("graph document: edge entries need \"id\", \"src\", \"rng\"");
        out.graph.add_edge(e["id"].get<std::string>(), e["src"].get<std::string>(),
                           e["rng"].get<std::string>());
    }
    if (doc.contains("S")) {
        auto cls = classify_vertices(out.graph);
        std::vector<int> s;
        for (const auto &id : doc["S"]) {
            if (!id.is_string())
                throw error("graph document: S entries must be vertex ids");
            auto v = out.graph.find_vertex(id.get<std::string>());
            if (!v)
                throw error("S contains unknown vertex '" + id.get<std::string>() + "'");
            if (!cls.is_regular[*v])
                throw error("S contains non-regular vertex " + id.get<std::string>());
            s.push_back(*v);
        }
        out.s = std::move(s);
    }
    return out;
}

inline LoadedGraph load_graph_file(const std::string &path) {
    return load_graph_doc(detail::parse_json_file(path));
}

/// Serializes with S explicit, so the document selects the same algebra
/// when reloaded.
inline json graph_to_json(const Graph &g, const std::vector<int> &s) {
    json doc;
    doc["vertices"] = json::array();
    for (int v = 0; v < g.vertex_count(); ++v)
        doc["vertices"].push_back(g.vertex_id(v));
    doc["edges"] = json::array();
    for (int e = 0; e < g.edge_count(); ++e)
        doc["edges"].push_back({{"id", g.edge(e).id},
                                {"src", g.vertex_id(g.source(e))},
                                {"rng", g.vertex_id(g.range(e))}});
    doc["S"] = json::array();
    for (int v : s)
        doc["S"].push_back(g.vertex_id(v));
    return doc;
}

/// Trace document: {"values": {"v": "1", "w": "1/2"}} with scalar text
/// values; every vertex of the graph must be assigned.
inline GraphTrace load_trace_doc(const json &doc, const Graph &g,
                                 const FieldConfig &field) {
    if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_object())
        throw error("trace document: expected an object with a \"values\" object");
    GraphTrace d;
    d.values.assign(g.vertex_count(), Scalar(0));
    std::vector<char> seen(g.vertex_count(), 0);
    for (const auto &[id, val] : doc["values"].items()) {
        auto v = g.find_vertex(id);
        if (!v)
            throw error("trace names unknown vertex '" + id + "'");
        if (!val.is_string())
            throw error("trace value for '" + id + "' must be a scalar string");
        auto c = parse_scalar(val.get<std::string>(), field);
        if (!c)
            throw error("trace value for '" + id + "' is not a scalar: '" +
                        val.get<std::string>() + "'");
        d.values[*v] = *c;
        seen[*v] = 1;
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!seen[v])
            throw error("trace is missing vertex '" + g.vertex_id(v) + "'");
    return d;
}

inline GraphTrace load_trace_file(const std::string &path, const Graph &g,
                                  const FieldConfig &field) {
    return load_trace_doc(detail::parse_json_file(path), g, field);
}

inline json trace_to_json(const GraphTrace &d, const Graph &g) {
    json values = json::object();
    for (int v = 0; v < g.vertex_count(); ++v)
        values[g.vertex_id(v)] = to_string(d.values[v]);
    return json{{"values", std::move(values)}};
}

/// Subgraph document: {"vertices": ["v"], "edges": ["e"]} with ids from the
/// ambient graph.
inline Subgraph load_subgraph_doc(const json &doc, const Graph &g) {
    Subgraph sub;
    for (const auto &id : detail::expect_array(doc, "vertices", "subgraph document")) {
        if (!id.is_string())
            throw error("subgraph document: vertex entries must be ids");
        auto v = g.find_vertex(id.get<std::string>());
        if (!v)
            throw error("subgraph names unknown vertex '" + id.get<std::string>() + "'");
        sub.vertices.push_back(*v);
    }
    for (const auto &id : detail::expect_array(doc, "edges", "subgraph document")) {
        if (!id.is_string())
            throw error("subgraph document: edge entries must be ids");
        auto e = g.find_edge(id.get<std::string>());
        if (!e)
            throw error("subgraph names unknown edge '" + id.get<std::string>() + "'");
        sub.edges.push_back(*e);
    }
    return sub;
}

inline Subgraph load_subgraph_file(const std::string &path, const Graph &g) {
    return load_subgraph_doc(detail::parse_json_file(path), g);
}

inline std::string relation_str(LinearConstraint::Rel rel) {
    switch (rel) {
    case LinearConstraint::Rel::eq:
        return "=";
    case LinearConstraint::Rel::ge:
        return ">=";
    default:
        return ">";
    }
}

/// Infeasibility certificate: the named multiplier combination of input
/// constraints derives a false ground statement such as "0 > 0".
inline json certificate_to_json(const InfeasibilityCertificate &cert,
                                const std::vector<LinearConstraint> &constraints) {
    json combo = json::array();
    for (const auto &term : cert.combination)
        combo.push_back({{"id", constraints[term.index].id}, {"mult", term.mult.str()}});
    return json{{"certificate", std::move(combo)},
                {"derived", "0 " + relation_str(cert.rel) + " " + cert.rhs.str()}};
}

} // namespace leavitt

#pragma once

// File formats and report documents for the command-line tool. Complexes
// are plain text (one facet per line, whitespace-separated labels, '#'
// comments) or JSON ({"facets": [[...], ...]}); reports are JSON with
// deterministic key order and exact fractions rendered as "p/q" strings.

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tight/complex.hpp"
#include "tight/report.hpp"

namespace tight {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline SimplicialComplex parse_complex_text(std::istream& in) {
    std::vector<std::vector<std::string>> facets;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream row(line);
        std::vector<std::string> facet;
        std::string tok;
        while (row >> tok) facet.push_back(tok);
        if (facet.empty()) continue;
        std::set<std::string> uniq(facet.begin(), facet.end());
        if (uniq.size() != facet.size())
            throw ParseError("line " + std::to_string(lineno) + ": repeated label in facet");
        facets.push_back(std::move(facet));
    }
    if (facets.empty()) throw ParseError("no facets found");
    return SimplicialComplex::build(facets);
}

inline SimplicialComplex parse_complex_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("facets") || !doc["facets"].is_array())
        throw ParseError("JSON document must contain a \"facets\" array");
    std::vector<std::vector<std::string>> facets;
    for (const auto& row : doc["facets"]) {
        if (!row.is_array()) throw ParseError("facet entries must be arrays");
        std::vector<std::string> facet;
        for (const auto& lab : row) {
            if (lab.is_string())
                facet.push_back(lab.get<std::string>());
            else if (lab.is_number_integer())
                facet.push_back(std::to_string(lab.get<long>()));
            else
                throw ParseError("labels must be strings or integers");
        }
        facets.push_back(std::move(facet));
    }
    if (facets.empty()) throw ParseError("no facets found");
    std::set<std::string> seen;
    for (size_t i = 0; i < facets.size(); ++i) {
        std::set<std::string> uniq(facets[i].begin(), facets[i].end());
        if (uniq.size() != facets[i].size())
            throw ParseError("facet " + std::to_string(i) + ": repeated label");
    }
    return SimplicialComplex::build(facets);
}

inline SimplicialComplex parse_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_complex_json(text);
    std::istringstream stream(text);
    return parse_complex_text(stream);
}

inline std::string render_complex(const SimplicialComplex& c) {
    std::string out;
    for (const auto& f : c.facets()) {
        for (size_t i = 0; i < f.size(); ++i) {
            if (i) out += " ";
            out += c.label(f[i]);
        }
        out += "\n";
    }
    return out;
}

inline nlohmann::json input_summary_json(const SimplicialComplex& c) {
    nlohmann::json j;
    j["dimension"] = c.dim();
    j["vertices"] = c.vertex_count();
    j["f_vector"] = c.f_vector();
    j["two_neighbourly"] = c.is_k_neighbourly(2);
    return j;
}

inline nlohmann::json report_json(const SimplicialComplex& c, const TightnessReport& rep,
                                  bool with_certificate) {
    nlohmann::json j;
    j["input"] = input_summary_json(c);
    j["algorithm"] = rep.algorithm;
    j["field"] = rep.field;
    j["verdict"] = verdict_str(rep.verdict);
    if (rep.reason != Reason::None) j["reason"] = reason_str(rep.reason);
    if (rep.mu1) j["mu1"] = rep.mu1->str();
    if (rep.beta1) j["beta1"] = *rep.beta1;
    if (!rep.note.empty()) j["note"] = rep.note;
    if (with_certificate) {
        nlohmann::json cert;
        if (rep.witness) {
            cert["witness"] = {{"W", rep.witness->W},
                               {"k", rep.witness->k},
                               {"cycle", rep.witness->cycle}};
        }
        if (rep.obstruction) {
            cert["obstruction"] = {{"j", rep.obstruction->j},
                                   {"bag", rep.obstruction->bag},
                                   {"kind", rep.obstruction->kind},
                                   {"detail", rep.obstruction->detail}};
        }
        if (!cert.empty()) j["certificate"] = cert;
    }
    return j;
}

}  // namespace tight

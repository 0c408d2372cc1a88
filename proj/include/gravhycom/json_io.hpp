#pragma once

#include "moduli.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace gravhycom {

using Json = nlohmann::ordered_json;

/// Integers are emitted as JSON numbers when they fit in 64 bits, otherwise as decimal strings.
inline Json integer_to_json(const Integer& v) {
    if (fits_int64(v)) return static_cast<std::int64_t>(v);
    return v.str();
}

inline Json to_json(const BasedCactusCell& c) { return Json(c.word()); }

inline Json to_json(const NecklaceCell& c) {
    Json j;
    j["word"] = c.word();
    j["cyclic"] = true;
    return j;
}

inline Json to_json(const NestedTree& t) {
    Json j = Json::array();
    for (const auto& v : t.vertices()) j.push_back(v);
    return j;
}

inline std::string vertex_key(const LeafSet& v) { return to_string(v); }

inline Json to_json(const DecoratedTreeCell& c) {
    Json j;
    j["tree"] = to_json(c.tree());
    Json dec = Json::object();
    auto order = c.tree().dfs_order();
    std::vector<std::pair<LeafSet, Word>> sorted;
    for (std::size_t k = 0; k < order.size(); ++k) sorted.emplace_back(order[k], c.labels()[k].word());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [v, w] : sorted) dec[vertex_key(v)] = w;
    j["decorations"] = dec;
    return j;
}

template <class Cell>
Json to_json(const Chain<Cell>& x) {
    Json j;
    j["degree"] = x.degree;
    Json terms = Json::array();
    for (const auto& [c, k] : x.terms) terms.push_back({{"cell", to_json(c)}, {"coeff", integer_to_json(k)}});
    j["terms"] = terms;
    return j;
}

namespace detail {

inline Word parse_word(const Json& j) {
    if (j.is_array()) return j.get<Word>();
    if (j.is_object() && j.contains("word")) return j.at("word").get<Word>();
    if (j.is_string()) {
        Word w;
        std::stringstream ss(j.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) w.push_back(std::stoi(item));
        return w;
    }
    throw std::invalid_argument("expected a word as a JSON array, {\"word\": [...]}, or comma-separated string");
}

inline Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error&) {
        return Json(text);
    }
}

}  // namespace detail

/// Accepts JSON ("[1,2,1]") or comma-separated text ("1,2,1").
inline BasedCactusCell parse_based(const std::string& text) {
    return BasedCactusCell(detail::parse_word(detail::parse_text(text)));
}

inline NecklaceCell parse_necklace(const std::string& text) {
    return NecklaceCell(detail::parse_word(detail::parse_text(text)));
}

/// Accepts the decorated-cell JSON form, or "pt<n>" for the corolla with the least necklace.
inline DecoratedTreeCell parse_decorated(const std::string& text) {
    if (text.rfind("pt", 0) == 0) {
        int n = std::stoi(text.substr(2));
        return DecoratedTreeCell(NestedTree::corolla(n), {enumerate_necklaces(n, 0).front()});
    }
    if (text == "unit") return DecoratedTreeCell::unit();
    Json j = Json::parse(text);
    std::vector<LeafSet> vs = j.at("tree").get<std::vector<LeafSet>>();
    int n = 0;
    for (const auto& v : vs)
        for (int x : v) n = std::max(n, x);
    NestedTree t(n, vs);
    std::map<LeafSet, NecklaceCell> labels;
    for (const auto& [key, w] : j.at("decorations").items()) {
        LeafSet v;
        std::stringstream ss(key);
        std::string item;
        while (std::getline(ss, item, ',')) v.push_back(std::stoi(item));
        Word word = detail::parse_word(w);
        labels.emplace(v, NecklaceCell(word, static_cast<int>(t.valence(v))));
    }
    return DecoratedTreeCell::from_map(t, labels);
}

}  // namespace gravhycom

#include "ipps/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ipps {

using nlohmann::json;
using nlohmann::ordered_json;

SetSystem validate_set_system(std::int64_t n, std::int64_t k,
                              std::optional<ProductShape> product,
                              const std::vector<std::vector<std::int64_t>>& raw_blocks) {
    if (n < 1) throw input_error("n must be positive");
    if (k < 1) throw input_error("k must be positive");
    if (k > n) throw input_error("k > n: block size exceeds ground set");
    if (product) {
        if (product->L < 1 || product->V < 1)
            throw input_error("product: L and V must be positive");
        if (product->L * product->V != n)
            throw input_error("product: L*V must equal n");
    }

    SetSystem sys;
    sys.n = n;
    sys.k = k;
    sys.product = product;
    sys.blocks.reserve(raw_blocks.size());

    std::set<std::vector<std::int64_t>> seen;
    for (std::size_t bi = 0; bi < raw_blocks.size(); ++bi) {
        std::vector<std::int64_t> pts = raw_blocks[bi];
        std::sort(pts.begin(), pts.end());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i] < 1 || pts[i] > n) {
                std::ostringstream os;
                os << "blocks[" << bi << "]: point " << pts[i]
                   << " outside ground set [1, " << n << "]";
                throw input_error(os.str());
            }
            if (i > 0 && pts[i] == pts[i - 1]) {
                std::ostringstream os;
                os << "blocks[" << bi << "]: duplicate point " << pts[i];
                throw input_error(os.str());
            }
        }
        if (static_cast<std::int64_t>(pts.size()) != k) {
            std::ostringstream os;
            os << "blocks[" << bi << "]: has " << pts.size() << " points, expected k=" << k;
            throw input_error(os.str());
        }
        if (!seen.insert(pts).second) {
            std::ostringstream os;
            os << "blocks[" << bi << "]: duplicate block";
            throw input_error(os.str());
        }
        Block b;
        b.points = std::move(pts);
        b.mask = Bitset(static_cast<std::size_t>(n));
        for (auto p : b.points) b.mask.set(static_cast<std::size_t>(p - 1));
        sys.blocks.push_back(std::move(b));
    }
    return sys;
}

namespace {

std::int64_t parse_point(const json& jp, const std::optional<ProductShape>& product,
                         const std::string& path) {
    if (jp.is_number_integer()) return jp.get<std::int64_t>();
    if (jp.is_array() && jp.size() == 2 && product) {
        std::int64_t c = jp[0].get<std::int64_t>();
        std::int64_t v = jp[1].get<std::int64_t>();
        if (c < 1 || c > product->L)
            throw input_error(path + ": coordinate " + std::to_string(c) + " outside [1, L]");
        if (v < 1 || v > product->V)
            throw input_error(path + ": value " + std::to_string(v) + " outside [1, V]");
        return flat_point(*product, c, v);
    }
    throw input_error(path + ": point must be an integer" +
                      (product ? " or a [coordinate, value] pair" : ""));
}

json point_to_json(std::int64_t flat, const std::optional<ProductShape>& product) {
    if (!product) return json(flat);
    Point p = product_point(*product, flat);
    return json::array({p.coordinate, p.value});
}

}  // namespace

SetSystem parse_set_system(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw input_error("top level: expected an object");
    for (const char* field : {"n", "k", "blocks"})
        if (!j.contains(field))
            throw input_error(std::string("missing field \"") + field + "\"");
    if (!j["n"].is_number_integer()) throw input_error("n: expected an integer");
    if (!j["k"].is_number_integer()) throw input_error("k: expected an integer");
    if (!j["blocks"].is_array()) throw input_error("blocks: expected an array");

    std::optional<ProductShape> product;
    if (j.contains("product") && !j["product"].is_null()) {
        const auto& jp = j["product"];
        if (!jp.is_object() || !jp.contains("L") || !jp.contains("V"))
            throw input_error("product: expected {\"L\": int, \"V\": int}");
        product = ProductShape{jp["L"].get<std::int64_t>(), jp["V"].get<std::int64_t>()};
    }

    std::vector<std::vector<std::int64_t>> raw;
    for (std::size_t bi = 0; bi < j["blocks"].size(); ++bi) {
        const auto& jb = j["blocks"][bi];
        if (!jb.is_array())
            throw input_error("blocks[" + std::to_string(bi) + "]: expected an array");
        std::vector<std::int64_t> pts;
        for (std::size_t pi = 0; pi < jb.size(); ++pi) {
            std::string path = "blocks[" + std::to_string(bi) + "][" + std::to_string(pi) + "]";
            pts.push_back(parse_point(jb[pi], product, path));
        }
        raw.push_back(std::move(pts));
    }
    return validate_set_system(j["n"].get<std::int64_t>(), j["k"].get<std::int64_t>(),
                               product, raw);
}

std::string serialize_set_system(const SetSystem& sys) {
    ordered_json j;
    j["n"] = sys.n;
    j["k"] = sys.k;
    if (sys.product) j["product"] = {{"L", sys.product->L}, {"V", sys.product->V}};
    auto blocks = json::array();
    for (const auto& b : sys.blocks) {
        auto jb = json::array();
        for (auto p : b.points) jb.push_back(point_to_json(p, sys.product));
        blocks.push_back(std::move(jb));
    }
    j["blocks"] = std::move(blocks);
    return j.dump(2) + "\n";
}

std::vector<std::int64_t> parse_point_set(const std::string& text, const SetSystem& sys) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw input_error("expected {\"points\": [...]}");
    std::vector<std::int64_t> pts;
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
        std::string path = "points[" + std::to_string(i) + "]";
        std::int64_t p = parse_point(j["points"][i], sys.product, path);
        if (p < 1 || p > sys.n) throw input_error(path + ": point outside ground set");
        pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::string report_to_json(const VerificationReport& rep, const SetSystem* sys) {
    ordered_json j;
    j["property"] = rep.property;
    j["verdict"] = rep.pass ? "pass" : "fail";
    if (rep.witness) {
        const Witness& w = *rep.witness;
        ordered_json jw;
        if (!w.blocks.empty()) {
            auto arr = json::array();
            for (int b : w.blocks) arr.push_back(b + 1);
            jw["blocks"] = std::move(arr);
        }
        if (!w.parents.empty()) {
            auto arr = json::array();
            for (const auto& pset : w.parents) {
                auto one = json::array();
                for (int b : pset) one.push_back(b + 1);
                arr.push_back(std::move(one));
            }
            jw["parents"] = std::move(arr);
        }
        if (!w.points.empty()) {
            auto arr = json::array();
            for (auto p : w.points)
                arr.push_back(point_to_json(p, sys ? sys->product : std::nullopt));
            jw["points"] = std::move(arr);
        }
        if (!w.word.empty()) jw["word"] = w.word;
        if (w.has_equation) {
            auto je = json::array();
            for (auto c : w.equation) je.push_back(c);
            je.push_back(w.equation_cm ? "CM" : "AE");
            jw["equation"] = std::move(je);
            jw["assignment"] = w.assignment;
        }
        j["witness"] = std::move(jw);
    } else {
        j["witness"] = nullptr;
    }
    j["stats"] = {{"examined", rep.stats.examined},
                  {"pruned", rep.stats.pruned},
                  {"work", rep.stats.work}};
    return j.dump(2) + "\n";
}

std::string report_to_json(const VerificationReport& rep) {
    return report_to_json(rep, nullptr);
}

}  // namespace ipps

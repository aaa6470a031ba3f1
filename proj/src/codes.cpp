#include "ipps/codes.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ipps {

using nlohmann::json;
using nlohmann::ordered_json;

Code validate_code(std::int64_t q, std::int64_t length,
                   const std::vector<std::vector<int>>& words) {
    if (q < 1) throw input_error("code: q must be positive");
    if (length < 1) throw input_error("code: length must be positive");
    Code code;
    code.q = q;
    code.length = length;
    std::set<std::vector<int>> seen;
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
        const auto& w = words[wi];
        if (static_cast<std::int64_t>(w.size()) != length)
            throw input_error("words[" + std::to_string(wi) + "]: wrong length");
        for (int s : w)
            if (s < 1 || s > q)
                throw input_error("words[" + std::to_string(wi) + "]: symbol outside [1, q]");
        if (!seen.insert(w).second)
            throw input_error("words[" + std::to_string(wi) + "]: duplicate word");
        code.words.push_back(w);
    }
    return code;
}

Code parse_code(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
    for (const char* field : {"q", "length", "words"})
        if (!j.contains(field))
            throw input_error(std::string("missing field \"") + field + "\"");
    std::int64_t q = j["q"].get<std::int64_t>();
    std::int64_t length = j["length"].get<std::int64_t>();
    std::vector<std::vector<int>> words;
    for (std::size_t wi = 0; wi < j["words"].size(); ++wi) {
        const auto& jw = j["words"][wi];
        std::vector<int> w;
        if (jw.is_string()) {
            for (char ch : jw.get<std::string>()) {
                if (ch < '1' || ch > '9')
                    throw input_error("words[" + std::to_string(wi) +
                                      "]: symbol strings use digits 1..9");
                w.push_back(ch - '0');
            }
        } else if (jw.is_array()) {
            for (const auto& s : jw) w.push_back(s.get<int>());
        } else {
            throw input_error("words[" + std::to_string(wi) +
                              "]: expected a digit string or an integer array");
        }
        words.push_back(std::move(w));
    }
    return validate_code(q, length, words);
}

std::string serialize_code(const Code& code) {
    ordered_json j;
    j["q"] = code.q;
    j["length"] = code.length;
    auto words = json::array();
    for (const auto& w : code.words) {
        if (code.q <= 9) {
            std::string s;
            for (int sym : w) s.push_back(static_cast<char>('0' + sym));
            words.push_back(s);
        } else {
            words.push_back(w);
        }
    }
    j["words"] = std::move(words);
    return j.dump(2) + "\n";
}

std::vector<std::vector<int>> desc(const Code& code, const std::vector<int>& coalition) {
    if (coalition.empty()) throw input_error("desc: coalition must be nonempty");
    for (int wi : coalition)
        if (wi < 0 || wi >= static_cast<int>(code.words.size()))
            throw input_error("desc: word index out of range");

    std::vector<std::vector<int>> columns(static_cast<std::size_t>(code.length));
    for (std::size_t i = 0; i < columns.size(); ++i) {
        std::set<int> symbols;
        for (int wi : coalition) symbols.insert(code.words[wi][i]);
        columns[i].assign(symbols.begin(), symbols.end());
    }

    std::vector<std::vector<int>> out;
    std::vector<std::size_t> odo(columns.size(), 0);
    while (true) {
        std::vector<int> word(columns.size());
        for (std::size_t i = 0; i < columns.size(); ++i) word[i] = columns[i][odo[i]];
        out.push_back(std::move(word));
        std::size_t i = columns.size();
        while (i > 0) {
            --i;
            if (++odo[i] < columns[i].size()) break;
            odo[i] = 0;
            if (i == 0) return out;
        }
    }
}

namespace {

bool in_desc(const Code& code, const std::vector<int>& coalition, const std::vector<int>& d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        bool seen = false;
        for (int wi : coalition) seen |= code.words[wi][i] == d[i];
        if (!seen) return false;
    }
    return true;
}

std::vector<int> family_key(std::vector<std::vector<int>> members) {
    for (auto& m : members) std::sort(m.begin(), m.end());
    std::sort(members.begin(), members.end());
    std::vector<int> key;
    std::size_t pos = 0;
    bool more = true;
    while (more) {
        more = false;
        for (const auto& m : members)
            if (pos < m.size()) {
                key.push_back(m[pos]);
                more = true;
            }
        ++pos;
    }
    return key;
}

template <typename Fn>
void for_each_subset(int n, int max_size, Fn fn) {
    std::vector<int> combo;
    for (int size = 1; size <= std::min(max_size, n); ++size) {
        combo.clear();
        for (int i = 0; i < size; ++i) combo.push_back(i);
        while (true) {
            fn(combo);
            int i = size - 1;
            while (i >= 0 && combo[i] == n - size + i) --i;
            if (i < 0) break;
            ++combo[i];
            for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
        }
    }
}

}  // namespace

VerificationReport verify_ippc_bruteforce(const Code& code, int t) {
    const int nw = static_cast<int>(code.words.size());
    if (nw > 16 || t > 3)
        throw input_error("verify_ippc_bruteforce: instance outside the guard (|C| <= 16, t <= 3)");
    if (t < 1) throw input_error("verify_ippc_bruteforce: t must be >= 1");

    VerificationReport rep;
    rep.property = "IPPC-def";

    // descendants only ever come from some coalition of size <= t
    std::set<std::vector<int>> cands;
    for_each_subset(nw, t, [&](const std::vector<int>& coalition) {
        for (auto& d : desc(code, coalition)) cands.insert(std::move(d));
    });

    bool found = false;
    std::pair<std::vector<int>, std::vector<int>> best_key;
    Witness best;

    for (const auto& d : cands) {
        ++rep.stats.examined;
        std::vector<std::vector<int>> family;
        for_each_subset(nw, t, [&](const std::vector<int>& coalition) {
            ++rep.stats.work;
            if (in_desc(code, coalition, d)) family.push_back(coalition);
        });
        if (family.empty()) continue;
        std::set<int> inter(family[0].begin(), family[0].end());
        for (std::size_t i = 1; i < family.size() && !inter.empty(); ++i) {
            std::set<int> next;
            for (int w : family[i])
                if (inter.count(w)) next.insert(w);
            inter = std::move(next);
        }
        if (!inter.empty()) continue;

        std::pair<std::vector<int>, std::vector<int>> key{family_key(family), d};
        if (!found || key < best_key) {
            found = true;
            best_key = key;
            best.word = d;
            best.parents = family;
        }
    }

    if (found) {
        rep.pass = false;
        rep.witness = best;
    }
    return rep;
}

SetSystem kautz_singleton(const Code& code) {
    ProductShape shape{code.length, code.q};
    std::vector<std::vector<std::int64_t>> raw;
    for (const auto& w : code.words) {
        std::vector<std::int64_t> pts;
        for (std::int64_t i = 0; i < code.length; ++i)
            pts.push_back(flat_point(shape, i + 1, w[static_cast<std::size_t>(i)]));
        raw.push_back(std::move(pts));
    }
    return validate_set_system(code.length * code.q, code.length, shape, raw);
}

Code hamming_ternary() {
    const char* words[] = {"1111", "1222", "1333", "2123", "2231",
                           "2312", "3132", "3213", "3321"};
    std::vector<std::vector<int>> ws;
    for (const char* w : words) {
        std::vector<int> v;
        for (const char* c = w; *c; ++c) v.push_back(*c - '0');
        ws.push_back(v);
    }
    return validate_code(3, 4, ws);
}

bool recheck_code_witness(const Code& code, const VerificationReport& rep) {
    if (rep.pass || !rep.witness) return false;
    const Witness& w = *rep.witness;
    if (rep.property != "IPPC-def" || w.parents.empty()) return false;
    if (static_cast<std::int64_t>(w.word.size()) != code.length) return false;

    std::set<int> inter;
    bool first = true;
    for (const auto& coalition : w.parents) {
        for (int wi : coalition)
            if (wi < 0 || wi >= static_cast<int>(code.words.size())) return false;
        if (!in_desc(code, coalition, w.word)) return false;
        std::set<int> members(coalition.begin(), coalition.end());
        if (first) {
            inter = members;
            first = false;
        } else {
            std::set<int> next;
            for (int x : inter)
                if (members.count(x)) next.insert(x);
            inter = std::move(next);
        }
    }
    return inter.empty();
}

}  // namespace ipps

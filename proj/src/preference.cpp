#include "reprank/preference.hpp"

#include <algorithm>

#include <json.hpp>

namespace reprank {

std::size_t Spo::index_of(const std::string& f) const {
    for (std::size_t i = 0; i < features_.size(); ++i)
        if (features_[i] == f) return i;
    throw ValidationError("unknown feature '" + f + "'");
}

bool Spo::has_feature(const std::string& f) const {
    return std::find(features_.begin(), features_.end(), f) != features_.end();
}

Spo Spo::from_pairs(std::vector<std::string> features,
                    const std::vector<std::pair<std::string, std::string>>& prefers) {
    Spo spo;
    spo.features_ = std::move(features);
    const std::size_t n = spo.features_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (spo.features_[i] == spo.features_[j])
                throw ValidationError("duplicate feature '" + spo.features_[i] + "'");
    spo.closed_.assign(n * n, false);
    for (const auto& [a, b] : prefers) {
        std::size_t i = spo.index_of(a);
        std::size_t j = spo.index_of(b);
        if (i == j) throw ValidationError("preference cycle at feature '" + a + "'");
        spo.closed_[i * n + j] = true;
    }
    // Warshall closure, then irreflexivity.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!spo.closed_[i * n + k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (spo.closed_[k * n + j]) spo.closed_[i * n + j] = true;
        }
    for (std::size_t i = 0; i < n; ++i)
        if (spo.closed_[i * n + i])
            throw ValidationError("preference cycle at feature '" + spo.features_[i] + "'");
    spo.compute_ranks();
    return spo;
}

void Spo::compute_ranks() {
    const std::size_t n = features_.size();
    ranks_.assign(n, 0);
    std::vector<bool> removed(n, false);
    for (int r = 1; std::find(ranks_.begin(), ranks_.end(), 0) != ranks_.end(); ++r) {
        // maximal among the remaining: nothing remaining is preferred over it
        std::vector<std::size_t> layer;
        for (std::size_t j = 0; j < n; ++j) {
            if (removed[j]) continue;
            bool dominated = false;
            for (std::size_t i = 0; i < n && !dominated; ++i)
                dominated = !removed[i] && closed_[i * n + j];
            if (!dominated) layer.push_back(j);
        }
        for (std::size_t j : layer) {
            ranks_[j] = r;
            removed[j] = true;
        }
    }
}

bool Spo::prefers(const std::string& fi, const std::string& fj) const {
    return prefers_at(index_of(fi), index_of(fj));
}

int Spo::rank(const std::string& f) const { return ranks_[index_of(f)]; }

std::vector<std::pair<std::size_t, std::size_t>> Spo::pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = features_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (closed_[i * n + j]) out.emplace_back(i, j);
    return out;
}

double sim_pair(const std::string& fi, const std::string& fj, const Spo& p1, const Spo& p2) {
    const bool a1 = p1.prefers(fi, fj), b1 = p1.prefers(fj, fi);
    const bool a2 = p2.prefers(fi, fj), b2 = p2.prefers(fj, fi);
    if ((a1 && a2) || (b1 && b2)) return 1.0;          // same order
    if (!a1 && !a2 && !b1 && !b2) return 1.0;          // both silent
    if ((a1 != a2 && !b1 && !b2) || (b1 != b2 && !a1 && !a2)) return 0.5;   // one silent
    return 0.0;                                         // opposite orders
}

double sim(const Spo& p1, const Spo& p2) {
    if (p1.features() != p2.features())
        throw ValidationError("sim requires preference orders over the same feature tuple");
    const std::size_t n = p1.size();
    if (n <= 1) return 1.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            total += sim_pair(p1.features()[i], p1.features()[j], p1, p2);
    return total / (n * (n - 1) / 2.0);
}

Spo load_spo_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("invalid SPO JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("features") || !j["features"].is_array())
        throw ValidationError("SPO JSON must be an object with a \"features\" array");
    std::vector<std::string> features;
    for (const auto& f : j["features"]) {
        if (!f.is_string()) throw ValidationError("feature names must be strings");
        features.push_back(f.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> prefers;
    if (j.contains("prefers")) {
        for (const auto& p : j["prefers"]) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
                throw ValidationError("\"prefers\" entries must be [from, to] string pairs");
            prefers.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
        }
    }
    return Spo::from_pairs(std::move(features), prefers);
}

std::string spo_to_json(const Spo& spo) {
    nlohmann::json j;
    j["features"] = spo.features();
    auto pairs = nlohmann::json::array();
    for (const auto& [i, k] : spo.pairs())
        pairs.push_back({spo.features()[i], spo.features()[k]});
    j["prefers"] = pairs;
    return j.dump();
}

} // namespace reprank

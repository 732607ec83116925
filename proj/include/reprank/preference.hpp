#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "reprank/ontology.hpp"   // ValidationError

namespace reprank {

// Strict partial order over an ordered feature tuple. Construction closes
// the input pairs transitively and rejects closures that would contain a
// reflexive pair. Immutable; all operations are pure.
class Spo {
public:
    Spo() = default;

    // `prefers` lists covering pairs (a, b) meaning a is preferred over b.
    static Spo from_pairs(std::vector<std::string> features,
                          const std::vector<std::pair<std::string, std::string>>& prefers);

    const std::vector<std::string>& features() const { return features_; }
    std::size_t size() const { return features_.size(); }

    bool has_feature(const std::string& f) const;
    // True when f_i is preferred over f_j in the transitive closure.
    bool prefers(const std::string& fi, const std::string& fj) const;
    bool prefers_at(std::size_t i, std::size_t j) const { return closed_[i * features_.size() + j]; }

    // 1 for maximal elements; k+1 for elements maximal once every element of
    // rank <= k is removed.
    int rank(const std::string& f) const;
    const std::vector<int>& ranks() const { return ranks_; }

    // Closure pairs as (i, j) index pairs, for serialization.
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

    friend bool operator==(const Spo&, const Spo&) = default;

private:
    std::vector<std::string> features_;
    std::vector<bool> closed_;    // n*n adjacency of the transitive closure
    std::vector<int> ranks_;

    std::size_t index_of(const std::string& f) const;
    void compute_ranks();
};

// Pairwise agreement of two SPOs on the relative order of fi and fj:
// 1 when they express the same order or both are silent, 0.5 when exactly
// one is silent, 0 when they express opposite orders.
double sim_pair(const std::string& fi, const std::string& fj, const Spo& p1, const Spo& p2);

// Mean of sim_pair over all unordered feature pairs; 1 for a single-feature
// universe.
double sim(const Spo& p1, const Spo& p2);

// JSON form {"features":[...], "prefers":[["a","b"], ...]}.
Spo load_spo_json(const std::string& json_text);
std::string spo_to_json(const Spo& spo);

} // namespace reprank

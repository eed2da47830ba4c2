#include "scout/similarity.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace scout {

double bigram_dice(const std::string& a, const std::string& b) {
    if (a.size() < 2 && b.size() < 2) return 0.0;
    std::map<std::pair<char, char>, int> ca;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) ++ca[{a[i], a[i + 1]}];
    int common = 0;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        auto it = ca.find({b[i], b[i + 1]});
        if (it != ca.end() && it->second > 0) {
            --it->second;
            ++common;
        }
    }
    std::size_t total = (a.size() >= 2 ? a.size() - 1 : 0) + (b.size() >= 2 ? b.size() - 1 : 0);
    if (total == 0) return 0.0;
    return 2.0 * common / static_cast<double>(total);
}

double jaro(const std::string& a, const std::string& b) {
    if (a.empty() || b.empty()) return 0.0;
    if (a == b) return 1.0;
    int la = static_cast<int>(a.size());
    int lb = static_cast<int>(b.size());
    int window = std::max(la, lb) / 2 - 1;
    if (window < 0) window = 0;
    std::vector<bool> ma(a.size(), false), mb(b.size(), false);
    int matches = 0;
    for (int i = 0; i < la; ++i) {
        int lo = std::max(0, i - window);
        int hi = std::min(lb - 1, i + window);
        for (int j = lo; j <= hi; ++j) {
            if (!mb[static_cast<std::size_t>(j)] && a[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(j)]) {
                ma[static_cast<std::size_t>(i)] = mb[static_cast<std::size_t>(j)] = true;
                ++matches;
                break;
            }
        }
    }
    if (matches == 0) return 0.0;
    int transpositions = 0;
    int k = 0;
    for (int i = 0; i < la; ++i) {
        if (!ma[static_cast<std::size_t>(i)]) continue;
        while (!mb[static_cast<std::size_t>(k)]) ++k;
        if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(k)]) ++transpositions;
        ++k;
    }
    double m = matches;
    return (m / la + m / lb + (m - transpositions / 2.0) / m) / 3.0;
}

double jaro_winkler(const std::string& a, const std::string& b, double prefix_scale,
                    int prefix_cap) {
    double j = jaro(a, b);
    int prefix = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size() && prefix < prefix_cap; ++i) {
        if (a[i] != b[i]) break;
        ++prefix;
    }
    return j + prefix * prefix_scale * (1.0 - j);
}

double lcs_ratio(const std::string& a, const std::string& b) {
    if (a.empty() || b.empty()) return 0.0;
    std::size_t la = a.size(), lb = b.size();
    std::vector<int> prev(lb + 1, 0), cur(lb + 1, 0);
    for (std::size_t i = 1; i <= la; ++i) {
        for (std::size_t j = 1; j <= lb; ++j) {
            if (a[i - 1] == b[j - 1]) {
                cur[j] = prev[j - 1] + 1;
            } else {
                cur[j] = std::max(prev[j], cur[j - 1]);
            }
        }
        std::swap(prev, cur);
    }
    return static_cast<double>(prev[lb]) / static_cast<double>(std::max(la, lb));
}

Result<double> fuzzy_score(const std::string& query, const std::string& candidate,
                           const FuzzyConfig& cfg) {
    if (query.empty() || candidate.empty()) {
        return make_error(ErrorCode::InvalidQuery, "fuzzy_score requires non-empty strings");
    }
    if (query == candidate) return 1.0;
    double wsum = cfg.weights[0] + cfg.weights[1] + cfg.weights[2];
    if (wsum <= 0.0) return make_error(ErrorCode::Schema, "fuzzy weights must sum to > 0");
    double score = cfg.weights[0] * bigram_dice(query, candidate) +
                   cfg.weights[1] * jaro_winkler(query, candidate, cfg.jw_prefix_scale,
                                                 cfg.jw_prefix_cap) +
                   cfg.weights[2] * lcs_ratio(query, candidate);
    return score / wsum;
}

}  // namespace scout

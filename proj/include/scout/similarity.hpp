// Character-level similarity metrics used for fuzzy symbol ranking:
// bigram Dice coefficient, Jaro-Winkler, and LCS ratio, blended by weight.
#pragma once

#include <string>

#include "scout/config.hpp"
#include "scout/result.hpp"

namespace scout {

// Dice coefficient over bigram multisets; strings shorter than 2 chars have
// no bigrams and score 0 against everything (identity is short-circuited by
// fuzzy_score).
double bigram_dice(const std::string& a, const std::string& b);

double jaro(const std::string& a, const std::string& b);
double jaro_winkler(const std::string& a, const std::string& b, double prefix_scale,
                    int prefix_cap);

// LCS length divided by max(|a|, |b|).
double lcs_ratio(const std::string& a, const std::string& b);

// Weighted blend of the three metrics; identical inputs score exactly 1.0.
Result<double> fuzzy_score(const std::string& query, const std::string& candidate,
                           const FuzzyConfig& cfg);

}  // namespace scout

// The five localization tools over a built index: file lookup with skeletons,
// staged definition search (exact -> regex -> fuzzy), case-variant content
// search, child-unit descent, and the finish sentinel.  Responses carry
// location metadata plus budgeted previews, never full bodies (unless the
// full-code ablation switch is on).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scout/code_index.hpp"
#include "scout/config.hpp"
#include "scout/result.hpp"

namespace scout {

enum class MatchMode { Exact, Regex, Fuzzy, Content };
const char* match_mode_name(MatchMode m);

struct CodePreview {
    std::vector<std::string> lines;  // already annotated with line numbers
    bool truncated = false;
};

struct SearchHit {
    std::string unit_id;
    std::string path;
    int start_line = 0;
    int end_line = 0;
    MatchMode mode = MatchMode::Exact;
    double score = 0.0;
    std::string signature;
    CodePreview preview;
    std::vector<std::string> children;  // child unit ids, adjacency order
};

struct SearchResponse {
    std::vector<SearchHit> hits;
    std::vector<std::string> notes;  // staging notes, caps, degradations
};

struct FileMatch {
    std::string path;
    FileSkeleton skeleton;
};

struct FindFileResponse {
    std::vector<FileMatch> matches;
    std::vector<std::string> notes;
};

Result<FindFileResponse> find_file(const CodeIndex& index, const SearchConfig& cfg,
                                   const std::string& file_name,
                                   const std::optional<std::string>& dir_path);

Result<SearchResponse> find_code_def(const CodeIndex& index, const SearchConfig& cfg,
                                     const std::string& definition_name,
                                     const std::optional<std::string>& file_path);

Result<SearchResponse> find_code_content(const CodeIndex& index, const SearchConfig& cfg,
                                         const std::string& content,
                                         const std::optional<std::string>& file_path,
                                         std::optional<int> start_line,
                                         std::optional<int> end_line);

Result<SearchResponse> find_child_unit(const CodeIndex& index, const SearchConfig& cfg,
                                       const std::string& definition_name,
                                       const std::string& file_path);

// Terminal sentinel for the localization loop.
inline const char* finish_search() { return "search-finished"; }

// Plain-text rendering used as the agent observation.
std::string render_response(const SearchResponse& resp);
std::string render_find_file(const FindFileResponse& resp);

// Total preview lines across hits (budget checks and the ablation test).
int preview_line_total(const SearchResponse& resp);

}  // namespace scout

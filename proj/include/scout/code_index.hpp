// Definition-level repository index: code units (functions, classes, residual
// chunks), per-unit adjacency with contains/invokes edges, file skeletons, and
// a versioned JSON serialization.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "scout/config.hpp"
#include "scout/result.hpp"

namespace scout {

enum class UnitKind { Function, Class, Chunk };
enum class EdgeKind { Contains, Invokes };

const char* unit_kind_name(UnitKind k);
const char* edge_kind_name(EdgeKind k);

struct ChildEdge {
    std::string id;
    EdgeKind kind = EdgeKind::Contains;
    bool operator==(const ChildEdge&) const = default;
};

struct CodeUnit {
    std::string id;      // "path:name" for definitions, "path:chunk_<n>" for chunks
    UnitKind kind = UnitKind::Chunk;
    std::string name;    // dotted definition name; empty for chunks
    std::string path;    // repo-relative, '/'-separated
    int start_line = 1;  // 1-based inclusive
    int end_line = 1;
    std::string text;    // raw source slice
    std::string signature;
    std::vector<ChildEdge> children;

    bool is_definition() const { return kind != UnitKind::Chunk; }
};

struct Diagnostic {
    std::string path;
    std::string message;
};

struct SkeletonEntry {
    std::string name;  // dotted
    UnitKind kind = UnitKind::Function;
    int start_line = 1;
    int end_line = 1;
    std::string signature;
};

struct FileSkeleton {
    std::string path;
    std::vector<SkeletonEntry> entries;  // ascending start line
};

struct CodeIndex {
    static constexpr int kVersion = 1;

    std::string root;
    std::map<std::string, CodeUnit> units;                    // id -> unit
    std::map<std::string, std::vector<std::string>> by_file;  // path -> unit ids, by start line
    std::map<std::string, std::string> languages;             // extension -> grammar id
    std::vector<Diagnostic> diagnostics;

    const CodeUnit* find(const std::string& id) const;
    bool has_file(const std::string& path) const { return by_file.count(path) != 0; }
    std::vector<std::string> files() const;
    // Number of lines in an indexed file (derived from the coverage property).
    int file_line_count(const std::string& path) const;
    // Reconstructs the raw file text by tiling top-level unit slices.
    std::string file_text(const std::string& path) const;
};

// Walk `root`, parse every registered source file, and build the full index
// (definitions, residual chunks, adjacency).  Deterministic for a fixed tree.
Result<CodeIndex> index_repository(const std::string& root, const IndexConfig& config);

// Single-file definition extraction; returned units carry contains edges only.
Result<std::vector<CodeUnit>> extract_definitions(const std::string& path,
                                                  const std::string& source,
                                                  const std::string& grammar);

Result<FileSkeleton> file_skeleton(const CodeIndex& index, const std::string& path);
Result<CodeUnit> get_unit(const CodeIndex& index, const std::string& id);

std::string serialize_index(const CodeIndex& index);
Result<CodeIndex> deserialize_index(const std::string& json_text);
Result<CodeIndex> load_index_file(const std::string& path);
Result<void> save_index_file(const CodeIndex& index, const std::string& path);

}  // namespace scout

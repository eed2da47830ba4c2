// Shared plumbing for the command-line tools: context resolution from flags
// or environment, locked working-memory access, and uniform error exits.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "scout/config.hpp"
#include "scout/proc.hpp"
#include "scout/result.hpp"
#include "scout/working_memory.hpp"

namespace scout::cli {

inline std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

inline int fail(const Error& e) {
    std::cerr << e.render() << "\n";
    return 1;
}

inline Result<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return make_error(ErrorCode::Io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Writes to the path, or to stdout when the path is empty.
inline Result<void> write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return {};
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) return make_error(ErrorCode::Io, "cannot write " + path);
    out << text;
    return {};
}

inline Result<EngineConfig> load_cli_config(const std::string& config_path) {
    if (config_path.empty()) return EngineConfig{};
    return load_config_file(config_path);
}

// Registry + instance context for the agent-facing tools. The flag wins,
// then the environment variable, then the engine default (a directory that
// is resolved relative to the workspace for hypothesis_git).
struct MemoryContext {
    std::string registry_dir;
    std::string instance_id;
    std::string memory_path;
    FileLock lock;  // held for the whole load -> mutate -> save span
};

inline Result<MemoryContext> open_context(std::string registry_dir, std::string instance_id,
                                          const std::string& anchor_dir) {
    if (registry_dir.empty()) registry_dir = env_or("CODESCOUT_REGISTRY", "");
    if (registry_dir.empty()) registry_dir = EngineConfig{}.paths.registry_dir;
    if (instance_id.empty()) instance_id = env_or("CODESCOUT_INSTANCE", "");
    if (instance_id.empty()) {
        return make_error(ErrorCode::InvalidTask,
                          "no instance id: pass --instance or set CODESCOUT_INSTANCE");
    }
    namespace fs = std::filesystem;
    fs::path dir(registry_dir);
    if (dir.is_relative() && !anchor_dir.empty()) dir = fs::path(anchor_dir) / dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        return make_error(ErrorCode::Io,
                          "cannot create registry " + dir.string() + ": " + ec.message());
    }
    MemoryContext ctx;
    ctx.registry_dir = dir.string();
    ctx.instance_id = instance_id;
    ctx.memory_path = registry_memory_path(ctx.registry_dir, instance_id);
    auto lock = FileLock::acquire((dir / (instance_id + ".lock")).string());
    if (!lock.ok()) return lock.error();
    ctx.lock = lock.take();
    return ctx;
}

// Missing file means a brand-new instance: start from an empty state.
inline Result<WorkingMemoryState> open_memory(const MemoryContext& ctx) {
    if (!std::filesystem::exists(ctx.memory_path)) return WorkingMemoryState{};
    return load_memory(ctx.memory_path);
}

}  // namespace scout::cli

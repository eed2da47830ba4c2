// Child-process execution with timeouts and captured output, plus an
// advisory file lock used to serialize actions on one instance.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "scout/result.hpp"

namespace scout {

struct RunResult {
    int exit_code = 0;      // 128+signal when signalled
    bool timed_out = false;
    std::string out;        // captured stdout
    std::string err;        // captured stderr
    std::string merged() const { return err.empty() ? out : out + err; }
};

// Runs argv[0] with the given arguments; cwd empty = inherit. Extra
// environment entries override inherited ones. timeout_ms <= 0 = no limit.
Result<RunResult> run_command(const std::vector<std::string>& argv, const std::string& cwd,
                              int timeout_ms,
                              const std::map<std::string, std::string>& extra_env = {});

// Runs a shell command line via /bin/sh -c.
Result<RunResult> run_shell(const std::string& command, const std::string& cwd, int timeout_ms,
                            const std::map<std::string, std::string>& extra_env = {});

// Advisory exclusive lock on a file path (flock). Blocks until acquired;
// released on destruction.
class FileLock {
 public:
    FileLock() = default;
    ~FileLock();
    FileLock(FileLock&& other) noexcept;
    FileLock& operator=(FileLock&& other) noexcept;
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

    static Result<FileLock> acquire(const std::string& path);
    bool held() const { return fd_ >= 0; }

 private:
    int fd_ = -1;
};

}  // namespace scout

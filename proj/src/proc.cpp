#include "scout/proc.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/file.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>

namespace scout {

namespace {

using Clock = std::chrono::steady_clock;

// Drains both pipes until EOF or deadline; returns false on timeout.
bool pump_pipes(int out_fd, int err_fd, std::string& out, std::string& err,
                Clock::time_point deadline, bool has_deadline) {
    char buf[8192];
    bool out_open = true, err_open = true;
    while (out_open || err_open) {
        struct pollfd fds[2];
        int n = 0;
        if (out_open) fds[n++] = {out_fd, POLLIN, 0};
        if (err_open) fds[n++] = {err_fd, POLLIN, 0};
        int wait_ms = -1;
        if (has_deadline) {
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                            deadline - Clock::now())
                            .count();
            if (left <= 0) return false;
            wait_ms = static_cast<int>(left);
        }
        int rc = ::poll(fds, static_cast<nfds_t>(n), wait_ms);
        if (rc == 0) return false;  // timed out
        if (rc < 0) {
            if (errno == EINTR) continue;
            return true;  // treat as EOF; wait() will report status
        }
        for (int i = 0; i < n; ++i) {
            if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
            ssize_t got = ::read(fds[i].fd, buf, sizeof buf);
            bool is_out = fds[i].fd == out_fd;
            if (got > 0) {
                (is_out ? out : err).append(buf, static_cast<std::size_t>(got));
            } else if (got == 0 || (got < 0 && errno != EINTR && errno != EAGAIN)) {
                if (is_out) out_open = false;
                else err_open = false;
            }
        }
    }
    return true;
}

}  // namespace

Result<RunResult> run_command(const std::vector<std::string>& argv, const std::string& cwd,
                              int timeout_ms,
                              const std::map<std::string, std::string>& extra_env) {
    if (argv.empty())
        return make_error(ErrorCode::InvalidTask, "empty command line");
    if (!cwd.empty() && !std::filesystem::is_directory(cwd))
        return make_error(ErrorCode::Io, "working directory does not exist: '" + cwd + "'");

    int out_pipe[2], err_pipe[2];
    if (::pipe(out_pipe) != 0)
        return make_error(ErrorCode::Io, "pipe() failed");
    if (::pipe(err_pipe) != 0) {
        ::close(out_pipe[0]);
        ::close(out_pipe[1]);
        return make_error(ErrorCode::Io, "pipe() failed");
    }

    pid_t pid = ::fork();
    if (pid < 0) {
        for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) ::close(fd);
        return make_error(ErrorCode::Io, "fork() failed");
    }
    if (pid == 0) {
        ::setpgid(0, 0);  // own process group, so timeouts kill the whole tree
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::dup2(err_pipe[1], STDERR_FILENO);
        for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) ::close(fd);
        if (!cwd.empty() && ::chdir(cwd.c_str()) != 0) ::_exit(127);
        for (const auto& [k, v] : extra_env) ::setenv(k.c_str(), v.c_str(), 1);
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        ::execvp(cargv[0], cargv.data());
        ::_exit(127);
    }

    ::close(out_pipe[1]);
    ::close(err_pipe[1]);

    RunResult result;
    bool has_deadline = timeout_ms > 0;
    auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms);
    bool finished =
        pump_pipes(out_pipe[0], err_pipe[0], result.out, result.err, deadline, has_deadline);
    if (!finished) {
        result.timed_out = true;
        ::kill(-pid, SIGKILL);
        ::kill(pid, SIGKILL);
    }
    ::close(out_pipe[0]);
    ::close(err_pipe[0]);

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (result.timed_out) {
        result.exit_code = 124;
    } else if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.exit_code = 128 + WTERMSIG(status);
    } else {
        result.exit_code = 125;
    }
    return result;
}

Result<RunResult> run_shell(const std::string& command, const std::string& cwd, int timeout_ms,
                            const std::map<std::string, std::string>& extra_env) {
    return run_command({"/bin/sh", "-c", command}, cwd, timeout_ms, extra_env);
}

FileLock::~FileLock() {
    if (fd_ >= 0) ::close(fd_);  // closing releases the flock
}

FileLock::FileLock(FileLock&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

FileLock& FileLock::operator=(FileLock&& other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) ::close(fd_);
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

Result<FileLock> FileLock::acquire(const std::string& path) {
    std::error_code ec;
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    int fd = ::open(path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd < 0)
        return make_error(ErrorCode::Io, "cannot open lock file '" + path + "'");
    while (::flock(fd, LOCK_EX) != 0) {
        if (errno != EINTR) {
            ::close(fd);
            return make_error(ErrorCode::Io, "cannot lock '" + path + "'");
        }
    }
    FileLock lock;
    lock.fd_ = fd;
    return lock;
}

}  // namespace scout

#pragma once

// Line-oriented subprocess session used to drive a reasoner binary.
// No shell is involved: the command string is whitespace-split into argv.
// Reading runs against a deadline; on expiry the child is killed so a hung
// engine cannot stall a batch run.

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace folnar::engine {

class EngineSpawnError : public std::runtime_error {
 public:
  explicit EngineSpawnError(const std::string& detail)
      : std::runtime_error("cannot start engine: " + detail) {}
};

class EngineProtocolError : public std::runtime_error {
 public:
  explicit EngineProtocolError(const std::string& detail)
      : std::runtime_error("engine protocol violation: " + detail) {}
};

inline std::vector<std::string> split_command(const std::string& command) {
  std::vector<std::string> argv;
  std::string cur;
  for (char c : command) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) argv.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) argv.push_back(std::move(cur));
  return argv;
}

class EngineSession {
 public:
  enum class State { Idle, Running, Closed };

  explicit EngineSession(const std::vector<std::string>& argv) {
    if (argv.empty()) throw EngineSpawnError("empty command");
    ignore_sigpipe_once();

    int in_pipe[2] = {-1, -1};
    int out_pipe[2] = {-1, -1};
    int err_pipe[2] = {-1, -1};
    if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0 ||
        ::pipe2(err_pipe, O_CLOEXEC) != 0) {
      throw EngineSpawnError(std::strerror(errno));
    }

    pid_ = ::fork();
    if (pid_ < 0) throw EngineSpawnError(std::strerror(errno));
    if (pid_ == 0) {
      ::dup2(in_pipe[0], STDIN_FILENO);
      ::dup2(out_pipe[1], STDOUT_FILENO);
      ::close(in_pipe[0]);
      ::close(in_pipe[1]);
      ::close(out_pipe[0]);
      ::close(out_pipe[1]);
      std::vector<char*> cargv;
      for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
      cargv.push_back(nullptr);
      ::execvp(cargv[0], cargv.data());
      int saved = errno;
      ssize_t ignored = ::write(err_pipe[1], &saved, sizeof(saved));
      (void)ignored;
      ::_exit(127);
    }

    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[1]);
    stdin_fd_ = in_pipe[1];
    stdout_fd_ = out_pipe[0];

    int child_errno = 0;
    ssize_t n = ::read(err_pipe[0], &child_errno, sizeof(child_errno));
    ::close(err_pipe[0]);
    if (n > 0) {
      reap();
      close_fds();
      throw EngineSpawnError(argv[0] + ": " + std::strerror(child_errno));
    }
  }

  EngineSession(const EngineSession&) = delete;
  EngineSession& operator=(const EngineSession&) = delete;

  ~EngineSession() {
    close_fds();
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      reap();
    }
  }

  // Best effort: a consumer that exits early just stops accepting input,
  // which the transcript read surfaces on its own.
  void write_line(const std::string& line) {
    if (stdin_fd_ < 0 || broken_) return;
    state_ = State::Running;
    ++lines_sent_;
    std::string buf = line + "\n";
    std::size_t off = 0;
    while (off < buf.size()) {
      ssize_t n = ::write(stdin_fd_, buf.data() + off, buf.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        broken_ = true;
        return;
      }
      off += static_cast<std::size_t>(n);
    }
  }

  void close_stdin() {
    if (stdin_fd_ >= 0) {
      ::close(stdin_fd_);
      stdin_fd_ = -1;
      state_ = State::Closed;
    }
  }

  State state() const { return state_; }
  std::size_t lines_sent() const { return lines_sent_; }

  // Reads stdout until EOF or until the deadline; true means clean EOF.
  // On timeout the child is killed and the partial output is kept.
  bool read_to_end(std::chrono::milliseconds budget, std::string& out) {
    auto deadline = std::chrono::steady_clock::now() + budget;
    char chunk[4096];
    for (;;) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) {
        kill_now();
        return false;
      }
      pollfd pfd{stdout_fd_, POLLIN, 0};
      int pr = ::poll(&pfd, 1, static_cast<int>(left.count()));
      if (pr < 0) {
        if (errno == EINTR) continue;
        kill_now();
        return false;
      }
      if (pr == 0) {
        kill_now();
        return false;
      }
      ssize_t n = ::read(stdout_fd_, chunk, sizeof(chunk));
      if (n < 0) {
        if (errno == EINTR) continue;
        kill_now();
        return false;
      }
      if (n == 0) {
        reap();
        return true;
      }
      out.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  static void ignore_sigpipe_once() {
    static const bool done = [] {
      std::signal(SIGPIPE, SIG_IGN);
      return true;
    }();
    (void)done;
  }

  void close_fds() {
    close_stdin();
    if (stdout_fd_ >= 0) {
      ::close(stdout_fd_);
      stdout_fd_ = -1;
    }
  }

  void kill_now() {
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      reap();
    }
  }

  void reap() {
    if (pid_ > 0) {
      int status = 0;
      ::waitpid(pid_, &status, 0);
      pid_ = -1;
    }
  }

  pid_t pid_ = -1;
  int stdin_fd_ = -1;
  int stdout_fd_ = -1;
  bool broken_ = false;
  State state_ = State::Idle;
  std::size_t lines_sent_ = 0;
};

}  // namespace folnar::engine

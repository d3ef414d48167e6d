#pragma once

#include <cstddef>
#include <string>
#include <thread>
#include <vector>

namespace wzp {

// Child process with piped stdout (and optionally stdin). Stderr is drained
// by a background thread and kept for diagnostics. The destructor kills and
// reaps a still-running child.
class Subprocess {
public:
    explicit Subprocess(const std::vector<std::string>& argv, bool pipe_stdin = false);
    ~Subprocess();

    Subprocess(const Subprocess&) = delete;
    Subprocess& operator=(const Subprocess&) = delete;

    // Reads up to n bytes from the child's stdout; 0 means end of stream.
    std::size_t read_stdout(void* buf, std::size_t n);

    // Reads exactly n bytes unless the stream ends first; returns bytes read.
    std::size_t read_stdout_exact(void* buf, std::size_t n);

    void write_stdin(const void* buf, std::size_t n);
    void close_stdin();

    // Waits for the child to exit and returns its exit code (or 128 + signal
    // number if it was killed). Idempotent.
    int wait();
    bool finished() const { return waited_; }

    // Captured stderr; complete once wait() has returned.
    std::string stderr_output();

private:
    void drain_stderr(int fd);

    pid_t pid_ = -1;
    int stdout_fd_ = -1;
    int stdin_fd_ = -1;
    int exit_code_ = -1;
    bool waited_ = false;
    std::thread stderr_thread_;
    std::string stderr_buf_;
};

// Substitutes {input}, {width}, {height} and {pixfmt} slots in a
// whitespace-separated command template.
std::vector<std::string> expand_command_template(const std::string& command_template,
                                                 const std::string& input_path, int width,
                                                 int height, const std::string& pixfmt);

}  // namespace wzp

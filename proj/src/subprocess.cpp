#include "wzp/subprocess.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <sstream>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include "wzp/errors.hpp"

namespace wzp {

namespace {

struct Pipe {
    int fds[2] = {-1, -1};
    Pipe() {
        if (pipe(fds) != 0) throw SpawnError(std::string("pipe: ") + std::strerror(errno));
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    void close_read() {
        if (fds[0] >= 0) ::close(fds[0]);
        fds[0] = -1;
    }
    void close_write() {
        if (fds[1] >= 0) ::close(fds[1]);
        fds[1] = -1;
    }
    int release_read() {
        int fd = fds[0];
        fds[0] = -1;
        return fd;
    }
    int release_write() {
        int fd = fds[1];
        fds[1] = -1;
        return fd;
    }
};

}  // namespace

Subprocess::Subprocess(const std::vector<std::string>& argv, bool pipe_stdin) {
    if (argv.empty()) throw SpawnError("empty command");

    Pipe out_pipe;
    Pipe err_pipe;
    Pipe in_pipe;
    // The child reports an exec failure through this CLOEXEC pipe; the parent
    // reading any bytes from it means the command never started.
    Pipe exec_pipe;
    if (fcntl(exec_pipe.fds[1], F_SETFD, FD_CLOEXEC) != 0) {
        throw SpawnError(std::string("fcntl: ") + std::strerror(errno));
    }

    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    pid_ = fork();
    if (pid_ < 0) throw SpawnError(std::string("fork: ") + std::strerror(errno));

    if (pid_ == 0) {
        dup2(out_pipe.fds[1], STDOUT_FILENO);
        dup2(err_pipe.fds[1], STDERR_FILENO);
        if (pipe_stdin) {
            dup2(in_pipe.fds[0], STDIN_FILENO);
        } else {
            int devnull = open("/dev/null", O_RDONLY);
            if (devnull >= 0) dup2(devnull, STDIN_FILENO);
        }
        out_pipe.close_read();
        out_pipe.close_write();
        err_pipe.close_read();
        err_pipe.close_write();
        in_pipe.close_read();
        in_pipe.close_write();
        exec_pipe.close_read();

        execvp(args[0], args.data());
        const int err = errno;
        ssize_t ignored = write(exec_pipe.fds[1], &err, sizeof(err));
        (void)ignored;
        _exit(127);
    }

    out_pipe.close_write();
    err_pipe.close_write();
    in_pipe.close_read();
    exec_pipe.close_write();

    int exec_errno = 0;
    const ssize_t got = read(exec_pipe.fds[0], &exec_errno, sizeof(exec_errno));
    if (got > 0) {
        int status = 0;
        waitpid(pid_, &status, 0);
        pid_ = -1;
        throw SpawnError("cannot start '" + argv[0] + "': " + std::strerror(exec_errno));
    }

    stdout_fd_ = out_pipe.release_read();
    if (pipe_stdin) stdin_fd_ = in_pipe.release_write();

    const int err_fd = err_pipe.release_read();
    stderr_thread_ = std::thread([this, err_fd] { drain_stderr(err_fd); });
}

Subprocess::~Subprocess() {
    if (pid_ > 0 && !waited_) {
        kill(pid_, SIGKILL);
        wait();
    }
    if (stderr_thread_.joinable()) stderr_thread_.join();
    if (stdout_fd_ >= 0) ::close(stdout_fd_);
    if (stdin_fd_ >= 0) ::close(stdin_fd_);
}

void Subprocess::drain_stderr(int fd) {
    char buf[4096];
    ssize_t n;
    while ((n = read(fd, buf, sizeof(buf))) > 0) {
        stderr_buf_.append(buf, static_cast<std::size_t>(n));
    }
    ::close(fd);
}

std::size_t Subprocess::read_stdout(void* buf, std::size_t n) {
    while (true) {
        const ssize_t got = read(stdout_fd_, buf, n);
        if (got >= 0) return static_cast<std::size_t>(got);
        if (errno != EINTR) {
            throw StreamCorruptionError(std::string("read from decoder: ") + std::strerror(errno));
        }
    }
}

std::size_t Subprocess::read_stdout_exact(void* buf, std::size_t n) {
    std::size_t total = 0;
    auto* p = static_cast<std::uint8_t*>(buf);
    while (total < n) {
        const std::size_t got = read_stdout(p + total, n - total);
        if (got == 0) break;
        total += got;
    }
    return total;
}

void Subprocess::write_stdin(const void* buf, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(buf);
    std::size_t total = 0;
    while (total < n) {
        const ssize_t put = write(stdin_fd_, p + total, n - total);
        if (put < 0) {
            if (errno == EINTR) continue;
            throw Error(std::string("write to child: ") + std::strerror(errno));
        }
        total += static_cast<std::size_t>(put);
    }
}

void Subprocess::close_stdin() {
    if (stdin_fd_ >= 0) ::close(stdin_fd_);
    stdin_fd_ = -1;
}

int Subprocess::wait() {
    if (waited_) return exit_code_;
    int status = 0;
    waitpid(pid_, &status, 0);
    waited_ = true;
    if (WIFEXITED(status)) {
        exit_code_ = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        exit_code_ = 128 + WTERMSIG(status);
    } else {
        exit_code_ = -1;
    }
    if (stderr_thread_.joinable()) stderr_thread_.join();
    return exit_code_;
}

std::string Subprocess::stderr_output() {
    if (stderr_thread_.joinable() && waited_) stderr_thread_.join();
    return stderr_buf_;
}

std::vector<std::string> expand_command_template(const std::string& command_template,
                                                 const std::string& input_path, int width,
                                                 int height, const std::string& pixfmt) {
    const auto substitute = [&](std::string token) {
        const std::pair<const char*, std::string> slots[] = {
            {"{input}", input_path},
            {"{width}", std::to_string(width)},
            {"{height}", std::to_string(height)},
            {"{pixfmt}", pixfmt},
        };
        for (const auto& [slot, value] : slots) {
            std::size_t pos;
            while ((pos = token.find(slot)) != std::string::npos) {
                token.replace(pos, std::strlen(slot), value);
            }
        }
        return token;
    };

    std::vector<std::string> argv;
    std::istringstream in(command_template);
    std::string token;
    while (in >> token) argv.push_back(substitute(token));
    if (argv.empty()) throw ParameterError("decoder command template is empty");
    return argv;
}

}  // namespace wzp

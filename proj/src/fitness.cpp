#include "gae2e/fitness.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstring>
#include <mutex>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gae2e/errors.hpp"
#include "gae2e/metrics.hpp"

namespace gae2e {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sphere_fitness(const ParamVector& v) {
    double acc = 0.0;
    for (double x : v) acc += (x - 0.5) * (x - 0.5);
    const double f = 1.0 - 4.0 * acc / static_cast<double>(v.size());
    return std::clamp(f, 0.0, 1.0);
}

double rastrigin_fitness(const ParamVector& v, const ParamSpace& space) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& s = space.spec(i);
        const double t = (v[i] - s.lower) / (s.upper - s.lower);
        const double c = t - 0.5;
        acc += 0.7 * (2.0 * c) * (2.0 * c) + 0.3 * 0.5 * (1.0 - std::cos(6.0 * kPi * c));
    }
    return std::clamp(1.0 - acc / static_cast<double>(v.size()), 0.0, 1.0);
}

double plateau_fitness(const ParamVector& v, const ParamSpace& space) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& s = space.spec(i);
        const double t = (v[i] - s.lower) / (s.upper - s.lower);
        const double d = std::abs(t - 0.5);
        if (d <= 0.05) acc += 1.0;
        else if (d <= 0.15) acc += 0.5;
        else if (d <= 0.30) acc += 0.25;
    }
    return acc / static_cast<double>(v.size());
}

void ignore_sigpipe_once() {
    static std::once_flag flag;
    std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

ssize_t write_all(int fd, const char* buf, std::size_t n) {
    std::size_t off = 0;
    while (off < n) {
        const ssize_t rc = ::write(fd, buf + off, n - off);
        if (rc < 0) {
            if (errno == EINTR) continue;
            return -1;
        }
        off += static_cast<std::size_t>(rc);
    }
    return static_cast<ssize_t>(off);
}

struct Pipe {
    int fds[2] = {-1, -1};
    Pipe() {
        if (::pipe(fds) != 0) throw Error("pipe() failed");
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    void close_read() {
        if (fds[0] >= 0) { ::close(fds[0]); fds[0] = -1; }
    }
    void close_write() {
        if (fds[1] >= 0) { ::close(fds[1]); fds[1] = -1; }
    }
};

} // namespace

double landscape_fitness(Landscape l, const ParamVector& v, const ParamSpace& space) {
    space.check_dimension(v);
    switch (l) {
        case Landscape::sphere: return sphere_fitness(v);
        case Landscape::rastrigin: return rastrigin_fitness(v, space);
        case Landscape::plateau: return plateau_fitness(v, space);
    }
    return 0.0;
}

double run_external_command(const std::string& command, const std::string& input_line,
                            double timeout_seconds) {
    ignore_sigpipe_once();

    Pipe to_child;
    Pipe from_child;
    const pid_t pid = ::fork();
    if (pid < 0) throw Error("fork() failed");
    if (pid == 0) {
        // Child: own process group so the whole shell tree can be killed.
        ::setpgid(0, 0);
        ::dup2(to_child.fds[0], STDIN_FILENO);
        ::dup2(from_child.fds[1], STDOUT_FILENO);
        ::close(to_child.fds[0]);
        ::close(to_child.fds[1]);
        ::close(from_child.fds[0]);
        ::close(from_child.fds[1]);
        ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }

    to_child.close_read();
    from_child.close_write();

    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration<double>(timeout_seconds);
    auto remaining_ms = [&]() -> int {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        return static_cast<int>(std::max<long long>(0, left.count()));
    };
    auto kill_and_reap = [&]() {
        ::kill(-pid, SIGKILL);
        int status = 0;
        ::waitpid(pid, &status, 0);
    };

    const std::string line = input_line + "\n";
    // The child may exit without reading; EPIPE is tolerated, the answer (or
    // its absence) decides the outcome.
    write_all(to_child.fds[1], line.data(), line.size());
    to_child.close_write();

    std::string reply;
    char buf[4096];
    bool got_line = false;
    while (!got_line) {
        struct pollfd pfd = {from_child.fds[0], POLLIN, 0};
        const int ms = remaining_ms();
        if (ms == 0) {
            kill_and_reap();
            throw TimeoutError("external command timed out after " +
                               std::to_string(timeout_seconds) + "s");
        }
        const int rc = ::poll(&pfd, 1, ms);
        if (rc < 0) {
            if (errno == EINTR) continue;
            kill_and_reap();
            throw Error("poll() failed on external command pipe");
        }
        if (rc == 0) {
            kill_and_reap();
            throw TimeoutError("external command timed out after " +
                               std::to_string(timeout_seconds) + "s");
        }
        const ssize_t n = ::read(from_child.fds[0], buf, sizeof(buf));
        if (n < 0) {
            if (errno == EINTR) continue;
            kill_and_reap();
            throw Error("read() failed on external command pipe");
        }
        if (n == 0) break; // EOF
        reply.append(buf, static_cast<std::size_t>(n));
        if (reply.find('\n') != std::string::npos) got_line = true;
    }
    from_child.close_read();

    // Bounded wait for exit so a lingering child cannot hang the engine.
    int status = 0;
    for (;;) {
        const pid_t w = ::waitpid(pid, &status, WNOHANG);
        if (w == pid) break;
        if (w < 0) throw Error("waitpid() failed");
        if (remaining_ms() == 0) {
            kill_and_reap();
            throw TimeoutError("external command produced output but did not exit");
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        throw NonZeroExitError("external command exited with status " +
                               std::to_string(WIFEXITED(status) ? WEXITSTATUS(status)
                                                                : -1));
    }

    const auto eol = reply.find('\n');
    const std::string first_line = eol == std::string::npos ? reply : reply.substr(0, eol);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(first_line);
    } catch (const std::exception&) {
        throw MalformedResponseError("external command reply is not valid JSON: '" +
                                     first_line + "'");
    }
    if (j.contains("error")) {
        throw EvaluatorFailure("external command reported: " +
                               j.at("error").get<std::string>());
    }
    if (!j.contains("fitness") || !j.at("fitness").is_number()) {
        throw MalformedResponseError("external command reply lacks a numeric fitness");
    }
    const double f = j.at("fitness").get<double>();
    if (!std::isfinite(f) || f < 0.0 || f > 1.0) {
        throw MalformedResponseError("external fitness " + std::to_string(f) +
                                     " is outside [0, 1]");
    }
    return f;
}

struct Evaluator::Impl {
    std::mutex mu;
    std::condition_variable cv;
    int free_slots;
    explicit Impl(int slots) : free_slots(slots) {}

    struct SlotGuard {
        Impl& impl;
        explicit SlotGuard(Impl& i) : impl(i) {
            std::unique_lock lock(impl.mu);
            impl.cv.wait(lock, [&] { return impl.free_slots > 0; });
            --impl.free_slots;
        }
        ~SlotGuard() {
            {
                std::lock_guard lock(impl.mu);
                ++impl.free_slots;
            }
            impl.cv.notify_one();
        }
    };
};

Evaluator::Evaluator(EvaluatorSpec spec, ParamSpace space)
    : spec_(std::move(spec)),
      space_(std::move(space)),
      impl_(std::make_unique<Impl>(spec_.max_concurrent_processes)) {
    spec_.validate();
}

Evaluator::~Evaluator() = default;

double Evaluator::attempt(const std::vector<std::string>& names, const ParamVector& v,
                          std::uint64_t eval_id, std::uint64_t seed) const {
    space_.check_dimension(v);
    if (spec_.delay_seconds > 0.0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(spec_.delay_seconds));
    }
    switch (spec_.kind) {
        case EvaluatorKind::synthetic:
            return landscape_fitness(spec_.landscape, v, space_);
        case EvaluatorKind::surrogate: {
            const HyperParams hp = HyperParams::from_vector(v, space_);
            const EpochHistory h = train_surrogate(hp, spec_.surrogate);
            if (spec_.fitness_source == FitnessSource::final_test_auc) {
                return h.final_test_auc.value();
            }
            return average_epoch_auc(h);
        }
        case EvaluatorKind::external: {
            nlohmann::json j;
            for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = v[i];
            j["eval_id"] = eval_id;
            j["seed"] = seed;
            Impl::SlotGuard guard(*impl_);
            return run_external_command(spec_.command, j.dump(), spec_.timeout_seconds);
        }
    }
    throw Error("unreachable evaluator kind");
}

double Evaluator::fitness(const ParamVector& v, std::uint64_t seed) const {
    return attempt(space_.names(), v, 0, seed);
}

EvalResult Evaluator::run_task(const EvalTask& task, const std::string& worker_id) const {
    const auto start = std::chrono::steady_clock::now();
    EvalResult r;
    r.eval_id = task.eval_id;
    r.worker_id = worker_id;

    std::string last_error;
    const int attempts = spec_.retries + 1;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        try {
            r.fitness = this->attempt(task.names, task.values, task.eval_id, task.seed);
            r.status = EvalStatus::ok;
            r.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
            return r;
        } catch (const Error& e) {
            last_error = e.what();
        }
    }
    r.fitness = 0.0; // penalty: the worst possible AUC-fitness
    r.status = EvalStatus::failed;
    r.error = last_error;
    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

LocalExecutor::LocalExecutor(EvaluatorSpec spec, ParamSpace space, int slots,
                             std::string worker_id)
    : evaluator_(std::move(spec), std::move(space)),
      slots_(std::max(1, slots)),
      worker_id_(std::move(worker_id)) {}

std::vector<EvalResult> LocalExecutor::run(const std::vector<EvalTask>& tasks) {
    std::vector<EvalResult> results(tasks.size());
    if (slots_ <= 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            results[i] = evaluator_.run_task(tasks[i], worker_id_);
        }
        return results;
    }
    std::atomic<std::size_t> next{0};
    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(slots_),
                                                 tasks.size());
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                results[i] = evaluator_.run_task(tasks[i], worker_id_);
            }
        });
    }
    for (auto& th : pool) th.join();
    return results;
}

FunctionExecutor::FunctionExecutor(Fn fn, std::string worker_id)
    : fn_(std::move(fn)), worker_id_(std::move(worker_id)) {}

std::vector<EvalResult> FunctionExecutor::run(const std::vector<EvalTask>& tasks) {
    std::vector<EvalResult> results;
    results.reserve(tasks.size());
    for (const auto& t : tasks) {
        EvalResult r;
        r.eval_id = t.eval_id;
        r.worker_id = worker_id_;
        const auto start = std::chrono::steady_clock::now();
        try {
            const double f = fn_(t.values, t.seed);
            if (!std::isfinite(f) || f < 0.0 || f > 1.0) {
                throw EvaluatorFailure("fitness " + std::to_string(f) +
                                       " is outside [0, 1]");
            }
            r.fitness = f;
            r.status = EvalStatus::ok;
        } catch (const std::exception& e) {
            r.fitness = 0.0;
            r.status = EvalStatus::failed;
            r.error = e.what();
        }
        r.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace gae2e

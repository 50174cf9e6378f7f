#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace escg {

// Fixed-size worker pool executing jobs made of independently claimable
// task indices. Jobs queue FIFO; tasks of the front job are claimed by any
// idle worker, so a pending batch-generation job and a stepping job can
// make progress side by side.
class ThreadPool {
public:
    class Job {
    public:
        // Blocks until every task ran; rethrows the first task exception.
        void wait() {
            std::unique_lock<std::mutex> lock(mutex_);
            done_cv_.wait(lock, [this] { return remaining_ == 0; });
            if (error_) std::rethrow_exception(error_);
        }

    private:
        friend class ThreadPool;

        Job(std::int64_t tasks, std::function<void(std::int64_t)> fn)
            : fn_(std::move(fn)), tasks_(tasks), remaining_(tasks) {}

        // Runs one claimed task; returns true while claims remain.
        bool run_one() {
            std::int64_t idx;
            {
                std::lock_guard<std::mutex> lock(mutex_);
                if (next_ >= tasks_) return false;
                idx = next_++;
            }
            try {
                fn_(idx);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mutex_);
                if (!error_) error_ = std::current_exception();
            }
            std::lock_guard<std::mutex> lock(mutex_);
            if (--remaining_ == 0) done_cv_.notify_all();
            return true;
        }

        bool exhausted() {
            std::lock_guard<std::mutex> lock(mutex_);
            return next_ >= tasks_;
        }

        std::function<void(std::int64_t)> fn_;
        std::int64_t tasks_;
        std::int64_t next_ = 0;
        std::int64_t remaining_;
        std::exception_ptr error_;
        std::mutex mutex_;
        std::condition_variable done_cv_;
    };

    explicit ThreadPool(int workers) : workers_(workers < 1 ? 1 : workers) {
        threads_.reserve(workers_);
        for (int i = 0; i < workers_; ++i)
            threads_.emplace_back([this] { worker_loop(); });
    }

    ~ThreadPool() {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            stopping_ = true;
        }
        queue_cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    int workers() const { return workers_; }

    std::shared_ptr<Job> submit(std::int64_t tasks, std::function<void(std::int64_t)> fn) {
        auto job = std::shared_ptr<Job>(new Job(tasks, std::move(fn)));
        if (tasks <= 0) {
            job->remaining_ = 0;
            return job;
        }
        {
            std::lock_guard<std::mutex> lock(mutex_);
            queue_.push_back(job);
        }
        queue_cv_.notify_all();
        return job;
    }

    // Blocking parallel-for over [0, tasks); the caller participates too.
    void parallel_for(std::int64_t tasks, std::function<void(std::int64_t)> fn) {
        auto job = submit(tasks, std::move(fn));
        while (job->run_one()) {
        }
        job->wait();
    }

private:
    void worker_loop() {
        for (;;) {
            std::shared_ptr<Job> job;
            {
                std::unique_lock<std::mutex> lock(mutex_);
                queue_cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
                if (stopping_ && queue_.empty()) return;
                job = queue_.front();
            }
            while (job->run_one()) {
            }
            std::lock_guard<std::mutex> lock(mutex_);
            if (!queue_.empty() && queue_.front() == job && job->exhausted()) queue_.pop_front();
        }
    }

    int workers_;
    std::vector<std::thread> threads_;
    std::deque<std::shared_ptr<Job>> queue_;
    std::mutex mutex_;
    std::condition_variable queue_cv_;
    bool stopping_ = false;
};

}  // namespace escg

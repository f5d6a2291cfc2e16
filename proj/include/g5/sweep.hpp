#pragma once

#include <optional>
#include <string>

#include "g5/curves.hpp"

namespace g5::sweep {

struct TrigonalSweepOptions {
    u64 q = 0;
    curves::SearchMode mode = curves::SearchMode::fast;
    unsigned threads = 1;
    std::optional<std::string> checkpoint_dir;
    // stop after completing this many new chunks; lets tests exercise the
    // interrupt/resume path deterministically
    std::optional<u64> stop_after_chunks;
};

struct TrigonalSweepResult {
    bool complete = false;
    curves::SearchTable table;  // only when complete
    u64 chunks_total = 0;
    u64 chunks_resumed = 0;  // taken from the checkpoint file
    u64 chunks_computed = 0;
    std::optional<std::string> checkpoint_file;
};

// digest naming the sweep (command + parameters); checkpoint lines carry it
std::string search_identity(u64 q, curves::SearchMode mode);

// Chunked, checkpointed, deterministic sweep: chunk boundaries are a pure
// function of q, results are merged in chunk-id order, and the final table
// digest is independent of thread count and of interruption points.
TrigonalSweepResult trigonal_sweep(const TrigonalSweepOptions& opt);

unsigned default_threads();  // G5_THREADS or hardware_concurrency

}  // namespace g5::sweep

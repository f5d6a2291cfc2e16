#include "g5/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "g5/report.hpp"

namespace g5::sweep {

using curves::SearchMode;
using curves::TrigonalChunk;
using nlohmann::json;

unsigned default_threads() {
    if (const char* env = std::getenv("G5_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024) return unsigned(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

std::string search_identity(u64 q, SearchMode mode) {
    Fnv64 h;
    h.bytes("trigonal", 8);
    h.word(q);
    h.word(mode == SearchMode::fast ? 0 : 1);
    return hex64(h.value());
}

namespace {

u64 chunk_crc(const TrigonalChunk& ch) {
    Fnv64 h;
    h.word(ch.a3_lo);
    h.word(ch.a3_hi);
    for (u32 v : ch.total) h.word(v);
    for (u32 v : ch.singular) h.word(v);
    h.bytes(ch.flags.data(), ch.flags.size());
    return h.value();
}

json chunk_to_json(const std::string& search, u64 id, const TrigonalChunk& ch) {
    return json{{"schema", report::SCHEMA}, {"search", search},   {"chunk", id},
                {"lo", ch.a3_lo},           {"hi", ch.a3_hi},     {"total", ch.total},
                {"singular", ch.singular},  {"flags", ch.flags},  {"crc", hex64(chunk_crc(ch))}};
}

}  // namespace

TrigonalSweepResult trigonal_sweep(const TrigonalSweepOptions& opt) {
    auto pp = arith::PrimePower::make(opt.q);
    if (opt.q % 5 != 1) throw std::invalid_argument("trigonal sweep: q must be 1 mod 5");
    if (opt.q > 4096) throw ResourceError("trigonal sweep: q > 4096");
    ff::Field K = ff::Field::build(pp.p, pp.r);

    std::vector<u8> bitmap;
    if (opt.mode == SearchMode::naive) {
        if (opt.q > 64) throw std::invalid_argument("trigonal sweep: naive mode needs q <= 64");
        bitmap = curves::trigonal_fq2_extra_bitmap(K);
    }

    const u64 w = curves::trigonal_chunk_width(opt.q);
    std::vector<std::pair<u64, u64>> ranges;
    for (u64 lo = 0; lo < opt.q; lo += w) ranges.emplace_back(lo, std::min(lo + w, opt.q));

    TrigonalSweepResult res;
    res.chunks_total = ranges.size();
    const std::string identity = search_identity(opt.q, opt.mode);

    std::map<u64, TrigonalChunk> done;
    std::optional<std::string> ckpt_path;
    if (opt.checkpoint_dir) {
        std::filesystem::create_directories(*opt.checkpoint_dir);
        std::string mode_tag = opt.mode == SearchMode::fast ? "fast" : "naive";
        ckpt_path = *opt.checkpoint_dir + "/trigonal-q" + std::to_string(opt.q) + "-" + mode_tag +
                    ".ckpt";
        res.checkpoint_file = ckpt_path;
        std::ifstream in(*ckpt_path);
        if (in) {
            std::string line;
            std::vector<std::string> lines;
            while (std::getline(in, line))
                if (!line.empty()) lines.push_back(line);
            for (std::size_t i = 0; i < lines.size(); i++) {
                json j;
                try {
                    j = json::parse(lines[i]);
                } catch (const json::parse_error&) {
                    // a torn final line is an interrupted write, not corruption
                    if (i + 1 == lines.size()) continue;
                    throw CheckpointError("checkpoint: unparseable line " + std::to_string(i + 1));
                }
                if (j.value("search", "") != identity)
                    throw CheckpointError("checkpoint: search identity mismatch");
                TrigonalChunk ch;
                u64 id = j.at("chunk").get<u64>();
                ch.a3_lo = j.at("lo").get<u64>();
                ch.a3_hi = j.at("hi").get<u64>();
                ch.total = j.at("total").get<std::vector<u32>>();
                ch.singular = j.at("singular").get<std::vector<u32>>();
                ch.flags = j.at("flags").get<std::vector<u8>>();
                if (j.value("crc", "") != hex64(chunk_crc(ch)))
                    throw CheckpointError("checkpoint: digest mismatch in chunk " +
                                          std::to_string(id));
                if (id >= ranges.size() || ch.a3_lo != ranges[id].first ||
                    ch.a3_hi != ranges[id].second)
                    throw CheckpointError("checkpoint: chunk bounds mismatch in chunk " +
                                          std::to_string(id));
                done.emplace(id, std::move(ch));
            }
        }
        res.chunks_resumed = done.size();
    }

    std::vector<u64> todo;
    for (u64 i = 0; i < ranges.size(); i++)
        if (!done.count(i)) todo.push_back(i);
    u64 quota = opt.stop_after_chunks.value_or(~u64(0));

    std::mutex sink;
    std::ofstream append;
    if (ckpt_path) append.open(*ckpt_path, std::ios::app);
    std::atomic<u64> next{0};
    std::atomic<u64> started{0};

    auto worker = [&]() {
        for (;;) {
            u64 slot = started.fetch_add(1);
            if (slot >= quota) return;  // interruption quota reached
            u64 i = next.fetch_add(1);
            if (i >= todo.size()) return;
            u64 id = todo[i];
            TrigonalChunk ch = curves::trigonal_chunk(K, ranges[id].first, ranges[id].second,
                                                      opt.mode, bitmap.empty() ? nullptr : &bitmap);
            std::lock_guard<std::mutex> lock(sink);
            if (append.is_open()) {
                append << chunk_to_json(identity, id, ch).dump() << "\n";
                append.flush();
            }
            done.emplace(id, std::move(ch));
            res.chunks_computed++;
        }
    };

    unsigned threads = std::max(1u, opt.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; t++) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (done.size() == ranges.size()) {
        std::vector<TrigonalChunk> ordered;
        ordered.reserve(done.size());
        for (auto& [id, ch] : done) ordered.push_back(std::move(ch));
        res.table = curves::assemble_table(opt.q, ordered);
        res.complete = true;
    }
    return res;
}

}  // namespace g5::sweep

#include "g5/report.hpp"

#include <ctime>
#include <fstream>
#include <iostream>

namespace g5::report {

std::string now_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

u64 content_digest(const Manifest& m) {
    nlohmann::json j{{"schema", SCHEMA},
                     {"command", m.command},
                     {"params", m.params},
                     {"result", m.result},
                     {"version", VERSION}};
    std::string s = j.dump();  // object keys are sorted: canonical
    Fnv64 h;
    h.bytes(s.data(), s.size());
    return h.value();
}

nlohmann::json to_json(const Manifest& m) {
    return nlohmann::json{{"schema", SCHEMA},
                          {"command", m.command},
                          {"params", m.params},
                          {"result", m.result},
                          {"verdict", m.verdict},
                          {"version", VERSION},
                          {"started_utc", m.started_utc},
                          {"finished_utc", m.finished_utc},
                          {"elapsed_ms", m.elapsed_ms},
                          {"digest", hex64(content_digest(m))}};
}

void write(const Manifest& m, const std::optional<std::string>& out_path) {
    std::string doc = to_json(m).dump(2);
    doc.push_back('\n');
    if (!out_path || out_path->empty()) {
        std::cout << doc;
    } else {
        std::ofstream f(*out_path);
        if (!f) throw std::runtime_error("cannot open output file: " + *out_path);
        f << doc;
    }
}

}  // namespace g5::report

#include "g5/common.hpp"

namespace g5 {

std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

std::string to_string_i128(i128 v) {
    if (v < 0) return "-" + to_string_u128(u128(-v));
    return to_string_u128(u128(v));
}

std::string hex64(u64 v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; i--) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

}  // namespace g5

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ikit {

using BigInt = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad symbols, invalid indices, inconsistent alphabets.
struct InputError : Error {
    using Error::Error;
};

// Input is well formed but outside the class a solver or reduction requires
// (non-unary, non-commutative, not sparse, ...).
struct PreconditionError : InputError {
    using InputError::InputError;
};

struct ResourceError : Error {
    using Error::Error;
};

// A construction produced something its own verification rejects.
struct InternalError : Error {
    using Error::Error;
};

struct Caps {
    std::uint64_t expansion = 1'000'000;
    std::uint64_t product_states = 10'000'000;
    std::uint64_t bounding_paths = 100'000;
    std::uint64_t join_candidates = 1'000'000;
    std::uint64_t reduction_vertices = 200'000;
    std::uint64_t search_steps = 50'000'000;

    // Reads INTERSECT_KIT_CAPS, a comma separated list of key=value pairs,
    // e.g. "product_states=1000,expansion=50".
    static Caps from_env() {
        Caps c;
        const char* env = std::getenv("INTERSECT_KIT_CAPS");
        if (env) c.apply(env);
        return c;
    }

    void apply(std::string_view spec) {
        while (!spec.empty()) {
            auto comma = spec.find(',');
            auto item = spec.substr(0, comma);
            spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
            if (item.empty()) continue;
            auto eq = item.find('=');
            if (eq == std::string_view::npos) throw InputError("bad cap entry: " + std::string(item));
            std::string key(item.substr(0, eq));
            std::string val(item.substr(eq + 1));
            std::uint64_t v = 0;
            try {
                std::size_t used = 0;
                v = std::stoull(val, &used);
                if (used != val.size()) throw std::invalid_argument(val);
            } catch (const std::exception&) {
                throw InputError("bad cap value: " + std::string(item));
            }
            if (key == "expansion") expansion = v;
            else if (key == "product_states") product_states = v;
            else if (key == "bounding_paths") bounding_paths = v;
            else if (key == "join_candidates") join_candidates = v;
            else if (key == "reduction_vertices") reduction_vertices = v;
            else if (key == "search_steps") search_steps = v;
            else throw InputError("unknown cap: " + key);
        }
    }
};

inline BigInt parse_bigint(const std::string& s) {
    if (s.empty()) throw InputError("empty integer");
    for (char ch : s)
        if (ch < '0' || ch > '9') throw InputError("not a nonnegative integer: " + s);
    return BigInt(s);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace ikit

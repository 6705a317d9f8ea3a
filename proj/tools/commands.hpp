#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace repzeta::cli {

inline constexpr std::uint64_t kDefaultSeed = 1729;

struct CommandConfig {
    std::string command;
    std::vector<std::string> specs;
    std::string format = "json";
    std::string output;

    std::optional<double> s;
    std::optional<double> c;
    std::uint64_t X = 100000;
    unsigned D = 12;
    std::uint64_t p = 0;
    unsigned j = 1;
    unsigned n = 1;
    unsigned ell = 2;
    std::uint64_t trials = 0;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
    double lo = 0.5;
    double hi = 1.0;
    std::string mode = "exact";
    bool irr = false;
    bool monitor = false;
    bool stream = false;
    unsigned max_order = 8;

    std::string id;
    std::string params;
    std::string preset;
    unsigned param = 0;
    std::string expr;
    std::string sequence;
    std::string ring;
    std::string table;
    bool list = false;
};

// Writes the artifact to out and returns the exit status. Errors are reported
// on err: 1 usage, 2 domain, 3 capability.
int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err);

// Seed from REPZETA_SEED when set, else the default.
std::uint64_t default_seed();

}  // namespace repzeta::cli

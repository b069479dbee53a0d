#pragma once

// Minimal helper for driving the CLI binary from tests.

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <sys/wait.h>

namespace testsupport {

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

inline CommandResult run_command(const std::string& cmd) {
    CommandResult res;
    FILE* pipe = ::popen((cmd + " 2>&1").c_str(), "r");
    if (pipe == nullptr) {
        throw std::runtime_error("popen failed for: " + cmd);
    }
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) {
        res.output += buf.data();
    }
    const int status = ::pclose(pipe);
    if (WIFEXITED(status)) {
        res.exit_code = WEXITSTATUS(status);
    }
    return res;
}

}  // namespace testsupport

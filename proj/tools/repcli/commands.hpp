#pragma once

#include <string>

#include "config.hpp"

namespace repcli {

struct Invocation {
    std::string command;
    KeyValues effective;  ///< merged key/values, echoed into provenance.json
    RunConfig config;
};

// Each returns the process exit code; input errors propagate as exceptions.
int cmd_ingest(const Invocation& inv);
int cmd_unitroot(const Invocation& inv);
int cmd_johansen(const Invocation& inv);
int cmd_vecm(const Invocation& inv);
int cmd_replicate(const Invocation& inv);
int cmd_simulate(const Invocation& inv);
int cmd_corr(const Invocation& inv);

}  // namespace repcli

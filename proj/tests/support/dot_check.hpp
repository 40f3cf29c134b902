// Minimal standalone acceptor for the DOT graph grammar, used to check the
// exporter's output against an independent reading of the format.
#pragma once

#include <string>

namespace nms::testing {

struct DotParse {
    bool ok = false;
    int graphs = 0;
    int nodes = 0;
    int edges = 0;
    std::string error;
};

DotParse parse_dot(const std::string& text);

}  // namespace nms::testing

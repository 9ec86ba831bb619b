#include "reopt/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "reopt/errors.hpp"

namespace reopt {

namespace {

struct Line {
    std::size_t number;
    std::string text;
};

std::vector<Line> content_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open");
    std::vector<Line> out;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const std::size_t start = raw.find_first_not_of(" \t\r");
        if (start == std::string::npos || raw[start] == '#') continue;
        const std::size_t end = raw.find_last_not_of(" \t\r");
        out.push_back(Line{number, raw.substr(start, end - start + 1)});
    }
    return out;
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw IoError(path + ":" + std::to_string(line) + ": " + what);
}

} // namespace

LeadingOnesInstance load_leadingones_instance(const std::string& path) {
    const auto lines = content_lines(path);
    if (lines.empty()) throw IoError(path + ": missing target string");
    if (lines.size() > 2) fail(path, lines[2].number, "unexpected extra line");

    Genome target;
    try {
        target = Genome::from_string(lines[0].text);
    } catch (const ContractError& e) {
        fail(path, lines[0].number, e.what());
    }

    Permutation sigma = identity_permutation(target.size());
    if (lines.size() == 2) {
        std::istringstream in(lines[1].text);
        sigma.clear();
        std::size_t v;
        while (in >> v) sigma.push_back(v);
        if (!in.eof()) fail(path, lines[1].number, "permutation: expected integers");
        if (sigma.size() != target.size() || !is_permutation(sigma))
            fail(path, lines[1].number, "not a permutation of [0..n-1]");
    }
    return LeadingOnesInstance(std::move(target), std::move(sigma));
}

LinearConstrainedInstance load_linear_instance(const std::string& path) {
    const auto lines = content_lines(path);
    if (lines.empty()) throw IoError(path + ": missing \"n B\" line");

    std::size_t n = 0, bound = 0;
    {
        std::istringstream in(lines[0].text);
        std::string extra;
        if (!(in >> n >> bound) || (in >> extra))
            fail(path, lines[0].number, "expected exactly \"n B\"");
    }

    std::string body;
    for (std::size_t k = 1; k < lines.size(); ++k) body += lines[k].text + " ";
    std::istringstream in(body);
    std::string first;
    if (!(in >> first)) fail(path, lines[0].number, "missing weights");

    std::vector<double> weights;
    if (first == "binval") {
        weights = LinearConstrainedInstance::binval_weights(n);
        std::string extra;
        if (in >> extra) fail(path, lines.back().number, "unexpected token after \"binval\"");
    } else if (first == "onemax") {
        weights = LinearConstrainedInstance::onemax_weights(n);
        std::string extra;
        if (in >> extra) fail(path, lines.back().number, "unexpected token after \"onemax\"");
    } else {
        std::istringstream again(body);
        double w;
        while (again >> w) weights.push_back(w);
        if (!again.eof()) fail(path, lines.back().number, "weights: expected decimals");
        if (weights.size() != n)
            fail(path, lines.back().number,
                 "expected " + std::to_string(n) + " weights, got " +
                     std::to_string(weights.size()));
    }

    try {
        return LinearConstrainedInstance(std::move(weights), bound);
    } catch (const ContractError& e) {
        fail(path, lines[0].number, e.what());
    }
}

GraphInstance load_graph_instance(const std::string& path) {
    const auto lines = content_lines(path);
    if (lines.empty()) throw IoError(path + ": missing \"nodes <nv>\" header");

    std::size_t nv = 0;
    {
        std::istringstream in(lines[0].text);
        std::string word, extra;
        if (!(in >> word >> nv) || word != "nodes" || (in >> extra))
            fail(path, lines[0].number, "expected header \"nodes <nv>\"");
    }

    std::vector<GraphEdge> edges;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        std::istringstream in(lines[k].text);
        GraphEdge e;
        std::string extra;
        if (!(in >> e.u >> e.v >> e.weight) || (in >> extra))
            fail(path, lines[k].number, "expected \"u v weight\"");
        edges.push_back(e);
    }

    try {
        return GraphInstance(nv, std::move(edges));
    } catch (const ContractError& e) {
        fail(path, lines[0].number, e.what());
    }
}

} // namespace reopt

#include "rainbow/graph.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rainbow {

namespace {

std::string format_weight(double w)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", w);
    return buf;
}

} // namespace

void write_graph(std::ostream& out, const Graph& g)
{
    out << g.n() << ' ' << g.m() << '\n';
    for (const Edge& e : g.edges())
        out << e.u << ' ' << e.v << '\n';
}

Graph read_graph(std::istream& in)
{
    std::size_t n = 0, m = 0;
    if (!(in >> n >> m))
        throw GraphError("graph file: expected header \"n m\"");
    GraphBuilder b(n);
    for (std::size_t i = 0; i < m; ++i) {
        long long u = 0, v = 0;
        if (!(in >> u >> v))
            throw GraphError("graph file: expected " + std::to_string(m) + " edges, read " + std::to_string(i));
        if (u < 0 || v < 0)
            throw GraphError("graph file: negative vertex in edge " + std::to_string(i));
        b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return std::move(b).build();
}

void write_process(std::ostream& out, const ProcessSequence& seq)
{
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Edge& e = seq.order()[i];
        out << e.u << ' ' << e.v << ' ' << format_weight(seq.sorted_weight(i)) << '\n';
    }
}

ProcessSequence read_process(std::istream& in)
{
    struct Row {
        Vertex u, v;
        double w;
    };
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        long long u = 0, v = 0;
        std::string w;
        if (!(ls >> u >> v >> w) || u < 0 || v < 0)
            throw GraphError("process file: malformed line " + std::to_string(rows.size() + 1));
        rows.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), std::stod(w)});
    }
    // C(n,2) lines determine n.
    const double root = (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(rows.size()))) / 2.0;
    const auto n = static_cast<std::size_t>(std::llround(root));
    if (pair_count(n) != rows.size() || (rows.empty() && n > 1))
        throw GraphError("process file: " + std::to_string(rows.size()) + " lines is not C(n,2) for any n");
    std::vector<double> weights(rows.size(), -1.0);
    for (const Row& r : rows) {
        if (r.u >= n || r.v >= n || r.u == r.v)
            throw GraphError("process file: bad pair " + std::to_string(r.u) + " " + std::to_string(r.v));
        double& slot = weights[pair_index(n, r.u, r.v)];
        if (slot >= 0.0)
            throw GraphError("process file: duplicate pair " + std::to_string(r.u) + " " + std::to_string(r.v));
        slot = r.w;
    }
    return ProcessSequence(n, std::move(weights));
}

Graph load_graph(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw GraphError("cannot open " + path);
    return read_graph(in);
}

void save_graph(const std::string& path, const Graph& g)
{
    std::ofstream out(path);
    if (!out)
        throw GraphError("cannot write " + path);
    write_graph(out, g);
}

} // namespace rainbow

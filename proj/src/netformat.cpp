#include "unets/netformat.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace unets {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#') ++j;
        out.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return out;
}

bool is_id(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
    return true;
}

bool parse_label(std::string_view s, Label& out) {
    if (s.empty() || s.size() > 10) return false;
    std::uint64_t x = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        x = x * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (x == 0 || x > 0xfffffffeULL) return false;
    out = static_cast<Label>(x);
    return true;
}

}  // namespace

MultiGraph parse(std::string_view text) {
    MultiGraph g;
    std::unordered_map<std::string, VertexId> ids;
    std::unordered_map<Label, std::size_t> label_line;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header = false;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;
        const auto toks = tokenize(line);
        if (!header) {
            if (toks.size() != 2 || toks[0].text != "unets" || toks[1].text != "1")
                throw ParseError(line_no, toks.empty() ? 1 : toks[0].column, "expected header `unets 1`");
            header = true;
            if (end == text.size()) break;
            continue;
        }
        if (toks.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const Token& d = toks[0];
        if (d.text == "v") {
            if (toks.size() < 2 || toks.size() > 3)
                throw ParseError(line_no, d.column, "vertex declaration takes an id and an optional label");
            if (!is_id(toks[1].text)) throw ParseError(line_no, toks[1].column, "malformed vertex id");
            std::string name(toks[1].text);
            if (ids.count(name)) throw ParseError(line_no, toks[1].column, "duplicate vertex `" + name + "`");
            Label label = 0;
            if (toks.size() == 3) {
                if (!parse_label(toks[2].text, label))
                    throw ParseError(line_no, toks[2].column, "malformed label (expected a positive integer)");
                auto [it, fresh] = label_line.emplace(label, line_no);
                if (!fresh)
                    throw ParseError(line_no, toks[2].column,
                                     "duplicate label " + std::to_string(label) + " (first on line " +
                                         std::to_string(it->second) + ")");
            }
            ids.emplace(std::move(name), g.add_vertex(label));
        } else if (d.text == "e") {
            if (toks.size() != 3) throw ParseError(line_no, d.column, "edge declaration takes exactly two vertex ids");
            VertexId ends[2];
            for (int k = 0; k < 2; ++k) {
                const Token& t = toks[1 + k];
                if (!is_id(t.text)) throw ParseError(line_no, t.column, "malformed vertex id");
                auto it = ids.find(std::string(t.text));
                if (it == ids.end())
                    throw ParseError(line_no, t.column, "undeclared endpoint `" + std::string(t.text) + "`");
                ends[k] = it->second;
            }
            for (int k = 0; k < 2; ++k) {
                const VertexId v = ends[k];
                const std::size_t extra = (ends[0] == ends[1]) ? 2 : 1;
                if (g.label(v) != 0 && g.degree(v) + extra > 1)
                    throw ParseError(line_no, toks[1 + k].column, "labelled vertex would get degree above one");
            }
            g.add_edge(ends[0], ends[1]);
        } else {
            throw ParseError(line_no, d.column, "unknown directive `" + std::string(d.text) + "`");
        }
        if (end == text.size()) break;
    }
    if (!header) throw ParseError(1, 1, "expected header `unets 1`");
    return g;
}

std::string serialize(const MultiGraph& g) {
    std::string out = "unets 1\n";
    for (VertexId v : g.vertices()) {
        out += "v " + std::to_string(v);
        if (g.label(v) != 0) out += " " + std::to_string(g.label(v));
        out += '\n';
    }
    struct Row {
        VertexId a, b;
        EdgeId e;
    };
    std::vector<Row> rows;
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.ends(e);
        rows.push_back({std::min(u, v), std::max(u, v), e});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.e < y.e;
    });
    for (const Row& r : rows) out += "e " + std::to_string(r.a) + " " + std::to_string(r.b) + "\n";
    return out;
}

std::string to_dot(const MultiGraph& g, const std::set<EdgeId>& highlight) {
    for (EdgeId e : highlight)
        if (!g.has_edge(e)) throw GraphError("to_dot: unknown highlight edge " + std::to_string(e));
    std::ostringstream out;
    out << "graph unets {\n";
    out << "  node [shape=point];\n";
    for (VertexId v : g.vertices()) {
        out << "  v" << v;
        if (g.label(v) != 0) out << " [shape=plaintext, label=\"" << g.label(v) << "\"]";
        out << ";\n";
    }
    std::vector<std::pair<std::pair<VertexId, VertexId>, EdgeId>> rows;
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.ends(e);
        rows.push_back({{std::min(u, v), std::max(u, v)}, e});
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [uv, e] : rows) {
        out << "  v" << uv.first << " -- v" << uv.second;
        if (highlight.count(e)) out << " [color=red, penwidth=2.5]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

MultiGraph read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << contents;
}

}  // namespace unets

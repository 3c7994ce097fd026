#include "citegrowth/dot.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace citegrowth::corpus {

namespace {

std::string quote_id(const std::string& id) {
    std::string out = "\"";
    for (char c : id) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw std::runtime_error("dot: line " + std::to_string(line) + ": " + msg);
}

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    std::size_t line = 1;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '\n') {
                ++line;
                ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos;
            } else if (c == '#' || (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/')) {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!eat(c)) fail(line, "expected '" + std::string(1, c) + "' " + what);
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        return text.substr(start, pos - start);
    }

    std::string quoted_id() {
        skip_ws();
        if (pos >= text.size() || text[pos] != '"') fail(line, "expected quoted id");
        ++pos;
        std::string out;
        while (pos < text.size() && text[pos] != '"') {
            char c = text[pos];
            if (c == '\\' && pos + 1 < text.size()) {
                ++pos;
                c = text[pos];
            }
            if (c == '\n') ++line;
            out += c;
            ++pos;
        }
        if (pos >= text.size()) fail(line, "unterminated quoted id");
        ++pos;
        return out;
    }

    long integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail(line, "expected integer");
        return std::stol(text.substr(start, pos - start));
    }

    bool at_char(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
};

}  // namespace

std::string dot_string(const CitationGraph& graph, const std::vector<int>* community) {
    if (community && static_cast<int>(community->size()) != graph.n_nodes) {
        throw std::invalid_argument("dot: community size does not match node count");
    }
    std::ostringstream out;
    out << "digraph G {\n";
    for (int v = 0; v < graph.n_nodes; ++v) {
        out << "  " << quote_id(graph.id_of[v]) << " [year=" << graph.year_of[v];
        if (community) out << ", comm=" << (*community)[v];
        out << "];\n";
    }
    for (const auto& [u, v] : graph.edges) {
        out << "  " << quote_id(graph.id_of[u]) << " -> " << quote_id(graph.id_of[v]) << ";\n";
    }
    out << "}\n";
    return out.str();
}

void write_dot(const CitationGraph& graph, const std::string& path,
               const std::vector<int>* community) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("dot: cannot write " + path);
    out << dot_string(graph, community);
}

CitationGraph parse_dot(const std::string& text, std::vector<int>* community) {
    Parser p(text);
    std::string kw = p.word();
    if (kw == "graph") fail(p.line, "undirected 'graph' not supported, expected 'digraph'");
    if (kw != "digraph") fail(p.line, "expected 'digraph'");
    p.word();  // optional graph name
    p.expect('{', "after digraph header");

    CitationGraph g;
    std::unordered_map<std::string, int> index;
    std::vector<int> comm;
    bool any_comm = false;

    auto node_index = [&](const std::string& id, bool declaring) {
        auto it = index.find(id);
        if (it != index.end()) return it->second;
        if (!declaring) fail(p.line, "edge references undeclared node '" + id + "'");
        int v = g.n_nodes++;
        index.emplace(id, v);
        g.id_of.push_back(id);
        g.year_of.push_back(0);
        comm.push_back(-1);
        return v;
    };

    while (!p.at_char('}')) {
        if (p.pos >= p.text.size()) fail(p.line, "unexpected end of file, missing '}'");
        std::string id = p.quoted_id();
        if (p.at_char('-')) {
            std::size_t stmt_line = p.line;
            p.expect('-', "in edge");
            if (!p.eat('>')) fail(stmt_line, "undirected edge '--' not supported");
            std::string target = p.quoted_id();
            int u = node_index(id, false);
            int v = node_index(target, false);
            g.edges.emplace_back(u, v);
            p.expect(';', "after edge statement");
        } else {
            int v = node_index(id, true);
            p.expect('[', "in node attributes");
            bool saw_year = false;
            while (true) {
                std::string attr = p.word();
                p.expect('=', "after attribute name");
                long value = p.integer();
                if (attr == "year") {
                    g.year_of[v] = static_cast<int>(value);
                    saw_year = true;
                } else if (attr == "comm") {
                    comm[v] = static_cast<int>(value);
                    any_comm = true;
                } else {
                    fail(p.line, "unknown attribute '" + attr + "'");
                }
                if (!p.eat(',')) break;
            }
            p.expect(']', "closing node attributes");
            p.expect(';', "after node statement");
            if (!saw_year) fail(p.line, "node '" + id + "' missing year attribute");
        }
    }
    if (community) {
        *community = any_comm ? comm : std::vector<int>{};
    }
    return g;
}

CitationGraph read_dot(const std::string& path, std::vector<int>* community) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("dot: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_dot(buf.str(), community);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string(e.what()) + " in " + path);
    }
}

}  // namespace citegrowth::corpus

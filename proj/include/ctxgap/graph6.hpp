#pragma once

#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ctxgap/graph.hpp"

namespace ctxgap {

/// Parse failure for graph6 text.  `offset` is the zero-based byte offset of
/// the offending character within the string.
class Graph6Error : public std::runtime_error {
public:
    enum class Kind { bad_header, bad_length, bad_byte, bad_padding, trailing_data };

    Graph6Error(Kind kind, std::size_t offset, const std::string& what)
        : std::runtime_error("graph6: " + what + " (byte offset " + std::to_string(offset) + ")"),
          kind_(kind),
          offset_(offset) {}

    Kind kind() const { return kind_; }
    std::size_t offset() const { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

/// Decode a short-form graph6 string for 1 <= n <= 32.  Bits are read in
/// column-major upper-triangle order: (i, j) for j = 1..n-1, i = 0..j-1.
inline Graph g6_decode(std::string_view text) {
    using Kind = Graph6Error::Kind;
    if (text.empty()) throw Graph6Error(Kind::bad_length, 0, "empty string");

    const unsigned char header = static_cast<unsigned char>(text[0]);
    if (header == ':' || header == ';' || header == '&')
        throw Graph6Error(Kind::bad_header, 0, "sparse6/digraph6 headers are not supported");
    if (header == 126)
        throw Graph6Error(Kind::bad_header, 0, "long-form size is not supported (n <= 32 only)");
    if (header < 63 || header > 126)
        throw Graph6Error(Kind::bad_header, 0, "size byte out of printable range [63, 126]");

    const int n = static_cast<int>(header) - 63;
    if (n < 1 || n > Graph::kMaxVertices)
        throw Graph6Error(Kind::bad_header, 0,
                          "vertex count " + std::to_string(n) + " outside supported range [1, 32]");

    const int pair_bits = n * (n - 1) / 2;
    const std::size_t data_bytes = static_cast<std::size_t>((pair_bits + 5) / 6);
    if (text.size() < 1 + data_bytes)
        throw Graph6Error(Kind::bad_length, text.size(),
                          "expected " + std::to_string(data_bytes) + " data bytes, got " +
                              std::to_string(text.size() - 1));
    if (text.size() > 1 + data_bytes)
        throw Graph6Error(Kind::trailing_data, 1 + data_bytes, "trailing bytes after graph data");

    Graph g(n);
    int bit_index = 0;
    int col_i = 0, col_j = 1;
    for (std::size_t b = 1; b < text.size(); ++b) {
        const unsigned char c = static_cast<unsigned char>(text[b]);
        if (c < 63 || c > 126)
            throw Graph6Error(Kind::bad_byte, b, "data byte out of printable range [63, 126]");
        const unsigned value = c - 63u;
        for (int k = 5; k >= 0; --k, ++bit_index) {
            const unsigned bit = (value >> k) & 1u;
            if (bit_index >= pair_bits) {
                if (bit)
                    throw Graph6Error(Kind::bad_padding, b, "nonzero padding bits");
                continue;
            }
            if (bit) g.add_edge(col_i, col_j);
            if (++col_i == col_j) {
                col_i = 0;
                ++col_j;
            }
        }
    }
    return g;
}

/// Encode in short graph6 form.  Exact inverse of g6_decode for the same
/// labeling.
inline std::string g6_encode(const Graph& g) {
    const int n = g.vertex_count();
    const int pair_bits = n * (n - 1) / 2;
    std::string out;
    out.reserve(1 + static_cast<std::size_t>((pair_bits + 5) / 6));
    out.push_back(static_cast<char>(63 + n));

    unsigned buffer = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            buffer = (buffer << 1) | (g.has_edge(i, j) ? 1u : 0u);
            if (++filled == 6) {
                out.push_back(static_cast<char>(63 + buffer));
                buffer = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>(63 + (buffer << (6 - filled))));
    return out;
}

/// Read a `.g6` file: one graph6 string per line, LF or CRLF line endings,
/// no comments, no blank interior lines.
inline std::vector<Graph> read_g6_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open g6 file: " + path);
    std::vector<Graph> graphs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (in.peek() == std::char_traits<char>::eof()) break;
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": blank line");
        }
        try {
            graphs.push_back(g6_decode(line));
        } catch (const Graph6Error& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return graphs;
}

inline void write_g6_file(const std::string& path, const std::vector<Graph>& graphs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    for (const Graph& g : graphs) out << g6_encode(g) << '\n';
}

}  // namespace ctxgap

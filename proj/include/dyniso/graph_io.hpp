#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dyniso/errors.hpp"
#include "dyniso/graph.hpp"

namespace dyniso {

enum class GraphFormat { Graph6, EdgeList };

namespace detail {

constexpr std::string_view kGraph6Header = ">>graph6<<";

inline int g6_byte(unsigned char c, std::size_t pos) {
    if (c < 63 || c > 126)
        throw ParseError("invalid graph6 byte with code " + std::to_string(c), 0, pos + 1);
    return c - 63;
}

struct G6Size {
    long long n;
    std::size_t consumed;
};

inline G6Size g6_read_size(std::string_view s) {
    if (s.empty()) throw ParseError("empty graph6 string");
    if (s[0] != '~') return {g6_byte(s[0], 0), 1};
    if (s.size() >= 2 && s[1] == '~') {
        if (s.size() < 8) throw ParseError("truncated graph6 size field");
        long long n = 0;
        for (std::size_t i = 2; i < 8; ++i) n = (n << 6) | g6_byte(s[i], i);
        return {n, 8};
    }
    if (s.size() < 4) throw ParseError("truncated graph6 size field");
    long long n = 0;
    for (std::size_t i = 1; i < 4; ++i) n = (n << 6) | g6_byte(s[i], i);
    return {n, 4};
}

}  // namespace detail

inline Graph parse_graph6(std::string_view text) {
    // Tolerate the optional format header and one trailing newline.
    std::string_view s = text;
    if (s.starts_with(detail::kGraph6Header)) s.remove_prefix(detail::kGraph6Header.size());
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
    if (s.find('\n') != std::string_view::npos)
        throw ParseError("expected a single graph6 line");

    const auto [n, header_len] = detail::g6_read_size(s);
    if (n < 1) throw ParseError("graph6 vertex count must be positive");
    if (n > 100000) throw ParseError("graph6 vertex count too large for this tool");

    const long long bits = n * (n - 1) / 2;
    const std::size_t body_len = static_cast<std::size_t>((bits + 5) / 6);
    if (s.size() != header_len + body_len)
        throw ParseError("graph6 body has " + std::to_string(s.size() - header_len) +
                         " bytes, expected " + std::to_string(body_len));

    Graph g(static_cast<int>(n));
    long long bit = 0;
    for (std::size_t k = 0; k < body_len; ++k) {
        int v = detail::g6_byte(static_cast<unsigned char>(s[header_len + k]), header_len + k);
        for (int b = 5; b >= 0; --b, ++bit) {
            const bool set = (v >> b) & 1;
            if (bit >= bits) {
                if (set) throw ParseError("nonzero padding bit in graph6 body", 0, header_len + k + 1);
                continue;
            }
            if (set) {
                // Column-major upper triangle: bit index -> (i, j), j the column.
                long long lo = 1, hi = n - 1, j = n - 1;
                while (lo <= hi) {
                    long long mid = (lo + hi) / 2;
                    if (mid * (mid + 1) / 2 > bit) {
                        j = mid;
                        hi = mid - 1;
                    } else {
                        lo = mid + 1;
                    }
                }
                const long long i = bit - j * (j - 1) / 2;
                g.add_edge(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return g;
}

inline std::string to_graph6(const Graph& g) {
    const long long n = g.size();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back('~');
        for (int shift = 12; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    } else {
        out += "~~";
        for (int shift = 30; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
    int acc = 0, filled = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                filled = 0;
            }
        }
    if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
    return out;
}

inline Graph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    long long n = -1;
    Graph g;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw ParseError("empty edge-list input");
    {
        std::istringstream hs(line);
        std::string tag;
        if (!(hs >> tag) || tag != "n" || !(hs >> n) || (hs >> tag))
            throw ParseError("expected header \"n <count>\"", lineno);
        if (n < 1) throw ParseError("vertex count must be positive", lineno);
        g = Graph(static_cast<int>(n));
    }
    while (next_line()) {
        std::istringstream es(line);
        long long u, v;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra))
            throw ParseError("expected edge line \"u v\"", lineno);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ValidationError("edge endpoint out of range on line " + std::to_string(lineno));
        if (u == v) throw ValidationError("loop edge on line " + std::to_string(lineno));
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    return g;
}

inline std::string to_edge_list(const Graph& g) {
    std::string out = "n " + std::to_string(g.size()) + "\n";
    for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline Graph parse_graph(std::string_view text, GraphFormat format) {
    switch (format) {
        case GraphFormat::Graph6: return parse_graph6(text);
        case GraphFormat::EdgeList: return parse_edge_list(text);
    }
    throw ContractError("unknown graph format");
}

inline std::string serialize_graph(const Graph& g, GraphFormat format) {
    switch (format) {
        case GraphFormat::Graph6: return to_graph6(g);
        case GraphFormat::EdgeList: return to_edge_list(g);
    }
    throw ContractError("unknown graph format");
}

}  // namespace dyniso

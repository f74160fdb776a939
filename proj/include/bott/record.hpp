#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "digraph.hpp"
#include "error.hpp"

namespace bott {

/// Textual record "D<k>:<HEX>": the k*k row-major adjacency bits, MSB
/// first, as ceil(k*k/4) uppercase hex digits with zero padding at the end.
inline std::string format_record(const Digraph& d)
{
    static constexpr char digits[] = "0123456789ABCDEF";
    const int n = d.size();
    std::string out = "D" + std::to_string(n) + ":";
    unsigned nibble = 0;
    int filled = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            nibble = (nibble << 1) | static_cast<unsigned>(d.has_arc(i, j));
            if (++filled == 4) {
                out += digits[nibble];
                nibble = 0;
                filled = 0;
            }
        }
    if (filled)
        out += digits[nibble << (4 - filled)];
    return out;
}

namespace detail {

inline int parse_count(std::string_view text, std::string_view what)
{
    int value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last)
        throw format_error("bad " + std::string(what) + ": '" + std::string(text) + "'");
    return value;
}

inline int hex_value(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

inline Digraph parse_hex_record(int n, std::string_view hex)
{
    const std::size_t expected = static_cast<std::size_t>((n * n + 3) / 4);
    if (hex.size() != expected)
        throw format_error("expected " + std::to_string(expected) + " hex digits, got " + std::to_string(hex.size()));
    std::array<Row, max_vertices> rows{};
    int pos = 0;
    for (char c : hex) {
        const int value = hex_value(c);
        if (value < 0)
            throw format_error(std::string("not an uppercase hex digit: '") + c + "'");
        for (int b = 3; b >= 0; --b, ++pos) {
            const bool set = (value >> b) & 1;
            if (pos >= n * n) {
                if (set)
                    throw format_error("nonzero padding bits");
                continue;
            }
            const int i = pos / n;
            const int j = pos % n;
            if (set && i == j)
                throw format_error("diagonal bit set for vertex " + std::to_string(i + 1));
            if (set)
                rows[i] |= bit(j);
        }
    }
    return Digraph::from_rows(n, std::span<const Row>(rows.data(), n));
}

// "(u,v),(u,v),..." with 1-based endpoints; empty means no arcs.
inline Digraph parse_arc_list(int n, std::string_view body)
{
    std::vector<Arc> arcs;
    std::size_t i = 0;
    while (i < body.size()) {
        if (!arcs.empty()) {
            if (body[i] != ',')
                throw format_error("expected ',' between arcs");
            ++i;
        }
        if (i >= body.size() || body[i] != '(')
            throw format_error("expected '(' to open an arc");
        const std::size_t close = body.find(')', i);
        if (close == std::string_view::npos)
            throw format_error("unterminated arc");
        const std::string_view inner = body.substr(i + 1, close - i - 1);
        const std::size_t comma = inner.find(',');
        if (comma == std::string_view::npos)
            throw format_error("arc needs two endpoints");
        const int u = parse_count(inner.substr(0, comma), "arc endpoint");
        const int v = parse_count(inner.substr(comma + 1), "arc endpoint");
        arcs.push_back({u - 1, v - 1});
        i = close + 1;
    }
    return from_arcs(n, arcs);
}

} // namespace detail

/// Inverse of format_record(). Also accepts the arc-list form
/// "k:(u,v),(u,v),..." with 1-based vertices.
inline Digraph parse_record(std::string_view text)
{
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        throw format_error("record has no ':' separator");
    std::string_view head = text.substr(0, colon);
    const std::string_view body = text.substr(colon + 1);
    const bool hex = !head.empty() && head.front() == 'D';
    if (hex)
        head.remove_prefix(1);
    const int n = detail::parse_count(head, "vertex count");
    if (n < 1 || n > max_vertices)
        throw format_error("vertex count out of range: " + std::to_string(n));
    if (hex)
        return detail::parse_hex_record(n, body);
    try {
        return detail::parse_arc_list(n, body);
    } catch (const range_error& e) {
        throw format_error(e.what());
    } catch (const self_loop_error& e) {
        throw format_error(e.what());
    }
}

} // namespace bott

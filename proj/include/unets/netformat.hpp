#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "unets/multigraph.hpp"

namespace unets {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// `unets 1` text format. Vertices get ids in declaration order and edges in
// declaration order.
MultiGraph parse(std::string_view text);
std::string serialize(const MultiGraph& g);

// Graphviz output. Highlighted edges are drawn bold and red; an unknown
// highlight id throws GraphError.
std::string to_dot(const MultiGraph& g, const std::set<EdgeId>& highlight = {});

MultiGraph read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace unets
